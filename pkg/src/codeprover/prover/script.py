"""Proof scripts as data: claims, justifications and steps."""

from __future__ import annotations

import graphlib
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, ClassVar, Union

from ..codespec import CodeSpec
from ..delsarte import DEFAULT_DUAL_TRACK, Mode
from ..serialize import DocumentError, parse_rational, rational, spec_from_dict, spec_to_dict


class ScriptError(ValueError):
    """A script is structurally malformed and cannot be run."""


# -- claims -------------------------------------------------------------------


@dataclass(frozen=True)
class Nonexistence:
    """No code matches ``spec``."""

    spec: CodeSpec
    kind: ClassVar[str] = "nonexistence"

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, "spec": spec_to_dict(self.spec)}

    def describe(self) -> str:
        return f"no {self.spec} code"


@dataclass(frozen=True)
class DualBound:
    """Every code matching ``spec`` has at least ``value`` dual words of weight ``m``."""

    spec: CodeSpec
    m: int
    value: int
    kind: ClassVar[str] = "dual_bound"

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, "spec": spec_to_dict(self.spec), "m": self.m, "value": self.value}

    def describe(self) -> str:
        return f"every {self.spec} code has mu_{self.m} >= {self.value}"


@dataclass(frozen=True)
class Fact:
    """A named statement, established by arithmetic or taken as an axiom."""

    text: str
    kind: ClassVar[str] = "fact"

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, "text": self.text}

    def describe(self) -> str:
        return self.text


Claim = Union[Nonexistence, DualBound, Fact]


def claim_from_dict(doc: dict[str, Any]) -> Claim:
    kind = doc.get("kind")
    if kind == "nonexistence":
        return Nonexistence(spec_from_dict(doc["spec"])[0])
    if kind == "dual_bound":
        return DualBound(spec_from_dict(doc["spec"])[0], int(doc["m"]), int(doc["value"]))
    if kind == "fact":
        return Fact(str(doc["text"]))
    raise ScriptError(f"unknown claim kind {kind!r}")


# -- justifications -----------------------------------------------------------


@dataclass(frozen=True)
class LPVerdict:
    """Delsarte LP on the claim spec with mu_m = 0 for each assumed m.

    ``assumptions`` maps m to a step refuting the spec with mu_m >= 1.
    """

    mode: Mode = Mode.PAPER
    assumptions: tuple[tuple[int, str], ...] = ()
    dual_track: int = DEFAULT_DUAL_TRACK
    kind: ClassVar[str] = "lp"

    def refs(self) -> list[str]:
        return [s for _, s in self.assumptions]

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "mode": Mode(self.mode).value,
            "assumptions": {str(m): s for m, s in self.assumptions},
            "dual_track": self.dual_track,
        }


@dataclass(frozen=True)
class Griesmer:
    kind: ClassVar[str] = "griesmer"

    def refs(self) -> list[str]:
        return []

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind}


@dataclass(frozen=True)
class Residual:
    """Residual code at a word of weight ``weight``.

    Without ``partner`` the claim spec must force ``weight``; with one, the
    partner refutes the same spec with ``weight`` removed.
    """

    source: str
    weight: int
    partner: str | None = None
    kind: ClassVar[str] = "residual"

    def refs(self) -> list[str]:
        return [self.source] + ([self.partner] if self.partner else [])

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, "from": self.source, "weight": self.weight, "partner": self.partner}


@dataclass(frozen=True)
class Shorten:
    """Shorten on a dual low-weight word whose existence the claim spec assumes.

    ``components == (1,)`` uses a zero coordinate, ``(2,)`` a deuce. With
    ``dual_weight`` set, shorten on ``positions`` coordinates of a dual word
    of that weight instead.
    """

    source: str
    components: tuple[int, ...] = ()
    dual_weight: int | None = None
    positions: int | None = None
    kind: ClassVar[str] = "shorten"

    def refs(self) -> list[str]:
        return [self.source]

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "from": self.source,
            "components": list(self.components),
            "dual_weight": self.dual_weight,
            "positions": self.positions,
        }


@dataclass(frozen=True)
class Monotone:
    source: str
    kind: ClassVar[str] = "monotone"

    def refs(self) -> list[str]:
        return [self.source]

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, "from": self.source}


@dataclass(frozen=True)
class Adjoin:
    source: str
    kind: ClassVar[str] = "adjoin"

    def refs(self) -> list[str]:
        return [self.source]

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, "from": self.source}


@dataclass(frozen=True)
class DeuceGraph:
    """Case analysis on the graph of weight-2 dual words.

    ``variant="pair"``: two distinct deuces exist, each way they can meet is
    refuted. ``variant="cliques"``: every non-matching clique configuration
    is refuted, so the deuces are disjoint; a deuce inside every word of
    large weight then shortens to the spec refuted by ``subcode``.
    """

    variant: str
    bound: str
    cases: tuple[tuple[tuple[int, ...], str], ...]
    subcode: str | None = None
    extra: tuple[str, ...] = ()
    kind: ClassVar[str] = "deuce_graph"

    def refs(self) -> list[str]:
        out = [self.bound] + [s for _, s in self.cases]
        if self.subcode:
            out.append(self.subcode)
        return out + list(self.extra)

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "variant": self.variant,
            "bound": self.bound,
            "cases": [{"shape": list(shape), "step": s} for shape, s in self.cases],
            "subcode": self.subcode,
            "extra": list(self.extra),
        }


@dataclass(frozen=True)
class Axiom:
    citation: str
    kind: ClassVar[str] = "axiom"

    def refs(self) -> list[str]:
        return []

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, "citation": self.citation}


@dataclass(frozen=True)
class Arithmetic:
    expression: str
    expected: Any
    kind: ClassVar[str] = "arithmetic"

    def refs(self) -> list[str]:
        return []

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, "expression": self.expression, "expected": value_to_json(self.expected)}


Justification = Union[LPVerdict, Griesmer, Residual, Shorten, Monotone, Adjoin, DeuceGraph, Axiom, Arithmetic]


def value_to_json(v: Any) -> Any:
    if isinstance(v, bool):
        return v
    if isinstance(v, int):
        return v
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else rational(v)
    if isinstance(v, (set, frozenset)):
        return {"set": sorted(value_to_json(x) for x in v)}
    raise TypeError(f"cannot serialize expected value {v!r}")


def value_from_json(v: Any) -> Any:
    if isinstance(v, dict) and "set" in v:
        return frozenset(value_from_json(x) for x in v["set"])
    if isinstance(v, dict):
        return parse_rational(v)
    return v


def justification_from_dict(doc: dict[str, Any]) -> Justification:
    kind = doc.get("kind")
    try:
        if kind == "lp":
            return LPVerdict(
                Mode(doc.get("mode", "paper")),
                tuple(sorted((int(m), s) for m, s in doc.get("assumptions", {}).items())),
                int(doc.get("dual_track", DEFAULT_DUAL_TRACK)),
            )
        if kind == "griesmer":
            return Griesmer()
        if kind == "residual":
            return Residual(doc["from"], int(doc["weight"]), doc.get("partner"))
        if kind == "shorten":
            return Shorten(doc["from"], tuple(doc.get("components", ())), doc.get("dual_weight"), doc.get("positions"))
        if kind == "monotone":
            return Monotone(doc["from"])
        if kind == "adjoin":
            return Adjoin(doc["from"])
        if kind == "deuce_graph":
            return DeuceGraph(
                doc["variant"],
                doc["bound"],
                tuple((tuple(c["shape"]), c["step"]) for c in doc["cases"]),
                doc.get("subcode"),
                tuple(doc.get("extra", ())),
            )
        if kind == "axiom":
            return Axiom(doc["citation"])
        if kind == "arithmetic":
            return Arithmetic(doc["expression"], value_from_json(doc["expected"]))
    except KeyError as exc:
        raise ScriptError(f"justification {kind!r} is missing {exc}") from None
    raise ScriptError(f"unknown justification kind {kind!r}")


# -- steps and scripts --------------------------------------------------------


@dataclass(frozen=True)
class ProofStep:
    id: str
    claim: Claim
    justification: Justification
    depends_on: tuple[str, ...] = ()
    note: str = ""

    def __post_init__(self) -> None:
        deps = list(self.depends_on)
        for ref in self.justification.refs():
            if ref not in deps:
                deps.append(ref)
        object.__setattr__(self, "depends_on", tuple(deps))

    def to_dict(self) -> dict[str, Any]:
        doc = {
            "id": self.id,
            "claim": self.claim.to_dict(),
            "justification": self.justification.to_dict(),
            "depends_on": list(self.depends_on),
        }
        if self.note:
            doc["note"] = self.note
        return doc

    @classmethod
    def from_dict(cls, doc: dict[str, Any]) -> "ProofStep":
        try:
            return cls(
                doc["id"],
                claim_from_dict(doc["claim"]),
                justification_from_dict(doc["justification"]),
                tuple(doc.get("depends_on", ())),
                doc.get("note", ""),
            )
        except (KeyError, DocumentError) as exc:
            raise ScriptError(f"bad step {doc.get('id', '?')!r}: {exc}") from None


@dataclass(frozen=True)
class ProofScript:
    name: str
    steps: tuple[ProofStep, ...]
    conclusion: str | None = None  # id of the step holding the main result
    description: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "steps", tuple(self.steps))

    def step(self, step_id: str) -> ProofStep:
        for s in self.steps:
            if s.id == step_id:
                return s
        raise KeyError(step_id)

    def order(self) -> list[str]:
        """Dependency order; raises ScriptError on unknown references or cycles."""
        ids = [s.id for s in self.steps]
        if len(set(ids)) != len(ids):
            raise ScriptError("duplicate step ids")
        known = set(ids)
        graph = {}
        for s in self.steps:
            missing = [d for d in s.depends_on if d not in known]
            if missing:
                raise ScriptError(f"step {s.id!r} depends on unknown steps {missing}")
            graph[s.id] = set(s.depends_on)
        if self.conclusion is not None and self.conclusion not in known:
            raise ScriptError(f"conclusion {self.conclusion!r} is not a step")
        try:
            return list(graphlib.TopologicalSorter(graph).static_order())
        except graphlib.CycleError as exc:
            raise ScriptError(f"dependency cycle: {exc.args[1]}") from None

    def to_dict(self) -> dict[str, Any]:
        return {
            "format": "codeprover-script/1",
            "name": self.name,
            "description": self.description,
            "conclusion": self.conclusion,
            "steps": [s.to_dict() for s in self.steps],
        }

    @classmethod
    def from_dict(cls, doc: dict[str, Any]) -> "ProofScript":
        if not isinstance(doc, dict) or "steps" not in doc:
            raise ScriptError("a proof script needs a 'steps' list")
        return cls(
            doc.get("name", "script"),
            tuple(ProofStep.from_dict(s) for s in doc["steps"]),
            doc.get("conclusion"),
            doc.get("description", ""),
        )


# -- helpers for writing scripts ----------------------------------------------


@dataclass
class ScriptBuilder:
    name: str
    description: str = ""
    steps: list[ProofStep] = field(default_factory=list)

    def add(self, step_id: str, claim: Claim, justification: Justification, *deps: str, note: str = "") -> str:
        self.steps.append(ProofStep(step_id, claim, justification, tuple(deps), note))
        return step_id

    def build(self, conclusion: str | None = None) -> ProofScript:
        return ProofScript(self.name, tuple(self.steps), conclusion, self.description)
