"""JSON forms of specs, LP problems and certificates.

Rationals are written as ``{"num": "p", "den": "q"}`` with string digits
so nothing passes through a float. Keys are emitted in sorted order.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any

from .codespec import CodeSpec
from .delsarte import (
    ForcedConflict,
    ForcedNonInteger,
    GateVerdict,
    InfeasibleLP,
    Mode,
    NoContradiction,
    Quantity,
    Window,
)
from .lp import Constraint, FarkasCertificate, LPProblem


class DocumentError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)
        self.line = line
        self.column = column


def rational(v: Fraction | int) -> dict[str, str]:
    v = Fraction(v)
    return {"num": str(v.numerator), "den": str(v.denominator)}


def parse_rational(obj: Any) -> Fraction:
    if isinstance(obj, dict) and set(obj) == {"num", "den"}:
        return Fraction(int(obj["num"]), int(obj["den"]))
    if isinstance(obj, bool):
        raise DocumentError(f"expected a rational, got {obj!r}")
    if isinstance(obj, int):
        return Fraction(obj)
    if isinstance(obj, str) and re.fullmatch(r"-?\d+(/\d+)?", obj.strip()):
        return Fraction(obj.strip())
    raise DocumentError(f"expected a rational, got {obj!r}")


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


SPEC_KEYS = ("n", "k", "weights", "forced", "fixed_counts", "dual_fixed", "dual_lower", "mode")


def spec_to_dict(spec: CodeSpec, mode: Mode | str | None = None) -> dict[str, Any]:
    doc: dict[str, Any] = {"n": spec.n, "k": spec.k, "weights": spec.sorted_weights}
    if spec.forced:
        doc["forced"] = sorted(spec.forced)
    for key in ("fixed_counts", "dual_fixed", "dual_lower"):
        values = getattr(spec, key)
        if values:
            doc[key] = {str(i): rational(v) for i, v in values.items()}
    if mode is not None:
        doc["mode"] = Mode(mode).value
    return doc


def _index_map(obj: Any, key: str) -> dict[int, Fraction]:
    if not isinstance(obj, dict):
        raise DocumentError(f"{key} must be an object mapping index to value")
    try:
        return {int(i): parse_rational(v) for i, v in obj.items()}
    except ValueError as exc:
        raise DocumentError(f"bad entry in {key}: {exc}") from None


def _int_list(obj: Any, key: str) -> list[int]:
    if not isinstance(obj, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in obj):
        raise DocumentError(f"{key} must be a list of integers")
    return obj


def spec_from_dict(doc: dict[str, Any], text: str | None = None) -> tuple[CodeSpec, Mode | None]:
    if not isinstance(doc, dict):
        raise DocumentError("a spec document must be a JSON object")
    for key in doc:
        if key not in SPEC_KEYS:
            line, col = _locate_key(text, key) if text else (None, None)
            raise DocumentError(f"unknown key {key!r}", line, col)
    for key in ("n", "k", "weights"):
        if key not in doc:
            raise DocumentError(f"missing key {key!r}")
    if not all(isinstance(doc[key], int) and not isinstance(doc[key], bool) for key in ("n", "k")):
        raise DocumentError("n and k must be integers")
    mode = Mode(doc["mode"]) if "mode" in doc else None
    try:
        spec = CodeSpec(
            doc["n"],
            doc["k"],
            _int_list(doc["weights"], "weights"),
            forced=_int_list(doc.get("forced", []), "forced"),
            fixed_counts=_index_map(doc.get("fixed_counts", {}), "fixed_counts"),
            dual_fixed=_index_map(doc.get("dual_fixed", {}), "dual_fixed"),
            dual_lower=_index_map(doc.get("dual_lower", {}), "dual_lower"),
        )
    except DocumentError:
        raise
    except ValueError as exc:
        raise DocumentError(str(exc)) from None
    return spec, mode


def _locate_key(text: str, key: str) -> tuple[int, int]:
    match = re.search(r'"' + re.escape(key) + r'"\s*:', text)
    if not match:
        return 1, 1
    before = text[: match.start()]
    line = before.count("\n") + 1
    col = match.start() - (before.rfind("\n") + 1) + 1
    return line, col


def load_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(exc.msg, exc.lineno, exc.colno) from None


def parse_spec_document(text: str) -> tuple[CodeSpec, Mode | None]:
    return spec_from_dict(load_json(text), text)


def serialize_spec_document(spec: CodeSpec, mode: Mode | str | None = None) -> str:
    return dumps(spec_to_dict(spec, mode))


def problem_to_dict(problem: LPProblem) -> dict[str, Any]:
    return {
        "variables": list(problem.variables),
        "constraints": [
            {
                "coeffs": [rational(c) for c in con.coeffs],
                "relation": con.relation.value,
                "rhs": rational(con.rhs),
                "label": con.label,
            }
            for con in problem.constraints
        ],
    }


def problem_from_dict(doc: dict[str, Any]) -> LPProblem:
    cons = tuple(
        Constraint(
            tuple(parse_rational(c) for c in row["coeffs"]),
            row["relation"],
            parse_rational(row["rhs"]),
            row.get("label", ""),
        )
        for row in doc["constraints"]
    )
    return LPProblem(tuple(doc["variables"]), cons)


def certificate_to_dict(cert: FarkasCertificate | None) -> dict[str, Any] | None:
    if cert is None:
        return None
    return {"multipliers": {str(i): rational(v) for i, v in cert.multipliers.items()}}


def certificate_from_dict(doc: dict[str, Any] | None) -> FarkasCertificate | None:
    if doc is None:
        return None
    return FarkasCertificate({int(i): parse_rational(v) for i, v in doc["multipliers"].items()})


def window_to_dict(w: Window) -> dict[str, Any]:
    return {
        "quantity": str(w.quantity),
        "low": w.low,
        "high": w.high,
        "low_certificate": certificate_to_dict(w.low_certificate),
        "high_certificate": certificate_to_dict(w.high_certificate),
        "relaxed": None if w.relaxed is None else [rational(v) for v in w.relaxed],
    }


def window_from_dict(doc: dict[str, Any]) -> Window:
    relaxed = doc.get("relaxed")
    return Window(
        Quantity.parse(doc["quantity"]),
        doc["low"],
        doc["high"],
        certificate_from_dict(doc.get("low_certificate")),
        certificate_from_dict(doc.get("high_certificate")),
        None if relaxed is None else tuple(parse_rational(v) for v in relaxed),
    )


def _bounds_dict(bounds) -> dict[str, Any]:
    return {str(q): [rational(lo), rational(hi)] for q, (lo, hi) in bounds.items()}


def verdict_to_dict(v: GateVerdict) -> dict[str, Any]:
    doc: dict[str, Any] = {"windows": [window_to_dict(w) for w in v.windows], "summary": v.describe()}
    if isinstance(v, InfeasibleLP):
        doc.update(kind="infeasible_lp", certificate=certificate_to_dict(v.certificate))
    elif isinstance(v, ForcedNonInteger):
        doc.update(kind="forced_non_integer", quantity=str(v.quantity), value=rational(v.value))
        doc["also"] = _bounds_dict(dict(v.also))
    elif isinstance(v, ForcedConflict):
        doc.update(kind="forced_conflict", quantity=str(v.quantity), required=v.required, available=rational(v.available))
        doc["also"] = _bounds_dict(dict(v.also))
    else:
        doc.update(kind="no_contradiction", bounds=_bounds_dict(v.bounds))
    return doc


def verdict_from_dict(doc: dict[str, Any]) -> GateVerdict:
    windows = tuple(window_from_dict(w) for w in doc["windows"])
    kind = doc["kind"]

    def bounds(key):
        return {Quantity.parse(q): (parse_rational(a), parse_rational(b)) for q, (a, b) in doc.get(key, {}).items()}

    if kind == "infeasible_lp":
        return InfeasibleLP(certificate_from_dict(doc["certificate"]), windows)
    if kind == "forced_non_integer":
        return ForcedNonInteger(Quantity.parse(doc["quantity"]), parse_rational(doc["value"]), windows, tuple(bounds("also").items()))
    if kind == "forced_conflict":
        return ForcedConflict(
            Quantity.parse(doc["quantity"]), doc["required"], parse_rational(doc["available"]), windows, tuple(bounds("also").items())
        )
    if kind == "no_contradiction":
        return NoContradiction(bounds("bounds"), windows)
    raise DocumentError(f"unknown verdict kind {kind!r}")
