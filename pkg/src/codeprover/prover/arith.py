"""Evaluate the small expression language used by arithmetic proof steps.

Only literals, arithmetic, comparisons and a fixed table of functions are
accepted. ``/`` is exact rational division.
"""

from __future__ import annotations

import ast
import math
import operator
from fractions import Fraction
from typing import Any, Callable

from ..bounds import griesmer_min_length
from ..codespec import CodeSpec
from ..combinatorics import binomial, krawtchouk
from ..geometry import (
    admissible_even_weights,
    castelnuovo_genus_bound,
    chi_double_cover,
    code_dim_lower_bound,
    double_cover_genus,
    embedding_dim_inequality,
    min_even_weight,
)
from ..reductions import pair_interaction


class ExpressionError(ValueError):
    pass


def _pairs(j1: int, j2: int, n: int, weights) -> frozenset[int]:
    return pair_interaction(j1, j2, CodeSpec(n, 1, frozenset(weights)))


FUNCTIONS: dict[str, Callable[..., Any]] = {
    "binomial": binomial,
    "krawtchouk": krawtchouk,
    "floor": math.floor,
    "ceil": math.ceil,
    "min": min,
    "max": max,
    "set": frozenset,
    "frac": Fraction,
    "griesmer": griesmer_min_length,
    "chi": chi_double_cover,
    "castelnuovo": castelnuovo_genus_bound,
    "cover_genus": double_cover_genus,
    "embedding_ok": embedding_dim_inequality,
    "min_even_weight": lambda s=6: min_even_weight(s).value,
    "admissible_weights": admissible_even_weights,
    "dim_bound": code_dim_lower_bound,
    "pair_overlaps": _pairs,
}

_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: lambda a, b: Fraction(a) / Fraction(b),
    ast.FloorDiv: operator.floordiv,
    ast.Mod: operator.mod,
    ast.Pow: lambda a, b: _power(a, b),
}
def _power(a, b):
    if abs(b) > 4096:
        raise ExpressionError("exponent too large")
    return Fraction(a) ** b if b < 0 else a**b


_CMPOPS = {
    ast.Eq: operator.eq,
    ast.NotEq: operator.ne,
    ast.Lt: operator.lt,
    ast.LtE: operator.le,
    ast.Gt: operator.gt,
    ast.GtE: operator.ge,
    ast.In: lambda a, b: a in b,
    ast.NotIn: lambda a, b: a not in b,
}


def _eval(node: ast.AST) -> Any:
    if isinstance(node, ast.Expression):
        return _eval(node.body)
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, bool)):
        return node.value
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        return _BINOPS[type(node.op)](_eval(node.left), _eval(node.right))
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        return -_eval(node.operand)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.Not):
        return not _eval(node.operand)
    if isinstance(node, ast.BoolOp):
        values = [_eval(v) for v in node.values]
        return all(values) if isinstance(node.op, ast.And) else any(values)
    if isinstance(node, ast.Compare):
        left = _eval(node.left)
        for op, comp in zip(node.ops, node.comparators):
            if type(op) not in _CMPOPS:
                break
            right = _eval(comp)
            if not _CMPOPS[type(op)](left, right):
                return False
            left = right
        else:
            return True
    if isinstance(node, (ast.Set, ast.List, ast.Tuple)):
        items = [_eval(e) for e in node.elts]
        return frozenset(items) if isinstance(node, ast.Set) else tuple(items)
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and not node.keywords:
        fn = FUNCTIONS.get(node.func.id)
        if fn is not None:
            return fn(*(_eval(a) for a in node.args))
    raise ExpressionError(f"unsupported expression element: {ast.dump(node)[:60]}")


def evaluate(expression: str) -> Any:
    try:
        tree = ast.parse(expression, mode="eval")
    except SyntaxError as exc:
        raise ExpressionError(f"cannot parse {expression!r}: {exc.msg}") from None
    value = _eval(tree)
    if isinstance(value, set):
        value = frozenset(value)
    return value


def matches(value: Any, expected: Any) -> bool:
    if isinstance(expected, bool) or isinstance(value, bool):
        return isinstance(value, bool) and isinstance(expected, bool) and value == expected
    if isinstance(expected, frozenset):
        return isinstance(value, frozenset) and value == expected
    return value == expected
