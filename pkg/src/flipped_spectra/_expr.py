"""Tiny arithmetic expression language used by the symbol text format.

Grammar: numbers, ``pi``/``π``, the variable ``theta``/``θ`` (alias ``x``),
``+ - * / **``, parentheses and the functions ``cos`` and ``sin``.
"""

from __future__ import annotations

import ast
import math
import operator

import numpy as np

from .exceptions import SymbolParseError

_VARIABLES = {"theta", "x"}
_CONSTANTS = {"pi": math.pi}
_FUNCTIONS = {"cos": np.cos, "sin": np.sin}
_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
}
_UNARY = {ast.USub: operator.neg, ast.UAdd: operator.pos}


def normalize(text: str) -> str:
    return (
        text.replace("π", "pi")
        .replace("θ", "theta")
        .replace("−", "-")
        .replace("·", "*")
    )


def _parse(text: str) -> ast.AST:
    try:
        return ast.parse(normalize(text).strip(), mode="eval").body
    except SyntaxError as exc:
        raise SymbolParseError(f"cannot parse expression {text!r}: {exc.msg}") from None


def _evaluate(node: ast.AST, theta):
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
        return float(node.value)
    if isinstance(node, ast.Name):
        if node.id in _CONSTANTS:
            return _CONSTANTS[node.id]
        if node.id in _VARIABLES:
            if theta is None:
                raise SymbolParseError(f"variable {node.id!r} not allowed in a constant")
            return theta
        raise SymbolParseError(f"unknown name {node.id!r}")
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        return _BINOPS[type(node.op)](_evaluate(node.left, theta), _evaluate(node.right, theta))
    if isinstance(node, ast.UnaryOp) and type(node.op) in _UNARY:
        return _UNARY[type(node.op)](_evaluate(node.operand, theta))
    if (
        isinstance(node, ast.Call)
        and isinstance(node.func, ast.Name)
        and node.func.id in _FUNCTIONS
        and len(node.args) == 1
        and not node.keywords
    ):
        return _FUNCTIONS[node.func.id](_evaluate(node.args[0], theta))
    raise SymbolParseError(f"unsupported syntax: {ast.dump(node)}")


class Expression:
    """A compiled expression in the variable theta, vectorized over numpy arrays."""

    def __init__(self, text: str):
        self.text = text
        self._tree = _parse(text)
        # Fail early on unknown names or syntax.
        _evaluate(self._tree, np.zeros(1))

    def __call__(self, theta):
        theta = np.asarray(theta, dtype=float)
        out = _evaluate(self._tree, theta)
        return np.broadcast_to(np.asarray(out, dtype=float), theta.shape).copy()

    def __repr__(self):
        return f"Expression({self.text!r})"


def constant(value) -> float:
    """Evaluate a number or a constant expression such as ``"-pi/2"``."""
    if isinstance(value, (int, float)):
        return float(value)
    return float(_evaluate(_parse(str(value)), None))


def literal(text: str):
    """Evaluate a literal container (dicts, lists, numbers, strings) allowing
    constant arithmetic such as ``pi/2`` inside."""

    def conv(node):
        if isinstance(node, ast.Dict):
            return {conv(k): conv(v) for k, v in zip(node.keys, node.values)}
        if isinstance(node, (ast.List, ast.Tuple)):
            return [conv(e) for e in node.elts]
        if isinstance(node, ast.Constant) and isinstance(node.value, str):
            return node.value
        return _evaluate(node, None)

    return conv(_parse(text))
