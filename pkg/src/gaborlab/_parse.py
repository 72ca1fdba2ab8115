"""Small helpers for the ``kind:key=value,...`` spec strings used by the CLI."""

from __future__ import annotations

import ast
import math
import operator

_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
}
_FUNCS = {"sqrt": math.sqrt}
_CONSTS = {"pi": math.pi}


def parse_number(text: str) -> float:
    """Evaluate a numeric literal or a tiny arithmetic expression.

    Accepts ``+ - * / **``, ``sqrt(...)`` and ``pi`` so exact values such as
    ``1/sqrt(2)`` can be written on the command line.
    """

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return float(node.value)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if (isinstance(node, ast.Call) and isinstance(node.func, ast.Name)
                and node.func.id in _FUNCS and len(node.args) == 1 and not node.keywords):
            return _FUNCS[node.func.id](ev(node.args[0]))
        if isinstance(node, ast.Name) and node.id in _CONSTS:
            return _CONSTS[node.id]
        raise ValueError(f"unsupported expression {text!r}")

    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse number {text!r}") from exc
    return ev(tree)


def parse_kv(text: str, allowed: set[str], optional: dict[str, str] | None = None) -> dict[str, str]:
    """Split ``a=1,b=2`` into a dict and check the keys.

    Keys listed in `optional` fall back to the given default text.
    """
    out = {}
    text = text.strip()
    if not text:
        items = []
    else:
        items = text.split(",")
    for item in items:
        key, sep, val = item.partition("=")
        key = key.strip()
        if not sep or not key:
            raise ValueError(f"malformed item {item!r}")
        if key not in allowed:
            raise ValueError(f"unknown key {key!r}; expected one of {sorted(allowed)}")
        out[key] = val.strip()
    for key, default in (optional or {}).items():
        out.setdefault(key, default)
    missing = allowed - out.keys()
    if missing:
        raise ValueError(f"missing keys {sorted(missing)}")
    return out
