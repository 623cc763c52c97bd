"""Canonical pretty-printer; parse(pretty(parse(src))) is a fixpoint."""

from __future__ import annotations

from . import ast

_PREC = {
    "or": 1, "and": 2,
    "==": 4, "!=": 4, "<": 4, "<=": 4, ">": 4, ">=": 4,
    "+": 5, "-": 5, "*": 6, "/": 6,
}


def _expr(e: ast.Expr, parent_prec: int = 0) -> str:
    if isinstance(e, ast.Num):
        return repr(e.value)
    if isinstance(e, ast.Str):
        escaped = e.value.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n").replace("\t", "\\t")
        return f'"{escaped}"'
    if isinstance(e, ast.Bool):
        return "true" if e.value else "false"
    if isinstance(e, ast.Ident):
        return e.name
    if isinstance(e, ast.BinOp):
        prec = _PREC[e.op]
        s = f"{_expr(e.left, prec)} {e.op} {_expr(e.right, prec + 1)}"
        return f"({s})" if prec < parent_prec else s
    if isinstance(e, ast.Not):
        s = f"not {_expr(e.operand, 3)}"
        return f"({s})" if parent_prec > 3 else s
    if isinstance(e, ast.NegOp):
        return f"-{_expr(e.operand, 7)}"
    if isinstance(e, ast.ShapeLit):
        return "[" + ", ".join(_expr(d) for d in e.dims) + "]"
    if isinstance(e, ast.OpCall):
        return f"{e.name}(" + ", ".join(_expr(a) for a in e.args) + ")"
    if isinstance(e, ast.Input):
        if e.shape is None:
            return f'input("{e.name}")'
        return f'input("{e.name}", {_expr(e.shape)})'
    if isinstance(e, ast.Native):
        return f"native {e.name}(" + ", ".join(_expr(a) for a in e.args) + ")"
    if isinstance(e, ast.Item):
        return f"item({_expr(e.operand)})"
    raise TypeError(f"unknown expression {e!r}")


def _stmt(st: ast.Stmt, indent: int) -> list[str]:
    if isinstance(st, ast.VarDecl):
        return [f"var {st.name} = {_expr(st.expr)}"]
    if isinstance(st, ast.LetDecl):
        return [f"let {st.name} = {_expr(st.expr)}"]
    if isinstance(st, ast.Assign):
        return [f"{st.name} = {_expr(st.expr)}"]
    if isinstance(st, ast.Print):
        return [f"print({_expr(st.expr)})"]
    if isinstance(st, ast.If):
        pad = "    " * indent
        lines = [f"if {_expr(st.cond)} {{"]
        for s in st.then:
            lines.extend(pad + "    " + ln for ln in _stmt(s, indent + 1))
        for cond, block in st.elifs:
            lines.append(pad + f"}} elif {_expr(cond)} {{")
            for s in block:
                lines.extend(pad + "    " + ln for ln in _stmt(s, indent + 1))
        if st.orelse is not None:
            lines.append(pad + "} else {")
            for s in st.orelse:
                lines.extend(pad + "    " + ln for ln in _stmt(s, indent + 1))
        lines.append(pad + "}")
        return lines
    if isinstance(st, ast.While):
        pad = "    " * indent
        lines = [f"while {_expr(st.cond)} {{"]
        for s in st.body:
            lines.extend(pad + "    " + ln for ln in _stmt(s, indent + 1))
        lines.append(pad + "}")
        return lines
    if isinstance(st, ast.For):
        pad = "    " * indent
        lines = [f"for {st.var} in range({_expr(st.count)}) {{"]
        for s in st.body:
            lines.extend(pad + "    " + ln for ln in _stmt(s, indent + 1))
        lines.append(pad + "}")
        return lines
    raise TypeError(f"unknown statement {st!r}")


def pretty(prog: ast.Program) -> str:
    lines: list[str] = []
    for st in prog.prologue:
        lines.extend(_stmt(st, 0))
    lines.append(f"steps {prog.step_count} {{")
    for st in prog.body:
        lines.extend("    " + ln for ln in _stmt(st, 1))
    lines.append("}")
    return "\n".join(lines) + "\n"
