"""Recursive-descent parser and static validation."""

from __future__ import annotations

from ..errors import ParseError, ValidationError
from ..natives import NATIVE_ARITY
from . import ast
from .lexer import Token, tokenize

OP_NAMES = {
    "matmul", "add", "sub", "mul", "neg", "relu", "sigmoid",
    "sum", "mean", "transpose", "reshape", "fill",
}
# (min, max) surface arity per op; shape-literal argument positions are
# checked separately in validation.
OP_SURFACE_ARITY = {
    "matmul": (2, 2), "add": (2, 2), "sub": (2, 2), "mul": (2, 2),
    "neg": (1, 1), "relu": (1, 1), "sigmoid": (1, 1), "sum": (1, 1),
    "mean": (1, 1), "transpose": (1, 2), "reshape": (2, 2), "fill": (2, 2),
}

RESERVED_NAMES = OP_NAMES | {"step"}

_COMPARE = {"==", "!=", "<", "<=", ">", ">="}


class Parser:
    def __init__(self, toks: list[Token]):
        self.toks = toks
        self.i = 0
        self.next_stmt_id = 0
        self.next_loop_id = 0

    # -- token helpers --

    def peek(self, ahead: int = 0) -> Token:
        j = min(self.i + ahead, len(self.toks) - 1)
        return self.toks[j]

    def peek_past_newlines(self) -> Token:
        j = self.i
        while self.toks[j].kind == "NEWLINE":
            j += 1
        return self.toks[j]

    def advance(self) -> Token:
        t = self.toks[self.i]
        if t.kind != "EOF":
            self.i += 1
        return t

    def expect(self, kind: str) -> Token:
        t = self.peek()
        if t.kind != kind:
            raise ParseError(f"expected {kind!r}, found {t.kind!r}", t.line, t.col)
        return self.advance()

    def skip_separators(self):
        while self.peek().kind in ("NEWLINE", ";"):
            self.advance()

    def end_statement(self):
        t = self.peek()
        if t.kind in ("NEWLINE", ";"):
            self.advance()
        elif t.kind not in ("}", "EOF"):
            raise ParseError(f"expected end of statement, found {t.kind!r}", t.line, t.col)

    # -- program --

    def parse_program(self) -> ast.Program:
        prologue: list[ast.Stmt] = []
        steps: tuple[int, list[ast.Stmt]] | None = None
        while True:
            self.skip_separators()
            t = self.peek()
            if t.kind == "EOF":
                break
            if t.kind == "steps":
                if steps is not None:
                    raise ValidationError(f"{t.line}:{t.col}: duplicate steps block")
                self.advance()
                count_tok = self.expect("NUMBER")
                if not isinstance(count_tok.value, int) or count_tok.value < 1:
                    raise ValidationError(
                        f"{count_tok.line}:{count_tok.col}: step count must be a positive integer"
                    )
                steps = (count_tok.value, self.parse_block())
                self.end_statement()
                continue
            if steps is not None:
                raise ParseError(f"unexpected {t.kind!r} after the steps block", t.line, t.col)
            prologue.append(self.parse_stmt())
            self.end_statement()
        if steps is None:
            raise ValidationError("missing steps block")
        prog = ast.Program(
            prologue=prologue,
            step_count=steps[0],
            body=steps[1],
            var_names=[s.name for s in prologue if isinstance(s, ast.VarDecl)],
        )
        ast.assign_loop_paths(prog)
        _validate(prog)
        return prog

    def parse_block(self) -> list[ast.Stmt]:
        self.expect("{")
        stmts: list[ast.Stmt] = []
        while True:
            self.skip_separators()
            if self.peek().kind == "}":
                self.advance()
                return stmts
            if self.peek().kind == "EOF":
                t = self.peek()
                raise ParseError("unterminated block", t.line, t.col)
            stmts.append(self.parse_stmt())
            if self.peek().kind != "}":
                self.end_statement()

    # -- statements --

    def _new_stmt_id(self) -> int:
        sid = self.next_stmt_id
        self.next_stmt_id += 1
        return sid

    def parse_stmt(self) -> ast.Stmt:
        t = self.peek()
        pos = ast.Pos(t.line, t.col)
        sid = self._new_stmt_id()
        if t.kind == "var":
            self.advance()
            name = self._decl_name()
            self.expect("=")
            return ast.VarDecl(pos, sid, name, self.parse_expr())
        if t.kind == "let":
            self.advance()
            name = self._decl_name()
            self.expect("=")
            return ast.LetDecl(pos, sid, name, self.parse_expr())
        if t.kind == "print":
            self.advance()
            self.expect("(")
            e = self.parse_expr()
            self.expect(")")
            return ast.Print(pos, sid, e)
        if t.kind == "if":
            self.advance()
            cond = self.parse_expr()
            then = self.parse_block()
            elifs: list[tuple[ast.Expr, list[ast.Stmt]]] = []
            orelse = None
            while self.peek_past_newlines().kind == "elif":
                self.skip_separators()
                self.advance()
                elifs.append((self.parse_expr(), self.parse_block()))
            if self.peek_past_newlines().kind == "else":
                self.skip_separators()
                self.advance()
                orelse = self.parse_block()
            return ast.If(pos, sid, cond, then, elifs, orelse)
        if t.kind == "while":
            self.advance()
            lid = self.next_loop_id
            self.next_loop_id += 1
            cond = self.parse_expr()
            body = self.parse_block()
            st = ast.While(pos, sid, cond, body)
            st.loop_id = lid
            return st
        if t.kind == "for":
            self.advance()
            lid = self.next_loop_id
            self.next_loop_id += 1
            var = self._decl_name()
            self.expect("in")
            self.expect("range")
            self.expect("(")
            count = self.parse_expr()
            self.expect(")")
            body = self.parse_block()
            st = ast.For(pos, sid, var, count, body)
            st.loop_id = lid
            return st
        if t.kind == "IDENT" and self.peek(1).kind == "=":
            self.advance()
            self.advance()
            return ast.Assign(pos, sid, t.text, self.parse_expr())
        raise ParseError(f"expected a statement, found {t.kind!r}", t.line, t.col)

    def _decl_name(self) -> str:
        t = self.expect("IDENT")
        if t.text in RESERVED_NAMES:
            raise ValidationError(f"{t.line}:{t.col}: {t.text!r} is a reserved name")
        return t.text

    # -- expressions (precedence climbing) --

    def parse_expr(self) -> ast.Expr:
        return self._parse_or()

    def _parse_or(self) -> ast.Expr:
        e = self._parse_and()
        while self.peek().kind == "or":
            t = self.advance()
            e = ast.BinOp(ast.Pos(t.line, t.col), "or", e, self._parse_and())
        return e

    def _parse_and(self) -> ast.Expr:
        e = self._parse_not()
        while self.peek().kind == "and":
            t = self.advance()
            e = ast.BinOp(ast.Pos(t.line, t.col), "and", e, self._parse_not())
        return e

    def _parse_not(self) -> ast.Expr:
        if self.peek().kind == "not":
            t = self.advance()
            return ast.Not(ast.Pos(t.line, t.col), self._parse_not())
        return self._parse_comparison()

    def _parse_comparison(self) -> ast.Expr:
        e = self._parse_additive()
        if self.peek().kind in _COMPARE:
            t = self.advance()
            e = ast.BinOp(ast.Pos(t.line, t.col), t.kind, e, self._parse_additive())
        return e

    def _parse_additive(self) -> ast.Expr:
        e = self._parse_multiplicative()
        while self.peek().kind in ("+", "-"):
            t = self.advance()
            e = ast.BinOp(ast.Pos(t.line, t.col), t.kind, e, self._parse_multiplicative())
        return e

    def _parse_multiplicative(self) -> ast.Expr:
        e = self._parse_unary()
        while self.peek().kind in ("*", "/"):
            t = self.advance()
            e = ast.BinOp(ast.Pos(t.line, t.col), t.kind, e, self._parse_unary())
        return e

    def _parse_unary(self) -> ast.Expr:
        if self.peek().kind == "-":
            t = self.advance()
            return ast.NegOp(ast.Pos(t.line, t.col), self._parse_unary())
        return self._parse_primary()

    def _parse_primary(self) -> ast.Expr:
        t = self.peek()
        pos = ast.Pos(t.line, t.col)
        if t.kind == "NUMBER":
            self.advance()
            return ast.Num(pos, t.value)
        if t.kind == "STRING":
            self.advance()
            return ast.Str(pos, t.value)
        if t.kind in ("true", "false"):
            self.advance()
            return ast.Bool(pos, t.kind == "true")
        if t.kind == "(":
            self.advance()
            e = self.parse_expr()
            self.expect(")")
            return e
        if t.kind == "[":
            return self._parse_shape_lit()
        if t.kind == "input":
            self.advance()
            self.expect("(")
            name = self.expect("STRING")
            shape = None
            if self.peek().kind == ",":
                self.advance()
                shape = self._parse_shape_lit()
            self.expect(")")
            return ast.Input(pos, name.value, shape)
        if t.kind == "native":
            self.advance()
            name = self.expect("IDENT")
            return ast.Native(pos, name.text, self._parse_args())
        if t.kind == "item":
            self.advance()
            self.expect("(")
            e = self.parse_expr()
            self.expect(")")
            return ast.Item(pos, e)
        if t.kind == "IDENT":
            if self.peek(1).kind == "(":
                if t.text in OP_NAMES:
                    self.advance()
                    return ast.OpCall(pos, t.text, self._parse_args())
                raise ParseError(f"unknown operation {t.text!r}", t.line, t.col)
            self.advance()
            return ast.Ident(pos, t.text)
        raise ParseError(f"expected an expression, found {t.kind!r}", t.line, t.col)

    def _parse_args(self) -> list[ast.Expr]:
        self.expect("(")
        args: list[ast.Expr] = []
        if self.peek().kind != ")":
            args.append(self.parse_expr())
            while self.peek().kind == ",":
                self.advance()
                args.append(self.parse_expr())
        self.expect(")")
        return args

    def _parse_shape_lit(self) -> ast.ShapeLit:
        t = self.expect("[")
        dims: list[ast.Expr] = []
        if self.peek().kind != "]":
            dims.append(self.parse_expr())
            while self.peek().kind == ",":
                self.advance()
                dims.append(self.parse_expr())
        self.expect("]")
        return ast.ShapeLit(ast.Pos(t.line, t.col), dims)


def parse(source: str) -> ast.Program:
    return Parser(tokenize(source)).parse_program()


# -- validation --


def _walk_exprs(e: ast.Expr):
    yield e
    for child in _expr_children(e):
        yield from _walk_exprs(child)


def _expr_children(e: ast.Expr) -> list[ast.Expr]:
    if isinstance(e, ast.BinOp):
        return [e.left, e.right]
    if isinstance(e, (ast.Not, ast.NegOp, ast.Item)):
        return [e.operand]
    if isinstance(e, (ast.OpCall, ast.Native)):
        return list(e.args)
    if isinstance(e, ast.ShapeLit):
        return list(e.dims)
    if isinstance(e, ast.Input):
        return [e.shape] if e.shape is not None else []
    return []


def _validate_opcall(e: ast.OpCall):
    lo, hi = OP_SURFACE_ARITY[e.name]
    if not (lo <= len(e.args) <= hi):
        raise ValidationError(
            f"{e.pos.line}:{e.pos.col}: {e.name} takes {lo}"
            + (f"..{hi}" if hi != lo else "")
            + f" argument(s), got {len(e.args)}"
        )
    shape_positions = set()
    if e.name == "transpose" and len(e.args) == 2:
        shape_positions = {1}
    elif e.name == "reshape":
        shape_positions = {1}
    elif e.name == "fill":
        shape_positions = {0}
    for idx, arg in enumerate(e.args):
        if idx in shape_positions and not isinstance(arg, ast.ShapeLit):
            raise ValidationError(
                f"{e.pos.line}:{e.pos.col}: {e.name} argument {idx + 1} must be a shape literal"
            )
        if idx not in shape_positions and isinstance(arg, ast.ShapeLit):
            raise ValidationError(
                f"{e.pos.line}:{e.pos.col}: {e.name} argument {idx + 1} cannot be a shape literal"
            )


def _contains_tensor_expr(e: ast.Expr) -> bool:
    return any(isinstance(x, (ast.OpCall, ast.Item, ast.Input)) for x in _walk_exprs(e))


def _validate_expr(e: ast.Expr):
    for x in _walk_exprs(e):
        if isinstance(x, ast.OpCall):
            _validate_opcall(x)
        elif isinstance(x, ast.Native):
            if x.name not in NATIVE_ARITY:
                raise ValidationError(f"{x.pos.line}:{x.pos.col}: unknown native {x.name!r}")
            if len(x.args) != NATIVE_ARITY[x.name]:
                raise ValidationError(
                    f"{x.pos.line}:{x.pos.col}: native {x.name} takes "
                    f"{NATIVE_ARITY[x.name]} argument(s), got {len(x.args)}"
                )
        elif isinstance(x, ast.ShapeLit):
            for d in x.dims:
                if isinstance(d, (ast.OpCall, ast.ShapeLit)):
                    raise ValidationError(
                        f"{x.pos.line}:{x.pos.col}: shape dimensions must be host expressions"
                    )


def _validate(prog: ast.Program):
    if len(set(prog.var_names)) != len(prog.var_names):
        dupes = sorted({n for n in prog.var_names if prog.var_names.count(n) > 1})
        raise ValidationError(f"duplicate var declaration(s): {', '.join(dupes)}")

    declared: set[str] = set()

    def check(stmts: list[ast.Stmt], in_prologue: bool):
        for st in stmts:
            where = f"{st.pos.line}:{st.pos.col}"
            if isinstance(st, ast.VarDecl):
                if not in_prologue:
                    raise ValidationError(f"{where}: var declarations are only allowed in the prologue")
                declared.add(st.name)
                _validate_expr(st.expr)
            elif isinstance(st, ast.LetDecl):
                declared.add(st.name)
                _validate_expr(st.expr)
            elif isinstance(st, ast.Assign):
                if st.name in RESERVED_NAMES:
                    raise ValidationError(f"{where}: cannot assign to reserved name {st.name!r}")
                if st.name not in declared:
                    raise ValidationError(f"{where}: assignment to undeclared name {st.name!r}")
                _validate_expr(st.expr)
            elif isinstance(st, ast.Print):
                _validate_expr(st.expr)
            elif isinstance(st, ast.If):
                if in_prologue:
                    raise ValidationError(f"{where}: control flow is not allowed in the prologue")
                _validate_expr(st.cond)
                check(st.then, False)
                for cond, block in st.elifs:
                    _validate_expr(cond)
                    check(block, False)
                if st.orelse is not None:
                    check(st.orelse, False)
            elif isinstance(st, ast.While):
                if in_prologue:
                    raise ValidationError(f"{where}: control flow is not allowed in the prologue")
                if _contains_tensor_expr(st.cond):
                    raise ValidationError(
                        f"{where}: while conditions must be host expressions; "
                        "materialize into a local first"
                    )
                _validate_expr(st.cond)
                check(st.body, False)
            elif isinstance(st, ast.For):
                if in_prologue:
                    raise ValidationError(f"{where}: control flow is not allowed in the prologue")
                declared.add(st.var)
                _validate_expr(st.count)
                check(st.body, False)

    check(prog.prologue, True)
    check(prog.body, False)
