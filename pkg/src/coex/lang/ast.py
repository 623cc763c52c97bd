"""AST for the imperative tensor language.

Statement and loop identities are assigned in source order by the parser
and are the program-location component used to tell apart otherwise equal
operations recorded at different places.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Pos:
    line: int
    col: int


@dataclass(frozen=True)
class SourceLoc:
    """(statement id, lexically enclosing loop ids, outermost first)."""

    stmt_id: int
    loop_path: tuple[int, ...]

    def key(self) -> tuple:
        return (self.stmt_id, self.loop_path)


# --- expressions ---


@dataclass
class Expr:
    pos: Pos


@dataclass
class Num(Expr):
    value: "int | float"


@dataclass
class Str(Expr):
    value: str


@dataclass
class Bool(Expr):
    value: bool


@dataclass
class Ident(Expr):
    name: str


@dataclass
class BinOp(Expr):
    op: str
    left: Expr
    right: Expr


@dataclass
class Not(Expr):
    operand: Expr


@dataclass
class NegOp(Expr):
    operand: Expr


@dataclass
class ShapeLit(Expr):
    dims: list[Expr]


@dataclass
class OpCall(Expr):
    name: str
    args: list[Expr]


@dataclass
class Input(Expr):
    name: str
    shape: ShapeLit | None


@dataclass
class Native(Expr):
    name: str
    args: list[Expr]


@dataclass
class Item(Expr):
    operand: Expr


# --- statements ---


@dataclass
class Stmt:
    pos: Pos
    stmt_id: int
    loop_path: tuple[int, ...] = field(default=(), init=False)

    def loc(self) -> SourceLoc:
        return SourceLoc(self.stmt_id, self.loop_path)


@dataclass
class VarDecl(Stmt):
    name: str
    expr: Expr


@dataclass
class LetDecl(Stmt):
    name: str
    expr: Expr


@dataclass
class Assign(Stmt):
    name: str
    expr: Expr


@dataclass
class Print(Stmt):
    expr: Expr


@dataclass
class If(Stmt):
    cond: Expr
    then: list[Stmt]
    elifs: list[tuple[Expr, list[Stmt]]]
    orelse: list[Stmt] | None


@dataclass
class While(Stmt):
    cond: Expr
    body: list[Stmt]
    loop_id: int = -1


@dataclass
class For(Stmt):
    var: str
    count: Expr
    body: list[Stmt]
    loop_id: int = -1


@dataclass
class Program:
    prologue: list[Stmt]
    step_count: int
    body: list[Stmt]
    var_names: list[str]


def assign_loop_paths(program: Program):
    """Attach the lexical loop path to every statement (post-parse)."""

    def walk(stmts: list[Stmt], path: tuple[int, ...]):
        for st in stmts:
            st.loop_path = path
            if isinstance(st, If):
                walk(st.then, path)
                for _, block in st.elifs:
                    walk(block, path)
                if st.orelse is not None:
                    walk(st.orelse, path)
            elif isinstance(st, While):
                walk(st.body, path + (st.loop_id,))
            elif isinstance(st, For):
                walk(st.body, path + (st.loop_id,))

    walk(program.prologue, ())
    walk(program.body, ())
