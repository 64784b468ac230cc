"""AST for the C-like toy language.

Nodes are frozen dataclasses.  `preorder` walks a tree in a fixed order
(node first, then dataclass fields left to right) and is the basis of the
deterministic site numbering used by the mutation operators;
`replace_nodes` rebuilds a tree with substitutions at given preorder
positions.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

from ..space import Interval


class Node:
    def children(self) -> list:
        out = []
        for f in dataclasses.fields(self):
            v = getattr(self, f.name)
            if isinstance(v, Node):
                out.append(v)
        return out


# -- expressions (integer-valued) ---------------------------------------------

ARITH_OPS = ("+", "-", "*", "/", "%")


@dataclass(frozen=True)
class IntLit(Node):
    value: int


@dataclass(frozen=True)
class Var(Node):
    name: str


@dataclass(frozen=True)
class ArrayRead(Node):
    name: str
    index: Node


@dataclass(frozen=True)
class BinOp(Node):
    op: str  # one of ARITH_OPS
    left: Node
    right: Node


@dataclass(frozen=True)
class Neg(Node):
    operand: Node


# -- conditions (boolean-valued) ----------------------------------------------

CMP_OPS = ("<", "<=", ">", ">=", "==", "!=")


@dataclass(frozen=True)
class BoolLit(Node):
    value: bool


@dataclass(frozen=True)
class Cmp(Node):
    op: str  # one of CMP_OPS
    left: Node
    right: Node


@dataclass(frozen=True)
class And(Node):
    left: Node
    right: Node


@dataclass(frozen=True)
class Or(Node):
    left: Node
    right: Node


@dataclass(frozen=True)
class Not(Node):
    operand: Node


# -- statements ----------------------------------------------------------------


@dataclass(frozen=True)
class Abort(Node):
    pass


@dataclass(frozen=True)
class Skip(Node):
    pass


@dataclass(frozen=True)
class VarTarget(Node):
    name: str


@dataclass(frozen=True)
class ArrayTarget(Node):
    name: str
    index: Node


@dataclass(frozen=True)
class Assign(Node):
    target: Node  # VarTarget | ArrayTarget
    expr: Node


@dataclass(frozen=True)
class Seq(Node):
    first: Node
    second: Node


@dataclass(frozen=True)
class If(Node):
    cond: Node
    then: Node


@dataclass(frozen=True)
class IfElse(Node):
    cond: Node
    then: Node
    orelse: Node


@dataclass(frozen=True)
class While(Node):
    cond: Node
    body: Node


@dataclass(frozen=True)
class Block(Node):
    """Scope of a local integer variable over the rest of the block."""

    name: str
    interval: Interval | None  # required for exact-mode semantics
    body: Node


Program = Node  # a program is any statement tree


# -- generic traversal and rebuilding -------------------------------------------


def preorder(node: Node) -> list:
    """All nodes in deterministic preorder (node before its children)."""
    out = [node]
    for c in node.children():
        out.extend(preorder(c))
    return out


def replace_nodes(node: Node, substitutions: dict):
    """Rebuild `node` replacing the nodes at the given preorder indices.

    `substitutions` maps preorder index -> replacement node.  Replaced
    subtrees are not descended into (their indices still count the original
    subtree's nodes, matching `preorder` on the original tree).
    """
    counter = [0]

    def rebuild(n: Node):
        idx = counter[0]
        counter[0] += len(preorder(n))
        if idx in substitutions:
            return substitutions[idx]
        updates = {}
        inner = [idx + 1]

        def rebuild_at(child):
            save = counter[0]
            counter[0] = inner[0]
            new = rebuild(child)
            inner[0] = counter[0]
            counter[0] = save
            return new

        for f in dataclasses.fields(n):
            v = getattr(n, f.name)
            if isinstance(v, Node):
                updates[f.name] = rebuild_at(v)
        return dataclasses.replace(n, **updates) if updates else n

    return rebuild(node)


# -- pretty printing -------------------------------------------------------------

_PREC = {"||": 1, "&&": 2, "+": 4, "-": 4, "*": 5, "/": 5, "%": 5}


def _expr_src(e: Node, parent_prec: int = 0) -> str:
    if isinstance(e, IntLit):
        return str(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, ArrayRead):
        return f"{e.name}[{_expr_src(e.index)}]"
    if isinstance(e, Neg):
        return f"-{_expr_src(e.operand, 6)}"
    if isinstance(e, BinOp):
        p = _PREC[e.op]
        s = f"{_expr_src(e.left, p)} {e.op} {_expr_src(e.right, p + 1)}"
        return f"({s})" if p < parent_prec else s
    raise TypeError(f"not an expression node: {e!r}")


def _cond_src(c: Node, parent_prec: int = 0) -> str:
    if isinstance(c, BoolLit):
        return "true" if c.value else "false"
    if isinstance(c, Cmp):
        return f"{_expr_src(c.left)} {c.op} {_expr_src(c.right)}"
    if isinstance(c, Not):
        return f"!({_cond_src(c.operand)})"
    if isinstance(c, And):
        s = f"{_cond_src(c.left, 2)} && {_cond_src(c.right, 3)}"
        return f"({s})" if parent_prec > 2 else s
    if isinstance(c, Or):
        s = f"{_cond_src(c.left, 1)} || {_cond_src(c.right, 2)}"
        return f"({s})" if parent_prec > 1 else s
    raise TypeError(f"not a condition node: {c!r}")


def to_source(s: Node, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(s, Skip):
        return f"{pad}skip;"
    if isinstance(s, Abort):
        return f"{pad}abort;"
    if isinstance(s, Assign):
        t = s.target
        lhs = t.name if isinstance(t, VarTarget) else f"{t.name}[{_expr_src(t.index)}]"
        return f"{pad}{lhs} = {_expr_src(s.expr)};"
    if isinstance(s, Seq):
        return f"{to_source(s.first, indent)}\n{to_source(s.second, indent)}"
    if isinstance(s, If):
        return (
            f"{pad}if ({_cond_src(s.cond)}) {{\n"
            f"{to_source(s.then, indent + 1)}\n{pad}}}"
        )
    if isinstance(s, IfElse):
        return (
            f"{pad}if ({_cond_src(s.cond)}) {{\n{to_source(s.then, indent + 1)}\n"
            f"{pad}}} else {{\n{to_source(s.orelse, indent + 1)}\n{pad}}}"
        )
    if isinstance(s, While):
        return (
            f"{pad}while ({_cond_src(s.cond)}) {{\n"
            f"{to_source(s.body, indent + 1)}\n{pad}}}"
        )
    if isinstance(s, Block):
        iv = f" : {s.interval.lo}..{s.interval.hi}" if s.interval else ""
        return f"{pad}int {s.name}{iv};\n{to_source(s.body, indent)}"
    raise TypeError(f"not a statement node: {s!r}")
