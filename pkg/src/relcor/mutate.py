"""Deterministic single-site mutant generation over program ASTs.

Sites are addressed by preorder index, so regenerating mutants from the
same program always yields the same ordinals.  Operator families:

* ``AORB``       — each binary arithmetic operator replaced by each of the
                   other four, in the fixed order +, -, *, /, %.
* ``literal+-1`` — each integer literal k replaced by k+1 and k-1.
* ``index+-1``   — each array-index expression e replaced by e+1 and e-1.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, replace as dc_replace

from .errors import PatchError
from .lang.ast_nodes import (
    ARITH_OPS,
    ArrayRead,
    ArrayTarget,
    BinOp,
    IntLit,
    Node,
    preorder,
    replace_nodes,
    to_source,
)
from .lang.interp import FinalState, execute

BINARY_ARITH = "binary-arith-op"
INTEGER_LITERAL = "integer-literal"
ARRAY_INDEX = "array-index"

SITE_KINDS = (BINARY_ARITH, INTEGER_LITERAL, ARRAY_INDEX)
OPERATOR_FAMILIES = ("AORB", "literal+-1", "index+-1")

_FAMILY_KIND = {"AORB": BINARY_ARITH, "literal+-1": INTEGER_LITERAL, "index+-1": ARRAY_INDEX}


@dataclass(frozen=True)
class MutationSite:
    path: int  # preorder index in the base program
    kind: str


@dataclass(frozen=True)
class Mutant:
    ordinal: int
    site: MutationSite
    operator: str
    replacement: str
    program: Node


@dataclass(frozen=True)
class Patch:
    """A possibly multi-site substitution; sites must be disjoint."""

    substitutions: tuple  # of (MutationSite, replacement Node | op str | int)


def _node_kind(node: Node) -> str | None:
    if isinstance(node, BinOp):
        return BINARY_ARITH
    if isinstance(node, IntLit):
        return INTEGER_LITERAL
    if isinstance(node, (ArrayRead, ArrayTarget)):
        return ARRAY_INDEX
    return None


def sites(p: Node, kinds=SITE_KINDS) -> list:
    """Mutation sites of the given kinds, in deterministic preorder."""
    out = []
    for i, node in enumerate(preorder(p)):
        k = _node_kind(node)
        if k in kinds:
            out.append(MutationSite(i, k))
    return out


def _mutations_at(node: Node, family: str):
    """Yield (operator tag, replacement description, replacement node)."""
    if family == "AORB":
        for op in ARITH_OPS:
            if op != node.op:
                yield f"AORB:{node.op}->{op}", op, dc_replace(node, op=op)
    elif family == "literal+-1":
        for delta in (1, -1):
            tag = f"literal{'+' if delta > 0 else ''}{delta}"
            yield tag, str(node.value + delta), IntLit(node.value + delta)
    elif family == "index+-1":
        for delta, op in ((1, "+"), (-1, "-")):
            new_index = BinOp(op, node.index, IntLit(1))
            yield f"index{op}1", f"[{op}1]", dc_replace(node, index=new_index)
    else:
        raise ValueError(f"unknown operator family {family!r}")


def generate(p: Node, operators=("AORB",)) -> list:
    """All single-site mutants of `p` under the given operator families,
    with deterministic consecutive ordinals."""
    for fam in operators:
        if fam not in OPERATOR_FAMILIES:
            raise ValueError(f"unknown operator family {fam!r}")
    mutants = []
    nodes = preorder(p)
    for i, node in enumerate(nodes):
        kind = _node_kind(node)
        for fam in operators:
            if _FAMILY_KIND[fam] != kind:
                continue
            for tag, desc, new_node in _mutations_at(node, fam):
                program = replace_nodes(p, {i: new_node})
                mutants.append(
                    Mutant(
                        ordinal=len(mutants) + 1,
                        site=MutationSite(i, kind),
                        operator=tag,
                        replacement=desc,
                        program=program,
                    )
                )
    return mutants


def _fragment_for(node: Node, site: MutationSite, replacement) -> Node:
    if _node_kind(node) != site.kind:
        raise PatchError(
            f"site {site.path} is {type(node).__name__}, not of kind {site.kind}"
        )
    if site.kind == BINARY_ARITH:
        if isinstance(replacement, str) and replacement in ARITH_OPS:
            return dc_replace(node, op=replacement)
    elif site.kind == INTEGER_LITERAL:
        if isinstance(replacement, int):
            return IntLit(replacement)
    elif site.kind == ARRAY_INDEX:
        if isinstance(replacement, int) and replacement != 0:
            op = "+" if replacement > 0 else "-"
            return dc_replace(node, index=BinOp(op, node.index, IntLit(abs(replacement))))
    if isinstance(replacement, Node):
        return replacement
    raise PatchError(f"cannot apply replacement {replacement!r} at a {site.kind} site")


def apply_patch(p: Node, patch: Patch) -> Node:
    """Simultaneous substitution at all patch sites."""
    nodes = preorder(p)
    subs = {}
    seen = set()
    for site, replacement in patch.substitutions:
        if site.path in seen:
            raise PatchError(f"duplicate patch site {site.path}")
        seen.add(site.path)
        if not 0 <= site.path < len(nodes):
            raise PatchError(f"site {site.path} out of range")
        subs[site.path] = _fragment_for(nodes[site.path], site, replacement)
    return replace_nodes(p, subs)


def semantic_fingerprint(p: Node, probe, fuel: int, mode: str = "wide") -> str:
    """Digest of the program's behavior on the probe inputs.

    Equal digests flag behavioral-identity candidates (e.g. mutants that
    regenerate each other); confirm with exact denotations when the space
    permits.
    """
    h = hashlib.sha256()
    for s in probe:
        outcome = execute(p, s, fuel, mode)
        if isinstance(outcome, FinalState):
            h.update(repr(outcome.state.values).encode())
        else:
            h.update(type(outcome).__name__.encode())
        h.update(b"|")
    return h.hexdigest()


def mutant_manifest(p: Node, mutants: list) -> dict:
    """JSON-ready manifest of a mutant batch."""
    return {
        "base": to_source(p),
        "mutants": [
            {
                "ordinal": m.ordinal,
                "site": {"path": m.site.path, "kind": m.site.kind},
                "operator": m.operator,
                "replacement": m.replacement,
                "source": to_source(m.program),
            }
            for m in mutants
        ],
    }
