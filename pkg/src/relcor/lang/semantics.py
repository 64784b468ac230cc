"""Denotational semantics: the function a program computes on a finite space.

Each construct is mapped compositionally to a finite relation:

* abort -> the empty relation; skip -> the identity.
* assignment -> {(s, s[target := E(s)]) | E defined at s, value in domain}
* sequence -> relational composition.
* conditional / alternation -> guard-restricted union of the branches.
* while -> closure of the guarded body, restricted to exits where the
  guard is false.
* block -> the body's relation on the extended space, with the local's
  initial and final values existentially projected away.

Partiality shrinks the domain: a state where an expression or guard
cannot be evaluated (or where an assigned value leaves the declared
interval) contributes no pair.
"""

from __future__ import annotations

from ..errors import RelcorError
from ..relations import Relation, empty, identity
from ..space import DEFAULT_CAP, ArrayDomain, State, StateSpace
from . import ast_nodes as A
from .interp import UndefinedEval, compile_cond, compile_expr


def default_fuel(space: StateSpace) -> int:
    """Ample fuel for exact-mode runs: 10 * (longest interval size)^2."""
    longest = 1
    for _, d in space.vars:
        size = d.elem.size if isinstance(d, ArrayDomain) else d.size
        longest = max(longest, size)
    return 10 * longest * longest


def _arrays(space: StateSpace) -> dict:
    return {n: d.length for n, d in space.vars if isinstance(d, ArrayDomain)}


def _split_by_guard(cond, space: StateSpace, states):
    """Partition states into (guard true, guard false); undefined guards
    fall in neither part."""
    f = compile_cond(cond, _arrays(space))
    true_set, false_set = set(), set()
    for s in states:
        env = dict(zip(space.names, s.values))
        try:
            (true_set if f(env) else false_set).add(s)
        except UndefinedEval:
            pass
    return true_set, false_set


def denote(p, space: StateSpace, cap: int = DEFAULT_CAP) -> Relation:
    """The relation [p] on `space`, computed by structural recursion."""
    space.check_enumerable(cap)
    states = list(space.states(cap))
    return _denote(p, space, states, cap)


def _denote(p, space: StateSpace, states: list, cap: int) -> Relation:
    if isinstance(p, A.Abort):
        return empty(space)
    if isinstance(p, A.Skip):
        return identity(space, cap)
    if isinstance(p, A.Assign):
        return _denote_assign(p, space, states)
    if isinstance(p, A.Seq):
        return _denote(p.first, space, states, cap).compose(
            _denote(p.second, space, states, cap)
        )
    if isinstance(p, A.If):
        t_true, t_false = _split_by_guard(p.cond, space, states)
        body = _denote(p.then, space, states, cap)
        pairs = {pr for pr in body.pairs if pr[0] in t_true}
        pairs |= {(s, s) for s in t_false}
        return Relation(space, pairs)
    if isinstance(p, A.IfElse):
        t_true, t_false = _split_by_guard(p.cond, space, states)
        then = _denote(p.then, space, states, cap)
        orelse = _denote(p.orelse, space, states, cap)
        pairs = {pr for pr in then.pairs if pr[0] in t_true}
        pairs |= {pr for pr in orelse.pairs if pr[0] in t_false}
        return Relation(space, pairs)
    if isinstance(p, A.While):
        t_true, t_false = _split_by_guard(p.cond, space, states)
        body = _denote(p.body, space, states, cap)
        step = Relation(space, {pr for pr in body.pairs if pr[0] in t_true})
        closed = step.closure()
        return Relation(space, {pr for pr in closed.pairs if pr[1] in t_false})
    if isinstance(p, A.Block):
        if p.interval is None:
            raise RelcorError(
                f"block local {p.name!r} needs a : lo..hi annotation in exact mode"
            )
        ext = space.extend(p.name, p.interval)
        ext.check_enumerable(cap)
        ext_states = list(ext.states(cap))
        inner = _denote(p.body, ext, ext_states, cap)
        pairs = {
            (State(space, s.values[:-1]), State(space, t.values[:-1]))
            for (s, t) in inner.pairs
        }
        return Relation(space, pairs)
    raise TypeError(f"not a statement node: {p!r}")


def _denote_assign(p: A.Assign, space: StateSpace, states: list) -> Relation:
    arrays = _arrays(space)
    val = compile_expr(p.expr, arrays)
    t = p.target
    pairs = set()
    if isinstance(t, A.VarTarget):
        dom = space.domain_of(t.name)
        vi = space.names.index(t.name)
        for s in states:
            env = dict(zip(space.names, s.values))
            try:
                v = val(env)
            except UndefinedEval:
                continue
            if v in dom:
                pairs.add((s, State(space, s.values[:vi] + (v,) + s.values[vi + 1 :])))
    else:
        dom = space.domain_of(t.name)
        elem = dom.elem
        length = dom.length
        vi = space.names.index(t.name)
        idx = compile_expr(t.index, arrays)
        for s in states:
            env = dict(zip(space.names, s.values))
            try:
                i = idx(env)
                v = val(env)
            except UndefinedEval:
                continue
            if 0 <= i < length and v in elem:
                a = s.values[vi]
                new = a[:i] + (v,) + a[i + 1 :]
                pairs.add((s, State(space, s.values[:vi] + (new,) + s.values[vi + 1 :])))
    return Relation(space, pairs)
