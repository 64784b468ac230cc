import pytest

from relcor.errors import PatchError
from relcor.lang.ast_nodes import to_source
from relcor.lang.parser import parse
from relcor.mutate import (
    ARRAY_INDEX,
    BINARY_ARITH,
    INTEGER_LITERAL,
    MutationSite,
    Patch,
    apply_patch,
    generate,
    mutant_manifest,
    semantic_fingerprint,
    sites,
)
from relcor.space import ArrayDomain, Interval, StateSpace

SP = StateSpace(
    (
        ("a", ArrayDomain(4, Interval(0, 2))),
        ("x", Interval(0, 6)),
        ("i", Interval(0, 4)),
    )
)

LOOP = parse("x = 0; i = 0; while (i < 3) { x = x + a[i]; i = i + 1; }", SP)


def test_site_inventory():
    found = sites(LOOP)
    kinds = [s.kind for s in found]
    # two binary ops (x+a[i], i+1), one array index, four literals
    assert kinds.count(BINARY_ARITH) == 2
    assert kinds.count(ARRAY_INDEX) == 1
    assert kinds.count(INTEGER_LITERAL) == 4


def test_aorb_yields_four_mutants_per_operator_in_fixed_order():
    mutants = generate(parse("x = x + 1;", SP), ("AORB",))
    assert [m.operator for m in mutants] == [
        "AORB:+->-", "AORB:+->*", "AORB:+->/", "AORB:+->%",
    ]
    assert [m.ordinal for m in mutants] == [1, 2, 3, 4]
    assert to_source(mutants[0].program).strip() == "x = x - 1;"


def test_ordinals_are_deterministic_across_runs():
    a = generate(LOOP, ("AORB", "literal+-1", "index+-1"))
    b = generate(LOOP, ("AORB", "literal+-1", "index+-1"))
    assert [(m.ordinal, m.operator, m.site) for m in a] == [
        (m.ordinal, m.operator, m.site) for m in b
    ]
    # 2 binary ops * 4 + 4 literals * 2 + 1 index * 2
    assert len(a) == 18


def test_literal_and_index_operators():
    mutants = generate(parse("x = a[i];", SP), ("index+-1",))
    texts = sorted(to_source(m.program).strip() for m in mutants)
    assert texts == ["x = a[i + 1];", "x = a[i - 1];"]

    mutants = generate(parse("i = 2;", SP), ("literal+-1",))
    texts = sorted(to_source(m.program).strip() for m in mutants)
    assert texts == ["i = 1;", "i = 3;"]


def test_unknown_operator_family_rejected():
    with pytest.raises(ValueError):
        generate(LOOP, ("AORB", "swap-args"))


def test_mutants_are_single_site():
    base_src = to_source(LOOP)
    for m in generate(LOOP, ("AORB",)):
        diff = [
            (a, b)
            for a, b in zip(base_src.splitlines(), to_source(m.program).splitlines())
            if a != b
        ]
        assert len(diff) == 1


def test_apply_patch_is_simultaneous():
    p = parse("x = 0; i = 0;", SP)
    found = sites(p, (INTEGER_LITERAL,))
    patch = Patch(((found[0], 5), (found[1], 4)))
    assert to_source(apply_patch(p, patch)).split() == ["x", "=", "5;", "i", "=", "4;"]


def test_apply_patch_rejects_overlapping_sites():
    p = parse("x = 1;", SP)
    site = sites(p, (INTEGER_LITERAL,))[0]
    with pytest.raises(PatchError):
        apply_patch(p, Patch(((site, 2), (site, 3))))


def test_apply_patch_rejects_kind_mismatch():
    p = parse("x = 1;", SP)
    with pytest.raises(PatchError):
        apply_patch(p, Patch(((MutationSite(0, BINARY_ARITH), "+"),)))


def test_fingerprint_separates_behaviors():
    probe = tuple(SP.states())
    p1 = parse("x = x + 1;", SP)
    p2 = parse("x = x + 2;", SP)
    p3 = parse("x = 1 + x;", SP)  # syntactically different, same behavior
    fp = lambda p: semantic_fingerprint(p, probe, fuel=50)
    assert fp(p1) != fp(p2)
    assert fp(p1) == fp(p3)


def test_manifest_lists_every_mutant():
    mutants = generate(LOOP, ("AORB",))
    doc = mutant_manifest(LOOP, mutants)
    assert len(doc["mutants"]) == 8
    entry = doc["mutants"][0]
    assert {"ordinal", "operator", "site", "source"} <= set(entry)
