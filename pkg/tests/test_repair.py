from relcor.lang.parser import parse
from relcor.mutate import INTEGER_LITERAL, Patch, sites
from relcor.repair import (
    RepairConfig,
    classify_mutants,
    export_tree,
    repair,
    tree_from_json,
    tree_to_json,
    verify_fault,
)
from relcor.mutate import generate
from relcor.space import Interval, StateSpace
from relcor.specs import PredicateSpec
from relcor.suites import select_tests

SP = StateSpace((("x", Interval(0, 20)),))
SPEC = PredicateSpec(SP, "x <= 18", "x' == x + 2")

SEEDED = parse("x = x - 2;", SP)  # one flipped operator away from correct


def make_exact_cfg(**kw):
    return RepairConfig(operators=("AORB",), mode="exact", **kw)


def make_testing_cfg(**kw):
    suite = select_tests(SPEC, strategy="exhaustive")
    return RepairConfig(operators=("AORB",), suite=suite, fuel=100,
                        mode="testing", **kw)


def test_single_seeded_fault_repaired_at_depth_one():
    tree, metrics = repair(SEEDED, SPEC, make_exact_cfg())
    assert metrics.fault_depth_ub == 1
    assert tree.solutions
    label = tree.solutions[0]
    assert tree.nodes[label].depth == 1
    assert tree.nodes[label].classification == "absolutely_correct"


def test_testing_mode_agrees_on_the_seeded_fault():
    tree, metrics = repair(SEEDED, SPEC, make_testing_cfg())
    assert metrics.fault_depth_ub == 1
    assert tree.solutions


def test_already_correct_base_is_its_own_solution():
    tree, metrics = repair(parse("x = x + 2;", SP), SPEC, make_exact_cfg())
    assert tree.solutions == ["base"]
    assert metrics.fault_depth_ub == 0
    assert metrics.fault_density_lb == 0


def test_fault_density_counts_strictly_more_correct_root_children():
    tree, metrics = repair(SEEDED, SPEC, make_exact_cfg())
    strict_children = [
        n for n in tree.nodes.values()
        if n.depth == 1 and n.classification in
        ("strictly_more_correct", "absolutely_correct")
    ]
    merged = sum(len(n.aliases) for n in strict_children)
    assert metrics.fault_density_lb == len(strict_children) + merged


def test_unrepairable_program_reports_dead_ends():
    # every AORB mutant of x % 1 still has an empty competence domain
    hopeless = parse("x = x % 1;", SP)
    tree, metrics = repair(hopeless, SPEC, make_exact_cfg(max_depth=2))
    assert not tree.solutions
    assert metrics.fault_depth_ub is None
    assert "base" in tree.dead_ends


def test_max_depth_bounds_the_search():
    tree, _ = repair(SEEDED, SPEC, make_exact_cfg(max_depth=1))
    assert all(n.depth <= 1 for n in tree.nodes.values())


def test_classify_mutants_modes_agree_on_exhaustive_suite():
    mutants = generate(SEEDED, ("AORB",))
    exact = classify_mutants(SEEDED, mutants, SPEC, None, mode="exact")
    suite = select_tests(SPEC, strategy="exhaustive")
    # exact-mode execution over the full domain matches denotational labels
    from relcor.suites import classify, run_suite

    for m, label, _ in exact:
        report = run_suite(m.program, SEEDED, SPEC, suite, fuel=100, mode="exact")
        assert classify(report) == label


def test_verify_fault_on_a_literal_patch():
    base = parse("x = x + 1;", SP)
    site = sites(base, (INTEGER_LITERAL,))[0]
    good = verify_fault(base, Patch(((site, 2),)), SPEC)
    assert good["is_fault_removal"]
    assert len(good["cd_after"]) > len(good["cd_before"])
    bad = verify_fault(base, Patch(((site, 3),)), SPEC)
    assert not bad["is_fault_removal"]


def test_tree_json_roundtrip():
    tree, _ = repair(SEEDED, SPEC, make_exact_cfg())
    doc = tree_to_json(tree, SP)
    back = tree_from_json(doc)
    assert set(back.nodes) == set(tree.nodes)
    assert back.solutions == tree.solutions
    assert back.nodes[tree.solutions[0]].program == tree.nodes[tree.solutions[0]].program


def test_dot_export_mentions_every_node():
    tree, _ = repair(SEEDED, SPEC, make_exact_cfg())
    dot = export_tree(tree, "dot")
    assert dot.startswith("digraph")
    for label in tree.nodes:
        assert f'"{label}"' in dot
