"""End-to-end acceptance suite: the three bundled studies, randomized
property suites over the relation calculus and the interpreter, and report
determinism."""

import json
import random

from randgen import (
    correct_program_for,
    program_space,
    random_deterministic,
    random_program,
    random_relation,
    small_space,
)
from relcor.lang.ast_nodes import While, preorder
from relcor.lang.interp import FinalState, execute
from relcor.lang.semantics import denote
from relcor.mutate import generate
from relcor.relations import competence_domain, is_correct, more_correct, refines
from relcor.specs import EnumeratedSpec
from relcor.suites import classify, run_suite, select_tests


def test_lattice_study_matches_expected_facts():
    from relcor.studies import lattice

    assert lattice.check(lattice.run()) == []


def test_arraysum_study_matches_expected_facts():
    from relcor.studies import arraysum

    assert arraysum.check(arraysum.run()) == []


def test_fermat_study_matches_expected_facts(fermat_report):
    from relcor.studies import fermat

    assert fermat.check(fermat_report) == []


def test_property_suites_hold_with_zero_counterexamples():
    _refinement_partial_order_laws(n=1000)
    _correctness_iff_competence_domain_is_full(n=1000)
    _relative_correctness_is_reflexive_and_transitive(n=1000)
    _correct_programs_are_more_correct_than_everything(n=500)
    _denote_agrees_with_bounded_execution(n=200)
    _testing_mode_agrees_with_exact_mode(n=100)


def test_fermat_report_is_byte_identical_across_runs(fermat_report):
    from relcor.studies import fermat

    first = json.dumps(fermat_report, sort_keys=True, indent=1).encode()
    second = json.dumps(fermat.run(), sort_keys=True, indent=1).encode()
    assert first == second


# -- property suite bodies ----------------------------------------------------------


def _refinement_partial_order_laws(n):
    rng = random.Random(101)
    antisym = transitive = 0
    for _ in range(n):
        sp = small_space(rng)
        a, b, c = (random_relation(rng, sp) for _ in range(3))
        assert refines(a, a)
        if refines(a, b) and refines(b, a):
            antisym += 1
            assert a == b
        if refines(a, b) and refines(b, c):
            transitive += 1
            assert refines(a, c)
    assert antisym > 0 and transitive > 0


def _correctness_iff_competence_domain_is_full(n):
    rng = random.Random(202)
    for _ in range(n):
        sp = small_space(rng)
        r = random_relation(rng, sp)
        p = random_deterministic(rng, sp)
        cd = competence_domain(r, p, warn_nondeterministic=False)
        assert refines(p, r) == (cd == r.domain())
        assert is_correct(p, r) == (cd == r.domain())


def _relative_correctness_is_reflexive_and_transitive(n):
    rng = random.Random(303)
    chained = 0
    for _ in range(n):
        sp = small_space(rng)
        r = random_relation(rng, sp)
        p1, p2, p3 = (random_deterministic(rng, sp) for _ in range(3))
        assert more_correct(p1, p1, r)
        assert not more_correct(p1, p1, r, strict=True)
        if more_correct(p1, p2, r) and more_correct(p2, p3, r):
            chained += 1
            assert more_correct(p1, p3, r)
    assert chained > 0


def _correct_programs_are_more_correct_than_everything(n):
    rng = random.Random(404)
    for _ in range(n):
        sp = small_space(rng)
        r = random_relation(rng, sp)
        p = correct_program_for(rng, r)
        q = random_deterministic(rng, sp)
        assert is_correct(p, r)
        assert more_correct(p, q, r)


def _conclusive_fuel(program, space):
    # a terminating exact-mode run never revisits a (loop, state) pair, so
    # this many completed iterations decides termination
    loops = sum(isinstance(node, While) for node in preorder(program))
    return loops * space.num_states + 1


def _denote_agrees_with_bounded_execution(n):
    rng = random.Random(505)
    for _ in range(n):
        sp = program_space(rng, max_states=500)
        p = random_program(rng, sp)
        rel = denote(p, sp)
        fuel = _conclusive_fuel(p, sp)
        dom = rel.domain()
        for s in sp.states():
            out = execute(p, s, fuel, mode="exact")
            if isinstance(out, FinalState):
                assert rel.image(s) == frozenset({out.state})
            else:
                assert s not in dom


def _testing_mode_agrees_with_exact_mode(n):
    rng = random.Random(606)
    done = 0
    while done < n:
        sp = program_space(rng, max_states=60)
        base = random_program(rng, sp)
        mutants = generate(base, ("AORB", "literal+-1"))
        r = random_relation(rng, sp)
        if not mutants or not r.pairs:
            continue
        spec = EnumeratedSpec(r)
        suite = select_tests(spec, strategy="exhaustive")
        m = rng.choice(mutants)
        fuel = max(_conclusive_fuel(base, sp), _conclusive_fuel(m.program, sp))
        base_fn = denote(base, sp)
        mut_fn = denote(m.program, sp)
        if is_correct(mut_fn, r):
            exact_label = "absolutely_correct"
        elif more_correct(mut_fn, base_fn, r, strict=True):
            exact_label = "strictly_more_correct"
        elif more_correct(mut_fn, base_fn, r):
            exact_label = "as_correct"
        else:
            exact_label = "not_more_correct"
        report = run_suite(m.program, base, spec, suite, fuel, mode="exact")
        assert classify(report) == exact_label
        done += 1
