import copy

import pytest

from blamescope.errors import (
    CyclicGraph,
    DanglingParent,
    IncompleteExogenousAssignment,
    NonNormalizedDistribution,
    PartialMechanism,
    StateSpaceTooLarge,
    UnknownVariable,
    ValueOutOfDomain,
    ZeroProbabilityObservation,
)
from blamescope.scm import (
    Domain,
    EndogenousVar,
    ExogenousVar,
    OutcomeSpec,
    Scm,
    abduct,
    counterfactual_probability,
    event_probability,
    event_probability_mc,
    intervene,
    solve,
    validate,
)

from conftest import xor_scm

BITS = ("0", "1")
Y1 = OutcomeSpec(((("Y", "eq", "1"),),))


def test_validate_xor_ok(xor):
    validate(xor)


def test_validate_cycle():
    scm = Scm(
        exogenous=(ExogenousVar("E", Domain(BITS), (0.5, 0.5)),),
        endogenous=(
            EndogenousVar("X", Domain(BITS), ("Y",), {("0",): "0", ("1",): "1"}),
            EndogenousVar("Y", Domain(BITS), ("X",), {("0",): "0", ("1",): "1"}),
        ),
    )
    with pytest.raises(CyclicGraph, match="X"):
        validate(scm)


def test_validate_nonnormalized():
    scm = Scm(
        exogenous=(ExogenousVar("E", Domain(BITS), (0.5, 0.6)),),
        endogenous=(),
    )
    with pytest.raises(NonNormalizedDistribution, match="E"):
        validate(scm)


def test_validate_dangling_parent():
    scm = Scm(
        exogenous=(),
        endogenous=(
            EndogenousVar("X", Domain(BITS), ("NOPE",), {("0",): "0", ("1",): "1"}),
        ),
    )
    with pytest.raises(DanglingParent, match="NOPE"):
        validate(scm)


def test_validate_partial_mechanism():
    scm = Scm(
        exogenous=(ExogenousVar("E", Domain(BITS), (0.5, 0.5)),),
        endogenous=(EndogenousVar("X", Domain(BITS), ("E",), {("0",): "0"}),),
    )
    with pytest.raises(PartialMechanism, match="X"):
        validate(scm)


def test_solve_xor(xor):
    assert solve(xor, {"E1": "1", "E2": "1"}) == {"X": "1", "Y": "0"}
    assert solve(xor, {"E1": "0", "E2": "0"}) == {"X": "0", "Y": "0"}


def test_solve_chain():
    scm = Scm(
        exogenous=(ExogenousVar("E1", Domain(BITS), (0.5, 0.5)),),
        endogenous=(
            EndogenousVar("A", Domain(BITS), ("E1",), {("0",): "0", ("1",): "1"}),
            EndogenousVar("B", Domain(BITS), ("A",), {("0",): "0", ("1",): "1"}),
            EndogenousVar("C", Domain(BITS), ("B",), {("0",): "0", ("1",): "1"}),
        ),
    )
    validate(scm)
    assert solve(scm, {"E1": "1"}) == {"A": "1", "B": "1", "C": "1"}


def test_solve_incomplete_noise(xor):
    with pytest.raises(IncompleteExogenousAssignment):
        solve(xor, {"E1": "1"})


def test_solve_deterministic(xor):
    e = {"E1": "1", "E2": "0"}
    assert solve(xor, e) == solve(xor, e)


def test_event_probability_xor(xor):
    # P(Y=1) = P(E1=1)P(E2=0) + P(E1=0)P(E2=1) = 0.35 + 0.15
    assert event_probability(xor, Y1) == pytest.approx(0.5, abs=1e-12)


def test_event_probability_empty_clause_list(xor):
    assert event_probability(xor, OutcomeSpec(())) == 0.0


def test_event_probability_exhaustive(xor):
    phi = OutcomeSpec(((("X", "eq", "0"),), (("X", "eq", "1"),)))
    assert event_probability(xor, phi) == pytest.approx(1.0, abs=1e-12)


def test_event_probability_state_cap(xor):
    with pytest.raises(StateSpaceTooLarge):
        event_probability(xor, Y1, max_states=2)


def test_mc_converges(xor):
    est = event_probability_mc(xor, Y1, samples=100000, seed=0)
    assert abs(est - 0.5) <= 0.01


def test_mc_deterministic(xor):
    a = event_probability_mc(xor, Y1, samples=1000, seed=9)
    b = event_probability_mc(xor, Y1, samples=1000, seed=9)
    assert a == b


def test_mc_unsatisfiable(xor):
    assert event_probability_mc(xor, OutcomeSpec(()), samples=100, seed=3) == 0.0


def test_mc_single_sample(xor):
    assert event_probability_mc(xor, Y1, samples=1, seed=5) in (0.0, 1.0)


def test_intervene_forces_value(xor):
    fixed = intervene(xor, "X", "1")
    phi = OutcomeSpec(((("X", "eq", "1"),),))
    assert event_probability(fixed, phi) == 1.0


def test_intervene_does_not_mutate(xor):
    snapshot = copy.deepcopy(xor)
    intervene(xor, "X", "0")
    assert xor == snapshot


def test_intervene_idempotent_on_constant(xor):
    once = intervene(xor, "X", "0")
    twice = intervene(once, "X", "0")
    for e1 in BITS:
        for e2 in BITS:
            e = {"E1": e1, "E2": e2}
            assert solve(once, e) == solve(twice, e)


def test_intervene_errors(xor):
    with pytest.raises(UnknownVariable):
        intervene(xor, "Z", "0")
    with pytest.raises(ValueOutOfDomain):
        intervene(xor, "X", "2")


def test_abduct_point_posterior(xor):
    post = abduct(xor, {"X": "1", "Y": "0"})
    assert len(post.support) == 1
    e, p = post.support[0]
    assert e == {"E1": "1", "E2": "1"}
    assert p == pytest.approx(1.0, abs=1e-12)


def test_abduct_empty_observation_is_prior(xor):
    post = abduct(xor, {})
    probs = {tuple(sorted(e.items())): p for e, p in post.support}
    assert probs[(("E1", "0"), ("E2", "0"))] == pytest.approx(0.35, abs=1e-12)
    assert probs[(("E1", "1"), ("E2", "1"))] == pytest.approx(0.15, abs=1e-12)
    assert sum(p for _, p in post.support) == pytest.approx(1.0, abs=1e-9)


def test_abduct_impossible_observation():
    scm = xor_scm(p_e1=0.0)
    with pytest.raises(ZeroProbabilityObservation):
        abduct(scm, {"X": "1"})


def test_abduct_support_consistency(xor):
    post = abduct(xor, {"Y": "1"})
    for e, p in post.support:
        assert p > 0
        assert solve(xor, e)["Y"] == "1"


def test_counterfactual_worked_example(xor):
    # Observing X=1, Y=0 forces E2=1; under do(X=0), Y = 0 xor 1 = 1.
    assert counterfactual_probability(xor, {"X": "1", "Y": "0"}, [("X", "0")], Y1) == 1.0


def test_counterfactual_factual_collapse(xor):
    phi = OutcomeSpec(((("Y", "eq", "0"),),))
    p = counterfactual_probability(xor, {"X": "1", "Y": "0"}, [], phi)
    assert p == pytest.approx(1.0, abs=1e-12)


def test_counterfactual_matching_intervention(xor):
    phi = OutcomeSpec(((("Y", "eq", "0"),),))
    p = counterfactual_probability(xor, {"X": "1", "Y": "0"}, [("X", "1")], phi)
    assert p == pytest.approx(1.0, abs=1e-12)


def test_counterfactual_collapse_law(xor):
    p = counterfactual_probability(xor, {}, [], Y1)
    assert abs(p - event_probability(xor, Y1)) <= 1e-12
