import random

import pytest

from blamescope.blame import Action, Override
from blamescope.scm import Domain, EndogenousVar, ExogenousVar, Scm, validate

BITS = ("0", "1")


def xor_scm(p_e1=0.5, p_e2=0.3):
    """E1, E2 binary noise; X := E1; Y := X xor E2."""
    scm = Scm(
        exogenous=(
            ExogenousVar("E1", Domain(BITS), (1 - p_e1, p_e1)),
            ExogenousVar("E2", Domain(BITS), (1 - p_e2, p_e2)),
        ),
        endogenous=(
            EndogenousVar("X", Domain(BITS), ("E1",), {("0",): "0", ("1",): "1"}),
            EndogenousVar(
                "Y",
                Domain(BITS),
                ("X", "E2"),
                {
                    ("0", "0"): "0",
                    ("0", "1"): "1",
                    ("1", "0"): "1",
                    ("1", "1"): "0",
                },
            ),
        ),
    )
    validate(scm)
    return scm


@pytest.fixture
def xor():
    return xor_scm()


def random_scm(rng: random.Random, max_exo=6, max_endo=4):
    """Random acyclic binary SCM: parents are drawn only from earlier
    variables, so acyclicity holds by construction."""
    n_exo = rng.randint(1, max_exo)
    n_endo = rng.randint(1, max_endo)
    exogenous = []
    for i in range(n_exo):
        p1 = rng.random()
        exogenous.append(ExogenousVar(f"E{i}", Domain(BITS), (1 - p1, p1)))
    available = [ex.id for ex in exogenous]
    endogenous = []
    for i in range(n_endo):
        k = rng.randint(0, min(3, len(available)))
        parents = tuple(rng.sample(available, k))
        import itertools

        table = {
            combo: rng.choice(BITS)
            for combo in itertools.product(BITS, repeat=len(parents))
        }
        endogenous.append(EndogenousVar(f"V{i}", Domain(BITS), parents, table))
        available.append(f"V{i}")
    scm = Scm(exogenous=tuple(exogenous), endogenous=tuple(endogenous))
    validate(scm)
    return scm


def random_action(rng: random.Random, scm: Scm, label: str) -> Action:
    """Random override of one endogenous variable. Parents are drawn from
    variables that precede it in construction order, so the result stays
    acyclic."""
    import itertools

    target = rng.choice(scm.endogenous)
    earlier = [ex.id for ex in scm.exogenous]
    for v in scm.endogenous:
        if v.id == target.id:
            break
        earlier.append(v.id)
    k = rng.randint(0, min(2, len(earlier)))
    parents = tuple(rng.sample(earlier, k))
    table = {
        combo: rng.choice(BITS) for combo in itertools.product(BITS, repeat=len(parents))
    }
    return Action(label=label, overrides=(Override(target.id, parents, table),))


def random_outcome(rng: random.Random, scm: Scm):
    """Random DNF outcome over the endogenous variables."""
    from blamescope.scm import OutcomeSpec

    n_clauses = rng.randint(1, 2)
    clauses = []
    for _ in range(n_clauses):
        n_lits = rng.randint(1, 2)
        lits = tuple(
            (rng.choice(scm.endogenous).id, rng.choice(("eq", "neq")), rng.choice(BITS))
            for _ in range(n_lits)
        )
        clauses.append(lits)
    return OutcomeSpec(clauses=tuple(clauses))
