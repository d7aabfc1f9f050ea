"""Finite discrete acyclic structural causal models.

Variables take values in small symbolic domains. Endogenous mechanisms are
explicit lookup tables, so a model is fully serializable and every operation
(solving, event probability, intervention, abduction, counterfactuals) can be
carried out by exact enumeration of the exogenous joint space. A Monte Carlo
estimator is provided for spaces too large to enumerate.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
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

Value = str
Assignment = dict  # variable id -> value

PROB_TOL = 1e-9
DEFAULT_MAX_STATES = 1 << 24


@dataclass(frozen=True)
class Domain:
    """Ordered finite set of distinct symbolic values."""

    values: tuple

    def __post_init__(self):
        if len(self.values) == 0:
            raise ValueOutOfDomain("domain must be non-empty")
        if len(set(self.values)) != len(self.values):
            raise ValueOutOfDomain(f"domain values not unique: {self.values!r}")

    def index(self, value) -> int:
        try:
            return self.values.index(value)
        except ValueError:
            raise ValueOutOfDomain(f"value {value!r} not in domain {self.values!r}") from None

    def __contains__(self, value) -> bool:
        return value in self.values

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class ExogenousVar:
    id: str
    domain: Domain
    dist: tuple  # probabilities aligned with domain.values


@dataclass(frozen=True)
class EndogenousVar:
    id: str
    domain: Domain
    parents: tuple  # parent variable ids, endogenous or exogenous
    mechanism: dict  # parent-value tuple -> value in domain

    def __hash__(self):
        return hash(self.id)


@dataclass
class Scm:
    """A finite discrete acyclic SCM. Treat instances as immutable."""

    exogenous: tuple
    endogenous: tuple
    _order: tuple | None = field(default=None, repr=False, compare=False)

    def exogenous_by_id(self) -> dict:
        return {v.id: v for v in self.exogenous}

    def endogenous_by_id(self) -> dict:
        return {v.id: v for v in self.endogenous}

    def domain_of(self, var_id: str) -> Domain:
        for v in itertools.chain(self.exogenous, self.endogenous):
            if v.id == var_id:
                return v.domain
        raise UnknownVariable(f"unknown variable {var_id!r}")


@dataclass(frozen=True)
class OutcomeSpec:
    """Disjunction of conjunctions of (var, comparator, value) literals.

    comparator is "eq" or "neq". An empty clause list is unsatisfiable.
    """

    clauses: tuple  # tuple of clauses; each clause a tuple of (var, cmp, value)

    def satisfied(self, assignment: Assignment) -> bool:
        for clause in self.clauses:
            ok = True
            for var, cmp, value in clause:
                actual = assignment[var]
                if cmp == "eq":
                    ok = actual == value
                elif cmp == "neq":
                    ok = actual != value
                else:
                    raise ValueOutOfDomain(f"unknown comparator {cmp!r}")
                if not ok:
                    break
            if ok:
                return True
        return False

    def variables(self) -> set:
        return {var for clause in self.clauses for var, _, _ in clause}


@dataclass(frozen=True)
class NoisePosterior:
    """Posterior over exogenous joint assignments; support holds only
    positive-weight settings as (assignment, probability) pairs."""

    support: tuple


def _check_outcome(scm: Scm, phi: OutcomeSpec):
    endo = scm.endogenous_by_id()
    for clause in phi.clauses:
        for var, _, value in clause:
            if var not in endo:
                raise UnknownVariable(f"outcome references unknown endogenous variable {var!r}")
            if value not in endo[var].domain:
                raise ValueOutOfDomain(
                    f"outcome value {value!r} not in domain of {var!r}"
                )


def validate(scm: Scm) -> None:
    """Check all model invariants and cache a topological order.

    Raises CyclicGraph, DanglingParent, NonNormalizedDistribution or
    PartialMechanism naming the offending variable.
    """
    ids = [v.id for v in scm.exogenous] + [v.id for v in scm.endogenous]
    if len(set(ids)) != len(ids):
        dupes = sorted({i for i in ids if ids.count(i) > 1})
        raise DanglingParent(f"duplicate variable ids: {dupes}")

    for ex in scm.exogenous:
        if len(ex.dist) != len(ex.domain.values):
            raise NonNormalizedDistribution(
                f"{ex.id}: {len(ex.dist)} probabilities for {len(ex.domain.values)} values"
            )
        if any(p < 0 or p > 1 for p in ex.dist):
            raise NonNormalizedDistribution(f"{ex.id}: probability outside [0,1]")
        total = math.fsum(ex.dist)
        if abs(total - 1.0) > PROB_TOL:
            raise NonNormalizedDistribution(f"{ex.id}: probabilities sum to {total}")

    known = set(ids)
    exo_ids = {v.id for v in scm.exogenous}
    by_id = {}
    for v in itertools.chain(scm.exogenous, scm.endogenous):
        by_id[v.id] = v
    for en in scm.endogenous:
        for p in en.parents:
            if p not in known:
                raise DanglingParent(f"{en.id}: unknown parent {p!r}")
        parent_domains = [by_id[p].domain for p in en.parents]
        n_expected = 1
        for d in parent_domains:
            n_expected *= len(d)
        if len(en.mechanism) != n_expected:
            raise PartialMechanism(
                f"{en.id}: mechanism has {len(en.mechanism)} entries, expected {n_expected}"
            )
        for combo in itertools.product(*(d.values for d in parent_domains)):
            if combo not in en.mechanism:
                raise PartialMechanism(f"{en.id}: missing mechanism entry for {combo!r}")
            if en.mechanism[combo] not in en.domain:
                raise PartialMechanism(
                    f"{en.id}: mechanism output {en.mechanism[combo]!r} outside domain"
                )

    # Kahn's algorithm over endogenous vars; exogenous parents are sources.
    endo_ids = {v.id for v in scm.endogenous}
    indeg = {v.id: sum(1 for p in v.parents if p in endo_ids) for v in scm.endogenous}
    ready = [v.id for v in scm.endogenous if indeg[v.id] == 0]
    children = {v.id: [] for v in scm.endogenous}
    for v in scm.endogenous:
        for p in v.parents:
            if p in endo_ids:
                children[p].append(v.id)
    order = []
    while ready:
        nxt = ready.pop(0)
        order.append(nxt)
        for c in children[nxt]:
            indeg[c] -= 1
            if indeg[c] == 0:
                ready.append(c)
    if len(order) != len(scm.endogenous):
        stuck = sorted(i for i, d in indeg.items() if d > 0)
        raise CyclicGraph(f"cycle among endogenous variables: {stuck}")
    scm._order = tuple(order)
    _ = exo_ids  # parents may be exogenous; nothing further to check


def topological_order(scm: Scm) -> tuple:
    if scm._order is None:
        validate(scm)
    return scm._order


def solve(scm: Scm, e: Assignment) -> Assignment:
    """Evaluate mechanisms in topological order for a total exogenous
    setting; returns the unique total endogenous assignment."""
    order = topological_order(scm)
    endo = scm.endogenous_by_id()
    env = {}
    for ex in scm.exogenous:
        if ex.id not in e:
            raise IncompleteExogenousAssignment(f"missing exogenous value for {ex.id!r}")
        env[ex.id] = e[ex.id]
    for vid in order:
        var = endo[vid]
        key = tuple(env[p] for p in var.parents)
        env[vid] = var.mechanism[key]
    return {vid: env[vid] for vid in order}


def _enumerate_noise(scm: Scm, max_states: int):
    """Yield (exogenous assignment, probability) over the full joint space."""
    n_states = 1
    for ex in scm.exogenous:
        n_states *= len(ex.domain)
    if n_states > max_states:
        raise StateSpaceTooLarge(
            f"exogenous joint space has {n_states} states (cap {max_states}); "
            "use the Monte Carlo estimator"
        )
    ids = [ex.id for ex in scm.exogenous]
    value_lists = [ex.domain.values for ex in scm.exogenous]
    prob_lists = [ex.dist for ex in scm.exogenous]
    for combo in itertools.product(*(range(len(v)) for v in value_lists)):
        prob = 1.0
        for axis, idx in enumerate(combo):
            prob *= prob_lists[axis][idx]
        e = {ids[axis]: value_lists[axis][idx] for axis, idx in enumerate(combo)}
        yield e, prob


def event_probability(
    scm: Scm, phi: OutcomeSpec, max_states: int = DEFAULT_MAX_STATES
) -> float:
    """Exact probability of the outcome by enumerating the exogenous joint
    space, solving, and summing weights of satisfying settings."""
    topological_order(scm)
    _check_outcome(scm, phi)
    terms = []
    for e, prob in _enumerate_noise(scm, max_states):
        if prob > 0 and phi.satisfied(solve(scm, e)):
            terms.append(prob)
    return math.fsum(terms)


def _compiled_tables(scm: Scm):
    """Index-coded lookup tables for vectorized solving."""
    by_id = {v.id: v for v in itertools.chain(scm.exogenous, scm.endogenous)}
    luts = {}
    for vid in topological_order(scm):
        var = by_id[vid]
        parent_domains = [by_id[p].domain for p in var.parents]
        shape = tuple(len(d) for d in parent_domains) or (1,)
        lut = np.empty(shape, dtype=np.int64)
        if var.parents:
            for combo in itertools.product(*(range(len(d)) for d in parent_domains)):
                values = tuple(
                    parent_domains[axis].values[idx] for axis, idx in enumerate(combo)
                )
                lut[combo] = var.domain.index(var.mechanism[values])
        else:
            lut[0] = var.domain.index(var.mechanism[()])
        luts[vid] = lut
    return luts


def event_probability_mc(
    scm: Scm, phi: OutcomeSpec, samples: int, seed: int
) -> float:
    """Monte Carlo estimate of event_probability; deterministic in
    (seed, samples)."""
    if samples < 1:
        raise ValueOutOfDomain("samples must be >= 1")
    topological_order(scm)
    _check_outcome(scm, phi)
    rng = np.random.default_rng(seed)
    by_id = {v.id: v for v in itertools.chain(scm.exogenous, scm.endogenous)}
    codes = {}
    for ex in scm.exogenous:
        codes[ex.id] = rng.choice(
            len(ex.domain), size=samples, p=np.asarray(ex.dist, dtype=float)
        )
    luts = _compiled_tables(scm)
    for vid in topological_order(scm):
        var = by_id[vid]
        if var.parents:
            idx = tuple(codes[p] for p in var.parents)
            codes[vid] = luts[vid][idx]
        else:
            codes[vid] = np.full(samples, luts[vid][0])

    hit = np.zeros(samples, dtype=bool)
    for clause in phi.clauses:
        ok = np.ones(samples, dtype=bool)
        for var_id, cmp, value in clause:
            target = by_id[var_id].domain.index(value)
            if cmp == "eq":
                ok &= codes[var_id] == target
            else:
                ok &= codes[var_id] != target
        hit |= ok
    return float(np.count_nonzero(hit)) / samples


def intervene(scm: Scm, var: str, value) -> Scm:
    """do(var = value): replace the mechanism with a constant. Returns a new
    model; the input is untouched."""
    endo = scm.endogenous_by_id()
    if var not in endo:
        raise UnknownVariable(f"cannot intervene on unknown endogenous variable {var!r}")
    target = endo[var]
    if value not in target.domain:
        raise ValueOutOfDomain(f"value {value!r} not in domain of {var!r}")
    forced = EndogenousVar(id=var, domain=target.domain, parents=(), mechanism={(): value})
    new_endo = tuple(forced if v.id == var else v for v in scm.endogenous)
    out = Scm(exogenous=scm.exogenous, endogenous=new_endo)
    validate(out)
    return out


def abduct(scm: Scm, observation: Assignment, max_states: int = DEFAULT_MAX_STATES) -> NoisePosterior:
    """Posterior over exogenous joint settings consistent with a (possibly
    partial) endogenous observation."""
    topological_order(scm)
    endo = scm.endogenous_by_id()
    for var, value in observation.items():
        if var not in endo:
            raise UnknownVariable(f"observation references unknown endogenous variable {var!r}")
        if value not in endo[var].domain:
            raise ValueOutOfDomain(f"observed value {value!r} not in domain of {var!r}")
    support = []
    for e, prob in _enumerate_noise(scm, max_states):
        if prob <= 0:
            continue
        x = solve(scm, e)
        if all(x[var] == value for var, value in observation.items()):
            support.append((e, prob))
    total = math.fsum(p for _, p in support)
    if total == 0:
        raise ZeroProbabilityObservation(f"observation {observation!r} is impossible under the model")
    return NoisePosterior(support=tuple((e, p / total) for e, p in support))


def counterfactual_probability(
    scm: Scm,
    observation: Assignment,
    interventions,
    phi: OutcomeSpec,
    max_states: int = DEFAULT_MAX_STATES,
) -> float:
    """Abduct noise from the observation, apply the interventions, and
    evaluate the outcome probability under the posterior."""
    posterior = abduct(scm, observation, max_states=max_states)
    modified = scm
    for var, value in interventions:
        modified = intervene(modified, var, value)
    _check_outcome(modified, phi)
    terms = [
        p for e, p in posterior.support if phi.satisfied(solve(modified, e))
    ]
    return math.fsum(terms)
