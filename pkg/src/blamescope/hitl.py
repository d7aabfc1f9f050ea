"""Human-in-the-loop decision pipeline over recorded case logs.

The AI decides autonomously when its confidence is outside the uncertainty
band [l, u]; inside the band the case is flagged and the logged human
decision is used instead. Deploying this pipeline is compared against the
human-only policy, both empirically over a log and exactly through a small
causal model built from the log's joint frequencies.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

from .blame import Action, BlameReport, DiscountSpec, Override, discount
from .errors import (
    ConfigError,
    DuplicateCaseId,
    EmptyCaseList,
    EmptyTraceList,
    NonNormalizedDistribution,
)
from .scm import Domain, EndogenousVar, ExogenousVar, OutcomeSpec, Scm, validate

PROB_TOL = 1e-9

# Outcome over the built model: final decision disagrees with the truth.
HITL_OUTCOME = OutcomeSpec(clauses=((("ERR", "eq", "1"),),))


@dataclass(frozen=True)
class Case:
    id: str
    ai_confidence: float
    ai_decision: str
    human_decision: str
    truth: str

    def __post_init__(self):
        if not 0.0 <= self.ai_confidence <= 1.0:
            raise ConfigError(
                f"case {self.id!r}: confidence {self.ai_confidence} outside [0,1]"
            )


@dataclass(frozen=True)
class FlagPolicy:
    l: float
    u: float

    def __post_init__(self):
        if not (0.0 <= self.l < self.u <= 1.0):
            raise ConfigError(f"flag thresholds need 0 <= l < u <= 1, got l={self.l}, u={self.u}")


@dataclass(frozen=True)
class Trace:
    case_id: str
    flagged: int
    final_decision: str
    error: int


@dataclass(frozen=True)
class HitlBlameInput:
    cases: tuple
    policy: FlagPolicy
    ai_cost: float
    review_cost: float
    discount: DiscountSpec

    def __post_init__(self):
        if self.ai_cost < 0 or self.review_cost < 0:
            raise ConfigError("decision costs must be non-negative")


def flag(policy: FlagPolicy, p: float) -> int:
    """1 iff the confidence falls in the closed uncertainty band."""
    if not 0.0 <= p <= 1.0:
        raise ConfigError(f"confidence {p} outside [0,1]")
    return 1 if policy.l <= p <= policy.u else 0


def decide_hitl(case: Case, policy: FlagPolicy) -> Trace:
    flagged = flag(policy, case.ai_confidence)
    final = case.human_decision if flagged else case.ai_decision
    return Trace(
        case_id=case.id,
        flagged=flagged,
        final_decision=final,
        error=int(final != case.truth),
    )


def decide_human_only(case: Case) -> Trace:
    return Trace(
        case_id=case.id,
        flagged=1,
        final_decision=case.human_decision,
        error=int(case.human_decision != case.truth),
    )


def run(cases, mode: str, policy: FlagPolicy | None = None):
    """Apply the per-case rule over a whole log; order preserving."""
    seen = set()
    for c in cases:
        if c.id in seen:
            raise DuplicateCaseId(f"duplicate case id {c.id!r}")
        seen.add(c.id)
    if mode == "hitl":
        if policy is None:
            raise ConfigError("hitl mode requires a flag policy")
        return [decide_hitl(c, policy) for c in cases]
    if mode == "human_only":
        return [decide_human_only(c) for c in cases]
    raise ConfigError(f"unknown mode {mode!r}")


def error_rate(traces) -> float:
    if not traces:
        raise EmptyTraceList("cannot compute an error rate over zero traces")
    return sum(t.error for t in traces) / len(traces)


def hitl_blame(inp: HitlBlameInput) -> BlameReport:
    """Empirical blame for deploying the HITL pipeline instead of the
    human-only policy, with the two-rate cost model."""
    if not inp.cases:
        raise EmptyCaseList("case log is empty")
    hitl_traces = run(inp.cases, "hitl", inp.policy)
    human_traces = run(inp.cases, "human_only")
    p_a = error_rate(hitl_traces)
    p_ap = error_rate(human_traces)
    d = max(0.0, p_a - p_ap)
    frac = sum(t.flagged for t in hitl_traces) / len(hitl_traces)
    cost_a = inp.review_cost * frac + inp.ai_cost * (1.0 - frac)
    cost_ap = inp.review_cost
    gamma = discount(inp.discount, cost_a, cost_ap)
    return BlameReport(
        p_a=p_a,
        p_aprime=p_ap,
        delta=d,
        cost_a=cost_a,
        cost_aprime=cost_ap,
        gamma=gamma,
        db=gamma * d,
        method="empirical",
        flagged_fraction=frac,
    )


def confidence_bin(p: float, bins: int) -> int:
    """Equal-width bin index of a confidence in [0, 1]."""
    return min(int(p * bins), bins - 1)


def empirical_joint(cases, bins: int = 10):
    """Frequency joint over (truth, ai_decision, confidence bin,
    human_decision) from a log; returns (label_domain, joint)."""
    if not cases:
        raise EmptyCaseList("case log is empty")
    labels = sorted(
        {c.truth for c in cases}
        | {c.ai_decision for c in cases}
        | {c.human_decision for c in cases}
    )
    counts = Counter(
        (c.truth, c.ai_decision, confidence_bin(c.ai_confidence, bins), c.human_decision)
        for c in cases
    )
    n = len(cases)
    joint = {atom: count / n for atom, count in counts.items()}
    return labels, joint


def build_hitl_scm(
    label_domain, confidence_bins: int, joint_distribution: dict, policy: FlagPolicy
) -> Scm:
    """Discrete causal model of the pipeline.

    One exogenous variable carries the joint over (truth, ai decision,
    confidence bin, human decision); endogenous variables project it out,
    compute the flag from the bin midpoint, route the final decision, and
    mark the error. The human-only comparison is the action returned by
    human_only_action.
    """
    atoms = sorted(joint_distribution)
    total = math.fsum(joint_distribution.values())
    if abs(total - 1.0) > PROB_TOL:
        raise NonNormalizedDistribution(f"joint distribution sums to {total}")
    labels = tuple(label_domain)
    bin_values = tuple(str(b) for b in range(confidence_bins))
    atom_ids = tuple("|".join((t, a, str(b), h)) for t, a, b, h in atoms)

    exo = ExogenousVar(
        id="U",
        domain=Domain(values=atom_ids),
        dist=tuple(joint_distribution[atom] for atom in atoms),
    )
    proj = {
        "TRUTH": {(_id,): atom[0] for _id, atom in zip(atom_ids, atoms)},
        "AI": {(_id,): atom[1] for _id, atom in zip(atom_ids, atoms)},
        "BIN": {(_id,): str(atom[2]) for _id, atom in zip(atom_ids, atoms)},
        "H": {(_id,): atom[3] for _id, atom in zip(atom_ids, atoms)},
    }
    label_dom = Domain(values=labels)
    endogenous = [
        EndogenousVar("TRUTH", label_dom, ("U",), proj["TRUTH"]),
        EndogenousVar("AI", label_dom, ("U",), proj["AI"]),
        EndogenousVar("BIN", Domain(values=bin_values), ("U",), proj["BIN"]),
        EndogenousVar("H", label_dom, ("U",), proj["H"]),
        EndogenousVar(
            "PSI",
            Domain(values=("0", "1")),
            ("BIN",),
            {
                (str(b),): str(flag(policy, (b + 0.5) / confidence_bins))
                for b in range(confidence_bins)
            },
        ),
        EndogenousVar(
            "Y",
            label_dom,
            ("PSI", "AI", "H"),
            {
                (psi, a, h): h if psi == "1" else a
                for psi in ("0", "1")
                for a in labels
                for h in labels
            },
        ),
        EndogenousVar(
            "ERR",
            Domain(values=("0", "1")),
            ("Y", "TRUTH"),
            {(y, t): "1" if y != t else "0" for y in labels for t in labels},
        ),
    ]
    scm = Scm(exogenous=(exo,), endogenous=tuple(endogenous))
    validate(scm)
    return scm


def hitl_action() -> Action:
    """Identity action: keep the pipeline as built."""
    return Action(label="hitl")


def human_only_action(label_domain) -> Action:
    """Route the final decision straight to the human, ignoring the flag."""
    labels = tuple(label_domain)
    return Action(
        label="human_only",
        overrides=(
            Override(var="Y", parents=("H",), table={(h,): h for h in labels}),
        ),
    )
