"""Independent brute-force oracles.

Everything here is written from the definitions with plain loops and no
calls into the library's computation paths, so that library results can be
checked against a second, independent implementation.
"""

import itertools


def brute_solve(scm, noise):
    """Fixpoint sweep: repeatedly evaluate any variable whose parents are
    all known. No topological order is computed."""
    env = dict(noise)
    pending = list(scm.endogenous)
    while pending:
        progressed = False
        remaining = []
        for var in pending:
            if all(p in env for p in var.parents):
                env[var.id] = var.mechanism[tuple(env[p] for p in var.parents)]
                progressed = True
            else:
                remaining.append(var)
        if not progressed:
            raise RuntimeError("no progress; model is cyclic")
        pending = remaining
    return {v.id: env[v.id] for v in scm.endogenous}


def brute_event_probability(scm, phi):
    """Enumerate the exogenous joint space directly."""
    ids = [ex.id for ex in scm.exogenous]
    total = 0.0
    for combo in itertools.product(*(range(len(ex.domain.values)) for ex in scm.exogenous)):
        prob = 1.0
        noise = {}
        for ex, idx in zip(scm.exogenous, combo):
            prob *= ex.dist[idx]
            noise[ex.id] = ex.domain.values[idx]
        if prob > 0 and phi.satisfied(brute_solve(scm, noise)):
            total += prob
    assert set(noise) == set(ids) or not ids
    return total


def brute_qwk(counts):
    """Quadratic weighted kappa straight from the formula, pure loops."""
    k = len(counts)
    n = sum(sum(row) for row in counts)
    observed = [[counts[i][j] / n for j in range(k)] for i in range(k)]
    row_marg = [sum(observed[i]) for i in range(k)]
    col_marg = [sum(observed[i][j] for i in range(k)) for j in range(k)]
    num = 0.0
    den = 0.0
    for i in range(k):
        for j in range(k):
            w = (i - j) ** 2 / (k - 1) ** 2
            num += w * observed[i][j]
            den += w * row_marg[i] * col_marg[j]
    if den == 0.0:
        raise ZeroDivisionError("degenerate marginals")
    return 1.0 - num / den


def brute_prf1(preds, trues, positive):
    """Precision/recall/F1 by direct counting."""
    tp = sum(1 for p, t in zip(preds, trues) if p == positive and t == positive)
    fp = sum(1 for p, t in zip(preds, trues) if p == positive and t != positive)
    fn = sum(1 for p, t in zip(preds, trues) if p != positive and t == positive)
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return precision, recall, f1


def recount_log(cases, l, u):
    """Re-derive flags, errors and outcome classes for a case log from
    first principles. Returns a dict of counts."""
    n_flagged = 0
    n_errors = 0
    human_errors = 0
    avoidable = 0
    inevitable_flagged = 0
    inevitable_unflagged = 0
    flagged_avoidable = 0
    for c in cases:
        flagged = l <= c.ai_confidence <= u
        final = c.human_decision if flagged else c.ai_decision
        if flagged:
            n_flagged += 1
        if c.human_decision != c.truth:
            human_errors += 1
        if final != c.truth:
            n_errors += 1
            if c.human_decision != c.truth:
                if flagged:
                    inevitable_flagged += 1
                else:
                    inevitable_unflagged += 1
            else:
                avoidable += 1
                if flagged:
                    flagged_avoidable += 1
    return {
        "n": len(cases),
        "flagged": n_flagged,
        "hitl_errors": n_errors,
        "human_only_errors": human_errors,
        "avoidable": avoidable,
        "inevitable_flagged": inevitable_flagged,
        "inevitable_unflagged": inevitable_unflagged,
        "flagged_avoidable": flagged_avoidable,
    }
