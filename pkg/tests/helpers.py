"""Shared independent oracles for the test suite.

These deliberately avoid the code paths they check: signed-sum maxima are
recomputed by exhaustive sign enumeration, and small LPs by enumerating all
basic solutions of the constraint system.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from contextuality.core import BellSystem, LGSystem, PairDistribution


def enumerated_signed_max(values, parity: int) -> Fraction:
    """Max of +/-x1 ... +/-xn over all sign patterns with the given minus-count
    parity, by brute force."""
    best = None
    for signs in itertools.product((1, -1), repeat=len(values)):
        if sum(1 for s in signs if s < 0) % 2 != parity:
            continue
        total = sum((s * v for s, v in zip(signs, values)), Fraction(0))
        if best is None or total > best:
            best = total
    return best


def brute_force_lp(lp):
    """(feasible, optimum) for a small LP whose feasible set is bounded.

    Enumerates every basic solution: each n-subset of the constraint rows
    (including x >= 0 rows) with full rank, solved exactly, then filtered for
    feasibility. Only valid when every optimum sits at such a vertex, i.e.
    when the feasible region is bounded (add explicit box rows if needed).
    """
    n = len(lp.variables)
    rows = []
    for coeffs, rel, b in lp.constraints:
        if rel == "<=":
            rows.append((coeffs, b, "le"))
        elif rel == ">=":
            rows.append((tuple(-c for c in coeffs), -b, "le"))
        else:
            rows.append((coeffs, b, "eq"))
    for j, name in enumerate(lp.variables):
        if name in lp.nonneg:
            unit = tuple(-Fraction(k == j) for k in range(n))
            rows.append((unit, Fraction(0), "le"))
    eqs = [(c, b) for c, b, k in rows if k == "eq"]
    les = [(c, b) for c, b, k in rows if k == "le"]
    vertices = []
    for combo in itertools.combinations(range(len(rows)), n):
        mat = [list(rows[i][0]) + [rows[i][1]] for i in combo]
        pivots = []
        r = 0
        for c in range(n):
            pr = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
            if pr is None:
                continue
            mat[r], mat[pr] = mat[pr], mat[r]
            piv = mat[r][c]
            mat[r] = [x / piv for x in mat[r]]
            for i in range(len(mat)):
                if i != r and mat[i][c] != 0:
                    f = mat[i][c]
                    mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
            pivots.append(c)
            r += 1
        if r < n:
            continue
        x = [Fraction(0)] * n
        for i, c in enumerate(pivots):
            x[c] = mat[i][n]
        if all(sum(c * v for c, v in zip(cs, x)) == b for cs, b in eqs) and all(
            sum(c * v for c, v in zip(cs, x)) <= b for cs, b in les
        ):
            vertices.append(tuple(x))
    if not vertices:
        return False, None
    if lp.sense == "feasibility":
        return True, None
    values = [
        sum((c * v for c, v in zip(lp.objective, x)), Fraction(0)) for x in vertices
    ]
    return True, (min(values) if lp.sense == "min" else max(values))


def bell_from_expectations(marginals_a, marginals_b, products) -> BellSystem:
    """Build a Bell system from per-setting (<A>, <B>, <AB>) triples in
    setting order (1,1), (1,2), (2,1), (2,2)."""
    pairs = [
        PairDistribution.from_expectations(a, b, p)
        for a, b, p in zip(marginals_a, marginals_b, products)
    ]
    return BellSystem(*pairs)


def lg_from_expectations(first, second, products) -> LGSystem:
    """Build a temporal system from (<Q_ij>, <Q_ji>, <Q_ij Q_ji>) triples in
    time-pair order (1,2), (1,3), (2,3)."""
    pairs = [
        PairDistribution.from_expectations(x, y, p)
        for x, y, p in zip(first, second, products)
    ]
    return LGSystem(*pairs)
