"""Ground-truth computations on the full joint-distribution polytope.

Every observable-plus-connection probability vector p that some joint
distribution q over all outcome combinations can produce satisfies p = M q
with q >= 0, where M is a 0/1 incidence matrix whose columns are the
polytope's vertices. Feasibility and extremization over that polytope are
decided by exact LP, independently of any closed-form shortcut; the closed
forms are tested against this module, never the other way around.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union

from . import bell as bell_analysis
from . import lg as lg_analysis
from .core import (
    BellSystem,
    LGSystem,
    OUTCOMES,
    as_fraction,
    max_signed_sum_even,
    max_signed_sum_odd,
)
from .ratlp import LinearProgram, is_feasible, solve

System = Union[BellSystem, LGSystem]

_ZERO = Fraction(0)
_ONE = Fraction(1)

# Atom variable order fixes the column layout: atom k assigns +1 to variable v
# when bit (n_vars - 1 - v) of k is 0, and -1 when it is 1.
_BELL_VARS = ("A11", "B11", "A12", "B12", "A21", "B21", "A22", "B22")
_BELL_OBSERVED = (("A11", "B11"), ("A12", "B12"), ("A21", "B21"), ("A22", "B22"))
_BELL_CONNECTIONS = (("A11", "A12"), ("A21", "A22"), ("B11", "B21"), ("B12", "B22"))

_LG_VARS = ("Q12", "Q21", "Q13", "Q31", "Q23", "Q32")
_LG_OBSERVED = (("Q12", "Q21"), ("Q13", "Q31"), ("Q23", "Q32"))
_LG_CONNECTIONS = (("Q12", "Q13"), ("Q21", "Q23"), ("Q31", "Q32"))

_OUTCOME_PAIRS = tuple((x, y) for x in OUTCOMES for y in OUTCOMES)


class InternalInconsistencyError(RuntimeError):
    """An LP that must be feasible for valid input was not; a bug signal."""


@dataclass(frozen=True)
class VertexMatrix:
    """0/1 incidence of event-probability rows against outcome-combination atoms.

    Rows: observed pairs first (setting/time order, cells ordered (+,+),
    (+,-), (-,+), (-,-)), then connection pairs in canonical order. Each atom
    column hits exactly one cell in every pair group, so all columns sum to
    the number of groups.
    """

    kind: str
    variables: tuple[str, ...]
    row_labels: tuple[str, ...]
    entries: tuple[tuple[int, ...], ...]

    @property
    def n_rows(self) -> int:
        return len(self.entries)

    @property
    def n_atoms(self) -> int:
        return len(self.entries[0])

    @property
    def n_observed_rows(self) -> int:
        return self.n_rows // 2


def _atom_value(atom: int, var_index: int, n_vars: int) -> int:
    return 1 if not (atom >> (n_vars - 1 - var_index)) & 1 else -1


def _pair_groups(kind: str) -> tuple[tuple[str, ...], tuple, tuple]:
    if kind == "bell":
        return _BELL_VARS, _BELL_OBSERVED, _BELL_CONNECTIONS
    if kind == "lg":
        return _LG_VARS, _LG_OBSERVED, _LG_CONNECTIONS
    raise ValueError(f"unknown system kind {kind!r}")


@lru_cache(maxsize=None)
def build_vertex_matrix(kind: str) -> VertexMatrix:
    """The coupling-polytope vertex matrix: 32 x 256 for "bell", 24 x 64 for "lg"."""
    variables, observed, connections = _pair_groups(kind)
    n_vars = len(variables)
    n_atoms = 1 << n_vars
    index = {name: i for i, name in enumerate(variables)}
    rows = []
    labels = []
    for v1, v2 in observed + connections:
        i1, i2 = index[v1], index[v2]
        for x, y in _OUTCOME_PAIRS:
            labels.append(f"p({v1}={x:+d},{v2}={y:+d})")
            rows.append(
                tuple(
                    1
                    if _atom_value(a, i1, n_vars) == x and _atom_value(a, i2, n_vars) == y
                    else 0
                    for a in range(n_atoms)
                )
            )
    return VertexMatrix(kind, variables, tuple(labels), tuple(rows))


def system_kind(sys: System) -> str:
    if isinstance(sys, BellSystem):
        return "bell"
    if isinstance(sys, LGSystem):
        return "lg"
    raise TypeError(f"expected BellSystem or LGSystem, got {type(sys).__name__}")


def _observed_pairs(sys: System):
    if isinstance(sys, BellSystem):
        return [sys.pair(i, j) for i, j in sys.SETTINGS]
    return [sys.pair(i, j) for i, j in sys.TIME_PAIRS]


def observed_vector(sys: System) -> tuple[Fraction, ...]:
    """Observed cell probabilities in vertex-matrix row order."""
    cells: list[Fraction] = []
    for pair in _observed_pairs(sys):
        cells.extend(pair.cells())
    return tuple(cells)


@lru_cache(maxsize=None)
def _atom_names(kind: str) -> tuple[str, ...]:
    n = build_vertex_matrix(kind).n_atoms
    return tuple(f"q{k:03d}" for k in range(n))


@lru_cache(maxsize=None)
def _unequal_rows(kind: str) -> tuple[tuple[int, ...], ...]:
    """Per connection, the 0/1 atom indicator of the two variables differing."""
    vm = build_vertex_matrix(kind)
    base = vm.n_observed_rows
    out = []
    for c in range(len(vm.row_labels[base:]) // 4):
        plus_minus = vm.entries[base + 4 * c + 1]
        minus_plus = vm.entries[base + 4 * c + 2]
        out.append(tuple(a + b for a, b in zip(plus_minus, minus_plus)))
    return tuple(out)


def _observed_constraints(sys: System):
    kind = system_kind(sys)
    vm = build_vertex_matrix(kind)
    p = observed_vector(sys)
    return [
        (vm.entries[r], "==", p[r]) for r in range(vm.n_observed_rows)
    ]


def compatible(sys: System, connections: Sequence) -> bool:
    """Can a joint distribution reproduce the observed pairs while each
    connection mismatches with exactly the given probability?

    ``connections`` lists Pr[X != X'] per connection in canonical order
    (4 values for Bell systems, 3 for temporal ones).
    """
    kind = system_kind(sys)
    uneq = _unequal_rows(kind)
    conn = [as_fraction(c) for c in connections]
    if len(conn) != len(uneq):
        raise ValueError(f"expected {len(uneq)} connection probabilities, got {len(conn)}")
    constraints = _observed_constraints(sys)
    constraints += [(row, "==", c) for row, c in zip(uneq, conn)]
    names = _atom_names(kind)
    lp = LinearProgram(names, tuple(constraints), nonneg=frozenset(names))
    return is_feasible(lp)


def _delta_objective(kind: str) -> tuple[int, ...]:
    uneq = _unequal_rows(kind)
    return tuple(sum(col) for col in zip(*uneq))


def _delta_lp(sys: System, sense: str) -> LinearProgram:
    kind = system_kind(sys)
    names = _atom_names(kind)
    return LinearProgram(
        names,
        tuple(_observed_constraints(sys)),
        objective=_delta_objective(kind),
        sense=sense,
        nonneg=frozenset(names),
    )


def delta_extrema(sys: System) -> tuple[Fraction, Fraction]:
    """(min, max) of the total connection mismatch over all compatible joints."""
    lo = solve(_delta_lp(sys, "min"))
    hi = solve(_delta_lp(sys, "max"))
    if lo.status != "optimal" or hi.status != "optimal":
        raise InternalInconsistencyError(
            f"mismatch extremization reported {lo.status}/{hi.status}; "
            "the observed distributions cannot be valid"
        )
    return (lo.optimum, hi.optimum)


def degree(sys: System, causal: bool = True) -> Fraction:
    """Definitional degree max(0, delta_min - delta0), delta_min by LP.

    ``causal`` only affects temporal systems, matching the closed-form
    treatment of the first connection.
    """
    lo, _ = delta_extrema(sys)
    if isinstance(sys, BellSystem):
        d0 = bell_analysis.delta0(sys)
    else:
        d0 = lg_analysis.delta0(sys, causal=causal)
    return max(_ZERO, lo - d0)


@dataclass(frozen=True)
class OracleResult:
    """LP-certified mismatch range plus a compatibility verdict and witness."""

    delta_min: Fraction
    delta_max: Fraction
    feasible_at_c0: bool
    witness_joint: tuple[Fraction, ...]


def report(sys: System, causal: bool = True) -> OracleResult:
    """Run the full oracle: mismatch extrema, compatibility at the minimal
    connection vector, and the joint-distribution witness of the minimum."""
    kind = system_kind(sys)
    lo = solve(_delta_lp(sys, "min"))
    hi = solve(_delta_lp(sys, "max"))
    if lo.status != "optimal" or hi.status != "optimal":
        raise InternalInconsistencyError("mismatch extremization infeasible on valid input")
    if isinstance(sys, BellSystem):
        c0 = bell_analysis.minimal_connections(sys)
    else:
        c0 = lg_analysis.minimal_connections(sys, causal=causal)
    names = _atom_names(kind)
    witness = tuple(lo.witness[name] for name in names)
    return OracleResult(
        delta_min=lo.optimum,
        delta_max=hi.optimum,
        feasible_at_c0=compatible(sys, c0.components()),
        witness_joint=witness,
    )


def _raw_cells(m1: Fraction, m2: Fraction, product: Fraction) -> list[Fraction]:
    """Cell values (1 + x m1 + y m2 + x y t)/4, unvalidated (may be negative)."""
    return [(1 + x * m1 + y * m2 + x * y * product) / 4 for x, y in _OUTCOME_PAIRS]


def compatibility_verdicts(
    sys: System, connection_means: Sequence
) -> tuple[bool, bool]:
    """Decide two ways whether fully specified connections fit the observed pairs.

    ``connection_means`` gives the product expectation <X X'> of each
    connection in canonical order. Returns (closed-form verdict, LP verdict):
    the closed form combines the parity-maximum inequalities with the cell
    nonnegativity bounds on each connection; the LP asks directly for a joint
    distribution matching all 2x2 tables. The two must agree on every input.
    """
    kind = system_kind(sys)
    if isinstance(sys, BellSystem):
        marg = bell_analysis.connection_marginal_pairs(sys)
    else:
        marg = lg_analysis.connection_marginal_pairs(sys)
    means = [as_fraction(c) for c in connection_means]
    if len(means) != len(marg):
        raise ValueError(f"expected {len(marg)} connection expectations, got {len(means)}")

    frechet_ok = all(
        -1 + abs(m1 + m2) <= t <= 1 - abs(m1 - m2)
        for (m1, m2), t in zip(marg, means)
    )
    prods = sys.product_means()
    if kind == "bell":
        closed = (
            frechet_ok
            and max_signed_sum_even(prods) + max_signed_sum_odd(means) <= 6
            and max_signed_sum_odd(prods) + max_signed_sum_even(means) <= 6
        )
    else:
        closed = frechet_ok and max_signed_sum_odd(list(prods) + means) <= 4

    # LP route: pin all 32 (24) event probabilities, including the connection
    # cells computed directly from the requested expectations. A cell that
    # comes out negative simply makes the program infeasible.
    vm = build_vertex_matrix(kind)
    p_full = list(observed_vector(sys))
    for (m1, m2), t in zip(marg, means):
        p_full.extend(_raw_cells(m1, m2, t))
    names = _atom_names(kind)
    constraints = tuple(
        (vm.entries[r], "==", p_full[r]) for r in range(vm.n_rows)
    )
    lp = LinearProgram(names, constraints, nonneg=frozenset(names))
    return (closed, is_feasible(lp))
