"""Cross-route verification harness.

For seeded random systems, every quantity this library computes in closed
form is recomputed by the LP oracle and (optionally) by Fourier-Motzkin
projection, and the results are compared with exact rational equality. Any
difference is a defect in one of the routes; zero tolerance applies.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import bell, fme, lg, oracle
from .core import BellSystem
from .generators import random_connection_means, random_system, split_seed

_ZERO = Fraction(0)

CHECKS = (
    "degree",
    "interval",
    "fme_interval",
    "criterion_vs_polytope",
    "connection_verdicts",
    "classic_reduction",
)


@dataclass(frozen=True)
class CheckFailure:
    check: str
    kind: str
    sample_index: int
    seed: int
    detail: str


@dataclass
class VerificationSummary:
    kind: str
    samples: int
    checks_run: int = 0
    failures: list[CheckFailure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def first_failure(self) -> Optional[CheckFailure]:
        return self.failures[0] if self.failures else None

    def counts(self) -> dict[str, int]:
        out = {name: 0 for name in CHECKS}
        for f in self.failures:
            out[f.check] += 1
        return out


def _constraint_for(index: int) -> str:
    # mix signaling and no-signaling inputs deterministically
    return "no_signaling" if index % 3 == 0 else "none"


def verify_kind(
    kind: str,
    samples: int,
    seed: int,
    run_fme: bool = True,
    fault_injection: bool = False,
) -> VerificationSummary:
    """Run every cross-route check on ``samples`` seeded systems of one kind.

    ``fault_injection`` corrupts the closed-form degree of the first sample;
    it exists so the harness can demonstrate that it actually detects
    mismatches (a harness self-test, not a production flag).
    """
    summary = VerificationSummary(kind=kind, samples=samples)

    def fail(check: str, index: int, child: int, detail: str) -> None:
        summary.failures.append(CheckFailure(check, kind, index, child, detail))

    for index in range(samples):
        child = split_seed(seed, index)
        constraint = _constraint_for(index)
        sys = random_system(kind, child, constraint)
        is_bell = isinstance(sys, BellSystem)

        if is_bell:
            closed_degree = bell.degree(sys)
            closed_interval = bell.delta_interval(sys)
            d0 = bell.delta0(sys)
            noncontextual = bell.is_noncontextual(sys)
            c0 = bell.minimal_connections(sys)
            no_signaling, classic = bell.classic_checks(sys)
        else:
            closed_degree = lg.degree(sys, causal=False)
            closed_interval = lg.delta_interval(sys)
            d0 = lg.delta0(sys, causal=False)
            noncontextual = lg.is_noncontextual(sys, causal=False)
            c0 = lg.minimal_connections(sys, causal=False)
            no_signaling, classic = lg.classic_checks(sys)
        if fault_injection and index == 0:
            closed_degree = closed_degree + 1

        lo, hi = oracle.delta_extrema(sys)
        oracle_degree = max(_ZERO, lo - d0)

        summary.checks_run += 1
        if closed_degree != oracle_degree:
            fail("degree", index, child, f"closed {closed_degree} != oracle {oracle_degree}")

        summary.checks_run += 1
        if closed_interval != (lo, hi):
            fail("interval", index, child, f"closed {closed_interval} != oracle {(lo, hi)}")

        if run_fme:
            summary.checks_run += 1
            fme_interval = fme.derive_delta_bounds(sys)
            if fme_interval != (lo, hi):
                fail("fme_interval", index, child, f"fme {fme_interval} != oracle {(lo, hi)}")

        summary.checks_run += 1
        compatible_at_c0 = oracle.compatible(sys, c0.components())
        if compatible_at_c0 != noncontextual:
            fail(
                "criterion_vs_polytope",
                index,
                child,
                f"compatible_at_c0 {compatible_at_c0} != noncontextual {noncontextual}",
            )

        summary.checks_run += 1
        means = random_connection_means(sys, split_seed(child, 1), inside_bounds=bool(index % 2))
        closed_verdict, lp_verdict = oracle.compatibility_verdicts(sys, means)
        if closed_verdict != lp_verdict:
            fail(
                "connection_verdicts",
                index,
                child,
                f"inequalities {closed_verdict} != polytope {lp_verdict} at {means}",
            )

        if no_signaling:
            summary.checks_run += 1
            if noncontextual != classic:
                fail(
                    "classic_reduction",
                    index,
                    child,
                    f"no-signaling system: generalized {noncontextual} != classic {classic}",
                )

    return summary


def run_verification(
    kind: str = "both",
    samples: int = 100,
    seed: int = 0,
    run_fme: bool = True,
    fault_injection: bool = False,
) -> list[VerificationSummary]:
    kinds = ("bell", "lg") if kind == "both" else (kind,)
    return [
        verify_kind(k, samples, seed, run_fme=run_fme, fault_injection=fault_injection)
        for k in kinds
    ]
