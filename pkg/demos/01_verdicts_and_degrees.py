"""Walkthrough: deciding contextuality and measuring its degree.

Builds a handful of canonical systems and prints, for each, the classic
no-signaling + inequality verdict next to the signaling-adjusted criterion
and the degree. The point to notice: the classic verdict becomes useless the
moment any marginal moves across conditions, while the adjusted criterion
keeps grading the same systems continuously.
"""

from fractions import Fraction

from contextuality import bell, lg
from contextuality.generators import (
    deterministic_bell,
    lg_anticorrelated,
    pr_signaling_family,
)

F = Fraction


def show_bell(name, sys):
    report = bell.analyze(sys)
    no_signaling, classic = bell.classic_checks(sys)
    print(f"{name}")
    print(f"  statistic          : {report.statistic}")
    print(f"  forced mismatch    : {report.delta0}")
    print(f"  classic verdict    : no-signaling={no_signaling}, bound holds={classic}")
    print(f"  adjusted verdict   : noncontextual={report.noncontextual}")
    print(f"  degree             : {report.degree}")
    print()


print("=" * 64)
print("Bell-type systems")
print("=" * 64)

# The algebraically maximal box: statistic 4, degree 1.
show_bell("maximal box (delta=1, eps=0)", pr_signaling_family(1, 0))

# 17/24 is a convenient rational stand-in for 1/sqrt(2); the quantum maximum
# sits at degree sqrt(2) - 1 ~ 0.414, and 2*(17/24) - 1 = 5/12 ~ 0.417.
show_bell("near the quantum maximum (delta=17/24)", pr_signaling_family(F(17, 24), 0))

# Weak correlations: nothing interesting happens.
show_bell("weak correlations (delta=1/4)", pr_signaling_family(F(1, 4), 0))

# Deterministic outputs: trivially noncontextual.
show_bell("deterministic (+1, +1)", deterministic_bell(1, 1))

# Now switch on signaling. The classic verdict flips to "not applicable"
# (no-signaling fails) but the degree only shrinks by the forced mismatch:
# at delta=1 it moves 1 -> 4/5 as eps moves 0 -> 1/5.
for eps in (F(1, 10), F(1, 5), F(1, 2)):
    show_bell(f"maximal box + signaling (eps={eps})", pr_signaling_family(1, eps))

print("=" * 64)
print("Temporal (three time points) systems")
print("=" * 64)

anti = lg_anticorrelated()
report = lg.analyze(anti)
no_signaling, classic = lg.classic_checks(anti)
print("all three pairs perfectly anticorrelated")
print(f"  statistic          : {report.statistic}")
print(f"  classic verdict    : no-signaling={no_signaling}, bound holds={classic}")
print(f"  adjusted verdict   : noncontextual={report.noncontextual}")
print(f"  degree             : {report.degree}")
print()

# The same correlations stop being contextual once the marginals force
# enough mismatch on their own: delta0 = 1 absorbs the whole excess.
from contextuality.core import LGSystem, PairDistribution  # noqa: E402

flipped = PairDistribution.from_expectations(-1, 1, -1)
saved = LGSystem(flipped, flipped, flipped)
print("anticorrelated products + heavy signaling")
print(f"  forced mismatch    : {lg.delta0(saved, causal=True)}")
print(f"  adjusted verdict   : noncontextual={lg.is_noncontextual(saved, causal=True)}")
print(f"  degree             : {lg.degree(saved, causal=True)}")
