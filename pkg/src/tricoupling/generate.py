"""Random exact-rational instances for property checks and the acceptance run."""

from __future__ import annotations

import random
from fractions import Fraction

from .exactdist import Dist, mean, mix, point_mass, uniform


def random_decreasing(p: int, rng: random.Random, max_den: int = 20) -> Dist:
    """Sorted random rational weights, normalised."""
    raw = sorted((Fraction(rng.randint(0, max_den), max_den) for _ in range(p)), reverse=True)
    if raw[0] == 0:
        raw[0] = Fraction(1)
    total = sum(raw)
    return Dist(p, tuple(r / total for r in raw))


def random_dist(p: int, rng: random.Random, max_den: int = 20, sparsity: float = 0.3) -> Dist:
    """Arbitrary (not necessarily decreasing) random distribution."""
    raw = [Fraction(rng.randint(1, max_den)) if rng.random() > sparsity else Fraction(0)
           for _ in range(p)]
    if not any(raw):
        raw[rng.randrange(p)] = Fraction(1)
    total = sum(raw)
    return Dist(p, tuple(r / total for r in raw))


def repair_mean_sum(triple, target: Fraction) -> tuple[Dist, Dist, Dist]:
    """Mix every component with U_{p-1} (to raise) or the point mass at 0
    (to lower) so that the means sum to ``target`` exactly.

    Both U_{p-1} and the point mass at 0 are decreasing, so decreasing
    inputs stay decreasing.
    """
    p = triple[0].p
    total = sum(mean(d) for d in triple)
    if total == target:
        return tuple(triple)
    if total < target:
        anchor, anchor_total = uniform(p - 1), Fraction(3 * (p - 1), 2)
    else:
        anchor, anchor_total = point_mass(0, p), Fraction(0)
    t = (target - total) / (anchor_total - total)
    return tuple(mix([(1 - t, d), (t, anchor)]) for d in triple)


def random_valid_triple(p: int, rng: random.Random, max_den: int = 20) -> tuple[Dist, Dist, Dist]:
    """Decreasing triple on ``p`` symbols with means summing to ``p - 1``."""
    triple = tuple(random_decreasing(p, rng, max_den) for _ in range(3))
    return repair_mean_sum(triple, Fraction(p - 1))


def infeasible_mean_mismatch(p: int, rng: random.Random) -> tuple[tuple[Dist, Dist, Dist], int]:
    """Arbitrary triple with a target sum that differs from its mean sum."""
    triple = tuple(random_dist(p, rng) for _ in range(3))
    total = sum(mean(d) for d in triple)
    choices = [s for s in range(3 * (p - 1) + 1) if s != total]
    return triple, rng.choice(choices)


def infeasible_forced_zero(p: int, rng: random.Random) -> tuple[tuple[Dist, Dist, Dist], int]:
    """X2 and X3 are constants, which forces X1 onto a symbol where pi1 has no mass.

    pi1 is two-point around the forced symbol with the right mean, so the
    mean sum alone does not reveal the infeasibility.  Needs p >= 3.
    """
    forced = rng.randint(1, p - 2)
    spread = rng.randint(1, min(forced, p - 1 - forced))
    mass = [Fraction(0)] * p
    mass[forced - spread] = mass[forced + spread] = Fraction(1, 2)
    b, c = rng.randrange(p), rng.randrange(p)
    return (Dist(p, tuple(mass)), point_mass(b, p), point_mass(c, p)), forced + b + c
