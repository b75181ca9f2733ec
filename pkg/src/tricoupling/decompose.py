"""Simultaneous convex decomposition into "simple" tuples.

Any tuple of distributions on a common alphabet can be written as a
convex combination of tuples in which every component but one is a
point mass and the remaining one is supported on at most two symbols,
with each tuple keeping the original sum of expectations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InstanceError
from .exactdist import Dist, mean, mix


@dataclass(frozen=True)
class SimpleTuple:
    dists: tuple[Dist, ...]

    def __iter__(self):
        return iter(self.dists)

    def __len__(self):
        return len(self.dists)

    def is_simple(self) -> bool:
        sizes = sorted(len(d.support) for d in self.dists)
        return all(s == 1 for s in sizes[:-1]) and sizes[-1] <= 2


@dataclass(frozen=True)
class Decomposition:
    terms: tuple[tuple[Fraction, SimpleTuple], ...]
    expect_sum: Fraction

    def __len__(self):
        return len(self.terms)


def _two_point(p: int, lo: int, hi: int, target_mean: Fraction) -> Dist:
    """Distribution on ``{lo, hi}`` with the given mean (a point mass if lo == hi)."""
    mass = [Fraction(0)] * p
    if lo == hi:
        mass[lo] = Fraction(1)
    else:
        w_hi = (target_mean - lo) / (hi - lo)
        mass[lo] += 1 - w_hi
        mass[hi] += w_hi
    return Dist(p, tuple(mass))


def _extreme_tuple(dists: Sequence[Dist], total: Fraction) -> tuple[Dist, ...]:
    """Pick the simple tuple built from support extremes.

    Components before the pivot sit at their support max, those after at
    their support min, and the pivot splits between its min and max so
    that the expectation sum equals ``total``.
    """
    lows = [min(d.support) for d in dists]
    highs = [max(d.support) for d in dists]
    p = dists[0].p
    for k in range(len(dists)):
        fixed = sum(highs[:k]) + sum(lows[k + 1:])
        if fixed + lows[k] <= total <= fixed + highs[k]:
            break
    else:  # pragma: no cover - the min/max sums always bracket the total
        raise AssertionError("no pivot brackets the expectation sum")
    out = []
    for i in range(len(dists)):
        if i < k:
            out.append(_two_point(p, highs[i], highs[i], Fraction(highs[i])))
        elif i > k:
            out.append(_two_point(p, lows[i], lows[i], Fraction(lows[i])))
        else:
            out.append(_two_point(p, lows[k], highs[k], total - fixed))
    return tuple(out)


def simple_decompose(dists: Sequence[Dist]) -> Decomposition:
    """Peel off simple tuples until the residual is itself simple.

    At each round the weight taken is the largest ``w`` for which
    ``residual - w * simple`` stays non-negative; this zeroes at least one
    support cell, so the number of terms is bounded by the total support
    size of the inputs.  Ties for the limiting cell are irrelevant to the
    output since only the ratio value is used.
    """
    dists = tuple(dists)
    if not dists:
        raise InstanceError("BAD_INPUT", "need at least one distribution")
    p = dists[0].p
    if any(d.p != p for d in dists):
        raise InstanceError("MIXED_ALPHABETS", f"alphabet sizes {sorted({d.p for d in dists})}")
    total = sum((mean(d) for d in dists), Fraction(0))

    terms = []
    remaining = Fraction(1)
    current = dists
    while True:
        simple = _extreme_tuple(current, total)
        ratio = min(
            cur[t] / s[t]
            for cur, s in zip(current, simple)
            for t in s.support
        )
        if ratio == 1:
            terms.append((remaining, SimpleTuple(simple)))
            break
        terms.append((remaining * ratio, SimpleTuple(simple)))
        scale = 1 - ratio
        current = tuple(
            Dist(p, tuple((c - ratio * s) / scale for c, s in zip(cur.mass, sim.mass)))
            for cur, sim in zip(current, simple)
        )
        remaining *= scale
    return Decomposition(tuple(terms), total)


def verify_decomposition(dists: Sequence[Dist], dec: Decomposition) -> bool:
    """Check weights, term shapes, per-term expectation sums and exact recombination."""
    dists = tuple(dists)
    if not dec.terms or not dists:
        return False
    n, p = len(dists), dists[0].p
    weights = [w for w, _ in dec.terms]
    if any(w <= 0 for w in weights) or sum(weights) != 1:
        return False
    if dec.expect_sum != sum((mean(d) for d in dists), Fraction(0)):
        return False
    for _, tup in dec.terms:
        if len(tup) != n or any(d.p != p for d in tup):
            return False
        if not tup.is_simple():
            return False
        if sum((mean(d) for d in tup), Fraction(0)) != dec.expect_sum:
            return False
    for i, d in enumerate(dists):
        if mix((w, tup.dists[i]) for w, tup in dec.terms) != d:
            return False
    return True
