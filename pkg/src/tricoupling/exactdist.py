"""Exact-rational probability distributions on {0, ..., p-1}.

Masses are ``fractions.Fraction`` throughout; nothing in here touches
floating point except :func:`entropy`, which returns an ``mpmath``
number at a caller-chosen precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import mpmath

from .errors import InstanceError

Rat = Fraction

DEFAULT_DIGITS = 12


def as_rat(value) -> Fraction:
    """Coerce ints, Fractions and ``"a/b"`` strings to a Fraction.

    Floats are rejected so that inexact values cannot leak in.
    """
    if isinstance(value, float):
        raise TypeError(f"refusing inexact float {value!r}; pass a Fraction or 'a/b'")
    return Fraction(value)


@dataclass(frozen=True)
class Dist:
    """Probability distribution on ``{0, ..., p-1}`` with exact masses."""

    p: int
    mass: tuple[Fraction, ...]

    def __post_init__(self):
        if self.p < 1:
            raise InstanceError("BAD_LENGTH", f"alphabet size must be positive, got {self.p}")
        if len(self.mass) != self.p:
            raise InstanceError("BAD_LENGTH", f"expected {self.p} masses, got {len(self.mass)}")
        if any(m < 0 for m in self.mass):
            raise InstanceError("NEGATIVE_MASS", str(self))
        if sum(self.mass) != 1:
            raise InstanceError("BAD_TOTAL", f"masses sum to {sum(self.mass)}")

    def __getitem__(self, i: int) -> Fraction:
        return self.mass[i]

    def __iter__(self):
        return iter(self.mass)

    def __len__(self):
        return self.p

    def __str__(self):
        return "(" + ", ".join(str(m) for m in self.mass) + ")"

    @property
    def support(self) -> list[int]:
        return [i for i, m in enumerate(self.mass) if m]

    @property
    def top(self) -> Fraction:
        """Mass at the largest symbol ``p - 1``."""
        return self.mass[-1]

    def tail(self, t: int) -> Fraction:
        """P(X > t)."""
        return sum(self.mass[t + 1:], Fraction(0))


def make_dist(p: int, values: Sequence) -> Dist:
    """Validated constructor; accepts anything :func:`as_rat` accepts."""
    if len(values) != p:
        raise InstanceError("BAD_LENGTH", f"expected {p} values, got {len(values)}")
    return Dist(p, tuple(as_rat(v) for v in values))


def point_mass(i: int, p: int | None = None) -> Dist:
    """The constant distribution at ``i``, on alphabet ``p`` (default ``i + 1``)."""
    p = i + 1 if p is None else p
    if not 0 <= i < p:
        raise InstanceError("BAD_RANGE", f"point {i} outside alphabet of size {p}")
    return Dist(p, tuple(Fraction(int(j == i)) for j in range(p)))


def uniform(k: int, p: int | None = None) -> Dist:
    """U_k, uniform on ``{0, ..., k}``; zero-padded to ``p`` symbols if given."""
    if k < 0:
        raise InstanceError("BAD_RANGE", f"k must be non-negative, got {k}")
    p = k + 1 if p is None else p
    if p < k + 1:
        raise InstanceError("BAD_RANGE", f"U_{k} does not fit in {p} symbols")
    w = Fraction(1, k + 1)
    return Dist(p, tuple(w if j <= k else Fraction(0) for j in range(p)))


def v_dist(k: int, l: int, x, p: int | None = None) -> Dist:
    """V_{k,l,x}: the mixture of U_k and U_l whose mean is ``x / 2``.

    The weights are ``(l-x)/(l-k)`` on U_k and ``(x-k)/(l-k)`` on U_l.
    At ``x == k`` or ``x == l`` this collapses to the corresponding uniform.
    """
    x = as_rat(x)
    if not (0 <= k < l) or not (k <= x <= l):
        raise InstanceError("BAD_RANGE", f"need 0 <= k < l and k <= x <= l, got k={k}, l={l}, x={x}")
    p = l + 1 if p is None else p
    w_low = (l - x) / (l - k)
    return mix([(w_low, uniform(k, p)), (1 - w_low, uniform(l, p))])


def pad(d: Dist, p: int) -> Dist:
    """Zero-pad ``d`` to ``p`` symbols.  Shrinking is allowed only over zero mass."""
    if p == d.p:
        return d
    if p > d.p:
        return Dist(p, d.mass + (Fraction(0),) * (p - d.p))
    if any(d.mass[p:]):
        raise InstanceError("BAD_RANGE", f"cannot truncate {d} to {p} symbols: mass would be lost")
    return Dist(p, d.mass[:p])


def mean(d: Dist) -> Fraction:
    return sum((i * m for i, m in enumerate(d.mass)), Fraction(0))


def entropy(d: Dist, digits: int = DEFAULT_DIGITS) -> mpmath.mpf:
    """Shannon entropy in nats, accurate to about ``10**-digits``."""
    if digits < 1:
        raise InstanceError("BAD_PRECISION", "digits must be >= 1")
    with mpmath.workdps(digits + 10):
        total = mpmath.mpf(0)
        for m in d.mass:
            if m:
                q = mpmath.mpf(m.numerator) / m.denominator
                total -= q * mpmath.log(q)
        return +total


def is_decreasing(d: Dist) -> bool:
    return all(a >= b for a, b in zip(d.mass, d.mass[1:]))


def hat(d: Dist) -> Dist:
    """Draw ``i`` from ``d`` then ``j`` uniformly from ``{0, ..., i}``; return the law of ``j``."""
    out = [Fraction(0)] * d.p
    acc = Fraction(0)
    for i in range(d.p - 1, -1, -1):
        acc += d.mass[i] / (i + 1)
        out[i] = acc
    return Dist(d.p, tuple(out))


def unhat(d: Dist) -> Dist:
    """Inverse of :func:`hat` on decreasing distributions."""
    if not is_decreasing(d):
        raise InstanceError("NOT_DECREASING", str(d))
    nxt = d.mass[1:] + (Fraction(0),)
    return Dist(d.p, tuple((i + 1) * (a - b) for i, (a, b) in enumerate(zip(d.mass, nxt))))


def mix(terms: Iterable[tuple]) -> Dist:
    """Convex combination ``sum(w * d)`` of distributions on a shared alphabet."""
    terms = [(as_rat(w), d) for w, d in terms]
    if not terms:
        raise InstanceError("BAD_WEIGHTS", "empty mixture")
    if any(w < 0 for w, _ in terms) or sum(w for w, _ in terms) != 1:
        raise InstanceError("BAD_WEIGHTS", f"weights {[str(w) for w, _ in terms]}")
    p = terms[0][1].p
    if any(d.p != p for _, d in terms):
        raise InstanceError("MIXED_ALPHABETS", f"alphabet sizes {sorted({d.p for _, d in terms})}")
    out = [Fraction(0)] * p
    for w, d in terms:
        if w:
            for i, m in enumerate(d.mass):
                if m:
                    out[i] += w * m
    return Dist(p, tuple(out))
