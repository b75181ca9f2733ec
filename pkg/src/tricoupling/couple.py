"""Explicit constant-sum couplings of decreasing distributions.

Given decreasing pi1, pi2, pi3 on {0, ..., p-1} whose means sum to p - 1,
:func:`couple` returns an exact joint law of (X1, X2, X3) with those
marginals and X1 + X2 + X3 == p - 1 almost surely.

The construction recurses on p.  When two of the three distributions put
no mass on p - 1, :func:`couple_induction_step` places mass on triples
(0, k, p-1-k) until pi1's mass at zero is used up, and what remains is a
smaller instance of the same problem.  Otherwise the triple is
decomposed into mixtures of uniform and two-uniform pieces
(:mod:`tricoupling.decompose` applied through :func:`~tricoupling.exactdist.unhat`);
each piece is either handled by the induction step, or is one of two
shapes with closed-form couplings.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Mapping, Sequence

from .decompose import simple_decompose
from .errors import InstanceError
from .exactdist import Dist, hat, is_decreasing, mean, unhat

Key = tuple[int, int, int]

# Upper bound on cached sub-instances; random inputs rarely repeat, the
# structured pieces of the decomposition do.
MEMO_SIZE = 1 << 14


@dataclass(frozen=True)
class Coupling:
    """Sparse joint law on triples (a, b, c) with a + b + c == s."""

    p: int
    s: int
    entries: Mapping[Key, Fraction] = field(compare=True)

    def __len__(self):
        return len(self.entries)

    def items(self):
        return sorted(self.entries.items())

    def marginal(self, axis: int) -> list[Fraction]:
        out = [Fraction(0)] * self.p
        for key, w in self.entries.items():
            out[key[axis]] += w
        return out

    def permuted(self, perm: Sequence[int]) -> "Coupling":
        """Coupling of (X[perm[0]], X[perm[1]], X[perm[2]])."""
        return Coupling(
            self.p,
            self.s,
            {tuple(key[j] for j in perm): w for key, w in self.entries.items()},
        )


@dataclass(frozen=True)
class PairCoupling:
    m: int
    n: int
    entries: Mapping[tuple[int, int], Fraction]


@dataclass(frozen=True)
class CouplingReport:
    mass_total_ok: bool
    support_on_plane: bool
    marginal1: bool
    marginal2: bool
    marginal3: bool

    @property
    def ok(self) -> bool:
        return all((self.mass_total_ok, self.support_on_plane,
                    self.marginal1, self.marginal2, self.marginal3))

    def lines(self) -> list[str]:
        def flag(b):
            return "ok" if b else "FAIL"
        return [
            f"mass_total      {flag(self.mass_total_ok)}",
            f"support_on_plane {flag(self.support_on_plane)}",
            f"marginal1       {flag(self.marginal1)}",
            f"marginal2       {flag(self.marginal2)}",
            f"marginal3       {flag(self.marginal3)}",
            f"overall         {'PASS' if self.ok else 'FAIL'}",
        ]


def verify_coupling(c: Coupling, pi1: Dist, pi2: Dist, pi3: Dist) -> CouplingReport:
    """Exact check of ``c`` against the three target marginals."""
    total_ok = sum(c.entries.values(), Fraction(0)) == 1 and all(
        w > 0 for w in c.entries.values())
    on_plane = all(
        len(k) == 3 and sum(k) == c.s and all(0 <= x < c.p for x in k)
        for k in c.entries
    )
    marg = []
    for axis, pi in enumerate((pi1, pi2, pi3)):
        if not on_plane or pi.p != c.p:
            marg.append(False)
        else:
            marg.append(tuple(c.marginal(axis)) == pi.mass)
    return CouplingReport(total_ok, on_plane, *marg)


def mix_couplings(terms: Iterable[tuple[Fraction, Coupling]]) -> Coupling:
    terms = [(Fraction(w), c) for w, c in terms]
    if not terms or any(w < 0 for w, _ in terms) or sum(w for w, _ in terms) != 1:
        raise InstanceError("BAD_WEIGHTS", f"weights {[str(w) for w, _ in terms]}")
    p, s = terms[0][1].p, terms[0][1].s
    if any(c.p != p or c.s != s for _, c in terms):
        raise InstanceError("MIXED_SHAPES", "couplings disagree on p or s")
    out: dict[Key, Fraction] = {}
    for w, c in terms:
        if not w:
            continue
        for key, m in c.entries.items():
            out[key] = out.get(key, 0) + w * m
    return Coupling(p, s, {k: v for k, v in out.items() if v})


def _check_triple(pi1: Dist, pi2: Dist, pi3: Dist) -> int:
    p = pi1.p
    if pi2.p != p or pi3.p != p:
        raise InstanceError("BAD_TRIPLE", f"alphabet mismatch {pi1.p}, {pi2.p}, {pi3.p}")
    for i, d in enumerate((pi1, pi2, pi3), start=1):
        if not is_decreasing(d):
            raise InstanceError("BAD_TRIPLE", f"pi{i} = {d} is not decreasing")
    total = mean(pi1) + mean(pi2) + mean(pi3)
    if total != p - 1:
        raise InstanceError("BAD_TRIPLE", f"means sum to {total}, need {p - 1}")
    return p


# -- two uniforms with a uniform sum -----------------------------------------

def couple_uniform_pair(m: int, n: int) -> PairCoupling:
    """Joint law of (X, Y) with X ~ U_m, Y ~ U_n and X + Y ~ U_{m+n}.

    Realised by ranks: among m + n + 1 exchangeable continuous variables
    A_1..A_m, B_1..B_n, C, take X = #{A_i < C} and Y = #{B_j < C}.  This
    gives ``C(m,x) C(n,y) / ((m+n+1) C(m+n, x+y))``.
    """
    if m < 0 or n < 0:
        raise InstanceError("BAD_PARAMS", f"m={m}, n={n}")
    den = m + n + 1
    return PairCoupling(m, n, {
        (x, y): Fraction(comb(m, x) * comb(n, y), den * comb(m + n, x + y))
        for x in range(m + 1)
        for y in range(n + 1)
    })


def couple_lastcase(i: int, j: int, p: int) -> Coupling:
    """Coupling of U_i, U_{p-1} and V_{j, p-1, p-1-i}, summing to p - 1.

    With probability (i+j+1)/p couple U_i and U_j with uniform sum and emit
    (X, p-1-X-Y, Y); otherwise couple U_i and U_{p-i-j-2} likewise and emit
    (X, Y, p-1-X-Y).
    """
    if not (i > 0 and j >= 0 and i + j < p - 1):
        raise InstanceError("BAD_PARAMS", f"need i > 0, j >= 0, i + j < p - 1; got i={i}, j={j}, p={p}")
    heads = Fraction(i + j + 1, p)
    out: dict[Key, Fraction] = {}
    for (x, y), w in couple_uniform_pair(i, j).entries.items():
        key = (x, p - 1 - x - y, y)
        out[key] = out.get(key, 0) + heads * w
    for (x, y), w in couple_uniform_pair(i, p - i - j - 2).entries.items():
        key = (x, y, p - 1 - x - y)
        out[key] = out.get(key, 0) + (1 - heads) * w
    return Coupling(p, p - 1, out)


# -- induction step ------------------------------------------------------------

def lemma31_gap(pi1: Dist, pi2: Dist, pi3: Dist, t: int) -> Fraction:
    """``P(pi2 > t) + P(pi3 >= p-1-t) - P(pi1 = 0)``; non-negative on valid triples."""
    p = _check_triple(pi1, pi2, pi3)
    if not 0 <= t < p:
        raise InstanceError("BAD_TRIPLE", f"t={t} outside [0, {p})")
    return pi2.tail(t) + pi3.tail(p - 2 - t) - pi1[0]


def _level(caps: Sequence[Fraction], target: Fraction) -> Fraction:
    """Smallest x >= 0 with sum(min(c, x) for c in caps) == target."""
    if target == 0:
        return Fraction(0)
    below = Fraction(0)
    srt = sorted(caps)
    for idx, c in enumerate(srt):
        rest = len(srt) - idx
        if below + rest * c >= target:
            return (target - below) / rest
        below += c
    raise InstanceError("BAD_TRIPLE", f"target {target} exceeds total capacity {below}")


def couple_induction_step(pi1: Dist, pi2: Dist, pi3: Dist, p: int | None = None) -> Coupling:
    """Reduce a triple with ``pi2(p-1) == pi3(p-1) == 0`` to alphabet p - 1.

    Mass f(k) = min(pi2(k), pi3(p-1-k), x) goes on (0, k, p-1-k), with the
    level x chosen so the f(k) add up to pi1(0).  The leftover of pi1 lives
    on {1, ..., p-1}; shifted down by one it forms, together with the
    leftovers of pi2 and pi3, a decreasing triple on p - 1 symbols whose
    means sum to p - 2.
    """
    q = _check_triple(pi1, pi2, pi3)
    if p is not None and p != q:
        raise InstanceError("BAD_TRIPLE", f"alphabet {q} does not match p={p}")
    p = q
    if p == 1:
        return Coupling(1, 0, {(0, 0, 0): Fraction(1)})
    if pi2.top or pi3.top:
        raise InstanceError("TOP_MASS", f"pi2({p - 1})={pi2.top}, pi3({p - 1})={pi3.top}")

    caps = [min(pi2[k], pi3[p - 1 - k]) for k in range(p)]
    x = _level(caps, pi1[0])
    f = [min(c, x) for c in caps]

    r2 = [pi2[k] - f[k] for k in range(p)]
    r3 = [pi3[k] - f[p - 1 - k] for k in range(p)]
    for r in (r2, r3):
        assert all(a >= b for a, b in zip(r, r[1:])), "leftover is not non-increasing"

    out: dict[Key, Fraction] = {(0, k, p - 1 - k): f[k] for k in range(p) if f[k]}
    w = 1 - pi1[0]
    if w == 0:
        return Coupling(p, p - 1, out)

    assert r2[-1] == 0 and r3[-1] == 0
    sub = couple(
        Dist(p - 1, tuple(m / w for m in pi1.mass[1:])),
        Dist(p - 1, tuple(m / w for m in r2[:-1])),
        Dist(p - 1, tuple(m / w for m in r3[:-1])),
    )
    for (a, b, c), m in sub.entries.items():
        out[(a + 1, b, c)] = w * m
    return Coupling(p, p - 1, out)


# -- assembly ------------------------------------------------------------------

def _inverse(perm: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(perm)
    for pos, src in enumerate(perm):
        inv[src] = pos
    return tuple(inv)


def _fast_path(triple: tuple[Dist, Dist, Dist]) -> Coupling:
    # Slot 1 takes the one component allowed to carry top mass; if none
    # does, the lowest index.
    tops = [i for i, d in enumerate(triple) if d.top]
    first = tops[0] if tops else 0
    perm = (first,) + tuple(i for i in range(3) if i != first)
    c = couple_induction_step(*(triple[i] for i in perm))
    return c.permuted(_inverse(perm))


def _explicit_full_pair(p: int, zero_at: int) -> Coupling:
    # X[zero_at] = 0 and the other two are uniform on [p] summing to p - 1.
    others = [i for i in range(3) if i != zero_at]
    out = {}
    for k in range(p):
        key = [0, 0, 0]
        key[others[0]] = k
        key[others[1]] = p - 1 - k
        out[tuple(key)] = Fraction(1, p)
    return Coupling(p, p - 1, out)


def _piece_coupling(simple: Sequence[Dist], hatted: tuple[Dist, Dist, Dist]) -> Coupling:
    p = hatted[0].p
    if sum(1 for d in hatted if d.top) <= 1:
        return couple(*hatted)
    supports = [d.support for d in simple]
    two_valued = [i for i, s in enumerate(supports) if len(s) == 2]
    if not two_valued:
        zeros = [i for i, s in enumerate(supports) if s == [0]]
        assert len(zeros) == 1 and sorted(s[0] for s in supports) == [0, p - 1, p - 1]
        return _explicit_full_pair(p, zeros[0])
    # One V_{y, p-1, .} plus U_{p-1} and U_i.
    v = two_valued[0]
    y, z = supports[v]
    assert z == p - 1
    rest = [i for i in range(3) if i != v]
    full = next(i for i in rest if supports[i] == [p - 1])
    small = next(i for i in rest if i != full)
    i_val = supports[small][0]
    c = couple_lastcase(i_val, y, p)
    # couple_lastcase orders its output (U_i, U_{p-1}, V).
    return c.permuted(_inverse((small, full, v)))


def _decompose_path(triple: tuple[Dist, Dist, Dist]) -> Coupling:
    dec = simple_decompose([unhat(d) for d in triple])
    pieces = []
    for w, tup in dec.terms:
        hatted = tuple(hat(d) for d in tup)
        pieces.append((w, _piece_coupling(tup.dists, hatted)))
    return mix_couplings(pieces)


def _stabilizer(triple: Sequence[Dist]) -> list[tuple[int, ...]]:
    return [perm for perm in itertools.permutations(range(3))
            if all(triple[perm[i]] == triple[i] for i in range(3))]


@functools.lru_cache(maxsize=MEMO_SIZE)
def _couple_sorted(triple: tuple[Dist, Dist, Dist]) -> Coupling:
    p = triple[0].p
    if p == 1:
        return Coupling(1, 0, {(0, 0, 0): Fraction(1)})
    if sum(1 for d in triple if d.top == 0) >= 2:
        c = _fast_path(triple)
    else:
        c = _decompose_path(triple)
    # Average over swaps of equal components so the result does not depend
    # on which of two identical inputs was treated first.
    stab = _stabilizer(triple)
    if len(stab) > 1:
        c = mix_couplings((Fraction(1, len(stab)), c.permuted(perm)) for perm in stab)
    return c


def couple(pi1: Dist, pi2: Dist, pi3: Dist) -> Coupling:
    """Constant-sum coupling of a decreasing triple whose means sum to p - 1.

    The result is permutation-equivariant: permuting the inputs permutes
    the coordinates of every support point in the same way.
    """
    _check_triple(pi1, pi2, pi3)
    triple = (pi1, pi2, pi3)
    order = tuple(sorted(range(3), key=lambda i: triple[i].mass))
    c = _couple_sorted(tuple(triple[i] for i in order))
    # Sorted slot j holds input order[j].
    return c.permuted(_inverse(order))


def clear_memo() -> None:
    _couple_sorted.cache_clear()
