"""Tri-coloured sum-free sets and progression-free sets in Z_p^n."""

from __future__ import annotations

import itertools
import random
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InstanceError


@dataclass(frozen=True)
class GroupVec:
    p: int
    coords: tuple[int, ...]

    def __post_init__(self):
        if self.p < 2:
            raise InstanceError("BAD_MODULUS", f"p must be >= 2, got {self.p}")
        object.__setattr__(self, "coords", tuple(c % self.p for c in self.coords))

    @property
    def n(self) -> int:
        return len(self.coords)

    def __add__(self, other: "GroupVec") -> "GroupVec":
        return GroupVec(self.p, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "GroupVec":
        return GroupVec(self.p, tuple(-a for a in self.coords))

    def scale(self, k: int) -> "GroupVec":
        return GroupVec(self.p, tuple(k * a for a in self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)


def vec(p: int, *coords: int) -> GroupVec:
    return GroupVec(p, tuple(coords))


@dataclass(frozen=True)
class TripleSystem:
    p: int
    n: int
    triples: tuple[tuple[GroupVec, GroupVec, GroupVec], ...]

    def __post_init__(self):
        for t in self.triples:
            for v in t:
                if v.p != self.p or v.n != self.n:
                    raise InstanceError("BAD_SYSTEM", f"vector {v} not in Z_{self.p}^{self.n}")

    def __len__(self):
        return len(self.triples)


@dataclass(frozen=True)
class SumFreeReport:
    ok: bool
    # 1-based (i, j, k) of the lexicographically first violation.
    violation: tuple[int, int, int] | None = None


def verify_trisystem(ts: TripleSystem) -> SumFreeReport:
    """Check a_i + b_j + c_k == 0 exactly when i == j == k.

    Quadratic in the number of triples: each pair (i, j) looks up the
    indices k with c_k == -(a_i + b_j).
    """
    by_c: dict[tuple[int, ...], list[int]] = defaultdict(list)
    for k, (_, _, c) in enumerate(ts.triples):
        by_c[c.coords].append(k)
    n = len(ts.triples)
    for i in range(n):
        a = ts.triples[i][0]
        for j in range(n):
            need = (-(a + ts.triples[j][1])).coords
            hits = by_c.get(need, ())
            bad = [k for k in hits if not i == j == k]
            if i == j and i not in hits:
                bad.append(i)
            if bad:
                return SumFreeReport(False, (i + 1, j + 1, min(bad) + 1))
    return SumFreeReport(True)


def verify_trisystem_bruteforce(ts: TripleSystem) -> SumFreeReport:
    n = len(ts.triples)
    for i, j, k in itertools.product(range(n), repeat=3):
        zero = (ts.triples[i][0] + ts.triples[j][1] + ts.triples[k][2]).is_zero()
        if zero != (i == j == k):
            return SumFreeReport(False, (i + 1, j + 1, k + 1))
    return SumFreeReport(True)


def _halves(p: int, v: int) -> list[int]:
    return [r for r in range(p) if (2 * r) % p == v]


def ap_free_check(xs: Sequence[GroupVec]) -> bool:
    """True iff no three distinct elements x, y, z satisfy x + z == 2y."""
    xs = list(xs)
    keys = {x.coords for x in xs}
    if len(keys) != len(xs):
        raise InstanceError("DUPLICATES", "elements must be distinct")
    if not xs:
        return True
    p = xs[0].p
    for x, z in itertools.combinations(xs, 2):
        total = (x + z).coords
        for y in itertools.product(*(_halves(p, v) for v in total)):
            if y in keys and y != x.coords and y != z.coords:
                return False
    return True


def embed_diagonal(xs: Iterable[GroupVec]) -> TripleSystem:
    """The system {(x, x, -2x)}; sum-free when xs is progression-free and p is odd."""
    xs = list(xs)
    if not xs:
        raise InstanceError("BAD_SYSTEM", "empty set")
    return TripleSystem(xs[0].p, xs[0].n, tuple((x, x, x.scale(-2)) for x in xs))


def greedy_ap_free(p: int, n: int, rng: random.Random) -> list[GroupVec]:
    """Random-order greedy progression-free subset of Z_p^n."""
    pts = [GroupVec(p, c) for c in itertools.product(range(p), repeat=n)]
    rng.shuffle(pts)
    chosen: list[GroupVec] = []
    keys: set[tuple[int, ...]] = set()
    for cand in pts:
        if _extends_ap_free(chosen, keys, cand):
            chosen.append(cand)
            keys.add(cand.coords)
    return chosen


def _extends_ap_free(chosen, keys, cand) -> bool:
    p = cand.p
    for x in chosen:
        # cand as an endpoint: midpoint y with 2y == x + cand.
        for y in itertools.product(*(_halves(p, v) for v in (x + cand).coords)):
            if y in keys and y != x.coords:
                return False
        # cand as the midpoint: the other endpoint is 2*cand - x.
        z = (cand.scale(2) + -x).coords
        if z in keys and z != x.coords:
            return False
    return True
