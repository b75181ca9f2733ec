from fractions import Fraction

from hypothesis import strategies as st

from tricoupling.exactdist import Dist


def D(*masses) -> Dist:
    return Dist(len(masses), tuple(Fraction(m) for m in masses))


@st.composite
def dists(draw, min_p=1, max_p=8, max_den=12):
    p = draw(st.integers(min_p, max_p))
    raw = draw(st.lists(st.integers(0, max_den), min_size=p, max_size=p))
    if not any(raw):
        raw[draw(st.integers(0, p - 1))] = 1
    total = sum(raw)
    return Dist(p, tuple(Fraction(r, total) for r in raw))


@st.composite
def dist_lists(draw, min_n=1, max_n=4, max_p=10):
    p = draw(st.integers(1, max_p))
    n = draw(st.integers(min_n, max_n))
    return [draw(dists(min_p=p, max_p=p)) for _ in range(n)]
