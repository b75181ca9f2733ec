"""Text formats: .dist, .cpl, .tri and certificate blocks.

All rationals are written as ``num/den`` or a bare integer, never as
decimals, so every file re-parses to exactly the values written.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Sequence

from .couple import Coupling
from .decompose import Decomposition
from .exactdist import Dist
from .sumfree import GroupVec, TripleSystem

_RAT = re.compile(r"^[+-]?\d+(/\d+)?$")


class FormatError(ValueError):
    """Malformed file contents (as opposed to a well-formed but invalid instance)."""


def parse_rat(token: str) -> Fraction:
    if not _RAT.match(token):
        raise FormatError(f"not an exact rational: {token!r}")
    try:
        return Fraction(token)
    except ZeroDivisionError:
        raise FormatError(f"zero denominator: {token!r}") from None


def _lines(text: str) -> list[tuple[int, str]]:
    out = []
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((no, line))
    return out


def _header(line: str, names: Sequence[str]) -> dict[str, int]:
    fields = {}
    for part in line.split():
        key, sep, val = part.partition("=")
        if not sep or key not in names or not val.isdigit():
            raise FormatError(f"bad header field {part!r}; expected {' '.join(n + '=<int>' for n in names)}")
        fields[key] = int(val)
    if set(fields) != set(names):
        raise FormatError(f"header must define {', '.join(names)}")
    return fields


# -- .dist ---------------------------------------------------------------------

def parse_dist_file(text: str) -> list[Dist]:
    """Parse a .dist file.  Malformed text raises FormatError; masses that
    parse but do not form a distribution raise InstanceError."""
    lines = _lines(text)
    if not lines:
        raise FormatError("empty .dist file")
    p = _header(lines[0][1], ["p"])["p"]
    if p < 1:
        raise FormatError("p must be positive")
    dists = []
    for no, line in lines[1:]:
        tokens = line.split()
        if len(tokens) != p:
            raise FormatError(f"line {no}: expected {p} masses, found {len(tokens)}")
        dists.append(Dist(p, tuple(parse_rat(t) for t in tokens)))
    return dists


def format_dist_file(dists: Iterable[Dist], comment: str | None = None) -> str:
    dists = list(dists)
    if not dists:
        raise ValueError("nothing to write")
    out = []
    if comment:
        out.extend(f"# {c}" for c in comment.splitlines())
    out.append(f"p={dists[0].p}")
    out.extend(" ".join(str(m) for m in d.mass) for d in dists)
    return "\n".join(out) + "\n"


# -- .cpl ----------------------------------------------------------------------

def parse_coupling(text: str) -> Coupling:
    lines = _lines(text)
    if not lines:
        raise FormatError("empty .cpl file")
    head = _header(lines[0][1], ["p", "s"])
    entries: dict[tuple[int, int, int], Fraction] = {}
    for no, line in lines[1:]:
        tokens = line.split()
        if len(tokens) != 4 or not all(t.lstrip("-").isdigit() for t in tokens[:3]):
            raise FormatError(f"line {no}: expected 'a b c <rat>'")
        key = tuple(int(t) for t in tokens[:3])
        if key in entries:
            raise FormatError(f"line {no}: duplicate key {key}")
        entries[key] = parse_rat(tokens[3])
    return Coupling(head["p"], head["s"], entries)


def format_coupling(c: Coupling) -> str:
    out = [f"p={c.p} s={c.s}"]
    out.extend(f"{a} {b} {cc} {w}" for (a, b, cc), w in c.items())
    return "\n".join(out) + "\n"


# -- .tri ----------------------------------------------------------------------

def parse_trisystem(text: str) -> TripleSystem:
    lines = _lines(text)
    if not lines:
        raise FormatError("empty .tri file")
    head = _header(lines[0][1], ["p", "n"])
    p, n = head["p"], head["n"]
    if p < 2:
        raise FormatError("p must be >= 2")
    triples = []
    for no, line in lines[1:]:
        parts = line.split("|")
        if len(parts) != 3:
            raise FormatError(f"line {no}: expected three '|'-separated vectors")
        vecs = []
        for part in parts:
            tokens = part.split()
            if len(tokens) != n or not all(t.isdigit() for t in tokens):
                raise FormatError(f"line {no}: expected {n} residues per vector")
            coords = tuple(int(t) for t in tokens)
            if any(c >= p for c in coords):
                raise FormatError(f"line {no}: residue out of range for p={p}")
            vecs.append(GroupVec(p, coords))
        triples.append(tuple(vecs))
    return TripleSystem(p, n, tuple(triples))


def format_trisystem(ts: TripleSystem) -> str:
    out = [f"p={ts.p} n={ts.n}"]
    for t in ts.triples:
        out.append(" | ".join(" ".join(str(c) for c in v.coords) for v in t))
    return "\n".join(out) + "\n"


# -- other blocks --------------------------------------------------------------

def format_certificate(cert: dict[tuple[str, int], Fraction]) -> str:
    return "\n".join(f"y[{name},{v}] = {val}" for (name, v), val in sorted(cert.items())) + "\n"


def parse_certificate(text: str) -> dict[tuple[str, int], Fraction]:
    pat = re.compile(r"^y\[(pi[123]),(\d+)\]\s*=\s*(\S+)$")
    out = {}
    for no, line in _lines(text):
        m = pat.match(line)
        if not m:
            raise FormatError(f"line {no}: expected 'y[piK,v] = <rat>'")
        out[(m.group(1), int(m.group(2)))] = parse_rat(m.group(3))
    return out


def format_decomposition(dec: Decomposition) -> str:
    out = [f"expect_sum={dec.expect_sum} terms={len(dec.terms)}"]
    for idx, (w, tup) in enumerate(dec.terms, start=1):
        out.append(f"term {idx} weight={w}")
        out.extend("  " + " ".join(str(m) for m in d.mass) for d in tup)
    return "\n".join(out) + "\n"
