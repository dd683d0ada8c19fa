"""Affine semigroups of exponent vectors, truncated at a total degree.

Holds the corner semigroups of a contraction (labels of cycles at one
vertex), their union (the cycle algebra) and their intersection (the center).
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
from typing import Iterable, NamedTuple, Optional

from .contraction import ContractionMap, identity_map, tau_psi_degrees, target_simple
from .paths import enumerate_cycles
from .quiver import DimerQuiver


def deg(v) -> int:
    return sum(v)


def _sorted(vs):
    return tuple(sorted(vs, key=lambda v: (sum(v), tuple(-x for x in v))))


@dataclass(frozen=True)
class MonoidDescription:
    generators: tuple
    degree_bound: int
    monomials: frozenset
    names: tuple = ()
    saturated: bool = True
    note: str = field(default="", compare=False)

    @property
    def rank(self) -> int:
        return len(self.names) if self.names else (len(next(iter(self.monomials))) if self.monomials else 0)

    def sorted_monomials(self):
        return _sorted(self.monomials)

    def counts_by_degree(self) -> list:
        out = [0] * (self.degree_bound + 1)
        for v in self.monomials:
            out[sum(v)] += 1
        return out

    def __contains__(self, v):
        return tuple(v) in self.monomials


def generate(gens: Iterable, d: int, names=(), saturated=True, note="") -> MonoidDescription:
    """All sums of generators of total degree <= d, zero included."""
    gens = _sorted({tuple(g) for g in gens})
    if any(not any(g) for g in gens):
        raise ValueError("generators must be nonzero")
    k = len(names) if names else (len(gens[0]) if gens else 0)
    zero = (0,) * k
    seen = {zero}
    todo = deque([zero])
    while todo:
        x = todo.popleft()
        for g in gens:
            y = tuple(a + b for a, b in zip(x, g))
            if sum(y) <= d and y not in seen:
                seen.add(y)
                todo.append(y)
    return MonoidDescription(gens, d, frozenset(seen), tuple(names), saturated, note)


def member(gens: Iterable, v) -> bool:
    """Exact membership by subtracting generators (memoized)."""
    gens = tuple({tuple(g) for g in gens if any(g)})

    @lru_cache(maxsize=None)
    def rec(x):
        if not any(x):
            return True
        for g in gens:
            y = tuple(a - b for a, b in zip(x, g))
            if min(y) >= 0 and rec(y):
                return True
        return False

    return rec(tuple(v))


def irreducibles(monomials) -> tuple:
    """Nonzero elements that are not a sum of two nonzero elements of the set."""
    mons = set(monomials)
    out = []
    for v in mons:
        if not any(v):
            continue
        split = False
        for x in mons:
            if x == v or not any(x):
                continue
            y = tuple(a - b for a, b in zip(v, x))
            if min(y) >= 0 and y in mons:
                split = True
                break
        if not split:
            out.append(v)
    return _sorted(out)


def minimal_generators(m: MonoidDescription) -> tuple:
    """Irreducible elements of the truncated monoid, checked to regenerate it."""
    irr = irreducibles(m.monomials)
    again = generate(irr, m.degree_bound, m.names)
    if again.monomials != m.monomials:
        raise RuntimeError("minimal generators do not regenerate the monoid")
    return irr


# -- corner semigroups ------------------------------------------------------------

def _as_map(obj) -> ContractionMap:
    if isinstance(obj, ContractionMap):
        return obj
    if isinstance(obj, DimerQuiver):
        return identity_map(obj)
    raise TypeError("expected a ContractionMap or a DimerQuiver")


class Bounds(NamedTuple):
    degree_bound: int = 8
    box: int = 3
    max_len: int = 12


def corner_labels(m: ContractionMap, i: int, degree_bound: int) -> frozenset:
    """Exact label set of all cycles at i up to the degree bound.

    Breadth-first search over (vertex, degree vector) states; labels add up
    along paths, so the reachable states are exactly the truncated labels.
    """
    q = m.source
    degs = tau_psi_degrees(m)
    k = len(target_simple(m))
    start = (i, (0,) * k)
    seen = {start}
    todo = deque([start])
    while todo:
        v, dv = todo.popleft()
        for a in q.out_arrows[v]:
            nd = tuple(x + y for x, y in zip(dv, degs[a]))
            if sum(nd) > degree_bound:
                continue
            s = (q.head(a), nd)
            if s not in seen:
                seen.add(s)
                todo.append(s)
    return frozenset(dv for v, dv in seen if v == i)


def corner_semigroup(obj, i: int, degree_bound: int = 8, box: int = 3, max_len: int = 12,
                     method: str = "cycles") -> MonoidDescription:
    """Monoid of labels of cycles at vertex i (of the source of a contraction).

    ``method='cycles'`` generates from cycles with simple lifts in the box, plus
    sigma, and flags the result unsaturated unless it is unchanged when
    max_len grows by one and by two, and when the box grows by one.  Length is the length of the image in
    the target.  ``method='labels'`` is the exact state-space search.
    """
    m = _as_map(obj)
    names = target_simple(m).names
    if method == "labels":
        mons = corner_labels(m, i, degree_bound)
        return MonoidDescription(irreducibles(mons), degree_bound, mons, names, True, "exact label search")
    if method != "cycles":
        raise ValueError(f"unknown method {method!r}")
    degs = tau_psi_degrees(m)
    weights = [0 if a in m.contracted else 1 for a in range(len(m.source.arrows))]
    sig = (1,) * len(names)

    def monoid(cyc, L):
        gens = {lab.degree for p, lab in cyc
                if sum(weights[a] for a in p.arrows) <= L and any(lab.degree)}
        if sum(sig) <= degree_bound:
            gens.add(sig)
        return generate(gens, degree_bound, names)

    cyc = enumerate_cycles(m.source, i, box, max_len + 2, arrow_degree=degs,
                           degree_bound=degree_bound, weights=weights)
    wide = enumerate_cycles(m.source, i, box + 1, max_len, arrow_degree=degs,
                            degree_bound=degree_bound, weights=weights)
    r = monoid(cyc, max_len)
    sat = (r.monomials == monoid(cyc, max_len + 1).monomials == monoid(cyc, max_len + 2).monomials
           == monoid(wide, max_len).monomials)
    note = f"box {box}, max_len {max_len}" + ("" if sat else ", unsaturated at bound")
    return MonoidDescription(r.generators, degree_bound, r.monomials, names, sat, note)


def _corners(m, degree_bound, box, max_len, method):
    return [corner_semigroup(m, i, degree_bound, box, max_len, method)
            for i in range(m.source.vertex_count)]


def cycle_algebra(obj, degree_bound: int = 8, box: int = 3, max_len: int = 12,
                  method: str = "cycles") -> MonoidDescription:
    """Join of the corner semigroups over all source vertices."""
    m = _as_map(obj)
    cs = _corners(m, degree_bound, box, max_len, method)
    gens = set()
    for c in cs:
        gens |= {v for v in c.monomials if any(v)}
    r = generate(irreducibles(gens | {(0,) * len(target_simple(m))}) if gens else (),
                 degree_bound, target_simple(m).names)
    sat = all(c.saturated for c in cs)
    return MonoidDescription(r.generators, degree_bound, r.monomials, r.names, sat,
                             "union of corner semigroups" + ("" if sat else ", unsaturated at bound"))


def center(obj, degree_bound: int = 8, box: int = 3, max_len: int = 12,
           method: str = "cycles") -> MonoidDescription:
    """Intersection of the corner semigroups over all source vertices."""
    m = _as_map(obj)
    cs = _corners(m, degree_bound, box, max_len, method)
    mons = frozenset.intersection(*(c.monomials for c in cs))
    sat = all(c.saturated for c in cs)
    return MonoidDescription(irreducibles(mons), degree_bound, mons, target_simple(m).names, sat,
                             "intersection of corner semigroups" + ("" if sat else ", unsaturated at bound"))


# -- comparisons -------------------------------------------------------------------

class Comparison(NamedTuple):
    equal: bool
    discrepancy: Optional[tuple]   # first monomial in exactly one of the two sets
    side: str                       # "left", "right" or ""

    def __bool__(self):
        return self.equal


def equal_up_to_degree(a: MonoidDescription, b: MonoidDescription, d: int) -> Comparison:
    if d > a.degree_bound or d > b.degree_bound:
        raise ValueError(f"degree {d} exceeds a cached bound ({a.degree_bound}, {b.degree_bound})")
    sa = {v for v in a.monomials if sum(v) <= d}
    sb = {v for v in b.monomials if sum(v) <= d}
    diff = _sorted(sa ^ sb)
    if not diff:
        return Comparison(True, None, "")
    v = diff[0]
    return Comparison(False, v, "left" if v in sa else "right")


def permute(v, perm) -> tuple:
    """Coordinate j of the result is coordinate perm[j] of v."""
    return tuple(v[p] for p in perm)


def match_up_to_permutation(a: MonoidDescription, b: MonoidDescription, d: int):
    """Some permutation perm with {permute(v, perm) : v in a} = b up to degree d, or None."""
    return match_jointly([(a, b)], d)


def match_jointly(pairs, d: int):
    """One permutation matching every (a, b) pair at once, or None."""
    if not pairs:
        return ()
    k = pairs[0][0].rank
    sets = [({v for v in a.monomials if sum(v) <= d}, {v for v in b.monomials if sum(v) <= d})
            for a, b in pairs]
    for perm in permutations(range(k)):
        if all({permute(v, perm) for v in sa} == sb for sa, sb in sets):
            return perm
    return None


def monomial_str(v, names) -> str:
    parts = []
    for e, n in zip(v, names):
        if e == 1:
            parts.append(n)
        elif e > 1:
            parts.append(f"{n}^{e}")
    return "*".join(parts) if parts else "1"


def vector_from_word(word: str, names) -> tuple:
    """'x^2*z' or 'xxz' style monomial to an exponent vector over single-letter or listed names."""
    idx = {n: k for k, n in enumerate(names)}
    v = [0] * len(names)
    word = word.strip()
    if word in ("", "1"):
        return tuple(v)
    if "*" in word or "^" in word or word in idx:
        for part in word.split("*"):
            n, _, e = part.partition("^")
            v[idx[n]] += int(e) if e else 1
        return tuple(v)
    for ch in word:
        v[idx[ch]] += 1
    return tuple(v)


# -- cyclic contractions -------------------------------------------------------------

@dataclass(frozen=True)
class CyclicReport:
    cyclic: bool
    cancellative_target: bool
    uncovered_target: frozenset
    source_algebra: MonoidDescription
    target_algebra: MonoidDescription
    comparison: Comparison
    degree_bound: int

    def __bool__(self):
        return self.cyclic

    @property
    def saturated(self) -> bool:
        return self.source_algebra.saturated and self.target_algebra.saturated


def is_cyclic(m: ContractionMap, degree_bound: int = 8, box: int = 3, max_len: int = 12,
              method: str = "cycles") -> CyclicReport:
    """Target cancellative and cycle algebras of source and target agree up to the degree bound."""
    from .matchings import is_cancellative
    canc = is_cancellative(m.target)
    src = cycle_algebra(m, degree_bound, box, max_len, method)
    tgt = cycle_algebra(identity_map(m.target), degree_bound, box, max_len, method)
    cmp = equal_up_to_degree(src, tgt, degree_bound)
    return CyclicReport(bool(canc) and cmp.equal, bool(canc), canc.uncovered, src, tgt, cmp, degree_bound)
