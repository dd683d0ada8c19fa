"""One-dimensional-per-vertex representations from points of the label ring.

A point assigns a rational number to each target simple matching.  An arrow
acts by the product of the values over the matchings in its label, so
contracted arrows act by 1.  Everything is exact (Fraction).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .contraction import ContractionMap, identity_map, tau_psi_degrees, target_simple
from .paths import enumerate_cycles, rewrite_rules
from .quiver import DimerQuiver, Path, strongly_connected


class NonGenericPoint(ValueError):
    pass


def _as_map(obj) -> ContractionMap:
    return obj if isinstance(obj, ContractionMap) else identity_map(obj)


def point(m, values: Mapping) -> dict:
    """Normalize a name -> number mapping to exact rationals over the target simple matchings.

    Every name must be given; strings like "3/2" are accepted.
    """
    m = _as_map(m)
    names = target_simple(m).names
    extra = set(values) - set(names)
    if extra:
        raise ValueError(f"unknown matching names: {', '.join(sorted(extra))}")
    missing = [n for n in names if n not in values]
    if missing:
        raise ValueError(f"missing values for: {', '.join(missing)}")
    return {n: Fraction(values[n]) for n in names}


def ones(m) -> dict:
    return {n: Fraction(1) for n in target_simple(_as_map(m)).names}


def is_generic(b: Mapping) -> bool:
    return all(v != 0 for v in b.values())


@dataclass(frozen=True)
class Representation:
    source: DimerQuiver
    arrow_values: tuple   # by source arrow id

    def value(self, p: Path) -> Fraction:
        self.source.check(p)
        out = Fraction(1)
        for a in p.arrows:
            out *= self.arrow_values[a]
        return out

    def support(self) -> frozenset:
        return frozenset(a for a, v in enumerate(self.arrow_values) if v != 0)


def build_representation(m, b: Mapping) -> Representation:
    """Arrow values from the point b.  Both sides of every rewrite rule are checked to agree."""
    m = _as_map(m)
    b = point(m, b)
    names = target_simple(m).names
    vals = []
    for deg in tau_psi_degrees(m):
        v = Fraction(1)
        for n, e in zip(names, deg):
            if e:
                v *= b[n] ** e
        vals.append(v)
    rep = Representation(m.source, tuple(vals))
    for r in rewrite_rules(m.source):
        if rep.value(r.left) != rep.value(r.right):
            raise AssertionError(f"rule at arrow {m.source.name(r.pivot)} evaluates unequally")
    return rep


def is_simple(m, rep: Representation) -> bool:
    """Support of the representation is strongly connected on the source vertices."""
    q = _as_map(m).source
    edges = [(q.tail(a), q.head(a)) for a in rep.support()]
    return strongly_connected(q.vertex_count, edges)


def reps_equivalent(m, b1: Mapping, b2: Mapping, box: int = 3, max_len: int = 12,
                    degree_bound: int = 8) -> bool:
    """Every enumerated cycle takes the same value under both points.

    For generic points (all values nonzero) the representations have all
    arrows nonzero, and two such are isomorphic exactly when their cycle
    values agree.  Non-generic points are refused.
    """
    m = _as_map(m)
    b1, b2 = point(m, b1), point(m, b2)
    for b in (b1, b2):
        if not is_generic(b):
            raise NonGenericPoint("equivalence test needs nonzero values at every matching")
    r1, r2 = build_representation(m, b1), build_representation(m, b2)
    q = m.source
    degs = tau_psi_degrees(m)
    weights = [0 if a in m.contracted else 1 for a in range(len(q.arrows))]
    for i in range(q.vertex_count):
        for c, _ in enumerate_cycles(q, i, box, max_len, arrow_degree=degs,
                                     degree_bound=degree_bound, weights=weights):
            if r1.value(c) != r2.value(c):
                return False
    return True
