"""Arrow contraction, transport of paths and matchings, and removable 2-cycles."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .matchings import (MatchingFamily, classify_two_cycles, enumerate_perfect_matchings,
                        find_matching, is_perfect_matching, other_face, path_after,
                        simple_matchings)
from .paths import PathLabel, arrow_degrees, label
from .quiver import (Arrow, DimerQuiver, Face, InvalidQuiver, Path, potential, regauge,
                     validate)


class ContractionError(ValueError):
    """An arrow set that cannot be contracted; ``reason`` is a short fixed phrase."""

    def __init__(self, reason: str, detail: str = "", violations=()):
        self.reason = reason
        self.violations = list(violations)
        super().__init__(reason + (f": {detail}" if detail else ""))


@dataclass(frozen=True)
class ContractionMap:
    source: DimerQuiver
    contracted: frozenset
    target: DimerQuiver
    vertex_map: tuple
    arrow_map: dict      # source arrow id -> target arrow id, undefined on contracted arrows
    gauge: tuple         # vertex potential used to zero the contracted offsets

    def __hash__(self):
        return hash((self.source, self.contracted))

    def __eq__(self, other):
        return isinstance(other, ContractionMap) and (self.source, self.contracted) == (other.source, other.contracted)

    @property
    def gauged_source(self) -> DimerQuiver:
        return regauge(self.source, self.gauge)


def _arrow_ids(q: DimerQuiver, arrows) -> frozenset:
    return frozenset(q.arrow_id(a) for a in arrows)


def contract(q: DimerQuiver, arrows: Iterable) -> ContractionMap:
    """Contract the given arrows (ids or names).

    Raises ContractionError with reason "unit cycle to vertex" when a whole
    face would collapse, "contracts a cycle" when the arrows contain a cycle
    of the underlying graph, and "invalid target" when the result is not a
    dimer quiver.
    """
    v = validate(q)
    if v:
        raise InvalidQuiver(v, "source quiver")
    star = _arrow_ids(q, arrows)
    for f, face in enumerate(q.faces):
        if set(face.arrows) <= star:
            names = " ".join(q.name(a) for a in face.arrows)
            raise ContractionError("unit cycle to vertex", f"face {f} ({names}) would become a vertex")
    parent = list(range(q.vertex_count))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in sorted(star):
        r1, r2 = find(q.tail(a)), find(q.head(a))
        if r1 == r2:
            raise ContractionError("contracts a cycle", f"arrow {q.name(a)} closes a cycle of contracted arrows")
        parent[max(r1, r2)] = min(r1, r2)
    phi, _, comp = potential(q, star)
    roots = sorted(set(comp))
    rank = {r: k for k, r in enumerate(roots)}
    vmap = tuple(rank[comp[x]] for x in range(q.vertex_count))
    g = regauge(q, phi)
    amap = {}
    arrs = []
    for a, arr in enumerate(g.arrows):
        if a in star:
            continue
        amap[a] = len(arrs)
        arrs.append(Arrow(arr.name, vmap[arr.tail], vmap[arr.head], arr.offset))
    faces = tuple(Face(tuple(amap[a] for a in face.arrows if a not in star), face.orientation)
                  for face in q.faces)
    layout = tuple(q.layout[r] for r in roots) if q.layout else None
    target = DimerQuiver(len(roots), tuple(arrs), faces, layout)
    tv = validate(target)
    if tv:
        raise ContractionError("invalid target", "; ".join(x.message for x in tv[:3]), tv)
    return ContractionMap(q, star, target, vmap, amap, tuple(phi))


def identity_map(q: DimerQuiver) -> ContractionMap:
    return contract(q, ())


def psi_path(m: ContractionMap, p: Path) -> Path:
    m.source.check(p)
    return Path(m.vertex_map[p.start], tuple(m.arrow_map[a] for a in p.arrows if a not in m.contracted))


def pullback_matching(m: ContractionMap, d) -> frozenset:
    d = frozenset(d)
    pre = frozenset(a for a, b in m.arrow_map.items() if b in d)
    if not is_perfect_matching(m.source, pre):
        raise RuntimeError("pullback is not a perfect matching; the contraction map is inconsistent")
    return pre


def push_matching(m: ContractionMap, d) -> Optional[frozenset]:
    img = frozenset(m.arrow_map[a] for a in d if a not in m.contracted)
    return img if is_perfect_matching(m.target, img) else None


def target_simple(m: ContractionMap) -> MatchingFamily:
    return _target_simple(m.target)


_simple_cache = {}


def _target_simple(q):
    fam = _simple_cache.get(q)
    if fam is None:
        fam = _simple_cache[q] = simple_matchings(q)
    return fam


def p_zero(m: ContractionMap) -> MatchingFamily:
    """Source perfect matchings whose image is a simple matching of the target.

    Names are inherited from the target simple matchings, in their order.
    """
    simple = target_simple(m)
    hits = {}
    for d in enumerate_perfect_matchings(m.source):
        img = push_matching(m, d)
        if img is None:
            continue
        k = find_matching(simple, img)
        if k is not None:
            if k in hits:
                raise RuntimeError("two source matchings push to one simple matching")
            hits[k] = d
    keep = sorted(hits)
    return MatchingFamily(tuple(hits[k] for k in keep), tuple(simple.names[k] for k in keep))


def p_zero_mismatches(m: ContractionMap) -> tuple:
    """(in P_0 but not a pullback, pullback but not in P_0) as sets of matchings."""
    pz = set(p_zero(m).matchings)
    pulled = {pullback_matching(m, d) for d in target_simple(m)}
    return pz - pulled, pulled - pz


def tau_psi_degrees(m: ContractionMap) -> list:
    """Per source arrow: degree vector of its image over the target simple matchings."""
    fam = target_simple(m)
    tdeg = arrow_degrees(m.target, fam)
    zero = (0,) * len(fam)
    return [zero if a in m.contracted else tdeg[m.arrow_map[a]] for a in range(len(m.source.arrows))]


def tau_psi_label(m: ContractionMap, p: Path) -> PathLabel:
    """Label of psi(p) in the target over the target simple matchings."""
    return label(m.target, target_simple(m), psi_path(m, p))


def p_zero_degrees(m: ContractionMap) -> list:
    """Direct labeling of source arrows by membership in the P_0 matchings."""
    pz = p_zero(m)
    return arrow_degrees(m.source, pz)


# -- removable 2-cycles ------------------------------------------------------

def reduce_removable_two_cycles(q: DimerQuiver) -> DimerQuiver:
    """Delete removable 2-cycles one at a time, merging the two faces beside each.

    For a 2-cycle ab the faces beside it read a.s_a and b.s_b; they are
    replaced by the single face s_a.s_b.  Permanent 2-cycles stay.
    """
    while True:
        todo = [f for f, kind in classify_two_cycles(q) if kind == "removable"]
        if not todo:
            return q
        q = _remove_two_cycle(q, todo[0])


def _remove_two_cycle(q: DimerQuiver, f: int) -> DimerQuiver:
    a, b = q.faces[f].arrows
    fa, pa = other_face(q, a, f)
    fb, pb = other_face(q, b, f)
    merged = path_after(q, fa, pa) + path_after(q, fb, pb)
    orient = q.faces[fa].orientation
    keep = [a2 for a2 in range(len(q.arrows)) if a2 not in (a, b)]
    new_id = {old: k for k, old in enumerate(keep)}
    faces = []
    first = min(fa, fb)
    for g, face in enumerate(q.faces):
        if g == first:
            faces.append(Face(tuple(new_id[x] for x in merged), orient))
        elif g in (f, fa, fb):
            continue
        else:
            faces.append(Face(tuple(new_id[x] for x in face.arrows), face.orientation))
    out = DimerQuiver(q.vertex_count, tuple(q.arrows[x] for x in keep), tuple(faces), q.layout)
    v = validate(out)
    if v:
        raise InvalidQuiver(v, "reduced quiver")
    return out
