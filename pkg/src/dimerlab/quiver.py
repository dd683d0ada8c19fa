"""Dimer quivers on the torus: data model, validation and cover arithmetic.

Arrows carry an integer offset in Z^2, the displacement of the head lift
from the tail lift in the universal cover.  Faces are oriented cycles of
arrows.  Everything here is immutable and hashable so that quivers can be
used as cache keys.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Iterable, NamedTuple, Optional, Sequence

PLUS = "+"
MINUS = "-"

Vec = tuple  # (dx, dy)


class PathError(ValueError):
    """Raised for arrow sequences that do not compose."""


class Arrow(NamedTuple):
    name: str
    tail: int
    head: int
    offset: tuple


class Face(NamedTuple):
    arrows: tuple
    orientation: str


@dataclass(frozen=True)
class Path:
    """A path, stored in traversal order (first arrow first).

    The trivial path at a vertex has ``arrows == ()``.  Note that algebraic
    products are usually written right to left, so the product ``ab`` is
    ``Path(t(b), (b, a))`` here.
    """
    start: int
    arrows: tuple = ()

    def __len__(self):
        return len(self.arrows)

    def __add__(self, other: "Path") -> "Path":
        # concatenation in traversal order; endpoints are checked by DimerQuiver.check
        if not other.arrows:
            return self
        if not self.arrows:
            return Path(self.start, other.arrows)
        return Path(self.start, self.arrows + other.arrows)

    def power(self, m: int) -> "Path":
        return Path(self.start, self.arrows * m)


class Violation(NamedTuple):
    code: str
    ids: tuple
    message: str


class LiftedPath(NamedTuple):
    base: Path
    start_offset: tuple
    visited: tuple  # ((vertex, (x, y)), ...)

    @property
    def end(self):
        return self.visited[-1]

    def is_simple(self) -> bool:
        return len(set(self.visited)) == len(self.visited)


def _add(u, v):
    return (u[0] + v[0], u[1] + v[1])


def _sub(u, v):
    return (u[0] - v[0], u[1] - v[1])


@dataclass(frozen=True)
class DimerQuiver:
    vertex_count: int
    arrows: tuple
    faces: tuple
    layout: Optional[tuple] = field(default=None, compare=False)

    # -- construction helpers -------------------------------------------
    @classmethod
    def build(cls, vertex_count: int, arrows: Iterable, faces: Iterable, layout=None):
        """Build from plain data.

        ``arrows`` holds ``(name, tail, head, (dx, dy))`` tuples; ``faces`` holds
        ``(orientation, [arrow names or ids])``.
        """
        arrs = tuple(Arrow(str(a[0]), int(a[1]), int(a[2]), (int(a[3][0]), int(a[3][1])))
                     for a in arrows)
        index = {a.name: k for k, a in enumerate(arrs)}
        fs = []
        for orient, names in faces:
            ids = tuple(index[n] if isinstance(n, str) else int(n) for n in names)
            fs.append(Face(ids, orient))
        if layout is not None:
            layout = tuple(None if p is None else (float(p[0]), float(p[1])) for p in layout)
        return cls(int(vertex_count), arrs, tuple(fs), layout)

    # -- lookups --------------------------------------------------------
    @cached_property
    def arrow_index(self) -> dict:
        return {a.name: k for k, a in enumerate(self.arrows)}

    def arrow_id(self, name) -> int:
        if isinstance(name, int):
            return name
        try:
            return self.arrow_index[name]
        except KeyError:
            raise KeyError(f"unknown arrow {name!r}") from None

    def name(self, a: int) -> str:
        return self.arrows[a].name

    def tail(self, a: int) -> int:
        return self.arrows[a].tail

    def head(self, a: int) -> int:
        return self.arrows[a].head

    @cached_property
    def out_arrows(self) -> tuple:
        out = [[] for _ in range(self.vertex_count)]
        for k, a in enumerate(self.arrows):
            out[a.tail].append(k)
        return tuple(tuple(x) for x in out)

    @cached_property
    def in_arrows(self) -> tuple:
        inn = [[] for _ in range(self.vertex_count)]
        for k, a in enumerate(self.arrows):
            inn[a.head].append(k)
        return tuple(tuple(x) for x in inn)

    @cached_property
    def faces_of_arrow(self) -> tuple:
        """For each arrow, the list of (face index, position) occurrences."""
        occ = [[] for _ in self.arrows]
        for f, face in enumerate(self.faces):
            for pos, a in enumerate(face.arrows):
                if 0 <= a < len(occ):
                    occ[a].append((f, pos))
        return tuple(tuple(o) for o in occ)

    # -- paths ----------------------------------------------------------
    def path(self, *names, start: Optional[int] = None) -> Path:
        """Path through the named arrows, in traversal order."""
        ids = tuple(self.arrow_id(n) for n in names)
        if not ids:
            if start is None:
                raise PathError("trivial path needs a start vertex")
            return Path(start)
        p = Path(self.tail(ids[0]), ids)
        self.check(p)
        return p

    def check(self, p: Path) -> Path:
        if not 0 <= p.start < self.vertex_count:
            raise PathError(f"vertex {p.start} out of range")
        v = p.start
        for k, a in enumerate(p.arrows):
            if not 0 <= a < len(self.arrows):
                raise PathError(f"arrow id {a} out of range")
            if self.arrows[a].tail != v:
                raise PathError(f"arrow {self.name(a)} at position {k} does not start at vertex {v}")
            v = self.arrows[a].head
        return p

    def path_head(self, p: Path) -> int:
        return self.arrows[p.arrows[-1]].head if p.arrows else p.start

    def words(self, p: Path) -> str:
        if not p.arrows:
            return f"e{p.start}"
        return " ".join(self.name(a) for a in p.arrows)

    def face_path(self, f: int, pos: int = 0) -> Path:
        arrs = self.faces[f].arrows
        rot = arrs[pos:] + arrs[:pos]
        return Path(self.tail(rot[0]), rot)


# -- graph helpers ---------------------------------------------------------

def reachable(n: int, edges: Iterable, start: int) -> set:
    adj = [[] for _ in range(n)]
    for t, h in edges:
        adj[t].append(h)
    seen = {start}
    todo = [start]
    while todo:
        v = todo.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return seen


def strongly_connected(n: int, edges: Sequence) -> bool:
    """True iff the digraph on range(n) is strongly connected (forward and backward search)."""
    if n <= 1:
        return True
    edges = list(edges)
    if len(reachable(n, edges, 0)) < n:
        return False
    return len(reachable(n, [(h, t) for t, h in edges], 0)) == n


def potential(q: DimerQuiver, arrows: Optional[Iterable[int]] = None):
    """Spanning-forest potential phi with phi(head) = phi(tail) + offset on tree arrows.

    Returns (phi, tree_arrows, component) where phi maps vertex -> Z^2.  Only the
    given arrows (default: all) are used as edges; the forest is built by BFS
    from the smallest vertex of each component, scanning arrows in id order.
    """
    use = range(len(q.arrows)) if arrows is None else sorted(set(arrows))
    adj = [[] for _ in range(q.vertex_count)]
    for a in use:
        arr = q.arrows[a]
        adj[arr.tail].append((a, arr.head, arr.offset))
        adj[arr.head].append((a, arr.tail, (-arr.offset[0], -arr.offset[1])))
    phi = [None] * q.vertex_count
    comp = [None] * q.vertex_count
    tree = []
    for root in range(q.vertex_count):
        if phi[root] is not None:
            continue
        phi[root] = (0, 0)
        comp[root] = root
        todo = deque([root])
        while todo:
            v = todo.popleft()
            for a, w, off in adj[v]:
                if phi[w] is None:
                    phi[w] = _add(phi[v], off)
                    comp[w] = root
                    tree.append(a)
                    todo.append(w)
    return phi, tree, comp


def validate(q: DimerQuiver) -> list:
    """All violated dimer invariants, as a list of Violation; empty means valid."""
    out = []
    n = q.vertex_count
    if n < 1:
        out.append(Violation("no vertices", (), "quiver has no vertices"))
        return out
    names = [a.name for a in q.arrows]
    seen = set()
    for k, nm in enumerate(names):
        if nm in seen:
            out.append(Violation("duplicate arrow name", (k,), f"arrow name {nm!r} repeated"))
        seen.add(nm)
    bad_arrow = False
    for k, a in enumerate(q.arrows):
        if not (0 <= a.tail < n and 0 <= a.head < n):
            out.append(Violation("arrow endpoint out of range", (k,),
                                 f"arrow {a.name} has endpoint outside 0..{n - 1}"))
            bad_arrow = True
    if not q.faces:
        out.append(Violation("no faces", (), "quiver has no faces"))
    for f, face in enumerate(q.faces):
        if face.orientation not in (PLUS, MINUS):
            out.append(Violation("bad orientation", (f,), f"face {f} orientation {face.orientation!r}"))
        if not face.arrows:
            out.append(Violation("empty face", (f,), f"face {f} has no arrows"))
            continue
        if any(not 0 <= a < len(q.arrows) for a in face.arrows):
            out.append(Violation("face references unknown arrow", (f,), f"face {f} has a bad arrow id"))
            continue
        if bad_arrow:
            continue
        L = len(face.arrows)
        for k in range(L):
            a, b = face.arrows[k], face.arrows[(k + 1) % L]
            if q.head(a) != q.tail(b):
                out.append(Violation("face not a cycle", (f, a, b),
                                     f"face {f}: {q.name(a)} does not compose with {q.name(b)}"))
                break
        tot = (0, 0)
        for a in face.arrows:
            tot = _add(tot, q.arrows[a].offset)
        if tot != (0, 0):
            out.append(Violation("face homology nonzero", (f,), f"face {f} offsets sum to {tot}"))
    for a, occ in enumerate(q.faces_of_arrow):
        if len(occ) != 2:
            out.append(Violation("arrow not in exactly two faces", (a,),
                                 f"arrow {q.name(a)} lies in {len(occ)} face slots"))
            continue
        o1, o2 = (q.faces[f].orientation for f, _ in occ)
        if o1 == o2:
            out.append(Violation("arrow in two faces of same orientation", (a, occ[0][0], occ[1][0]),
                                 f"arrow {q.name(a)} lies in two {o1} faces"))
    if not bad_arrow and not any(v.code in ("face not a cycle", "arrow not in exactly two faces",
                                            "face references unknown arrow") for v in out):
        out.extend(_link_violations(q))
    chi = n - len(q.arrows) + len(q.faces)
    if chi != 0:
        out.append(Violation("euler characteristic nonzero", (),
                             f"V - E + F = {n} - {len(q.arrows)} + {len(q.faces)} = {chi}"))
    if bad_arrow:
        return out
    phi, tree, comp = potential(q)
    if len(set(comp)) > 1:
        out.append(Violation("not connected", tuple(sorted(set(comp))),
                             f"underlying graph has {len(set(comp))} components"))
        return out
    # cycle classes of the fundamental cycles must generate Z^2:
    # gcd of all 2x2 minors equals 1
    tree_set = set(tree)
    classes = []
    for a, arr in enumerate(q.arrows):
        if a not in tree_set:
            c = _sub(_add(phi[arr.tail], arr.offset), phi[arr.head])
            if c != (0, 0):
                classes.append(c)
    g = 0
    for i in range(len(classes)):
        for j in range(i + 1, len(classes)):
            u, v = classes[i], classes[j]
            g = gcd(g, u[0] * v[1] - u[1] * v[0])
            if g == 1:
                break
        if g == 1:
            break
    if g != 1:
        out.append(Violation("homology does not generate Z^2", (),
                             f"cycle classes span a sublattice of index {g or 'infinity'}"))
    return out


def _link_violations(q: DimerQuiver) -> list:
    """Face corners at each vertex must chain its arrow ends into one cycle.

    A corner of a face at v joins the incoming end of one arrow to the
    outgoing end of the next.  Each end lies in two corners, so the corners
    form disjoint cycles; more than one means the faces do not close up
    into a disk around v.
    """
    parent = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, arr in enumerate(q.arrows):
        parent.setdefault(("in", a), ("in", a))
        parent.setdefault(("out", a), ("out", a))
    for face in q.faces:
        L = len(face.arrows)
        for k in range(L):
            x, y = find(("in", face.arrows[k])), find(("out", face.arrows[(k + 1) % L]))
            if x != y:
                parent[x] = y
    out = []
    for v in range(q.vertex_count):
        ends = [("in", a) for a in q.in_arrows[v]] + [("out", a) for a in q.out_arrows[v]]
        pieces = {find(e) for e in ends}
        if len(pieces) > 1:
            out.append(Violation("vertex link not a cycle", (v,),
                                 f"faces around vertex {v} form {len(pieces)} separate fans"))
    return out


def is_valid(q: DimerQuiver) -> bool:
    return not validate(q)


class InvalidQuiver(ValueError):
    def __init__(self, violations, what="quiver"):
        self.violations = list(violations)
        lines = "; ".join(v.message for v in self.violations[:5])
        super().__init__(f"invalid {what}: {lines}")


def require_valid(q: DimerQuiver, what="quiver") -> DimerQuiver:
    v = validate(q)
    if v:
        raise InvalidQuiver(v, what)
    return q


def unit_cycle_at(q: DimerQuiver, i: int) -> list:
    """Every rotation of every face cycle that starts at vertex i."""
    if not 0 <= i < q.vertex_count:
        raise IndexError(f"vertex {i} out of range")
    out = []
    for f, face in enumerate(q.faces):
        for pos, a in enumerate(face.arrows):
            if q.tail(a) == i:
                out.append(q.face_path(f, pos))
    return out


def homology(q: DimerQuiver, p: Path) -> tuple:
    q.check(p)
    x = y = 0
    for a in p.arrows:
        dx, dy = q.arrows[a].offset
        x += dx
        y += dy
    return (x, y)


def lift(q: DimerQuiver, p: Path, start=(0, 0)) -> LiftedPath:
    q.check(p)
    pos = (int(start[0]), int(start[1]))
    visited = [(p.start, pos)]
    for a in p.arrows:
        arr = q.arrows[a]
        pos = _add(pos, arr.offset)
        visited.append((arr.head, pos))
    return LiftedPath(p, tuple(start), tuple(visited))


def regauge(q: DimerQuiver, phi) -> DimerQuiver:
    """Add the coboundary of phi: offset(a) -> offset(a) + phi(t) - phi(h).

    Face sums and cycle classes are unchanged.
    """
    arrs = tuple(Arrow(a.name, a.tail, a.head,
                       _sub(_add(a.offset, phi[a.tail]), phi[a.head])) for a in q.arrows)
    return DimerQuiver(q.vertex_count, arrs, q.faces, q.layout)


# -- isomorphism -------------------------------------------------------------

def _gauge_equivalent(q1: DimerQuiver, q2: DimerQuiver, vmap, amap) -> bool:
    # offsets agree up to a vertex potential iff their difference is a coboundary
    diff = {}
    for a, arr in enumerate(q1.arrows):
        b = amap[a]
        diff[a] = _sub(q2.arrows[b].offset, arr.offset)
    phi = [None] * q1.vertex_count
    phi[0] = (0, 0)
    todo = [0]
    adj = [[] for _ in range(q1.vertex_count)]
    for a, arr in enumerate(q1.arrows):
        adj[arr.tail].append((arr.head, diff[a]))
        adj[arr.head].append((arr.tail, (-diff[a][0], -diff[a][1])))
    while todo:
        v = todo.pop()
        for w, d in adj[v]:
            want = _add(phi[v], d)
            if phi[w] is None:
                phi[w] = want
                todo.append(w)
            elif phi[w] != want:
                return False
    return True


def find_isomorphism(q1: DimerQuiver, q2: DimerQuiver, homology_check=True):
    """An isomorphism of embedded quivers as (vertex_map, arrow_map), or None.

    Faces are matched by propagation: fixing the image of one arrow determines
    the images of its two faces (with rotation), hence of neighbouring arrows.
    With ``homology_check`` the arrow offsets must agree up to a vertex gauge.
    """
    if (q1.vertex_count, len(q1.arrows), len(q1.faces)) != (q2.vertex_count, len(q2.arrows), len(q2.faces)):
        return None
    if not q1.arrows:
        return None
    start = 0
    for b in range(len(q2.arrows)):
        amap = {start: b}
        todo = [start]
        ok = True
        while todo and ok:
            a = todo.pop()
            b2 = amap[a]
            for (f1, p1) in q1.faces_of_arrow[a]:
                orient = q1.faces[f1].orientation
                match = [(f2, p2) for f2, p2 in q2.faces_of_arrow[b2] if q2.faces[f2].orientation == orient]
                if len(match) != 1:
                    ok = False
                    break
                f2, p2 = match[0]
                A1, A2 = q1.faces[f1].arrows, q2.faces[f2].arrows
                if len(A1) != len(A2):
                    ok = False
                    break
                L = len(A1)
                for k in range(L):
                    x, y = A1[(p1 + k) % L], A2[(p2 + k) % L]
                    if x in amap:
                        if amap[x] != y:
                            ok = False
                            break
                    else:
                        amap[x] = y
                        todo.append(x)
                if not ok:
                    break
        if not ok or len(amap) != len(q1.arrows) or len(set(amap.values())) != len(q2.arrows):
            continue
        vmap = {}
        for a, arr in enumerate(q1.arrows):
            for v, w in ((arr.tail, q2.tail(amap[a])), (arr.head, q2.head(amap[a]))):
                if vmap.setdefault(v, w) != w:
                    ok = False
        if not ok or len(set(vmap.values())) != q1.vertex_count:
            continue
        if homology_check and not _gauge_equivalent(q1, q2, vmap, amap):
            continue
        return vmap, amap
    return None


def is_isomorphic(q1: DimerQuiver, q2: DimerQuiver, homology_check=True) -> bool:
    return find_isomorphism(q1, q2, homology_check) is not None
