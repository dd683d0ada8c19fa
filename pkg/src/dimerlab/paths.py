"""Path labels, rewrite rules, equality in the dimer algebra, and cycle classes.

Equality in the dimer algebra A is decided exactly by an index of
rewrite classes graded by eta-degree (eta = all perfect matchings).  Every
relation preserves the key (tail, head, homology, eta-degree).  Every
nonempty path is Y.a for its last arrow a.  A single substitution either
leaves a alone (then it acts on Y) or rewrites a suffix.  So the classes of
a key are the connected components of a small graph whose nodes are
(last arrow, class of the prefix).  The prefix classes have strictly
smaller degree when every arrow has positive degree (nondegeneracy).

A plain breadth-first closure over substitutions is kept as the reference
route and as the fallback for degenerate quivers.
"""
from __future__ import annotations

import sys
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import NamedTuple, Optional

from .matchings import enumerate_perfect_matchings, is_cancellative, path_after, simple_matchings
from .quiver import DimerQuiver, Path, PathError, lift, unit_cycle_at

EQUAL = "equal"
DISTINCT = "distinct"
UNDECIDED = "undecided"


class PathLabel(NamedTuple):
    tail: int
    head: int
    u: tuple
    degree: tuple


class RewriteRule(NamedTuple):
    pivot: int
    left: Path
    right: Path


def sigma(fam) -> tuple:
    return (1,) * len(fam)


def arrow_degrees(q: DimerQuiver, fam) -> list:
    return [tuple(1 if a in d else 0 for d in fam) for a in range(len(q.arrows))]


def label(q: DimerQuiver, fam, p: Path) -> PathLabel:
    q.check(p)
    k = len(fam)
    deg = [0] * k
    x = y = 0
    for a in p.arrows:
        dx, dy = q.arrows[a].offset
        x += dx
        y += dy
        for j, d in enumerate(fam):
            if a in d:
                deg[j] += 1
    return PathLabel(p.start, q.path_head(p), (x, y), tuple(deg))


def combine(l1: PathLabel, l2: PathLabel) -> PathLabel:
    """Label of the concatenation (l1 first, then l2)."""
    if l1.head != l2.tail:
        raise PathError("labels do not compose")
    return PathLabel(l1.tail, l2.head, (l1.u[0] + l2.u[0], l1.u[1] + l2.u[1]),
                     tuple(a + b for a, b in zip(l1.degree, l2.degree)))


def rewrite_rules(q: DimerQuiver) -> list:
    """One rule per arrow: the rests of its plus face and of its minus face."""
    rules = []
    for a, occ in enumerate(q.faces_of_arrow):
        if len(occ) != 2:
            raise ValueError(f"arrow {q.name(a)} is not in exactly two faces")
        occ = sorted(occ, key=lambda o: q.faces[o[0]].orientation != "+")
        h = q.head(a)
        sides = [Path(h, path_after(q, f, pos)) for f, pos in occ]
        rules.append(RewriteRule(a, sides[0], sides[1]))
    return rules


# -- reference closure --------------------------------------------------------

def _substitutions(q: DimerQuiver):
    """(side -> list of replacement sides) for non-empty sides, and empty-side insertions per vertex."""
    table = {}
    inserts = {}
    for r in rewrite_rules(q):
        for s, t in ((r.left.arrows, r.right.arrows), (r.right.arrows, r.left.arrows)):
            if s == t:
                continue
            if s:
                table.setdefault(s, []).append(t)
            else:
                inserts.setdefault(r.left.start, []).append(t)
    by_first = {}
    for s in table:
        by_first.setdefault(s[0], []).append(s)
    return table, by_first, inserts


def neighbours(q: DimerQuiver, arrows: tuple, start: int, subs=None):
    """All paths one substitution away (as arrow tuples)."""
    table, by_first, inserts = subs or _substitutions(q)
    out = set()
    n = len(arrows)
    for k in range(n):
        for s in by_first.get(arrows[k], ()):
            L = len(s)
            if arrows[k:k + L] == s:
                for t in table[s]:
                    out.add(arrows[:k] + t + arrows[k + L:])
    if inserts:
        v = start
        for k in range(n + 1):
            for t in inserts.get(v, ()):
                out.add(arrows[:k] + t + arrows[k:])
            if k < n:
                v = q.head(arrows[k])
    out.discard(arrows)
    return out


def closure(q: DimerQuiver, p: Path, cap: int = 200000):
    """Breadth-first closure of p under substitutions.

    Returns (parents, complete) where ``parents`` maps each reached arrow tuple
    to its predecessor; ``complete`` is False when the cap stopped the search.
    """
    subs = _substitutions(q)
    parents = {p.arrows: None}
    todo = deque([p.arrows])
    while todo:
        x = todo.popleft()
        for y in sorted(neighbours(q, x, p.start, subs)):
            if y not in parents:
                parents[y] = x
                if len(parents) > cap:
                    return parents, False
                todo.append(y)
    return parents, True


def _trace(parents, x):
    out = []
    while x is not None:
        out.append(x)
        x = parents[x]
    return out[::-1]


# -- exact class index ---------------------------------------------------------

class _Group:
    __slots__ = ("nodes", "node_class", "reps", "adj")

    def __init__(self):
        self.nodes = []          # (last arrow, class in the prefix group)
        self.node_class = {}     # node -> class index
        self.reps = []           # shortest representative per class (arrow tuple)
        self.adj = {}            # node -> [(node, w, s, s2)]


class DimerAlgebra:
    """Exact equality of paths in the dimer algebra of a nondegenerate quiver."""

    def __init__(self, q: DimerQuiver):
        self.q = q
        self.eta = enumerate_perfect_matchings(q)
        self.k = len(self.eta)
        self.deg = arrow_degrees(q, self.eta)
        self.nondegenerate = all(any(d) for d in self.deg)
        self.rules = rewrite_rules(q)
        # ordered side pairs indexed by the vertex where they end
        self.sides_into = [[] for _ in range(q.vertex_count)]
        for r in self.rules:
            for s, t in ((r.left.arrows, r.right.arrows), (r.right.arrows, r.left.arrows)):
                if s == t or not s or not t:
                    continue
                self.sides_into[q.tail(r.pivot)].append((s, t, self._vec(s)))
        self.groups = {}

    # keys are (tail, head, u, degree)
    def _vec(self, arrows):
        x = y = 0
        deg = [0] * self.k
        for a in arrows:
            dx, dy = self.q.arrows[a].offset
            x += dx
            y += dy
            for j, v in enumerate(self.deg[a]):
                deg[j] += v
        return (x, y), tuple(deg)

    def trivial_key(self, i):
        return (i, i, (0, 0), (0,) * self.k)

    def plus(self, key, a):
        t, h, u, d = key
        arr = self.q.arrows[a]
        if arr.tail != h:
            raise PathError("arrow does not continue the path")
        return (t, arr.head, (u[0] + arr.offset[0], u[1] + arr.offset[1]),
                tuple(x + y for x, y in zip(d, self.deg[a])))

    def minus(self, key, a):
        t, h, u, d = key
        arr = self.q.arrows[a]
        if arr.head != h:
            return None
        nd = tuple(x - y for x, y in zip(d, self.deg[a]))
        if min(nd, default=0) < 0:
            return None
        return (t, arr.tail, (u[0] - arr.offset[0], u[1] - arr.offset[1]), nd)

    def minus_side(self, key, s, vec):
        t, h, u, d = key
        (dx, dy), sd = vec
        nd = tuple(x - y for x, y in zip(d, sd))
        if min(nd, default=0) < 0:
            return None
        return (t, self.q.tail(s[0]), (u[0] - dx, u[1] - dy), nd)

    def key_of(self, p: Path):
        self.q.check(p)
        key = self.trivial_key(p.start)
        for a in p.arrows:
            key = self.plus(key, a)
        return key

    def group(self, key) -> _Group:
        g = self.groups.get(key)
        if g is not None:
            return g
        if not self.nondegenerate:
            raise ValueError("class index needs a nondegenerate quiver")
        g = _Group()
        t, h, u, d = key
        if not any(d):
            if t == h and u == (0, 0):
                g.reps.append(())
            self.groups[key] = g
            return g
        q = self.q
        parent = {}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        reps = {}
        for a in q.in_arrows[h]:
            km = self.minus(key, a)
            if km is None:
                continue
            sub = self.group(km)
            for c, r in enumerate(sub.reps):
                node = (a, c)
                g.nodes.append(node)
                parent[node] = node
                reps[node] = r + (a,)
        if g.nodes:
            for s, s2, vec in self.sides_into[h]:
                wk = self.minus_side(key, s, vec)
                if wk is None:
                    continue
                wg = self.group(wk)
                for w in range(len(wg.reps)):
                    n1 = (s[-1], self.extend(wk, w, s[:-1]))
                    n2 = (s2[-1], self.extend(wk, w, s2[:-1]))
                    g.adj.setdefault(n1, []).append((n2, w, s, s2))
                    r1, r2 = find(n1), find(n2)
                    if r1 != r2:
                        parent[max(r1, r2)] = min(r1, r2)
            roots = {}
            for node in g.nodes:
                r = find(node)
                if r not in roots:
                    roots[r] = len(roots)
                    g.reps.append(reps[node])
                c = roots[r]
                g.node_class[node] = c
                cur = g.reps[c]
                cand = reps[node]
                if (len(cand), cand) < (len(cur), cur):
                    g.reps[c] = cand
        self.groups[key] = g
        return g

    def extend(self, key, c, arrows):
        """Class index of (class c of key) followed by arrows."""
        for a in arrows:
            key = self.plus(key, a)
            c = self.group(key).node_class[(a, c)]
        return c

    def class_of(self, p: Path):
        self.q.check(p)
        key = self.trivial_key(p.start)
        c = 0
        for a in p.arrows:
            key = self.plus(key, a)
            c = self.group(key).node_class[(a, c)]
        return key, c

    def equal(self, p: Path, r: Path) -> bool:
        return self.class_of(p) == self.class_of(r)

    def classes(self, key) -> list:
        return list(self.group(key).reps)

    # chains --------------------------------------------------------------
    def chain(self, p: Path, r: Path) -> list:
        """A substitution chain from p to r (both in one class), as Paths."""
        k1, c1 = self.class_of(p)
        k2, c2 = self.class_of(r)
        if (k1, c1) != (k2, c2):
            raise ValueError("paths are not equal")
        return [Path(p.start, x) for x in self._chain(k1, p.arrows, r.arrows)]

    def _prefix_class(self, key, arrows):
        return self.class_of(Path(key[0], arrows))[1]

    def _chain(self, key, x, y):
        if x == y:
            return [x]
        g = self.group(key)
        src = (x[-1], self._prefix_class(self.minus(key, x[-1]), x[:-1]))
        dst = (y[-1], self._prefix_class(self.minus(key, y[-1]), y[:-1]))
        # undirected search over the node graph (adjacency stored one way)
        adj = {}
        for n1, lst in g.adj.items():
            for n2, w, s, s2 in lst:
                adj.setdefault(n1, []).append((n2, w, s, s2))
                adj.setdefault(n2, []).append((n1, w, s2, s))
        prev = {src: None}
        todo = deque([src])
        while todo and dst not in prev:
            n = todo.popleft()
            for m, w, s, s2 in adj.get(n, ()):
                if m not in prev:
                    prev[m] = (n, w, s, s2)
                    todo.append(m)
        steps = []
        n = dst
        while prev[n] is not None:
            steps.append(prev[n])
            n = prev[n][0]
        steps.reverse()
        out = [x]
        cur = x
        for n, w, s, s2 in steps:
            wk = self.minus_side(key, s, self._vec(s))
            W = self.group(wk).reps[w]
            target = W + s
            out += self._lifted_chain(key, cur, target)[1:]
            cur = W + s2
            out.append(cur)
        out += self._lifted_chain(key, cur, y)[1:]
        return out

    def _lifted_chain(self, key, x, y):
        # x and y share their last arrow and have equal prefixes
        if x == y:
            return [x]
        a = x[-1]
        sub = self._chain(self.minus(key, a), x[:-1], y[:-1])
        return [z + (a,) for z in sub]

    # members ---------------------------------------------------------------
    def members(self, key, c, limit=None):
        """Arrow tuples of every path in class c of key (exponential; for tests)."""
        out = []

        def rec(k, cls, suffix):
            if limit is not None and len(out) >= limit:
                return
            g = self.group(k)
            if not any(k[3]):
                out.append(suffix)
                return
            for node in g.nodes:
                if g.node_class[node] == cls:
                    a, c2 = node
                    rec(self.minus(k, a), c2, (a,) + suffix)

        rec(key, c, ())
        return out


@lru_cache(maxsize=32)
def algebra(q: DimerQuiver) -> DimerAlgebra:
    return DimerAlgebra(q)


sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))


# -- equality -------------------------------------------------------------------

@dataclass(frozen=True)
class AEquality:
    verdict: str
    chain: tuple = ()   # substitution chain from p to r when equal

    def __bool__(self):
        return self.verdict == EQUAL


def equal_in_A(q: DimerQuiver, p: Path, r: Path, cap: int = 200000) -> AEquality:
    """Decide p = r in the dimer algebra.

    Exact for nondegenerate quivers.  For degenerate ones a closure with an
    iteration cap is used and the verdict may be UNDECIDED.
    """
    q.check(p)
    q.check(r)
    if p.start != r.start or q.path_head(p) != q.path_head(r):
        return AEquality(DISTINCT)
    if p.arrows == r.arrows:
        return AEquality(EQUAL, ())
    alg = algebra(q)
    if alg.nondegenerate:
        if alg.class_of(p) != alg.class_of(r):
            return AEquality(DISTINCT)
        return AEquality(EQUAL, tuple(alg.chain(p, r)))
    parents, complete = closure(q, p, cap)
    if r.arrows in parents:
        return AEquality(EQUAL, tuple(Path(p.start, x) for x in _trace(parents, r.arrows)))
    return AEquality(DISTINCT if complete else UNDECIDED)


def equal_by_closure(q: DimerQuiver, p: Path, r: Path, cap: int = 200000) -> AEquality:
    """Reference decision by plain closure (no class index)."""
    if p.start != r.start:
        return AEquality(DISTINCT)
    parents, complete = closure(q, p, cap)
    if r.arrows in parents:
        return AEquality(EQUAL, tuple(Path(p.start, x) for x in _trace(parents, r.arrows)))
    return AEquality(DISTINCT if complete else UNDECIDED)


# -- non-cancellative pairs -------------------------------------------------------

class NonCancellativePair(NamedTuple):
    p: Path
    r: Path
    witness: int  # m with sigma^m then p equal to sigma^m then r


class PairList(list):
    """Found pairs, plus the search bound and whether the search stopped early."""

    def __init__(self, items=(), bound=0, truncated=False):
        super().__init__(items)
        self.bound = bound
        self.truncated = truncated


def _unit_cycle(q, i):
    return min(unit_cycle_at(q, i), key=lambda c: (len(c), c.arrows))


def find_non_cancellative_pairs(q: DimerQuiver, max_len: int, limit: Optional[int] = None,
                                witness_cap: int = 8) -> PairList:
    """Pairs of distinct classes of paths of length <= max_len sharing endpoints,
    homology and eta-label.

    Each pair is reported once, by shortest representatives, and only when the
    two classes share no last arrow (otherwise it extends a shorter pair).
    Every pair carries a verified witness m: sigma^m followed by p equals
    sigma^m followed by r.  An empty result is not a proof of cancellativity.
    """
    alg = algebra(q)
    if not alg.nondegenerate:
        raise ValueError("pair search needs a nondegenerate quiver")
    out = PairList(bound=max_len)
    seen = set()
    level = []
    for i in range(q.vertex_count):
        k = alg.trivial_key(i)
        seen.add(k)
        level.append(k)
    for n in range(1, max_len + 1):
        nxt = []
        for key in level:
            for a in q.out_arrows[key[1]]:
                k2 = alg.plus(key, a)
                if k2 not in seen:
                    seen.add(k2)
                    nxt.append(k2)
        nxt.sort()
        for key in nxt:
            g = alg.group(key)
            if len(g.reps) < 2:
                continue
            last = {}
            for (a, c2), c in g.node_class.items():
                last.setdefault(c, set()).add(a)
            cls = [c for c, r in enumerate(g.reps) if len(r) <= max_len]
            for c1, c2 in combinations(cls, 2):
                if last[c1] & last[c2]:
                    continue
                p = Path(key[0], g.reps[c1])
                r = Path(key[0], g.reps[c2])
                m = _witness(q, alg, p, r, witness_cap)
                if m is None:
                    raise RuntimeError(f"no unit-cycle witness up to power {witness_cap} for "
                                       f"{q.words(p)} / {q.words(r)}")
                out.append(NonCancellativePair(p, r, m))
                if limit is not None and len(out) >= limit:
                    out.truncated = True
                    return out
        level = nxt
    return out


def _witness(q, alg, p, r, cap):
    s = _unit_cycle(q, p.start)
    for m in range(1, cap + 1):
        pre = s.power(m)
        if alg.equal(pre + p, pre + r):
            return m
    return None


# -- paths and cycles ------------------------------------------------------------

def enumerate_paths(q: DimerQuiver, max_len: int, start: Optional[int] = None):
    """Every path of length <= max_len (trivial paths included), depth first."""
    starts = range(q.vertex_count) if start is None else [start]
    out = []

    def rec(i, v, arrows):
        if len(arrows) == max_len:
            return
        for a in q.out_arrows[v]:
            nxt = arrows + (a,)
            out.append(Path(i, nxt))
            rec(i, q.head(a), nxt)

    for i in starts:
        out.append(Path(i))
        rec(i, i, ())
    return out


def enumerate_cycles(q: DimerQuiver, i: int, box: int, max_len: int, fam=None,
                     arrow_degree=None, degree_bound: Optional[int] = None, weights=None):
    """Cycles at i with simple lifts fitting in a translate of [-box, box]^2, plus unit-cycle powers.

    A lift is determined up to translation, so the box condition bounds its
    extent: max - min <= 2 * box in each coordinate.

    Labels use ``fam`` (default: simple matchings).  ``arrow_degree`` may
    override per-arrow degree vectors (used for contracted labels); when a
    ``degree_bound`` is given, branches whose total degree exceeds it are cut.
    ``weights`` gives each arrow's contribution to the length (default 1);
    contracted arrows get weight 0 so that length is measured in the target.
    """
    w = weights if weights is not None else [1] * len(q.arrows)
    if fam is None:
        fam = simple_matchings(q)
    degs = arrow_degree if arrow_degree is not None else arrow_degrees(q, fam)
    k = len(degs[0]) if degs else 0
    out = []
    origin = (i, (0, 0))

    span = 2 * box

    def rec(v, pos, arrows, length, deg, visited, lo, hi):
        for a in q.out_arrows[v]:
            if length + w[a] > max_len:
                continue
            arr = q.arrows[a]
            np_ = (pos[0] + arr.offset[0], pos[1] + arr.offset[1])
            nlo = (min(lo[0], np_[0]), min(lo[1], np_[1]))
            nhi = (max(hi[0], np_[0]), max(hi[1], np_[1]))
            if nhi[0] - nlo[0] > span or nhi[1] - nlo[1] > span:
                continue
            nd = tuple(x + y for x, y in zip(deg, degs[a]))
            if degree_bound is not None and sum(nd) > degree_bound:
                continue
            node = (arr.head, np_)
            nxt = arrows + (a,)
            if node == origin:
                out.append((Path(i, nxt), PathLabel(i, i, np_, nd)))
                continue
            if node in visited:
                continue
            if arr.head == i:
                out.append((Path(i, nxt), PathLabel(i, i, np_, nd)))
            visited.add(node)
            rec(arr.head, np_, nxt, length + w[a], nd, visited, nlo, nhi)
            visited.discard(node)

    rec(i, (0, 0), (), 0, (0,) * k, {origin}, (0, 0), (0, 0))
    present = {p.arrows for p, _ in out}
    s = _unit_cycle(q, i)
    sdeg = tuple(sum(degs[a][j] for a in s.arrows) for j in range(k))
    m = 1
    while True:
        tot = m * sum(sdeg)
        if degree_bound is not None and tot > degree_bound:
            break
        if degree_bound is None and m * sum(w[a] for a in s.arrows) > max_len:
            break
        if tot == 0 and m > 1:
            break
        sp = s.power(m)
        if sp.arrows not in present:
            out.append((sp, PathLabel(i, i, (0, 0), tuple(m * x for x in sdeg))))
        m += 1
    return out


# -- the cycle class C-hat ---------------------------------------------------------

def doubled_lift_simple(q: DimerQuiver, c: Path) -> bool:
    """True iff the lift of c followed by c has no repeated vertex."""
    if q.path_head(c) != c.start:
        raise PathError("not a cycle")
    return lift(q, c.power(2)).is_simple()


def in_C_hat(q: DimerQuiver, c: Path, method: str = "lift", cap: int = 200000) -> bool:
    """Whether the class of cycle c has a representative whose doubled lift is simple.

    ``method='sigma'`` instead tests that sigma does not divide the label over
    the simple matchings; this is only meaningful on cancellative quivers.
    """
    q.check(c)
    if q.path_head(c) != c.start:
        raise PathError("not a cycle")
    if method == "sigma":
        if not is_cancellative(q):
            raise ValueError("the sigma test requires a cancellative quiver")
        deg = label(q, simple_matchings(q), c).degree
        return min(deg) == 0
    if method != "lift":
        raise ValueError(f"unknown method {method!r}")
    if not c.arrows:
        return False
    alg = algebra(q)
    if not alg.nondegenerate:
        parents, _ = closure(q, c, cap)
        return any(doubled_lift_simple(q, Path(c.start, x)) for x in parents)
    key, cls = alg.class_of(c)
    u = key[2]
    if u == (0, 0):
        return False
    return _search_simple_doubled(q, alg, key, cls, u)


def _search_simple_doubled(q, alg, key, cls, u):
    # build representatives from the end backwards, pruning on the doubled lift
    end = (key[1], u)

    def shifted(x, s):
        return (x[0], (x[1][0] + s * u[0], x[1][1] + s * u[1]))

    def rec(k, c, suffix, pos, seen):
        g = alg.group(k)
        for node in g.nodes:
            if g.node_class[node] != c:
                continue
            a, c2 = node
            arr = q.arrows[a]
            prev = (arr.tail, (pos[1][0] - arr.offset[0], pos[1][1] - arr.offset[1]))
            k2 = alg.minus(k, a)
            if not any(k2[3]):
                # prev is the start vertex; check the whole doubled lift
                full = (a,) + suffix
                if lift(q, Path(k[0], full * 2)).is_simple():
                    return True
                continue
            if prev in seen or shifted(prev, -1) in seen or shifted(prev, 1) in seen:
                continue
            seen.add(prev)
            if rec(k2, c2, (a,) + suffix, prev, seen):
                return True
            seen.discard(prev)
        return False

    return rec(key, cls, (), end, {end})
