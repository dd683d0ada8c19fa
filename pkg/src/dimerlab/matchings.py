"""Perfect and simple matchings, degeneracy and 2-cycle classification."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from .quiver import DimerQuiver, strongly_connected


def exact_cover(items: Iterable, options: dict) -> Iterator[tuple]:
    """Algorithm X over a dict of sets.

    ``options`` maps an option key to the set of items it covers.  Yields every
    exact cover as a sorted tuple of option keys.  Branches on the item with
    the fewest candidate options (ties broken by item order).
    """
    items = list(items)
    order = {x: k for k, x in enumerate(items)}
    # options touching an unknown item can never be chosen
    options = {k: sorted(v, key=order.__getitem__) for k, v in options.items()
               if all(x in order for x in v)}
    cover = {x: set() for x in items}
    for key, its in options.items():
        for x in its:
            cover[x].add(key)

    def select(key, removed):
        for x in options[key]:
            for other in cover[x]:
                for y in options[other]:
                    if y != x:
                        cover[y].discard(other)
            removed.append(cover.pop(x))

    def deselect(key, removed):
        for x in reversed(options[key]):
            cover[x] = removed.pop()
            for other in cover[x]:
                for y in options[other]:
                    if y != x:
                        cover[y].add(other)

    chosen = []

    def solve():
        if not cover:
            yield tuple(sorted(chosen))
            return
        x = min(cover, key=lambda i: (len(cover[i]), order[i]))
        for key in sorted(cover[x]):
            chosen.append(key)
            removed = []
            select(key, removed)
            yield from solve()
            deselect(key, removed)
            chosen.pop()

    yield from solve()


@dataclass(frozen=True)
class MatchingFamily:
    """An ordered family of perfect matchings (frozensets of arrow ids) with variable names."""
    matchings: tuple
    names: tuple

    def __post_init__(self):
        if len(self.matchings) != len(self.names):
            raise ValueError("one name per matching")
        if len(set(self.matchings)) != len(self.matchings):
            raise ValueError("matchings must be distinct")
        if len(set(self.names)) != len(self.names):
            raise ValueError("names must be distinct")

    def __len__(self):
        return len(self.matchings)

    def __iter__(self):
        return iter(self.matchings)

    def __getitem__(self, k):
        return self.matchings[k]

    def arrow_degree(self, a: int) -> tuple:
        return tuple(1 if a in d else 0 for d in self.matchings)

    def subfamily(self, keep, prefix=None):
        keep = list(keep)
        ms = tuple(self.matchings[k] for k in keep)
        names = tuple(f"{prefix}{j}" for j in range(len(keep))) if prefix else tuple(self.names[k] for k in keep)
        return MatchingFamily(ms, names)

    def describe(self, q: DimerQuiver) -> list:
        return [f"{n}: {{{', '.join(q.name(a) for a in sorted(d))}}}" for n, d in zip(self.names, self.matchings)]


def family(matchings, prefix="m") -> MatchingFamily:
    ms = tuple(frozenset(d) for d in matchings)
    return MatchingFamily(ms, tuple(f"{prefix}{k}" for k in range(len(ms))))


def is_perfect_matching(q: DimerQuiver, d) -> bool:
    d = set(d)
    return all(sum(1 for a in f.arrows if a in d) == 1 for f in q.faces)


def _sort_key(d):
    return tuple(sorted(d))


def enumerate_perfect_matchings(q: DimerQuiver) -> MatchingFamily:
    """All perfect matchings, ordered lexicographically by sorted arrow ids."""
    options = {}
    for a, occ in enumerate(q.faces_of_arrow):
        faces = {f for f, _ in occ}
        if len(faces) != len(occ):
            # an arrow met twice by one face can never be in a perfect matching
            continue
        options[a] = faces
    found = sorted(exact_cover(range(len(q.faces)), options))
    return family(found, prefix="P")


def brute_force_perfect_matchings(q: DimerQuiver) -> list:
    """Reference enumeration over all arrow subsets.  Exponential; for tests."""
    from itertools import combinations
    n = len(q.arrows)
    out = []
    for r in range(n + 1):
        for sub in combinations(range(n), r):
            if is_perfect_matching(q, sub):
                out.append(frozenset(sub))
    return sorted(out, key=_sort_key)


def is_simple_matching(q: DimerQuiver, d) -> bool:
    if not is_perfect_matching(q, d):
        raise ValueError("not a perfect matching")
    d = set(d)
    edges = [(a.tail, a.head) for k, a in enumerate(q.arrows) if k not in d]
    return strongly_connected(q.vertex_count, edges)


def simple_matchings(q: DimerQuiver, prefix="m") -> MatchingFamily:
    fam = enumerate_perfect_matchings(q)
    keep = [k for k, d in enumerate(fam.matchings) if is_simple_matching(q, d)]
    return fam.subfamily(keep, prefix=prefix)


def uncovered_arrows(q: DimerQuiver, fam) -> frozenset:
    covered = set()
    for d in fam:
        covered |= set(d)
    return frozenset(range(len(q.arrows))) - covered


def is_nondegenerate(q: DimerQuiver) -> bool:
    return not uncovered_arrows(q, enumerate_perfect_matchings(q))


@dataclass(frozen=True)
class Cancellativity:
    cancellative: bool
    uncovered: frozenset  # arrows in no simple matching

    def __bool__(self):
        return self.cancellative


def is_cancellative(q: DimerQuiver) -> Cancellativity:
    """Every arrow lies in some simple matching (the matching criterion for cancellativity)."""
    unc = uncovered_arrows(q, simple_matchings(q))
    return Cancellativity(not unc, unc)


# -- 2-cycles ---------------------------------------------------------------

def other_face(q: DimerQuiver, a: int, f: int) -> tuple:
    """(face, position) of the occurrence of arrow a outside face f."""
    occ = [o for o in q.faces_of_arrow[a] if o[0] != f]
    if len(occ) != 1:
        raise ValueError(f"arrow {q.name(a)} does not have a unique other face")
    return occ[0]


def path_after(q: DimerQuiver, f: int, pos: int) -> tuple:
    """Arrows of face f following position pos, cyclically, ending before it."""
    arrs = q.faces[f].arrows
    return arrs[pos + 1:] + arrs[:pos]


def _contains(seq: tuple, sub: tuple) -> bool:
    n = len(sub)
    return any(seq[k:k + n] == sub for k in range(len(seq) - n + 1))


def two_cycle_faces(q: DimerQuiver) -> list:
    return [f for f, face in enumerate(q.faces) if len(face.arrows) == 2]


def classify_two_cycles(q: DimerQuiver) -> list:
    """(face index, 'removable' | 'permanent') for every length-2 face.

    For a 2-cycle ab, let s_a be the rest of a's other face after a.  The
    2-cycle is permanent when b occurs in s_a or a occurs in s_b.
    """
    out = []
    for f in two_cycle_faces(q):
        a, b = q.faces[f].arrows
        fa, pa = other_face(q, a, f)
        fb, pb = other_face(q, b, f)
        sa = path_after(q, fa, pa)
        sb = path_after(q, fb, pb)
        permanent = _contains(sa, (b,)) or _contains(sb, (a,))
        out.append((f, "permanent" if permanent else "removable"))
    return out


def matching_name_map(fam: MatchingFamily) -> dict:
    return {n: k for k, n in enumerate(fam.names)}


def find_matching(fam: MatchingFamily, d) -> Optional[int]:
    d = frozenset(d)
    for k, m in enumerate(fam.matchings):
        if m == d:
            return k
    return None
