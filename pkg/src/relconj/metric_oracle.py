"""Brute-force ground truth on the Cayley graph and its coned-off variant.

Everything here is computed by exhaustive enumeration and is independent of
the curve-shortening machinery, so it can verify it.  On a presentation
without relators, equality of group elements is decided by the free-product
normal form (words.normalize); with relators the caller must inject an
independent ``trivial`` callable, otherwise queries raise
:class:`OracleUnavailableError`.

The coned-off graph is realized on a finite induced vertex set: the ordinary
ball of a chosen radius, with an edge for every generator and an edge between
any two distinct elements of a common left parabolic coset.  Distances stay
integer valued.  Estimators (hyperbolicity constant, component bound) are
exhaustive over that finite window and are therefore lower bounds for the
true constants; they are labeled with the radius they used.
"""

from __future__ import annotations

import struct
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import words
from .errors import BudgetExceededError, OracleUnavailableError, RelconjError
from .parabolic_oracles import oracles_for
from .presentation import (
    HYPERBOLIC,
    RelativePresentation,
    presentation_hash,
)

DEFAULT_BUDGET = 1_000_000


def triviality_test(p: RelativePresentation, trivial=None):
    """A word -> bool test for equality with the identity."""
    if trivial is not None:
        return trivial
    if p.is_free_product:
        return lambda w: words.normalize(p, w) == ""
    raise OracleUnavailableError(
        "presentation %r has relators; pass an explicit triviality test" % p.label
    )


def validate_relators(p: RelativePresentation, trivial=None):
    """Check that every relator (and each of its rotations, which must also
    die in the group) passes the triviality test.  Raises RelconjError on
    the first violation; a sanity gate for injected tests."""
    check = triviality_test(p, trivial)
    for rel in p.relators:
        for j in range(max(1, len(rel))):
            rot = rel[j:] + rel[:j]
            if not check(rot):
                raise RelconjError(
                    "relator rotation %r fails the triviality test" % rot
                )


def normal_form(p: RelativePresentation, w: str, trivial=None, budget=None) -> str:
    """Canonical representative of the element of w.

    Free products use the syllable normal form directly.  With relators the
    representative is the shortlex-least geodesic found by ball search out
    to the length of w.
    """
    if p.is_free_product and trivial is None:
        return words.normalize(p, w)
    w = words.normalize(p, w)
    index = ball(p, len(w), trivial=trivial, budget=budget)
    rep = index.find(p, w, trivial)
    if rep is None:
        raise RelconjError("no representative for %r within radius %d" % (w, len(w)))
    return rep


@dataclass
class BallIndex:
    """All elements of the ball of a radius, keyed by canonical word."""

    radius: int
    dist: dict  # canonical word -> graph distance from the identity

    @property
    def elements(self) -> list:
        return list(self.dist)

    def __len__(self):
        return len(self.dist)

    def __contains__(self, rep):
        return rep in self.dist

    def find(self, p, w, trivial=None):
        """Canonical representative of w inside this ball, or None."""
        if p.is_free_product and trivial is None:
            nf = words.normalize(p, w)
            return nf if nf in self.dist else None
        check = triviality_test(p, trivial)
        for rep in self.dist:
            if check(w + words.inverse(rep)):
                return rep
        return None


@lru_cache(maxsize=128)
def ball(p: RelativePresentation, r: int, trivial=None, budget=None) -> BallIndex:
    """Breadth-first ball of radius r; distances are exact word lengths."""
    budget = DEFAULT_BUDGET if budget is None else budget
    if p.is_free_product and trivial is None:
        dist = {"": 0}
        frontier = [""]
        for depth in range(1, r + 1):
            nxt = []
            for w in frontier:
                for c in p.alphabet:
                    nf = words.normalize(p, w + c)
                    if nf not in dist:
                        dist[nf] = depth
                        nxt.append(nf)
                        if len(dist) > budget:
                            raise BudgetExceededError("ball(%d)" % r, budget)
            frontier = nxt
        return BallIndex(r, dist)
    check = triviality_test(p, trivial)
    reps = [""]
    dist = {"": 0}
    frontier = [""]
    for depth in range(1, r + 1):
        nxt = []
        for w in frontier:
            for c in p.alphabet:
                cand = words.free_reduce(w + c)
                if any(check(cand + words.inverse(rep)) for rep in reps):
                    continue
                reps.append(cand)
                dist[cand] = depth
                nxt.append(cand)
                if len(dist) > budget:
                    raise BudgetExceededError("ball(%d)" % r, budget)
        frontier = nxt
    return BallIndex(r, dist)


def gamma_length(p: RelativePresentation, w: str, trivial=None, budget=None) -> int:
    """Distance from the identity in the ordinary Cayley graph."""
    if p.is_free_product and trivial is None:
        return len(words.normalize(p, w))
    nf = normal_form(p, w, trivial=trivial, budget=budget)
    return ball(p, len(words.normalize(p, w)), trivial, budget).dist[nf]


# ---------------------------------------------------------------------------
# coned-off graph


class ConedGraph:
    """The coned-off graph induced on the ball of a radius: generator edges
    plus an edge between any two distinct elements of a common left coset of
    a parabolic subgroup (cosets realized as cliques)."""

    def __init__(self, p, radius, trivial=None, budget=None):
        self.p = p
        index = ball(p, radius, trivial=trivial, budget=budget)
        self.index = index
        self.verts = sorted(index.dist, key=p.shortlex_key)
        self._id = {v: i for i, v in enumerate(self.verts)}
        nf = lambda w: normal_form(p, w, trivial, budget)
        self.adj = [[] for _ in self.verts]
        for i, v in enumerate(self.verts):
            for c in p.alphabet:
                u = nf(v + c)
                j = self._id.get(u)
                if j is not None and j != i:
                    self.adj[i].append(j)
        # left cosets of each parabolic: union-find over right multiplication
        # by the subgroup letters (both members stay in the same coset)
        parent = {}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for par in p.parabolics:
            for i in range(len(self.verts)):
                parent[(par.index, i)] = (par.index, i)
        for par in p.parabolics:
            for i, v in enumerate(self.verts):
                for c in par.letters:
                    j = self._id.get(nf(v + c))
                    if j is not None:
                        a, b = find((par.index, i)), find((par.index, j))
                        if a != b:
                            parent[a] = b
        cliques = {}
        for par in p.parabolics:
            for i in range(len(self.verts)):
                cliques.setdefault(find((par.index, i)), []).append(i)
        self.cliques = [sorted(members) for members in cliques.values() if len(members) > 1]
        self.vert_cliques = [[] for _ in self.verts]
        for ci, members in enumerate(self.cliques):
            for i in members:
                self.vert_cliques[i].append(ci)

    def vertex(self, w, trivial=None):
        nf = normal_form(self.p, w, trivial)
        return self._id.get(nf)

    def bfs(self, source: int):
        """Distances and deterministic parents from one vertex."""
        dist = [-1] * len(self.verts)
        parent = [-1] * len(self.verts)
        burst = [False] * len(self.cliques)
        dist[source] = 0
        queue = deque([source])
        while queue:
            i = queue.popleft()
            for j in self.adj[i]:
                if dist[j] < 0:
                    dist[j] = dist[i] + 1
                    parent[j] = i
                    queue.append(j)
            for ci in self.vert_cliques[i]:
                if burst[ci]:
                    continue
                burst[ci] = True
                for j in self.cliques[ci]:
                    if dist[j] < 0:
                        dist[j] = dist[i] + 1
                        parent[j] = i
                        queue.append(j)
        return dist, parent

    def path(self, parent, source, target):
        out = [target]
        while out[-1] != source:
            out.append(parent[out[-1]])
        out.reverse()
        return out


@lru_cache(maxsize=64)
def _coned_graph(p, radius, trivial=None, budget=None) -> ConedGraph:
    return ConedGraph(p, radius, trivial=trivial, budget=budget)


def relative_length(p: RelativePresentation, w: str, method="auto",
                    trivial=None, budget=None) -> int:
    """Exact distance from the identity in the coned-off graph.

    method="auto" uses the syllable count of the normal form on relator-free
    presentations (each hyperbolic letter is one edge, each parabolic
    syllable one coset edge; a free product admits no shortcut).
    method="bfs" searches the realized coned-off graph restricted to the
    ball of the normal form's length, which covers the straight path.
    """
    if method == "auto" and p.is_free_product and trivial is None:
        return words.decompose(p, w).relative_length
    nf = words.normalize(p, w)
    graph = _coned_graph(p, max(1, len(nf)), trivial, budget)
    src = graph.vertex("", trivial)
    tgt = graph.vertex(nf, trivial)
    dist, _ = graph.bfs(src)
    if dist[tgt] < 0:
        raise RelconjError("coned ball too small for %r" % w)
    return dist[tgt]


def is_relative_geodesic(p: RelativePresentation, w: str, method="auto",
                         trivial=None, budget=None) -> bool:
    """True iff the path labeled by w is a relative geodesic as written:
    every parabolic run is geodesic in its subgroup and the syllable count
    of w equals the relative distance between its endpoints."""
    oracles = oracles_for(p)
    sylls = words.raw_syllables(p, w)
    for s in sylls:
        if s.kind != HYPERBOLIC:
            if len(oracles[s.kind].geodesic_form(s.word)) != len(s.word):
                return False
    return len(sylls) == relative_length(p, w, method=method,
                                         trivial=trivial, budget=budget)


# ---------------------------------------------------------------------------
# conjugacy by exhaustion


def brute_conjugate(p: RelativePresentation, u: str, v: str, max_len: int,
                    trivial=None, budget=None):
    """Shortest g (shortlex ties) with g*u*g^-1 = v and |g| <= max_len."""
    index = ball(p, max_len, trivial=trivial, budget=budget)
    if p.is_free_product and trivial is None:
        target = words.normalize(p, v)
        for g in sorted(index.dist, key=p.shortlex_key):
            if words.normalize(p, g + u + words.inverse(g)) == target:
                return g
        return None
    check = triviality_test(p, trivial)
    for g in sorted(index.dist, key=p.shortlex_key):
        if check(g + u + words.inverse(g) + words.inverse(v)):
            return g
    return None


@lru_cache(maxsize=32)
def conjugacy_classes(p: RelativePresentation, radius: int, trivial=None,
                      budget=None) -> dict:
    """Partition of the ball of a radius into conjugacy classes by closing
    under single-generator conjugation inside the ball.

    Sound because every edge is a genuine conjugation.  Complete on free
    products: any conjugate pair in the ball is linked by peeling inverse
    end letters (length never grows) and rotating by first letters (length
    never grows), so the whole chain stays inside the ball.  Returns a map
    from canonical word to its class representative (shortlex least).
    """
    index = ball(p, radius, trivial=trivial, budget=budget)
    parent = {v: v for v in index.dist}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for v in index.dist:
        for c in p.alphabet:
            u = normal_form(p, c + v + words.inverse(c), trivial, budget)
            if u in parent:
                a, b = find(v), find(u)
                if a != b:
                    parent[a] = b
    groups = {}
    for v in index.dist:
        groups.setdefault(find(v), []).append(v)
    out = {}
    for members in groups.values():
        rep = min(members, key=p.shortlex_key)
        for m in members:
            out[m] = rep
    return out


# ---------------------------------------------------------------------------
# estimators


@dataclass(frozen=True)
class QuasiGeodesicParams:
    lam: Fraction
    eps: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lam", Fraction(self.lam))
        object.__setattr__(self, "eps", Fraction(self.eps))
        if self.lam < 1 or self.eps < 0:
            raise ValueError("need lambda >= 1 and epsilon >= 0")


def estimate_delta(p: RelativePresentation, r: int, gamma_radius=None,
                   trivial=None, budget=None) -> int:
    """Smallest integer d such that every canonical geodesic triangle with
    vertices of relative length <= r (and ordinary length <= gamma_radius)
    is d-thin in the coned-off graph.  A lower bound for the true constant;
    exhaustive within the stated window."""
    gamma_radius = 2 * r if gamma_radius is None else gamma_radius
    graph = _coned_graph(p, max(1, gamma_radius), trivial, budget)
    src = graph.vertex("", trivial)
    base_dist, _ = graph.bfs(src)
    vset = [i for i in range(len(graph.verts)) if 0 <= base_dist[i] <= r]
    all_dist = {}
    all_parent = {}
    for i in vset:
        all_dist[i], all_parent[i] = graph.bfs(i)
    # distances from arbitrary vertices are needed for thinness checks
    extra = {}

    def dist_from(x):
        if x in all_dist:
            return all_dist[x]
        if x not in extra:
            extra[x] = graph.bfs(x)[0]
        return extra[x]

    best = 0
    for ai in range(len(vset)):
        a = vset[ai]
        for bi in range(ai + 1, len(vset)):
            b = vset[bi]
            side_ab = graph.path(all_parent[a], a, b)
            for ci in range(bi + 1, len(vset)):
                c = vset[ci]
                side_bc = graph.path(all_parent[b], b, c)
                side_ac = graph.path(all_parent[a], a, c)
                for side, others in (
                    (side_ab, side_bc + side_ac),
                    (side_bc, side_ab + side_ac),
                    (side_ac, side_ab + side_bc),
                ):
                    other = set(others)
                    for x in side:
                        if x in other:
                            continue
                        dx = dist_from(x)
                        gap = min(dx[y] for y in other)
                        if gap > best:
                            best = gap
    return best


def _coset_key(p, prefix_nf, kind):
    """Canonical name of the left coset prefix * P_kind (free products:
    the normal form with its trailing run of that block stripped)."""
    w = prefix_nf
    i = len(w)
    while i > 0 and p.letter_kind.get(w[i - 1]) == kind:
        i -= 1
    return w[:i]


def _path_components(p, path_word, trivial=None):
    """Parabolic components of the path labeled by path_word from the
    identity: (kind, start, end, coset key) per maximal run."""
    out = []
    for s in words.raw_syllables(p, path_word):
        if s.kind == HYPERBOLIC:
            continue
        prefix = words.normalize(p, path_word[: s.start])
        out.append((s.kind, s.start, s.end, (s.kind, _coset_key(p, prefix, s.kind))))
    return out


def path_backtracks(p, path_word) -> bool:
    """True if the path leaves some parabolic coset and later re-enters it."""
    seen = set()
    for comp in _path_components(p, path_word):
        if comp[3] in seen:
            return True
        seen.add(comp[3])
    return False


def is_quasi_geodesic(p: RelativePresentation, w: str,
                      params: QuasiGeodesicParams) -> bool:
    """Check the relative quasi-geodesic inequality on every subpath."""
    n = len(w)
    for i in range(n):
        for j in range(i + 1, n + 1):
            seg = w[i:j]
            arc = words.raw_relative_length(p, seg)
            d = relative_length(p, seg)
            if arc > params.lam * d + params.eps:
                return False
    return True


def estimate_bcp(p: RelativePresentation, params: QuasiGeodesicParams,
                 r: int) -> int:
    """Largest ordinary length of an isolated parabolic component seen on a
    closed path formed by two distinct non-backtracking relative
    (lambda, eps)-quasi-geodesic paths of length <= r with common endpoints.
    Exhaustive within radius r; a lower bound for the true constant.
    Free-product presentations only."""
    if not p.is_free_product:
        raise OracleUnavailableError("component bound estimation needs a free product")
    paths = [""]
    frontier = [""]
    for _ in range(r):
        nxt = []
        for w in frontier:
            for c in p.alphabet:
                if w and w[-1] == words.inverse_letter(c):
                    continue
                nxt.append(w + c)
        paths += nxt
        frontier = nxt
    good = {}
    oracles = oracles_for(p)
    for w in paths:
        runs_geodesic = all(
            s.kind == HYPERBOLIC
            or len(oracles[s.kind].geodesic_form(s.word)) == len(s.word)
            for s in words.raw_syllables(p, w)
        )
        if not runs_geodesic:
            continue
        if path_backtracks(p, w) or not is_quasi_geodesic(p, w, params):
            continue
        good.setdefault(words.normalize(p, w), []).append(w)
    best = 0
    for group in good.values():
        for i, w1 in enumerate(group):
            for w2 in group[i + 1 :]:
                closed = w1 + words.inverse(w2)
                comps = _path_components(p, closed)
                counts = {}
                for comp in comps:
                    counts[comp[3]] = counts.get(comp[3], 0) + 1
                for kind, start, end, key in comps:
                    if counts[key] == 1:
                        best = max(best, end - start)
    return best


# ---------------------------------------------------------------------------
# ball cache files

_BALL_MAGIC = b"RCB1"


def save_ball(path, p: RelativePresentation, index: BallIndex):
    with open(path, "wb") as fh:
        fh.write(_BALL_MAGIC)
        phash = presentation_hash(p).encode()
        fh.write(struct.pack("<HII", len(phash), index.radius, len(index.dist)))
        fh.write(phash)
        for w, d in index.dist.items():
            data = w.encode()
            fh.write(struct.pack("<HI", len(data), d))
            fh.write(data)


def load_ball(path, p: RelativePresentation) -> BallIndex:
    with open(path, "rb") as fh:
        if fh.read(4) != _BALL_MAGIC:
            raise RelconjError("%s is not a ball cache" % path)
        hlen, radius, count = struct.unpack("<HII", fh.read(10))
        phash = fh.read(hlen).decode()
        if phash != presentation_hash(p):
            raise RelconjError("ball cache was built for a different presentation")
        dist = {}
        for _ in range(count):
            wlen, d = struct.unpack("<HI", fh.read(6))
            dist[fh.read(wlen).decode()] = d
    return BallIndex(radius, dist)
