"""Polar graph families, strongly regular verification, spectra, cliques.

Three builders: collinearity graphs of rank >= 2 polar spaces, affine polar
graphs on the full vector space (x ~ y iff Q(x - y) = 0), and the rank-2
hermitian graph on the isotropic points of GF(q)^4 for square q.
Adjacency is a dense bitset row per vertex, so common-neighbour counting is
a word-parallel AND plus popcount.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import isqrt

from . import forms, polarspace
from .gf import FieldContext
from .polarspace import PolarSpace


class GraphError(Exception):
    pass


class RankTooLow(GraphError):
    pass


class NotRegular(GraphError):
    pass


class NotStronglyRegular(GraphError):
    pass


class Imprimitive(GraphError):
    pass


class IrrationalEigenvalues(GraphError):
    pass


class FewerThanTwoCliques(GraphError):
    pass


@dataclass(frozen=True)
class SrgParams:
    v: int
    k: int
    lam: int
    mu: int

    def as_tuple(self):
        return (self.v, self.k, self.lam, self.mu)


@dataclass(frozen=True)
class SpectrumInfo:
    theta1: int
    theta2: int
    m1: int
    m2: int


@dataclass(frozen=True)
class CliqueInfo:
    vertices: tuple[int, ...]
    is_delsarte: bool
    nexus: int | None

    def __len__(self):
        return len(self.vertices)

    def bits(self) -> int:
        out = 0
        for v in self.vertices:
            out |= 1 << v
        return out


class PolarGraph:
    """A vertex-indexed graph with dense bitset adjacency and provenance."""

    def __init__(self, vertices, adj: list[int], provenance: dict, *,
                 space: PolarSpace | None = None, ctx: FieldContext | None = None):
        self.vertices = vertices
        self.adj = adj
        self.provenance = provenance
        self.space = space
        self.ctx = ctx
        self.n = len(vertices)

    def __repr__(self):
        fam = self.provenance.get("family", "?")
        return f"PolarGraph({fam}, v={self.n})"

    def are_adjacent(self, i: int, j: int) -> bool:
        return bool(self.adj[i] >> j & 1)

    def degree(self, i: int) -> int:
        return self.adj[i].bit_count()

    def neighbours(self, i: int) -> list[int]:
        return _bit_indices(self.adj[i])

    def edges(self):
        for i in range(self.n):
            bits = self.adj[i] >> (i + 1) << (i + 1)
            for j in _bit_indices(bits):
                yield (i, j)


def _bit_indices(bits: int) -> list[int]:
    out = []
    while bits:
        lsb = bits & -bits
        out.append(lsb.bit_length() - 1)
        bits ^= lsb
    return out


def graph_from_edges(n: int, edges, provenance=None) -> PolarGraph:
    """Generic constructor, used for toy and test graphs."""
    adj = [0] * n
    for i, j in edges:
        if i == j:
            raise GraphError("loops are not allowed")
        adj[i] |= 1 << j
        adj[j] |= 1 << i
    return PolarGraph(list(range(n)), adj, provenance or {"family": "custom"})


# -- builders -------------------------------------------------------------------

def collinearity_graph(space: PolarSpace) -> PolarGraph:
    """Vertices are the points; edges join pairs lying in a common line."""
    if space.rank() < 2:
        raise RankTooLow(
            f"rank {space.rank()} polar space has no collinear point pairs")
    pts = space.points()
    adj = list(space.collinearity_bits())
    prov = {
        "family": space.family,
        "kind": "collinearity",
        "q": space.ctx.q,
        "p": space.ctx.p,
        "k": space.ctx.k,
        "dim": space.dim,
        "rank": space.rank(),
        "modulus": list(space.ctx.modulus),
        "v": len(pts),
    }
    return PolarGraph(pts, adj, prov, space=space, ctx=space.ctx)


def affine_polar_graph(m: int, epsilon: int, ctx: FieldContext,
                       cache_dir=None) -> PolarGraph:
    """Graph on all q^(2m) vectors; x ~ y iff x != y and Q(x - y) = 0."""
    if m < 1:
        raise GraphError("m must be >= 1")
    if epsilon not in (1, -1):
        raise GraphError("epsilon must be +1 or -1")
    family = "vo+" if epsilon == 1 else "vo-"
    form = forms.standard_form("o+" if epsilon == 1 else "o-", 2 * m, ctx)
    space = polarspace.polar_space(form, cache_dir=cache_dir)
    d = 2 * m
    q = ctx.q
    vecs = [tuple(c) for c in product(range(q), repeat=d)]
    index = {v: i for i, v in enumerate(vecs)}
    # Cayley graph over (V, +): connection set = nonzero singular vectors
    diffs = [v for v in vecs if any(v) and forms.singular_i(form, v)]
    add = ctx.add_i
    adj = [0] * len(vecs)
    for i, x in enumerate(vecs):
        row = 0
        for dv in diffs:
            y = tuple(add(a, b) for a, b in zip(x, dv))
            row |= 1 << index[y]
        adj[i] = row
    prov = {
        "family": family,
        "kind": "affine",
        "q": q,
        "p": ctx.p,
        "k": ctx.k,
        "dim": d,
        "m": m,
        "epsilon": epsilon,
        "modulus": list(ctx.modulus),
        "v": len(vecs),
    }
    g = PolarGraph(
        [tuple(ctx.element(c) for c in v) for v in vecs], adj, prov,
        space=space, ctx=ctx)
    g.vec_index = index
    return g


def unitary_graph(ctx: FieldContext, cache_dir=None) -> PolarGraph:
    """The rank-2 hermitian graph on the isotropic points of GF(q)^4, q square."""
    ctx.sqrt_q  # raises OddExtensionDegree when q is not a square
    form = forms.standard_form("u", 4, ctx)
    space = polarspace.polar_space(form, cache_dir=cache_dir)
    g = collinearity_graph(space)
    g.provenance = dict(g.provenance, kind="unitary")
    return g


# -- strongly regular machinery ---------------------------------------------------

def _connected(adj: list[int], n: int) -> bool:
    if n == 0:
        return True
    seen = 1
    frontier = 1
    while frontier:
        nxt = 0
        for i in _bit_indices(frontier):
            nxt |= adj[i]
        frontier = nxt & ~seen
        seen |= frontier
    return seen == (1 << n) - 1


def srg_check(g: PolarGraph) -> SrgParams:
    """Exhaustively verify strong regularity; returns the parameter tuple.

    Checks every vertex pair; raises NotRegular / NotStronglyRegular /
    Imprimitive (disconnected graph or complement).
    """
    n, adj = g.n, g.adj
    if n == 0:
        raise GraphError("empty graph")
    k = adj[0].bit_count()
    for i in range(1, n):
        if adj[i].bit_count() != k:
            raise NotRegular(f"vertex {i} has degree {adj[i].bit_count()} != {k}")
    if not _connected(adj, n):
        raise Imprimitive("graph is disconnected")
    full = (1 << n) - 1
    comp = [full ^ adj[i] ^ (1 << i) for i in range(n)]
    if not _connected(comp, n):
        raise Imprimitive("complement is disconnected")
    lam = mu = None
    for i in range(n):
        row = adj[i]
        for j in range(i + 1, n):
            c = (row & adj[j]).bit_count()
            if row >> j & 1:
                if lam is None:
                    lam = c
                elif c != lam:
                    raise NotStronglyRegular(
                        f"adjacent pair ({i},{j}) has {c} common neighbours, not {lam}")
            else:
                if mu is None:
                    mu = c
                elif c != mu:
                    raise NotStronglyRegular(
                        f"non-adjacent pair ({i},{j}) has {c} common neighbours, not {mu}")
    if lam is None or mu is None:
        raise Imprimitive("graph or complement is complete")
    return SrgParams(n, k, lam, mu)


def spectrum(params: SrgParams) -> SpectrumInfo:
    """Non-principal eigenvalues and multiplicities from the parameters.

    theta1 > 0 > theta2 are the roots of x^2 - (lam - mu) x - (k - mu);
    multiplicities are checked to be integers.
    """
    v, k, lam, mu = params.as_tuple()
    disc = (lam - mu) ** 2 + 4 * (k - mu)
    s = isqrt(disc)
    if s * s != disc:
        raise IrrationalEigenvalues(f"discriminant {disc} is not a square")
    theta1 = ((lam - mu) + s) // 2
    theta2 = ((lam - mu) - s) // 2
    if not (k > theta1 > 0 > theta2):
        raise GraphError(f"parameters {params} are not primitive")
    m1 = Fraction((v - 1) * (-theta2) - k, theta1 - theta2)
    m2 = Fraction((v - 1) * theta1 + k, theta1 - theta2)
    if m1.denominator != 1 or m2.denominator != 1:
        raise GraphError(f"non-integral multiplicities for {params}")
    return SpectrumInfo(theta1, theta2, int(m1), int(m2))


def delsarte_bound(params: SrgParams, spec: SpectrumInfo) -> Fraction:
    return 1 + Fraction(params.k, -spec.theta2)


def cliques_of_size(g: PolarGraph, s: int) -> list[int]:
    """Bitsets of all s-cliques, in increasing bitset order."""
    if s < 1:
        return []
    if s == 1:
        return [1 << i for i in range(g.n)]
    adj = g.adj
    out = []

    def grow(bits: int, size: int, cand: int, low: int):
        if size == s:
            out.append(bits)
            return
        # candidates above `low` keep the search canonical and duplicate-free
        rest = cand >> low << low
        while rest:
            lsb = rest & -rest
            v = lsb.bit_length() - 1
            rest ^= lsb
            if size + 1 + (cand & adj[v] >> (v + 1) << (v + 1)).bit_count() >= s:
                grow(bits | lsb, size + 1, cand & adj[v], v + 1)

    grow(0, 0, (1 << g.n) - 1, 0)
    return out


def delsarte_cliques(g: PolarGraph, params: SrgParams | None = None,
                     spec: SpectrumInfo | None = None) -> list[CliqueInfo]:
    """All cliques meeting the Delsarte-Hoffman bound 1 + k/(-theta2).

    Each is checked to be regular with nexus mu/(-theta2).  Empty when the
    bound is not an integer (then no clique can meet it).
    """
    params = params or srg_check(g)
    spec = spec or spectrum(params)
    bound = delsarte_bound(params, spec)
    if bound.denominator != 1:
        return []
    s = int(bound)
    nexus = Fraction(params.mu, -spec.theta2)
    out = []
    for bits in cliques_of_size(g, s):
        members = _bit_indices(bits)
        ok = nexus.denominator == 1 and all(
            (g.adj[u] & bits).bit_count() == nexus
            for u in range(g.n) if not bits >> u & 1)
        out.append(CliqueInfo(tuple(members), ok, int(nexus) if ok else None))
    out.sort(key=lambda c: c.vertices)
    return out


def max_intersecting_delsarte_pair(g: PolarGraph) -> tuple[CliqueInfo, CliqueInfo]:
    """A pair of distinct Delsarte cliques with the largest intersection.

    Ties break toward the canonically least pair of vertex tuples.
    """
    cliques = [c for c in delsarte_cliques(g) if c.is_delsarte]
    if len(cliques) < 2:
        raise FewerThanTwoCliques(f"found {len(cliques)} Delsarte cliques")
    best = None
    best_size = -1
    for i in range(len(cliques)):
        bi = cliques[i].bits()
        for j in range(i + 1, len(cliques)):
            inter = (bi & cliques[j].bits()).bit_count()
            if inter > best_size:
                best_size = inter
                best = (cliques[i], cliques[j])
    return best


def maximal_cliques(g: PolarGraph) -> list[tuple[int, ...]]:
    """All maximal cliques (Bron-Kerbosch with pivoting), sorted."""
    adj = g.adj
    out = []

    def bk(r: int, p: int, x: int):
        if p == 0 and x == 0:
            out.append(tuple(_bit_indices(r)))
            return
        pivot_pool = p | x
        pivot = (pivot_pool & -pivot_pool).bit_length() - 1
        best = -1
        for u in _bit_indices(pivot_pool):
            c = (p & adj[u]).bit_count()
            if c > best:
                best, pivot = c, u
        for v in _bit_indices(p & ~adj[pivot]):
            vb = 1 << v
            bk(r | vb, p & adj[v], x & adj[v])
            p &= ~vb
            x |= vb

    bk(0, (1 << g.n) - 1, 0)
    out.sort()
    return out


def charpoly_root_check(g: PolarGraph, theta: int) -> bool:
    """det(A - theta I) == 0 by exact fraction-free (Bareiss) elimination."""
    n = g.n
    m = [[(1 if g.adj[i] >> j & 1 else 0) - (theta if i == j else 0)
          for j in range(n)] for i in range(n)]
    prev = 1
    for col in range(n - 1):
        if m[col][col] == 0:
            swap = next((r for r in range(col + 1, n) if m[r][col]), None)
            if swap is None:
                return True  # a zero column: determinant vanishes
            # row swap only flips the sign, which zeroness ignores
            m[col], m[swap] = m[swap], m[col]
        for r in range(col + 1, n):
            for c in range(col + 1, n):
                m[r][c] = (m[r][c] * m[col][col] - m[r][col] * m[col][c]) // prev
            m[r][col] = 0
        prev = m[col][col]
    return m[n - 1][n - 1] == 0
