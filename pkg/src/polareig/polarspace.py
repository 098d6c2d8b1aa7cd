"""Embedded polar spaces: points, singular subspaces, rank and order.

Enumeration is breadth-first closure: start from the singular projective
points, extend every d-dimensional singular subspace by every point
collinear with all of it, canonicalise to reduced row-echelon form, and
deduplicate.  A span is totally singular exactly when its basis vectors are
singular and pairwise orthogonal, so collinearity reduces to one pairing
test per point pair; those tests are cached as bitsets and shared with the
collinearity-graph builder.

All output lists are sorted by the canonical subspace key, making every
downstream computation reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from . import cache as _cache
from . import forms, linalg
from .forms import Form


class PolarSpaceError(Exception):
    pass


class DimensionOutOfRange(PolarSpaceError):
    pass


class NotSingular(PolarSpaceError):
    pass


class WrongDimension(PolarSpaceError):
    pass


class NotPairwiseCollinear(PolarSpaceError):
    pass


class OrderNotWellDefined(PolarSpaceError):
    pass


@dataclass(frozen=True)
class ProjectivePoint:
    """A singular projective point, normalised so its first nonzero coordinate is 1."""

    rep: tuple
    index: int

    def key(self) -> tuple[int, ...]:
        return linalg.vec_key(self.rep)


@dataclass(frozen=True)
class SingularSubspace:
    """A totally singular subspace in canonical reduced-echelon form."""

    basis: tuple
    key: tuple[int, ...]
    point_bits: int
    proj_dim: int

    def __len__(self):
        return len(self.basis)

    def point_indices(self) -> tuple[int, ...]:
        out, bits = [], self.point_bits
        while bits:
            lsb = bits & -bits
            out.append(lsb.bit_length() - 1)
            bits ^= lsb
        return tuple(out)


@dataclass(frozen=True)
class PolarSpaceDescriptor:
    family: str
    q: int
    rank: int
    order: tuple[int, int]
    e: Fraction
    point_count: int
    maximal_count: int


# order parameter t and counting constant e per family, from the classical
# classification of embedded polar spaces of rank >= 2
def _expected_t(family: str, q: int, dim: int, sqrt_q: int | None) -> int:
    if family == "sp" or family == "o":
        return q
    if family == "o+":
        return 1
    if family == "o-":
        return q * q
    # unitary: t = sqrt(q) in even dimension, q*sqrt(q) in odd
    return sqrt_q if dim % 2 == 0 else q * sqrt_q


def _expected_e(family: str, dim: int) -> Fraction:
    fixed = {"sp": Fraction(1), "o": Fraction(1), "o+": Fraction(0), "o-": Fraction(2)}
    if family in fixed:
        return fixed[family]
    return Fraction(1, 2) if dim % 2 == 0 else Fraction(3, 2)


class PolarSpace:
    """The polar space of a standard form, with cached enumerations."""

    def __init__(self, form: Form, cache_dir=None):
        self.form = form
        self.ctx = form.ctx
        self.family = form.family
        self.dim = form.dim
        self._cache_dir = _cache.resolve_cache_dir(cache_dir)
        self._points: list[ProjectivePoint] | None = None
        self._point_lookup: dict[tuple[int, ...], int] = {}
        self._collinearity: list[int] | None = None
        self._levels: dict[int, list[SingularSubspace]] = {}
        self._rank: int | None = None

    # -- points ---------------------------------------------------------------

    def points(self) -> list[ProjectivePoint]:
        if self._points is None:
            ctx, d = self.ctx, self.dim
            reps = []
            for lead in range(d):
                for tail in product(range(ctx.q), repeat=d - lead - 1):
                    vec = (0,) * lead + (1,) + tail
                    if forms.singular_i(self.form, vec):
                        reps.append(vec)
            reps.sort()
            pts = []
            for i, vec in enumerate(reps):
                rep = tuple(ctx.element(c) for c in vec)
                pts.append(ProjectivePoint(rep, i))
                self._point_lookup[vec] = i
            self._points = pts
        return self._points

    def point_count(self) -> int:
        return len(self.points())

    def point_for_vector(self, v) -> ProjectivePoint:
        """The point spanned by a nonzero singular vector."""
        rep = linalg.normalize_projective(v)
        key = linalg.vec_key(rep)
        self.points()
        if key not in self._point_lookup:
            raise NotSingular(f"{key} is not a singular point of {self.form!r}")
        return self._points[self._point_lookup[key]]

    def collinearity_bits(self) -> list[int]:
        """bitset per point: indices of the distinct points collinear with it."""
        if self._collinearity is None:
            pts = self.points()
            keys = [p.key() for p in pts]
            n = len(pts)
            rows = [0] * n
            ctx = self.ctx
            gram = forms.bilinear_matrix_i(self.form)
            conj = self.form.kind == "hermitian"
            d = self.dim
            # B(u, w) = u . (M sigma(w)): transform each point once, then the
            # pair scan is a short dot product over u's support
            transformed = []
            for w in keys:
                wv = tuple(ctx.frob_i(a) for a in w) if conj else w
                col = []
                for i in range(d):
                    acc = 0
                    row = gram[i]
                    for l in range(d):
                        g = row[l]
                        if g and wv[l]:
                            acc = ctx.add_i(acc, ctx.mul_i(g, wv[l]))
                    col.append(acc)
                transformed.append(col)
            supports = [[(l, v) for l, v in enumerate(w) if v] for w in keys]
            mul_t, add_t = ctx._mul, ctx._add
            for i in range(n):
                sup = supports[i]
                for j in range(i + 1, n):
                    t = transformed[j]
                    acc = 0
                    if mul_t is not None:
                        for l, v in sup:
                            tv = t[l]
                            if tv:
                                acc = add_t[acc][mul_t[v][tv]]
                    else:
                        for l, v in sup:
                            tv = t[l]
                            if tv:
                                acc = ctx.add_i(acc, ctx.mul_i(v, tv))
                    if acc == 0:
                        rows[i] |= 1 << j
                        rows[j] |= 1 << i
            self._collinearity = rows
        return self._collinearity

    # -- singular subspaces -----------------------------------------------------

    def _span_point_bits(self, basis) -> int:
        # For a reduced-echelon basis, combinations whose first nonzero
        # coefficient is 1 are already canonical point representatives.
        ctx, d = self.ctx, self.dim
        rows = [linalg.vec_key(r) for r in basis]
        add, mul = ctx.add_i, ctx.mul_i
        bits = 0
        r = len(rows)
        for lead in range(r):
            for tail in product(range(ctx.q), repeat=r - lead - 1):
                vec = list(rows[lead])
                for c, row in zip(tail, rows[lead + 1:]):
                    if c:
                        for i in range(d):
                            if row[i]:
                                vec[i] = add(vec[i], mul(c, row[i]))
                bits |= 1 << self._point_lookup[tuple(vec)]
        return bits

    def _subspace_from_rows(self, rows) -> SingularSubspace:
        self.points()
        basis = linalg.rref(rows)
        key = linalg.basis_key(basis)
        return SingularSubspace(basis, key, self._span_point_bits(basis),
                                len(basis) - 1)

    def _level_cache_io(self, d: int, level: list[SingularSubspace] | None):
        if self._cache_dir is None:
            return None
        name = _cache.subspace_cache_name(self.family, self.dim, self.ctx.p,
                                          self.ctx.k, d)
        path = self._cache_dir / name
        header = {
            "family": self.family,
            "dim": self.dim,
            "p": self.ctx.p,
            "k": self.ctx.k,
            "modulus": list(self.ctx.modulus),
            "level": d,
        }
        if level is None:
            entries = _cache.read_jsonl(path, header)
            if entries is None:
                return None
            out = []
            for rows in entries:
                basis = tuple(tuple(self.ctx.element(c) for c in row) for row in rows)
                out.append(self._subspace_from_rows(basis))
            return out
        _cache.write_jsonl(path, header,
                           [[list(row) for row in zip(*[iter(s.key)] * self.dim)]
                            for s in level])
        return None

    def subspaces(self, d: int) -> list[SingularSubspace]:
        """All totally singular subspaces of projective dimension d, sorted."""
        if d < 0 or d >= self.dim:
            raise DimensionOutOfRange(f"projective dimension {d} out of range")
        if d in self._levels:
            return self._levels[d]
        if d > 0:
            # ensure the previous level exists first
            prev = self.subspaces(d - 1)
        cached = self._level_cache_io(d, None)
        if cached is not None:
            self._levels[d] = cached
            return cached
        if d == 0:
            level = [self._subspace_from_rows((p.rep,)) for p in self.points()]
            level.sort(key=lambda s: s.key)
        else:
            level = self._extend_level(prev)
        self._levels[d] = level
        self._level_cache_io(d, level)
        if self._rank is None and not level:
            self._rank = d
        return level

    def _extend_level(self, prev: list[SingularSubspace]) -> list[SingularSubspace]:
        pts = self.points()
        collin = self.collinearity_bits()
        seen: dict[tuple[int, ...], tuple] = {}
        for sub in prev:
            cand = -1
            for pi in sub.point_indices():
                cand &= collin[pi]
            bits = cand & ~sub.point_bits
            while bits:
                lsb = bits & -bits
                pi = lsb.bit_length() - 1
                bits ^= lsb
                basis = linalg.rref(sub.basis + (pts[pi].rep,))
                seen.setdefault(linalg.basis_key(basis), basis)
        return [self._subspace_from_rows(seen[k]) for k in sorted(seen)]

    def rank(self) -> int:
        """Rank n: maximal singular subspaces have projective dimension n-1."""
        if self._rank is None:
            d = 0
            while True:
                if not self.subspaces(d):
                    self._rank = d
                    break
                d += 1
        return self._rank

    def maximals(self) -> list[SingularSubspace]:
        return self.subspaces(self.rank() - 1)

    # -- order, descriptor -------------------------------------------------------

    def descriptor(self) -> PolarSpaceDescriptor:
        n = self.rank()
        ctx = self.ctx
        if n < 1:
            raise OrderNotWellDefined("space has no points")
        if n == 1:
            # no (n-2)-dimensional singular subspaces exist; order degenerates
            t = 0
        else:
            counts = {
                len(self.maximals_containing(L)) for L in self.subspaces(n - 2)
            }
            if len(counts) != 1:
                raise OrderNotWellDefined(f"t+1 takes several values: {sorted(counts)}")
            t = counts.pop() - 1
            if t < 1:
                raise OrderNotWellDefined(f"t = {t} is not positive")
            sqrt_q = ctx.p ** (ctx.k // 2) if ctx.k % 2 == 0 else None
            expected = _expected_t(self.family, ctx.q, self.dim, sqrt_q)
            if t != expected:
                raise OrderNotWellDefined(
                    f"computed t = {t} but the {self.family} family requires {expected}")
        return PolarSpaceDescriptor(
            family=self.family,
            q=ctx.q,
            rank=n,
            order=(ctx.q, t),
            e=_expected_e(self.family, self.dim),
            point_count=self.point_count(),
            maximal_count=len(self.maximals()),
        )

    # -- the building blocks of the optimal eigenfunctions -------------------------

    def maximals_containing(self, L: SingularSubspace) -> list[SingularSubspace]:
        """All maximal singular subspaces strictly containing L, sorted."""
        if not forms.is_totally_singular(self.form, L.basis):
            raise NotSingular("L is not totally singular")
        n = self.rank()
        if L.proj_dim >= n - 1:
            return []
        return [M for M in self.maximals()
                if M.point_bits & L.point_bits == L.point_bits]

    def difference_pairs(self, L: SingularSubspace):
        """Unordered pairs {M minus L, N minus L} over distinct maximals through L.

        Requires proj_dim(L) = n-2; yields choose(t+1, 2) pairs of point-index
        tuples in canonical order.
        """
        n = self.rank()
        if L.proj_dim != n - 2:
            raise WrongDimension(
                f"need projective dimension {n - 2}, got {L.proj_dim}")
        sigma = self.maximals_containing(L)
        pairs = []
        for i in range(len(sigma)):
            for j in range(i + 1, len(sigma)):
                a = _bits_to_tuple(sigma[i].point_bits & ~L.point_bits)
                b = _bits_to_tuple(sigma[j].point_bits & ~L.point_bits)
                pairs.append((a, b) if a <= b else (b, a))
        pairs.sort()
        return pairs

    def span_closure(self, *point_groups) -> SingularSubspace:
        """Smallest singular subspace containing the given points.

        Raises NotPairwiseCollinear when the linear span is not totally
        singular.
        """
        rows = []
        for group in point_groups:
            if isinstance(group, ProjectivePoint):
                group = [group]
            for p in group:
                rows.append(p.rep)
        if not rows:
            raise PolarSpaceError("span of nothing")
        basis = linalg.rref(rows)
        if not forms.is_totally_singular(self.form, basis):
            raise NotPairwiseCollinear("the span is not totally singular")
        return self._subspace_from_rows(basis)

    def subspace_for_basis(self, rows) -> SingularSubspace:
        basis = linalg.rref(rows)
        if not forms.is_totally_singular(self.form, basis):
            raise NotSingular("basis does not span a totally singular subspace")
        return self._subspace_from_rows(basis)


def _bits_to_tuple(bits: int) -> tuple[int, ...]:
    out = []
    while bits:
        lsb = bits & -bits
        out.append(lsb.bit_length() - 1)
        bits ^= lsb
    return tuple(out)


@lru_cache(maxsize=None)
def _space_cached(form: Form, cache_dir: str | None) -> PolarSpace:
    return PolarSpace(form, cache_dir=cache_dir)


def polar_space(form: Form, cache_dir=None) -> PolarSpace:
    """Shared PolarSpace instance for a form (enumerations are reused).

    The cache directory (argument or POLAR_EIG_CACHE) is resolved before
    keying, so instances never leak across different cache settings.
    """
    resolved = _cache.resolve_cache_dir(cache_dir)
    return _space_cached(form, str(resolved) if resolved is not None else None)


# Thin operation-style wrappers.

def points(form: Form) -> list[ProjectivePoint]:
    return polar_space(form).points()


def singular_subspaces(form: Form, d: int) -> list[SingularSubspace]:
    return polar_space(form).subspaces(d)


def rank_and_order(form: Form) -> PolarSpaceDescriptor:
    return polar_space(form).descriptor()
