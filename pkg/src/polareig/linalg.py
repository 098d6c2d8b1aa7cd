"""Small exact linear algebra over GF(q).

Vectors are tuples of :class:`polareig.gf.FieldElement`.  Subspaces are
represented by their reduced row-echelon basis, which is the unique
canonical representative used for hashing and deterministic sorting.
"""

from __future__ import annotations

from itertools import product

from .gf import FieldContext, FieldElement


def zero_vector(ctx: FieldContext, dim: int) -> tuple[FieldElement, ...]:
    z = ctx.zero
    return (z,) * dim


def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, v):
    return tuple(c * a for a in v)


def vec_is_zero(v) -> bool:
    return all(a.is_zero() for a in v)


def vec_key(v) -> tuple[int, ...]:
    return tuple(a.index for a in v)


def rref(rows) -> tuple[tuple[FieldElement, ...], ...]:
    """Reduced row-echelon form; zero rows dropped, pivots 1, unique."""
    work = [list(r) for r in rows]
    if not work:
        return ()
    dim = len(work[0])
    out: list[list[FieldElement]] = []
    pivot_cols: list[int] = []
    for col in range(dim):
        pivot_row = None
        for r in work:
            if not r[col].is_zero():
                pivot_row = r
                break
        if pivot_row is None:
            continue
        work.remove(pivot_row)
        inv = pivot_row[col] ** (-1)
        pivot_row = [inv * a for a in pivot_row]
        for r in work:
            c = r[col]
            if not c.is_zero():
                for j in range(col, dim):
                    r[j] = r[j] - c * pivot_row[j]
        for r in out:
            c = r[col]
            if not c.is_zero():
                for j in range(col, dim):
                    r[j] = r[j] - c * pivot_row[j]
        out.append(pivot_row)
        pivot_cols.append(col)
        if not work:
            break
    order = sorted(range(len(out)), key=lambda i: pivot_cols[i])
    return tuple(tuple(out[i]) for i in order)


def rank(rows) -> int:
    return len(rref(rows))


def basis_key(basis) -> tuple[int, ...]:
    """Flattened canonical key of an rref basis (used for sorting/dedup)."""
    return tuple(a.index for row in basis for a in row)


def in_span(basis, v) -> bool:
    """Membership test against an rref basis."""
    v = list(v)
    for row in basis:
        col = next(i for i, a in enumerate(row) if not a.is_zero())
        c = v[col]
        if not c.is_zero():
            for j in range(len(v)):
                v[j] = v[j] - c * row[j]
    return all(a.is_zero() for a in v)


def null_space(rows, ctx: FieldContext, dim: int):
    """rref basis of {x : M x = 0} for the matrix with the given rows."""
    reduced = rref(rows)
    pivots = [next(i for i, a in enumerate(r) if not a.is_zero()) for r in reduced]
    free = [c for c in range(dim) if c not in pivots]
    basis = []
    one, zero = ctx.one, ctx.zero
    for f in free:
        v = [zero] * dim
        v[f] = one
        for r, pc in zip(reduced, pivots):
            v[pc] = -r[f]
        basis.append(tuple(v))
    return rref(basis)


def row_space_intersection(a_basis, b_basis, ctx: FieldContext, dim: int):
    """rref basis of rowspace(A) ∩ rowspace(B).

    Uses perp-perp under the standard dot product, which is nondegenerate.
    """
    na = null_space(a_basis, ctx, dim)
    nb = null_space(b_basis, ctx, dim)
    return null_space(tuple(na) + tuple(nb), ctx, dim)


def span_vectors(basis, ctx: FieldContext, dim: int):
    """Every vector in the span (including zero), deterministic order."""
    if not basis:
        return [zero_vector(ctx, dim)]
    elems = ctx.elements()
    out = []
    for coeffs in product(elems, repeat=len(basis)):
        v = zero_vector(ctx, dim)
        for c, row in zip(coeffs, basis):
            if not c.is_zero():
                v = vec_add(v, vec_scale(c, row))
        out.append(v)
    out.sort(key=vec_key)
    return out


def normalize_projective(v):
    """Scale so the first nonzero coordinate is 1; unique point representative."""
    for a in v:
        if not a.is_zero():
            inv = a ** (-1)
            return tuple(inv * b for b in v)
    raise ValueError("zero vector has no projective representative")


def projective_reps(basis, ctx: FieldContext, dim: int):
    """Canonical representatives of the projective points in a span."""
    seen = set()
    out = []
    for v in span_vectors(basis, ctx, dim):
        if vec_is_zero(v):
            continue
        r = normalize_projective(v)
        k = vec_key(r)
        if k not in seen:
            seen.add(k)
            out.append(r)
    out.sort(key=vec_key)
    return out
