"""Canonical sesquilinear and quadratic forms over GF(q).

Quadratic forms are stored as upper-triangular coefficient matrices
(Q(x) = sum over i <= j of c_ij x_i x_j), which keeps characteristic 2
uniform: the polarisation B(x, y) = Q(x+y) - Q(x) - Q(y) is always the
bilinear form with matrix C + C^T.  Symplectic and hermitian forms carry a
Gram matrix; the hermitian pairing conjugates its second argument by
x -> x^sqrt(q).
"""

from __future__ import annotations

from dataclasses import dataclass

from .gf import FieldContext, FieldElement
from . import linalg


FAMILIES = ("sp", "o+", "o", "o-", "u")


class FormError(Exception):
    pass


class KindMismatch(FormError):
    pass


class DimMismatch(FormError):
    pass


class BadDimensionParity(FormError):
    pass


class ParabolicEvenCharacteristic(FormError):
    pass


@dataclass(frozen=True)
class Form:
    """A nondegenerate form of one of the Table-style families.

    ``matrix`` holds canonical element indices: the upper-triangular
    coefficient matrix for quadratic kinds, the Gram matrix otherwise.
    ``epsilon`` is +1 (hyperbolic), -1 (elliptic) or 0 (parabolic) for
    quadratic kinds and None otherwise.
    """

    kind: str
    family: str
    dim: int
    epsilon: int | None
    ctx: FieldContext
    matrix: tuple[tuple[int, ...], ...]

    def __repr__(self):
        return f"Form({self.family}, dim={self.dim}, {self.ctx!r})"


def _empty(dim):
    return [[0] * dim for _ in range(dim)]


def standard_form(family: str, dim: int, ctx: FieldContext) -> Form:
    """The canonical representative of the family on GF(q)^dim.

    sp: B(x,y) = sum x_{2i} y_{2i+1} - x_{2i+1} y_{2i}  (dim even)
    o+: Q(x) = sum x_{2i} x_{2i+1}                      (dim even)
    o : Q(x) = x_0^2 + sum x_{2i-1} x_{2i}              (dim odd, odd q)
    o-: o+ on the first dim-2 coordinates plus an anisotropic tail
        t^2 + a t b with (a, b) the least pair making it irreducible
    u : H(u,w) = sum u_i w_i^sqrt(q)                    (square q)
    """
    if family not in FAMILIES:
        raise FormError(f"unknown family {family!r}")
    if dim < 2:
        raise DimMismatch("forms need dimension >= 2")
    m = _empty(dim)
    one = 1
    if family == "sp":
        if dim % 2:
            raise BadDimensionParity("symplectic forms need even dimension")
        minus_one = ctx.neg_i(one)
        for i in range(0, dim, 2):
            m[i][i + 1] = one
            m[i + 1][i] = minus_one
        return Form("symplectic", family, dim, None, ctx, tuple(map(tuple, m)))
    if family == "u":
        ctx.sqrt_q  # raises OddExtensionDegree unless q is a square
        for i in range(dim):
            m[i][i] = one
        return Form("hermitian", family, dim, None, ctx, tuple(map(tuple, m)))
    if family == "o+":
        if dim % 2:
            raise BadDimensionParity("hyperbolic forms need even dimension")
        for i in range(0, dim, 2):
            m[i][i + 1] = one
        return Form("quadratic", family, dim, 1, ctx, tuple(map(tuple, m)))
    if family == "o":
        if dim % 2 == 0:
            raise BadDimensionParity("parabolic forms need odd dimension")
        if ctx.p == 2:
            raise ParabolicEvenCharacteristic(
                "over even q the parabolic space duplicates the symplectic one; "
                "use family 'sp' in dimension dim-1")
        m[0][0] = one
        for i in range(1, dim, 2):
            m[i][i + 1] = one
        return Form("quadratic", family, dim, 0, ctx, tuple(map(tuple, m)))
    # family == "o-"
    if dim % 2:
        raise BadDimensionParity("elliptic forms need even dimension")
    for i in range(0, dim - 2, 2):
        m[i][i + 1] = one
    a_idx, b_idx = _least_irreducible_tail(ctx)
    m[dim - 2][dim - 2] = one
    m[dim - 2][dim - 1] = a_idx
    m[dim - 1][dim - 1] = b_idx
    return Form("quadratic", family, dim, -1, ctx, tuple(map(tuple, m)))


def _least_irreducible_tail(ctx: FieldContext) -> tuple[int, int]:
    # least (a, b) in element order with t^2 + a t + b irreducible over GF(q),
    # i.e. with no root among the q field elements
    for a in range(ctx.q):
        for b in range(ctx.q):
            if all(
                ctx.add_i(ctx.add_i(ctx.mul_i(t, t), ctx.mul_i(a, t)), b) != 0
                for t in range(ctx.q)
            ):
                return a, b
    raise FormError("no irreducible quadratic tail exists")  # unreachable for q >= 2


def _check_vec(form: Form, v):
    if len(v) != form.dim:
        raise DimMismatch(f"vector of length {len(v)} against dim {form.dim}")


# -- index-level cores (hot paths work on tuples of element indices) ----------

def eval_form_i(form: Form, v: tuple[int, ...]) -> int:
    ctx = form.ctx
    acc = 0
    mat = form.matrix
    for i, vi in enumerate(v):
        if vi == 0:
            continue
        row = mat[i]
        for j in range(i, form.dim):
            c = row[j]
            if c and v[j]:
                acc = ctx.add_i(acc, ctx.mul_i(c, ctx.mul_i(vi, v[j])))
    return acc


def pairing_i(form: Form, u: tuple[int, ...], w: tuple[int, ...]) -> int:
    ctx = form.ctx
    conj = form.kind == "hermitian"
    acc = 0
    mat = form.matrix
    for i, ui in enumerate(u):
        if ui == 0:
            continue
        row = mat[i]
        for j, wj in enumerate(w):
            g = row[j]
            if g and wj:
                rhs = ctx.frob_i(wj) if conj else wj
                acc = ctx.add_i(acc, ctx.mul_i(g, ctx.mul_i(ui, rhs)))
    return acc


def polarise_i(form: Form, u: tuple[int, ...], w: tuple[int, ...]) -> int:
    ctx = form.ctx
    s = tuple(ctx.add_i(a, b) for a, b in zip(u, w))
    return ctx.sub_i(ctx.sub_i(eval_form_i(form, s), eval_form_i(form, u)),
                     eval_form_i(form, w))


def bilinear_i(form: Form, u: tuple[int, ...], w: tuple[int, ...]) -> int:
    """The associated reflexive pairing: polarisation for quadratic kinds."""
    if form.kind == "quadratic":
        return polarise_i(form, u, w)
    return pairing_i(form, u, w)


def singular_i(form: Form, v: tuple[int, ...]) -> bool:
    if form.kind == "quadratic":
        return eval_form_i(form, v) == 0
    if form.kind == "hermitian":
        return pairing_i(form, v, v) == 0
    return True  # symplectic: B(v, v) = 0 always


# -- element-level public surface ---------------------------------------------

def _idx(v):
    return tuple(a.index for a in v)


def eval_form(form: Form, v) -> FieldElement:
    """Exact value of a quadratic form at v."""
    if form.kind != "quadratic":
        raise KindMismatch(f"eval_form needs a quadratic form, got {form.kind}")
    _check_vec(form, v)
    return form.ctx.element(eval_form_i(form, _idx(v)))


def polarise(form: Form, u, w) -> FieldElement:
    """B(u, w) = Q(u+w) - Q(u) - Q(w); bilinear and symmetric."""
    if form.kind != "quadratic":
        raise KindMismatch(f"polarise needs a quadratic form, got {form.kind}")
    _check_vec(form, u)
    _check_vec(form, w)
    return form.ctx.element(polarise_i(form, _idx(u), _idx(w)))


def eval_pairing(form: Form, u, w) -> FieldElement:
    """Gram pairing; conjugates the second argument for hermitian forms."""
    if form.kind not in ("symplectic", "hermitian"):
        raise KindMismatch(f"eval_pairing needs symplectic/hermitian, got {form.kind}")
    _check_vec(form, u)
    _check_vec(form, w)
    return form.ctx.element(pairing_i(form, _idx(u), _idx(w)))


def is_singular_vector(form: Form, v) -> bool:
    _check_vec(form, v)
    return singular_i(form, _idx(v))


def bilinear_matrix_i(form: Form) -> tuple[tuple[int, ...], ...]:
    """Matrix of the reflexive bilinear pairing: C + C^T for quadratic, Gram else."""
    if form.kind != "quadratic":
        return form.matrix
    ctx = form.ctx
    mat = form.matrix
    d = form.dim
    return tuple(
        tuple(ctx.add_i(mat[i][j] if i <= j else 0, mat[j][i] if j <= i else 0)
              for j in range(d))
        for i in range(d)
    )


def bilinear_kernel_rows(form: Form, s):
    """For each v in s, the row r with B(x, v) = x . r; perp(S) is their kernel."""
    ctx = form.ctx
    mat = bilinear_matrix_i(form)
    rows = []
    conj = form.kind == "hermitian"
    for v in s:
        vi = _idx(v)
        if conj:
            vi = tuple(ctx.frob_i(a) for a in vi)
        row = []
        for i in range(form.dim):
            acc = 0
            for j in range(form.dim):
                g = mat[i][j]
                if g and vi[j]:
                    acc = ctx.add_i(acc, ctx.mul_i(g, vi[j]))
            row.append(ctx.element(acc))
        rows.append(tuple(row))
    return rows


def perp(form: Form, vectors):
    """rref basis of {u : B(u, s) = 0 for all s in vectors}."""
    vectors = [tuple(v) for v in vectors]
    for v in vectors:
        _check_vec(form, v)
    if not vectors:
        one, zero = form.ctx.one, form.ctx.zero
        return linalg.rref([
            tuple(one if i == j else zero for j in range(form.dim))
            for i in range(form.dim)
        ])
    rows = bilinear_kernel_rows(form, vectors)
    return linalg.null_space(rows, form.ctx, form.dim)


def is_totally_singular(form: Form, basis) -> bool:
    """Q (or H(., .)) vanishes on the whole span.

    Equivalent to: every basis vector is singular and every pair pairs to 0,
    by the expansion Q(au + bw) = ab B(u, w) + a^2 Q(u) + b^2 Q(w).
    """
    idx_rows = [_idx(r) for r in basis]
    for r in idx_rows:
        if not singular_i(form, r):
            return False
    for i in range(len(idx_rows)):
        for j in range(i + 1, len(idx_rows)):
            if bilinear_i(form, idx_rows[i], idx_rows[j]) != 0:
                return False
    return True


def form_to_json(form: Form) -> dict:
    return {
        "kind": form.kind,
        "family": form.family,
        "dim": form.dim,
        "epsilon": form.epsilon,
        "q": form.ctx.q,
        "p": form.ctx.p,
        "k": form.ctx.k,
        "modulus": list(form.ctx.modulus),
        "coefficients": [list(row) for row in form.matrix],
    }
