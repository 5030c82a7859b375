"""Projective points of q-bic hypersurfaces and point-level predicates.

A q-bic form with Gram matrix B cuts out the degree-(q+1) hypersurface
X = {v : v^(q)^T B v = 0} in projective n-space; points are normalized
so the leftmost nonzero coordinate is 1.  Counting is done by exhaustive
scan over extension fields (vectorized), and the point-level tests
(singular, cone, tangent, filtration) are direct translations of the
kernel conditions on B.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import bulk
from .errors import QbicError, RangeExceeded, SingularFormError
from .forms import QBicForm
from .gf import FieldCtx, make_field
from .hermitian import is_hermitian_vector, phi
from .linalg import MatrixGF, Subspace

POINT_ENUM_CAP = 10**7


@dataclass(frozen=True)
class ProjPoint:
    """A projective point: nonzero coordinates, leftmost nonzero = 1."""

    ctx: FieldCtx
    coords: tuple[int, ...]

    @classmethod
    def normalize(cls, ctx: FieldCtx, vec) -> "ProjPoint":
        lead = next((c for c in vec if c), None)
        if lead is None:
            raise QbicError("projective point needs a nonzero vector")
        inv = ctx.inv(lead)
        return cls(ctx, tuple(ctx.mul(inv, c) for c in vec))

    def __iter__(self):
        return iter(self.coords)


def projective_count(order: int, n: int) -> int:
    return (order ** (n + 1) - 1) // (order - 1)


def enumerate_points(ctx: FieldCtx, n: int):
    """All points of P^n(F), each exactly once, lexicographic order.

    Coordinates are compared entrywise in code order (zero, then 1, g,
    g^2, ...); representatives have leftmost nonzero coordinate 1.
    """
    if projective_count(ctx.order, n) > POINT_ENUM_CAP:
        raise RangeExceeded("too many projective points")
    from itertools import product

    for pivot in range(n, -1, -1):
        head = [0] * pivot + [1]
        for tail in product(ctx.elements(), repeat=n - pivot):
            yield ProjPoint(ctx, tuple(head) + tail)


def _point_blocks(ctx: FieldCtx, n: int, chunk: int = 1 << 18):
    """Vectorized normalized points, in blocks of shape (rows, n+1)."""
    N = ctx.order
    codes = np.arange(N, dtype=np.int64)
    for pivot in range(n + 1):
        free = n - pivot
        total = N**free
        for start in range(0, total, chunk):
            stop = min(start + chunk, total)
            r = np.arange(start, stop, dtype=np.int64)
            cols = [np.zeros(stop - start, dtype=np.int64) for _ in range(pivot)]
            cols.append(np.ones(stop - start, dtype=np.int64))
            for k in range(free - 1, -1, -1):
                cols.append(codes[(r // N**k) % N])
            yield np.stack(cols, axis=1)


def _evaluate_block(f_ctx: FieldCtx, q: int, B: MatrixGF, pts: np.ndarray) -> np.ndarray:
    """v^(q)^T B v for each row v of pts."""
    ptsq = bulk.vfrob(f_ctx, pts, q, 1)
    acc = None
    n = B.rows
    for i in range(n):
        for j in range(n):
            b = B.data[i][j]
            if b == 0:
                continue
            term = bulk.vmul(f_ctx, bulk.vscale(f_ctx, ptsq[:, i], b), pts[:, j])
            acc = term if acc is None else bulk.vadd(f_ctx, acc, term)
    if acc is None:
        acc = np.zeros(pts.shape[0], dtype=np.int64)
    return acc


def form_over_extension(f: QBicForm, m: int) -> QBicForm:
    """The same form with Gram matrix moved into GF(q^(2m)).

    Moving down (m smaller than the form's own extension degree) is
    allowed when every Gram entry lies in the target subfield.
    """
    target_s = 2 * f.e * m
    if target_s == f.ctx.s:
        return f
    if target_s % f.ctx.s == 0:
        big = make_field(f.ctx.p, target_s)
        return QBicForm(big, f.e, f.gram.embed(big))
    if f.ctx.s % target_s == 0:
        from .gf import unembed_code

        small = make_field(f.ctx.p, target_s)
        rows = [[unembed_code(a, f.ctx, small) for a in row] for row in f.gram.data]
        return QBicForm(small, f.e, MatrixGF(small, rows))
    raise QbicError(f"GF({f.ctx.p}^{target_s}) is incompatible with {f.ctx}")


def on_hypersurface(f: QBicForm, pt) -> bool:
    v = list(pt)
    return f.evaluate(v, v) == 0


def count_points(f: QBicForm, m: int = 1) -> int:
    """#X(GF(q^(2m))) by exhaustive scan."""
    fm = form_over_extension(f, m)
    n = fm.dim - 1
    if projective_count(fm.ctx.order, n) > POINT_ENUM_CAP:
        raise RangeExceeded("point enumeration exceeds the cap")
    count = 0
    for block in _point_blocks(fm.ctx, n):
        vals = _evaluate_block(fm.ctx, fm.q, fm.gram, block)
        count += int(np.count_nonzero(vals == 0))
    return count


def hypersurface_points(f: QBicForm, m: int = 1) -> list[ProjPoint]:
    """All GF(q^(2m))-points of X (desk scale)."""
    fm = form_over_extension(f, m)
    n = fm.dim - 1
    out = []
    for pt in enumerate_points(fm.ctx, n):
        if on_hypersurface(fm, pt):
            out.append(pt)
    return out


def is_singular_point(f: QBicForm, pt) -> bool:
    """Set-theoretic singularity: B^T v^(q) = 0, for a point of X."""
    if not on_hypersurface(f, pt):
        raise QbicError("point does not lie on the hypersurface")
    ctx, q = f.ctx, f.q
    vq = [ctx.frob(c, q, 1) for c in pt]
    return all(c == 0 for c in f.gram.transpose().matvec(vq))


def tangent_space(f: QBicForm, pt) -> Subspace:
    """The hyperplane {w : v^(q)^T B w = 0} at a smooth point of X."""
    ctx, q = f.ctx, f.q
    vq = [ctx.frob(c, q, 1) for c in pt]
    row = MatrixGF(ctx, [vq]).matmul(f.gram)
    if all(c == 0 for c in row.data[0]):
        raise SingularFormError("tangent space undefined at a singular point")
    return row.kernel()


def _line_space(f: QBicForm, pt) -> Subspace:
    return Subspace.from_vectors(f.ctx, f.dim, [list(pt)])


def is_cone_point(f: QBicForm, pt) -> bool:
    """dim(twisted-orth(L) cap root-orth(L)) >= n, L the line under pt."""
    if not on_hypersurface(f, pt):
        raise QbicError("point does not lie on the hypersurface")
    L = _line_space(f, pt)
    W = f._twisted_left_orthogonal(L).intersect(
        f.orthogonal(L, "right").frobenius_preimage(f.q)
    )
    return W.dim >= f.dim - 1


def filtration_membership(f: QBicForm, pt, r: int) -> bool:
    """Membership in X^r: beta(phi^i(v)^(q), v) = 0 for 0 <= i <= r."""
    if not f.is_nonsingular():
        raise SingularFormError("the filtration requires a nonsingular form")
    v = list(pt)
    cur = list(v)
    for i in range(r + 1):
        if f.evaluate(cur, v) != 0:
            return False
        cur = phi(f, cur)
    return True


def vertex(f: QBicForm) -> Subspace:
    """Linear space under the vertex: the radical of the form."""
    return f.radical()


def hermitian_points(f: QBicForm, m: int = 1) -> list[ProjPoint]:
    """Points of X over GF(q^(2m)) whose coordinate vector is Hermitian."""
    fm = form_over_extension(f, m)
    out = []
    for pt in enumerate_points(fm.ctx, fm.dim - 1):
        if on_hypersurface(fm, pt) and is_hermitian_vector(fm, list(pt)):
            out.append(pt)
    return out
