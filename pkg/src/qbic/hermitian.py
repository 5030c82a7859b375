"""Hermitian vectors, the canonical self-map, and orthonormalization.

A vector v is Hermitian for a q-bic form with Gram matrix B when
B v = B^(q)^T v^(q^2); the solution set is a vector space over GF(q^2).
For a nonsingular form the map phi(v) = B^(-1) B^(q)^T v^(q^2) is a
q^2-linear bijection whose fixed vectors are exactly the Hermitian ones,
and once enough Hermitian vectors exist (possibly after a field
extension) the form acquires an orthonormal basis by Gram-Schmidt inside
the associated GF(q^2)-Hermitian form.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import NotSplit, QbicError, SingularFormError
from .forms import QBicForm
from .gf import FieldCtx, make_field
from .linalg import MatrixGF, Subspace, semilinear_kernel


@dataclass
class HermitianBasis:
    """GF(q^2)-basis of the Hermitian vectors found over `ctx`."""

    ctx: FieldCtx
    form: QBicForm
    vectors: list[tuple[int, ...]]
    subfield_order: int

    @property
    def count(self) -> int:
        return self.subfield_order ** len(self.vectors)


def is_hermitian_vector(f: QBicForm, v) -> bool:
    """B v = B^(q)^T v^(q^2)."""
    ctx, q = f.ctx, f.q
    lhs = f.gram.matvec(list(v))
    vq2 = [ctx.frob(x, q, 2) for x in v]
    rhs = f.gram.frobenius_twist(q).transpose().matvec(vq2)
    return lhs == rhs


def hermitian_space(f: QBicForm, m: int) -> HermitianBasis:
    """Solve the Hermitian equations over GF(q^(2m)).

    The form's Gram matrix is embedded into the target field if needed;
    for a nonsingular form the solution set reaches q^(2(n+1)) elements
    once m is large enough.  The caller inspects ``count``.
    """
    target_s = 2 * f.e * m
    if target_s % f.ctx.s and f.ctx.s % target_s:
        raise QbicError("target extension is incompatible with the form's field")
    if target_s % f.ctx.s:
        raise QbicError(f"GF({f.ctx.p}^{target_s}) does not contain {f.ctx}")
    big = make_field(f.ctx.p, target_s)
    B = f.gram.embed(big)
    basis, qk = semilinear_kernel(B, B.frobenius_twist(f.q).transpose(), f.e, 2)
    return HermitianBasis(big, f, [tuple(v) for v in basis], qk)


def phi_matrix(f: QBicForm) -> MatrixGF:
    if not f.is_nonsingular():
        raise SingularFormError("phi requires a nonsingular form")
    return f.gram.inverse().matmul(f.gram.frobenius_twist(f.q).transpose())


def phi(f: QBicForm, v) -> list[int]:
    """The canonical self-map: v -> B^(-1) B^(q)^T v^(q^2)."""
    ctx, q = f.ctx, f.q
    M = phi_matrix(f)
    return M.matvec([ctx.frob(x, q, 2) for x in v])


def hermitian_closure_dim(f: QBicForm, v) -> int:
    """Dimension of span{v, phi(v), phi^2(v), ...}.

    Equals the smallest dimension of a phi-stable subspace containing v.
    """
    if not f.is_nonsingular():
        raise SingularFormError("requires a nonsingular form")
    span = Subspace.from_vectors(f.ctx, f.dim, [list(v)])
    cur = list(v)
    for _ in range(f.dim + 1):
        cur = phi(f, cur)
        grown = span.sum_(Subspace.from_vectors(f.ctx, f.dim, [cur]))
        if grown.dim == span.dim:
            return span.dim
        span = grown
    return span.dim


def orthonormalize(f: QBicForm, max_ext: int | None = None):
    """Basis matrix A with Gram A^(q)^T B A = identity, plus a witness.

    Searches extensions GF(q^(2m)) for a full Hermitian space, then runs
    Gram-Schmidt over GF(q^2): pick the lexicographically first
    non-isotropic vector, rescale by an inverse (q+1)-st root of its
    self-pairing, pass to the unique orthogonal complement, recurse.
    Raises NotSplit if the space never fills up within max_ext.
    """
    if not f.is_nonsingular():
        raise SingularFormError("orthonormalize requires a nonsingular form")
    if max_ext is None:
        max_ext = f.dim + 1
    m0 = f.ctx.s // (2 * f.e)
    herm = None
    used_m = None
    for m in range(1, max_ext + 1):
        if m % m0:
            continue
        cand = hermitian_space(f, m)
        if cand.count == (f.q**2) ** f.dim:
            herm, used_m = cand, m
            break
    if herm is None:
        raise NotSplit(f"Hermitian space not full for any extension m <= {max_ext}")

    big = herm.ctx
    q = f.q
    Bbig = f.gram.embed(big)
    H = MatrixGF(big, [list(v) for v in herm.vectors])
    fbig = QBicForm(big, f.e, Bbig)
    G = H.frobenius_twist(q).matmul(Bbig).matmul(H.transpose())

    subfield = big.subfield_codes(2 * f.e)
    n = f.dim
    rows_in_H = MatrixGF.identity(big, n)
    ortho_rows = []
    G_cur = G
    K_cur = rows_in_H
    for _ in range(n):
        k = G_cur.rows
        u = _first_nonisotropic(big, q, G_cur, subfield)
        val = _self_pairing(big, q, G_cur, u)
        root = _subfield_root(big, subfield, big.inv(val), q + 1)
        u = [big.mul(root, c) for c in u]
        u_orig = _combine(big, u, K_cur)
        ortho_rows.append(u_orig)
        if k == 1:
            break
        uq = [big.frob(c, q, 1) for c in u]
        constraint = MatrixGF(big, [uq]).matmul(G_cur)
        comp = constraint.kernel().basis_matrix()
        K_cur = comp.matmul(K_cur)
        G_cur = comp.frobenius_twist(q).matmul(G_cur).matmul(comp.transpose())

    C = MatrixGF(big, ortho_rows)
    A = C.matmul(H).transpose()
    check = A.frobenius_twist(q).transpose().matmul(Bbig).matmul(A)
    if check != MatrixGF.identity(big, n):
        raise QbicError("orthonormalization produced a non-identity Gram")
    return A, {"extension": used_m, "field": big.descriptor()}


def _self_pairing(ctx, q, G, c):
    cq = [ctx.frob(x, q, 1) for x in c]
    acc = 0
    for i, a in enumerate(cq):
        if not a:
            continue
        for j, b in enumerate(c):
            if b and G.data[i][j]:
                acc = ctx.add(acc, ctx.mul(a, ctx.mul(G.data[i][j], b)))
    return acc


def _first_nonisotropic(ctx, q, G, subfield):
    k = G.rows
    for tup in product(subfield, repeat=k):
        if all(c == 0 for c in tup):
            continue
        if _self_pairing(ctx, q, G, list(tup)):
            return list(tup)
    raise QbicError("no non-isotropic vector in a nonsingular Hermitian space")


def _subfield_root(ctx, subfield, target, n):
    for y in subfield:
        if y and ctx.pow_(y, n) == target:
            return y
    raise QbicError("no (q+1)-st root in GF(q^2); self-pairing not in GF(q)?")


def _combine(ctx, coeffs, rows: MatrixGF):
    out = [0] * rows.cols
    for c, row in zip(coeffs, rows.data):
        if c:
            for j, a in enumerate(row):
                if a:
                    out[j] = ctx.add(out[j], ctx.mul(c, a))
    return out
