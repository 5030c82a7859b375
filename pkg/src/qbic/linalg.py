"""Dense exact linear algebra over a FieldCtx.

Matrices store element codes row-major; all operations are pure.  Subspaces
are canonicalized by the reduced row echelon form of a spanning set, so
equality and hashing are structural.
"""

from __future__ import annotations

from .errors import QbicError
from .gf import FieldCtx, embed_code


class MatrixGF:
    __slots__ = ("ctx", "rows", "cols", "data")

    def __init__(self, ctx: FieldCtx, data):
        self.ctx = ctx
        self.data = [list(row) for row in data]
        self.rows = len(self.data)
        self.cols = len(self.data[0]) if self.data else 0
        for row in self.data:
            if len(row) != self.cols:
                raise QbicError("ragged matrix")

    # -- constructors -----------------------------------------------------

    @classmethod
    def zeros(cls, ctx, rows, cols):
        return cls(ctx, [[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, ctx, n):
        m = cls.zeros(ctx, n, n)
        for i in range(n):
            m.data[i][i] = 1
        return m

    def copy(self):
        return MatrixGF(self.ctx, self.data)

    def __eq__(self, other):
        return (
            isinstance(other, MatrixGF)
            and self.ctx is other.ctx
            and self.data == other.data
        )

    def __hash__(self):
        return hash((id(self.ctx), tuple(tuple(r) for r in self.data)))

    def __repr__(self):
        return f"MatrixGF({self.rows}x{self.cols} over {self.ctx})"

    def __getitem__(self, ij):
        return self.data[ij[0]][ij[1]]

    # -- basic operations ---------------------------------------------------

    def transpose(self):
        return MatrixGF(self.ctx, [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def matmul(self, other: "MatrixGF") -> "MatrixGF":
        if self.cols != other.rows:
            raise QbicError("dimension mismatch in matmul")
        ctx = self.ctx
        out = MatrixGF.zeros(ctx, self.rows, other.cols)
        for i in range(self.rows):
            row = self.data[i]
            orow = out.data[i]
            for k in range(self.cols):
                a = row[k]
                if a:
                    brow = other.data[k]
                    for j in range(other.cols):
                        b = brow[j]
                        if b:
                            orow[j] = ctx.add(orow[j], ctx.mul(a, b))
        return out

    def matvec(self, vec):
        if self.cols != len(vec):
            raise QbicError("dimension mismatch in matvec")
        ctx = self.ctx
        out = [0] * self.rows
        for i in range(self.rows):
            acc = 0
            row = self.data[i]
            for j, v in enumerate(vec):
                if v and row[j]:
                    acc = ctx.add(acc, ctx.mul(row[j], v))
            out[i] = acc
        return out

    def add(self, other: "MatrixGF") -> "MatrixGF":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise QbicError("dimension mismatch in add")
        ctx = self.ctx
        return MatrixGF(ctx, [
            [ctx.add(a, b) for a, b in zip(r1, r2)]
            for r1, r2 in zip(self.data, other.data)
        ])

    def scale(self, c):
        ctx = self.ctx
        return MatrixGF(ctx, [[ctx.mul(c, a) for a in row] for row in self.data])

    def frobenius_twist(self, q: int, k: int = 1) -> "MatrixGF":
        """Entrywise q^k-th power; k may be negative."""
        ctx = self.ctx
        return MatrixGF(ctx, [[ctx.frob(a, q, k) for a in row] for row in self.data])

    def is_zero(self):
        return all(a == 0 for row in self.data for a in row)

    # -- elimination ----------------------------------------------------------

    def rref(self):
        """(reduced row echelon form, rank, pivot columns)."""
        ctx = self.ctx
        m = [list(row) for row in self.data]
        pivots = []
        r = 0
        for c in range(self.cols):
            pr = next((i for i in range(r, self.rows) if m[i][c]), None)
            if pr is None:
                continue
            m[r], m[pr] = m[pr], m[r]
            inv = ctx.inv(m[r][c])
            m[r] = [ctx.mul(inv, a) for a in m[r]]
            for i in range(self.rows):
                if i != r and m[i][c]:
                    f = m[i][c]
                    m[i] = [ctx.sub(a, ctx.mul(f, b)) for a, b in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return MatrixGF(ctx, m), r, pivots

    def rank(self):
        return self.rref()[1]

    def kernel(self) -> "Subspace":
        """Right null space {x : M x = 0}."""
        R, rank, pivots = self.rref()
        free = [c for c in range(self.cols) if c not in pivots]
        ctx = self.ctx
        basis = []
        for fc in free:
            v = [0] * self.cols
            v[fc] = 1
            for i, pc in enumerate(pivots):
                v[pc] = ctx.neg(R.data[i][fc])
            basis.append(v)
        return Subspace.from_vectors(ctx, self.cols, basis)

    def image(self) -> "Subspace":
        """Row space."""
        return Subspace.from_vectors(self.ctx, self.cols, self.data)

    def solve(self, b):
        """One particular solution of M x = b (free vars zero), or None."""
        ctx = self.ctx
        aug = MatrixGF(ctx, [row + [bv] for row, bv in zip(self.data, b)])
        R, rank, pivots = aug.rref()
        if self.cols in pivots:
            return None
        x = [0] * self.cols
        for i, pc in enumerate(pivots):
            x[pc] = R.data[i][self.cols]
        return x

    def det(self):
        if self.rows != self.cols:
            raise QbicError("determinant of a non-square matrix")
        ctx = self.ctx
        m = [list(row) for row in self.data]
        n = self.rows
        det = 1
        sign_swaps = 0
        for c in range(n):
            pr = next((i for i in range(c, n) if m[i][c]), None)
            if pr is None:
                return 0
            if pr != c:
                m[c], m[pr] = m[pr], m[c]
                sign_swaps += 1
            det = ctx.mul(det, m[c][c])
            inv = ctx.inv(m[c][c])
            for i in range(c + 1, n):
                if m[i][c]:
                    f = ctx.mul(inv, m[i][c])
                    m[i] = [ctx.sub(a, ctx.mul(f, b)) for a, b in zip(m[i], m[c])]
        if sign_swaps % 2 and ctx.p != 2:
            det = ctx.neg(det)
        return det

    def inverse(self) -> "MatrixGF":
        if self.rows != self.cols:
            raise QbicError("inverse of a non-square matrix")
        n = self.rows
        ctx = self.ctx
        aug = MatrixGF(ctx, [row + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(self.data)])
        R, rank, pivots = aug.rref()
        if rank < n or pivots[:n] != list(range(n)):
            raise QbicError("matrix is singular")
        return MatrixGF(ctx, [row[n:] for row in R.data])

    def is_invertible(self):
        return self.rows == self.cols and self.rank() == self.rows

    def embed(self, dst: FieldCtx) -> "MatrixGF":
        src = self.ctx
        return MatrixGF(dst, [[embed_code(a, src, dst) for a in row] for row in self.data])


class Subspace:
    """A linear subspace given by an RREF basis with no zero rows."""

    __slots__ = ("ctx", "ambient", "basis")

    def __init__(self, ctx: FieldCtx, ambient: int, rref_rows):
        self.ctx = ctx
        self.ambient = ambient
        self.basis = tuple(tuple(r) for r in rref_rows)

    @classmethod
    def from_vectors(cls, ctx, ambient, vectors) -> "Subspace":
        if not vectors:
            return cls(ctx, ambient, [])
        R, rank, _ = MatrixGF(ctx, vectors).rref()
        return cls(ctx, ambient, R.data[:rank])

    @classmethod
    def zero(cls, ctx, ambient):
        return cls(ctx, ambient, [])

    @classmethod
    def full(cls, ctx, ambient):
        return cls(ctx, ambient, MatrixGF.identity(ctx, ambient).data)

    @property
    def dim(self):
        return len(self.basis)

    def basis_matrix(self) -> MatrixGF:
        return MatrixGF(self.ctx, [list(r) for r in self.basis])

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ctx is other.ctx
            and self.ambient == other.ambient
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((id(self.ctx), self.ambient, self.basis))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of {self.ambient} over {self.ctx})"

    def contains(self, vec) -> bool:
        ctx = self.ctx
        v = list(vec)
        for row in self.basis:
            pc = next(i for i, a in enumerate(row) if a)
            if v[pc]:
                f = v[pc]
                v = [ctx.sub(a, ctx.mul(f, b)) for a, b in zip(v, row)]
        return all(a == 0 for a in v)

    def is_subspace_of(self, other: "Subspace") -> bool:
        return all(other.contains(r) for r in self.basis)

    def sum_(self, other: "Subspace") -> "Subspace":
        self._check_peer(other)
        return Subspace.from_vectors(self.ctx, self.ambient, list(self.basis) + list(other.basis))

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check_peer(other)
        rows = [list(r) for r in self._constraints() + other._constraints()]
        if not rows:
            return Subspace.full(self.ctx, self.ambient)
        return MatrixGF(self.ctx, rows).kernel()

    def _constraints(self):
        """Rows c with: x in the subspace iff c . x = 0 for all of them."""
        if self.dim == self.ambient:
            return ()
        if self.dim == 0:
            return tuple(tuple(MatrixGF.identity(self.ctx, self.ambient).data[i]) for i in range(self.ambient))
        return self.basis_matrix().kernel().basis

    def _check_peer(self, other):
        if other.ctx is not self.ctx or other.ambient != self.ambient:
            raise QbicError("subspaces from different ambients")

    def frobenius_preimage(self, q: int) -> "Subspace":
        """{v : entrywise q-th power of v lies in this subspace}."""
        rooted = self.basis_matrix().frobenius_twist(q, -1)
        return Subspace.from_vectors(self.ctx, self.ambient, rooted.data)

    def frobenius_image(self, q: int) -> "Subspace":
        twisted = self.basis_matrix().frobenius_twist(q, 1)
        return Subspace.from_vectors(self.ctx, self.ambient, twisted.data)

    def vectors(self):
        """All vectors of the subspace (desk scale only)."""
        ctx = self.ctx
        k = self.dim
        if k == 0:
            yield tuple([0] * self.ambient)
            return
        from itertools import product

        for coeffs in product(ctx.elements(), repeat=k):
            v = [0] * self.ambient
            for c, row in zip(coeffs, self.basis):
                if c:
                    for j, a in enumerate(row):
                        if a:
                            v[j] = ctx.add(v[j], ctx.mul(c, a))
            yield tuple(v)

    def embed(self, dst: FieldCtx) -> "Subspace":
        return Subspace(dst, self.ambient, self.basis_matrix().embed(dst).data)


def semilinear_kernel(A: MatrixGF, C: MatrixGF, e: int, k: int):
    """Solution set of A x = C x^(q^k), q = p^e, as a GF(q^k)-basis.

    The ambient field GF(p^s) is expanded as an m-dimensional space over the
    subfield F0 = GF(q^k) (possible because x -> x^(q^k) is F0-linear), and
    the blown-up F0-linear system is solved exactly.  Returns (basis_vectors,
    subfield_order); the solution set is the F0-span of the basis, hence has
    subfield_order ** len(basis) elements.
    """
    ctx = A.ctx
    if C.ctx is not ctx:
        raise QbicError("matrices over different contexts")
    if A.rows != A.cols or C.rows != C.cols or A.rows != C.rows:
        raise QbicError("semilinear system needs equal square matrices")
    ek = e * k
    if ctx.s % ek:
        raise QbicError(f"GF({ctx.p}^{ek}) is not a subfield of {ctx}")
    m = ctx.s // ek
    n = A.rows
    q_k = ctx.p**ek
    sigma = lambda a: ctx.frob(a, ctx.p, ek)  # noqa: E731

    # basis of the ambient field over F0: 1, g, ..., g^(m-1)
    omega = [ctx.pow_(ctx.generator, l) for l in range(m)]
    # Moore matrix for coordinate extraction: Phi[j][l] = omega_l^(sigma^j)
    phi_rows = []
    for j in range(m):
        row = []
        for l in range(m):
            a = omega[l]
            for _ in range(j):
                a = sigma(a)
            row.append(a)
        phi_rows.append(row)
    phi_inv = MatrixGF(ctx, phi_rows).inverse()

    def coords(y):
        ys = []
        a = y
        for _ in range(m):
            ys.append(a)
            a = sigma(a)
        return phi_inv.matvec(ys)

    nm = n * m
    big = MatrixGF.zeros(ctx, nm, nm)
    for i in range(n):
        for j in range(n):
            a_ij, c_ij = A.data[i][j], C.data[i][j]
            if a_ij == 0 and c_ij == 0:
                continue
            for l in range(m):
                gamma = ctx.sub(ctx.mul(a_ij, omega[l]), ctx.mul(c_ij, sigma(omega[l])))
                for r, comp in enumerate(coords(gamma)):
                    big.data[i * m + r][j * m + l] = ctx.add(big.data[i * m + r][j * m + l], comp)
    kern = big.kernel()
    out = []
    for kb in kern.basis:
        vec = []
        for j in range(n):
            acc = 0
            for l in range(m):
                c = kb[j * m + l]
                if c:
                    acc = ctx.add(acc, ctx.mul(c, omega[l]))
            vec.append(acc)
        out.append(tuple(vec))
    return out, q_k
