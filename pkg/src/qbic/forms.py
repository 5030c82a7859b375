"""The q-bic form calculus.

A q-bic form on V = k^(n+1), k a field containing GF(q^2), is encoded by
its Gram matrix B with B[i][j] = beta(e_i^(q), e_j); it evaluates as
beta(v^(q), w) = v^(q)^T B w, additively in w and q-power-semilinearly
in v.  Under a change of basis A the Gram matrix transforms as
A^(q)^T . B . A.

Orthogonals live on two sides.  For a subspace S of V the right
orthogonal is {x : x^T B s = 0 for s in S}, a subspace of the Frobenius
twist of V; for S inside the twist the left orthogonal is
{w : s^T B w = 0}, a subspace of V.  Both twists are realized as plain
coordinate space, with the twist level tracked by the caller.  Iterating
these orthogonals yields two canonical chains of subspaces whose
dimension sequences classify the form up to geometric isomorphism; the
classifier here matches those numbers against the profiles of the
standard block forms.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import bulk
from .errors import AmbiguousMatch, NoMatch, QbicError, RangeExceeded, SingularFormError
from .gf import FieldCtx, make_field
from .linalg import MatrixGF, Subspace

BRUTE_FORCE_CAP = 1 << 24


@dataclass(frozen=True)
class TypeSignature:
    """The type of a standard form: Jordan block sizes plus unit blocks.

    ``jordan`` lists the sizes k of the nilpotent blocks N_k in descending
    order (N_1 is the 1x1 zero block); ``units`` counts 1x1 unit blocks.
    """

    jordan: tuple[int, ...]
    units: int

    def __post_init__(self):
        object.__setattr__(self, "jordan", tuple(sorted(self.jordan, reverse=True)))
        if any(k < 1 for k in self.jordan) or self.units < 0:
            raise QbicError("invalid type signature")

    @property
    def dim(self) -> int:
        return self.units + sum(self.jordan)

    @property
    def rank(self) -> int:
        return self.units + sum(k - 1 for k in self.jordan)

    def block_counts(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for k in self.jordan:
            counts[k] = counts.get(k, 0) + 1
        return counts

    def format(self) -> str:
        """Human notation, e.g. ``N2+1+1+1``, ``N1^4``, ``1^5``.

        Runs of four or more equal blocks are compressed with ``^``.
        """
        parts = []
        for k, cnt in sorted(self.block_counts().items(), reverse=True):
            label = f"N{k}"
            parts.append(f"{label}^{cnt}" if cnt >= 4 else "+".join([label] * cnt))
        if self.units:
            parts.append(f"1^{self.units}" if self.units >= 4 else "+".join(["1"] * self.units))
        return "+".join(parts) if parts else "(empty)"

    @classmethod
    def parse(cls, text: str) -> "TypeSignature":
        jordan: list[int] = []
        units = 0
        for piece in text.replace(" ", "").split("+"):
            if not piece:
                raise QbicError(f"bad signature {text!r}")
            if "^" in piece:
                base, _, exp = piece.partition("^")
                count = int(exp)
            else:
                base, count = piece, 1
            if base == "1":
                units += count
            elif base == "0":
                jordan.extend([1] * count)
            elif base.startswith("N"):
                jordan.extend([int(base[1:])] * count)
            else:
                raise QbicError(f"bad signature piece {piece!r}")
        return cls(tuple(jordan), units)

    def __str__(self):
        return self.format()


def all_signatures(dim: int):
    """Every type signature of the given dimension."""
    out = []
    for units in range(dim + 1):
        rest = dim - units
        for part in _partitions(rest):
            out.append(TypeSignature(tuple(part), units))
    return out


def _partitions(n: int, maxpart: int | None = None):
    if n == 0:
        yield ()
        return
    if maxpart is None:
        maxpart = n
    for first in range(min(n, maxpart), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


@dataclass(frozen=True)
class FiltrationProfile:
    """Numeric invariants read off the two orthogonal chains.

    ``perp_lower`` holds the dimensions of the increasing chain
    rad = M_0 <= M_1 <= ... and ``perp_upper`` the dimensions of the
    matching decreasing chain of twisted orthogonals of the M_i;
    ``w_dims``/``w_perp_dims`` hold the dimension pairs of the second
    chain built from twisted orthogonals at increasing twist level.
    Trailing repeats are trimmed, so equal profiles mean equal chains.
    """

    rank: int
    perp_lower: tuple[int, ...]
    perp_upper: tuple[int, ...]
    w_dims: tuple[int, ...]
    w_perp_dims: tuple[int, ...]


class QBicForm:
    """A q-bic form: Gram matrix over a context containing GF(q^2)."""

    def __init__(self, ctx: FieldCtx, e: int, gram: MatrixGF):
        if gram.rows != gram.cols:
            raise QbicError("Gram matrix must be square")
        if gram.ctx is not ctx:
            raise QbicError("Gram matrix context mismatch")
        if ctx.s % (2 * e):
            raise QbicError(f"{ctx} does not contain GF(q^2) for q = {ctx.p}^{e}")
        self.ctx = ctx
        self.e = e
        self.q = ctx.p**e
        self.dim = gram.rows
        self.gram = gram

    def __repr__(self):
        return f"QBicForm(dim {self.dim}, q={self.q}, over {self.ctx})"

    # -- evaluation ---------------------------------------------------------

    def evaluate(self, v, w) -> int:
        """beta(v^(q), w) = v^(q)^T B w."""
        if len(v) != self.dim or len(w) != self.dim:
            raise QbicError("vector length mismatch")
        ctx, q = self.ctx, self.q
        acc = 0
        for i, vi in enumerate(v):
            if not vi:
                continue
            viq = ctx.frob(vi, q, 1)
            row = self.gram.data[i]
            for j, wj in enumerate(w):
                if wj and row[j]:
                    acc = ctx.add(acc, ctx.mul(viq, ctx.mul(row[j], wj)))
        return acc

    def gram_in_basis(self, A: MatrixGF) -> "QBicForm":
        """Gram matrix after the change of basis A (columns = new basis)."""
        if not A.is_invertible():
            raise QbicError("change of basis must be invertible")
        B2 = A.frobenius_twist(self.q).transpose().matmul(self.gram).matmul(A)
        return QBicForm(self.ctx, self.e, B2)

    def restrict(self, S: Subspace) -> "QBicForm":
        """Gram of the form on the RREF basis of S."""
        rows = S.basis_matrix()
        if S.dim == 0:
            return QBicForm(self.ctx, self.e, MatrixGF.zeros(self.ctx, 0, 0))
        G = rows.frobenius_twist(self.q).matmul(self.gram).matmul(rows.transpose())
        return QBicForm(self.ctx, self.e, G)

    # -- kernels and orthogonals -----------------------------------------------

    def rank(self) -> int:
        return self.gram.rank()

    def corank(self) -> int:
        return self.dim - self.rank()

    def is_nonsingular(self) -> bool:
        return self.corank() == 0

    def kernels(self):
        """(left, right, right_preimage).

        left is the kernel of B inside V; right the kernel of B^T inside
        the twist of V; right_preimage the entrywise q-th root of right.
        """
        left = self.gram.kernel()
        right = self.gram.transpose().kernel()
        return left, right, right.frobenius_preimage(self.q)

    def radical(self) -> Subspace:
        left, _, right_pre = self.kernels()
        return left.intersect(right_pre)

    def orthogonal(self, S: Subspace, side: str) -> Subspace:
        """Orthogonal of S.

        side='left': S lives in the twist of V, result {w : s^T B w = 0}.
        side='right': S lives in V, result {x : x^T B s = 0} in the twist.
        """
        if S.ambient != self.dim:
            raise QbicError("ambient mismatch")
        if S.dim == 0:
            return Subspace.full(self.ctx, self.dim)
        rows = S.basis_matrix()
        if side == "left":
            return rows.matmul(self.gram).kernel()
        if side == "right":
            return rows.matmul(self.gram.transpose()).kernel()
        raise QbicError("side must be 'left' or 'right'")

    def _twisted_left_orthogonal(self, S: Subspace) -> Subspace:
        """{w in V : s^(q)^T B w = 0 for s in S}, S a subspace of V."""
        if S.dim == 0:
            return Subspace.full(self.ctx, self.dim)
        rows = S.basis_matrix().frobenius_twist(self.q)
        return rows.matmul(self.gram).kernel()

    # -- filtrations ---------------------------------------------------------

    def perp_filtration(self) -> list[Subspace]:
        """Increasing chain rad = M_0 <= M_1 <= ..., to stabilization."""
        chain = [self.radical()]
        while True:
            T = self._twisted_left_orthogonal(chain[-1])
            nxt = self._twisted_left_orthogonal(T)
            if nxt == chain[-1]:
                break
            chain.append(nxt)
            if len(chain) > self.dim + 1:
                raise QbicError("perp filtration failed to stabilize")
        return chain

    def perp_filtration_full(self) -> list[Subspace]:
        """The whole chain M_0 <= ... <= M_r <= ... <= twisted-orth(M_1) <= V.

        Appends the decreasing chain of twisted orthogonals of the M_i to
        the increasing chain, dropping duplicates.
        """
        lower = self.perp_filtration()
        upper = [self._twisted_left_orthogonal(M) for M in reversed(lower)]
        chain = list(lower)
        for U in upper:
            if U != chain[-1]:
                chain.append(U)
        return chain

    def frstar_perp_filtration(self) -> list[tuple[int, int]]:
        """Dimension pairs (dim W_i, dim of its twisted orthogonal).

        W_0 is the radical, carried into twist level -1 (coordinates are
        entrywise q-th roots, matching the basis of that twist); each step
        takes the orthogonal with respect to the Gram matrix twisted to
        the current level, raising the level by one.  In particular the
        first orthogonal is all of V and W_1 is the right kernel of B.
        """
        ctx, q = self.ctx, self.q

        def step(space: Subspace, level: int) -> Subspace:
            if space.dim == 0:
                return Subspace.full(ctx, self.dim)
            Bt = self.gram.frobenius_twist(q, level) if level else self.gram
            return space.basis_matrix().matmul(Bt.transpose()).kernel()

        pairs = []
        W = self.radical().frobenius_preimage(q)
        level = -1
        for _ in range(self.dim + 2):
            Wperp = step(W, level)
            pairs.append((W.dim, Wperp.dim))
            W = step(Wperp, level + 1)
            level += 2
            if len(pairs) >= 2 and pairs[-1] == pairs[-2]:
                break
        while len(pairs) >= 2 and pairs[-1] == pairs[-2]:
            pairs.pop()
        return pairs

    def invariant_profile(self) -> FiltrationProfile:
        lower = self.perp_filtration()
        upper = [self._twisted_left_orthogonal(M) for M in lower]
        for M in lower:
            if not M.is_subspace_of(self._twisted_left_orthogonal(M)):
                raise QbicError("filtration step is not isotropic")
        pairs = self.frstar_perp_filtration()
        return FiltrationProfile(
            rank=self.rank(),
            perp_lower=tuple(M.dim for M in lower),
            perp_upper=tuple(U.dim for U in upper),
            w_dims=tuple(p[0] for p in pairs),
            w_perp_dims=tuple(p[1] for p in pairs),
        )

    # -- orthogonal complements ---------------------------------------------------

    def orthogonal_complement(self, S: Subspace):
        """(has_complement, complement_if_unique).

        S has an orthogonal complement iff codim S = dim W - dim(W cap S)
        with W the intersection of the two orthogonals of S; the complement
        is unique (and returned) iff moreover W cap S = 0.
        """
        if S.ambient != self.dim:
            raise QbicError("ambient mismatch")
        W = self._twisted_left_orthogonal(S).intersect(
            self.orthogonal(S, "right").frobenius_preimage(self.q)
        )
        meet = W.intersect(S)
        has = (self.dim - S.dim) == (W.dim - meet.dim)
        comp = W if (has and meet.dim == 0) else None
        return has, comp

    # -- constructors -------------------------------------------------------------


def standard_gram(sig: TypeSignature, ctx: FieldCtx, e: int) -> QBicForm:
    """Block-diagonal standard form: Jordan blocks N_k, then unit blocks."""
    n = sig.dim
    B = MatrixGF.zeros(ctx, n, n)
    pos = 0
    for k in sig.jordan:
        for i in range(k - 1):
            B.data[pos + i][pos + i + 1] = 1
        pos += k
    for _ in range(sig.units):
        B.data[pos][pos] = 1
        pos += 1
    return QBicForm(ctx, e, B)


def random_form(ctx: FieldCtx, e: int, dim: int, rank: int, rng: random.Random) -> QBicForm:
    """P . D . Q with P, Q uniform invertible and D a rank-`rank` 0/1 diagonal."""
    if not 0 <= rank <= dim:
        raise QbicError("rank out of range")

    def rand_invertible():
        while True:
            M = MatrixGF(ctx, [[rng.randrange(ctx.order) for _ in range(dim)] for _ in range(dim)])
            if M.is_invertible():
                return M

    P, Q = rand_invertible(), rand_invertible()
    D = MatrixGF.zeros(ctx, dim, dim)
    for i in range(rank):
        D.data[i][i] = 1
    return QBicForm(ctx, e, P.matmul(D).matmul(Q))


# -- classification -----------------------------------------------------------


@lru_cache(maxsize=None)
def _profile_table(p: int, e: int, dim: int):
    """Profile -> signature for all standard forms of this dimension.

    Profiles are field-size independent (they are matrix ranks), so the
    table is computed over GF(q^2).  A collision means the numeric
    invariants cannot separate two types at this (q, dim); that is
    surfaced as AmbiguousMatch rather than guessed around.
    """
    ctx = make_field(p, 2 * e)
    table: dict[FiltrationProfile, TypeSignature] = {}
    for sig in all_signatures(dim):
        prof = standard_gram(sig, ctx, e).invariant_profile()
        if prof in table:
            raise AmbiguousMatch(
                f"types {table[prof]} and {sig} share an invariant profile at q={p**e}, dim={dim}"
            )
        table[prof] = sig
    return table


def classify(f: QBicForm) -> TypeSignature:
    """Geometric type of the form, by invariant-profile matching."""
    table = _profile_table(f.ctx.p, f.e, f.dim)
    prof = f.invariant_profile()
    sig = table.get(prof)
    if sig is None:
        raise NoMatch(f"no standard form matches profile {prof}")
    return sig


# -- automorphism counting ------------------------------------------------------


def automorphism_count_bruteforce(f: QBicForm, d: int) -> int:
    """Number of g in GL(dim, GF(p^d)) with g^(q)^T B g = B, by exhaustion.

    Requires the matrix entries of B to make the equation meaningful over
    the ambient context and |GF(p^d)|^(dim^2) within the brute-force cap.
    """
    ctx = f.ctx
    if ctx.s % d:
        raise QbicError("subfield degree does not divide ambient degree")
    nd = ctx.p**d
    n = f.dim
    total = nd ** (n * n)
    if total > BRUTE_FORCE_CAP:
        raise RangeExceeded(f"{total} matrices exceed the brute-force cap")
    sub = np.array(ctx.subfield_codes(d), dtype=np.int64)
    B = f.gram
    count = 0
    chunk = 1 << 18
    for start in range(0, total, chunk):
        stop = min(start + chunk, total)
        r = np.arange(start, stop, dtype=np.int64)
        entries = []
        for pos in range(n * n - 1, -1, -1):
            entries.append(sub[(r // nd**pos) % nd])
        G = np.stack(entries, axis=1).reshape(-1, n, n)
        Gq = bulk.vfrob(ctx, G, f.q, 1)
        ok = np.ones(G.shape[0], dtype=bool)
        for i in range(n):
            for j in range(n):
                acc = None
                for a in range(n):
                    for b_ in range(n):
                        bab = B.data[a][b_]
                        if bab == 0:
                            continue
                        term = bulk.vmul(ctx, bulk.vscale(ctx, Gq[:, a, i], bab), G[:, b_, j])
                        acc = term if acc is None else bulk.vadd(ctx, acc, term)
                if acc is None:
                    acc = np.zeros(G.shape[0], dtype=np.int64)
                ok &= acc == B.data[i][j]
        idx = np.nonzero(ok)[0]
        if idx.size:
            dets = _batch_det(ctx, G[idx])
            count += int(np.count_nonzero(dets))
    return count


def _batch_det(ctx: FieldCtx, G: np.ndarray) -> np.ndarray:
    """Determinants of a batch of small matrices via the Leibniz formula."""
    n = G.shape[1]
    if n > 5:
        raise RangeExceeded("batch determinant supports dim <= 5")
    acc = None
    for perm in itertools.permutations(range(n)):
        sign = _perm_sign(perm)
        term = None
        for i, j in enumerate(perm):
            term = G[:, i, j] if term is None else bulk.vmul(ctx, term, G[:, i, j])
        if sign < 0 and ctx.p != 2:
            term = bulk.vscale(ctx, term, ctx.code_of_minus_one)
        acc = term if acc is None else bulk.vadd(ctx, acc, term)
    return acc


def _perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, clen = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            clen += 1
        if clen % 2 == 0:
            sign = -sign
    return sign
