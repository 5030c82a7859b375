"""Linear subspaces of q-bic hypersurfaces: enumeration and incidence.

An r-plane P U lies in X exactly when U is totally isotropic: all
pairings u_i^(q)^T B u_j vanish on a basis.  Subspaces are enumerated
through their reduced-row-echelon representatives (one per subspace),
vectorized per pivot pattern; the per-subspace test is a handful of
vector operations, which keeps the six-figure candidate counts cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

import numpy as np

from . import bulk
from .errors import QbicError, RangeExceeded
from .forms import QBicForm, classify
from .gf import FieldCtx
from .geometry import (POINT_ENUM_CAP, ProjPoint, enumerate_points,
                       form_over_extension, on_hypersurface, projective_count)
from .linalg import MatrixGF, Subspace

SUBSPACE_ENUM_CAP = 10**7


@dataclass(frozen=True)
class ProjSubspace:
    """An r-plane in P^n: (r+1) x (n+1) RREF basis, one representative each."""

    ctx: FieldCtx
    n: int
    r: int
    basis: tuple[tuple[int, ...], ...]

    def subspace(self) -> Subspace:
        return Subspace(self.ctx, self.n + 1, self.basis)

    def points(self):
        """The rational points of the r-plane."""
        seen = set()
        for coeffs in product(self.ctx.elements(), repeat=self.r + 1):
            if all(c == 0 for c in coeffs):
                continue
            v = [0] * (self.n + 1)
            for c, row in zip(coeffs, self.basis):
                if c:
                    for j, a in enumerate(row):
                        if a:
                            v[j] = self.ctx.add(v[j], self.ctx.mul(c, a))
            pt = ProjPoint.normalize(self.ctx, v)
            if pt.coords not in seen:
                seen.add(pt.coords)
                yield pt


def gaussian_binomial(order: int, n: int, k: int) -> int:
    num = den = 1
    for i in range(k):
        num *= order ** (n - i) - 1
        den *= order ** (k - i) - 1
    assert num % den == 0
    return num // den


def subspace_count(order: int, n: int, r: int) -> int:
    """Number of r-planes in P^n over a field with `order` elements."""
    return gaussian_binomial(order, n + 1, r + 1)


def enumerate_subspaces(ctx: FieldCtx, n: int, r: int):
    """All r-planes of P^n(F) via RREF pivot patterns, each exactly once."""
    if subspace_count(ctx.order, n, r) > SUBSPACE_ENUM_CAP:
        raise RangeExceeded("too many subspaces")
    k = r + 1
    for pivots in combinations(range(n + 1), k):
        free_pos = _free_positions(pivots, n, k)
        for vals in product(ctx.elements(), repeat=len(free_pos)):
            rows = [[0] * (n + 1) for _ in range(k)]
            for i, p in enumerate(pivots):
                rows[i][p] = 1
            for (i, j), v in zip(free_pos, vals):
                rows[i][j] = v
            yield ProjSubspace(ctx, n, r, tuple(tuple(row) for row in rows))


def _free_positions(pivots, n, k):
    pivot_set = set(pivots)
    out = []
    for i in range(k):
        for j in range(pivots[i] + 1, n + 1):
            if j not in pivot_set:
                out.append((i, j))
    return out


def _subspace_blocks(ctx: FieldCtx, n: int, k: int, chunk: int = 1 << 17):
    """Vectorized RREF bases, shape (rows, k, n+1), per pivot pattern."""
    N = ctx.order
    for pivots in combinations(range(n + 1), k):
        free_pos = _free_positions(pivots, n, k)
        nf = len(free_pos)
        total = N**nf
        for start in range(0, total, chunk):
            stop = min(start + chunk, total)
            r_idx = np.arange(start, stop, dtype=np.int64)
            block = np.zeros((stop - start, k, n + 1), dtype=np.int64)
            for i, p in enumerate(pivots):
                block[:, i, p] = 1
            for pos, (i, j) in enumerate(free_pos):
                digit = (r_idx // N ** (nf - 1 - pos)) % N
                block[:, i, j] = digit
            yield block


def _isotropy_mask(f: QBicForm, block: np.ndarray) -> np.ndarray:
    """True where all (r+1)^2 Gram pairings of the basis rows vanish."""
    ctx, q, B = f.ctx, f.q, f.gram
    k = block.shape[1]
    n1 = block.shape[2]
    blockq = bulk.vfrob(ctx, block, q, 1)
    ok = np.ones(block.shape[0], dtype=bool)
    for a in range(k):
        # row_a^(q) . B, computed once per a
        rowB = []
        for j in range(n1):
            acc = None
            for i in range(n1):
                b = B.data[i][j]
                if b == 0:
                    continue
                term = bulk.vscale(ctx, blockq[:, a, i], b)
                acc = term if acc is None else bulk.vadd(ctx, acc, term)
            rowB.append(acc)
        for b_ in range(k):
            acc = None
            for j in range(n1):
                if rowB[j] is None:
                    continue
                term = bulk.vmul(ctx, rowB[j], block[:, b_, j])
                acc = term if acc is None else bulk.vadd(ctx, acc, term)
            if acc is not None:
                ok &= acc == 0
    return ok


def is_isotropic_subspace(f: QBicForm, S: ProjSubspace) -> bool:
    """True iff the restriction of the form to S is the zero Gram."""
    rows = MatrixGF(f.ctx, [list(r) for r in S.basis])
    G = rows.frobenius_twist(f.q).matmul(f.gram).matmul(rows.transpose())
    return G.is_zero()


def count_isotropic(f: QBicForm, r: int, m: int = 1) -> int:
    """Number of GF(q^(2m))-rational r-planes contained in X."""
    fm = form_over_extension(f, m)
    n = fm.dim - 1
    if subspace_count(fm.ctx.order, n, r) > SUBSPACE_ENUM_CAP:
        raise RangeExceeded("subspace enumeration exceeds the cap")
    count = 0
    for block in _subspace_blocks(fm.ctx, n, r + 1):
        count += int(np.count_nonzero(_isotropy_mask(fm, block)))
    return count


def isotropic_subspaces(f: QBicForm, r: int, m: int = 1) -> list[ProjSubspace]:
    """Materialized list of the isotropic r-planes over GF(q^(2m))."""
    fm = form_over_extension(f, m)
    n = fm.dim - 1
    if subspace_count(fm.ctx.order, n, r) > SUBSPACE_ENUM_CAP:
        raise RangeExceeded("subspace enumeration exceeds the cap")
    out = []
    for block in _subspace_blocks(fm.ctx, n, r + 1):
        mask = _isotropy_mask(fm, block)
        for row in block[mask]:
            out.append(ProjSubspace(fm.ctx, n, r, tuple(tuple(int(x) for x in rr) for rr in row)))
    return out


def lines_through_point(f: QBicForm, pt, m: int = 1) -> list[ProjSubspace]:
    """All GF(q^(2m))-rational lines of X through the given X-point."""
    fm = form_over_extension(f, m)
    n = fm.dim - 1
    if projective_count(fm.ctx.order, n) > POINT_ENUM_CAP:
        raise RangeExceeded("point enumeration exceeds the cap")
    v = [int(c) for c in pt]
    if not on_hypersurface(fm, v):
        raise QbicError("base point does not lie on the hypersurface")
    vspace = Subspace.from_vectors(fm.ctx, n + 1, [v])
    seen = set()
    out = []
    for other in enumerate_points(fm.ctx, n):
        w = list(other.coords)
        if vspace.contains(w):
            continue
        span = Subspace.from_vectors(fm.ctx, n + 1, [v, w])
        if span.basis in seen:
            continue
        seen.add(span.basis)
        cand = ProjSubspace(fm.ctx, n, 1, span.basis)
        if is_isotropic_subspace(fm, cand):
            out.append(cand)
    return out


def fano_tangent_dim(f: QBicForm, S: ProjSubspace) -> int:
    """Dimension of the space of first-order deformations of S inside X.

    Unknowns are maps U -> V/U; the q-power twist kills first-slot
    variation, so the conditions are u_i^(q)^T B (N u_j) = 0 for basis
    rows u_i, u_j.  The system decouples over j, each block sharing the
    coefficient matrix (u_i^(q)^T B restricted to a complement of U).
    """
    if not is_isotropic_subspace(f, S):
        raise QbicError("tangent dimension is defined for isotropic subspaces")
    ctx, q = f.ctx, f.q
    rows = MatrixGF(ctx, [list(r) for r in S.basis])
    k = rows.rows
    pivots = [next(i for i, a in enumerate(row) if a) for row in S.basis]
    free_cols = [j for j in range(f.dim) if j not in pivots]
    C = rows.frobenius_twist(q).matmul(f.gram)
    Cfree = MatrixGF(ctx, [[C.data[i][j] for j in free_cols] for i in range(k)])
    return k * (len(free_cols) - Cfree.rank())


def line_count_report(f: QBicForm, m: int = 1) -> dict:
    """Deterministic incidence report for the lines of X over GF(q^(2m))."""
    fm = form_over_extension(f, m)
    lines = isotropic_subspaces(f, 1, m)
    pts = [pt for pt in enumerate_points(fm.ctx, fm.dim - 1) if on_hypersurface(fm, pt)]
    per_point = {pt.coords: 0 for pt in pts}
    for line in lines:
        for pt in line.points():
            per_point[pt.coords] += 1
    histogram: dict[int, int] = {}
    for cnt in per_point.values():
        histogram[cnt] = histogram.get(cnt, 0) + 1
    singular = [pt for pt in pts if all(
        c == 0 for c in fm.gram.transpose().matvec([fm.ctx.frob(c, fm.q, 1) for c in pt])
    )]
    singular_incidence = {
        "".join(str(c) for c in pt.coords): per_point[pt.coords] for pt in singular
    }
    return {
        "set_theoretic": True,
        "extension": m,
        "type": classify(f).format(),
        "total_lines": len(lines),
        "points_on_hypersurface": len(pts),
        "lines_per_point_histogram": {str(k): v for k, v in sorted(histogram.items())},
        "singular_point_line_counts": dict(sorted(singular_incidence.items())),
    }
