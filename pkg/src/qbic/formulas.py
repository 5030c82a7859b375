"""Closed-form invariants, two-row Schubert calculus, and zeta counts.

Everything here is exact integer arithmetic; divisions are asserted
exact.  The Schubert side works in the Chow ring of G(2,N) with two-row
partitions (a, b), N-2 >= a >= b >= 0, multiplication by sigma_1 given
by Pieri's rule.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, factorial

from .errors import QbicError


@dataclass(frozen=True)
class SchubertClass:
    """An integer combination of two-row Schubert classes on G(2,N)."""

    N: int
    coeffs: dict[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        cap = self.N - 2
        for (a, b), c in self.coeffs.items():
            if not (cap >= a >= b >= 0):
                raise QbicError(f"partition {(a, b)} not admissible on G(2,{self.N})")
        object.__setattr__(self, "coeffs", {k: v for k, v in self.coeffs.items() if v})

    @classmethod
    def sigma(cls, N: int, a: int, b: int = 0, coeff: int = 1) -> "SchubertClass":
        return cls(N, {(a, b): coeff})

    def add(self, other: "SchubertClass") -> "SchubertClass":
        if other.N != self.N:
            raise QbicError("Schubert classes on different Grassmannians")
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return SchubertClass(self.N, out)

    def scale(self, c: int) -> "SchubertClass":
        return SchubertClass(self.N, {k: c * v for k, v in self.coeffs.items()})

    def coefficient(self, a: int, b: int) -> int:
        return self.coeffs.get((a, b), 0)


def pieri(c: SchubertClass, k: int = 1) -> SchubertClass:
    """Multiply by sigma_1^k; partitions leaving the admissible range drop."""
    cap = c.N - 2
    cur = dict(c.coeffs)
    for _ in range(k):
        nxt: dict[tuple[int, int], int] = {}
        for (a, b), v in cur.items():
            if a + 1 <= cap:
                nxt[(a + 1, b)] = nxt.get((a + 1, b), 0) + v
            if b + 1 <= a:
                nxt[(a, b + 1)] = nxt.get((a, b + 1), 0) + v
        cur = nxt
    return SchubertClass(c.N, cur)


def grassmannian_degree(c: SchubertClass) -> int:
    """Coefficient of the point class sigma_{N-2,N-2}."""
    cap = c.N - 2
    for (a, b), v in c.coeffs.items():
        if v and (a, b) != (cap, cap):
            raise QbicError("class is not of top degree")
    return c.coefficient(cap, cap)


def grassmannian_plucker_degree(n: int) -> int:
    """deg of G(2,n) in the Pluecker embedding: binom(2n-4, n-1)/(n-2)."""
    val = comb(2 * n - 4, n - 1)
    assert val % (n - 2) == 0
    return val // (n - 2)


def fano_lines_class(q: int, N: int) -> SchubertClass:
    """Class of the scheme of lines of a q-bic in P^(N-1) on G(2,N)."""
    return SchubertClass(N, {(2, 2): (q + 1) * (q**3 + 1), (3, 1): q * (q + 1) ** 2})


def fano_plucker_degree_schubert(q: int, n: int) -> int:
    """Degree of the scheme of lines via Pieri multiplication on G(2,n+1)."""
    if n < 4:
        raise QbicError("needs n >= 4")
    return grassmannian_degree(pieri(fano_lines_class(q, n + 1), 2 * n - 6))


def fano_plucker_degree_closed(q: int, n: int) -> int:
    """Same degree by the closed form."""
    if n < 4:
        raise QbicError("needs n >= 4")
    pre = factorial(2 * n - 6)
    den = factorial(n - 1) * factorial(n - 3)
    val = pre * (q + 1) ** 2 * ((n - 1) * q**2 + (2 * n - 8) * q + (n - 1))
    assert val % den == 0
    return val // den


def fano_plucker_degree(q: int, n: int) -> int:
    """Pluecker degree of the scheme of lines; both routes must agree."""
    a = fano_plucker_degree_schubert(q, n)
    b = fano_plucker_degree_closed(q, n)
    if a != b:
        raise QbicError(f"Schubert and closed-form degrees disagree at (q={q}, n={n})")
    return a


# -- numerical invariants of the surface of lines on a threefold -------------


def chern_and_chi(q: int) -> tuple[int, int, int]:
    """(c1^2, c2, chi(O)) of the surface of lines on a smooth q-bic threefold."""
    c1sq = (q + 1) ** 2 * (q**2 + 1) * (2 * q - 3) ** 2
    c2 = (q + 1) ** 2 * (q**4 - 3 * q**3 + 4 * q**2 - 4 * q + 3)
    num = (q + 1) ** 2 * (5 * q**4 - 15 * q**3 + 17 * q**2 - 16 * q + 12)
    assert num % 12 == 0
    chi = num // 12
    assert 12 * chi == c1sq + c2
    return c1sq, c2, chi


def cohomology_dims(p: int) -> tuple[int, int, int]:
    """(h0, h1, h2) of the structure sheaf of the surface of lines, q = p prime."""
    for d in range(2, p):
        if p % d == 0:
            raise QbicError("q must be prime for the coherent cohomology dimensions")
    h0 = 1
    num1 = p * (p - 1) * (p**2 + 1)
    assert num1 % 2 == 0
    h1 = num1 // 2
    num2 = p * (p - 1) * (5 * p**4 - 2 * p**2 - 5 * p - 2)
    assert num2 % 12 == 0
    h2 = num2 // 12
    return h0, h1, h2


def betti_S(q: int) -> tuple[int, int, int, int, int]:
    """l-adic Betti numbers of the surface of lines."""
    b1 = q * (q - 1) * (q**2 + 1)
    b2 = (q**4 - q**3 + 1) * (q**2 + 1)
    return 1, b1, b2, b1, 1


@dataclass(frozen=True)
class ZetaSpec:
    """Frobenius eigenvalue data driving a point-count expansion."""

    q: int
    kind: str  # "hypersurface" or "fano-surface"
    n: int = 0
    sign: int = -1


def zeta_point_count_S(q: int, k: int) -> int:
    """#S(GF(q^(2k))) for the surface of lines, from its zeta function."""
    _, b1, b2, b3, _ = betti_S(q)
    return 1 + b2 * q ** (2 * k) + q ** (4 * k) - b1 * (-q) ** k - b3 * (-(q**3)) ** k


def middle_primitive_betti(q: int, n: int) -> int:
    """Rank of the primitive middle cohomology of a smooth q-bic (n-1)-fold."""
    num = q * (q**n - (-1) ** n)
    assert num % (q + 1) == 0
    return num // (q + 1)


def zeta_X_count(q: int, n: int, sign: int, k: int) -> int:
    """#X(GF(q^(2k))) for a smooth q-bic with middle eigenvalues sign*q^(n-1).

    The non-middle cohomology contributes the standard geometric series;
    the middle carries `middle_primitive_betti` eigenvalues all equal to
    sign * q^(n-1) over GF(q^2).
    """
    if sign not in (1, -1):
        raise QbicError("sign must be +1 or -1")
    base = sum(q ** (2 * i * k) for i in range(n))
    b = middle_primitive_betti(q, n)
    return base + (-1) ** (n - 1) * b * (sign * q ** (n - 1)) ** k


def determine_zeta_sign(q: int, n: int, count_m1: int) -> int:
    """The eigenvalue sign matching an exhaustive count over GF(q^2)."""
    for sign in (1, -1):
        if zeta_X_count(q, n, sign, 1) == count_m1:
            return sign
    raise QbicError(f"no eigenvalue sign reproduces the count {count_m1} at (q={q}, n={n})")


def binomial_identity_H0CF(p: int) -> bool:
    """(p^2+1) C(p,2) + C(p,3) == C(2p+1,4) - 4 C(p+1,4), exactly."""
    lhs = (p**2 + 1) * comb(p, 2) + comb(p, 3)
    rhs = comb(2 * p + 1, 4) - 4 * comb(p + 1, 4)
    return lhs == rhs


def hermitian_point_count(q: int, n: int) -> int:
    """Number of Hermitian points of a smooth q-bic (n-1)-fold."""
    num = (q ** (n + 1) - (-1) ** (n + 1)) * (q**n - (-1) ** n)
    assert num % (q**2 - 1) == 0
    return num // (q**2 - 1)


def maximal_hermitian_subspace_count(q: int, n: int) -> int:
    """Number of maximal isotropic Hermitian subspaces of a smooth q-bic."""
    dim_x = n - 1
    m = dim_x // 2
    if dim_x % 2 == 0:
        out = 1
        for i in range(m + 1):
            out *= q ** (2 * i + 1) + 1
    else:
        out = 1
        for i in range(m + 1):
            out *= q ** (2 * i + 3) + 1
    return out


def hermitian_count_formulas(q: int, n: int) -> tuple[int, int]:
    """(point count, maximal isotropic Hermitian subspace count)."""
    return hermitian_point_count(q, n), maximal_hermitian_subspace_count(q, n)
