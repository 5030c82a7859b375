import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qbic import MatrixGF, QbicError, Subspace, make_field, semilinear_kernel


def rand_matrix(ctx, rows, cols, rng):
    return MatrixGF(ctx, [[rng.randrange(ctx.order) for _ in range(cols)] for _ in range(rows)])


def test_kernel_of_identity(F4):
    assert MatrixGF.identity(F4, 3).kernel().dim == 0


def test_kernel_of_jordan_block(F4):
    N3 = MatrixGF(F4, [[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    K = N3.kernel()
    assert N3.rank() == 2
    assert K.dim == 1 and K.basis == ((1, 0, 0),)


def test_solve_jordan(F4):
    N2 = MatrixGF(F4, [[0, 1], [0, 0]])
    assert N2.solve([1, 0]) == [0, 1]
    assert N2.solve([0, 1]) is None


def test_kernel_vectors_annihilate(F9, rng):
    for _ in range(50):
        M = rand_matrix(F9, 3, 4, rng)
        for kb in M.kernel().basis:
            assert all(v == 0 for v in M.matvec(list(kb)))
        R, rank, _ = M.rref()
        assert rank == R.rank() == M.rank()


def test_subspace_lattice_basics(F4):
    S = Subspace.from_vectors(F4, 2, [[1, 0]])
    T = Subspace.from_vectors(F4, 2, [[0, 1]])
    Z = Subspace.zero(F4, 2)
    assert S.intersect(S) == S
    assert S.sum_(Z) == S
    assert S.intersect(T).dim == 0
    assert S.sum_(T).dim == 2


def test_modular_law_on_random_pairs(F9, rng):
    for _ in range(200):
        S = Subspace.from_vectors(F9, 4, [[rng.randrange(9) for _ in range(4)] for _ in range(rng.randrange(1, 4))])
        T = Subspace.from_vectors(F9, 4, [[rng.randrange(9) for _ in range(4)] for _ in range(rng.randrange(1, 4))])
        assert S.sum_(T).dim + S.intersect(T).dim == S.dim + T.dim


def test_contains_and_membership(F4):
    S = Subspace.from_vectors(F4, 3, [[1, 0, 1], [0, 1, 1]])
    assert S.contains([1, 1, 0])
    assert not S.contains([1, 1, 1])


def test_frobenius_twist_prime_field_fixed(F16):
    M = MatrixGF(F16, [[0, 1], [1, 0]])
    assert M.frobenius_twist(2).data == M.data


def test_frobenius_twist_roundtrip(F16, rng):
    M = rand_matrix(F16, 3, 3, rng)
    assert M.frobenius_twist(2, 1).frobenius_twist(2, -1).data == M.data


def test_det_of_twist_is_twist_of_det(F16, rng):
    for _ in range(30):
        M = rand_matrix(F16, 3, 3, rng)
        assert M.frobenius_twist(2).det() == F16.frob(M.det(), 2, 1)


def test_frobenius_preimage_full_and_coordinate(F16):
    full = Subspace.full(F16, 3)
    assert full.frobenius_preimage(2) == full
    e1 = Subspace.from_vectors(F16, 3, [[0, 1, 0]])
    assert e1.frobenius_preimage(2) == e1


def test_frobenius_preimage_membership_brute_force(F16, rng):
    q = 2
    for _ in range(10):
        S = Subspace.from_vectors(
            F16, 3, [[rng.randrange(16) for _ in range(3)] for _ in range(2)])
        P = S.frobenius_preimage(q)
        assert P.dim == S.dim
        for v in P.vectors():
            assert S.contains([F16.frob(c, q, 1) for c in v])
        # and the count matches: preimage has exactly |F|^dim vectors mapping in
        count = sum(1 for v in P.vectors())
        assert count == 16 ** P.dim


def test_frobenius_image_preimage_roundtrip(F16, rng):
    for _ in range(20):
        S = Subspace.from_vectors(
            F16, 4, [[rng.randrange(16) for _ in range(4)] for _ in range(2)])
        assert S.frobenius_image(2).frobenius_preimage(2) == S


def test_semilinear_identity_split(F4):
    I2 = MatrixGF.identity(F4, 2)
    basis, qk = semilinear_kernel(I2, I2, 1, 2)
    assert qk == 4 and qk ** len(basis) == 16
    # brute force: x = x^(q^2) over GF(4) holds for every vector
    for x in itertools.product(F4.elements(), repeat=2):
        assert [F4.frob(c, 2, 2) for c in x] == list(x)


def test_semilinear_zero_gives_full(F4):
    Z = MatrixGF.zeros(F4, 2, 2)
    basis, qk = semilinear_kernel(Z, Z, 1, 2)
    assert qk ** len(basis) == 16


def test_semilinear_vs_brute_force_gf16(F16, rng):
    q = 2
    counts_seen = set()
    for _ in range(15):
        while True:
            A = rand_matrix(F16, 2, 2, rng)
            if A.is_invertible():
                break
        C = A.frobenius_twist(q).transpose()
        basis, qk = semilinear_kernel(A, C, 1, 2)
        got = qk ** len(basis)
        brute = 0
        for x in itertools.product(F16.elements(), repeat=2):
            lhs = A.matvec(list(x))
            rhs = C.matvec([F16.frob(c, q, 2) for c in x])
            if lhs == rhs:
                brute += 1
        assert got == brute
        assert got in (1, 4, 16)
        counts_seen.add(got)
        # every returned vector satisfies the equation exactly
        for v in basis:
            assert A.matvec(list(v)) == C.matvec([F16.frob(c, q, 2) for c in v])


def test_semilinear_solution_set_is_subfield_closed(F16, rng):
    q = 2
    A = rand_matrix(F16, 2, 2, rng)
    C = rand_matrix(F16, 2, 2, rng)
    basis, qk = semilinear_kernel(A, C, 1, 2)
    sub = F16.subfield_codes(2)
    sols = set()
    for coeffs in itertools.product(sub, repeat=len(basis)):
        v = [0, 0]
        for c, b in zip(coeffs, basis):
            for j in range(2):
                v[j] = F16.add(v[j], F16.mul(c, b[j]))
        sols.add(tuple(v))
    assert len(sols) == qk ** len(basis)
    for u, w in itertools.product(list(sols)[:20], repeat=2):
        assert tuple(F16.add(a, b) for a, b in zip(u, w)) in sols
    for lam in sub:
        for u in list(sols)[:20]:
            assert tuple(F16.mul(lam, a) for a in u) in sols


def test_dimension_mismatch_errors(F4):
    A = MatrixGF(F4, [[1, 0]])
    B = MatrixGF(F4, [[1, 0]])
    with pytest.raises(QbicError):
        A.matmul(B)
    with pytest.raises(QbicError):
        semilinear_kernel(A, B, 1, 2)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(0, 8), min_size=9, max_size=9))
def test_rref_idempotent(entries):
    F9 = make_field(3, 2)
    M = MatrixGF(F9, [entries[:3], entries[3:6], entries[6:]])
    R, rank, piv = M.rref()
    R2, rank2, piv2 = R.rref()
    assert R.data == R2.data and rank == rank2 and piv == piv2
