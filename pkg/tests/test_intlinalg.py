from hypothesis import given, settings, strategies as st

from ngamma import intlinalg as la


small_matrices = st.integers(0, 4).flatmap(
    lambda m: st.integers(0, 4).flatmap(
        lambda n: st.lists(
            st.lists(st.integers(-9, 9), min_size=n, max_size=n),
            min_size=m, max_size=m,
        ).map(lambda rows: (rows, m, n))
    )
)


@given(small_matrices)
@settings(max_examples=200, deadline=None)
def test_snf_decomposition_identity(data):
    a, m, n = data
    sf = la.smith_normal_form(a, m, n)
    sat = la.mat_mul(la.mat_mul(sf.s, a, m), sf.t, n)
    assert sat == sf.d
    assert la.mat_mul(sf.s, sf.sinv, m) == la.identity(m)
    assert la.mat_mul(sf.t, sf.tinv, n) == la.identity(n)
    # Diagonal, nonnegative, divisibility chain.
    for i in range(m):
        for j in range(n):
            if i != j:
                assert sf.d[i][j] == 0
    for i in range(len(sf.diag) - 1):
        assert sf.diag[i] > 0 and sf.diag[i + 1] % sf.diag[i] == 0


def test_snf_textbook():
    sf = la.smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, 4, 16]], 3, 3)
    assert sf.diag == [2, 2, 156]


@given(small_matrices)
@settings(max_examples=150, deadline=None)
def test_kernel_basis_is_kernel(data):
    a, m, n = data
    basis = la.kernel_basis(a, m, n)
    for v in basis:
        assert la.mat_vec(a, v) == [0] * m


def test_solve_basic():
    a = [[2, 0], [0, 3]]
    assert la.solve(a, [4, 9], 2, 2) == [2, 3]
    assert la.solve(a, [1, 0], 2, 2) is None
    assert la.solve([[2, 4]], [6, ], 1, 2) is not None


@given(small_matrices, st.lists(st.integers(-5, 5), min_size=0, max_size=4))
@settings(max_examples=150, deadline=None)
def test_solve_verifies(data, xs):
    a, m, n = data
    x = (xs + [0] * n)[:n]
    b = la.mat_vec(a, x)
    sol = la.solve(a, b, m, n)
    assert sol is not None
    assert la.mat_vec(a, sol) == b


def test_lattice_basis_and_membership():
    basis = la.lattice_basis([[2, 0], [0, 3], [2, 3]], 2)
    assert la.in_lattice([2, 0], basis, 2)
    assert la.in_lattice([0, 3], basis, 2)
    assert la.in_lattice([4, 3], basis, 2)
    assert not la.in_lattice([1, 0], basis, 2)
    assert la.lattice_basis([], 3) == []
    assert not la.in_lattice([1, 0, 0], [], 3)
