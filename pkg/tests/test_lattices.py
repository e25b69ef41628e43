"""Integer matrices, Smith reduction, lattices, f.g. abelian groups."""

import pytest
from hypothesis import given, strategies as st

from fhodge.errors import MalformedInput
from fhodge.lattices import (
    FgAbGroup,
    IntMatrix,
    LatticeMap,
    cokernel_lattice_map,
    factor_through_cokernel,
    factor_through_kernel,
    free_group,
    hnf_rows,
    int_kernel,
    int_kernel_of_k_matrix,
    int_solve,
    integer_points,
    kernel_lattice_map,
    lattice_map_inverse,
    saturate_columns,
    smith_normal_form,
    snf_diagonal,
)
from fhodge.linalg import Matrix, Subspace

from conftest import sc

int_matrices = st.integers(1, 4).flatmap(
    lambda n: st.integers(1, 4).flatmap(
        lambda m: st.lists(
            st.lists(st.integers(-30, 30), min_size=m, max_size=m),
            min_size=n,
            max_size=n,
        ).map(lambda rows: IntMatrix(rows, m))
    )
)


def _is_unimodular(u):
    d = 1
    rows = [list(r) for r in u.rows]
    n = len(rows)
    # integer determinant by fraction-free elimination on a copy
    from fractions import Fraction

    frows = [[Fraction(x) for x in r] for r in rows]
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if frows[i][c]), None)
        if piv is None:
            return False
        if piv != c:
            frows[c], frows[piv] = frows[piv], frows[c]
            det = -det
        det *= frows[c][c]
        for i in range(c + 1, n):
            f = frows[i][c] / frows[c][c]
            frows[i] = [a - f * b for a, b in zip(frows[i], frows[c])]
    return abs(det) == 1


# diagonals cross-checked against sympy's smith_normal_form
@pytest.mark.parametrize(
    "rows,diag",
    [
        ([[2, 4], [4, 6]], (2, 2)),
        ([[1, 2], [3, 4]], (1, 2)),
        ([[6, 4], [4, 2], [2, 2]], (2, 2)),
        ([[0, 0], [0, 0]], ()),
        ([[2, 0], [0, 6]], (2, 6)),
    ],
)
def test_snf_oracles(rows, diag):
    a = IntMatrix(rows, len(rows[0]))
    assert snf_diagonal(a) == diag


def test_snf_regression_large_entries():
    # this matrix made a naive single-pivot reduction blow up; the diagonal
    # is cross-checked against sympy
    rows = [
        (0, 62928, 125856, -18566, -91906, -157034),
        (0, 12496, 24992, -5322, 4970, 39786),
        (0, 58504, 117008, 62784, -64432, -18364),
        (0, -2282, -4564, -778, -8216, 4366),
    ]
    a = IntMatrix([list(r) for r in rows], 6)
    assert snf_diagonal(a) == (2, 643138, 1286276, 2572552)


@given(int_matrices)
def test_snf_properties(a):
    res = smith_normal_form(a)
    assert res.u * a * res.v == res.d
    assert res.u * res.u_inv == IntMatrix.identity(a.nrows)
    assert res.v * res.v_inv == IntMatrix.identity(a.ncols)
    assert _is_unimodular(res.u) and _is_unimodular(res.v)
    diag = snf_diagonal(a)
    assert all(x >= 0 for x in diag)
    for x, y in zip(diag, diag[1:]):
        assert (x == 0 and y == 0) or (x != 0 and y % x == 0)


@given(int_matrices)
def test_int_kernel_generates_all_solutions(a):
    ker = int_kernel(a)
    for v in ker:
        assert all(x == 0 for x in a.apply(v))


def test_hnf_rows_oracle():
    basis = hnf_rows([(2, 4), (0, 2)], 2)
    assert basis == ((2, 0), (0, 2))
    assert hnf_rows([], 3) == ()


def test_int_solve():
    a = IntMatrix([[2, 0], [0, 3]], 2)
    assert int_solve(a, (4, 9)) == (2, 3)
    assert int_solve(a, (1, 0)) is None


def test_saturation():
    sat = saturate_columns(IntMatrix([[2], [4]], 1))
    assert sat == ((1, 2),)


def test_integer_points_oracle():
    s = Subspace.span(2, [(sc(1, 0, 2), sc(1, 0, 2))])
    pts = integer_points(s)
    assert pts == ((1, 1),)
    assert integer_points(Subspace.zero(3)) == ()


def test_int_kernel_of_k_matrix():
    m = Matrix([[sc(1, 0, 2), sc(1, 0, 3)]], 2)
    ker = int_kernel_of_k_matrix(m)
    assert len(ker) == 1
    v = ker[0]
    assert sc(v[0], 0, 2) + sc(v[1], 0, 3) == sc(0)


def test_fg_ab_group_invariants():
    g = free_group(2)
    rel = IntMatrix([[2, 0], [0, 6]], 2)
    cok = cokernel_lattice_map(LatticeMap(free_group(2), g, rel))
    assert cok.group.rank == 0
    assert tuple(cok.group.torsion) == (2, 6)


def test_lattice_map_kernel_cokernel_universal():
    f = LatticeMap(free_group(2), free_group(2), IntMatrix([[2, 2], [2, 2]], 2))
    ker = kernel_lattice_map(f)
    assert ker.group.rank == 1
    assert f.compose(ker.embed).matrix.is_zero()
    # a map killed by f factors through the kernel
    g = LatticeMap(free_group(1), free_group(2), IntMatrix([[1], [-1]], 1))
    chi = factor_through_kernel(ker, g)
    assert chi is not None and ker.embed.compose(chi) == g
    cok = cokernel_lattice_map(f)
    assert cok.project.compose(f).matrix.is_zero()
    # a map killing the image factors through the cokernel
    h = LatticeMap(free_group(2), free_group(1), IntMatrix([[1, -1]], 2))
    chi2 = factor_through_cokernel(cok, f, h)
    assert chi2 is not None and chi2.compose(cok.project) == h


def test_lattice_map_inverse():
    u = LatticeMap(free_group(2), free_group(2), IntMatrix([[1, 1], [0, 1]], 2))
    inv = lattice_map_inverse(u)
    assert inv is not None and u.compose(inv) == LatticeMap.identity(free_group(2))
    non = LatticeMap(free_group(2), free_group(2), IntMatrix([[2, 0], [0, 1]], 2))
    assert lattice_map_inverse(non) is None


def test_int_matrix_validation():
    with pytest.raises(MalformedInput):
        IntMatrix([[1], [1, 2]])
