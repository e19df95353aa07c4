import math
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ktower.intlin import (
    IntMatrix,
    determinant,
    integer_kernel,
    lattice_basis,
    lattice_contains,
    lattice_equal,
    matrix_from_json,
    matrix_to_json,
    minor_gcd_factors,
    snf,
    snf_with_inverses,
    solve_integral,
)


def reference_det(m: IntMatrix) -> int:
    # cofactor expansion, kept separate from the package's Bareiss routine
    n = m.rows
    if n == 0:
        return 1
    if n == 1:
        return m.entries[0][0]
    total = 0
    rest = list(range(1, n))
    for j in range(n):
        cols = [c for c in range(n) if c != j]
        sub = m.submatrix(rest, cols)
        sign = -1 if j % 2 else 1
        total += sign * m.entries[0][j] * reference_det(sub)
    return total


matrices = st.integers(0, 5).flatmap(
    lambda r: st.integers(0, 5).flatmap(
        lambda c: st.lists(
            st.lists(st.integers(-30, 30), min_size=c, max_size=c),
            min_size=r,
            max_size=r,
        ).map(lambda rows: IntMatrix.from_rows(rows, cols=c))
    )
)


class TestSmith:
    def test_known_values(self):
        assert snf(IntMatrix.from_rows([[2, 4], [6, 8]])).factors == (2, 4)
        assert snf(IntMatrix.identity(2)).factors == (1, 1)
        assert snf(IntMatrix.zero(3, 3)).factors == (0, 0, 0)
        assert snf(IntMatrix.from_rows([[6]])).factors == (6,)
        assert snf(IntMatrix.from_rows([[-6]])).factors == (6,)

    def test_zero_dimensional(self):
        for shape in [(0, 0), (0, 3), (3, 0)]:
            dec = snf(IntMatrix.zero(*shape))
            assert dec.factors == ()
            assert (dec.s.rows, dec.s.cols) == shape

    @settings(max_examples=200)
    @given(matrices)
    def test_decomposition_properties(self, a):
        dec = snf(a)
        assert dec.u @ a @ dec.v == dec.s
        assert abs(reference_det(dec.u)) == 1
        assert abs(reference_det(dec.v)) == 1
        fs = dec.factors
        assert len(fs) == min(a.rows, a.cols)
        assert all(f >= 0 for f in fs)
        nz = [f for f in fs if f]
        # nonzero factors first, each dividing the next
        assert list(fs[: len(nz)]) == nz
        assert all(nz[i + 1] % nz[i] == 0 for i in range(len(nz) - 1))
        # s is diagonal with exactly the factors on the diagonal
        for i in range(a.rows):
            for j in range(a.cols):
                expected = fs[i] if i == j else 0
                assert dec.s.entries[i][j] == expected

    @settings(max_examples=200)
    @given(matrices)
    def test_matches_minor_oracle(self, a):
        nz = [f for f in snf(a).factors if f]
        assert tuple(nz) == minor_gcd_factors(a)

    @settings(max_examples=100)
    @given(matrices)
    def test_tracked_inverses(self, a):
        full = snf_with_inverses(a)
        assert full.u @ full.u_inv == IntMatrix.identity(a.rows)
        assert full.v @ full.v_inv == IntMatrix.identity(a.cols)


class TestMinorOracle:
    def test_zero_matrix_has_no_factors(self):
        assert minor_gcd_factors(IntMatrix.zero(3, 3)) == ()

    def test_identity(self):
        assert minor_gcd_factors(IntMatrix.identity(2)) == (1, 1)

    def test_rejects_large_dimension(self):
        with pytest.raises(ValueError):
            minor_gcd_factors(IntMatrix.zero(7, 7))

    def test_rectangular(self):
        # 1x1 minor gcd is 2, 2x2 minor gcd is 8, so d_2 = 8 / 2 = 4
        a = IntMatrix.from_rows([[2, 0, 0], [0, 4, 0]])
        assert minor_gcd_factors(a) == (2, 4)
        assert [f for f in snf(a).factors if f] == [2, 4]


class TestDeterminant:
    @settings(max_examples=150)
    @given(
        st.integers(0, 5).flatmap(
            lambda n: st.lists(
                st.lists(st.integers(-20, 20), min_size=n, max_size=n),
                min_size=n,
                max_size=n,
            ).map(lambda rows: IntMatrix.from_rows(rows, cols=n))
        )
    )
    def test_against_cofactor_expansion(self, a):
        assert determinant(a) == reference_det(a)

    def test_product_of_snf_factors(self):
        a = IntMatrix.from_rows([[4, 2], [2, 4]])
        assert abs(determinant(a)) == math.prod(snf(a).factors)


class TestSolveIntegral:
    def test_basic(self):
        a = IntMatrix.from_rows([[2, 0], [0, 3]])
        x = solve_integral(a, IntMatrix.column([4, 9]))
        assert a @ x == IntMatrix.column([4, 9])

    def test_no_solution(self):
        a = IntMatrix.from_rows([[2]])
        assert solve_integral(a, IntMatrix.column([3])) is None

    def test_zero_columns(self):
        # empty lattice only contains zero
        a = IntMatrix.zero(2, 0)
        assert solve_integral(a, IntMatrix.column([0, 0])) is not None
        assert solve_integral(a, IntMatrix.column([1, 0])) is None

    def test_zero_rows(self):
        a = IntMatrix.zero(0, 3)
        x = solve_integral(a, IntMatrix.zero(0, 1))
        assert x is not None and x.rows == 3

    @settings(max_examples=150)
    @given(matrices, st.data())
    def test_solution_when_constructed(self, a, data):
        # build b = a @ w for a random integer w, so a solution must exist
        w_rows = [
            [data.draw(st.integers(-5, 5)) for _ in range(2)] for _ in range(a.cols)
        ]
        w = IntMatrix.from_rows(w_rows, cols=2)
        b = a @ w
        x = solve_integral(a, b)
        assert x is not None
        assert a @ x == b

    @settings(max_examples=150)
    @given(matrices, st.data())
    def test_none_means_unsolvable_modulo_primes(self, a, data):
        b_col = [data.draw(st.integers(-9, 9)) for _ in range(a.rows)]
        b = IntMatrix.column(b_col)
        x = solve_integral(a, b)
        if x is not None:
            assert a @ x == b


class TestLattices:
    def test_contains(self):
        gens = IntMatrix.from_rows([[2, 0], [0, 3]])
        assert lattice_contains(gens, IntMatrix.column([4, 3]))
        assert not lattice_contains(gens, IntMatrix.column([1, 0]))

    def test_equal_under_column_ops(self):
        a = IntMatrix.from_rows([[2, 0], [0, 3]])
        b = IntMatrix.from_rows([[2, 2], [3, 0]])
        assert lattice_equal(a, b)

    def test_kernel(self):
        a = IntMatrix.from_rows([[1, 2, 3]])
        k = integer_kernel(a)
        assert k.cols == 2
        assert (a @ k).is_zero()

    @settings(max_examples=100)
    @given(matrices)
    def test_lattice_basis_spans_same_lattice(self, a):
        basis = lattice_basis(a)
        if a.cols and basis.cols:
            assert lattice_equal(a, basis)
        rank = sum(1 for f in snf(a).factors if f)
        assert basis.cols == rank


class TestJson:
    def test_round_trip(self):
        a = IntMatrix.from_rows([[2, -4], [6, 10**40]])
        assert matrix_from_json(matrix_to_json(a)) == a

    def test_entries_are_decimal_strings(self):
        obj = matrix_to_json(IntMatrix.from_rows([[12345678901234567890]]))
        assert obj["entries"] == [["12345678901234567890"]]

    def test_accepts_plain_integers(self):
        obj = {"rows": 1, "cols": 2, "entries": [[1, "2"]]}
        assert matrix_from_json(obj) == IntMatrix.from_rows([[1, 2]])

    def test_rejects_ragged(self):
        with pytest.raises(ValueError):
            matrix_from_json({"rows": 1, "cols": 2, "entries": [[1]]})
