import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import fraction_rank
from specdesign.exactalg import (ORACLE_MAX_ORDER, DimensionError, IntMatrix, IntPolynomial,
                                 block_matrix, char_poly, char_poly_oracle, poly_divides, rank)

X = IntPolynomial.x()


def square_matrices(max_n=6, lo=-3, hi=3):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n),
                           min_size=n, max_size=n))


def symmetric01(max_n=7):
    def build(n):
        return st.lists(st.booleans(), min_size=n * (n - 1) // 2,
                        max_size=n * (n - 1) // 2).map(lambda bits: _sym(n, bits))
    return st.integers(1, max_n).flatmap(build)


def _sym(n, bits):
    rows = [[0] * n for _ in range(n)]
    it = iter(bits)
    for i in range(n):
        for j in range(i + 1, n):
            rows[i][j] = rows[j][i] = int(next(it))
    return rows


polys = st.lists(st.integers(-20, 20), max_size=7).map(IntPolynomial)


class TestIntMatrix:
    def test_shape_checks(self):
        with pytest.raises(DimensionError):
            IntMatrix.from_rows([[1, 2], [3]])
        with pytest.raises(DimensionError):
            IntMatrix.identity(2) @ IntMatrix.ones(3, 1)
        with pytest.raises(DimensionError):
            IntMatrix.identity(2) + IntMatrix.identity(3)

    def test_product_and_transpose(self):
        a = IntMatrix.from_rows([[1, 2, 3], [4, 5, 6]])
        assert (a @ a.T).tolist() == [[14, 32], [32, 77]]
        assert a.T.T == a

    def test_block_matrix(self):
        I2, J = IntMatrix.identity(2), IntMatrix.ones(2, 1)
        m = block_matrix([[I2, J], [IntMatrix.zeros(1, 2), IntMatrix.ones(1, 1)]])
        assert m.tolist() == [[1, 0, 1], [0, 1, 1], [0, 0, 1]]

    def test_block_matrix_rejects_ragged(self):
        with pytest.raises(DimensionError):
            block_matrix([[IntMatrix.identity(2), IntMatrix.identity(3)]])


class TestIntPolynomial:
    def test_str(self):
        assert str(X ** 5 - 4 * X ** 3 + 3 * X) == "x^5-4x^3+3x"
        assert str(IntPolynomial()) == "0"
        assert str(-X + 1) == "-x+1"

    def test_json_round_trip_big(self):
        p = IntPolynomial((3 ** 80, -(2 ** 90), 1))
        assert IntPolynomial.from_json(p.to_json()) == p
        assert all(isinstance(c, str) for c in json.loads(p.to_json()))

    @given(polys, polys, polys)
    def test_ring_axioms(self, a, b, c):
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)
        assert a - a == IntPolynomial()

    @given(polys, polys.filter(lambda d: not d.is_zero()))
    def test_exact_division(self, q, d):
        p = q * d
        assert poly_divides(d, p)
        assert p // d == q

    def test_non_integral_quotient(self):
        assert not poly_divides(2 * X + 1, X + 1)
        assert (X + 1).divmod_exact(2 * X) is None
        with pytest.raises(ArithmeticError):
            (X ** 2 + 1) // (X + 1)

    def test_zero_divisor(self):
        with pytest.raises(ZeroDivisionError):
            poly_divides(IntPolynomial(), X)

    @given(polys, st.integers(-5, 5))
    def test_reflect_evaluates_at_minus_x(self, p, x):
        assert p.reflect()(x) == p(-x)


class TestCharPoly:
    @settings(max_examples=150)
    @given(square_matrices())
    def test_matches_laplace_oracle(self, rows):
        m = IntMatrix.from_rows(rows)
        assert char_poly(m) == char_poly_oracle(m)

    @given(symmetric01())
    def test_adjacency_invariants(self, rows):
        m = IntMatrix.from_rows(rows)
        p = char_poly(m)
        n = m.rows
        edges = sum(map(sum, rows)) // 2
        assert p.degree == n and p.leading() == 1
        assert p.coeff(n - 1) == 0
        if n >= 2:
            assert p.coeff(n - 2) == -edges

    def test_known_values(self):
        # path on 3 vertices: x^3 - 2x
        m = IntMatrix.from_rows([[0, 1, 0], [1, 0, 1], [0, 1, 0]])
        assert char_poly(m) == X ** 3 - 2 * X
        assert char_poly(IntMatrix.identity(3).scale(2)) == (X - IntPolynomial.const(2)) ** 3

    def test_non_square(self):
        with pytest.raises(DimensionError):
            char_poly(IntMatrix.ones(2, 3))

    def test_oracle_guard(self):
        with pytest.raises(ValueError):
            char_poly_oracle(IntMatrix.identity(ORACLE_MAX_ORDER + 1))


class TestRank:
    @given(st.integers(1, 5).flatmap(lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-4, 4), min_size=c, max_size=c),
                           min_size=r, max_size=r))))
    def test_matches_fraction_elimination(self, rows):
        assert rank(IntMatrix.from_rows(rows)) == fraction_rank(rows)

    def test_examples(self):
        assert rank(IntMatrix.ones(4)) == 1
        assert rank(IntMatrix.zeros(3)) == 0
        assert rank(IntMatrix.identity(5)) == 5
