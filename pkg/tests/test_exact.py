from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fuchsian_codes.errors import DomainError
from fuchsian_codes.exact import (
    QuadHalfInt, QuadMatrix, is_squarefree, mat_det, mat_eq_up_to_sign, mat_inv, mat_mul,
    quad_add, quad_conj, quad_mul, quad_norm, sign_key, to_complex,
)
from fuchsian_codes.fuchsian import catalog

ints = st.integers(-10**6, 10**6)


def elems(a):
    # Z[sqrt a] itself; half-integral entries only multiply closed inside group matrices
    return st.tuples(ints, ints).map(lambda t: QuadHalfInt.from_ints(t[0], t[1], a))


def words(D, max_len=12):
    F = catalog(D)
    letters = list(F.generators) + [g.inverse() for g in F.generators]
    return st.lists(st.sampled_from(letters), max_size=max_len)


def product(gs, a):
    M = QuadMatrix.identity(a)
    for g in gs:
        M = mat_mul(M, g.matrix)
    return M


class TestQuadHalfInt:
    def test_unit_times_conjugate(self):
        x = QuadHalfInt.from_ints(2, 1, 3)
        assert quad_mul(x, quad_conj(x)) == QuadHalfInt.from_int(1, 3)

    @pytest.mark.parametrize("x, y, p", [(1, 0, 3), (48, 7, 47), (170, 39, 19)])
    def test_norm_one(self, x, y, p):
        assert quad_norm(QuadHalfInt.from_ints(x, y, p)) == 1

    def test_norm_is_rational(self):
        assert quad_norm(QuadHalfInt(1, 1, 3)) == Fraction(-2, 4)

    def test_float_value(self):
        assert float(QuadHalfInt(1, 1, 3)) == pytest.approx(1.3660254037844386, abs=1e-15)

    def test_mismatched_radicand(self):
        with pytest.raises(DomainError):
            quad_add(QuadHalfInt(2, 0, 3), QuadHalfInt(2, 0, 2))

    def test_non_squarefree_radicand(self):
        assert not is_squarefree(12)
        x = QuadHalfInt(2, 0, 4)
        with pytest.raises(DomainError):
            QuadMatrix(x, x, x, x)

    @pytest.mark.parametrize("u, v", [(10**20 + 1, -(10**20)), (-7, 4), (3, -2)])
    def test_float_of_near_cancelling_entry(self, u, v):
        exact = Fraction(u * u - 3 * v * v, 4)  # value times its conjugate
        conj = u * 0.5 - v * 0.5 * 3 ** 0.5
        assert float(QuadHalfInt(u, v, 3)) == pytest.approx(float(exact) / conj, rel=1e-15)

    @settings(max_examples=200)
    @given(elems(3), elems(3), elems(3))
    def test_ring_laws(self, x, y, z):
        assert x + y == y + x
        assert x * y == y * x
        assert (x + y) + z == x + (y + z)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z

    @given(elems(3), elems(3))
    def test_norm_multiplicative(self, x, y):
        assert quad_norm(x * y) == quad_norm(x) * quad_norm(y)


class TestQuadMatrix:
    def test_inverse_of_identity(self):
        ident = QuadMatrix.identity(3)
        assert mat_inv(ident) == ident

    def test_g3_squared(self, g6):
        g3 = g6.generator(3).matrix
        sq = mat_mul(g3, g3)
        assert sq == -QuadMatrix.identity(3)
        assert mat_eq_up_to_sign(sq, QuadMatrix.identity(3))

    def test_to_complex(self, g6):
        assert to_complex(QuadMatrix.identity(3)) == (1.0, 0.0, 0.0, 1.0)
        assert to_complex(g6.generator(3).matrix) == (0.0, 1.0, -1.0, 0.0)
        assert to_complex(g6.generator(1).matrix)[0] == pytest.approx(1.3660254, abs=1e-7)

    def test_inverse_needs_det_one(self):
        A = QuadMatrix.from_halves(3, [(4, 0), (0, 0), (0, 0), (2, 0)])
        with pytest.raises(DomainError):
            mat_inv(A)

    def test_sign_key(self, g6):
        g1 = g6.generator(1).matrix
        assert sign_key(g1) == sign_key(-g1)
        assert sign_key(g1) != sign_key(g6.generator(2).matrix)

    @pytest.mark.parametrize("D", [6, 10, 15])
    @settings(max_examples=60, deadline=None)
    @given(data=st.data())
    def test_words_have_det_one_and_exact_inverse(self, D, data):
        a = catalog(D).a
        W = product(data.draw(words(D)), a)
        one = QuadMatrix.identity(a)
        assert mat_det(W) == one.e11
        assert mat_mul(W, mat_inv(W)) == one
        assert mat_mul(mat_inv(W), W) == one
        a11, a12, a21, a22 = to_complex(W)
        scale = max(1.0, abs(a11 * a22), abs(a12 * a21))
        assert abs(a11 * a22 - a12 * a21 - 1) < 1e-9 * scale
        if D == 6:
            assert abs(a11 * a22 - a12 * a21 - 1) < 1e-9
