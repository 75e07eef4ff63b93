"""Arithmetic layer: field axioms, polynomial canonical form, bidegrees,
matrix composition."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bigraded.ring import (
    FreeModule,
    Matrix,
    NotBihomogeneousError,
    Polynomial,
    Ring,
    ShapeMismatchError,
    Vector,
    bidegree_of,
    inv_mod,
    is_prime,
    mono_key,
    monomials_of_degree,
    parse_polynomial,
)

R22 = Ring(32003, 2, 2)
R11 = Ring(32003, 1, 1)


def poly(text, ring=R22):
    return parse_polynomial(ring, text)


class TestField:
    @pytest.mark.parametrize("p", [2, 3, 5, 7])
    def test_axioms_exhaustive(self, p):
        # full addition/multiplication tables of Z/p
        for a in range(p):
            for b in range(p):
                assert (a + b) % p == (b + a) % p
                assert (a * b) % p == (b * a) % p
                for c in range(p):
                    assert ((a + b) + c) % p == (a + (b + c)) % p
                    assert ((a * b) * c) % p == (a * (b * c)) % p
                    assert (a * (b + c)) % p == (a * b + a * c) % p
        for a in range(1, p):
            assert a * inv_mod(a, p) % p == 1

    def test_nonprime_rejected(self):
        with pytest.raises(ValueError):
            Ring(6, 1, 1)
        assert is_prime(32003)


class TestPolynomial:
    def test_product_example(self):
        assert poly("x1*y1") * poly("x1") == poly("x1^2*y1")
        assert (poly("x1*y1") * poly("x1")).bidegree() == (2, 1)

    def test_multiplicative_identity(self):
        f = poly("3*x1^2*y2 - x2*y1")
        assert f * R22.one() == f

    def test_difference_of_squares(self):
        assert poly("x1 + y1") * poly("x1 - y1") == poly("x1^2 - y1^2")

    def test_parse_render_roundtrip(self):
        f = poly("3*x1^2*y2 - x2*y1")
        assert poly(str(f)) == f

    def test_no_zero_coefficients_stored(self):
        f = poly("x1") - poly("x1")
        assert f.is_zero and f.terms == ()

    def test_not_bihomogeneous(self):
        with pytest.raises(NotBihomogeneousError):
            poly("x1 + y1").bidegree()

    def test_parse_errors(self):
        from bigraded.ring import PolynomialParseError

        with pytest.raises(PolynomialParseError):
            poly("x3")  # out of range
        with pytest.raises(PolynomialParseError):
            poly("x1 +")

    def test_canonical_order_is_total(self):
        monos = list(monomials_of_degree(4, 3))
        keys = [mono_key(e) for e in monos]
        assert len(set(keys)) == len(keys)


def small_polys(ring=R22, max_terms=4):
    monos = st.tuples(*[st.integers(0, 2) for _ in range(ring.nvars)])
    term = st.tuples(monos, st.integers(1, ring.p - 1))
    return st.lists(term, max_size=max_terms).map(lambda ts: Polynomial(ring, dict(ts)))


@given(small_polys(), small_polys(), small_polys())
@settings(max_examples=60, deadline=None)
def test_ring_axioms_random(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f + g) * h == f * h + g * h
    assert (f * g) * h == f * (g * h)


@given(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2), st.integers(0, 2))
@settings(max_examples=30, deadline=None)
def test_bidegree_additive(a, b, c, d):
    f = Polynomial(R22, {(a, 0, b, 0): 1})
    g = Polynomial(R22, {(0, c, 0, d): 5})
    assert (f * g).bidegree() == (a + c, b + d)


class TestVectorsMatrices:
    def test_twisted_basis_degree(self):
        F = FreeModule(R11, ((1, 0),))
        assert bidegree_of(F.basis_vector(0)) == (1, 0)

    def test_vector_degree_with_twists(self):
        F = FreeModule(R22, ((0, 1), (1, 0)))
        v = F.basis_vector(0).mul_poly(poly("x1")) + F.basis_vector(1).mul_poly(poly("y1"))
        assert bidegree_of(v) == (1, 1)

    def test_mixed_degree_vector_rejected(self):
        F = FreeModule(R22, ((0, 0),))
        v = F.basis_vector(0).mul_poly(poly("x1")) + F.basis_vector(0)
        with pytest.raises(NotBihomogeneousError):
            v.bidegree()

    def test_identity_compose(self):
        F = FreeModule(R22, ((0, 0), (1, 1)))
        G = FreeModule(R22, ((1, 0),))
        f = Matrix.from_columns(F, [F.basis_vector(0).mul_poly(poly("x1"))])
        assert Matrix.identity(F).compose(f).columns == f.columns
        with pytest.raises(ShapeMismatchError):
            Matrix.identity(G).compose(f)

    def test_y1_squared_composite(self):
        S = FreeModule(R11, ((0, 0),))
        S1 = FreeModule(R11, ((0, 1),))
        S2 = FreeModule(R11, ((0, 2),))
        y1 = poly("y1", R11)
        f = Matrix(S1, S, (S.basis_vector(0).mul_poly(y1),))
        g = Matrix(S2, S1, (S1.basis_vector(0).mul_poly(y1),))
        comp = f.compose(g)
        assert comp.entry(0, 0) == poly("y1^2", R11)

    def test_koszul_d_squared_zero(self):
        # Koszul complex on (x1, x2): S(-2,0) -> S(-1,0)^2 -> S
        S = FreeModule(R22, ((0, 0),))
        S1 = FreeModule(R22, ((1, 0), (1, 0)))
        x1, x2 = poly("x1"), poly("x2")
        d1 = Matrix(S1, S, (S.basis_vector(0).mul_poly(x1), S.basis_vector(0).mul_poly(x2)))
        d2 = Matrix.from_columns(
            S1, [S1.basis_vector(0).mul_poly(x2) - S1.basis_vector(1).mul_poly(x1)]
        )
        assert d1.compose(d2).is_zero

    def test_column_degree_validation(self):
        S = FreeModule(R22, ((0, 0),))
        bad_src = FreeModule(R22, ((5, 5),))
        with pytest.raises(NotBihomogeneousError):
            Matrix(bad_src, S, (S.basis_vector(0).mul_poly(poly("x1")),))
