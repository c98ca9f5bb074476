from fractions import Fraction

import pytest

from superh.superalgebra import SuperPolynomial as SP, monomial_basis, render
from superh.diffops import (
    check_sl2,
    euler,
    euler_b,
    euler_f,
    generator_commutator,
    generator_pairs,
    generator_vector_field,
    killing_check,
    laplace_beltrami,
    matrix_on_degree,
    metric,
    nabla2,
    nabla2_from_metric,
    osp_generator,
    partial_vector_field,
    poly_to_vec,
    r2,
    r2_from_metric,
    vec_to_poly,
)
from superh.linalg import Subspace

SMALL_GRID = [(1, 0), (2, 0), (1, 1), (2, 1), (3, 1), (0, 1), (0, 2), (2, 2)]


def test_metric_shape():
    met = metric(2, 1)
    assert met.entry(1, 1) == 1 and met.entry(2, 2) == 1
    assert met.entry(3, 4) == Fraction(-1, 2) and met.entry(4, 3) == Fraction(1, 2)
    assert met.inv_entry(3, 4) == 2 and met.inv_entry(4, 3) == -2


def test_r2_examples():
    assert r2(1, 0) == SP.x(1, 2)
    assert r2(0, 1) == -(SP.xg(1) * SP.xg(2))
    assert r2(2, 1) == SP.x(1, 2) + SP.x(2, 2) - SP.xg(1) * SP.xg(2)


def test_r2_agrees_with_metric_construction():
    for (m, n) in SMALL_GRID:
        assert r2(m, n) == r2_from_metric(m, n), (m, n)


def test_nabla2_examples():
    assert nabla2(1, 0).apply(SP.x(1, 2)) == SP.constant(2)
    # -4 d/dxg1 d/dxg2 applied to xg1*xg2: inner derivative first
    assert nabla2(0, 1).apply(SP.xg(1) * SP.xg(2)) == SP.constant(4)


def test_nabla2_agrees_with_metric_construction():
    for (m, n) in SMALL_GRID:
        lap_a, lap_b = nabla2(m, n), nabla2_from_metric(m, n)
        for k in range(0, 5):
            for mono in monomial_basis(m, n, k):
                f = SP.monomial(mono)
                assert lap_a.apply(f) == lap_b.apply(f), (m, n, render(f))


def test_nabla_upper_raising_agrees():
    for (m, n) in [(2, 1), (1, 2), (3, 2)]:
        met = metric(m, n)
        for j in range(1, m + 2 * n + 1):
            a, b = met.nabla_upper(j), met.nabla_upper_by_raising(j)
            for mono in monomial_basis(m, n, 2):
                f = SP.monomial(mono)
                assert a.apply(f) == b.apply(f)


def test_nabla2_of_r2_is_twice_superdimension():
    for (m, n) in SMALL_GRID:
        M = m - 2 * n
        assert nabla2(m, n).apply(r2(m, n)) == SP.constant(2 * M), (m, n)


def test_euler_operators():
    f = SP.x(1) * SP.xg(1)
    assert euler(2, 1).apply(f) == f.scaled(2)
    assert euler_b(2).apply(SP.xg(1) * SP.xg(2)).is_zero()
    assert euler_f(1).apply(f) == f
    # eigenvalue k on arbitrary degree-k monomials
    for k in range(0, 5):
        for mono in monomial_basis(2, 2, k):
            f = SP.monomial(mono)
            assert euler(2, 2).apply(f) == f.scaled(k)


def test_osp_generator_examples():
    assert osp_generator(1, 2, 2, 1).apply(SP.x(1)) == -SP.x(2)
    # the mixed generator reproduces 2 x_i d/dxg(2j) - xg(2j-1) d/dx_i
    for (m, n) in [(1, 1), (2, 1), (2, 2)]:
        L = osp_generator(1, m + 1, m, n)
        for k in range(0, 4):
            for mono in monomial_basis(m, n, k):
                f = SP.monomial(mono)
                explicit = SP.x(1).scaled(2) * f.dxg(2) - SP.xg(1) * f.dx(1)
                assert L.apply(f) == explicit, (m, n, render(f))


def test_generators_annihilate_r2():
    for (m, n) in [(2, 1), (3, 1), (2, 2)]:
        R2 = r2(m, n)
        for (i, j) in generator_pairs(m, n):
            assert osp_generator(i, j, m, n).apply(R2).is_zero(), (m, n, i, j)


def test_generator_index_errors():
    with pytest.raises(IndexError):
        osp_generator(0, 1, 2, 1)
    with pytest.raises(IndexError):
        osp_generator(1, 5, 2, 1)


def test_sl2_relations():
    for (m, n, k_max) in [(1, 0, 4), (2, 1, 6), (0, 2, 4)]:
        rep = check_sl2(m, n, k_max)
        assert rep.passed, (m, n, rep.failures[:2])


def test_sl2_requires_kmax():
    with pytest.raises(ValueError):
        check_sl2(2, 1, 1)


def test_laplace_beltrami_forms_agree():
    for (m, n) in [(1, 1), (2, 1), (3, 1), (2, 2), (2, 0), (0, 2)]:
        form_a, form_b = laplace_beltrami(m, n)
        for k in range(0, 4):
            for mono in monomial_basis(m, n, k):
                f = SP.monomial(mono)
                assert form_a.apply(f) == form_b.apply(f), (m, n, render(f))


def test_laplace_beltrami_examples():
    form_a, _ = laplace_beltrami(2, 1)
    assert form_a.apply(SP.one()).is_zero()
    # M = 0 at (2|2): R^2 is harmonic there and E R^2 = 2 R^2, so LB R^2 = 0
    assert form_a.apply(r2(2, 1)).is_zero()


def test_generators_commute_with_sl2_realization():
    for (m, n) in [(2, 1), (1, 1)]:
        lap = nabla2(m, n)
        R2 = r2(m, n)
        E = euler(m, n)
        for (i, j) in generator_pairs(m, n):
            L = osp_generator(i, j, m, n)
            for k in range(0, 4):
                for mono in monomial_basis(m, n, k):
                    f = SP.monomial(mono)
                    assert lap.apply(L.apply(f)) == L.apply(lap.apply(f))
                    assert R2 * L.apply(f) == L.apply(R2 * f)
                    assert E.apply(L.apply(f)) == L.apply(E.apply(f))


def _flatten(cols, dim):
    vec = {}
    for c, col in enumerate(cols):
        for r, x in col.items():
            vec[c * dim + r] = x
    return vec


def test_generator_commutators_close():
    """Graded commutators stay in the span of the generators."""
    for (m, n) in [(2, 1), (1, 1), (3, 1)]:
        dim1 = len(monomial_basis(m, n, 1))
        pairs = generator_pairs(m, n)
        span = Subspace.from_vectors(
            [_flatten(matrix_on_degree(osp_generator(i, j, m, n), m, n, 1), dim1)
             for (i, j) in pairs], dim1 * dim1)
        for (i, j) in pairs:
            for (k, l) in pairs:
                comm = generator_commutator(i, j, k, l, m, n)
                vec = _flatten(matrix_on_degree(comm, m, n, 1), dim1)
                assert span.contains(vec), (m, n, (i, j), (k, l))


def test_killing_examples():
    m, n = 2, 1
    assert killing_check(partial_vector_field(1, m, n), m, n)
    assert killing_check(partial_vector_field(3, m, n), m, n)
    for (i, j) in generator_pairs(m, n):
        assert killing_check(generator_vector_field(i, j, m, n), m, n), (i, j)
    # Euler-type field x1 d/dx1 is not Killing
    assert not killing_check({1: SP.x(1)}, m, n)


def test_killing_rejects_mixed_parity():
    with pytest.raises(ValueError):
        killing_check({1: SP.x(1) + SP.xg(1)}, 2, 1)
    with pytest.raises(ValueError):
        killing_check({1: SP.x(1), 3: SP.x(1)}, 2, 1)


def test_poly_vec_roundtrip():
    for mono in monomial_basis(2, 1, 3):
        f = SP.monomial(mono)
        v = poly_to_vec(f, 2, 1, 3)
        assert vec_to_poly(v, 2, 1, 3) == f
    with pytest.raises(ValueError):
        poly_to_vec(SP.x(1), 2, 1, 2)
