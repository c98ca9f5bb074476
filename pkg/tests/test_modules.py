from fractions import Fraction

import pytest

from superh.superalgebra import SuperPolynomial as SP
from superh.diffops import (
    generator_pairs,
    laplace_beltrami,
    nabla2,
    osp_generator,
    poly_to_vec,
    r2,
)
from superh.harmonic import decompose_Hk, dim_Hk, harmonic_basis, subspace_polys
from superh.linalg import Subspace
from superh.modules import (
    SpaceSpec,
    branching,
    branching_case,
    branching_explicit_check,
    decompose_simple,
    in_window,
    indecomposability_witness,
    is_irreducible,
    rep_space,
    simple_dim,
    submodule_closure,
    window_interval,
    window_submodule_check,
)


def test_space_spec_validation():
    with pytest.raises(ValueError):
        SpaceSpec("Qk", 2, 1, 2)
    with pytest.raises(ValueError):
        SpaceSpec("Hk", 0, 1, 2)


def test_rep_space_dimensions():
    assert rep_space(SpaceSpec("Hk", 3, 1, 2)).dim == 12
    assert rep_space(SpaceSpec("Pk", 2, 1, 2)).dim == 8
    assert rep_space(SpaceSpec("PkModR2", 2, 1, 2)).dim == 7
    assert rep_space(SpaceSpec("HkModSub", 2, 1, 2)).dim == 6


def test_generator_matrices_represent_action():
    rep = rep_space(SpaceSpec("Hk", 2, 1, 2))
    for (i, j) in rep.gen_pairs:
        mat = rep.generator_matrix(i, j)
        op = osp_generator(i, j, 2, 1)
        for c in range(rep.dim):
            basis_poly = rep.chart.lift({c: Fraction(1)})
            assert rep.chart.project(op.apply(basis_poly)) == mat[c]


def test_generator_matrices_commute_with_casimir():
    for spec in [SpaceSpec("Hk", 2, 1, 2), SpaceSpec("Hk", 3, 1, 2),
                 SpaceSpec("PkModR2", 2, 1, 2), SpaceSpec("HkModSub", 2, 1, 2)]:
        rep = rep_space(spec)
        form_a, _ = laplace_beltrami(rep.m, rep.n)
        cas = rep.operator_matrix(form_a)
        for (i, j) in rep.gen_pairs:
            gen = rep.generator_matrix(i, j)
            for c in range(rep.dim):
                # (cas . gen)(e_c) vs (gen . cas)(e_c)
                a = _apply_cols(cas, gen[c])
                b = _apply_cols(gen, cas[c])
                assert a == b, (spec, i, j, c)


def _apply_cols(cols, vec):
    out = {}
    for c, x in vec.items():
        if x:
            for r, y in cols[c].items():
                s = out.get(r, Fraction(0)) + x * y
                if s:
                    out[r] = s
                elif r in out:
                    del out[r]
    return out


def test_matrix_level_graded_commutators_close():
    rep = rep_space(SpaceSpec("Hk", 2, 1, 2))
    m, d = rep.m, rep.dim
    flat = []
    for (i, j) in rep.gen_pairs:
        flat.append(_flatten_cols(rep.generator_matrix(i, j), d))
    span = Subspace.from_vectors(flat, d * d)
    for (i, j) in rep.gen_pairs:
        for (k, l) in rep.gen_pairs:
            A = rep.generator_matrix(i, j)
            B = rep.generator_matrix(k, l)
            sign = ((1 if i > m else 0) + (1 if j > m else 0)) * \
                   ((1 if k > m else 0) + (1 if l > m else 0))
            ab = [_apply_cols(A, B[c]) for c in range(d)]
            ba = [_apply_cols(B, A[c]) for c in range(d)]
            s = Fraction(-1 if sign % 2 else 1)
            comm = [{r: ab[c].get(r, Fraction(0)) - s * ba[c].get(r, Fraction(0))
                     for r in set(ab[c]) | set(ba[c])} for c in range(d)]
            comm = [{r: x for r, x in col.items() if x} for col in comm]
            assert span.contains(_flatten_cols(comm, d))


def _flatten_cols(cols, d):
    out = {}
    for c, col in enumerate(cols):
        for r, x in col.items():
            out[c * d + r] = x
    return out


# -- closures ---------------------------------------------------------------------


def test_closure_of_invariant_vector():
    rep = rep_space(SpaceSpec("Hk", 2, 1, 2))
    seed = rep.coords_of_poly(r2(2, 1))
    closure = submodule_closure(rep, [seed])
    assert closure.dim == 1


def test_closure_of_full_basis_is_everything():
    rep = rep_space(SpaceSpec("Hk", 2, 1, 2))
    assert submodule_closure(rep, rep.basis_coords()).dim == rep.dim


def test_closure_from_any_seed_in_irreducible_module():
    rep = rep_space(SpaceSpec("Hk", 3, 1, 2))
    for v in rep.basis_coords():
        assert submodule_closure(rep, [v]).dim == rep.dim


# -- irreducibility ------------------------------------------------------------------


def test_irreducibility_spec_examples():
    for k in range(0, 5):
        assert is_irreducible(rep_space(SpaceSpec("Hk", 3, 1, k))), k
    assert not is_irreducible(rep_space(SpaceSpec("Hk", 2, 1, 2)))
    assert is_irreducible(rep_space(SpaceSpec("Hk", 2, 1, 3)))


def test_irreducibility_grid_small():
    for (m, n) in [(2, 1), (2, 2), (3, 1), (3, 2)]:
        for k in range(0, 5):
            expected = not in_window(m, n, k)
            assert is_irreducible(rep_space(SpaceSpec("Hk", m, n, k))) == expected


def test_pk_reducible_for_degree_two_and_up():
    assert is_irreducible(rep_space(SpaceSpec("Pk", 2, 1, 1)))
    assert not is_irreducible(rep_space(SpaceSpec("Pk", 2, 1, 2)))
    assert not is_irreducible(rep_space(SpaceSpec("Pk", 3, 1, 3)))


def test_quotient_isomorphism_outside_window():
    # away from the degenerate band PkModR2 and Hk have the same dimension
    for (m, n, k) in [(3, 1, 2), (2, 1, 3)]:
        assert (rep_space(SpaceSpec("PkModR2", m, n, k)).dim
                == rep_space(SpaceSpec("Hk", m, n, k)).dim)


def test_indecomposability_witnesses():
    assert indecomposability_witness(rep_space(SpaceSpec("Hk", 2, 1, 2))) == "verified"
    assert indecomposability_witness(rep_space(SpaceSpec("PkModR2", 2, 1, 2))) == "verified"
    assert indecomposability_witness(rep_space(SpaceSpec("Hk", 3, 1, 2))) == "verified"


# -- the degenerate band ---------------------------------------------------------------


def test_window_interval():
    assert window_interval(2, 1) == (2, 2)
    assert window_interval(2, 2) == (3, 4)
    assert window_interval(3, 1) is None
    assert in_window(2, 1, 2) and not in_window(2, 1, 3)


def test_window_checks():
    for (m, n, k) in [(2, 1, 2), (4, 2, 2), (2, 2, 3), (2, 2, 4)]:
        res = window_submodule_check(m, n, k)
        assert res.passed, (m, n, k, res.details)
    res = window_submodule_check(2, 1, 2)
    assert res.submodule_dim == 1 and res.quotient_dim == 6


def test_window_precondition():
    with pytest.raises(ValueError):
        window_submodule_check(3, 1, 2)


def test_eigenvalue_obstruction():
    """R^{2p} H_{k-2p} sits inside H_k exactly when p = k - 1 + M/2."""
    for (m, n) in [(2, 1), (3, 1), (2, 2)]:
        M = m - 2 * n
        for k in range(2, 6):
            for p in range(1, k // 2 + 1):
                hb = subspace_polys(harmonic_basis(m, n, k - 2 * p), m, n, k - 2 * p)
                r2p = r2(m, n) ** p
                lap = nabla2(m, n)
                included = all(lap.apply(r2p * h).is_zero() for h in hb)
                expected = (M % 2 == 0 and 2 * p == 2 * (k - 1) + M)
                assert included == expected, (m, n, k, p)


# -- simple dimensions and decompositions ------------------------------------------------


def test_simple_dim_examples():
    assert simple_dim(2, 1, 2) == 6
    assert simple_dim(3, 1, 2) == 12
    for (m, n) in [(2, 1), (3, 2), (4, 2)]:
        assert simple_dim(m, n, 0) == 1


def test_simple_dim_equals_quotient_dimension():
    for (m, n) in [(2, 1), (3, 1), (2, 2), (4, 2)]:
        for k in range(0, 5):
            assert simple_dim(m, n, k) == rep_space(SpaceSpec("HkModSub", m, n, k)).dim


def test_simple_dim_window_equals_difference():
    # the four-sum closed form subtracts exactly dim H_{2-M-k}
    for (m, n) in [(2, 1), (2, 2), (4, 2)]:
        M = m - 2 * n
        lo, hi = window_interval(m, n)
        for k in range(lo, hi + 1):
            assert simple_dim(m, n, k) == dim_Hk(m, n, k) - dim_Hk(m, n, 2 - M - k)


def test_decompose_simple_examples():
    pieces = decompose_simple(2, 1, 2)
    assert sorted((p.j, p.l, p.dim) for p in pieces) == [(0, 0, 2), (1, 0, 4)]
    assert sum(p.dim for p in pieces) == 6
    pieces = decompose_simple(3, 1, 2)
    assert sum(p.dim for p in pieces) == 12
    (piece,) = decompose_simple(3, 1, 0)
    assert piece.dim == 1


def test_decompose_simple_totals():
    for (m, n) in [(2, 1), (3, 1), (2, 2), (4, 2)]:
        for k in range(0, 6):
            assert sum(p.dim for p in decompose_simple(m, n, k)) == simple_dim(m, n, k)


def test_window_pieces_are_the_uncapped_remainder():
    # inside the band, the removed pieces have radial index >= k + M/2 - 1
    m, n, k = 2, 2, 3
    M = m - 2 * n
    removed = [(pc.l, pc.p, pc.q, pc.dim) for pc in decompose_Hk(m, n, k)
               if pc.l >= k + M // 2 - 1]
    assert sum(d for *_, d in removed) == dim_Hk(m, n, 2 - M - k)


# -- branching ----------------------------------------------------------------------------


def test_branching_cases():
    assert branching_case(4, 1, 3) == ("full", [0, 1, 2, 3])
    assert branching_case(2, 1, 2) == ("truncated", [1, 2])
    assert branching_case(3, 1, 3)[0] == "not_completely_reducible"
    assert branching_case(3, 1, 1) == ("full", [0, 1])
    assert branching_case(3, 2, 2) == ("full", [0, 1, 2])
    assert branching_case(3, 2, 3)[0] == "not_completely_reducible"


def test_branching_requires_two_bosonic_directions():
    with pytest.raises(ValueError):
        branching(1, 1, 2)


def test_branching_dimension_identities():
    for (m, n) in [(2, 1), (3, 1), (4, 1), (2, 2), (3, 2), (4, 2)]:
        for k in range(0, 6):
            b = branching(m, n, k)
            if b.case != "not_completely_reducible":
                assert b.dim_identity, (m, n, k, b)


def test_branching_spec_examples():
    b = branching(2, 1, 2)
    assert b.case == "truncated" and b.branch == [(1, 3), (2, 3)]
    assert sum(d for _, d in b.branch) == simple_dim(2, 1, 2) == 6
    b = branching(4, 1, 3)
    assert b.case == "full" and [l for l, _ in b.branch] == [0, 1, 2, 3]
    b = branching(3, 1, 3)
    assert b.case == "not_completely_reducible" and b.branch == []


def test_branching_explicit_small():
    assert branching_explicit_check(2, 1, 2) == "verified"
    assert branching_explicit_check(2, 1, 3) == "verified"
    assert branching_explicit_check(4, 1, 2) == "verified"
    assert branching_explicit_check(4, 2, 2) == "verified"


def test_quotient_charts_are_well_defined():
    # rep_space validates that generators preserve the divisor; a bogus divisor
    # must be rejected by the same machinery
    from superh.modules import RepSpace, _QuotientChart, _FullChart, _validate_rep
    m, n, k = 2, 1, 2
    bogus = Subspace.from_vectors([poly_to_vec(SP.x(1, 2), m, n, k)], 8)
    chart = _QuotientChart(_FullChart(m, n, k), bogus)
    rep = RepSpace(SpaceSpec("PkModR2", m, n, k), chart, generator_pairs(m, n))
    with pytest.raises(RuntimeError):
        _validate_rep(rep)
