import itertools
import random

import pytest

from polyrad.errors import LinearityError, PreconditionError, UndecidableError
from polyrad.field import GF, QQ
from polyrad.gradspace import gradient_span_symbolic
from polyrad.linalg import Matrix
from polyrad.poly import MultiPoly, parse_poly
from polyrad.preserver import (VectorMap, check_pair, extract_quotient_map,
                               lifted_pair_condition, linearize_mod_radical,
                               preserves)
from polyrad.radical import compute_radical
from polyrad.cullis import (CullisContext, axb_map, equal_rows_map,
                            equal_rows_space, shift_map)
from helpers import random_vector

F3, F5 = GF(3), GF(5)


def poly5(text, nvars=2):
    return parse_poly(text, nvars, F5)


def remark_counterexample():
    """P = x1(x2+1) with the scaling pair that satisfies the condition
    although the second map does not preserve P."""
    P = poly5("x1*(x2 + 1)")
    phi = VectorMap.polymap([poly5("3*x1"), poly5("2*x2 + 1")])
    psi = VectorMap.polymap([poly5("3*x1"), poly5("2*x2")])
    return P, phi, psi


def cullis_odd_instance(with_nonlinear=True):
    """Cullis 4x3 over GF(5): T = X + omega(X) with omega linear into the
    equal-rows space, then distinct nonlinear perturbations into it."""
    ctx = CullisContext(4, 3, F5)
    nk = 12
    var = lambda i: MultiPoly.variable(F5, nk, i)
    omega = equal_rows_map(ctx, [var(ctx.var_index(0, 0)) + 2 * var(ctx.var_index(1, 2)),
                                 var(ctx.var_index(2, 1)),
                                 MultiPoly.zero(F5, nk)])
    tmap = axb_map(ctx, Matrix.identity(F5, 4), Matrix.identity(F5, 3)).add(omega)
    if not with_nonlinear:
        return ctx, tmap, tmap, tmap
    eta1 = equal_rows_map(ctx, [var(ctx.var_index(0, 0)) ** 2,
                                MultiPoly.zero(F5, nk),
                                MultiPoly.zero(F5, nk)])
    eta2 = equal_rows_map(ctx, [MultiPoly.zero(F5, nk),
                                MultiPoly.zero(F5, nk),
                                var(ctx.var_index(1, 1)) ** 2 + var(ctx.var_index(0, 2))])
    return ctx, tmap, tmap.add(eta1), tmap.add(eta2)


# -- VectorMap mechanics -------------------------------------------------------

def test_vectormap_forms_agree():
    lin = VectorMap.linear(Matrix(F3, [[1, 2], [0, 1]]))
    as_poly = lin.as_polymap()
    tab = lin.to_table()
    for point in itertools.product(F3.elements(), repeat=2):
        assert lin(point) == as_poly(point) == tab(point)


def test_vectormap_table_validation():
    with pytest.raises(ValueError):
        VectorMap.table(F3, 1, {(F3.zero(),): (F3.zero(),)})  # missing entries
    with pytest.raises(ValueError):
        VectorMap.table(QQ, 1, {})


def test_vectormap_compose_and_add():
    a = VectorMap.linear(Matrix(F5, [[2, 0], [0, 3]]))
    b = VectorMap.polymap([poly5("x2"), poly5("x1^2")])
    comp = a.compose(b)
    add = a.add(b)
    rng = random.Random(0)
    for _ in range(10):
        x = random_vector(rng, F5, 2)
        assert comp(x) == a(b(x))
        assert add(x) == tuple(p + q for p, q in zip(a(x), b(x)))


def test_identity_pair_holds():
    P = poly5("x1*x2")
    ident = VectorMap.identity(F5, 2)
    assert check_pair(P, ident, ident, mode="exhaustive").verdict == "holds"
    assert check_pair(P, ident, ident, mode="symbolic").verdict == "holds"


# -- the inhomogeneous counterexample ---------------------------------------------

def test_counterexample_exhaustive():
    P, phi, psi = remark_counterexample()
    result = check_pair(P, phi, psi, mode="exhaustive")
    assert result.verdict == "holds" and result.exact
    assert preserves(P, phi) is True
    assert preserves(P, psi) is False


def test_counterexample_symbolic_matches():
    P, phi, psi = remark_counterexample()
    result = check_pair(P, phi, psi, mode="symbolic")
    assert result.verdict == "holds" and result.exact


def test_failing_pair_witness():
    P = poly5("x1*x2")
    bad = VectorMap.polymap([poly5("x1"), poly5("x2 + x1^2")])
    for mode in ("exhaustive", "symbolic"):
        result = check_pair(P, bad, bad, mode=mode)
        assert result.verdict == "fails"
        x, y, lam = result.witness
        lhs = P.evaluate([a + lam * b for a, b in zip(x, y)])
        rhs = P.evaluate([a + lam * b for a, b in zip(bad(x), bad(y))])
        assert lhs != rhs


def test_sampled_mode():
    P = poly5("x1*x2")
    bad = VectorMap.polymap([poly5("x1"), poly5("x2 + x1^2")])
    result = check_pair(P, bad, bad, mode="sampled", samples=300, seed=7)
    assert result.verdict == "fails"
    ident = VectorMap.identity(F5, 2)
    result = check_pair(P, ident, ident, mode="sampled", samples=50)
    assert result.verdict == "sufficient-only-pass" and result.passed


def test_exhaustive_cap():
    P = poly5("x1*x2")
    ident = VectorMap.identity(F5, 2)
    with pytest.raises(UndecidableError):
        check_pair(P, ident, ident, mode="exhaustive", cap=100)


def test_preserves_scaling_counterexample():
    P = poly5("x1*x2")
    doubling = VectorMap.linear(Matrix(F5, [[2, 0], [0, 2]]))
    assert preserves(P, doubling) is False  # P scales by 4


def test_shift_maps_pass_preserves():
    ctx = CullisContext(4, 3, F5)
    P = ctx.as_poly
    for i, j in [(1, 1), (2, 2), (4, 3)]:
        assert preserves(P, shift_map(ctx, i, j), mode="symbolic")


def test_pair_check_implies_lambda_zero_slice():
    # every holding instance also passes the single-map check for phi
    P, phi, psi = remark_counterexample()
    assert check_pair(P, phi, psi, mode="exhaustive").passed
    assert preserves(P, phi, mode="exhaustive")


# -- frobenius power edge case ----------------------------------------------------

def test_frobenius_power_identity_pair():
    P = parse_poly("x1^3", 1, F3)
    ident = VectorMap.identity(F3, 1)
    result = check_pair(P, ident, ident, mode="symbolic")
    assert result.passed and result.verdict == "sufficient-only-pass"
    assert not result.exact
    with pytest.raises(PreconditionError) as err:
        extract_quotient_map(P, ident, ident)
    assert err.value.hypothesis == "deg(P) < |F|"


# -- linearization -----------------------------------------------------------------

def test_linearize_linear_map_with_zero_radical():
    P = poly5("x1*x2")
    psi = VectorMap.linear(Matrix(F5, [[2, 0], [0, 3]]))
    span = gradient_span_symbolic(P)
    tilde = linearize_mod_radical(P, psi, span)
    assert tilde.matrix == psi.matrix


def test_linearize_cullis_odd():
    ctx, tmap, phi, psi = cullis_odd_instance()
    P = ctx.as_poly
    report = compute_radical(P)
    tilde = linearize_mod_radical(P, psi, report.span)
    # kills the radical
    for v in report.radical.basis_vectors():
        assert all(x.is_zero() for x in tilde.matrix.apply(v))
    # agrees with psi modulo the radical
    rng = random.Random(3)
    proj = report.quotient.projection
    for _ in range(20):
        x = random_vector(rng, F5, 12)
        assert proj.apply(tilde(x)) == proj.apply(psi(x))


def test_linearize_rejects_violating_map():
    P = poly5("x1*x2")
    bad = VectorMap.polymap([poly5("x1"), poly5("x2 + x1^2")])
    span = gradient_span_symbolic(P)
    with pytest.raises(LinearityError):
        linearize_mod_radical(P, bad, span)


def test_linearize_table_map():
    P = parse_poly("x1*x2", 2, F3)
    psi = VectorMap.linear(Matrix(F3, [[2, 0], [0, 2]])).to_table()
    span = gradient_span_symbolic(P)
    tilde = linearize_mod_radical(P, psi, span)
    assert tilde.matrix == Matrix(F3, [[2, 0], [0, 2]])


# -- extraction ---------------------------------------------------------------------

def test_extract_even_axb():
    ctx = CullisContext(5, 3, F5)
    P = ctx.as_poly
    amap = axb_map(ctx, Matrix.identity(F5, 5), Matrix.identity(F5, 3))
    result = extract_quotient_map(P, amap, amap)
    assert result.verified.all_passed()
    # the radical is zero, so the quotient map is the map itself
    assert result.quotient_matrix == Matrix.identity(F5, 15)


def test_extract_cullis_odd_full():
    ctx, tmap, phi, psi = cullis_odd_instance()
    P = ctx.as_poly
    report = compute_radical(P)
    chk = check_pair(P, phi, psi, mode="symbolic")
    assert chk.verdict == "holds" and chk.exact
    result = extract_quotient_map(P, phi, psi, report=report)
    assert result.verified.all_passed()
    # both maps project to the same quotient map as the unperturbed tmap
    base = extract_quotient_map(P, tmap, tmap, report=report)
    assert base.quotient_matrix == result.quotient_matrix


def test_extract_uniqueness_across_witnesses():
    ctx, tmap, phi, psi = cullis_odd_instance()
    P = ctx.as_poly
    report = compute_radical(P)
    first = extract_quotient_map(P, phi, psi, report=report)
    other_span = gradient_span_symbolic(P, seed=424242, include_prefix=False)
    assert other_span.witnesses != report.span.witnesses
    second = extract_quotient_map(P, phi, psi, report=report, span=other_span)
    assert first.quotient_matrix == second.quotient_matrix


def test_extract_single_map_corollary():
    ctx, tmap, phi, psi = cullis_odd_instance()
    P = ctx.as_poly
    result = extract_quotient_map(P, phi, phi)
    assert result.verified.all_passed()


def test_extract_refuses_inhomogeneous():
    P, phi, psi = remark_counterexample()
    with pytest.raises(PreconditionError) as err:
        extract_quotient_map(P, phi, psi)
    assert err.value.hypothesis == "P is homogeneous"


def test_extract_refuses_failing_pair():
    P = poly5("x1*x2")
    bad = VectorMap.polymap([poly5("x1"), poly5("x2 + x1^2")])
    with pytest.raises(PreconditionError) as err:
        extract_quotient_map(P, bad, bad)
    assert err.value.hypothesis == "the pair condition holds"


def test_extract_refuses_failed_dimension_condition():
    # x1^2*x2 over GF(4) is homogeneous with deg < |F| but degenerate
    F4 = GF(4)
    P = parse_poly("x1^2*x2", 2, F4)
    ident = VectorMap.identity(F4, 2)
    with pytest.raises(PreconditionError) as err:
        extract_quotient_map(P, ident, ident)
    assert "dim" in err.value.hypothesis


# -- metamorphic properties ------------------------------------------------------------

def test_precompose_with_inner_preserver():
    ctx, tmap, phi, psi = cullis_odd_instance()
    P = ctx.as_poly
    L = shift_map(ctx, 2, 1)
    assert preserves(P, L, mode="symbolic")
    phi2, psi2 = phi.compose(L), psi.compose(L)
    assert check_pair(P, phi2, psi2, mode="symbolic").passed


def test_radical_perturbation_invariance():
    ctx, tmap, phi, psi = cullis_odd_instance()
    P = ctx.as_poly
    nk = 12
    var = lambda i: MultiPoly.variable(F5, nk, i)
    eta3 = equal_rows_map(ctx, [MultiPoly.zero(F5, nk),
                                var(ctx.var_index(3, 0)) ** 2,
                                var(ctx.var_index(0, 1)) * var(ctx.var_index(2, 2))])
    eta4 = equal_rows_map(ctx, [var(ctx.var_index(1, 0)) ** 2,
                                MultiPoly.zero(F5, nk),
                                var(ctx.var_index(2, 0))])
    assert check_pair(P, phi.add(eta3), psi.add(eta4), mode="symbolic").passed


# -- the lifted condition ----------------------------------------------------------------

def test_lift_identity_trivial_radical():
    P = poly5("x1*x2")
    ident = VectorMap.identity(F5, 2)
    report = compute_radical(P)
    assert lifted_pair_condition(P, ident, ident, Matrix.identity(F5, 2),
                                 report=report)


def test_lift_cullis_odd_symbolic():
    ctx, tmap, phi, psi = cullis_odd_instance()
    P = ctx.as_poly
    report = compute_radical(P)
    result = extract_quotient_map(P, phi, psi, report=report)
    assert lifted_pair_condition(P, phi, psi, result.quotient_matrix,
                                 report=report)
    corrupted_rows = [list(r) for r in result.quotient_matrix.rows]
    corrupted_rows[0][0] = corrupted_rows[0][0] + F5.one()
    corrupted = Matrix(F5, corrupted_rows)
    assert not lifted_pair_condition(P, phi, psi, corrupted, report=report)


def test_lift_reduced_instance_exhaustive():
    # 2x1 over GF(3): odd parity, radical is the equal-rows line
    ctx = CullisContext(2, 1, F3)
    P = ctx.as_poly
    var = lambda i: MultiPoly.variable(F3, 2, i)
    eta = equal_rows_map(ctx, [var(0) ** 2])
    phi = VectorMap.identity(F3, 2).add(eta)
    report = compute_radical(P)
    assert report.radical == equal_rows_space(ctx).subspace
    result = extract_quotient_map(P, phi, phi, report=report)
    assert lifted_pair_condition(P, phi, phi, result.quotient_matrix,
                                 report=report, mode="exhaustive")


# -- symbolic checks outside the exact regime ------------------------------------

def test_symbolic_fallback_decides_holds():
    # x -> x^5 is the identity function on GF(5) but not the identity polynomial
    P = parse_poly("x1^2", 1, F5)
    masked = VectorMap.polymap([parse_poly("x1^5", 1, F5)])
    ident = VectorMap.identity(F5, 1)
    result = check_pair(P, masked, ident, mode="symbolic")
    assert result.verdict == "holds" and result.exact
    assert preserves(P, masked, mode="symbolic")


def test_symbolic_fallback_decides_fails():
    P = parse_poly("x1^2", 1, F5)
    shifted = VectorMap.polymap([parse_poly("x1^5 + x1", 1, F5)])  # 2x as a function
    ident = VectorMap.identity(F5, 1)
    result = check_pair(P, shifted, ident, mode="symbolic")
    assert result.verdict == "fails"
    x, y, lam = result.witness
    lhs = P.evaluate([a + lam * b for a, b in zip(x, y)])
    rhs = P.evaluate([a + lam * b for a, b in zip(shifted(x), ident(y))])
    assert lhs != rhs


def test_symbolic_raises_outside_regime_with_tiny_cap():
    P = parse_poly("x1^2", 1, F5)
    shifted = VectorMap.polymap([parse_poly("x1^5 + x1", 1, F5)])
    ident = VectorMap.identity(F5, 1)
    with pytest.raises(UndecidableError):
        check_pair(P, shifted, ident, mode="symbolic", cap=2)


def test_preserves_table_map():
    P = parse_poly("x1*x2", 2, F3)
    rotate = VectorMap.linear(Matrix(F3, [[0, 2], [2, 0]])).to_table()
    # (x1,x2) -> (2x2, 2x1) multiplies P by 4 = 1 mod 3
    assert preserves(P, rotate) is True


def test_frobenius_condition_equivalent_to_linear_one():
    # over GF(3), cubing is the Frobenius automorphism, so a pair satisfies
    # the condition for x^3 exactly when it satisfies it for x; exhaustive
    # over all 27 x 27 self-map pairs of GF(3)
    P_cube = parse_poly("x1^3", 1, F3)
    P_lin = parse_poly("x1", 1, F3)
    elems = F3.elements()
    all_maps = [dict(zip([(e,) for e in elems], [(v,) for v in values]))
                for values in itertools.product(elems, repeat=3)]
    for phi_m in all_maps:
        phi = VectorMap.table(F3, 1, phi_m)
        for psi_m in all_maps:
            psi = VectorMap.table(F3, 1, psi_m)
            r_cube = check_pair(P_cube, phi, psi, mode="exhaustive")
            r_lin = check_pair(P_lin, phi, psi, mode="exhaustive")
            assert r_cube.passed == r_lin.passed


def test_extraction_with_table_maps():
    ctx = CullisContext(2, 1, F3)
    P = ctx.as_poly  # x1 - x2
    var = lambda i: MultiPoly.variable(F3, 2, i)
    eta = equal_rows_map(ctx, [var(0) * var(1)])
    phi = VectorMap.identity(F3, 2).add(eta).to_table()
    result = extract_quotient_map(P, phi, phi, mode="exhaustive")
    assert result.verified.all_passed()
    assert result.quotient_matrix == Matrix.identity(F3, 1)


def test_extract_even_nontrivial_b():
    ctx = CullisContext(5, 3, F5)
    P = ctx.as_poly
    shear = Matrix(F5, [[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    amap = axb_map(ctx, Matrix.identity(F5, 5), shear)
    result = extract_quotient_map(P, amap, amap)
    assert result.verified.all_passed()
    # zero radical: the quotient map is the map itself
    assert result.quotient_matrix == amap.matrix


def test_extract_odd_nontrivial_b():
    ctx = CullisContext(4, 3, F5)
    P = ctx.as_poly
    shear = Matrix(F5, [[1, 0, 2], [0, 1, 0], [0, 0, 1]])
    nk = 12
    var = lambda i: MultiPoly.variable(F5, nk, i)
    eta = equal_rows_map(ctx, [var(ctx.var_index(3, 0)) ** 2,
                               MultiPoly.zero(F5, nk),
                               MultiPoly.zero(F5, nk)])
    base = axb_map(ctx, Matrix.identity(F5, 4), shear)
    phi = base.add(eta)
    report = compute_radical(P)
    result = extract_quotient_map(P, phi, base, report=report)
    assert result.verified.all_passed()
    proj, sect = report.quotient.projection, report.quotient.section
    assert result.quotient_matrix == proj * base.matrix * sect


def test_extract_constant_polynomial_degenerate_quotient():
    P = MultiPoly.constant(F5, 2, 4)
    ident = VectorMap.identity(F5, 2)
    result = extract_quotient_map(P, ident, ident)
    assert result.verified.all_passed()
    assert result.quotient_matrix.nrows == 0
    assert result.report.radical.dim == 2


def test_symbolic_verdicts_cross_validated_exhaustively():
    # randomized dual-route check: over GF(3)^2 the exhaustive sweep is the
    # ground truth for whatever the symbolic comparison reports
    rng = random.Random(99)
    from helpers import random_poly

    def small_map():
        comps = [random_poly(rng, F3, 2, 2) for _ in range(2)]
        return VectorMap.polymap(comps)

    agreements = 0
    for _ in range(60):
        P = random_poly(rng, F3, 2, 2)
        phi, psi = small_map(), small_map()
        sym = check_pair(P, phi, psi, mode="symbolic")
        exh = check_pair(P, phi, psi, mode="exhaustive")
        assert sym.passed == exh.passed
        if sym.verdict == "fails":
            x, y, lam = sym.witness
            lhs = P.evaluate([a + lam * b for a, b in zip(x, y)])
            rhs = P.evaluate([a + lam * b for a, b in zip(phi(x), psi(y))])
            assert lhs != rhs
        agreements += 1
    assert agreements == 60
