import itertools
import random

import pytest

from polyrad.errors import PreconditionError, UndecidableError
from polyrad.field import GF, QQ
from polyrad.linalg import annihilator
from polyrad.poly import MultiPoly, parse_poly
from polyrad.radical import (compute_radical, induced_on_quotient,
                             is_radical_member, shift_equivalence_condition)
from polyrad.cullis import CullisContext, equal_rows_space
from helpers import brute_force_radical, random_poly, random_vector

F3, F4, F5 = GF(3), GF(4), GF(5)


# -- membership ---------------------------------------------------------------

def test_member_examples():
    P = parse_poly("x1*x2", 2, F5)
    assert not is_radical_member(P, [0, 1])
    assert is_radical_member(P, [0, 0])
    frob = parse_poly("x1^3", 1, F3)
    assert not is_radical_member(frob, [1])


def test_member_equal_rows_direction():
    ctx = CullisContext(4, 3, F5)
    w = equal_rows_space(ctx).matrix_from([1, 0, 0])
    assert is_radical_member(ctx.as_poly, ctx.flatten(w))
    # even parity: the same direction is not in the radical
    ctx_even = CullisContext(5, 3, F5)
    w_even = equal_rows_space(ctx_even).matrix_from([1, 0, 0])
    assert not is_radical_member(ctx_even.as_poly, ctx_even.flatten(w_even))


def test_member_undecidable():
    big = MultiPoly(F5, 9, {tuple([5] + [0] * 8): F5.one()})
    with pytest.raises(UndecidableError):
        is_radical_member(big, [1] + [0] * 8, cap=100)


# -- full computation -----------------------------------------------------------

def test_compute_simple():
    rep = compute_radical(parse_poly("x1*x2", 2, F5))
    assert rep.radical.dim == 0 and rep.dim_condition_holds
    assert rep.method == "annihilator+filter"
    assert rep.quotient.dim == 2


def test_compute_cullis_odd():
    ctx = CullisContext(4, 3, F5)
    rep = compute_radical(ctx.as_poly)
    assert rep.radical == equal_rows_space(ctx).subspace
    assert rep.radical.dim == 3 and rep.span.dim == 9
    assert rep.dim_condition_holds  # 9 + 3 = 12


def test_compute_frobenius_power():
    rep = compute_radical(parse_poly("x1^3", 1, F3))
    assert rep.method == "exhaustive"
    assert rep.span.dim == 0 and rep.radical.dim == 0
    assert not rep.dim_condition_holds  # 0 + 0 != 1


def test_compute_char0():
    rng = random.Random(13)
    for _ in range(20):
        P = random_poly(rng, QQ, 3, 4)
        rep = compute_radical(P)
        assert rep.method == "char0-annihilator"
        assert rep.radical == annihilator(rep.span.subspace)
        assert rep.dim_condition_holds
        for v in rep.radical.basis_vectors():
            assert is_radical_member(P, v)


def test_compute_zero_and_constant():
    for P in (MultiPoly.zero(F5, 3), MultiPoly.constant(F5, 3, 4),
              MultiPoly.constant(QQ, 2, 7)):
        rep = compute_radical(P)
        assert rep.radical.dim == P.nvars
        assert rep.dim_condition_holds
        assert rep.quotient.dim == 0
        assert rep.induced.nvars == 0
        assert rep.induced.evaluate(()) == P.evaluate([0] * P.nvars)


def test_oracle_equivalence_small():
    rng = random.Random(29)
    for spec in (F3, F5):
        for _ in range(25):
            P = random_poly(rng, spec, 2, 2)
            rep = compute_radical(P)
            assert rep.radical == brute_force_radical(P)
            # gradient functionals vanish on the radical
            for l in rep.span.subspace.basis.rows:
                for v in rep.radical.basis.rows:
                    acc = spec.zero()
                    for a, b in zip(l, v):
                        acc = acc + a * b
                    assert acc.is_zero()
            assert rep.span.dim + rep.radical.dim <= P.nvars


def test_dim_condition_structural_biconditional():
    rng = random.Random(71)
    for _ in range(30):
        P = random_poly(rng, F5, 2, 3)
        rep = compute_radical(P)
        ann = annihilator(rep.span.subspace)
        assert rep.dim_condition_holds == (rep.radical == ann)


def test_dim_condition_can_fail_below_field_size():
    # over GF(4) the cube collapse makes x1^2*x2 degenerate although deg = 3 < 4
    P = parse_poly("x1^2*x2", 2, F4)
    rep = compute_radical(P)
    assert rep.span.dim == 1 and rep.radical.dim == 0
    assert not rep.dim_condition_holds
    assert rep.method == "annihilator+filter"


def test_annihilator_basis_shortcut_when_cap_tiny():
    # every annihilator basis vector is a member, so the cap does not matter
    P = parse_poly("x1", 5, F5)
    rep = compute_radical(P, enum_cap=3)
    assert rep.radical.dim == 4 and rep.dim_condition_holds
    assert not rep.inconclusive


def test_inconclusive_when_cap_tiny_and_basis_fails():
    P = parse_poly("x1^2*x2", 2, F4)
    rep = compute_radical(P, enum_cap=3)
    assert rep.inconclusive
    assert not rep.dim_condition_holds
    assert rep.quotient is None and rep.induced is None
    # the verified-so-far subspace is an inner approximation of the radical
    full = compute_radical(P)
    assert rep.radical <= full.radical


def test_exhaustive_cap_exceeded():
    big = MultiPoly(F5, 9, {tuple([5] + [0] * 8): F5.one()})
    with pytest.raises(UndecidableError):
        compute_radical(big, enum_cap=100)


# -- the shift-equivalence condition -----------------------------------------------

def test_shift_condition_member_direction():
    P = parse_poly("x1*x2", 2, F5)
    assert shift_equivalence_condition(P, [0, 0])
    ctx = CullisContext(2, 1, F3)
    w = [F3.one(), F3.one()]
    assert shift_equivalence_condition(ctx.as_poly, w)
    assert is_radical_member(ctx.as_poly, w)


def test_shift_condition_excludes_gf2():
    P = parse_poly("x1", 1, GF(2))
    with pytest.raises(PreconditionError):
        shift_equivalence_condition(P, [1])


def test_shift_condition_implies_membership():
    rng = random.Random(41)
    for spec in (F4, F5):
        for _ in range(8):
            P = random_poly(rng, spec, 2, 2)
            for v in itertools.product(spec.elements(), repeat=2):
                if shift_equivalence_condition(P, v):
                    assert is_radical_member(P, v)


def test_shift_condition_false_case():
    P = parse_poly("x1*x2", 2, F4)
    assert not shift_equivalence_condition(P, [1, 0])


# -- induced polynomial ---------------------------------------------------------

def test_induced_trivial_radical():
    P = parse_poly("x1*x2", 2, F5)
    rep = compute_radical(P)
    assert rep.induced == P  # coordinates coincide when the radical is zero


def test_induced_cullis():
    ctx = CullisContext(4, 3, F5)
    rep = compute_radical(ctx.as_poly)
    assert rep.induced.nvars == 9
    rng = random.Random(53)
    for _ in range(100):
        x = random_vector(rng, F5, 12)
        assert rep.induced.evaluate(rep.quotient.project(x)) == ctx.as_poly.evaluate(x)


def test_induced_detects_wrong_subspace():
    from polyrad.errors import InconsistencyError
    from polyrad.linalg import quotient_coords, span
    P = parse_poly("x1*x2", 2, F5)
    wrong = quotient_coords(span(F5, 2, [(1, 0)]))
    with pytest.raises(InconsistencyError):
        induced_on_quotient(P, wrong)
