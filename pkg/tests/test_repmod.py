import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from downup import Params, PreconditionError, QuadScalar, reduce
from downup.repmod import (
    central_character,
    check_relations,
    diagonal,
    double_is_simple,
    doubly_infinite_matrices,
    dual_rep,
    invariant_coordinate_subspaces,
    iso_obstruction,
    lowest_weight_matrices,
    mat_mul,
    nf_module,
    nonvanishing_from,
    one_dim_modules,
    one_dim_rep,
    submodule_report,
    verma_is_simple,
    verma_matrices,
)
from downup.weights import Weight, lambda_closed, lambda_seq, orbit
from oracles import relation_residual
from strategies import small_fractions

SL2 = Params.of(2, -1, -2)
nonzero = small_fractions.filter(bool)


def safe_columns_clean(P, rep):
    r1, r2 = relation_residual(*P.as_tuple(), rep.d, rep.u)
    return all(not r[i][j] for r in (r1, r2) for j in rep.safe_indices() for i in range(rep.size))


@given(small_fractions, small_fractions, small_fractions, small_fractions)
@settings(max_examples=40, deadline=None)
def test_verma_relations(a, b, g, lam):
    P = Params.of(a, b, g)
    rep = verma_matrices(P, lam, 8)
    assert check_relations(P, rep)
    assert safe_columns_clean(P, rep)


@given(small_fractions, nonzero, small_fractions, small_fractions)
@settings(max_examples=40, deadline=None)
def test_lowest_relations(a, b, g, kappa):
    P = Params.of(a, b, g)
    rep = lowest_weight_matrices(P, kappa, 8)
    assert check_relations(P, rep)
    assert safe_columns_clean(P, rep)


@given(small_fractions, nonzero, small_fractions, small_fractions, small_fractions)
@settings(max_examples=40, deadline=None)
def test_double_relations(a, b, g, kappa, lam):
    P = Params.of(a, b, g)
    rep = doubly_infinite_matrices(P, kappa, lam, 5)
    assert check_relations(P, rep)
    assert safe_columns_clean(P, rep)


def test_safe_range_is_tight():
    # the first column past the safe range sees the truncation
    rep = verma_matrices(Params.of(1, 1, 0), 1, 6)
    r1, r2 = relation_residual(1, 1, 0, rep.d, rep.u)
    col = rep.safe_range[1] + 1
    assert any(r[i][col] for r in (r1, r2) for i in range(rep.size))


def test_fault_injection_detected():
    rep = verma_matrices(SL2, 3, 6)
    rep.d[1][2] += 1
    assert not check_relations(SL2, rep)


def test_lowest_weight_beta_zero():
    P = Params.of(3, 0, 6)
    assert check_relations(P, lowest_weight_matrices(P, -2, 6))


def test_sl2_simplicity():
    for lam in range(-3, 6):
        verdict = verma_is_simple(SL2, lam)
        assert (verdict.tag == "Simple") == (lam < 0)
        if lam >= 0:
            assert verdict.index == lam


def test_verdict_text():
    assert str(verma_is_simple(SL2, 2)) == "NotSimple m=2"
    assert str(verma_is_simple(SL2, -1)) == "Simple"


def test_periodic_simple():
    # A(0,-1,0), lambda=1: weights 1,0,... vanish at n=1
    assert verma_is_simple(Params.of(0, -1, 0), 1).tag == "NotSimple"
    # A(-1,0,1), lambda=1/2: constant 1/2
    assert verma_is_simple(Params.of(-1, 0, 1), Fraction(1, 2)).tag == "Simple"


def test_growth_certificate():
    cf = lambda_closed(Params.of(1, 1, 0), 1)
    n0 = nonvanishing_from(cf)
    assert n0 is not None
    assert nonvanishing_from(lambda_closed(Params.of(0, -1, 0), 1)) is None


def test_irrational_parameters_undecided():
    P = Params.of(QuadScalar(0, 1, 2), 1, 1)
    verdict = verma_is_simple(P, 1, bound=10)
    assert verdict.tag in ("UndecidedUpTo", "NotSimple")


def test_submodule_report():
    rep = submodule_report(SL2, 2)
    assert rep.tag == "UniqueMaximal" and rep.m == 2 and rep.tail_lambda == -4
    assert submodule_report(SL2, -1).tag == "AllSimple"
    assert submodule_report(Params.of(1, 1, 0), 0).tag == "FamilyOverC"
    periodic = submodule_report(Params.of(0, 1, 0), 1)
    assert periodic.tag == "PeriodicFamily" and periodic.period == 2 and periodic.m == 1


def test_double_simplicity():
    assert double_is_simple(Params.of(3, -2, 0), 2, 3).tag == "Simple"
    not_simple = double_is_simple(Params.of(3, -2, 0), 1, 3)
    assert not_simple.tag == "NotSimple" and not_simple.index == -2
    assert double_is_simple(Params.of(0, 1, 0), 1, 1).tag == "NotSimple"


def test_nf_module():
    P = Params.of(0, 1, 0)
    rep = nf_module(P, orbit(P, Weight.of(1, 2), 8), 1)
    assert check_relations(P, rep)
    assert rep.meta["simple"]
    assert invariant_coordinate_subspaces(rep) == []
    du, ud = mat_mul(rep.d, rep.u), mat_mul(rep.u, rep.d)
    for i, w in enumerate(rep.basis):
        assert du[i][i] == w.nu1 and ud[i][i] == w.nu2


def test_nf_module_requires_closure():
    with pytest.raises(PreconditionError):
        nf_module(Params.of(0, 1, 0), [Weight.of(1, 2)], 1)


def test_dual_intertwiner():
    rep = verma_matrices(SL2, -1, 8)
    dual = dual_rep(SL2, rep)
    T = diagonal(dual.meta["intertwiner"])
    assert mat_mul(T, dual.d) == mat_mul(rep.d, T)
    assert mat_mul(T, dual.u) == mat_mul(rep.u, T)


def test_dual_of_double():
    P = Params.of(3, -2, 0)
    rep = doubly_infinite_matrices(P, 2, 3, 4)
    dual = dual_rep(P, rep)
    T = diagonal(dual.meta["intertwiner"])
    assert mat_mul(T, dual.d) == mat_mul(rep.d, T)


def test_central_character():
    P = Params.of(2, -1, 0)
    z = reduce(P, "du - ud")
    for lam in range(-2, 3):
        assert central_character(P, z, lam) == lam
    with pytest.raises(PreconditionError):
        central_character(P, reduce(P, "d"), 1)


@pytest.mark.parametrize("a,b,g,case", [(0, 1, 0, "a"), (1, 1, 0, "b"), (1, 1, 2, "c"), (0, 1, 2, "d")])
def test_one_dim_modules(a, b, g, case):
    P = Params.of(a, b, g)
    fam = one_dim_modules(P)
    assert fam.case == case
    for x, y in fam.sample(random.Random(0), 20):
        rep = one_dim_rep(x, y)
        assert check_relations(P, rep)
        r1, r2 = relation_residual(a, b, g, rep.d, rep.u)
        assert not r1[0][0] and not r2[0][0]
        assert fam.contains(x, y)


def test_iso_obstruction():
    assert iso_obstruction(Params.of(1, 1, 0), Params.of(1, 1, 1)) == "Distinguished"
    assert iso_obstruction(Params.of(0, 1, 0), Params.of(1, 1, 0)) == "Distinguished"
    assert iso_obstruction(Params.of(1, 1, 1), Params.of(2, 1, 1)) == "NotDistinguished"


def test_verma_entries():
    rep = verma_matrices(SL2, 1, 2)
    assert rep.d[0][1] == 1 and rep.d[1][2] == 0 and rep.u[1][0] == 1
    assert all(not rep.d[i][0] for i in range(rep.size))
    du = mat_mul(rep.d, rep.u)
    weights = rep.meta["weights"]
    assert all(du[n][n] == weights[n] for n in rep.safe_indices())


def test_zero_weight_not_simple():
    for P in (SL2, Params.of(1, 1, 0), Params.of(0, 0, 3)):
        verdict = verma_is_simple(P, 0)
        assert verdict.tag == "NotSimple" and verdict.index == 0


def test_constant_weights_all_simple():
    # (1 - alpha - beta) c = gamma with c = 1 and beta = 0: lambda_n = 1 for all n
    assert lambda_seq(Params.of(3, 0, -2), 1, 5) == [1] * 6
    assert submodule_report(Params.of(3, 0, -2), 1).tag == "AllSimple"
    # with beta != 0 the same condition does not make the weights constant
    assert lambda_seq(Params.of(1, 1, -1), 1, 2) == [1, 0, 0]
    assert submodule_report(Params.of(1, 1, -1), 1).tag == "UniqueMaximal"
    assert submodule_report(Params.of(3, 2, 0), 0).tag == "FamilyOverC"


def test_lowest_weight_examples():
    rep = lowest_weight_matrices(Params.of(0, 0, 0), 0, 5)
    assert check_relations(Params.of(0, 0, 0), rep)
    assert all(not rep.u[i][0] for i in range(rep.size))
    assert check_relations(Params.of(3, 0, 6), lowest_weight_matrices(Params.of(3, 0, 6), -2, 8))


def test_periodic_double_module_has_proper_submodule():
    # A(0,1,0) with kappa = lambda = 1: d and u are mutually inverse shifts,
    # so the all-ones functional is invariant and its kernel is a submodule
    P = Params.of(0, 1, 0)
    rep = doubly_infinite_matrices(P, 1, 1, 6)
    assert all(w == 1 for w in rep.meta["weights"].values())
    assert check_relations(P, rep)
    inner = range(1, rep.size - 1)
    for m in (rep.d, rep.u):
        for col in inner:
            assert sum(m[r][col] for r in range(rep.size)) == 1
    assert double_is_simple(P, 1, 1).tag == "NotSimple"


def test_dual_of_dual():
    rep = verma_matrices(SL2, 3, 6)
    twice = dual_rep(SL2, dual_rep(SL2, rep))
    assert twice.d == rep.d and twice.u == rep.u


def test_lowest_weight_dual():
    P = Params.of(1, 2, 3)
    rep = lowest_weight_matrices(P, 5, 6)
    dual = dual_rep(P, rep)
    k = rep.meta["weights"]
    for n in range(rep.size - 1):
        assert dual.d[n + 1][n] == k[n]


def test_nf_example_entries():
    P = Params.of(0, 1, 0)
    rep = nf_module(P, [Weight.of(1, 2), Weight.of(2, 1)], 1)
    assert rep.d == [[0, 1], [1, 0]]
    assert rep.u[1][0] == 1 and rep.u[0][1] == 2


def test_nf_with_zero_weight():
    P = Params.of(0, 1, 0)
    o = orbit(P, Weight.of(0, 2), 6)
    rep = nf_module(P, o, 1)
    assert rep.meta["simple"] is False
    assert rep.meta["structure"] == "finite-dimensional lowest weight"
    assert check_relations(P, rep)


def test_one_dim_examples():
    assert one_dim_modules(Params.of(Fraction(1, 2), Fraction(1, 2), 0)).case == "a"
    fam = one_dim_modules(Params.of(0, 0, 1))
    assert fam.case == "c" and fam.contains(2, Fraction(1, 2)) and not fam.contains(2, 1)
    assert one_dim_modules(Params.of(Fraction(1, 2), Fraction(1, 2), 1)).case == "d"


def test_iso_obstruction_examples():
    assert iso_obstruction(Params.of(2, -1, 0), SL2) == "Distinguished"
    assert iso_obstruction(SL2, SL2) == "NotDistinguished"
    assert iso_obstruction(Params.of(1, 0, 1), Params.of(0, 1, 1)) == "NotDistinguished"


def test_central_character_of_one():
    from downup import Element

    assert central_character(SL2, Element.one(), 7) == 1
