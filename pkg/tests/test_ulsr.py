import numpy as np
from pytest import approx, fixture, mark, raises

from infotheo.coord import pmf, rates
from infotheo.coord.opt import (
    SolverOptions,
    UlsrForm,
    ulsr_baseline,
    ulsr_objective,
    ulsr_rate,
)

# f(t) at the tabulated t closest to t*
F_T_STAR = {.1: 0.300527573378146, .2: 0.177497550666439}


@fixture(scope="module")
def opts():
    return SolverOptions(restarts=6, seed=2)


def test_form():
    assert UlsrForm.parse('MAX_AVG') is UlsrForm.MAX_AVG
    assert UlsrForm.parse('maxpair') is UlsrForm.MAX_PAIR
    with raises(ValueError):
        UlsrForm.parse('maxmin')
    assert UlsrForm.MAX_AVG.value(1., .2) == approx(.6)
    assert UlsrForm.MAX_PAIR.value(1., .2) == approx(1)


@mark.parametrize("a", [.1, .2])
def test_objective(a):
    q = pmf.dsbs_joint(a)
    ts = rates.t_star(a)
    res = ulsr_objective(q, rates.interpolated_channel(a, ts))
    assert res.value == approx(rates.f_of_t(a, ts).f, abs=1e-12)
    assert res.value == approx(F_T_STAR[a], abs=5e-4)
    # U independent of (X, Y)
    res = ulsr_objective(q, pmf.degenerate_channel(q), UlsrForm.MAX_PAIR)
    assert res.term_joint == approx(0, abs=1e-12)
    assert res.value == approx(1 - pmf.binary_entropy(a), abs=1e-12)


def test_identical(opts):
    """X = Y: max{H(X|U), H(X)/2} is minimised at H(X)/2"""
    q = pmf.JointPmf([[.25, 0, 0], [0, .25, 0], [0, 0, .5]])
    res = ulsr_rate(q, opts=opts)
    assert res.value == approx(.75, abs=1e-9)
    assert res.channel.card_u == 11


def test_independent(opts):
    q = pmf.product_joint([.5, .5], [.1, .9])
    res = ulsr_rate(q, UlsrForm.MAX_PAIR, opts)
    assert res.value == approx(0, abs=1e-9)


@mark.slow
@mark.parametrize("a", [.1, .2])
def test_dsbs(a, opts):
    q = pmf.dsbs_joint(a)
    res = ulsr_rate(q, opts=opts)
    base = ulsr_baseline(q, opts)
    i_xy = pmf.mutual_information(q, 'x', 'y')
    # never worse than the classical corners nor than the p^t family
    assert res.value <= base['bound'] + 1e-9
    assert res.value <= F_T_STAR[a] + 1e-3
    # (I(X,Y;U) + I(X;Y|U))/2 >= I(X;Y)/2
    assert res.value >= i_xy/2 - 1e-9
    assert res.restarts >= opts.restarts
    assert res.value == approx(
        max(res.term_cond, (res.term_joint + res.term_cond) / 2), abs=1e-12)


@mark.slow
def test_max_pair(opts):
    q = pmf.dsbs_joint(.1)
    res = ulsr_rate(q, UlsrForm.MAX_PAIR, opts)
    base = ulsr_baseline(q, opts)
    wyner, i_xy = base['wyner'], base['mi']
    assert res.form is UlsrForm.MAX_PAIR
    # time sharing between Wyner's auxiliary and a constant
    assert res.value <= wyner * i_xy / (wyner+i_xy) + 1e-6
    assert res.value == approx(max(res.term_cond, res.term_joint), abs=1e-12)


@mark.slow
def test_baseline(opts):
    base = ulsr_baseline(pmf.dsbs_joint(.2), opts)
    assert base['corner'] == 'mi'
    assert base['bound'] == base['mi']
    assert base['half_wyner'] == approx(0.352952450491633, abs=5e-3)


@mark.parametrize("a,t,value", [(.1, .636, 0.462173752918356), (.2, .4427, 0.177497550666439)])
def test_objective_table(a, t, value):
    res = ulsr_objective(pmf.dsbs_joint(a), rates.interpolated_channel(a, t))
    assert res.value == approx(value, abs=1e-9)


def test_form_dominance():
    q = pmf.dsbs_joint(.2)
    rng = np.random.default_rng(7)
    for _ in range(20):
        ch = pmf.AuxChannel(rng.dirichlet(np.ones(6), size=(2, 2)))
        avg = ulsr_objective(q, ch, UlsrForm.MAX_AVG).value
        pair = ulsr_objective(q, ch, UlsrForm.MAX_PAIR).value
        assert avg <= pair + 1e-12


@mark.slow
@mark.parametrize("a", [.1, .2])
def test_strict_improvement(a, opts):
    q = pmf.dsbs_joint(a)
    res = ulsr_rate(q, opts=opts)
    base = ulsr_baseline(q, opts)
    assert res.value < min(base['half_wyner'], base['mi']) - .01


@mark.slow
@mark.parametrize("a", [.1, .2])
def test_form_equivalence(a, opts):
    q = pmf.dsbs_joint(a)
    pair = ulsr_rate(q, UlsrForm.MAX_PAIR, opts)
    avg = ulsr_rate(q, UlsrForm.MAX_AVG, opts)
    assert pair.value == approx(avg.value, abs=1e-3)


@mark.slow
def test_dsbs_without_curve_starts():
    """the optimiser alone reaches the interior minimum"""
    opts = SolverOptions(restarts=6, seed=2, dsbs_starts=(), tstar_start=False)
    res = ulsr_rate(pmf.dsbs_joint(.1), opts=opts)
    assert res.value <= rates.f_of_t(.1, rates.t_star(.1)).f + 1e-3


@mark.slow
@mark.parametrize("shape,seed", [((2, 2), 0), ((2, 2), 1), ((2, 3), 2)])
def test_form_equivalence_random(shape, seed, opts):
    rng = np.random.default_rng(seed)
    q = pmf.JointPmf(rng.dirichlet(np.ones(np.prod(shape))).reshape(shape))
    pair = ulsr_rate(q, UlsrForm.MAX_PAIR, opts)
    avg = ulsr_rate(q, UlsrForm.MAX_AVG, opts)
    assert pair.value == approx(avg.value, abs=1e-3)
