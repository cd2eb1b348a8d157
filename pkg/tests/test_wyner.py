import numpy as np
from pytest import approx, fixture, mark, raises

from infotheo.coord import pmf
from infotheo.coord.opt import MarkovFeasibilityError, SolverOptions, no_sr_rate, wyner_ci

WYNER = {.1: 0.872760566800152, .2: 0.705904900983266}


@fixture(scope="module")
def opts():
    return SolverOptions(restarts=8, seed=1)


def test_options():
    opts = SolverOptions.from_params(restarts=3, threads=None)
    assert opts.restarts == 3 and opts.threads == 1
    assert opts.penalty_schedule == (1, 10, 100, 1000)
    with raises(ValueError):
        SolverOptions(restarts=0)
    with raises(ValueError):
        SolverOptions(penalty_schedule=(10, 1))
    with raises(ValueError):
        SolverOptions(tol_objective=0)
    with raises(ValueError):
        SolverOptions(seed=-1)


def test_independent(opts):
    q = pmf.product_joint([.3, .7], [.2, .5, .3])
    res = wyner_ci(q, opts=opts)
    assert res.value == approx(0, abs=1e-9)
    assert res.markov_defect <= opts.tol_markov
    assert res.used_symbols == 1
    assert res.lower == approx(0, abs=1e-12)


def test_identical(opts):
    """X = Y: any feasible U determines X"""
    q = pmf.dsbs_joint(0)
    res = wyner_ci(q, opts=opts)
    assert res.value == approx(1, abs=2e-6)
    assert res.lower == approx(1) and res.upper == approx(1)


@mark.slow
@mark.parametrize("a", [.1, .2])
def test_dsbs(a, opts):
    q = pmf.dsbs_joint(a)
    res = wyner_ci(q, opts=opts)
    assert res.markov_defect <= opts.tol_markov
    assert res.value == approx(WYNER[a], abs=1e-2)
    assert res.lower <= res.value <= res.upper + 1e-9
    assert res.feasible_restarts >= 1
    assert res.channel.card_u == 4
    # reported value is exact for the reported channel
    full = pmf.compose(q, res.channel)
    assert pmf.mutual_information(full, 'xy', 'u') == res.value


@mark.slow
def test_threads(opts):
    q = pmf.dsbs_joint(.2)
    res1 = wyner_ci(q, 2, opts)
    res2 = wyner_ci(q, 2, SolverOptions(restarts=8, seed=1, threads=3))
    assert res1.value == approx(res2.value, rel=1e-12)
    assert res1.channel.cond == approx(res2.channel.cond, rel=1e-12)


def test_infeasible(opts):
    """a single symbol cannot make X and Y conditionally independent"""
    q = pmf.dsbs_joint(.1)
    with raises(MarkovFeasibilityError) as exc:
        wyner_ci(q, 1, opts)
    res = exc.value.result
    assert res.value == approx(0, abs=1e-12)
    assert res.markov_defect == approx(pmf.mutual_information(q, 'x', 'y'))


def test_card_u(opts):
    with raises(ValueError):
        wyner_ci(pmf.dsbs_joint(.1), 0, opts)
    with raises(ValueError):
        wyner_ci(pmf.dsbs_joint(.1), 1.5, opts)


@mark.slow
def test_no_sr_rate():
    res = no_sr_rate(pmf.dsbs_joint(.2), SolverOptions(restarts=4))
    assert res.channel.card_u == 6
    assert res.value == approx(WYNER[.2], abs=1e-2)
    assert np.isfinite(res.markov_defect)


@mark.slow
@mark.parametrize("a", [.1, .2])
def test_dsbs_binary_aux(a, opts):
    """a binary auxiliary suffices for the DSBS"""
    res = wyner_ci(pmf.dsbs_joint(a), 2, opts)
    assert res.channel.card_u == 2
    assert res.value == approx(WYNER[a], abs=1e-3)


def random_joint(rng, shape):
    return pmf.JointPmf(rng.dirichlet(np.ones(np.prod(shape))).reshape(shape))


@mark.parametrize("seed", [11, 12])
def test_card_u_monotone(seed):
    q = random_joint(np.random.default_rng(seed), (2, 3))
    opts = SolverOptions(restarts=4, seed=seed)
    values = [wyner_ci(q, k, opts).value for k in range(2, 7)]
    for small, big in zip(values, values[1:]):
        assert big <= small + 1e-6


@mark.parametrize("seed", range(3))
def test_sandwich(seed):
    q = random_joint(np.random.default_rng(seed), (2, 2))
    res = wyner_ci(q, opts=SolverOptions(restarts=4, seed=seed))
    assert res.lower == approx(pmf.mutual_information(q, 'x', 'y'))
    assert res.lower - 1e-6 <= res.value <= res.upper + 1e-6
    assert res.markov_defect <= 1e-6
