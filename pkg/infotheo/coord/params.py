"""Strong coordination constants and default parameters"""
__author__ = "infocoord developers"
__copyright__ = "Copyright 2024"

# CONSTANTS/PARAMETERS

# tolerance on simplex sums of user-supplied distributions
tol_simplex = 1e-9
# slack for region membership (closure of the region)
tol_member = 1e-12
# feasibility of X-U-Y (and the general quadruple chain)
tol_markov = 1e-6

# inverse binary entropy by bisection on [0, 0.5]
bisect_iters = 200
bisect_xtol = 1e-15

# multi-start solvers (Wyner common information and the UL-SR rate)
restarts = 50
max_iters = 5000
tol_objective = 1e-9
# Markov penalty weights, swept with warm starts
penalty_schedule = (1., 10., 100., 1000.)
# smooth-max inverse temperatures (1/bits), annealed
temperatures = (10., 100., 1000.)
# exponentiated-gradient base step and its decay (iterations)
eg_step = 1.
eg_decay = 1000.
# base step of the exact-max subgradient polish
polish_step = .1
# p^t starting points for 2x2 symmetric sources
dsbs_starts = (.25, .5, .75)
# also start from the closed-form minimiser p^{t*} on those sources
tstar_start = True
seed = 0
threads = 1

# simulator
eps_typ = .1
# bits per index dimension (m01, m02, m*, b1, b2)
max_index_bits = 20
# codewords generated per counter-based block
chunk_size = 1024

# output
sig_digits = 15
curve_points = 101


def get_params(**kwargs):
    """
    Get all the constants and defaults as a flat dictionary.
    Arguments:
      kwargs: overrides of any of the keys; unknown keys raise `KeyError`.
    """
    Cnt = {
        'tol_simplex': tol_simplex,
        'tol_member': tol_member,
        'tol_markov': tol_markov,
        'bisect_iters': bisect_iters,
        'bisect_xtol': bisect_xtol,}

    # > solvers
    Cnt.update(
        restarts=restarts,
        max_iters=max_iters,
        tol_objective=tol_objective,
        penalty_schedule=penalty_schedule,
        temperatures=temperatures,
        eg_step=eg_step,
        eg_decay=eg_decay,
        polish_step=polish_step,
        dsbs_starts=dsbs_starts,
        tstar_start=tstar_start,
        seed=seed,
        threads=threads)

    # > simulator
    Cnt.update(
        eps_typ=eps_typ,
        max_index_bits=max_index_bits,
        chunk_size=chunk_size)

    # > output
    Cnt.update(
        sig_digits=sig_digits,
        curve_points=curve_points)

    unknown = set(kwargs) - set(Cnt)
    if unknown:
        raise KeyError(f"unrecognised parameters: {sorted(unknown)}")
    Cnt.update({k: v for k, v in kwargs.items() if v is not None})
    return Cnt
