"""
Wyner's common information C(X;Y) = min I(X,Y;U) over X - U - Y,
which is also the optimal rate without shared randomness.

The Markov chain is imposed by a penalty: I(X,Y;U) + lam I(X;Y|U) is
minimised for increasing `lam` (warm-started), followed by a restoration
stage on I(X;Y|U) alone. Every restart remembers its best iterate with
I(X;Y|U) within the Markov tolerance. Solutions for |U| - 1 symbols seed
the search over |U| symbols.
"""
import logging
from dataclasses import dataclass, fields
from functools import lru_cache

import numpy as np
from tqdm.auto import tqdm

from .. import params
from ..pmf import (
    AuxChannel,
    compose,
    conditional_mutual_information,
    entropy,
    marginal,
    mutual_information,
)
from ..tools import pmap, progress_disabled, split_range
from .simplex import (
    BestTracker,
    channel_terms,
    descend,
    pick_best,
    random_start,
    safe_log,
    structured_starts,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SolverOptions:
    """Multi-start solver settings shared by the Wyner and UL-SR optimisers"""
    restarts: int = params.restarts
    max_iters: int = params.max_iters
    tol_objective: float = params.tol_objective
    penalty_schedule: tuple = params.penalty_schedule
    seed: int = params.seed
    temperatures: tuple = params.temperatures
    eg_step: float = params.eg_step
    eg_decay: float = params.eg_decay
    polish_step: float = params.polish_step
    dsbs_starts: tuple = params.dsbs_starts
    tstar_start: bool = params.tstar_start
    tol_markov: float = params.tol_markov
    threads: int = params.threads

    def __post_init__(self):
        object.__setattr__(self, 'penalty_schedule', tuple(map(float, self.penalty_schedule)))
        object.__setattr__(self, 'temperatures', tuple(map(float, self.temperatures)))
        object.__setattr__(self, 'dsbs_starts', tuple(map(float, self.dsbs_starts)))
        if self.restarts < 1:
            raise ValueError(f"restarts must be >= 1: got {self.restarts}")
        if self.max_iters < 1:
            raise ValueError(f"max_iters must be >= 1: got {self.max_iters}")
        if not self.tol_objective > 0:
            raise ValueError(f"tol_objective must be > 0: got {self.tol_objective}")
        sched = np.asarray(self.penalty_schedule)
        if not sched.size or np.any(sched <= 0) or np.any(np.diff(sched) <= 0):
            raise ValueError(f"penalty schedule must be positive and strictly increasing: {sched}")
        temps = np.asarray(self.temperatures)
        if not temps.size or np.any(temps <= 0):
            raise ValueError(f"temperatures must be positive: {temps}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer: got {self.seed}")
        if self.eg_step <= 0 or self.eg_decay <= 0 or self.polish_step <= 0:
            raise ValueError("step sizes must be positive")
        if self.threads < 1:
            raise ValueError(f"threads must be >= 1: got {self.threads}")

    @classmethod
    def from_params(cls, Cnt=None, **kwargs):
        """options from a `params.get_params()` dictionary (plus overrides)"""
        Cnt = dict(Cnt or params.get_params())
        Cnt.update({k: v for k, v in kwargs.items() if v is not None})
        return cls(**{f.name: Cnt[f.name] for f in fields(cls) if f.name in Cnt})


@dataclass(frozen=True, eq=False)
class WynerResult:
    """
    value: I(X,Y;U) of `channel` [bits].
    markov_defect: I(X;Y|U) of `channel` [bits].
    lower, upper: I(X;Y) and min{H(X), H(Y)}, which bracket C(X;Y).
    feasible_restarts: restarts which met the Markov tolerance.
    """
    value: float
    channel: AuxChannel
    markov_defect: float
    lower: float = 0.
    upper: float = np.inf
    feasible_restarts: int = 0

    @property
    def used_symbols(self):
        """number of U symbols with non-zero probability under the source"""
        return int(np.count_nonzero(self.channel.u_channel().sum(axis=(0, 1))))


class MarkovFeasibilityError(RuntimeError):
    """no restart met the Markov tolerance; `result` holds the least infeasible one"""
    def __init__(self, msg, result=None):
        super().__init__(msg)
        self.result = result


def _starts(q, card_u, opts):
    nx, ny = q.shape
    shape = (nx, ny, card_u)
    degenerate = np.zeros(shape)
    degenerate[..., 0] = 1
    fixed = structured_starts(q, card_u) + [degenerate]
    return np.stack([
        fixed[i] if i < len(fixed) else random_start(shape, np.random.default_rng(
            [opts.seed, i])) for i in range(opts.restarts)])


@lru_cache(maxsize=32)
def _solve_card(key, shape, card_u, opts):
    """
    All restarts for `card_u` symbols. For `card_u` > 2 the best feasible
    channel found with one symbol fewer is an extra start, so that the
    value never increases with `card_u`.
    Arguments:
      key: bytes of the source probabilities of `shape`.
    """
    qp = np.frombuffer(key).reshape(shape)
    w0 = _starts(qp, card_u, opts)
    if card_u > 2:
        score, cond, w_best, _, _ = _solve_card(key, shape, card_u - 1, opts)
        feasible = np.flatnonzero(np.isfinite(score))
        if feasible.size:
            i = feasible[pick_best(score[feasible], cond[feasible], w_best[feasible])]
            w0 = np.concatenate([w0, np.pad(w_best[i], [(0, 0), (0, 0), (0, 1)])[None]])

    chunks = split_range(len(w0), opts.threads)
    parts = pmap(lambda idx: _solve(qp, w0[idx], opts), chunks, threads=opts.threads)
    res = tuple(np.concatenate(i) for i in zip(*parts))
    for i in res:
        i.setflags(write=False)
    return res


def _solve(q, w0, opts):
    """penalty schedule and restoration stage on a batch of starts"""
    logw = safe_log(w0)
    best = BestTracker(len(w0))

    def penalised(lam):
        def value_grad(w):
            i_joint, i_cond, g_joint, g_cond = channel_terms(q, w, grads=True)
            best.update(w, i_joint, i_cond, i_cond <= opts.tol_markov)
            return i_joint + lam*i_cond, g_joint + lam*g_cond

        return value_grad

    def restoration(w):
        i_joint, i_cond, _, g_cond = channel_terms(q, w, grads=True)
        best.update(w, i_joint, i_cond, i_cond <= opts.tol_markov)
        return i_cond, g_cond

    for lam in tqdm(opts.penalty_schedule, desc="penalty", unit="stage", leave=False,
                    disable=progress_disabled(log)):
        _, its = descend(logw, penalised(lam), opts.eg_step / (1+lam), opts.max_iters,
                         opts.tol_objective, opts.eg_decay)
        log.debug("lambda=%g: %d iterations, %d/%d restarts feasible so far", lam, its,
                  best.found.sum(), len(w0))
    descend(logw, restoration, opts.eg_step, opts.max_iters, opts.tol_objective, opts.eg_decay)
    w_end = np.exp(logw)
    _, cond_end = channel_terms(q, w_end)
    return best.score, best.cond, best.w, cond_end, w_end


def _result(q, w, **kwargs):
    ch = AuxChannel(w)
    full = compose(q, ch)
    return WynerResult(
        value=mutual_information(full, 'xy', 'u'),
        markov_defect=conditional_mutual_information(full, 'x', 'y', 'u'), channel=ch,
        **kwargs)


def wyner_ci(q, card_u=None, opts=None):
    """
    Wyner's common information of `q` over auxiliaries with `card_u` symbols.
    Arguments:
      q: JointPmf.
      card_u: |U|, default |X||Y|.
      opts: SolverOptions.
    Returns:
      WynerResult of the lowest I(X,Y;U) among the restarts meeting the
      Markov tolerance (ties: smaller I(X;Y|U), then lexicographic channel).
    Raises:
      MarkovFeasibilityError if no restart is feasible.
    """
    opts = opts or SolverOptions()
    nx, ny = q.shape
    card_u = nx * ny if card_u is None else card_u
    if not isinstance(card_u, (int, np.integer)) or card_u < 1:
        raise ValueError(f"card_u must be a positive integer: got {card_u}")
    card_u = int(card_u)
    qp = np.ascontiguousarray(q.probs, dtype=np.float64)
    score, cond, w_best, cond_end, w_end = _solve_card(qp.tobytes(), qp.shape, card_u, opts)

    bracket = {
        'lower': mutual_information(q, 'x', 'y'),
        'upper': min(entropy(marginal(q, 'x')), entropy(marginal(q, 'y')))}
    feasible = np.flatnonzero(np.isfinite(score))
    if not feasible.size:
        i = pick_best(cond_end, cond_end, w_end)
        res = _result(q, w_end[i], feasible_restarts=0, **bracket)
        log.error("no restart reached I(X;Y|U) <= %g (best %.3g)", opts.tol_markov,
                  res.markov_defect)
        raise MarkovFeasibilityError(
            f"Markov defect {res.markov_defect:.3g} exceeds {opts.tol_markov:g}"
            f" after {len(opts.penalty_schedule)} penalty stages", res)
    if feasible.size < len(score):
        log.warning("%d/%d restarts ended infeasible", len(score) - feasible.size, len(score))
    i = feasible[pick_best(score[feasible], cond[feasible], w_best[feasible])]
    res = _result(q, w_best[i], feasible_restarts=int(feasible.size), **bracket)
    log.info("C(X;Y) <= %.9g (|U|=%d, defect %.3g)", res.value, card_u, res.markov_defect)
    return res


def no_sr_rate(q, opts=None):
    """optimal rate without shared randomness: C(X;Y) with |U| = |X||Y| + 2"""
    nx, ny = q.shape
    return wyner_ci(q, nx*ny + 2, opts)


def dsbs_wyner_channel(a):
    """
    Closed-form minimiser p*(u|x,y) for DSBS(a), with b = (1 - sqrt(1 - 2a))/2:
    p*(0|0,1) = p*(1|1,0) = 1/2, p*(0|1,1) = p*(1|0,0) = b^2/(1-a).
    """
    if not 0 < a < .5:
        raise ValueError(f"crossover must be in (0, 0.5): got {a}")
    b = (1 - np.sqrt(1 - 2*a)) / 2
    c = b**2 / (1-a)
    cond = np.empty((2, 2, 2))
    cond[0, 0] = 1 - c, c
    cond[1, 1] = c, 1 - c
    cond[0, 1] = cond[1, 0] = .5
    return AuxChannel(cond)
