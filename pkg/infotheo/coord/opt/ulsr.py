"""
Optimal transmission rate with unlimited shared randomness:
min over p(u|x,y) of max{I(X;Y|U), I(X,Y;U)} (MAX_PAIR) or, equivalently,
max{I(X;Y|U), (I(X,Y;U) + I(X;Y|U))/2} (MAX_AVG), with |U| <= |X||Y| + 2.

The max is smoothed by a log-sum-exp at increasing inverse temperatures,
then polished by subgradient steps on the active term of the exact max.
"""
import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.special import logsumexp, softmax
from tqdm.auto import tqdm

from ..pmf import (
    AuxChannel,
    compose,
    conditional_mutual_information,
    embed_channel,
    mutual_information,
)
from ..tools import pmap, progress_disabled, split_range
from .simplex import BestTracker, channel_terms, descend, pick_best, random_start, safe_log
from .wyner import MarkovFeasibilityError, SolverOptions, wyner_ci

log = logging.getLogger(__name__)
# smooth-max steps relative to `SolverOptions.eg_step`
SMOOTH_STEP = .5


class UlsrForm(Enum):
    MAX_PAIR = 'maxpair'
    MAX_AVG = 'maxavg'

    @classmethod
    def parse(cls, form):
        if isinstance(form, cls):
            return form
        try:
            return cls(str(form).lower().replace('_', ''))
        except ValueError:
            raise ValueError(f"unrecognised form {form!r}: expected one of"
                             f" {[i.value for i in cls]}") from None

    def terms(self, i_joint, i_cond):
        """the two terms (A, B) of max{A, B}"""
        if self is UlsrForm.MAX_PAIR:
            return i_cond, i_joint
        return i_cond, (i_joint+i_cond) / 2

    def value(self, i_joint, i_cond):
        return np.maximum(*self.terms(i_joint, i_cond))


@dataclass(frozen=True, eq=False)
class UlsrResult:
    """
    value: objective of `form` at `channel` [bits].
    term_cond, term_joint: I(X;Y|U) and I(X,Y;U) [bits].
    restarts, iterations: number of starts and of iterations run.
    """
    value: float
    channel: AuxChannel
    term_cond: float
    term_joint: float
    form: UlsrForm = UlsrForm.MAX_AVG
    restarts: int = 0
    iterations: int = 0


def ulsr_objective(q, ch, form=UlsrForm.MAX_AVG):
    """exact objective of `form` at the channel `ch` (U1, U2 are ignored)"""
    form = UlsrForm.parse(form)
    full = compose(q, ch)
    i_joint = max(mutual_information(full, 'xy', 'u'), 0.)
    i_cond = max(conditional_mutual_information(full, 'x', 'y', 'u'), 0.)
    return UlsrResult(value=float(form.value(i_joint, i_cond)), channel=ch, term_cond=i_cond,
                      term_joint=i_joint, form=form)


def _dsbs_crossover(q):
    """crossover `a` if `q` is a non-degenerate DSBS, else None"""
    p = q.probs
    if p.shape != (2, 2):
        return None
    if not (np.isclose(p[0, 0], p[1, 1], rtol=0, atol=1e-12)
            and np.isclose(p[0, 1], p[1, 0], rtol=0, atol=1e-12)):
        return None
    a = 2 * p[0, 1]
    return a if 0 < a < .5 else None


def _starts(q, form, opts):
    """structured starts followed by random ones"""
    nx, ny = q.shape
    card_u = nx*ny + 2
    shape = (nx, ny, card_u)
    degenerate = np.zeros(shape)
    degenerate[..., 0] = 1
    fixed = [degenerate]

    try:
        wyn = wyner_ci(q, nx * ny, opts)
    except MarkovFeasibilityError as exc:
        log.warning("Wyner start is not Markov: %s", exc)
        wyn = exc.result
    fixed.append(embed_channel(wyn.channel, card_u).u_channel())

    a = _dsbs_crossover(q)
    if a is not None:
        from ..rates.dsbs import interpolated_channel, t_star
        ts = list(opts.dsbs_starts)
        if opts.tstar_start:
            try:
                ts.append(t_star(a))
            except ValueError as exc:
                log.debug("no t* start: %s", exc)
        fixed.extend(embed_channel(interpolated_channel(a, t), card_u).u_channel() for t in ts)

    if form is UlsrForm.MAX_PAIR and wyn.value > 0:
        # time sharing between the Wyner auxiliary and a constant one
        i_xy = mutual_information(q, 'x', 'y')
        theta = i_xy / (wyn.value+i_xy)
        share = np.zeros(shape)
        share[..., :nx * ny] = theta * wyn.channel.u_channel()
        share[..., nx * ny] = 1 - theta
        fixed.append(share)

    nstarts = max(opts.restarts, len(fixed))
    return np.stack([
        fixed[i] if i < len(fixed) else random_start(shape, np.random.default_rng(
            [opts.seed, i])) for i in range(nstarts)])


def _solve(q, w0, form, opts):
    logw = safe_log(w0)
    best = BestTracker(len(w0))

    def smooth(beta):
        def value_grad(w):
            i_joint, i_cond, g_joint, g_cond = channel_terms(q, w, grads=True)
            best.update(w, form.value(i_joint, i_cond), i_cond)
            ta, tb = form.terms(i_joint, i_cond)
            stack = np.stack([ta, tb], axis=-1) * beta
            wa, wb = np.moveaxis(softmax(stack, axis=-1), -1, 0)
            gb = g_joint if form is UlsrForm.MAX_PAIR else (g_joint+g_cond) / 2
            grad = wa[:, None, None, None] * g_cond + wb[:, None, None, None] * gb
            return logsumexp(stack, axis=-1) / beta, grad

        return value_grad

    def polish(w):
        i_joint, i_cond, g_joint, g_cond = channel_terms(q, w, grads=True)
        value = form.value(i_joint, i_cond)
        best.update(w, value, i_cond)
        ta, tb = form.terms(i_joint, i_cond)
        gb = g_joint if form is UlsrForm.MAX_PAIR else (g_joint+g_cond) / 2
        return value, np.where((ta >= tb)[:, None, None, None], g_cond, gb)

    iters = 0
    for beta in tqdm(opts.temperatures, desc="smooth max", unit="stage", leave=False,
                     disable=progress_disabled(log)):
        _, its = descend(logw, smooth(beta), opts.eg_step * SMOOTH_STEP, opts.max_iters,
                         opts.tol_objective, opts.eg_decay)
        iters += its
        log.debug("beta=%g: %d iterations, best %.9g", beta, its, best.score.min())
    _, its = descend(logw, polish, opts.polish_step, opts.max_iters, opts.tol_objective, 1.)
    return best.score, best.cond, best.w, iters + its


def ulsr_rate(q, form=UlsrForm.MAX_AVG, opts=None):
    """
    Optimal rate with unlimited shared randomness over |U| = |X||Y| + 2.
    Starts: constant U, Wyner's channel, p^t for t in `opts.dsbs_starts` and t*
    (DSBS sources only; t* if `opts.tstar_start`), Wyner/constant time sharing
    (MAX_PAIR only) and random rows.
    Returns the best exact objective seen (ties: smaller I(X;Y|U), then lexicographic).
    """
    form = UlsrForm.parse(form)
    opts = opts or SolverOptions()
    qp = q.probs
    w0 = _starts(q, form, opts)
    chunks = split_range(len(w0), opts.threads)
    parts = pmap(lambda idx: _solve(qp, w0[idx], form, opts), chunks, threads=opts.threads)
    score = np.concatenate([i[0] for i in parts])
    cond = np.concatenate([i[1] for i in parts])
    w_best = np.concatenate([i[2] for i in parts])
    iters = max(i[3] for i in parts)

    i = pick_best(score, cond, w_best)
    res = ulsr_objective(q, AuxChannel(w_best[i]), form)
    log.info("R(UL-SR) <= %.9g (%s: I(X;Y|U)=%.6g, I(X,Y;U)=%.6g)", res.value, form.value,
             res.term_cond, res.term_joint)
    return UlsrResult(value=res.value, channel=res.channel, term_cond=res.term_cond,
                      term_joint=res.term_joint, form=form, restarts=len(w0), iterations=iters)


def ulsr_baseline(q, opts=None):
    """
    Classical upper bound min{C(X;Y)/2, I(X;Y)} on the UL-SR rate and
    which corner achieves it.
    """
    i_xy = mutual_information(q, 'x', 'y')
    try:
        c_xy = wyner_ci(q, None, opts).value
    except MarkovFeasibilityError as exc:
        log.warning("Wyner solver: %s", exc)
        c_xy = exc.result.value
    half = c_xy / 2
    return {
        'wyner': c_xy, 'mi': i_xy, 'half_wyner': half, 'bound': min(half, i_xy),
        'corner': 'half_wyner' if half <= i_xy else 'mi'}
