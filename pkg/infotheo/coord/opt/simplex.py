"""
Batched exponentiated-gradient descent on the conditional simplices of
channels p(u|x,y), shared by the Wyner and UL-SR solvers.

A batch holds R channels as an array `w` of shape (R, |X|, |Y|, |U|);
updates run in the log domain so that zero entries stay exactly zero.
"""
import logging

import numpy as np
from scipy.special import entr, log_softmax

log = logging.getLogger(__name__)
LN2 = np.log(2)


def safe_log(arr, zero=-np.inf):
    """natural log with log(0) = `zero` and no warnings"""
    res = np.full(np.shape(arr), zero, dtype=np.float64)
    np.log(arr, out=res, where=arr > 0)
    return res


def channel_terms(q, w, grads=False):
    """
    I(X,Y;U) and I(X;Y|U) in bits for each channel of the batch.
    Arguments:
      q: (|X|, |Y|) source probabilities.
      w: (R, |X|, |Y|, |U|) channels.
      grads: also return the gradients w.r.t. p(u|x,y) divided by q(x,y)
        (nats, zero off the support of p(x,y,u)).
    """
    P = q[None, :, :, None] * w
    pu = P.sum(axis=(1, 2))
    pxu = P.sum(axis=2)
    pyu = P.sum(axis=1)
    h_u = entr(pu).sum(axis=-1)
    h_xyu = entr(P).sum(axis=(1, 2, 3))
    i_joint = (entr(q).sum() + h_u - h_xyu) / LN2
    i_cond = (entr(pxu).sum(axis=(1, 2)) + entr(pyu).sum(axis=(1, 2)) - h_u - h_xyu) / LN2
    if not grads:
        return i_joint, i_cond

    # off the support every log is replaced by 0 and masked out
    on = P > 0
    lP = safe_log(P, 0)
    lu = safe_log(pu, 0)[:, None, None, :]
    g_joint = np.where(on, lP - lu, 0)
    lxu = safe_log(pxu, 0)[:, :, None, :]
    lyu = safe_log(pyu, 0)[:, None, :, :]
    g_cond = np.where(on, lP + lu - lxu - lyu, 0)
    return i_joint, i_cond, g_joint, g_cond


def eg_step(logw, grad, eta):
    """multiplicative update w <- w exp(-eta grad), renormalised over u"""
    return log_softmax(logw - eta*grad, axis=-1)


def step_size(eta0, k, decay):
    """diminishing step eta0 / sqrt(1 + k/decay)"""
    return eta0 / np.sqrt(1 + k/decay)


def descend(logw, value_grad, eta0, max_iters, tol, decay):
    """
    Exponentiated-gradient descent of a whole batch.
    A restart freezes once its objective changes by less than `tol`.
    Arguments:
      logw: (R, |X|, |Y|, |U|) log-channels, updated in place.
      value_grad(w): returns (values (R,), grads like w); it sees the start
        point and every iterate, so it may also record the best iterates.
    Returns:
      (final objective values, number of iterations run).
    """
    w = np.exp(logw)
    val, grad = value_grad(w)
    active = np.ones(len(logw), dtype=bool)
    k = 0
    while k < max_iters and active.any():
        eta = step_size(eta0, k, decay)
        logw[active] = eg_step(logw[active], grad[active], eta)
        w = np.exp(logw)
        new, grad = value_grad(w)
        active &= np.abs(new - val) >= tol
        val = new
        k += 1
    log.debug("stopped after %d iterations (%d restarts still moving)", k, active.sum())
    return val, k


def random_start(shape, rng):
    """channel with uniformly random (Dirichlet(1)) rows"""
    return rng.dirichlet(np.ones(shape[-1]), size=shape[:-1])


def structured_starts(q, card_u):
    """U = X and U = Y (when they fit into `card_u` symbols)"""
    nx, ny = q.shape
    res = []
    if card_u >= nx:
        w = np.zeros((nx, ny, card_u))
        w[:, :, :nx] = np.eye(nx)[:, None, :]
        res.append(w)
    if card_u >= ny and not (nx == ny == 1):
        w = np.zeros((nx, ny, card_u))
        w[:, :, :ny] = np.eye(ny)[None, :, :]
        res.append(w)
    return res


def pick_best(values, conds, channels):
    """
    Index of the smallest value; ties broken by the smaller `conds`
    then the lexicographically smaller channel.
    """
    return min(range(len(values)),
               key=lambda i: (values[i], conds[i], tuple(np.ravel(channels[i]))))


class BestTracker:
    """Lowest score seen by each restart of a batch among its feasible iterates"""
    def __init__(self, nrestarts):
        self.score = np.full(nrestarts, np.inf)
        self.cond = np.full(nrestarts, np.inf)
        self.w = None

    def update(self, w, score, cond, feasible=True):
        if self.w is None:
            self.w = np.zeros_like(w)
        better = np.asarray(feasible) & (score < self.score)
        if better.any():
            self.score[better] = score[better]
            self.cond[better] = cond[better]
            self.w[better] = w[better]

    @property
    def found(self):
        return np.isfinite(self.score)
