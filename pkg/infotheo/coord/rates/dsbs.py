"""
Doubly symmetric binary source: closed forms along the channel family
p^t = t p_indep + (1-t) p*, interpolating between Wyner's minimiser p*
(t = 0) and an auxiliary independent of (X, Y) (t = 1).
"""
import logging
from dataclasses import dataclass

import numpy as np

from .. import params
from ..opt.wyner import dsbs_wyner_channel
from ..pmf import AuxChannel, binary_entropy, entropy_vec4, inverse_binary_entropy

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class DsbsParams:
    """crossover `a` in [0, 0.5] and interpolation `t` in [0, 1]"""
    a: float
    t: float = 0.

    def __post_init__(self):
        if not 0 <= self.a <= .5:
            raise ValueError(f"crossover must be in [0, 0.5]: got {self.a}")
        if not 0 <= self.t <= 1:
            raise ValueError(f"interpolation must be in [0, 1]: got {self.t}")

    @property
    def b(self):
        """b = (1 - sqrt(1 - 2a))/2, i.e. b(1-b) = a/2"""
        return (1 - np.sqrt(1 - 2 * self.a)) / 2

    @property
    def alpha(self):
        """P(X=Y=U=0) = (1-t) b^2 + t(1-a)/2"""
        return (1 - self.t) * self.b**2 + self.t * (1 - self.a) / 2

    def h4(self):
        """entropy of (alpha, a/2, a/2, 1 - a - alpha)"""
        a, alpha = self.a, self.alpha
        return entropy_vec4(alpha, a / 2, a / 2, max(1 - a - alpha, 0.))


@dataclass(frozen=True)
class CurvePoint:
    t: float
    f: float
    i_joint: float
    i_cond: float


def interpolated_channel(a, t):
    """p^t(u|x,y) = t/2 + (1-t) p*(u|x,y)"""
    if not 0 <= t <= 1:
        raise ValueError(f"interpolation must be in [0, 1]: got {t}")
    pstar = dsbs_wyner_channel(a)
    return AuxChannel(t * .5 + (1-t) * pstar.cond)


def i_joint_closed_form(a, t):
    """I(X,Y;U) under p^t: 1 + h(a) - h(alpha, a/2, a/2, 1-a-alpha)"""
    par = DsbsParams(a, t)
    return 1 + binary_entropy(a) - par.h4()


def i_cond_closed_form(a, t):
    """I(X;Y|U) under p^t: 2h(alpha + a/2) - h(alpha, a/2, a/2, 1-a-alpha)"""
    par = DsbsParams(a, t)
    return 2 * binary_entropy(min(par.alpha + a/2, 1.)) - par.h4()


def f_of_t(a, t):
    """max{I(X;Y|U), (I(X,Y;U) + I(X;Y|U))/2} under p^t"""
    i_joint = i_joint_closed_form(a, t)
    i_cond = i_cond_closed_form(a, t)
    return CurvePoint(t=float(t), f=max(i_cond, (i_joint+i_cond) / 2), i_joint=i_joint,
                      i_cond=i_cond)


def t_star(a):
    """
    The t at which I(X,Y;U) = I(X;Y|U) under p^t:
    (h^-1((1 + h(a))/2) - a/2 - b^2) / ((1-a)/2 - b^2).
    """
    if not 0 < a < .5:
        raise ValueError(f"crossover must be in (0, 0.5): got {a}")
    b = DsbsParams(a).b
    denom = (1-a) / 2 - b**2
    if denom <= 1e-9:
        raise ValueError(f"crossover {a} too close to 0.5: denominator {denom:.3g}")
    return (inverse_binary_entropy((1 + binary_entropy(a)) / 2) - a/2 - b**2) / denom


def emit_curve(a, num_points=params.curve_points):
    """f(t) on `num_points` uniformly spaced t in [0, 1] (endpoints included)"""
    if num_points < 2:
        raise ValueError(f"need at least 2 points: got {num_points}")
    return [f_of_t(a, t) for t in np.linspace(0, 1, num_points)]


def dsbs_summary(a):
    """Wyner's C, I(X;Y), curve endpoints, t*, f(t*) and the gap below the endpoints"""
    ts = t_star(a)
    b = DsbsParams(a).b
    f0, f1, fts = (f_of_t(a, t).f for t in (0., 1., ts))
    res = {
        'a': a, 'wyner': 1 + binary_entropy(a) - 2 * binary_entropy(b),
        'mi': 1 - binary_entropy(a), 'f0': f0, 'f1': f1, 't_star': ts, 'f_t_star': fts,
        'gap': min(f0, f1) - fts}
    log.info("DSBS(%g): t*=%.6f, f(t*)=%.9g, gap %.6g", a, ts, fts, res['gap'])
    return res
