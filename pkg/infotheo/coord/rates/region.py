"""
Achievable region of rate triples (R, R1, R2): common message rate R and
shared-randomness rates R1, R2, certified by an auxiliary p(u,u1,u2|x,y):

  R + R1       >= I(X,Y;U,U1)
  R + R2       >= I(X,Y;U,U2)
  R            >= I(U1;U2|U)
  R + R1 + R2  >= I(U1;U2|U) + I(X,Y;U,U1,U2)
  2R + R1 + R2 >= I(U1;U2|U) + I(X,Y;U) + I(X,Y;U,U1,U2)
  2R           >= I(U1;U2|U) + I(X,Y;U)

valid when p = p(u,u1,u2) p(x|u,u1) p(y|u,u2).
For X = Y the exact region is R + min{R1, R2} >= H(X), R >= H(X)/2.
"""
import logging
from dataclasses import astuple, dataclass

import numpy as np

from .. import params
from ..pmf import (
    compose,
    conditional_mutual_information,
    entropy,
    extend_channel,
    is_xy_equal,
    joint_entropy,
    marginal,
    mutual_information,
)
from ..tools import pmap

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class RateTriple:
    r: float
    r1: float
    r2: float

    def __post_init__(self):
        for name, val in zip(('r', 'r1', 'r2'), astuple(self)):
            if not np.isfinite(val) or val < 0:
                raise ValueError(f"rate {name} must be finite and non-negative: got {val}")

    @classmethod
    def parse(cls, text):
        """from "R,R1,R2" """
        try:
            vals = [float(i) for i in str(text).split(',')]
        except ValueError:
            raise ValueError(f"cannot parse rates {text!r}") from None
        if len(vals) != 3:
            raise ValueError(f"expected 3 comma-separated rates R,R1,R2: got {text!r}")
        return cls(*vals)


@dataclass(frozen=True)
class RegionBounds:
    """right-hand sides of the six inequalities, named after their left-hand sides"""
    b_r_r1: float
    b_r_r2: float
    b_r: float
    b_r_r1_r2: float
    b_2r_r1_r2: float
    b_2r: float
    markov_defect: float = 0.

    def slack(self, rates):
        """left minus right-hand sides (all >= 0 inside the region)"""
        r, r1, r2 = rates.r, rates.r1, rates.r2
        return np.array([
            r + r1 - self.b_r_r1, r + r2 - self.b_r_r2, r - self.b_r,
            r + r1 + r2 - self.b_r_r1_r2, 2*r + r1 + r2 - self.b_2r_r1_r2,
            2*r - self.b_2r])

    def contains(self, rates, tol=params.tol_member):
        return bool(np.all(self.slack(rates) >= -tol))


def check_markov_quadruple(full, tol=params.tol_markov):
    """
    Distance of `full` from the factorisation p(u,u1,u2) p(x|u,u1) p(y|u,u2),
    i.e. the divergence I(X;Y,U2|U,U1) + I(Y;U1|U,U2).
    Returns:
      (defect <= tol, defect)
    """
    defect = (conditional_mutual_information(full, 'x', ('y', 'u2'), ('u', 'u1')) +
              conditional_mutual_information(full, 'y', 'u1', ('u', 'u2')))
    defect = max(defect, 0.)
    return defect <= tol, defect


def achievable_bounds(q, aux, tol=params.tol_markov):
    """
    Evaluate the six bounds of the region certified by `aux`.
    Raises `ValueError` if the Markov defect of `q` and `aux` exceeds `tol`.
    """
    full = compose(q, aux)
    ok, defect = check_markov_quadruple(full, tol)
    if not ok:
        log.error("Markov defect %.3g > %g", defect, tol)
        raise ValueError(
            f"auxiliary violates X-(U,U1)-(U,U2)-Y: defect {defect:.6g} > {tol:g}")

    def i_xy(*axes):
        return mutual_information(full, 'xy', axes)

    i12 = max(conditional_mutual_information(full, 'u1', 'u2', 'u'), 0.)
    i_u, i_uuu = i_xy('u'), i_xy('u', 'u1', 'u2')
    return RegionBounds(
        b_r_r1=i_xy('u', 'u1'), b_r_r2=i_xy('u', 'u2'), b_r=i12, b_r_r1_r2=i12 + i_uuu,
        b_2r_r1_r2=i12 + i_u + i_uuu, b_2r=i12 + i_u, markov_defect=defect)


def in_achievable_region(q, aux, rates):
    bounds = achievable_bounds(q, aux)
    res = bounds.contains(rates)
    log.debug("%s: %s (slack %s)", rates, res, bounds.slack(rates))
    return res


def xy_equal_region(hx, rates, tol=params.tol_member):
    """exact region for X = Y: R + min{R1, R2} >= H(X) and R >= H(X)/2"""
    if not hx >= 0:
        raise ValueError(f"entropy must be non-negative: got {hx}")
    return bool(rates.r + min(rates.r1, rates.r2) >= hx - tol and rates.r >= hx/2 - tol)


def xy_equal_region_for(q, rates):
    """`xy_equal_region` with H(X) computed from a source supported on X = Y"""
    if not is_xy_equal(q):
        raise ValueError("source is not supported on the diagonal X = Y")
    return xy_equal_region(entropy(marginal(q, 'x')), rates)


def min_common_rate(bounds, r1, r2):
    """smallest R with (R, r1, r2) in the region certified by `bounds`"""
    r1, r2 = np.broadcast_arrays(
        np.asarray(r1, dtype=np.float64), np.asarray(r2, dtype=np.float64))
    res = np.max([
        np.zeros_like(r1), bounds.b_r_r1 - r1, bounds.b_r_r2 - r2, np.full_like(r1, bounds.b_r),
        bounds.b_r_r1_r2 - r1 - r2, (bounds.b_2r_r1_r2-r1-r2) / 2,
        np.full_like(r1, bounds.b_2r / 2)], axis=0)
    return float(res) if res.ndim == 0 else res


def scan_min_rate(bounds, r1_grid, r2_grid, threads=1):
    """`min_common_rate` on the grid r1_grid x r2_grid (rows: r1)"""
    r1_grid = np.asarray(r1_grid, dtype=np.float64)
    r2_grid = np.asarray(r2_grid, dtype=np.float64)
    rows = pmap(lambda r1: min_common_rate(bounds, r1, r2_grid), r1_grid, threads=threads)
    return np.array(rows).reshape(len(r1_grid), len(r2_grid))


def ulsr_certificate(q, ch):
    """
    Auxiliary (U, U1=X, U2=Y) built from the U-part of `ch` and the rate triple
    (max{I(X;Y|U), (I(X,Y;U) + I(X;Y|U))/2}, H(X,Y) + 1, H(X,Y) + 1)
    which it certifies as achievable.
    """
    aux = extend_channel(ch, 'x', 'y')
    full = compose(q, aux)
    i_joint = mutual_information(full, 'xy', 'u')
    i_cond = max(conditional_mutual_information(full, 'x', 'y', 'u'), 0.)
    big = joint_entropy(q, 'xy') + 1
    return aux, RateTriple(max(i_cond, (i_joint+i_cond) / 2), big, big)
