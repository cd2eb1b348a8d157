"""Shannon information measures (in bits) of finite joint p.m.f.s"""
import logging

import numpy as np
from scipy.optimize import bisect
from scipy.special import entr, rel_entr

from .. import params
from .core import Pmf, _axis_names, _table, check_simplex

log = logging.getLogger(__name__)
LN2 = np.log(2)


def _h(arr):
    """entropy of a non-negative table, 0 log 0 = 0"""
    return float(entr(arr).sum() / LN2)


def entropy(p):
    """H(p) = -sum p log2 p"""
    p = p if isinstance(p, Pmf) else Pmf(p)
    return _h(p.probs)


def binary_entropy(a):
    """h(a) = -a log2 a - (1-a) log2(1-a); `a` may be an array"""
    arr = np.asarray(a, dtype=np.float64)
    if np.any((arr < 0) | (arr > 1)) or not np.all(np.isfinite(arr)):
        raise ValueError(f"binary entropy argument must be in [0, 1]: got {a}")
    res = (entr(arr) + entr(1 - arr)) / LN2
    return float(res) if res.ndim == 0 else res


def inverse_binary_entropy(y):
    """unique x in [0, 0.5] with h(x) = y (bisection)"""
    if not 0 <= y <= 1:
        raise ValueError(f"binary entropy value must be in [0, 1]: got {y}")
    if y == 0:
        return 0.
    if y == 1:
        return .5
    return bisect(lambda x: binary_entropy(x) - y, 0, .5, xtol=params.bisect_xtol,
                  maxiter=params.bisect_iters)


def entropy_vec4(p1, p2, p3, p4):
    """entropy of the 4-point distribution (p1, p2, p3, p4)"""
    probs = np.array([p1, p2, p3, p4], dtype=np.float64)
    check_simplex(probs, what="4-vector")
    return _h(probs)


def joint_entropy(p, axes):
    """H of the variables `axes` of a FullJoint/JointPmf (0 for no axes)"""
    arr, names = _table(p)
    axes = _axis_names(axes, names) if axes else ()
    if not axes:
        return 0.
    drop = tuple(i for i, n in enumerate(names) if n not in axes)
    return _h(arr.sum(axis=drop))


def _groups(names, *groups):
    res = [_axis_names(g, names) if g else () for g in groups]
    seen = set()
    for g in res:
        if seen & set(g):
            raise ValueError(f"overlapping variable groups: {res}")
        seen |= set(g)
    return res


def _kept(arr, names, keep):
    """marginal table over `keep`, other axes kept with size 1"""
    drop = tuple(i for i, n in enumerate(names) if n not in keep)
    return arr.sum(axis=drop, keepdims=True)


def mutual_information(p, group_a, group_b):
    """I(A;B) = D(p(a,b) || p(a)p(b))"""
    _, names = _table(p)
    a, b = _groups(names, group_a, group_b)
    if not a or not b:
        raise ValueError("mutual information needs two non-empty groups")
    return conditional_mutual_information(p, a, b)


def conditional_mutual_information(p, group_a, group_b, group_c=()):
    """I(A;B|C) = D(p(a,b,c) || p(a,c)p(b,c)/p(c))"""
    arr, names = _table(p)
    a, b, c = _groups(names, group_a, group_b, group_c)
    if not a or not b:
        raise ValueError("conditional mutual information needs non-empty A and B")
    p_abc = _kept(arr, names, a + b + c)
    p_c = _kept(arr, names, c)
    ref = np.divide(
        _kept(arr, names, a + c) * _kept(arr, names, b + c), p_c, out=np.zeros(p_abc.shape),
        where=p_c > 0)
    return float(rel_entr(p_abc, ref).sum() / LN2)
