"""
Exact finite-alphabet probability objects: distributions, joint sources,
auxiliary channels p(u,u1,u2|x,y) and their compositions.
"""
import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .. import params

log = logging.getLogger(__name__)

# > axis order of every FullJoint
AXES = ('x', 'y', 'u', 'u1', 'u2')
JOINT_AXES = ('x', 'y')


def _frozen(arr):
    """read-only float64 copy"""
    res = np.array(arr, dtype=np.float64)
    res.setflags(write=False)
    return res


def check_simplex(probs, tol=params.tol_simplex, what='distribution'):
    """Raises `ValueError` unless `probs` is a point of the simplex (no renormalisation)"""
    if probs.size == 0:
        raise ValueError(f"{what} is empty")
    if not np.all(np.isfinite(probs)):
        raise ValueError(f"{what} has non-finite entries")
    if np.any(probs < 0):
        raise ValueError(f"{what} has a negative entry: {probs.min()!r}")
    total = probs.sum()
    if abs(total - 1) > tol:
        raise ValueError(f"{what} sums to {total!r}: deviates from 1 by more than {tol:g}")


@dataclass(frozen=True, eq=False)
class Pmf:
    """p(x) over a finite alphabet"""
    probs: np.ndarray

    def __post_init__(self):
        probs = _frozen(self.probs)
        if probs.ndim != 1:
            raise IndexError(f"must be 1D: got {probs.ndim}D")
        check_simplex(probs, what="Pmf")
        object.__setattr__(self, 'probs', probs)

    @property
    def alphabet_size(self):
        return self.probs.shape[0]


@dataclass(frozen=True, eq=False)
class JointPmf:
    """
    q(x,y) on a |X| x |Y| grid (row index = x).
    Arguments:
      probs: 2D matrix of probabilities.
      labels_x, labels_y: optional symbol names.
    """
    probs: np.ndarray
    labels_x: Optional[Tuple[str, ...]] = None
    labels_y: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        probs = _frozen(self.probs)
        if probs.ndim != 2:
            raise IndexError(f"must be 2D: got {probs.ndim}D")
        check_simplex(probs, what="JointPmf")
        object.__setattr__(self, 'probs', probs)
        for name, size in (('labels_x', probs.shape[0]), ('labels_y', probs.shape[1])):
            labels = getattr(self, name)
            if labels is None:
                continue
            labels = tuple(str(i) for i in labels)
            if len(labels) != size:
                raise IndexError(f"{name} must have {size} entries: got {len(labels)}")
            object.__setattr__(self, name, labels)

    @property
    def shape(self):
        return self.probs.shape

    @property
    def support(self):
        return self.probs > 0


@dataclass(frozen=True, eq=False)
class FullJoint:
    """p(x,y,u,u1,u2); axes of cardinality 1 stand for absent variables"""
    probs: np.ndarray

    def __post_init__(self):
        probs = _frozen(self.probs)
        if probs.ndim != len(AXES):
            raise IndexError(f"must be {len(AXES)}D {AXES}: got {probs.ndim}D")
        check_simplex(probs, what="FullJoint")
        object.__setattr__(self, 'probs', probs)

    @property
    def shape(self):
        return self.probs.shape

    def card(self, axis):
        return self.probs.shape[AXES.index(axis)]


@dataclass(frozen=True, eq=False)
class AuxChannel:
    """
    Conditional p.m.f. p(u,u1,u2|x,y).
    Arguments:
      cond: array (|X|, |Y|, |U|) or (|X|, |Y|, |U|, |U1|, |U2|).
      defined: optional boolean (|X|, |Y|) mask of the rows which are given;
        rows outside the mask are ignored (and stored as zeros).
    """
    cond: np.ndarray
    defined: Optional[np.ndarray] = None

    def __post_init__(self):
        cond = np.array(self.cond, dtype=np.float64)
        if cond.ndim == 3:
            cond = cond[..., None, None]
        if cond.ndim != 5:
            raise IndexError(f"must be 3D or 5D: got {cond.ndim}D")
        if self.defined is None:
            defined = np.ones(cond.shape[:2], dtype=bool)
        else:
            defined = np.array(self.defined, dtype=bool)
            if defined.shape != cond.shape[:2]:
                raise IndexError(f"defined must be {cond.shape[:2]}: got {defined.shape}")
        cond[~defined] = 0
        rows = cond[defined].reshape(-1, int(np.prod(cond.shape[2:])))
        if not np.all(np.isfinite(rows)) or np.any(rows < 0):
            raise ValueError("AuxChannel has negative or non-finite entries")
        dev = np.abs(rows.sum(axis=1) - 1)
        if dev.size and dev.max() > params.tol_simplex:
            x, y = np.argwhere(defined)[np.argmax(dev)]
            total = rows.sum(axis=1)[np.argmax(dev)]
            raise ValueError(f"AuxChannel row (x,y)=({x},{y}) sums to {total:.12g}")
        cond.setflags(write=False)
        defined.setflags(write=False)
        object.__setattr__(self, 'cond', cond)
        object.__setattr__(self, 'defined', defined)

    @property
    def card_u(self):
        return self.cond.shape[2]

    @property
    def card_u1(self):
        return self.cond.shape[3]

    @property
    def card_u2(self):
        return self.cond.shape[4]

    @property
    def shape_xy(self):
        return self.cond.shape[:2]

    def row(self, x, y):
        """p(u,u1,u2|x,y) flattened row-major as a Pmf"""
        if not self.defined[x, y]:
            raise ValueError(f"no conditional row for (x,y)=({x},{y})")
        return Pmf(self.cond[x, y].ravel())

    def u_channel(self):
        """p(u|x,y) as a (|X|, |Y|, |U|) array (U1, U2 summed out)"""
        return self.cond.sum(axis=(3, 4))


def _axis_names(axes, names):
    """normalise `axes` (name, 'xy', 'u,u1', int or iterable) into a tuple of names"""
    if isinstance(axes, (int, np.integer)):
        axes = (names[axes],)
    elif isinstance(axes, str):
        if axes in names:
            axes = (axes,)
        elif ',' in axes:
            axes = tuple(i.strip() for i in axes.split(',') if i.strip())
        else:
            axes = tuple(axes)
    else:
        axes = tuple(names[i] if isinstance(i, (int, np.integer)) else i for i in axes)
    unknown = [i for i in axes if i not in names]
    if unknown:
        raise ValueError(f"unrecognised axes {unknown}: expected some of {names}")
    if len(set(axes)) != len(axes):
        raise ValueError(f"repeated axes: {axes}")
    return axes


def _table(p):
    """(array, axis names) of any supported p.m.f. object"""
    if isinstance(p, FullJoint):
        return p.probs, AXES
    if isinstance(p, JointPmf):
        return p.probs, JOINT_AXES
    if isinstance(p, Pmf):
        return p.probs, ('x',)
    arr = np.asarray(p, dtype=np.float64)
    return arr, AXES[:arr.ndim] if arr.ndim <= len(AXES) else None


def marginal(p, axes):
    """
    Sum out all but `axes` of a JointPmf or FullJoint.
    Returns a Pmf (one axis), a JointPmf (two axes, in the requested order)
    or a FullJoint with the summed-out axes kept at cardinality 1.
    """
    arr, names = _table(p)
    axes = _axis_names(axes, names)
    if not axes:
        raise ValueError("empty axis set")
    drop = tuple(i for i, n in enumerate(names) if n not in axes)
    if len(axes) == 1:
        return Pmf(arr.sum(axis=drop))
    if len(axes) == 2:
        res = arr.sum(axis=drop)
        if names.index(axes[0]) > names.index(axes[1]):
            res = res.T
        return JointPmf(res)
    return FullJoint(arr.sum(axis=drop, keepdims=True))


def tv_distance(p, q):
    """Total variation distance: sum of half the absolute differences"""
    p, _ = _table(p)
    q, _ = _table(q)
    if p.shape != q.shape:
        raise IndexError(f"{p.shape} and {q.shape} don't match")
    return float(.5 * np.abs(p - q).sum())


def dsbs_joint(a):
    """
    Doubly symmetric binary source DSBS(a):
    q(x,y) = 0.5(1-a) if x == y else 0.5a.
    """
    if not 0 <= a <= .5:
        raise ValueError(f"crossover must be in [0, 0.5]: got {a}")
    return JointPmf([[.5 * (1-a), .5 * a], [.5 * a, .5 * (1-a)]])


def product_joint(px, py):
    """q(x,y) = p(x)p(y)"""
    px = px if isinstance(px, Pmf) else Pmf(px)
    py = py if isinstance(py, Pmf) else Pmf(py)
    return JointPmf(np.outer(px.probs, py.probs))


def is_xy_equal(q):
    """whether X = Y almost surely (square and supported on the diagonal)"""
    probs = q.probs
    if probs.shape[0] != probs.shape[1]:
        return False
    return bool(np.all(probs[~np.eye(probs.shape[0], dtype=bool)] == 0))


def compose(q, aux):
    """
    Chain rule p(x,y)p(u,u1,u2|x,y).
    Raises `ValueError` if `aux` has no row for a support point of `q`.
    """
    if aux.shape_xy != q.shape:
        raise IndexError(f"channel rows {aux.shape_xy} and source {q.shape} don't match")
    missing = q.support & ~aux.defined
    if missing.any():
        x, y = np.argwhere(missing)[0]
        raise ValueError(f"missing conditional row for support point (x,y)=({x},{y})")
    probs = q.probs[:, :, None, None, None] * aux.cond
    full = FullJoint(probs)
    err = np.abs(full.probs.sum(axis=(2, 3, 4)) - q.probs).max()
    log.debug("composition marginal error: %.3g", err)
    if err > params.tol_simplex:
        raise ValueError(f"composition does not preserve q(x,y): error {err:.3g}")
    return full


# ----------------------------------------------------------------------------
# channel constructors
# ----------------------------------------------------------------------------
def degenerate_channel(q):
    """U = U1 = U2 = constant"""
    return AuxChannel(np.ones(q.shape + (1,)))


def copy_channel(q, which='x'):
    """U = X (`which='x'`) or U = Y (`which='y'`)"""
    nx, ny = q.shape
    if which == 'x':
        cond = np.broadcast_to(np.eye(nx)[:, None, :], (nx, ny, nx))
    elif which == 'y':
        cond = np.broadcast_to(np.eye(ny)[None, :, :], (nx, ny, ny))
    else:
        raise ValueError(f"unrecognised variable to copy: {which}")
    return AuxChannel(cond)


def embed_channel(ch, card_u):
    """pad U with zero-probability symbols up to `card_u`"""
    if card_u < ch.card_u:
        raise ValueError(f"cannot embed |U|={ch.card_u} into {card_u} symbols")
    pad = [(0, 0)] * 5
    pad[2] = (0, card_u - ch.card_u)
    return AuxChannel(np.pad(ch.cond, pad), ch.defined)


def extend_channel(ch, u1=None, u2=None):
    """
    General-form channel p(u,u1,u2|x,y) = p(u|x,y) 1{u1=f1(x,y)} 1{u2=f2(x,y)}
    where each of `u1`, `u2` is one of None (constant), 'x' or 'y'.
    """
    pu = ch.u_channel()
    nx, ny = ch.shape_xy

    def copy(which):
        if which is None:
            return np.ones((nx, ny, 1))
        if which == 'x':
            return np.broadcast_to(np.eye(nx)[:, None, :], (nx, ny, nx))
        if which == 'y':
            return np.broadcast_to(np.eye(ny)[None, :, :], (nx, ny, ny))
        raise ValueError(f"unrecognised variable to copy: {which}")

    c1, c2 = copy(u1), copy(u2)
    cond = pu[:, :, :, None, None] * c1[:, :, None, :, None] * c2[:, :, None, None, :]
    return AuxChannel(cond, ch.defined)
