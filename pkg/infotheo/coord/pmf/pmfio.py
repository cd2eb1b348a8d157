"""
Input/output of joint distributions, auxiliary channels,
curve tables (CSV) and simulation reports (JSON).
"""
import json
import logging
from pathlib import Path

import numpy as np
from miutil.fdio import create_dir, hasext

from .. import params
from .core import AuxChannel, JointPmf

log = logging.getLogger(__name__)

# > header of the f(t) curve tables
CURVE_HEADER = "t,f,i_joint,i_cond"


def _read_json(path):
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"unrecognised input file: {path}")
    try:
        return json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ValueError(f"cannot parse {path}: {exc}") from exc


def _write_json(data, path):
    path = Path(path)
    if not hasext(path, 'json'):
        log.warning("writing JSON to a file without .json extension: %s", path)
    create_dir(path.parent)
    path.write_text(json.dumps(data, indent=2) + "\n")
    log.debug("saved: %s", path)
    return path


def _field(data, key, path):
    try:
        return data[key]
    except (KeyError, TypeError):
        raise ValueError(f"{path}: missing field `{key}`") from None


def load_joint_pmf(path):
    """
    Read q(x,y) from a JSON file with fields
    `alphabet_x`, `alphabet_y` and `pmf` (row-major matrix, row index = x).
    """
    data = _read_json(path)
    pmf = _field(data, 'pmf', path)
    try:
        probs = np.array(pmf, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"{path}: `pmf` is not a numeric matrix ({exc})") from exc
    if probs.ndim != 2:
        raise ValueError(f"{path}: `pmf` must be a matrix: got {probs.ndim}D")
    labels_x = data.get('alphabet_x')
    labels_y = data.get('alphabet_y')
    try:
        q = JointPmf(probs, labels_x=labels_x, labels_y=labels_y)
    except IndexError as exc:
        raise ValueError(f"{path}: {exc}") from exc
    log.debug("loaded %dx%d joint p.m.f. from %s", *q.shape, path)
    return q


def save_joint_pmf(q, path):
    nx, ny = q.shape
    return _write_json({
        'alphabet_x': list(q.labels_x or map(str, range(nx))),
        'alphabet_y': list(q.labels_y or map(str, range(ny))),
        'pmf': q.probs.tolist()}, path)


def load_aux_channel(path, shape=None):
    """
    Read p(u,u1,u2|x,y) from a JSON file with fields `card_u`, `card_u1`,
    `card_u2` and `cond`: map "x,y" -> flattened (u,u1,u2) row-major vector.
    Arguments:
      shape: (|X|, |Y|) of the source; otherwise the largest listed indices.
        Unlisted rows are left undefined.
    """
    data = _read_json(path)
    cards = []
    for key in ('card_u', 'card_u1', 'card_u2'):
        card = data.get(key, 1) if key != 'card_u' else _field(data, key, path)
        if not isinstance(card, int) or card < 1:
            raise ValueError(f"{path}: `{key}` must be a positive integer: got {card!r}")
        cards.append(card)
    cond = _field(data, 'cond', path)
    if not isinstance(cond, dict) or not cond:
        raise ValueError(f"{path}: `cond` must be a non-empty map")
    rows = {}
    for key, vec in cond.items():
        try:
            x, y = (int(i) for i in key.split(','))
        except ValueError:
            raise ValueError(f"{path}: bad row key {key!r} (expected \"x,y\")") from None
        if x < 0 or y < 0:
            raise ValueError(f"{path}: negative row index in {key!r}")
        vec = np.array(vec, dtype=np.float64)
        if vec.shape != (int(np.prod(cards)),):
            raise ValueError(f"{path}: row {key!r} must have {np.prod(cards)} entries")
        rows[x, y] = vec.reshape(cards)
    if shape is None:
        shape = tuple(max(i[k] for i in rows) + 1 for k in (0, 1))
    elif any(x >= shape[0] or y >= shape[1] for x, y in rows):
        raise ValueError(f"{path}: row index outside source alphabets {tuple(shape)}")
    arr = np.zeros(tuple(shape) + tuple(cards))
    defined = np.zeros(shape, dtype=bool)
    for (x, y), vec in rows.items():
        arr[x, y] = vec
        defined[x, y] = True
    return AuxChannel(arr, defined)


def save_aux_channel(ch, path):
    cond = {
        f"{x},{y}": ch.cond[x, y].ravel().tolist()
        for x, y in zip(*np.nonzero(ch.defined))}
    return _write_json({
        'card_u': ch.card_u, 'card_u1': ch.card_u1, 'card_u2': ch.card_u2, 'cond': cond},
                       path)


def save_curve_csv(points, path, digits=params.sig_digits):
    """
    Write rows (t, f, i_joint, i_cond) under the header `t,f,i_joint,i_cond`.
    Arguments:
      points: sequence of objects with those attributes, or an (N, 4) array.
    """
    if len(points) and hasattr(points[0], 'i_cond'):
        table = np.array([(p.t, p.f, p.i_joint, p.i_cond) for p in points])
    else:
        table = np.asarray(points, dtype=np.float64).reshape(-1, 4)
    path = Path(path)
    create_dir(path.parent)
    np.savetxt(path, table, fmt=f"%.{digits}g", delimiter=',', header=CURVE_HEADER,
               comments='')
    log.debug("saved %d curve points: %s", len(table), path)
    return path


def load_curve_csv(path):
    """(N, 4) array of a table written by `save_curve_csv`"""
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"unrecognised input file: {path}")
    return np.loadtxt(path, delimiter=',', skiprows=1, ndmin=2)


def save_report_json(report, path):
    """`report`: dict or any object with a `to_dict()` method"""
    data = report.to_dict() if hasattr(report, 'to_dict') else dict(report)
    return _write_json(data, path)
