"""
Random codebooks of the coordination scheme and the typicality test.

Codewords are never stored: the block of `chunk_size` consecutive m* of a bin
is regenerated on demand from a counter-based stream keyed by
(trial key, stream, indices, chunk), so any codeword is reproducible from its
indices alone.
"""
import logging
from dataclasses import dataclass

import numpy as np

from .. import params

log = logging.getLogger(__name__)

# > random substreams of a trial
STREAM_CODEBOOK = 0
STREAM_SHARED = 1
# > codebook substreams
STREAM_U = 0
STREAM_X = 1
STREAM_Y = 2


def index_size(n, rate, max_bits=params.max_index_bits, what='index'):
    """ceil(2^(n rate)), refusing sets with more than 2^max_bits elements"""
    if not np.isfinite(rate) or rate < 0:
        raise ValueError(f"{what} rate must be finite and non-negative: got {rate}")
    if n * rate > max_bits:
        raise ValueError(f"{what} set of 2^{n * rate:.4g} elements exceeds 2^{max_bits}")
    return max(1, int(np.ceil(2.0**(n*rate))))


def inverse_cdf(cdf, uniforms):
    """
    Symbols with the given cumulative distributions.
    Arguments:
      cdf: (..., K) cumulative sums broadcastable against `uniforms[..., None]`.
      uniforms: draws in [0, 1).
    """
    res = (uniforms[..., None] >= cdf).sum(axis=-1)
    return np.minimum(res, cdf.shape[-1] - 1)


def typical_rows(u, x, y, p_uxy, eps_typ):
    """
    Row-wise joint typicality of sequences (rows of equal length n): the
    type of (u_t, x_t, y_t) is within `eps_typ` of `p_uxy` in every cell and
    no zero-probability cell occurs.
    Arguments:
      u, x, y: int arrays (rows, n) or (n,).
      p_uxy: (|U|, |X|, |Y|) per-letter joint.
    """
    u, x, y = np.atleast_2d(u, x, y)
    if not u.shape == x.shape == y.shape:
        raise IndexError(f"sequence shapes {u.shape}, {x.shape}, {y.shape} don't match")
    rows, n = u.shape
    _, nx, ny = p_uxy.shape
    ncell = p_uxy.size
    cells = (u*nx + x) * ny + y + (np.arange(rows) * ncell)[:, None]
    counts = np.bincount(cells.ravel(), minlength=rows * ncell).reshape(rows, ncell)
    p = p_uxy.ravel()
    close = np.all(np.abs(counts/n - p) <= eps_typ, axis=1)
    support = ~np.any(counts[:, p == 0] > 0, axis=1)
    return close & support


def typicality_test(u, x, y, p_uxy, eps_typ=params.eps_typ):
    """whether the single triple of sequences (u, x, y) is jointly typical"""
    u, x, y = (np.asarray(i) for i in (u, x, y))
    if u.ndim != 1 or not u.shape == x.shape == y.shape:
        raise IndexError("expected three sequences of equal length")
    return bool(typical_rows(u, x, y, p_uxy, eps_typ)[0])


@dataclass(frozen=True, eq=False)
class Codebooks:
    """
    Codebooks of one trial.
    u^n(m0, m*) ~ iid p_u; x^n(m0, m*, b1) ~ p(x|u) and y^n(m0, m*, b2) ~ p(y|u)
    symbol-wise given u^n(m0, m*); m0 = (m01, m02).
    """
    key: tuple
    n: int
    k0: int
    size_star: int
    size_b1: int
    size_b2: int
    cdf_u: np.ndarray
    cdf_x: np.ndarray
    cdf_y: np.ndarray
    p_uxy: np.ndarray
    chunk_size: int = params.chunk_size

    @property
    def size_m0i(self):
        """size of each half m01, m02 of the bin index"""
        return 2**self.k0

    @property
    def num_chunks(self):
        return -(-self.size_star // self.chunk_size)

    def _rng(self, *counter):
        return np.random.default_rng(self.key + (STREAM_CODEBOOK, ) + counter)

    def _chunk_len(self, chunk):
        if not 0 <= chunk < self.num_chunks:
            raise IndexError(f"chunk {chunk} out of range [0, {self.num_chunks})")
        return min(self.chunk_size, self.size_star - chunk * self.chunk_size)

    def check_m0(self, m01, m02):
        for name, val in (('m01', m01), ('m02', m02)):
            if not 0 <= val < self.size_m0i:
                raise IndexError(f"{name}={val} out of range [0, {self.size_m0i})")

    def u_block(self, m01, m02, chunk):
        """u^n(m0, m*) for the m* of `chunk`: (chunk length, n)"""
        self.check_m0(m01, m02)
        rng = self._rng(STREAM_U, m01, m02, chunk)
        return inverse_cdf(self.cdf_u, rng.random((self._chunk_len(chunk), self.n)))

    def x_block(self, m01, m02, b1, chunk, u=None):
        """x^n(m0, m*, b1) for the m* of `chunk`"""
        if not 0 <= b1 < self.size_b1:
            raise IndexError(f"b1={b1} out of range [0, {self.size_b1})")
        u = self.u_block(m01, m02, chunk) if u is None else u
        rng = self._rng(STREAM_X, m01, m02, b1, chunk)
        return inverse_cdf(self.cdf_x[u], rng.random(u.shape))

    def y_block(self, m01, m02, b2, chunk, u=None):
        """y^n(m0, m*, b2) for the m* of `chunk`"""
        if not 0 <= b2 < self.size_b2:
            raise IndexError(f"b2={b2} out of range [0, {self.size_b2})")
        u = self.u_block(m01, m02, chunk) if u is None else u
        rng = self._rng(STREAM_Y, m01, m02, b2, chunk)
        return inverse_cdf(self.cdf_y[u], rng.random(u.shape))

    def _locate(self, m_star):
        if not 0 <= m_star < self.size_star:
            raise IndexError(f"m*={m_star} out of range [0, {self.size_star})")
        return divmod(m_star, self.chunk_size)

    def u_codeword(self, m01, m02, m_star):
        chunk, row = self._locate(m_star)
        return self.u_block(m01, m02, chunk)[row]

    def x_codeword(self, m01, m02, m_star, b1):
        chunk, row = self._locate(m_star)
        return self.x_block(m01, m02, b1, chunk)[row]

    def y_codeword(self, m01, m02, m_star, b2):
        chunk, row = self._locate(m_star)
        return self.y_block(m01, m02, b2, chunk)[row]
