"""
Monte Carlo trials of the coordination scheme.

Processor i holds shared randomness w_i = (m0i, b_i). The coordinator knows
w1 and w2, finds inside the bin m0 = (m01, m02) the first m* whose codewords
(u^n, x^n(b1), y^n(b2)) are jointly typical and sends (m01 xor m02, m*).
Each processor recovers m0 and outputs its own codeword.
"""
import logging
from dataclasses import asdict, dataclass

import numpy as np
from tqdm.auto import tqdm

from .. import params
from ..pmf import (
    AuxChannel,
    JointPmf,
    Pmf,
    compose,
    conditional_mutual_information,
    marginal,
    tv_distance,
)
from ..tools import pmap, progress_disabled
from .codebook import STREAM_SHARED, Codebooks, index_size, typical_rows

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SimRates:
    """bin rate R0, index rate R*, codebook rates R~1, R~2 [bits/symbol]"""
    r0: float
    r_star: float
    rt1: float
    rt2: float

    def __post_init__(self):
        for name, val in asdict(self).items():
            if not np.isfinite(val) or val < 0:
                raise ValueError(f"rate {name} must be finite and non-negative: got {val}")

    @classmethod
    def parse(cls, text):
        """from "R0,RSTAR,RT1,RT2" """
        try:
            vals = [float(i) for i in str(text).split(',')]
        except ValueError:
            raise ValueError(f"cannot parse rates {text!r}") from None
        if len(vals) != 4:
            raise ValueError(f"expected 4 comma-separated rates R0,RSTAR,RT1,RT2: got {text!r}")
        return cls(*vals)

    @property
    def r(self):
        """message rate R0/2 + R*"""
        return self.r0/2 + self.r_star

    @property
    def r1(self):
        return self.rt1 + self.r0/2

    @property
    def r2(self):
        return self.rt2 + self.r0/2


@dataclass(frozen=True, eq=False)
class SimConfig:
    q: JointPmf
    channel: AuxChannel
    n: int
    rates: SimRates
    eps_typ: float = params.eps_typ
    trials: int = 1
    seed: int = params.seed
    threads: int = params.threads
    max_index_bits: int = params.max_index_bits
    chunk_size: int = params.chunk_size
    markov_tol: float = None

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise ValueError(f"block length must be a positive integer: got {self.n}")
        if not isinstance(self.trials, (int, np.integer)) or self.trials < 1:
            raise ValueError(f"trials must be a positive integer: got {self.trials}")
        if not self.eps_typ > 0:
            raise ValueError(f"eps_typ must be > 0: got {self.eps_typ}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer: got {self.seed}")
        if self.threads < 1 or self.chunk_size < 1:
            raise ValueError("threads and chunk_size must be positive")
        if self.channel.shape_xy != self.q.shape:
            raise IndexError(f"channel rows {self.channel.shape_xy} and source {self.q.shape}"
                             " don't match")

    @property
    def k0(self):
        """bits of each half m01, m02 of the bin index"""
        k0 = int(np.ceil(self.n * self.rates.r0 / 2 - 1e-12))
        if k0 > self.max_index_bits:
            raise ValueError(f"m0 halves of 2^{k0} elements exceed 2^{self.max_index_bits}")
        return k0

    def sizes(self):
        """index-set sizes {m0i, m_star, b1, b2}"""
        n, rates, bits = self.n, self.rates, self.max_index_bits
        return {
            'm0i': 2**self.k0, 'm_star': index_size(n, rates.r_star, bits, 'm*'),
            'b1': index_size(n, rates.rt1, bits, 'b1'), 'b2': index_size(n, rates.rt2, bits,
                                                                         'b2')}

    def echo(self):
        return {
            'pmf': self.q.probs.tolist(), 'card_u': self.channel.card_u, 'n': int(self.n),
            'rates': asdict(self.rates), 'eps_typ': self.eps_typ, 'trials': int(self.trials),
            'seed': int(self.seed), 'realized': realized_rates(self)}


@dataclass(frozen=True, eq=False)
class Message:
    """(m01 xor m02, m*) sent by the coordinator; `failed` if no m* passed the test"""
    m0_xor: int
    m_star: int
    k0: int
    failed: bool = False

    @property
    def bits(self):
        """m01 xor m02 as a `k0`-bit string"""
        return format(self.m0_xor, f"0{self.k0}b") if self.k0 else ""


@dataclass(frozen=True, eq=False)
class SimReport:
    """
    empirical_joint: pooled per-letter (x, y) frequencies.
    tv_per_letter: TV distance of `empirical_joint` from the target.
    empirical_triple: pooled (u, x, y) counts of the selected codewords.
    """
    empirical_joint: JointPmf
    tv_per_letter: float
    mstar_failure_rate: float
    trials_run: int
    empirical_triple: np.ndarray = None
    config_echo: dict = None

    def to_dict(self):
        return {
            'empirical_joint': self.empirical_joint.probs.tolist(),
            'tv_per_letter': self.tv_per_letter, 'mstar_failure_rate': self.mstar_failure_rate,
            'trials_run': self.trials_run, 'config_echo': self.config_echo or {}}


def derive_components(channel, q, markov_tol=None):
    """
    p(u), p(x|u) and p(y|u) of the joint q(x,y) p(u|x,y).
    Conditionals of symbols with p(u) = 0 are set to the source marginals.
    Arguments:
      markov_tol: if given, raise `ValueError` when I(X;Y|U) exceeds it.
    Returns:
      (Pmf p_u, (|U|, |X|) array p_x_given_u, (|U|, |Y|) array p_y_given_u)
    """
    full = compose(q, AuxChannel(channel.u_channel(), channel.defined))
    if markov_tol is not None:
        defect = conditional_mutual_information(full, 'x', 'y', 'u')
        if defect > markov_tol:
            log.error("I(X;Y|U) = %.3g > %g", defect, markov_tol)
            raise ValueError(f"channel violates X-U-Y: I(X;Y|U) = {defect:.6g} > {markov_tol:g}")
    p_xyu = full.probs[..., 0, 0]
    p_u = p_xyu.sum(axis=(0, 1))
    p_xu = p_xyu.sum(axis=1).T
    p_yu = p_xyu.sum(axis=0).T
    px, py = marginal(q, 'x').probs, marginal(q, 'y').probs
    used = p_u > 0
    p_x_given_u = np.where(used[:, None], p_xu / np.where(used, p_u, 1)[:, None], px)
    p_y_given_u = np.where(used[:, None], p_yu / np.where(used, p_u, 1)[:, None], py)
    return Pmf(p_u), p_x_given_u, p_y_given_u


def _cdf(p):
    res = np.cumsum(p, axis=-1)
    res[..., -1] = 1
    return res


def build_codebooks(cfg, trial_seed):
    """
    Codebooks of one trial.
    Arguments:
      trial_seed: int or tuple of ints keying all codebook streams.
    """
    key = tuple(int(i) for i in np.atleast_1d(trial_seed))
    p_u, p_x_given_u, p_y_given_u = derive_components(cfg.channel, cfg.q, cfg.markov_tol)
    sizes = cfg.sizes()
    p_xyu = compose(cfg.q, AuxChannel(cfg.channel.u_channel(), cfg.channel.defined)).probs
    return Codebooks(
        key=key, n=int(cfg.n), k0=cfg.k0, size_star=sizes['m_star'], size_b1=sizes['b1'],
        size_b2=sizes['b2'], cdf_u=_cdf(p_u.probs), cdf_x=_cdf(p_x_given_u),
        cdf_y=_cdf(p_y_given_u), p_uxy=np.moveaxis(p_xyu[..., 0, 0], -1, 0),
        chunk_size=cfg.chunk_size)


def coordinator_select(w1, w2, books, eps_typ=params.eps_typ):
    """
    First m* (in increasing order) in the bin m0 = (m01, m02) whose codewords
    (u^n, x^n(b1), y^n(b2)) are jointly typical; m* = 0 and `failed` if none is.
    Arguments:
      w1, w2: shared randomness (m01, b1) and (m02, b2).
    """
    (m01, b1), (m02, b2) = w1, w2
    for chunk in range(books.num_chunks):
        u = books.u_block(m01, m02, chunk)
        x = books.x_block(m01, m02, b1, chunk, u=u)
        y = books.y_block(m01, m02, b2, chunk, u=u)
        hits = np.flatnonzero(typical_rows(u, x, y, books.p_uxy, eps_typ))
        if hits.size:
            return Message(m01 ^ m02, chunk * books.chunk_size + int(hits[0]), books.k0)
    return Message(m01 ^ m02, 0, books.k0, failed=True)


def processor_output(which, msg, w_i, books):
    """
    Output of processor `which` (1 or 2) from the message and its own
    randomness w_i = (m0i, b_i) only.
    """
    m0i, b = w_i
    if not 0 <= msg.m0_xor < books.size_m0i:
        raise IndexError(f"m01 xor m02 = {msg.m0_xor} out of range [0, {books.size_m0i})")
    if which == 1:
        return books.x_codeword(m0i, msg.m0_xor ^ m0i, msg.m_star, b)
    if which == 2:
        return books.y_codeword(msg.m0_xor ^ m0i, m0i, msg.m_star, b)
    raise ValueError(f"processor must be 1 or 2: got {which}")


def shared_randomness(books, key):
    """(w1, w2) = ((m01, b1), (m02, b2)), uniform and independent of the codebooks"""
    rng = np.random.default_rng(tuple(key) + (STREAM_SHARED, ))
    m01, m02 = (int(i) for i in rng.integers(books.size_m0i, size=2))
    b1 = int(rng.integers(books.size_b1))
    b2 = int(rng.integers(books.size_b2))
    return (m01, b1), (m02, b2)


def _run(cfg, trials):
    """pooled (u, x, y) counts and m*-failures of `trials`"""
    nx, ny = cfg.q.shape
    counts = np.zeros((cfg.channel.card_u, nx, ny), dtype=np.int64)
    failures = 0
    for trial in trials:
        key = (int(cfg.seed), int(trial))
        books = build_codebooks(cfg, key)
        w1, w2 = shared_randomness(books, key)
        msg = coordinator_select(w1, w2, books, cfg.eps_typ)
        x = processor_output(1, msg, w1, books)
        y = processor_output(2, msg, w2, books)
        u = books.u_codeword(w1[0], w2[0], msg.m_star)
        counts += np.bincount((u*nx + x) * ny + y, minlength=counts.size).reshape(counts.shape)
        failures += msg.failed
        log.debug("trial %d: m*=%d%s", trial, msg.m_star, " (failed)" if msg.failed else "")
    return counts, failures


def run_trials(cfg):
    """
    Run `cfg.trials` independent trials (trial t keyed by (seed, t)) and pool
    the per-letter outputs. Thread chunks merge by count addition.
    """
    cfg.sizes() # fail early on oversized index sets
    chunks = [
        i for i in np.array_split(np.arange(cfg.trials), max(cfg.threads, cfg.trials // 64 or 1))
        if len(i)]
    with tqdm(total=cfg.trials, desc="trials", unit="trial", leave=False,
              disable=progress_disabled(log)) as pbar:

        def work(trials):
            res = _run(cfg, trials)
            pbar.update(len(trials))
            return res

        parts = pmap(work, chunks, threads=cfg.threads)
    counts = sum(i[0] for i in parts)
    failures = sum(i[1] for i in parts)

    joint = counts.sum(axis=0)
    empirical = JointPmf(joint / joint.sum(), cfg.q.labels_x, cfg.q.labels_y)
    report = SimReport(
        empirical_joint=empirical, tv_per_letter=tv_distance(empirical, cfg.q),
        mstar_failure_rate=failures / cfg.trials, trials_run=int(cfg.trials),
        empirical_triple=counts, config_echo=cfg.echo())
    if report.mstar_failure_rate > .5:
        log.warning("m* search failed in %.0f%% of trials", 100 * report.mstar_failure_rate)
    log.info("TV per letter %.4g after %d trials", report.tv_per_letter, cfg.trials)
    return report


def realized_rates(cfg):
    """index-set sizes and the rates they realise after rounding"""
    sizes = cfg.sizes()
    n = cfg.n
    r0 = 2 * cfg.k0 / n
    r_star, rt1, rt2 = (np.log2(sizes[i]) / n for i in ('m_star', 'b1', 'b2'))
    return {
        'sizes': sizes, 'k0': cfg.k0, 'r0': r0, 'r_star': float(r_star), 'rt1': float(rt1),
        'rt2': float(rt2), 'r': r0/2 + float(r_star), 'r1': float(rt1) + r0/2,
        'r2': float(rt2) + r0/2}
