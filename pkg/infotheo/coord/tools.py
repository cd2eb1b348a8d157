"""Logging and formatting helpers shared by the library and the CLI"""
import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from tqdm.auto import tqdm

from . import params

__all__ = ['LOG_FORMAT', 'LogHandler', 'num2str', 'pmap', 'progress_disabled', 'split_range']
LOG_FORMAT = "%(levelname)s:%(asctime)s:%(name)s:%(funcName)s\n> %(message)s"


class LogHandler(logging.StreamHandler):
    """Stream handler which does not garble `tqdm` progress bars"""
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.setFormatter(logging.Formatter(LOG_FORMAT))

    def emit(self, record):
        try:
            msg = self.format(record)
            tqdm.write(msg, file=self.stream)
            self.flush()
        except Exception:
            self.handleError(record)


def progress_disabled(log):
    """progress bars only show for INFO (or more verbose) logging"""
    return log.getEffectiveLevel() > logging.INFO


def num2str(x, digits=params.sig_digits):
    """`digits` significant digits, no trailing zeros"""
    return f"{float(x):.{digits}g}"


def pmap(func, chunks, threads=1):
    """
    Map `func` over `chunks`, optionally on a thread pool.
    Results are returned in the order of `chunks` regardless of `threads`.
    """
    chunks = list(chunks)
    if threads is None or threads <= 1 or len(chunks) <= 1:
        return [func(c) for c in chunks]
    with ThreadPoolExecutor(max_workers=min(threads, len(chunks))) as pool:
        return list(pool.map(func, chunks))


def split_range(n, parts):
    """split `range(n)` into at most `parts` contiguous index arrays"""
    parts = max(1, min(int(parts or 1), n))
    return [i for i in np.array_split(np.arange(n), parts) if len(i)]
