# initialise the module folder
__all__ = [
    # wyner
    'MarkovFeasibilityError', 'SolverOptions', 'WynerResult', 'dsbs_wyner_channel', 'no_sr_rate',
    'wyner_ci',
    # ulsr
    'UlsrForm', 'UlsrResult', 'ulsr_baseline', 'ulsr_objective', 'ulsr_rate'] # yapf: disable

from .wyner import (
    MarkovFeasibilityError,
    SolverOptions,
    WynerResult,
    dsbs_wyner_channel,
    no_sr_rate,
    wyner_ci,
)
from .ulsr import UlsrForm, UlsrResult, ulsr_baseline, ulsr_objective, ulsr_rate  # isort: skip
