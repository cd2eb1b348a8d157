# initialise the module folder
__all__ = [
    # codebook
    'Codebooks', 'index_size', 'typical_rows', 'typicality_test',
    # scheme
    'Message', 'SimConfig', 'SimRates', 'SimReport', 'build_codebooks', 'coordinator_select',
    'derive_components', 'processor_output', 'realized_rates', 'run_trials',
    'shared_randomness'] # yapf: disable

from .codebook import Codebooks, index_size, typical_rows, typicality_test
from .scheme import (
    Message,
    SimConfig,
    SimRates,
    SimReport,
    build_codebooks,
    coordinator_select,
    derive_components,
    processor_output,
    realized_rates,
    run_trials,
    shared_randomness,
)
