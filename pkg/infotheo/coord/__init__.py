#!/usr/bin/env python
"""initialise the infocoord package: strong coordination rate trade-offs"""
# version detector. Precedence: installed dist, git, 'UNKNOWN'
try:
    from ._dist_ver import __version__
except ImportError:
    try:
        from setuptools_scm import get_version

        __version__ = get_version(root="../..", relative_to=__file__)
    except (ImportError, LookupError):
        __version__ = "UNKNOWN"
__all__ = [
    # utils
    'LOG_FORMAT', 'LogHandler', 'num2str',
    # config
    'get_params',
    # pmf
    'AuxChannel', 'FullJoint', 'JointPmf', 'Pmf', 'compose', 'dsbs_joint', 'marginal',
    'tv_distance', 'binary_entropy', 'conditional_mutual_information', 'entropy',
    'inverse_binary_entropy', 'joint_entropy', 'mutual_information',
    'load_aux_channel', 'load_joint_pmf', 'save_aux_channel', 'save_joint_pmf',
    # opt
    'MarkovFeasibilityError', 'SolverOptions', 'UlsrForm', 'no_sr_rate', 'ulsr_baseline',
    'ulsr_rate', 'wyner_ci',
    # rates
    'RateTriple', 'achievable_bounds', 'dsbs_summary', 'emit_curve', 'f_of_t',
    'in_achievable_region', 'interpolated_channel', 'min_common_rate', 't_star',
    'xy_equal_region',
    # sim
    'SimConfig', 'SimRates', 'run_trials',
    # cli
    'dispatch', 'main'] # yapf: disable

from .cli import dispatch, main
from .opt import (
    MarkovFeasibilityError,
    SolverOptions,
    UlsrForm,
    no_sr_rate,
    ulsr_baseline,
    ulsr_rate,
    wyner_ci,
)
from .params import get_params
from .pmf import (
    AuxChannel,
    FullJoint,
    JointPmf,
    Pmf,
    binary_entropy,
    compose,
    conditional_mutual_information,
    dsbs_joint,
    entropy,
    inverse_binary_entropy,
    joint_entropy,
    load_aux_channel,
    load_joint_pmf,
    marginal,
    mutual_information,
    save_aux_channel,
    save_joint_pmf,
    tv_distance,
)
from .rates import (
    RateTriple,
    achievable_bounds,
    dsbs_summary,
    emit_curve,
    f_of_t,
    in_achievable_region,
    interpolated_channel,
    min_common_rate,
    t_star,
    xy_equal_region,
)
from .sim import SimConfig, SimRates, run_trials
from .tools import LOG_FORMAT, LogHandler, num2str
