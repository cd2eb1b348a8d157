# initialise the module folder
__all__ = [
    # core
    'AXES', 'AuxChannel', 'FullJoint', 'JointPmf', 'Pmf', 'check_simplex',
    'compose', 'copy_channel', 'degenerate_channel', 'dsbs_joint', 'embed_channel',
    'extend_channel', 'is_xy_equal', 'marginal', 'product_joint', 'tv_distance',
    # info
    'binary_entropy', 'conditional_mutual_information', 'entropy', 'entropy_vec4',
    'inverse_binary_entropy', 'joint_entropy', 'mutual_information',
    # pmfio
    'load_aux_channel', 'load_curve_csv', 'load_joint_pmf', 'save_aux_channel',
    'save_curve_csv', 'save_joint_pmf', 'save_report_json'] # yapf: disable

from .core import (
    AXES,
    AuxChannel,
    FullJoint,
    JointPmf,
    Pmf,
    check_simplex,
    compose,
    copy_channel,
    degenerate_channel,
    dsbs_joint,
    embed_channel,
    extend_channel,
    is_xy_equal,
    marginal,
    product_joint,
    tv_distance,
)
from .info import (
    binary_entropy,
    conditional_mutual_information,
    entropy,
    entropy_vec4,
    inverse_binary_entropy,
    joint_entropy,
    mutual_information,
)
from .pmfio import (
    load_aux_channel,
    load_curve_csv,
    load_joint_pmf,
    save_aux_channel,
    save_curve_csv,
    save_joint_pmf,
    save_report_json,
)
