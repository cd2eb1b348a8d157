# initialise the module folder
__all__ = [
    # dsbs
    'CurvePoint', 'DsbsParams', 'dsbs_summary', 'emit_curve', 'f_of_t', 'i_cond_closed_form',
    'i_joint_closed_form', 'interpolated_channel', 't_star',
    # region
    'RateTriple', 'RegionBounds', 'achievable_bounds', 'check_markov_quadruple',
    'in_achievable_region', 'min_common_rate', 'scan_min_rate', 'ulsr_certificate',
    'xy_equal_region', 'xy_equal_region_for'] # yapf: disable

from .dsbs import (
    CurvePoint,
    DsbsParams,
    dsbs_summary,
    emit_curve,
    f_of_t,
    i_cond_closed_form,
    i_joint_closed_form,
    interpolated_channel,
    t_star,
)
from .region import (
    RateTriple,
    RegionBounds,
    achievable_bounds,
    check_markov_quadruple,
    in_achievable_region,
    min_common_rate,
    scan_min_rate,
    ulsr_certificate,
    xy_equal_region,
    xy_equal_region_for,
)
