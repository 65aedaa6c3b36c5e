from adm.inequalities.inequalities import (
    INEQUALITIES,
    check_inq_tech1,
    check_inq_tech2,
    check_inq_tech3,
    check_transf_est,
)
from adm.inequalities.sweep import GridSpec, SweepResult, sweep, sweep_all

__all__ = [
    "INEQUALITIES",
    "GridSpec",
    "SweepResult",
    "check_inq_tech1",
    "check_inq_tech2",
    "check_inq_tech3",
    "check_transf_est",
    "sweep",
    "sweep_all",
]
