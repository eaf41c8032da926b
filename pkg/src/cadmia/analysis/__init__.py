"""Diagnostics: convergence, separation fronts and sensitivity studies."""
from .convergence import (ConvergenceRow, WorkRecord, convergence_study, experimental_order,
                          matched_time_ratios, mean_spacetime_error, work_precision)
from .fronts import (Front, FrontFit, cumulative_concentration, cumulative_series,
                     deterioration_increase, front_log_fit, normalized_cumulative_series,
                     separation_front)
from .sensitivity import (OverallConcentration, SensitivityRecord, grid_sweep, oat_study,
                          relative_overall_concentration)
