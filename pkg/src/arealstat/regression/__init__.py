from .design import DesignSpec, build_design
from .diagnostics import ModelComparison, compare_models, residual_moran
from .gwr import GwrFit, fit_gwr, five_number_summary, gwr_kernel, select_bandwidth
from .ols import LinearFit, fit_ols
from .spatial import LogDetProfile, fit_sem, fit_slm, log_det_profile

__all__ = [
    "DesignSpec", "build_design", "ModelComparison", "compare_models", "residual_moran",
    "GwrFit", "fit_gwr", "five_number_summary", "gwr_kernel", "select_bandwidth",
    "LinearFit", "fit_ols", "LogDetProfile", "fit_sem", "fit_slm", "log_det_profile",
]
