from pcenters.centers.experiments import (
    ConvergenceRecord,
    body_r_tilde,
    concavity_probe,
    containment_report,
    convergence_experiment,
    hausdorff_distance,
    heat_incenter_trend,
    reference_centers,
    region_gaps,
    small_parameter_gap_check,
)
from pcenters.centers.search import CenterSet, exhaustive_centers, find_centers, incenter

__all__ = [
    "CenterSet", "ConvergenceRecord", "body_r_tilde", "concavity_probe", "containment_report",
    "convergence_experiment", "exhaustive_centers", "find_centers", "hausdorff_distance", "heat_incenter_trend",
    "incenter", "reference_centers", "region_gaps", "small_parameter_gap_check",
]
