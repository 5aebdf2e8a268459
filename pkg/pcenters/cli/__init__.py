from pcenters.cli.config import ExperimentConfig, resolve_experiment
from pcenters.cli.runner import execute, run
from pcenters.cli.svg import emit_svg

__all__ = ["ExperimentConfig", "emit_svg", "execute", "resolve_experiment", "run"]
