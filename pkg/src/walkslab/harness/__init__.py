from .dot import emit_walk_dot
from .experiments import ExperimentConfig, run_experiment, verify_witness
from .report import dumps_report, histogram_csv

__all__ = ["ExperimentConfig", "run_experiment", "verify_witness", "emit_walk_dot", "dumps_report", "histogram_csv"]
