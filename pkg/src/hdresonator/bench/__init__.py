from .experiment import ExperimentSpec, SpecPoint, accuracy, run_experiment, run_trial, spec_points
from .metrics import aggregate, cap_hit_rate, complexity, estimate_success_rate
from .plotting import emit_plot
from .records import TrialRecord, read_records, write_records

__all__ = [
    "ExperimentSpec", "SpecPoint", "TrialRecord", "accuracy", "aggregate", "cap_hit_rate",
    "complexity", "emit_plot", "estimate_success_rate", "read_records", "run_experiment",
    "run_trial", "spec_points", "write_records",
]
