from .types import ExperimentConfig, TrialRecord, PRule, DeltaSource
from .config import load_config
from .montecarlo import run_montecarlo, run_trial, summarize, select_p, classify
from .report import emit_report, REPORT_COLUMNS, REPORT_FORMATS
