# Shared utilities (logging, errors, config, reproducibility, result files)

from src.utils.config import ExperimentConfig, expand_grid, load_experiment_config
from src.utils.config_snapshot import snapshot_config
from src.utils.data_version import compute_directory_hash, compute_file_hash
from src.utils.experiment import create_run
from src.utils.logger import get_logger, reset_logging, setup_logging
from src.utils.results import save_json, write_plot_script, write_table
from src.utils.seed import make_rng, set_global_seed

__all__ = [
    # Config
    "ExperimentConfig",
    "load_experiment_config",
    "expand_grid",
    # Run lifecycle
    "create_run",
    "snapshot_config",
    # Reproducibility
    "set_global_seed",
    "make_rng",
    "compute_file_hash",
    "compute_directory_hash",
    # Result files
    "write_table",
    "save_json",
    "write_plot_script",
    # Logging
    "setup_logging",
    "get_logger",
    "reset_logging",
]
