# Experiment pipelines
#
# Entrypoints:
#   python -m src.pipelines <command> <config>    → Any command (see cli.py)
#   python -m src.pipelines.check_inequalities    → Bernstein / Jackson / kernel sweeps
#   python -m src.pipelines.ritz_run              → Ritz errors, bounds and rates on a BVP
#   python -m src.pipelines.counterexample        → Rate without the matching smoothness
#   python -m src.pipelines.inverse_rate          → Inverse-theorem constant fits
