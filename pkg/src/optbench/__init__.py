"""optbench: compare black-box optimizers on closed-form test functions.

The harness runs repeated seeded optimizations, derives best-seen traces
and the Best Found / AUC metrics, applies Mann-Whitney significance
testing, and emits comparative reports for CLI and dashboard consumption.
"""

__version__ = "0.1.0"
