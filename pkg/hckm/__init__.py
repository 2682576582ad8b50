"""hckm: FPT approximation for hard-capacitated k-means."""

__version__ = "1.0.0"
