"""Square-triangular numbers: generators, ratio cascade and extrapolation."""

__version__ = "0.1.0"
