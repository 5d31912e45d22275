"""Complete linear systems of divisors on graphs and M-matrix systems."""

__version__ = "0.1.0"
