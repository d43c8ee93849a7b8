"""Cohen-Macaulay and Gorenstein tests for graded rings through irreducible parameter ideals."""

__version__ = "0.1.0"
