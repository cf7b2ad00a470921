"""Exact Gromov-Hausdorff distances between finite metric spaces."""

__version__ = "0.1.0"
