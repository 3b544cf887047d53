"""Numerical certification of univalence for analytic functions on disks."""

__version__ = "0.1.0"
