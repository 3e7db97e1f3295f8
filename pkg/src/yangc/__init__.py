"""A compiler and validator for YANG data models."""

__version__ = "0.1.0"
