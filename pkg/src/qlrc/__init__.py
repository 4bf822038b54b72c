"""Algebra and certification tools for optimal quantum locally recoverable codes."""

__version__ = "0.1.0"
