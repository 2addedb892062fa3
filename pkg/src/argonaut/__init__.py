"""Supervisor-worker agent system for scientific-archive search and analysis."""

__version__ = "0.1.0"
