"""
Shared utilities for treecoh: error hierarchy, logging setup, configuration
loading and timing.
"""
