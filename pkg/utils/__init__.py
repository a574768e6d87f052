"""
Utilities: output formatting, logging and operation monitoring.
"""
