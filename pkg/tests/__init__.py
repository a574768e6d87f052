"""
Test package for numerans.
"""
