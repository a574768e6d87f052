"""
Models package for the numerans abstract numeration toolkit.
"""
