"""
HTTP API package for numerans.
"""
