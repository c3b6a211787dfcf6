"""
Command-line interface and reproduction suite.
"""
__version__ = "0.1.0"
