"""
xinner Test Suite

This package contains tests for the xinner library.
"""
