"""Trace ideals and overrings of one-dimensional complete local rings."""
