"""Approximate deconvolution LES models on the periodic torus."""

__version__ = "0.1.0"
