"""Touching conics and bitangents of 13-nodal quartic surfaces."""

__version__ = "0.1.0"
