"""Exact-rational workbench for chain operads: homology, cobar complexes,
semicosimplicial spectral sequences, bracket structure, and the
deformation-obstruction pipeline.
"""

__version__ = "1.0.0"
