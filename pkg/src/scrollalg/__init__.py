"""Exact toolkit for vector bundles on the projective line: lattice-pair
bundles, elementary transformations, zero-dimensional subschemes of the
scroll, span/defect identities, and Brill-Noether cup maps."""

__version__ = "0.1.0"
