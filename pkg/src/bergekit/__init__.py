"""Berge-graph decomposition toolkit.

Structural machinery for Berge graphs: 2-join detection and classification,
block construction, decomposition trees with potential accounting, balanced
skew partition detection, and the SAT-reduction gadget generator with
desk-scale cross-validation.
"""

__version__ = "0.1.0"
