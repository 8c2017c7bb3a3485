"""Exact computational model of a rank-one mirabolic quantum group, its
finite-dimensional Schur-type quotients, their representations, and a
finite-field point-counting oracle that cross-checks the structure constants.

Submodules:
    qv             exact arithmetic in Q(v) with sparse Laurent numerators
    decorated      decorated matrices and marked sequences (basis labels)
    schur_algebra  the convolution algebra on decorated 2x2 labels
    pbw            the abstract algebra in normal form over six monomial
                   families, with the Casimir element
    reps           simple finite-dimensional modules and weight tables
    tensor_space   the mixed flag-vector tensor space and its decomposition
    oracle         brute-force orbit counting over prime fields
    linalg         sparse exact Gaussian elimination
    cli            batch command-line frontend
"""

__version__ = "0.1.0"
