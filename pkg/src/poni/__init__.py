"""Proofs of no-intrusion over GF(2) coset states.

A toolkit for a classical verifier to repeatedly audit a quantum
server's custody of coset-state-backed data without destroying it:
exact GF(2) subspace algebra, a symbolic coset-state simulator with a
statevector cross-check oracle, the audit protocol itself, a
coset-remainder extractor, an encryption scheme whose ciphertexts
survive audits, and an empirical security-game harness.
"""

from poni.f2 import (
    Coset,
    DimensionProfile,
    F2Matrix,
    F2Vector,
    Subspace,
)

__all__ = ["F2Vector", "F2Matrix", "Subspace", "Coset", "DimensionProfile"]
__version__ = "0.1.0"
