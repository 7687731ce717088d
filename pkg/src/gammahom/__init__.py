"""Combinatorial homotopy and homology of finite pointed simplicial sets with
coefficients in Γ-sets, plus exact ℓ¹ / normalized seminorms on chains."""

__version__ = "0.1.0"
