"""Projective presentations over finite-dimensional path algebras with relations."""

__version__ = "0.1.0"
