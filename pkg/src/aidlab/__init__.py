"""Exact derivation, inner and almost inner derivation spaces of Lie algebras."""

__version__ = "0.1.0"
