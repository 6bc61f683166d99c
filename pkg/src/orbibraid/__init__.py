"""Symbolic computation for orbifold braid groups."""
