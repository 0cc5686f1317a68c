"""Möbius function of the permutation pattern poset."""
