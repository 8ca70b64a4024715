"""Bredon cohomology of a point for cyclic groups of odd squarefree order."""
