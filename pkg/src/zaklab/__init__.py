"""Numerical lattice Zak transforms, multi-tilings and Gabor systems of indicator windows."""
