"""Numerical operator calculus on the Heisenberg group.

Scaled Hermite bases and ladder operators, Weyl / group Fourier
transforms, difference-differential derivations, Laguerre heat kernels,
dyadic/sparse machinery on a bounded group region, and a small spectral
multiplier lab on finite doubling spaces.
"""

__version__ = "0.1.0"
