"""
haarsvie - Haar wavelet collocation for two-dimensional linear stochastic
Volterra integral equations, with Monte Carlo averaging over Brownian paths.
"""
__version__ = "0.1.0"
