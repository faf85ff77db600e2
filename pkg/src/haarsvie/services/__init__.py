"""
Numerical services: Haar basis, Brownian paths, tensor coefficients, the
collocation solver, Monte Carlo ensembles and the reference oracles.
"""
