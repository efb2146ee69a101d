DEFAULT_GAMMA = 0.2

# Threshold scan
GRID_STEP = 0.01
BISECT_TOL = 1e-10
CEILING_FACTOR = 3.0 # t_max = CEILING_FACTOR * sqrt(2 log n)
SCAN_BLOCK = 64 # grid points evaluated per vectorized block

MODULUS_FLOOR = 1e-300

# Phase-function quadrature
QUAD_EPSREL = 1e-9
QUAD_LIMIT = 200

# Baselines
STOREY_LAMBDA = 0.5
EFRON_MIN_N = 500
SCOTT_FACTOR = 3.49

# Testing
LEVEL_CAP = 1e-6 # 1 - eps_hat must stay above this
