"""Constants frozen after calibration (see scripts/calibrate.py).

Asymptotic bounds hide constants; these are the values the test suite
holds the implementation to.
"""

# balancing: size blow-up and local-balance factor of the output grammar
C_BAL = 8.0
C_BAL_LOCAL = 3.0

# grammar access: additive slack on the descent-step bound
C_ACC = 4

# grammar accessor space: words per grammar rule
C_SPACE = 64

# interval-biased navigation and parse access
C_NAV = 3
C_1 = 3
C_2 = 1

# contracting transform: size <= C_CT * b * log_alpha(n / b) + C_CT0
C_CT = 16.0
C_CT0 = 8

# default word size for the predecessor structures
DEFAULT_W = 64
