# Absolute tolerance on probability sums.
PROB_TOL = 1e-12

# Slack for monotonicity, range and incentive-compatibility checks.
MONO_TOL = 1e-9

# Bisection tolerance on the policy parameter.
BISECT_XTOL = 1e-10

# Tolerance for conditional-mean feasibility and knife-edge comparisons.
MEAN_TOL = 1e-9
