"""Fixed points of group actions: finite permutation groups, exact matrix groups, hyperbolic geometry and trees."""
