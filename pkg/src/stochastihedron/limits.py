"""Desk-scale capacity guards.

Every expensive operation is capped at a weight where exact computation
stays in the seconds-to-minutes range.  Setting the environment variable
CONTINGENCY_MAX_N to a larger integer raises all guards at once; it can
never lower them below the built-in defaults.
"""

import os

from .errors import CapacityError

ENV_VAR = "CONTINGENCY_MAX_N"

ENUMERATION_CAP = 7       # full census of CM_n
POSET_CAP = 7             # covers of the contraction order
SPHERICITY_CAP = 4        # homology of every lower interval
ANODYNE_CAP = 5           # union-find over anodyne contractions
MEET_CAP = 6              # grouping CM_n by label pairs
DOUBLE_COSET_CAP = 6      # orbit enumeration inside S_n
CONSTANT_SHEAF_CAP = 5
TOTAL_POSITIVITY_CAP = 7  # matrix size, all-minors scan
DET_DIRECT_CAP = 12       # exact determinant of the meta-matrix
RATIONAL_IDENTITY_CAP = 20


def effective_cap(default):
    raw = os.environ.get(ENV_VAR)
    if raw is None:
        return default
    try:
        return max(default, int(raw))
    except ValueError:
        return default


def guard(value, default_cap, what):
    """Raise CapacityError when value exceeds the (possibly raised) cap."""
    cap = effective_cap(default_cap)
    if value > cap:
        raise CapacityError(
            f"{what} is capped at {cap} (got {value}); "
            f"set {ENV_VAR} to raise the limit"
        )
