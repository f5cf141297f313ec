"""Size limits shared by every backend.

``carrier_cap`` bounds materialized carriers (default 100 000 elements, or
the ``HOPF_SIZE_CAP`` environment variable).  ``element_budget`` bounds the
element sets enumerated for subobjects of lazily described carriers such as
iterated kernel pairs, and ``table_cap`` bounds the order of groups that get
an explicit Cayley table.  ``lie_dim_cap`` bounds the dimension of free Lie
algebras built by the presentation code.
"""

import os
from contextlib import contextmanager
from dataclasses import dataclass


@dataclass
class SizeLimits:
    carrier_cap: int = 100_000
    element_budget: int = 2_000_000
    table_cap: int = 3_000
    lazy_carrier_cap: int = 10**13
    lie_dim_cap: int = 160


def _from_env():
    limits = SizeLimits()
    raw = os.environ.get("HOPF_SIZE_CAP")
    if raw:
        limits.carrier_cap = int(raw)
    return limits


LIMITS = _from_env()


@contextmanager
def limits(**overrides):
    """Temporarily override fields of :data:`LIMITS`."""
    saved = {k: getattr(LIMITS, k) for k in overrides}
    for k, v in overrides.items():
        setattr(LIMITS, k, v)
    try:
        yield LIMITS
    finally:
        for k, v in saved.items():
            setattr(LIMITS, k, v)
