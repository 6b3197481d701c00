"""Seeded random deformation parameters for the verification suites."""
from typing import Iterator, Optional

import numpy as np

from glft.deform.params import DeformParams
from glft.utils.exceptions import ParameterError
from glft.utils.logging import log_debug


def random_params(rng: np.random.Generator, m: int, entry_bound: float = 10.0,
                  lam_range=(0.1, 10.0), max_cond: float = 1e3,
                  max_tries: int = 1000) -> DeformParams:
    """Draw P with lambda in (lo, hi], entries in [-bound, bound] and cond(A) <= max_cond."""
    lo, hi = lam_range
    for _ in range(max_tries):
        A = rng.uniform(-entry_bound, entry_bound, size=(m, m))
        if np.linalg.cond(A) > max_cond:
            continue
        lam = hi - rng.uniform(0.0, hi - lo)
        if lam <= lo:
            continue
        b = rng.uniform(-entry_bound, entry_bound, size=m)
        c = rng.uniform(-entry_bound, entry_bound, size=m)
        d = float(rng.uniform(-entry_bound, entry_bound))
        try:
            return DeformParams(lam, A, b, c, d)
        except ParameterError:
            continue
    raise ParameterError(f"could not draw a well-conditioned A in {max_tries} tries")


def param_stream(seed: int, count: int, m: int, entry_bound: float = 10.0,
                 max_cond: float = 1e3, rng: Optional[np.random.Generator] = None
                 ) -> Iterator[DeformParams]:
    """`count` parameters from a generator seeded with `seed` (logged for replay)."""
    log_debug(f"random P stream: seed={seed} count={count} m={m}")
    rng = rng if rng is not None else np.random.default_rng(seed)
    for _ in range(count):
        yield random_params(rng, m, entry_bound=entry_bound, max_cond=max_cond)
