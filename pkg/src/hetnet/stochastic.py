"""Random sampling: Poisson point processes, nearest-pico distance, fading.

Every random draw goes through a :class:`numpy.random.Generator` built by
:func:`derive_stream`. A stream is keyed by ``(seed, index)`` and backed by
the counter-based Philox generator, so Monte Carlo trial ``i`` sees the
same numbers no matter which worker runs it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError
from .geometry import Point2D

RandomSource = np.random.Generator

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_TWO_52 = 2.0**52


def splitmix64(x: int) -> int:
    """SplitMix64 output function (a bijection on 64-bit integers)."""
    z = (x + _GOLDEN) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def stream_key(seed: int, index: int) -> int:
    """128-bit Philox key for ``(seed, index)``.

    Each half is a SplitMix64 bijection of one argument, so distinct pairs
    (taken modulo 2**64) always give distinct keys. This mapping is frozen:
    changing it changes every reported Monte Carlo number.
    """
    hi = splitmix64(int(index) & _MASK64)
    lo = splitmix64(int(seed) & _MASK64)
    return (hi << 64) | lo


def derive_stream(seed: int, index: int) -> RandomSource:
    return np.random.Generator(np.random.Philox(key=stream_key(seed, index)))


class StreamFactory:
    """Reuses one Philox generator, rekeying it in place for each stream.

    ``factory(seed, index)`` yields exactly the sequence of
    ``derive_stream(seed, index)`` but skips constructing a new bit
    generator, which dominates the cost of short Monte Carlo trials. The
    returned generator is invalidated by the next call.
    """

    def __init__(self):
        self._bitgen = np.random.Philox(key=0)
        self._gen = np.random.Generator(self._bitgen)
        self._zeros = np.zeros(4, dtype=np.uint64)

    def __call__(self, seed: int, index: int) -> RandomSource:
        key = stream_key(seed, index)
        self._bitgen.state = {
            "bit_generator": "Philox",
            "state": {
                "counter": self._zeros.copy(),
                "key": np.array([key & _MASK64, key >> 64], dtype=np.uint64),
            },
            "buffer": self._zeros.copy(),
            "buffer_pos": 4,
            "has_uint32": 0,
            "uinteger": 0,
        }
        return self._gen


def open_uniform(rng: RandomSource, size=None):
    """Uniform variates on the open interval (0, 1).

    52-bit grid offset by half a step, so both endpoints are excluded
    exactly in float64.
    """
    k = np.floor(rng.random(size) * _TWO_52)
    return (k + 0.5) / _TWO_52


@dataclass(frozen=True)
class PppWindow:
    center: Point2D
    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise DomainError(f"window radius must be positive, got {self.radius!r}")


def sample_ppp(intensity: float, window: PppWindow, rng: RandomSource) -> np.ndarray:
    """Homogeneous PPP restricted to a disk, as an ``(n, 2)`` array."""
    if intensity < 0:
        raise DomainError(f"intensity must be nonnegative, got {intensity!r}")
    mean = intensity * math.pi * window.radius**2
    n = int(rng.poisson(mean)) if mean > 0 else 0
    if n == 0:
        return np.empty((0, 2))
    rho = window.radius * np.sqrt(rng.random(n))
    theta = rng.uniform(0.0, 2.0 * math.pi, n)
    cx, cy = window.center
    return np.column_stack([cx + rho * np.cos(theta), cy + rho * np.sin(theta)])


def nearest_distance_from_uniform(u, lambda2: float):
    """Solve ``1 - F2(r) = u`` for ``r``, where ``F2(r) = 1 - exp(-lambda2 pi r**2)``."""
    if not lambda2 > 0:
        raise DomainError(f"lambda2 must be positive, got {lambda2!r}")
    return np.sqrt(-np.log(u) / (math.pi * lambda2))


def sample_nearest_pico_distance(lambda2: float, rng: RandomSource, size=None):
    """Distance from the typical user to its closest pico BS.

    Uses inverse transform on the void probability of the pico PPP, so no
    pico point pattern has to be realised.
    """
    if not lambda2 > 0:
        raise DomainError(f"lambda2 must be positive, got {lambda2!r}")
    r = nearest_distance_from_uniform(open_uniform(rng, size), lambda2)
    return float(r) if size is None else r


def sample_fading_power(rng: RandomSource, size=None):
    """Rayleigh fading power gain, exponential with unit mean (never 0)."""
    h = -np.log(open_uniform(rng, size))
    return float(h) if size is None else h
