"""Deterministic, splittable random streams (xoshiro256++ seeded via splitmix64).

Every stream is a pure function of its ``seed_path``: a root seed plus the
sequence of integer labels it was derived through. Derivation never consumes
parent state, so any subsystem can be handed its own stream and replayed in
isolation.

Uniforms are built from the top 53 bits of the 64-bit output (exactly [0, 1)).
Normals use the Box-Muller transform, cosine branch only: each normal consumes
two uniforms, so the state advance is independent of call history.

Bulk draws (`uniforms`, `normals`) produce bit-identical sequences to the
scalar calls; they run through numba-jitted kernels when numba is importable
and a pure-Python loop otherwise. Uniforms are bit-identical across the two
backends; normals may differ in the last ulp (libm vs LLVM transcendentals),
so reproducibility guarantees hold per installed backend.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

_MASK = 0xFFFFFFFFFFFFFFFF
_GOLDEN = 0x9E3779B97F4A7C15
_INV_2_53 = 1.0 / 9007199254740992.0  # 2^-53
_TWO_PI = 6.283185307179586


def _mix64(z: int) -> int:
    """splitmix64 finalizer: bijective 64-bit mixer."""
    z = (z + _GOLDEN) & _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def _state_from_path(path: Sequence[int]) -> tuple[int, int, int, int]:
    """Fold the seed path into 64 bits, then fill 256 bits via splitmix64.

    The fold is order-sensitive, so derive(derive(r, 1), 2) and
    derive(derive(r, 2), 1) land on unrelated streams.
    """
    material = 0
    for label in path:
        material = _mix64(material ^ (label & _MASK))
    sm = material
    words = []
    for _ in range(4):
        sm = (sm + _GOLDEN) & _MASK
        z = sm
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        words.append(z ^ (z >> 31))
    return words[0], words[1], words[2], words[3]


def _py_fill_uniforms(s0: int, s1: int, s2: int, s3: int, out) -> tuple[int, int, int, int]:
    n = len(out)
    for i in range(n):
        x = (s0 + s3) & _MASK
        r = ((((x << 23) & _MASK) | (x >> 41)) + s0) & _MASK
        t = (s1 << 17) & _MASK
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = ((s3 << 45) & _MASK) | (s3 >> 19)
        out[i] = (r >> 11) * _INV_2_53
    return s0, s1, s2, s3


def _py_fill_normals(s0: int, s1: int, s2: int, s3: int, out) -> tuple[int, int, int, int]:
    pair = [0.0, 0.0]
    for i in range(len(out)):
        s0, s1, s2, s3 = _py_fill_uniforms(s0, s1, s2, s3, pair)
        out[i] = math.sqrt(-2.0 * math.log(1.0 - pair[0])) * math.cos(_TWO_PI * pair[1])
    return s0, s1, s2, s3


try:  # jitted bulk kernels; same algorithm as the pure-Python loops above
    import numba as _numba

    @_numba.njit(
        _numba.types.UniTuple(_numba.uint64, 4)(
            _numba.uint64, _numba.uint64, _numba.uint64, _numba.uint64, _numba.float64[:]
        ),
        cache=True,
    )
    def _nb_fill_uniforms(s0, s1, s2, s3, out):  # pragma: no cover - exercised via Rng
        inv = 1.0 / 9007199254740992.0
        for i in range(out.shape[0]):
            x = s0 + s3
            r = ((x << np.uint64(23)) | (x >> np.uint64(41))) + s0
            t = s1 << np.uint64(17)
            s2 ^= s0
            s3 ^= s1
            s1 ^= s2
            s0 ^= s3
            s2 ^= t
            s3 = (s3 << np.uint64(45)) | (s3 >> np.uint64(19))
            out[i] = (r >> np.uint64(11)) * inv
        return s0, s1, s2, s3

    @_numba.njit(
        _numba.types.UniTuple(_numba.uint64, 4)(
            _numba.uint64, _numba.uint64, _numba.uint64, _numba.uint64, _numba.float64[:]
        ),
        cache=True,
    )
    def _nb_fill_normals(s0, s1, s2, s3, out):  # pragma: no cover - exercised via Rng
        inv = 1.0 / 9007199254740992.0
        two_pi = 6.283185307179586
        for i in range(out.shape[0]):
            u = np.empty(2, dtype=np.float64)
            for j in range(2):
                x = s0 + s3
                r = ((x << np.uint64(23)) | (x >> np.uint64(41))) + s0
                t = s1 << np.uint64(17)
                s2 ^= s0
                s3 ^= s1
                s1 ^= s2
                s0 ^= s3
                s2 ^= t
                s3 = (s3 << np.uint64(45)) | (s3 >> np.uint64(19))
                u[j] = (r >> np.uint64(11)) * inv
            out[i] = np.sqrt(-2.0 * np.log(1.0 - u[0])) * np.cos(two_pi * u[1])
        return s0, s1, s2, s3

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False


class Rng:
    """One owner per stream; derive children instead of sharing state."""

    __slots__ = ("_s0", "_s1", "_s2", "_s3", "seed_path")

    def __init__(self, seed_path: Iterable[int]):
        self.seed_path: tuple[int, ...] = tuple(int(x) & _MASK for x in seed_path)
        self._s0, self._s1, self._s2, self._s3 = _state_from_path(self.seed_path)

    @classmethod
    def from_seed(cls, seed: int) -> "Rng":
        """Root stream for a 64-bit experiment seed."""
        return cls((seed,))

    def derive(self, label: int) -> "Rng":
        """Child stream keyed by `label`; does not touch this stream's state."""
        return Rng(self.seed_path + (int(label) & _MASK,))

    def next_u64(self) -> int:
        s0, s1, s2, s3 = self._s0, self._s1, self._s2, self._s3
        x = (s0 + s3) & _MASK
        result = ((((x << 23) & _MASK) | (x >> 41)) + s0) & _MASK
        t = (s1 << 17) & _MASK
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = ((s3 << 45) & _MASK) | (s3 >> 19)
        self._s0, self._s1, self._s2, self._s3 = s0, s1, s2, s3
        return result

    def next_uniform(self) -> float:
        """Uniform on [0, 1) with a full 53-bit mantissa."""
        return (self.next_u64() >> 11) * _INV_2_53

    def next_normal(self) -> float:
        """Standard normal; consumes exactly two uniforms (Box-Muller, cos branch)."""
        return float(self.normals(1)[0])

    def uniforms(self, n: int) -> np.ndarray:
        """n uniforms, bit-identical to n `next_uniform` calls."""
        out = np.empty(n, dtype=np.float64)
        if HAVE_NUMBA:
            s0, s1, s2, s3 = _nb_fill_uniforms(self._s0, self._s1, self._s2, self._s3, out)
            self._s0, self._s1, self._s2, self._s3 = int(s0), int(s1), int(s2), int(s3)
        else:
            self._s0, self._s1, self._s2, self._s3 = _py_fill_uniforms(
                self._s0, self._s1, self._s2, self._s3, out
            )
        return out

    def normals(self, n: int) -> np.ndarray:
        """n standard normals, consuming 2n uniforms."""
        out = np.empty(n, dtype=np.float64)
        if HAVE_NUMBA:
            s0, s1, s2, s3 = _nb_fill_normals(self._s0, self._s1, self._s2, self._s3, out)
            self._s0, self._s1, self._s2, self._s3 = int(s0), int(s1), int(s2), int(s3)
        else:
            self._s0, self._s1, self._s2, self._s3 = _py_fill_normals(
                self._s0, self._s1, self._s2, self._s3, out
            )
        return out

    def get_state(self) -> dict:
        """Serializable snapshot: seed path plus current 256-bit state."""
        return {
            "seed_path": list(self.seed_path),
            "state": [self._s0, self._s1, self._s2, self._s3],
        }

    @classmethod
    def from_state(cls, state: dict) -> "Rng":
        rng = cls(state["seed_path"])
        rng._s0, rng._s1, rng._s2, rng._s3 = (int(w) & _MASK for w in state["state"])
        return rng

    def __repr__(self) -> str:
        return f"Rng(seed_path={self.seed_path})"
