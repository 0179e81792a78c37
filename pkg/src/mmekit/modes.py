"""Mode-structure arithmetic for multipartite Hilbert spaces.

A system of N modes with dimensions (n_1, ..., n_N) has total dimension
n = n_1 * ... * n_N.  Basis states carry two equivalent labels: a scalar
level in 1..n and a vector index (v_1, ..., v_N) of per-mode labels with
v_m in 1..n_m.  Mode 1 is the most significant digit of the mixed-radix
encoding, and all labels start at 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class ModeStructure:
    """An ordered tuple of mode dimensions.

    Parameters
    ----------
    dims : sequence of int
        Per-mode dimensions n_m, each at least 2.

    Attributes
    ----------
    N : int
        Number of modes.
    n : int
        Total dimension, the product of `dims`.
    n_max : int
        Largest mode dimension.
    n_over_max : int
        n / n_max, always an exact integer.
    """

    dims: tuple[int, ...]

    def __init__(self, dims):
        dims = tuple(int(d) for d in dims)
        if len(dims) < 1:
            raise ValueError("a mode structure needs at least one mode")
        for d in dims:
            if d < 2:
                raise ValueError(f"mode dimensions must be >= 2, got {d}")
        object.__setattr__(self, "dims", dims)

    @property
    def N(self) -> int:
        return len(self.dims)

    @property
    def n(self) -> int:
        return math.prod(self.dims)

    @property
    def n_max(self) -> int:
        return max(self.dims)

    @property
    def n_over_max(self) -> int:
        return self.n // self.n_max

    def substructure(self, modes) -> "ModeStructure":
        """Structure formed by the given modes, kept in ascending order."""
        modes = _check_modes(self, modes)
        return ModeStructure(tuple(self.dims[m - 1] for m in modes))

    def __str__(self) -> str:
        return "x".join(str(d) for d in self.dims)


@dataclass(frozen=True)
class Bipartition:
    """The extreme bipartition (m | mbar) of a structure.

    S is the smaller side, B the bigger; n_S * n_B = n.  When the two
    sides tie, the focal mode m is the S side and B_modes = mbar.
    """

    structure: ModeStructure
    m: int
    mbar: tuple[int, ...]
    n_S: int
    n_B: int
    B_modes: tuple[int, ...]


def parse_dims(text: str) -> ModeStructure:
    """Parse a mode structure from text.

    Accepts "n1xn2x...xnN" (e.g. "2x2x3") and the qubit shorthand "2^N".
    """
    text = text.strip().lower()
    if not text:
        raise ValueError("empty mode structure")
    if "^" in text:
        base, _, count = text.partition("^")
        try:
            b, c = int(base), int(count)
        except ValueError:
            raise ValueError(f"cannot parse mode structure {text!r}") from None
        if b != 2:
            raise ValueError("shorthand base^N is only supported for base 2")
        if c < 1:
            raise ValueError("2^N needs N >= 1")
        return ModeStructure((2,) * c)
    try:
        dims = [int(part) for part in text.split("x")]
    except ValueError:
        raise ValueError(f"cannot parse mode structure {text!r}") from None
    return ModeStructure(dims)


def _check_level(s: ModeStructure, level: int) -> int:
    level = int(level)
    if not 1 <= level <= s.n:
        raise ValueError(f"level {level} out of range 1..{s.n} for {s}")
    return level


def _check_modes(s: ModeStructure, modes) -> tuple[int, ...]:
    modes = tuple(int(m) for m in modes)
    if not modes:
        raise ValueError("mode list must be nonempty")
    if list(modes) != sorted(set(modes)):
        raise ValueError(f"mode list must be strictly ascending, got {modes}")
    for m in modes:
        if not 1 <= m <= s.N:
            raise ValueError(f"mode {m} out of range 1..{s.N}")
    return modes


def strides(s: ModeStructure) -> tuple[int, ...]:
    """Place values of each mode in the scalar encoding (mode 1 largest)."""
    out = []
    acc = 1
    for d in reversed(s.dims):
        out.append(acc)
        acc *= d
    return tuple(reversed(out))


def scalar_to_vector(s: ModeStructure, level: int) -> tuple[int, ...]:
    """Decompose a scalar level 1..n into its per-mode labels.

    Mixed radix with mode 1 most significant; labels are 1-based, so
    level 1 maps to the all-ones vector.
    """
    level = _check_level(s, level)
    rem = level - 1
    labels = []
    for d in reversed(s.dims):
        labels.append(rem % d + 1)
        rem //= d
    return tuple(reversed(labels))


def vector_to_scalar(s: ModeStructure, labels) -> int:
    """Recombine per-mode labels into the scalar level (inverse of
    scalar_to_vector)."""
    labels = tuple(int(v) for v in labels)
    if len(labels) != s.N:
        raise ValueError(f"expected {s.N} labels, got {len(labels)}")
    level = 0
    for v, d in zip(labels, s.dims):
        if not 1 <= v <= d:
            raise ValueError(f"label {v} out of range 1..{d}")
        level = level * d + (v - 1)
    return level + 1


def bipartition(s: ModeStructure, m: int) -> Bipartition:
    """Extreme bipartition of mode m against all other modes.

    The bigger side has dimension n_B = max(n_m, n/n_m).  On ties the
    focal mode is kept on the S side, i.e. B_modes = mbar.
    """
    m = int(m)
    if not 1 <= m <= s.N:
        raise ValueError(f"mode {m} out of range 1..{s.N}")
    mbar = tuple(k for k in range(1, s.N + 1) if k != m)
    n_m = s.dims[m - 1]
    n_mbar = s.n // n_m
    if n_m > n_mbar:
        n_S, n_B, B_modes = n_mbar, n_m, (m,)
    else:
        n_S, n_B, B_modes = n_m, n_mbar, mbar
    return Bipartition(s, m, mbar, n_S, n_B, B_modes)


def project_level(s: ModeStructure, level: int, modes) -> int:
    """Scalar index of a level's restriction to a subset of modes.

    The restriction lives in the substructure formed by `modes` in
    ascending order.  Projecting onto all modes is the identity.
    """
    modes = _check_modes(s, modes)
    labels = scalar_to_vector(s, level)
    sub = s.substructure(modes)
    return vector_to_scalar(sub, tuple(labels[m - 1] for m in modes))
