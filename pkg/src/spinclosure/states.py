"""States and probability rules for single and composite generalized spins.

A generalized spin in d dimensions is described by a Bloch vector x in the
closed unit ball of R^d; pure states sit on the sphere. A pair of spins is
described by the tuple (x, y, T, Lambda) of local vectors, a d x d
correlation matrix, and optional named global parameters that local
statistics cannot see.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

NORM_SLACK = 1e-12
PURITY_TOL = 1e-9
UNIT_TOL = 1e-9


def _as_components(values) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1:
        raise ValueError(f"Bloch components must be a 1-d sequence, got shape {arr.shape}")
    if arr.shape[0] < 2:
        raise ValueError(f"Bloch dimension must be >= 2, got {arr.shape[0]}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("Bloch components must be finite")
    return arr


@dataclass(frozen=True)
class BlochVector:
    """A point in the d-dimensional Bloch ball (mixed states allowed)."""

    components: np.ndarray

    def __init__(self, components):
        arr = _as_components(components)
        if np.linalg.norm(arr) > 1.0 + NORM_SLACK:
            raise ValueError(f"Bloch vector norm {np.linalg.norm(arr):.6g} exceeds 1")
        arr.setflags(write=False)
        object.__setattr__(self, "components", arr)

    @property
    def dim(self) -> int:
        return self.components.shape[0]

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.components))

    @property
    def is_pure(self) -> bool:
        return abs(self.norm - 1.0) <= PURITY_TOL

    @classmethod
    def unit(cls, direction) -> "BlochVector":
        """Normalize a nonzero direction onto the sphere."""
        arr = _as_components(direction)
        n = np.linalg.norm(arr)
        if n == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return cls(arr / n)

    @classmethod
    def axis(cls, d: int, i: int, sign: float = 1.0) -> "BlochVector":
        """The signed i-th basis direction (0-based) in d dimensions."""
        arr = np.zeros(d)
        arr[i] = sign
        return cls(arr)


def _coerce(v) -> BlochVector:
    return v if isinstance(v, BlochVector) else BlochVector(v)


def _require_unit(v: BlochVector, what: str) -> None:
    if abs(v.norm - 1.0) > UNIT_TOL:
        raise ValueError(f"{what} must be a unit vector, norm is {v.norm:.6g}")


@dataclass(frozen=True)
class CompositeState:
    """Two-spin state (x, y, T, Lambda); T carries the correlations."""

    x: BlochVector
    y: BlochVector
    T: np.ndarray
    lam: dict[str, float] = field(default_factory=dict)

    def __init__(self, x, y, T, lam: dict[str, float] | None = None):
        xv, yv = _coerce(x), _coerce(y)
        if xv.dim != yv.dim:
            raise ValueError(f"local dimensions differ: {xv.dim} vs {yv.dim}")
        Tm = np.asarray(T, dtype=float)
        if Tm.shape != (xv.dim, xv.dim):
            raise ValueError(f"correlation matrix shape {Tm.shape}, expected {(xv.dim, xv.dim)}")
        Tm = Tm.copy()
        Tm.setflags(write=False)
        object.__setattr__(self, "x", xv)
        object.__setattr__(self, "y", yv)
        object.__setattr__(self, "T", Tm)
        object.__setattr__(self, "lam", dict(lam) if lam else {})

    @property
    def dim(self) -> int:
        return self.x.dim


def born_probability(x, y) -> float:
    """Probability (1 + x.y)/2 of finding the spin along measurement direction y."""
    xv, yv = _coerce(x), _coerce(y)
    if xv.dim != yv.dim:
        raise ValueError(f"dimension mismatch: {xv.dim} vs {yv.dim}")
    _require_unit(yv, "measurement direction")
    p = 0.5 * (1.0 + float(xv.components @ yv.components))
    return min(max(p, 0.0), 1.0)


def composite_probability(psi: CompositeState, a, b) -> float:
    """Joint up-up probability (1 + x.a + y.b + a.T.b)/4 along directions (a, b).

    Not clipped: the value can be negative for tuples outside the physical
    state set, which is exactly what the positivity scans look for.
    """
    av, bv = _coerce(a), _coerce(b)
    if av.dim != psi.dim or bv.dim != psi.dim:
        raise ValueError("measurement directions must match the state dimension")
    _require_unit(av, "first measurement direction")
    _require_unit(bv, "second measurement direction")
    aa, bb = av.components, bv.components
    return 0.25 * (1.0 + float(psi.x.components @ aa) + float(psi.y.components @ bb)
                   + float(aa @ psi.T @ bb))


def product_state(x, y) -> CompositeState:
    """Uncorrelated pair: T = x y^T and no global parameters."""
    xv, yv = _coerce(x), _coerce(y)
    if xv.dim != yv.dim:
        raise ValueError(f"dimension mismatch: {xv.dim} vs {yv.dim}")
    return CompositeState(xv, yv, np.outer(xv.components, yv.components))
