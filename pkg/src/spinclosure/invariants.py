"""Group-invariant tensors by Lie-algebra null-space computation.

A tensor with k slots over R^d is invariant under a connected matrix group
exactly when the summed slot action of every algebra generator annihilates
it. Stacking those actions into the positive semidefinite Gram operator
M = sum_a L_a^T L_a turns the invariance equations into an eigenproblem:
the invariant tensors are the null space of M. Discrete inversions are
handled separately as a parity constraint.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

import numpy as np

from .groups import GroupSpec, LieAlgebraBasis, random_group_element

MAX_TENSOR_ENTRIES = 20000
NULL_THRESHOLD_FACTOR = 1e-10
GAP_FACTOR = 1e6

ANTISYM_FIRST_PAIR = "antisymmetric-first-pair"
INVERSION_PARITY = "inversion-parity"
NO_CONSTRAINT = "none"
_KNOWN_CONSTRAINTS = {ANTISYM_FIRST_PAIR, INVERSION_PARITY, NO_CONSTRAINT}


class IndeterminateNullSpace(RuntimeError):
    """The operator spectrum has no clean zero/nonzero gap; no dimension is reported."""


@dataclass(frozen=True)
class InvariantTensor:
    """Dense order-k tensor over R^d, optionally normalized to unit Frobenius norm."""

    order: int
    d: int
    components: np.ndarray
    normalized: bool = False

    def __init__(self, components, normalized: bool = False):
        arr = np.asarray(components, dtype=float)
        d = arr.shape[0]
        if arr.shape != (d,) * arr.ndim:
            raise ValueError(f"tensor must be hypercubic, got shape {arr.shape}")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "order", arr.ndim)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "components", arr)
        object.__setattr__(self, "normalized", bool(normalized))


@dataclass(frozen=True)
class SolutionSpace:
    """An orthonormal basis of invariant tensors plus the threshold that selected it."""

    dimension: int
    basis: list
    threshold_used: float


@lru_cache(maxsize=None)
def _sign_table(k: int):
    return {p: _perm_sign(p) for p in permutations(range(k))}


def _perm_sign(p) -> int:
    sgn = 1
    p = list(p)
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                sgn = -sgn
    return sgn


def levi_civita(d: int) -> np.ndarray:
    """The totally antisymmetric tensor with d slots, +1 on the identity permutation."""
    eps = np.zeros((d,) * d)
    for p, s in _sign_table(d).items():
        eps[p] = s
    return eps


OCTONION_TRIPLES = ((1, 2, 3), (1, 4, 5), (1, 7, 6), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 6, 5))


def octonion_structure_tensor() -> np.ndarray:
    """The antisymmetric 3-tensor of the seven-dimensional cross product.

    Takes the value +1 on the 1-based triples 123, 145, 176, 246, 257, 347,
    365 and extends by total antisymmetry (42 nonzero entries).
    """
    psi = np.zeros((7, 7, 7))
    for (a, b, c) in OCTONION_TRIPLES:
        base = (a - 1, b - 1, c - 1)
        for p, s in _sign_table(3).items():
            psi[base[p[0]], base[p[1]], base[p[2]]] = s
    return psi


def _slot_action(X: np.ndarray, order: int) -> np.ndarray:
    """sum over slots of I x ... x X x ... x I on the flattened tensor space."""
    d = X.shape[0]
    n = d ** order
    L = np.zeros((n, n))
    for slot in range(order):
        term = np.eye(1)
        for s in range(order):
            term = np.kron(term, X if s == slot else np.eye(d))
        L += term
    return L


def invariance_operator(basis: LieAlgebraBasis, order: int) -> np.ndarray:
    """Positive semidefinite Gram operator whose null space is the invariant tensors."""
    if order not in (2, 3, 4):
        raise ValueError("order must be 2, 3 or 4")
    d = basis.d
    if d ** order > MAX_TENSOR_ENTRIES:
        raise ValueError(f"tensor space of {d ** order} entries exceeds the guard "
                         f"of {MAX_TENSOR_ENTRIES}")
    n = d ** order
    M = np.zeros((n, n))
    for X in basis.generators:
        L = _slot_action(X, order)
        M += L.T @ L
    return 0.5 * (M + M.T)


def _null_space(M: np.ndarray) -> tuple[np.ndarray, float]:
    """Null eigenvectors of a PSD operator, with a spectral-gap sanity check."""
    w, V = np.linalg.eigh(M)
    lam_max = float(w[-1])
    if lam_max <= 0.0:
        return V, 0.0
    thr = NULL_THRESHOLD_FACTOR * lam_max
    null_mask = w <= thr
    n_null = int(null_mask.sum())
    if 0 < n_null < w.shape[0]:
        largest_null = max(float(w[n_null - 1]), 0.0)
        smallest_rest = float(w[n_null])
        if largest_null > 0.0 and smallest_rest / largest_null < GAP_FACTOR:
            raise IndeterminateNullSpace(
                f"no clean spectral gap: eigenvalues {largest_null:.3e} and "
                f"{smallest_rest:.3e} straddle the threshold {thr:.3e}")
    return V[:, null_mask], thr


def _swap_first_pair(vecs: np.ndarray, d: int, order: int) -> np.ndarray:
    """Apply the slot-1,2 transposition to flattened tensors (columns)."""
    shape = (d,) * order
    axes = (1, 0) + tuple(range(2, order))
    out = np.empty_like(vecs)
    for c in range(vecs.shape[1]):
        out[:, c] = vecs[:, c].reshape(shape).transpose(axes).ravel()
    return out


def _intersect_constraints(vecs: np.ndarray, d: int, order: int,
                           constraints: tuple[str, ...]) -> np.ndarray:
    """Restrict a null basis (columns) to the requested linear symmetry constraints."""
    if vecs.shape[1] == 0:
        return vecs
    residual_rows = []
    if ANTISYM_FIRST_PAIR in constraints:
        if order < 2:
            raise ValueError("antisymmetric-first-pair needs at least 2 slots")
        residual_rows.append(vecs + _swap_first_pair(vecs, d, order))
    if not residual_rows:
        return vecs
    R = np.vstack(residual_rows)
    u, s, vt = np.linalg.svd(R, full_matrices=True)
    tol = max(R.shape) * np.finfo(float).eps * (s[0] if s.size else 0.0)
    rank = int((s > max(tol, 1e-12)).sum())
    coef = vt[rank:].T  # combinations annihilated by the constraint residual
    return vecs @ coef


def _orthonormalize(vecs: np.ndarray) -> np.ndarray:
    if vecs.shape[1] == 0:
        return vecs
    q, _ = np.linalg.qr(vecs)
    return q


def _canonical_sign(vec: np.ndarray) -> np.ndarray:
    idx = int(np.argmax(np.abs(vec)))
    return -vec if vec[idx] < 0 else vec


def invariant_tensors(group: GroupSpec, order: int,
                      constraints: tuple[str, ...] | list[str] = ()) -> SolutionSpace:
    """Solve for the order-k tensors invariant under the group, then intersect constraints.

    For groups containing the total inversion and odd k, the parity argument
    (-1)^k mu = mu forces the zero solution without any algebra work; the
    same shortcut serves the explicit inversion-parity constraint.
    """
    constraints = tuple(c for c in constraints if c != NO_CONSTRAINT)
    unknown = set(constraints) - _KNOWN_CONSTRAINTS
    if unknown:
        raise ValueError(f"unknown constraints: {sorted(unknown)}")
    if order % 2 == 1 and (group.contains_inversion or INVERSION_PARITY in constraints):
        return SolutionSpace(0, [], 0.0)
    if group.algebra is None:
        raise ValueError(f"group {group.name!r} carries no algebra basis; only the "
                         "parity shortcut is available for it")
    M = invariance_operator(group.algebra, order)
    vecs, thr = _null_space(M)
    vecs = _intersect_constraints(vecs, group.d, order, constraints)
    vecs = _orthonormalize(vecs)
    basis = []
    for c in range(vecs.shape[1]):
        v = _canonical_sign(vecs[:, c])
        basis.append(InvariantTensor(v.reshape((group.d,) * order), normalized=True))
    return SolutionSpace(len(basis), basis, thr)


def trivial_multiplicity(group: GroupSpec, order: int) -> int:
    """Multiplicity of the trivial representation in the k-fold tensor power."""
    if group.algebra is None:
        raise ValueError(f"group {group.name!r} carries no algebra basis")
    M = invariance_operator(group.algebra, order)
    vecs, _ = _null_space(M)
    return vecs.shape[1]


def commutant_dimension(group: GroupSpec) -> int:
    """Dimension of the space of d^2 x d^2 matrices commuting with the two-fold action.

    Solves [M, X x I + I x X] = 0 over all generators X as a null space in
    the d^4 matrix unknowns; the result counts the irreducible summands of
    the two-fold tensor representation (with their multiplicities squared).
    """
    if group.algebra is None:
        raise ValueError(f"group {group.name!r} carries no algebra basis")
    d = group.d
    if d > 10:
        raise ValueError("commutant computation is guarded to d <= 10")
    n = d * d
    eye = np.eye(n)
    G = np.zeros((n * n, n * n))
    for X in group.algebra.generators:
        A = np.kron(X, np.eye(d)) + np.kron(np.eye(d), X)
        K = np.kron(A, eye) - np.kron(eye, A.T)
        G += K.T @ K
    G = 0.5 * (G + G.T)
    vecs, _ = _null_space(G)
    return vecs.shape[1]


def rotate_tensor(tensor: np.ndarray, R: np.ndarray) -> np.ndarray:
    """Simultaneous rotation of every slot: T'_{i...} = R_{ia} ... T_{a...}."""
    out = tensor
    for slot in range(tensor.ndim):
        out = np.tensordot(R, out, axes=(1, slot))
        out = np.moveaxis(out, 0, slot)
    return out


def verify_invariance(tensor: InvariantTensor | np.ndarray, group: GroupSpec,
                      samples: int = 50, rng_seed=0) -> float:
    """Max relative deviation of the tensor under seeded random finite rotations."""
    if group.algebra is None:
        raise ValueError(f"group {group.name!r} carries no algebra basis")
    T = tensor.components if isinstance(tensor, InvariantTensor) else np.asarray(tensor, float)
    nrm = np.linalg.norm(T)
    if nrm == 0.0:
        return 0.0
    rng = np.random.default_rng(rng_seed)
    worst = 0.0
    for _ in range(samples):
        R = random_group_element(group.algebra, rng)
        worst = max(worst, float(np.linalg.norm(rotate_tensor(T, R) - T) / nrm))
    return worst
