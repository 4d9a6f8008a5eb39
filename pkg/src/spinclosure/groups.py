"""Matrix Lie algebras for the groups acting transitively on spheres.

Provides the standard so(d) basis, the 14 generators of the exceptional
group acting on R^7, the 8 generators of the real form of su(3) on R^6
(both as hand-checked constant tables, locked entry by entry in the test
suite), the generic real embedding of su(k) on R^(2k), group metadata with
the escalation chain used by the closure engine, dense matrix exponentials,
and seeded random group elements.

Convention: all generator tables are written in 1-based row/column notation
in comments; code uses 0-based numpy indexing throughout.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

SO_NAME = "special-orthogonal"
G2_NAME = "g2"
INVERSION_NAME = "inversion-containing"


def su_real_name(k: int) -> str:
    return f"su-real({k})"


@dataclass(frozen=True)
class LieAlgebraBasis:
    """A list of antisymmetric d x d generators spanning a matrix Lie algebra."""

    d: int
    name: str
    generators: np.ndarray  # shape (n, d, d)

    def __init__(self, d: int, name: str, generators):
        gens = np.asarray(generators, dtype=float)
        if gens.ndim != 3 or gens.shape[1:] != (d, d):
            raise ValueError(f"generators must have shape (n, {d}, {d})")
        gens = gens.copy()
        gens.setflags(write=False)
        object.__setattr__(self, "d", int(d))
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "generators", gens)

    def __len__(self) -> int:
        return self.generators.shape[0]

    def span_matrix(self) -> np.ndarray:
        """Generators flattened to columns of a (d^2, n) matrix."""
        return self.generators.reshape(len(self), -1).T


@dataclass(frozen=True)
class GroupSpec:
    """A transitive group on S^(d-1): algebra (if used), inversion flag, escalation chain."""

    d: int
    name: str
    algebra: LieAlgebraBasis | None
    contains_inversion: bool
    successors: tuple[str, ...]


def antisymmetry_residual(basis: LieAlgebraBasis) -> float:
    return max(float(np.abs(G + G.T).max()) for G in basis.generators)


def independence_rank(basis: LieAlgebraBasis) -> int:
    return int(np.linalg.matrix_rank(basis.generators.reshape(len(basis), -1)))


def closure_residual(basis: LieAlgebraBasis) -> float:
    """Worst relative distance of any commutator [X_i, X_j] from the span."""
    A = basis.span_matrix()
    worst = 0.0
    n = len(basis)
    for i in range(n):
        for j in range(i + 1, n):
            C = basis.generators[i] @ basis.generators[j] - basis.generators[j] @ basis.generators[i]
            nrm = np.linalg.norm(C)
            if nrm == 0.0:
                continue
            coef, *_ = np.linalg.lstsq(A, C.ravel(), rcond=None)
            worst = max(worst, float(np.linalg.norm(C.ravel() - A @ coef) / nrm))
    return worst


def so_algebra_basis(d: int) -> LieAlgebraBasis:
    """The d(d-1)/2 plane rotations E_ij - E_ji, i < j, lexicographic order."""
    if d < 2:
        raise ValueError("d must be >= 2")
    gens = []
    for i in range(d):
        for j in range(i + 1, d):
            X = np.zeros((d, d))
            X[i, j] = 1.0
            X[j, i] = -1.0
            gens.append(X)
    return LieAlgebraBasis(d, SO_NAME, np.array(gens))


def g2_generator(x) -> np.ndarray:
    """The 7x7 generator parameterized by 14 coefficients.

    Entry table in 1-based notation, upper triangle (antisymmetric fill):
    (1,2)=x1 (1,3)=-x2 (1,4)=x3 (1,5)=-x4 (1,6)=-x5 (1,7)=x9-x7
    (2,3)=x6 (2,4)=x7 (2,5)=x8-x5 (2,6)=x4-x11 (2,7)=x3+x10
    (3,4)=-x8 (3,5)=x9 (3,6)=x10 (3,7)=x11
    (4,5)=x13-x6 (4,6)=x14-x2 (4,7)=x12-x1
    (5,6)=x12 (5,7)=-x14
    (6,7)=x13
    """
    x = np.asarray(x, dtype=float)
    if x.shape != (14,):
        raise ValueError(f"expected 14 coefficients, got shape {x.shape}")
    x1, x2, x3, x4, x5, x6, x7, x8, x9, x10, x11, x12, x13, x14 = x
    H = np.array([
        [0.0,       x1,        -x2,   x3,        -x4,       -x5,       x9 - x7],
        [-x1,       0.0,        x6,   x7,        x8 - x5,   x4 - x11,  x3 + x10],
        [x2,       -x6,        0.0,  -x8,        x9,        x10,       x11],
        [-x3,      -x7,         x8,   0.0,       x13 - x6,  x14 - x2,  x12 - x1],
        [x4,        x5 - x8,   -x9,   x6 - x13,  0.0,       x12,      -x14],
        [x5,        x11 - x4,  -x10,  x2 - x14,  -x12,      0.0,       x13],
        [x7 - x9,  -x3 - x10,  -x11,  x1 - x12,  x14,      -x13,       0.0],
    ])
    return H


def g2_algebra_basis() -> LieAlgebraBasis:
    """The 14 generators {H(e_i)} of the stabilizer of the octonionic 3-form."""
    gens = np.array([g2_generator(np.eye(14)[i]) for i in range(14)])
    return LieAlgebraBasis(7, G2_NAME, gens)


def symplectic_form(k: int) -> np.ndarray:
    """The 2k x 2k block matrix [[0, I], [-I, 0]]."""
    if k < 1:
        raise ValueError("k must be >= 1")
    J = np.zeros((2 * k, 2 * k))
    J[:k, k:] = np.eye(k)
    J[k:, :k] = -np.eye(k)
    return J


def su_real_embedding(u) -> np.ndarray:
    """Real 2k x 2k image [[Re u, -Im u], [Im u, Re u]] of a complex k x k matrix."""
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise ValueError("u must be a square matrix")
    k = u.shape[0]
    D = np.zeros((2 * k, 2 * k))
    D[:k, :k] = u.real
    D[:k, k:] = -u.imag
    D[k:, :k] = u.imag
    D[k:, k:] = u.real
    return D


def su3_real_algebra_basis() -> LieAlgebraBasis:
    """The 8 generators {H(e_i)} of su(3) acting on R^6; each commutes with symplectic_form(3).

    Entry table in 1-based notation, upper triangle:
    (1,2)=-x4 (1,3)=-x5 (1,4)=x7 (1,5)=x1 (1,6)=x2
    (2,3)=-x6 (2,4)=x1 (2,5)=x8-x7 (2,6)=x3
    (3,4)=x2 (3,5)=x3 (3,6)=-x8
    (4,5)=-x4 (4,6)=-x5
    (5,6)=-x6
    """
    gens = np.array([_su3_real_generator(np.eye(8)[i]) for i in range(8)])
    return LieAlgebraBasis(6, su_real_name(3), gens)


def _su3_real_generator(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (8,):
        raise ValueError(f"expected 8 coefficients, got shape {x.shape}")
    x1, x2, x3, x4, x5, x6, x7, x8 = x
    return np.array([
        [0.0,  -x4,      -x5,   x7,   x1,       x2],
        [x4,    0.0,     -x6,   x1,   x8 - x7,  x3],
        [x5,    x6,       0.0,  x2,   x3,      -x8],
        [-x7,  -x1,      -x2,   0.0, -x4,      -x5],
        [-x1,   x7 - x8, -x3,   x4,   0.0,     -x6],
        [-x2,  -x3,       x8,   x5,   x6,       0.0],
    ])


def su_real_algebra_basis(k: int) -> LieAlgebraBasis:
    """Real embedding of the standard su(k) basis: k^2 - 1 generators on R^(2k).

    For k = 3 the hand-transcribed table of su3_real_algebra_basis is
    returned instead, so that downstream references to specific generators
    stay valid; both span the same algebra.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    if k == 3:
        return su3_real_algebra_basis()
    gens = []
    for i in range(k):
        for j in range(i + 1, k):
            a = np.zeros((k, k), dtype=complex)
            a[i, j] = 1.0
            a[j, i] = -1.0
            gens.append(su_real_embedding(a))
            b = np.zeros((k, k), dtype=complex)
            b[i, j] = 1j
            b[j, i] = 1j
            gens.append(su_real_embedding(b))
    for i in range(k - 1):
        h = np.zeros((k, k), dtype=complex)
        h[i, i] = 1j
        h[i + 1, i + 1] = -1j
        gens.append(su_real_embedding(h))
    return LieAlgebraBasis(2 * k, su_real_name(k), np.array(gens))


def minimal_transitive_group(d: int) -> GroupSpec:
    """The smallest Lie group acting transitively on S^(d-1), with escalation chain.

    d odd, d != 7: the special orthogonal group. d = 7: the exceptional
    14-dimensional group, escalating to the full rotation group. d = 2 or
    d = 0 mod 4: every transitive group contains the total inversion, so
    only that flag is carried. d = 2 mod 4, d > 2: the real form of
    su(d/2); every proper supergroup contains the inversion.
    """
    if d < 2:
        raise ValueError("d must be >= 2")
    if d == 2 or d % 4 == 0:
        return GroupSpec(d, INVERSION_NAME, None, True, (SO_NAME,))
    if d % 2 == 1:
        if d == 7:
            return GroupSpec(7, G2_NAME, g2_algebra_basis(), False, (SO_NAME,))
        return GroupSpec(d, SO_NAME, so_algebra_basis(d), False, ())
    k = d // 2
    return GroupSpec(d, su_real_name(k), su_real_algebra_basis(k), False,
                     (INVERSION_NAME, SO_NAME))


def group_by_name(name: str, d: int) -> GroupSpec:
    """Build the GroupSpec for an escalation-chain name at dimension d."""
    if name == SO_NAME:
        return GroupSpec(d, SO_NAME, so_algebra_basis(d), d % 2 == 0, ())
    if name == INVERSION_NAME:
        return GroupSpec(d, INVERSION_NAME, None, True, (SO_NAME,))
    if name == G2_NAME:
        if d != 7:
            raise ValueError("the exceptional group acts on R^7 only")
        return GroupSpec(7, G2_NAME, g2_algebra_basis(), False, (SO_NAME,))
    if name.startswith("su-real"):
        if d % 2 != 0:
            raise ValueError("su-real groups act in even dimension")
        return GroupSpec(d, su_real_name(d // 2), su_real_algebra_basis(d // 2), False,
                         (INVERSION_NAME, SO_NAME))
    raise ValueError(f"unknown group name {name!r}")


def matrix_exp(M, t: float = 1.0) -> np.ndarray:
    """Dense exponential exp(t M) by scaling and squaring of a Taylor series.

    The squaring level is chosen from the scaled norm so that the truncation
    error stays at machine precision; relative accuracy is ~1e-13 for
    ||t M|| up to ~50.
    """
    A = t * np.asarray(M, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("M must be a square matrix")
    n = A.shape[0]
    nrm = np.linalg.norm(A, np.inf)
    s = max(0, int(np.ceil(np.log2(nrm / 0.25))) if nrm > 0.25 else 0)
    A = A / (2.0 ** s)
    E = np.eye(n)
    term = np.eye(n)
    for kk in range(1, 30):
        term = term @ A / kk
        E += term
        if np.linalg.norm(term, np.inf) < 1e-20 * np.linalg.norm(E, np.inf):
            break
    for _ in range(s):
        E = E @ E
    return E


def assert_special_orthogonal(R: np.ndarray, tol: float = 1e-10) -> None:
    """Raise unless R^T R = I and det R = 1 within tol."""
    d = R.shape[0]
    if np.abs(R.T @ R - np.eye(d)).max() > tol:
        raise ValueError("matrix is not orthogonal")
    if abs(np.linalg.det(R) - 1.0) > tol:
        raise ValueError("matrix determinant is not +1")


def random_group_element(basis: LieAlgebraBasis, rng_seed) -> np.ndarray:
    """exp(sum c_i X_i) with c_i ~ U[-pi, pi] from a seeded generator."""
    rng = rng_seed if isinstance(rng_seed, np.random.Generator) else np.random.default_rng(rng_seed)
    coefs = rng.uniform(-np.pi, np.pi, size=len(basis))
    X = np.tensordot(coefs, basis.generators, axes=1)
    R = matrix_exp(X)
    assert_special_orthogonal(R)
    return R
