"""Time evolution of generalized spins.

Covers single-spin precession under an antisymmetric generator, the
mean-field reduction of a pairwise interaction against a large bath, the
full d=3 composite system with its quantum / mirror classification, and the
d=4 (and d=5) flows generated by a tensor field contracted against the
fully antisymmetric tensor.

The composite integrator is classical fixed-step RK4 with automatic step
halving until two successive refinements agree below 1e-9 at the sample
times.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .groups import matrix_exp
from .invariants import InvariantTensor, levi_civita
from .states import BlochVector, CompositeState, _coerce, _require_unit

REFINE_TOL = 1e-9
MAX_REFINE = 14
ANTISYM_TOL = 1e-10

QUANTUM = "quantum"
MIRROR = "mirror"
INADMISSIBLE = "inadmissible"


@dataclass(frozen=True)
class PairwiseInteraction:
    """Constant tensors (a, b, mu) of a pairwise law plus per-constituent couplings."""

    d: int
    a: np.ndarray
    b: np.ndarray
    mu: np.ndarray
    beta: np.ndarray
    J: np.ndarray

    def __init__(self, d: int, a=None, b=None, mu=None, beta=(), J=()):
        a = np.zeros((d, d)) if a is None else np.asarray(a, dtype=float)
        b = np.zeros((d, d)) if b is None else np.asarray(b, dtype=float)
        mu = np.zeros((d, d, d)) if mu is None else np.asarray(mu, dtype=float)
        if a.shape != (d, d) or b.shape != (d, d) or mu.shape != (d, d, d):
            raise ValueError("tensor shapes must match the stated dimension")
        object.__setattr__(self, "d", int(d))
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "beta", np.asarray(beta, dtype=float))
        object.__setattr__(self, "J", np.asarray(J, dtype=float))


@dataclass(frozen=True)
class MeanFieldResult:
    """Macroscopic field B, effective generator G = a + mu.B, and the b = 0 validity flag."""

    B: np.ndarray
    G: np.ndarray
    valid: bool


@dataclass(frozen=True)
class TensorField:
    """A (d-2)-slot tensor field generating single-spin dynamics through contraction."""

    d: int
    B: np.ndarray

    def __init__(self, d: int, B):
        B = np.asarray(B, dtype=float)
        if B.shape != (d,) * (d - 2):
            raise ValueError(f"field must carry {d - 2} slots of size {d}")
        if not np.all(np.isfinite(B)):
            raise ValueError("field entries must be finite")
        object.__setattr__(self, "d", int(d))
        object.__setattr__(self, "B", B)


@dataclass(frozen=True)
class D3Trajectory:
    """Sampled d=3 composite trajectory; raw arrays, states built on demand.

    Local norms stay inside the Bloch ball exactly when (a, b) is an
    admissible parameter pair; inadmissible pairs are integrated all the
    same so positivity scans can exhibit their failure.
    """

    times: np.ndarray
    xs: np.ndarray
    ys: np.ndarray
    Ts: np.ndarray
    a: float
    b: float

    def __len__(self) -> int:
        return self.times.shape[0]

    @property
    def max_local_norm(self) -> float:
        return float(max(np.linalg.norm(self.xs, axis=1).max(),
                         np.linalg.norm(self.ys, axis=1).max()))

    def state(self, i: int) -> CompositeState:
        return CompositeState(BlochVector(self.xs[i]), BlochVector(self.ys[i]), self.Ts[i])

    @property
    def states(self) -> list[CompositeState]:
        return [self.state(i) for i in range(len(self))]


def evolve_bloch(x0, G, t: float) -> BlochVector:
    """Rotate a Bloch vector by exp(t G); G must be antisymmetric (reversible)."""
    x = _coerce(x0)
    G = np.asarray(G, dtype=float)
    if G.shape != (x.dim, x.dim):
        raise ValueError("generator shape must match the state dimension")
    if np.abs(G + G.T).max() > ANTISYM_TOL:
        raise ValueError("generator must be antisymmetric for reversible dynamics")
    return BlochVector(matrix_exp(G, t) @ x.components)


def mean_field_reduction(inter: PairwiseInteraction, bath) -> MeanFieldResult:
    """Collapse the pairwise law against a static bath: B = sum_s J_s y_s, G = a + mu.B.

    The reduction represents reversible dynamics only when the direct
    b-coupling vanishes; that is reported through the valid flag rather
    than raised, so callers can probe invalid interactions.
    """
    bath = [_coerce(y) for y in bath]
    for y in bath:
        if y.dim != inter.d:
            raise ValueError("bath vectors must match the interaction dimension")
    J = inter.J
    if len(bath) != J.shape[0]:
        raise ValueError(f"interaction carries {J.shape[0]} couplings for {len(bath)} bath spins")
    B = np.zeros(inter.d)
    for Js, y in zip(J, bath):
        B += Js * y.components
    G = inter.a + np.tensordot(inter.mu, B, axes=(2, 0))
    valid = float(np.abs(inter.b).max()) <= 1e-12 if inter.b.size else True
    return MeanFieldResult(B, G, valid)


def _pack(psi: CompositeState) -> np.ndarray:
    return np.concatenate([psi.x.components, psi.y.components, psi.T.ravel()])


def _refined_path(run, n_samples: int, width: int) -> np.ndarray:
    """Run an RK4 sampler with 1, 2, 4, ... substeps until refinement settles."""
    prev = None
    stride = 1
    for _ in range(MAX_REFINE):
        path = run(stride)
        if prev is not None and np.abs(path - prev).max() < REFINE_TOL:
            return path
        prev = path
        stride *= 2
    return prev


def integrate_composite_d3(psi0: CompositeState, a: float, b: float,
                           t_max: float, dt: float = 1e-3) -> D3Trajectory:
    """Integrate dx = a eps:T, dy = b eps:T, dT = -eps.(a x + b y) from psi0.

    Samples on the grid 0, dt, 2 dt, ... up to t_max. Requires d = 3 and no
    global parameters in the initial state.
    """
    if psi0.dim != 3:
        raise ValueError("the composite integrator is defined for d = 3")
    if any(abs(v) > 0 for v in psi0.lam.values()):
        raise ValueError("initial global parameters must vanish")
    if dt <= 0:
        raise ValueError("dt must be positive")
    if t_max < 0:
        raise ValueError("t_max must be non-negative")
    n = int(round(t_max / dt))
    if abs(n * dt - t_max) > 1e-9 * max(1.0, t_max):
        n = int(np.ceil(t_max / dt))
    state0 = _pack(psi0)

    def run(stride):
        return kernels.rk4_composite_d3(state0, float(a), float(b), dt / stride,
                                        n * stride, stride)

    path = _refined_path(run, n + 1, 15)
    times = dt * np.arange(n + 1)
    return D3Trajectory(times, path[:, 0:3].copy(), path[:, 3:6].copy(),
                        path[:, 6:15].reshape(-1, 3, 3).copy(), float(a), float(b))


def _axis_pairs(d: int) -> tuple[np.ndarray, np.ndarray]:
    axes = np.vstack([np.eye(d), -np.eye(d)])
    A = np.repeat(axes, 2 * d, axis=0)
    B = np.tile(axes, (2 * d, 1))
    return A, B


def _random_unit_pairs(d: int, n: int, rng) -> tuple[np.ndarray, np.ndarray]:
    A = rng.normal(size=(n, d))
    B = rng.normal(size=(n, d))
    A /= np.linalg.norm(A, axis=1, keepdims=True)
    B /= np.linalg.norm(B, axis=1, keepdims=True)
    return A, B


def positivity_scan(psi: CompositeState, n_directions: int = 2000, rng_seed=0) -> float:
    """Minimum joint probability over all axis pairs plus seeded random unit pairs."""
    A, B = _scan_directions(psi.dim, n_directions, rng_seed)
    return float(kernels.min_pair_probability(psi.x.components, psi.y.components,
                                              np.ascontiguousarray(psi.T), A, B))


def _scan_directions(d: int, n_directions: int, rng_seed) -> tuple[np.ndarray, np.ndarray]:
    A0, B0 = _axis_pairs(d)
    if n_directions > 0:
        A1, B1 = _random_unit_pairs(d, n_directions, np.random.default_rng(rng_seed))
        return np.vstack([A0, A1]), np.vstack([B0, B1])
    return A0, B0


def trajectory_positivity_minimum(traj: D3Trajectory, n_directions: int = 2000,
                                  rng_seed=0) -> float:
    """Minimum joint probability over every sampled state of a trajectory.

    Works on the raw arrays so that inadmissible trajectories, whose local
    vectors may leave the Bloch ball, can still be scanned.
    """
    A, B = _scan_directions(3, n_directions, rng_seed)
    best = np.inf
    for i in range(len(traj)):
        val = kernels.min_pair_probability(traj.xs[i], traj.ys[i],
                                           np.ascontiguousarray(traj.Ts[i]), A, B)
        best = min(best, val)
    return float(best)


def classify_solution(a: float, b: float) -> str:
    """Label the parameter pair: b = -a quantum, b = +a mirror, otherwise inadmissible."""
    tol = 1e-12 * max(1.0, abs(a), abs(b))
    if abs(b + a) <= tol:
        return QUANTUM
    if abs(b - a) <= tol:
        return MIRROR
    return INADMISSIBLE


_SX = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
_SY = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
_SZ = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
PAULIS = (_SX, _SY, _SZ)


def density_matrix(psi: CompositeState) -> np.ndarray:
    """Two-qubit matrix representation of a d=3 composite tuple.

    rho = (I.I + x_i s_i.I + y_i I.s_i + T_ij s_i.s_j) / 4; Hermitian with
    unit trace. Eigenvalues can be negative for mirror states, which is the
    point of computing it.
    """
    if psi.dim != 3:
        raise ValueError("density matrices are defined for d = 3")
    if any(abs(v) > 0 for v in psi.lam.values()):
        raise ValueError("global parameters must vanish")
    return _density_from_arrays(psi.x.components, psi.y.components, psi.T)


def _density_from_arrays(x, y, T) -> np.ndarray:
    rho = np.eye(4, dtype=complex)
    eye2 = np.eye(2, dtype=complex)
    for i in range(3):
        rho += x[i] * np.kron(PAULIS[i], eye2)
        rho += y[i] * np.kron(eye2, PAULIS[i])
        for j in range(3):
            rho += T[i, j] * np.kron(PAULIS[i], PAULIS[j])
    return rho / 4.0


def heisenberg_hamiltonian(a: float) -> np.ndarray:
    """The spin-spin interaction (a/2) sum_i s_i . s_i as a 4x4 matrix."""
    return (a / 2.0) * sum(np.kron(p, p) for p in PAULIS)


def heisenberg_consistency_check(a: float, t_max: float = 2.0, dt: float = 1e-4,
                                 n_random: int = 3, rng_seed=0) -> float:
    """Largest deviation of d rho/dt from i [H, rho] along quantum-branch trajectories.

    Integrates the composite system with b = -a from the canonical
    {e3, -e3, -e3 e3^T} state plus seeded random pure product states, maps
    every sample through the density matrix, and compares a central finite
    difference against the commutator.
    """
    if a == 0.0:
        return 0.0
    rng = np.random.default_rng(rng_seed)
    e3 = BlochVector.axis(3, 2)
    initial = [CompositeState(e3, BlochVector(-e3.components),
                              -np.outer(e3.components, e3.components))]
    for _ in range(n_random):
        u = rng.normal(size=3)
        v = rng.normal(size=3)
        x = BlochVector(u / np.linalg.norm(u))
        y = BlochVector(v / np.linalg.norm(v))
        initial.append(CompositeState(x, y, np.outer(x.components, y.components)))
    H = heisenberg_hamiltonian(a)
    worst = 0.0
    for psi0 in initial:
        traj = integrate_composite_d3(psi0, a, -a, t_max, dt)
        rhos = np.array([_density_from_arrays(traj.xs[i], traj.ys[i], traj.Ts[i])
                         for i in range(len(traj))])
        drho = (rhos[2:] - rhos[:-2]) / (2.0 * dt)
        comm = 1j * (H @ rhos[1:-1] - rhos[1:-1] @ H)
        worst = max(worst, float(np.abs(drho - comm).max()))
    return worst


def tensor_field_generator(field: TensorField) -> np.ndarray:
    """Antisymmetric generator G_ij = eps_{ij k...} B_{k...} for d in {4, 5}."""
    if field.d not in (4, 5):
        raise ValueError("tensor-field dynamics is implemented for d = 4 and d = 5")
    eps = levi_civita(field.d)
    return np.tensordot(eps, field.B, axes=field.d - 2)


def d4_three_body_generator(field: TensorField) -> np.ndarray:
    """The d=4 case G_ij = eps_ijkl B_kl of the tensor-field generator."""
    if field.d != 4:
        raise ValueError("expected a d = 4 tensor field")
    return tensor_field_generator(field)


def d4_coherent_field(n1, n2, N: int, mean_J: float) -> TensorField:
    """Field B = N <J> n1 n2^T of two orthogonal coherent cell directions."""
    v1, v2 = _coerce(n1), _coerce(n2)
    if v1.dim != 4 or v2.dim != 4:
        raise ValueError("cell directions must be 4-vectors")
    _require_unit(v1, "first cell direction")
    _require_unit(v2, "second cell direction")
    if abs(float(v1.components @ v2.components)) > 1e-9:
        raise ValueError("cell directions must be orthogonal")
    if N < 1:
        raise ValueError("N must be >= 1")
    return TensorField(4, N * mean_J * np.outer(v1.components, v2.components))


def integrate_bloch(x0, G, t_max: float, dt: float = 1e-3) -> tuple[np.ndarray, np.ndarray]:
    """RK4 path of dx/dt = G x sampled at 0, dt, ..., t_max; returns (times, samples)."""
    x = _coerce(x0)
    G = np.asarray(G, dtype=float)
    if G.shape != (x.dim, x.dim):
        raise ValueError("generator shape must match the state dimension")
    if dt <= 0:
        raise ValueError("dt must be positive")
    n = int(round(t_max / dt))
    if abs(n * dt - t_max) > 1e-9 * max(1.0, t_max):
        n = int(np.ceil(t_max / dt))
    x0c = x.components.copy()

    def run(stride):
        return kernels.rk4_linear(G, x0c, dt / stride, n * stride, stride)

    path = _refined_path(run, n + 1, x.dim)
    return dt * np.arange(n + 1), path
