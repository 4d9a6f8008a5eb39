"""Exact quantum check of the macroscopic limit.

A probe spin couples to an N-spin aligned bath through isotropic spin-spin
terms J_n s(0).s(n). Total excitation number is conserved, so the dynamics
of (alpha |probe up> + beta |probe down>) x |all up> closes on the
(N+2)-dimensional span of

    |e>   = probe up,   bath aligned
    |p>   = probe down, bath aligned
    |b_n> = probe up,   bath spin n flipped.

Conventions: s3 |0> = +|0>, |0> is the bath-aligned "up" state, and
evolution is exp(+i t H). In the large-N limit the probe precesses under
the effective field (sum_n J_n) s3; the operations here quantify the error
of that reduction at finite N.

Matrix elements with the bath Hamiltonian set to zero on the sector:
<e|H|e> = S, <p|H|p> = -S, <p|H|b_n> = 2 J_n, <b_n|H|b_m> = delta_nm (S - 2 J_n),
with S = sum_n J_n. An optional uniform-ferromagnet bath term (energy
referenced to the aligned state) can be switched on for robustness
experiments; it adds 2 J0 (N delta_nm - 1) on the flipped-bath block.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dynamics import PAULIS

_SZ = PAULIS[2]


def _coupling_array(N: int, J) -> np.ndarray:
    J = np.asarray(J, dtype=float)
    if J.ndim == 0:
        J = np.full(N, float(J))
    if J.shape != (N,):
        raise ValueError(f"expected {N} couplings, got shape {J.shape}")
    return J


@dataclass(frozen=True)
class SectorHamiltonian:
    """The (N+2) x (N+2) real symmetric Hamiltonian on the closed sector."""

    N: int
    couplings: np.ndarray
    matrix: np.ndarray


@dataclass(frozen=True)
class FidelityResult:
    fidelity: float
    chi_norm_sq: float
    mu_norm_sq: float


@dataclass(frozen=True)
class ErrorScalingReport:
    """Sweep rows (N, F, 1-F, |chi|^2, |mu|^2, ratio) and the fitted log-log slope."""

    rows: list[tuple[int, float, float, float, float, float]]
    slope: float

    COLUMNS = ("N", "F", "one_minus_F", "chi2", "mu2", "ratio")


def sector_hamiltonian(N: int, J, ferro_j0: float = 0.0) -> SectorHamiltonian:
    """Build the sector Hamiltonian for N bath spins with couplings J (scalar or list)."""
    if N < 1:
        raise ValueError("N must be >= 1")
    J = _coupling_array(N, J)
    S = float(J.sum())
    H = np.zeros((N + 2, N + 2))
    H[0, 0] = S
    H[1, 1] = -S
    H[1, 2:] = 2.0 * J
    H[2:, 1] = 2.0 * J
    idx = np.arange(2, N + 2)
    H[idx, idx] = S - 2.0 * J
    if ferro_j0 != 0.0:
        H[2:, 2:] += 2.0 * ferro_j0 * (N * np.eye(N) - 1.0)
    return SectorHamiltonian(N, J, H)


def _evolve_sector(H: np.ndarray, psi0: np.ndarray, t: float) -> np.ndarray:
    w, V = np.linalg.eigh(H)
    return V @ (np.exp(1j * t * w) * (V.T @ psi0))


def exact_fidelity(N: int, J, alpha: complex, beta: complex, t: float,
                   ferro_j0: float = 0.0) -> FidelityResult:
    """Fidelity of the exact sector evolution against the effective probe-only target.

    The initial state is alpha |e> + beta |p| (must be normalized); the
    target carries the phases exp(+-i t S). Also reports the squared norms
    of the aligned and leaked parts of H applied to the initial state,
    computed directly in the sector.
    """
    if abs(abs(alpha) ** 2 + abs(beta) ** 2 - 1.0) > 1e-12:
        raise ValueError("(alpha, beta) must be normalized")
    sec = sector_hamiltonian(N, J, ferro_j0)
    S = float(sec.couplings.sum())
    psi0 = np.zeros(N + 2, dtype=complex)
    psi0[0] = alpha
    psi0[1] = beta
    psi_t = _evolve_sector(sec.matrix, psi0, t)
    target = np.zeros(N + 2, dtype=complex)
    target[0] = np.exp(1j * t * S) * alpha
    target[1] = np.exp(-1j * t * S) * beta
    fidelity = float(abs(np.vdot(target, psi_t)) ** 2)
    # decomposition of H psi0 into the effective part chi = S sz psi0 and the leak mu
    h_psi = sec.matrix.astype(complex) @ psi0
    chi = np.zeros(N + 2, dtype=complex)
    chi[0] = S * alpha
    chi[1] = -S * beta
    mu = h_psi - chi
    return FidelityResult(fidelity, float(np.vdot(chi, chi).real), float(np.vdot(mu, mu).real))


def error_scaling_sweep(N_list, rule: str, alpha: complex, beta: complex, t: float,
                        omega: float = 1.0, J: float = 1.0) -> ErrorScalingReport:
    """Run exact_fidelity over a list of bath sizes and fit log(1-F) vs log N.

    rule "fixed" uses J_n = omega / N (N-independent effective field), rule
    "constant" uses J_n = J for every constituent.
    """
    N_list = [int(n) for n in N_list]
    if not N_list:
        raise ValueError("N_list must be non-empty")
    if rule not in ("fixed", "constant"):
        raise ValueError("rule must be 'fixed' or 'constant'")
    rows = []
    for N in N_list:
        Jn = omega / N if rule == "fixed" else J
        res = exact_fidelity(N, Jn, alpha, beta, t)
        one_minus = max(1.0 - res.fidelity, 0.0)
        ratio = res.mu_norm_sq / res.chi_norm_sq if res.chi_norm_sq > 0 else np.inf
        rows.append((N, res.fidelity, one_minus, res.chi_norm_sq, res.mu_norm_sq, ratio))
    pts = [(np.log(r[0]), np.log(r[2])) for r in rows if r[2] > 0.0]
    if len(pts) >= 2:
        lx = np.array([p[0] for p in pts])
        ly = np.array([p[1] for p in pts])
        slope = float(np.polyfit(lx, ly, 1)[0])
    else:
        slope = float("nan")
    return ErrorScalingReport(rows, slope)


def _kron_chain(ops) -> np.ndarray:
    out = np.eye(1, dtype=complex)
    for op in ops:
        out = np.kron(out, op)
    return out


def full_hamiltonian(N: int, J) -> np.ndarray:
    """Dense 2^(N+1) Heisenberg Hamiltonian sum_n J_n s(0).s(n); guarded to N <= 10."""
    if N > 10:
        raise ValueError("the brute-force construction is guarded to N <= 10")
    J = _coupling_array(N, J)
    dim = 2 ** (N + 1)
    H = np.zeros((dim, dim), dtype=complex)
    eye = np.eye(2, dtype=complex)
    for n in range(1, N + 1):
        for p in PAULIS:
            ops = [p if site in (0, n) else eye for site in range(N + 1)]
            H += J[n - 1] * _kron_chain(ops)
    return H


def total_sz(N: int) -> np.ndarray:
    """sum of s3 over probe and bath in the full 2^(N+1) space."""
    dim = 2 ** (N + 1)
    out = np.zeros((dim, dim), dtype=complex)
    eye = np.eye(2, dtype=complex)
    for site in range(N + 1):
        out += _kron_chain([_SZ if s == site else eye for s in range(N + 1)])
    return out


def _sector_basis_indices(N: int) -> list[int]:
    """Positions of |e>, |p>, |b_n> in the lexicographic product basis (probe first, |0>=index 0)."""
    down = [0] * (N + 1)

    def to_index(bits):
        idx = 0
        for b in bits:
            idx = 2 * idx + b
        return idx

    out = [to_index(down)]
    probe_flip = down.copy()
    probe_flip[0] = 1
    out.append(to_index(probe_flip))
    for n in range(1, N + 1):
        bath_flip = down.copy()
        bath_flip[n] = 1
        out.append(to_index(bath_flip))
    return out


def brute_force_crosscheck(N: int, J, alpha: complex, beta: complex, t: float) -> float:
    """Max amplitude deviation between full-space and sector evolution; N <= 10."""
    if abs(abs(alpha) ** 2 + abs(beta) ** 2 - 1.0) > 1e-12:
        raise ValueError("(alpha, beta) must be normalized")
    H = full_hamiltonian(N, J)
    idx = _sector_basis_indices(N)
    psi0 = np.zeros(2 ** (N + 1), dtype=complex)
    psi0[idx[0]] = alpha
    psi0[idx[1]] = beta
    w, V = np.linalg.eigh(H)
    psi_t = V @ (np.exp(1j * t * w) * (V.conj().T @ psi0))
    full_in_sector = psi_t[idx]
    sec = sector_hamiltonian(N, J)
    psi0_s = np.zeros(N + 2, dtype=complex)
    psi0_s[0] = alpha
    psi0_s[1] = beta
    psi_t_s = _evolve_sector(sec.matrix, psi0_s, t)
    return float(np.abs(full_in_sector - psi_t_s).max())


def _su2_rotation_to(n: np.ndarray) -> np.ndarray:
    """A 2x2 unitary U with U s3 U^dag = n . s for a unit 3-vector n."""
    n = np.asarray(n, dtype=float)
    if abs(np.linalg.norm(n) - 1.0) > 1e-9:
        raise ValueError("n must be a unit 3-vector")
    e3 = np.array([0.0, 0.0, 1.0])
    axis = np.cross(e3, n)
    s = np.linalg.norm(axis)
    c = float(n @ e3)
    if s < 1e-14:
        if c > 0:
            return np.eye(2, dtype=complex)
        axis = np.array([1.0, 0.0, 0.0])  # n = -e3: rotate by pi about x
        s, c = 0.0, -1.0
        theta = np.pi
    else:
        axis = axis / s
        theta = np.arctan2(s, c)
    n_sigma = sum(axis[i] * PAULIS[i] for i in range(3))
    return np.cos(theta / 2.0) * np.eye(2, dtype=complex) - 1j * np.sin(theta / 2.0) * n_sigma


def rotated_frame_check(n, N: int, J, t: float, alpha: complex = 1.0 / np.sqrt(2),
                        beta: complex = 1.0 / np.sqrt(2)) -> float:
    """Frame covariance of the effective field: |F(aligned) - F(rotated)|.

    The aligned run compares the sector evolution against the target with
    phases exp(+-itS). The rotated run builds the effective Hamiltonian
    S n.s for the bath direction n, applies it to the rotated probe state,
    pulls the target back to the aligned frame, and recomputes the fidelity
    against the same exact evolution. The two fidelities agree identically
    when H_eff(n) = S n.s transforms covariantly.
    """
    sec = sector_hamiltonian(N, J)
    S = float(sec.couplings.sum())
    psi0 = np.zeros(N + 2, dtype=complex)
    psi0[0] = alpha
    psi0[1] = beta
    psi_t = _evolve_sector(sec.matrix, psi0, t)
    target_aligned = np.array([np.exp(1j * t * S) * alpha, np.exp(-1j * t * S) * beta])
    f_aligned = float(abs(np.conj(target_aligned[0]) * psi_t[0]
                          + np.conj(target_aligned[1]) * psi_t[1]) ** 2)
    U = _su2_rotation_to(np.asarray(n, dtype=float))
    h_eff = S * sum(np.asarray(n, dtype=float)[i] * PAULIS[i] for i in range(3))
    w, V = np.linalg.eigh(h_eff)
    probe_rot = U @ np.array([alpha, beta])
    target_rot = V @ (np.exp(1j * t * w) * (V.conj().T @ probe_rot))
    target_back = U.conj().T @ target_rot
    f_rotated = float(abs(np.conj(target_back[0]) * psi_t[0]
                          + np.conj(target_back[1]) * psi_t[1]) ** 2)
    return abs(f_aligned - f_rotated)
