"""The closure decision procedure.

For each dimension d the question is whether a pairwise interaction,
invariant under the minimal transitive group on the state sphere, can let a
macroscopic field generate the spin's own transformation group. The
pipeline per group stage:

1. groups containing the total inversion kill the odd-order coupling tensor
   by parity: not closed, terminally;
2. solve the order-2 invariant space under the antisymmetry constraint and
   keep only elements inside the algebra span;
3. solve the order-3 invariant space under the first-pair antisymmetry
   constraint; an empty space is terminal (supergroups only shrink it);
4. for every basis field direction, the field-contracted generator must lie
   in the algebra span; combinations violating this are discarded, and if
   nothing survives the stage fails;
5. survivors must commute with the stabilizer of each field direction;
6. a stage failure escalates to the successor group and re-runs from 2;
   the chain ends at the full rotation group.

The verdict is closed exactly when a nontrivial generator survives 4 and 5.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .groups import GroupSpec, LieAlgebraBasis, group_by_name, minimal_transitive_group
from .invariants import ANTISYM_FIRST_PAIR, InvariantTensor, invariant_tensors

MEMBERSHIP_TOL = 1e-9


@dataclass(frozen=True)
class MembershipReport:
    """Least-squares distance of a candidate generator from an algebra span."""

    candidate: np.ndarray
    residual: float
    in_span: bool


@dataclass
class ClosureVerdict:
    """Outcome of the closure pipeline for one dimension."""

    d: int
    group_chain: list[str]
    a_dim: int
    mu_dim: int
    membership_residuals: dict[str, float]
    stabilizer_dim: int | None
    closed_with_pairwise: bool
    notes: str
    surviving_generators: list[np.ndarray] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "group_chain": list(self.group_chain),
            "a_dim": self.a_dim,
            "mu_dim": self.mu_dim,
            "membership_residuals": {k: float(v) for k, v in self.membership_residuals.items()},
            "stabilizer_dim": self.stabilizer_dim,
            "closed_with_pairwise": self.closed_with_pairwise,
            "notes": self.notes,
        }


def algebra_membership(G: np.ndarray, basis: LieAlgebraBasis) -> MembershipReport:
    """Project G onto the algebra span; in_span when the relative residual <= 1e-9."""
    G = np.asarray(G, dtype=float)
    if G.shape != (basis.d, basis.d):
        raise ValueError(f"candidate shape {G.shape}, expected {(basis.d, basis.d)}")
    nrm = np.linalg.norm(G)
    if nrm == 0.0:
        return MembershipReport(G, 0.0, True)
    A = basis.span_matrix()
    coef, *_ = np.linalg.lstsq(A, G.ravel(), rcond=None)
    residual = float(np.linalg.norm(G.ravel() - A @ coef) / nrm)
    return MembershipReport(G, residual, residual <= MEMBERSHIP_TOL)


def field_generator(mu, B, a=None) -> np.ndarray:
    """Effective single-spin generator a_ij + mu_ijk B_k."""
    M = mu.components if isinstance(mu, InvariantTensor) else np.asarray(mu, dtype=float)
    if M.ndim != 3:
        raise ValueError("mu must have three slots")
    B = np.asarray(B, dtype=float)
    if B.shape != (M.shape[2],):
        raise ValueError("field length must match the contraction slot")
    G = np.tensordot(M, B, axes=(2, 0))
    if a is not None:
        a = np.asarray(a, dtype=float)
        if a.shape != G.shape:
            raise ValueError("a must be a d x d matrix")
        G = G + a
    return G


def stabilizer_subalgebra(basis: LieAlgebraBasis, B) -> list[np.ndarray]:
    """Basis of the subalgebra annihilating the field direction B."""
    B = np.asarray(B, dtype=float)
    if B.shape != (basis.d,):
        raise ValueError("B must be a d-vector")
    if np.linalg.norm(B) == 0.0:
        raise ValueError("B must be nonzero")
    action = np.array([X @ B for X in basis.generators]).T  # d x n
    _, s, vt = np.linalg.svd(action)
    tol = max(action.shape) * np.finfo(float).eps * (s[0] if s.size else 0.0)
    rank = int((s > max(tol, 1e-12)).sum())
    coefs = vt[rank:]
    return [np.tensordot(c, basis.generators, axes=1) for c in coefs]


def stabilizer_commutant_check(G: np.ndarray, stabilizer, tol: float = 1e-9) -> bool:
    """True when G commutes with every stabilizer element within tol."""
    G = np.asarray(G, dtype=float)
    for X in stabilizer:
        if np.abs(G @ X - X @ G).max() > tol:
            return False
    return True


def _in_span_subspace(columns: np.ndarray, scale: float) -> np.ndarray:
    """Coefficient null space of a stacked residual/constraint map."""
    if columns.shape[1] == 0:
        return np.zeros((columns.shape[1], 0))
    _, s, vt = np.linalg.svd(columns, full_matrices=True)
    thr = MEMBERSHIP_TOL * max(scale, 1e-300)
    rank = int((s > thr).sum())
    return vt[rank:].T


def _stage_analysis(spec: GroupSpec):
    """Run steps 2-5 of the pipeline for one group stage.

    Returns (a_dim, mu_dim, per-field membership residual, stabilizer dim,
    surviving generator list, failure reason or None).
    """
    d = spec.d
    basis = spec.algebra
    A = basis.span_matrix()
    proj = A @ np.linalg.pinv(A)

    a_space = invariant_tensors(spec, 2, (ANTISYM_FIRST_PAIR,))
    a_dim = 0
    for tensor in a_space.basis:
        if algebra_membership(tensor.components, basis).in_span:
            a_dim += 1

    mu_space = invariant_tensors(spec, 3, (ANTISYM_FIRST_PAIR,))
    mu_dim = mu_space.dimension
    if mu_dim == 0:
        return a_dim, 0, {}, None, [], "no-invariant-mu"

    mus = [t.components for t in mu_space.basis]
    residuals: dict[str, float] = {}
    coef_space = np.eye(mu_dim)
    for k in range(d):
        e_k = np.eye(d)[k]
        slices = [field_generator(mu, e_k) for mu in mus]
        residuals[f"e{k + 1}"] = min(
            algebra_membership(G, basis).residual for G in slices)
        cols = np.array([(G - (proj @ G.ravel()).reshape(d, d)).ravel() for G in slices]).T
        scale = max(np.linalg.norm(G) for G in slices)
        keep = _in_span_subspace(cols @ coef_space, scale)
        coef_space = coef_space @ keep
        if coef_space.shape[1] == 0:
            return a_dim, mu_dim, residuals, None, [], "membership"

    stab_dim = None
    for k in range(d):
        e_k = np.eye(d)[k]
        stab = stabilizer_subalgebra(basis, e_k)
        if stab_dim is None:
            stab_dim = len(stab)
        rows = []
        for c in coef_space.T:
            mu_c = np.tensordot(c, np.array(mus), axes=1)
            G = field_generator(mu_c, e_k)
            rows.append(np.concatenate([(G @ X - X @ G).ravel() for X in stab])
                        if stab else np.zeros(0))
        if stab and rows:
            cols = np.array(rows).T
            scale = max(np.linalg.norm(r) for r in rows) or 1.0
            keep = _in_span_subspace(cols, max(scale, 1.0))
            coef_space = coef_space @ keep
            if coef_space.shape[1] == 0:
                return a_dim, mu_dim, residuals, stab_dim, [], "stabilizer"

    survivors = []
    for c in coef_space.T:
        mu_c = np.tensordot(c, np.array(mus), axes=1)
        for k in range(d):
            survivors.append(field_generator(mu_c, np.eye(d)[k]))
    return a_dim, mu_dim, residuals, stab_dim, survivors, None


def closure_verdict(d: int) -> ClosureVerdict:
    """Decide whether pairwise invariant interactions close the dynamics at dimension d."""
    if not 2 <= d <= 10:
        raise ValueError("closure verdicts are supported for 2 <= d <= 10")
    chain: list[str] = []
    notes: list[str] = []
    spec = minimal_transitive_group(d)
    a_dim, mu_dim = 0, 0
    residuals: dict[str, float] = {}
    stab_dim: int | None = None
    survivors: list[np.ndarray] = []
    closed = False
    while True:
        chain.append(spec.name)
        if spec.contains_inversion:
            a_dim, mu_dim, residuals, stab_dim, survivors = 0, 0, {}, None, []
            notes.append(f"{spec.name}: total inversion forces mu = 0 by parity; not closed")
            break
        a_dim, mu_dim, residuals, stab_dim, survivors, reason = _stage_analysis(spec)
        if reason is None:
            closed = True
            notes.append(
                f"{spec.name}: mu-space dim {mu_dim}; every basis field generates dynamics "
                f"inside the algebra and compatible with the field stabilizer; closed")
            break
        if reason == "no-invariant-mu":
            notes.append(f"{spec.name}: no invariant coupling tensor (mu-space dim 0); not closed")
            break
        if reason == "membership":
            worst = max(residuals.values())
            notes.append(
                f"{spec.name}: mu-space dim {mu_dim} but field-generated dynamics leaves the "
                f"algebra (best per-field residual up to {worst:.3g}); escalating")
        elif reason == "stabilizer":
            notes.append(
                f"{spec.name}: in-algebra field dynamics must commute with the field "
                f"stabilizer (dim {stab_dim}), which leaves only G = 0; escalating")
        if not spec.successors:
            notes.append("escalation chain exhausted; not closed")
            break
        spec = group_by_name(spec.successors[0], d)
    return ClosureVerdict(d, chain, a_dim, mu_dim, residuals, stab_dim, closed,
                          "; ".join(notes), survivors)
