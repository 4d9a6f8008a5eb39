"""Hot numeric kernels: numba @njit loops with a pure-numpy fallback.

The numba path is used when numba imports cleanly. Set the environment
variable ``SPINCLOSURE_NO_NUMBA=1`` before import to force the vectorized
pure-numpy fallback instead (used by ``benchmarks/bench_kernels.py`` to
compare the two). The active path is reported by ``USING_NUMBA``.

Kernels operate on packed arrays; callers own validation and unpacking.
The d=3 composite state is packed as [x(3), y(3), T(9, row-major)].
"""
from __future__ import annotations

import os

import numpy as np

_DISABLED = os.environ.get("SPINCLOSURE_NO_NUMBA", "").strip() not in ("", "0", "false", "False")

try:
    if _DISABLED:
        raise ImportError
    from numba import njit

    USING_NUMBA = True
except ImportError:
    USING_NUMBA = False
    njit = None


# ---------------------------------------------------------------------------
# pure-numpy implementations

def _composite_d3_deriv_np(state, a, b):
    x, y, T = state[:3], state[3:6], state[6:].reshape(3, 3)
    c = np.array([T[1, 2] - T[2, 1], T[2, 0] - T[0, 2], T[0, 1] - T[1, 0]])
    w = a * x + b * y
    dT = np.array([[0.0, -w[2], w[1]], [w[2], 0.0, -w[0]], [-w[1], w[0], 0.0]])
    return np.concatenate((a * c, b * c, dT.ravel()))


def _rk4_composite_d3_np(state0, a, b, h, n_steps, stride):
    n_out = n_steps // stride + 1
    out = np.empty((n_out, 15))
    state = state0.copy()
    out[0] = state
    rec = 1
    for step in range(1, n_steps + 1):
        k1 = _composite_d3_deriv_np(state, a, b)
        k2 = _composite_d3_deriv_np(state + 0.5 * h * k1, a, b)
        k3 = _composite_d3_deriv_np(state + 0.5 * h * k2, a, b)
        k4 = _composite_d3_deriv_np(state + h * k3, a, b)
        state = state + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if step % stride == 0:
            out[rec] = state
            rec += 1
    return out


def _rk4_linear_np(gen, x0, h, n_steps, stride):
    n_out = n_steps // stride + 1
    out = np.empty((n_out, x0.shape[0]))
    x = x0.copy()
    out[0] = x
    rec = 1
    for step in range(1, n_steps + 1):
        k1 = gen @ x
        k2 = gen @ (x + 0.5 * h * k1)
        k3 = gen @ (x + 0.5 * h * k2)
        k4 = gen @ (x + h * k3)
        x = x + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if step % stride == 0:
            out[rec] = x
            rec += 1
    return out


def _min_pair_probability_np(x, y, T, dirs_a, dirs_b):
    vals = 0.25 * (1.0 + dirs_a @ x + dirs_b @ y + np.einsum("pi,ij,pj->p", dirs_a, T, dirs_b))
    return float(vals.min())


# ---------------------------------------------------------------------------
# numba implementations (explicit loops; compiled once, cached on disk)

if USING_NUMBA:

    @njit(cache=True)
    def _composite_d3_deriv_nb(state, a, b, out):
        c1 = state[6 + 5] - state[6 + 7]  # T23 - T32
        c2 = state[6 + 6] - state[6 + 2]  # T31 - T13
        c3 = state[6 + 1] - state[6 + 3]  # T12 - T21
        out[0] = a * c1
        out[1] = a * c2
        out[2] = a * c3
        out[3] = b * c1
        out[4] = b * c2
        out[5] = b * c3
        w1 = a * state[0] + b * state[3]
        w2 = a * state[1] + b * state[4]
        w3 = a * state[2] + b * state[5]
        out[6] = 0.0
        out[7] = -w3
        out[8] = w2
        out[9] = w3
        out[10] = 0.0
        out[11] = -w1
        out[12] = -w2
        out[13] = w1
        out[14] = 0.0

    @njit(cache=True)
    def _rk4_composite_d3_nb(state0, a, b, h, n_steps, stride):
        n_out = n_steps // stride + 1
        out = np.empty((n_out, 15))
        state = state0.copy()
        k1 = np.empty(15)
        k2 = np.empty(15)
        k3 = np.empty(15)
        k4 = np.empty(15)
        tmp = np.empty(15)
        out[0] = state
        rec = 1
        for step in range(1, n_steps + 1):
            _composite_d3_deriv_nb(state, a, b, k1)
            for i in range(15):
                tmp[i] = state[i] + 0.5 * h * k1[i]
            _composite_d3_deriv_nb(tmp, a, b, k2)
            for i in range(15):
                tmp[i] = state[i] + 0.5 * h * k2[i]
            _composite_d3_deriv_nb(tmp, a, b, k3)
            for i in range(15):
                tmp[i] = state[i] + h * k3[i]
            _composite_d3_deriv_nb(tmp, a, b, k4)
            for i in range(15):
                state[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
            if step % stride == 0:
                out[rec] = state
                rec += 1
        return out

    @njit(cache=True)
    def _rk4_linear_nb(gen, x0, h, n_steps, stride):
        d = x0.shape[0]
        n_out = n_steps // stride + 1
        out = np.empty((n_out, d))
        x = x0.copy()
        out[0] = x
        rec = 1
        for step in range(1, n_steps + 1):
            k1 = gen @ x
            k2 = gen @ (x + 0.5 * h * k1)
            k3 = gen @ (x + 0.5 * h * k2)
            k4 = gen @ (x + h * k3)
            x = x + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            if step % stride == 0:
                out[rec] = x
                rec += 1
        return out

    @njit(cache=True)
    def _min_pair_probability_nb(x, y, T, dirs_a, dirs_b):
        d = x.shape[0]
        n = dirs_a.shape[0]
        best = np.inf
        for p in range(n):
            sa = 0.0
            sb = 0.0
            sab = 0.0
            for i in range(d):
                ai = dirs_a[p, i]
                sa += ai * x[i]
                row = 0.0
                for j in range(d):
                    row += T[i, j] * dirs_b[p, j]
                sab += ai * row
                sb += dirs_b[p, i] * y[i]
            val = 0.25 * (1.0 + sa + sb + sab)
            if val < best:
                best = val
        return best

    rk4_composite_d3 = _rk4_composite_d3_nb
    rk4_linear = _rk4_linear_nb
    min_pair_probability = _min_pair_probability_nb
else:
    rk4_composite_d3 = _rk4_composite_d3_np
    rk4_linear = _rk4_linear_np
    min_pair_probability = _min_pair_probability_np
