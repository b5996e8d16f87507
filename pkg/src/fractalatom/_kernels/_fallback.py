"""Pure-python twin of the compiled kernels.

Same algorithms and constants as ``_core.pyx``; the quadrature is vectorized
with numpy, the Numerov recurrence is a plain float loop (correct but much
slower, see benchmarks/). Selected automatically when the extension is
missing, or forced with FRACTALATOM_PURE=1.
"""

import threading

import numpy as np

# sync with _core.pyx
_PI_HALF = 1.5707963267948966
_U_MAX = 6.5
_H0 = 0.5
_DFLOOR_FACTOR = 1e-300
_RESCALE_LIMIT = 1e250
_RESCALE = 1e-250

# level -> (endpoint distance fractions q, weights w); built lazily
_RULE_CACHE = {}
_RULE_LOCK = threading.Lock()


def _rule(level):
    with _RULE_LOCK:
        cached = _RULE_CACHE.get(level)
        if cached is not None:
            return cached
        if level == 0:
            h = _H0
            u = h * np.arange(1, int(np.floor(_U_MAX / h)) + 1)
        else:
            h = _H0 / 2**level
            u = h * np.arange(1, int(np.floor(_U_MAX / h)) + 1, 2)
        theta = _PI_HALF * np.sinh(u)
        with np.errstate(over="ignore"):
            q = 2.0 / (np.exp(2.0 * theta) + 1.0)
            w = _PI_HALF * np.cosh(u) / np.cosh(theta) ** 2
        _RULE_CACHE[level] = (q, w)
        return q, w


def _momentum_array(r, p2m2, kappa, sgn, e_abs, cent):
    # mirrors _core._momentum; evaluated lane-wise with invalid lanes zeroed
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        if cent == 0.0:
            if sgn > 0.0:
                inner = 1.0 - e_abs * r**kappa
            else:
                inner = e_abs - r**-kappa
            exponent = 0.5 * (p2m2 - kappa) if sgn > 0.0 else 0.5 * p2m2
            vals = r**exponent * np.sqrt(2.0 * np.maximum(inner, 0.0))
            return np.where(inner > 0.0, vals, 0.0)
        rad = 2.0 * r**p2m2 * sgn * (r**-kappa - e_abs) - cent / (r * r)
        return np.sqrt(np.maximum(rad, 0.0))


def action_quadrature(p2m2, kappa, sgn, e_abs, cent, a, b, abs_tol, max_level=10):
    """Tanh-sinh integral of the momentum integrand over [a, b].

    Returns (value, error_estimate, level, converged); see the compiled twin
    for the contract.
    """
    if not b > a:
        raise ValueError(f"integration bounds must satisfy a < b, got [{a}, {b}]")
    if max_level < 2:
        raise ValueError("max_level must be at least 2")
    half = 0.5 * (b - a)
    dfloor = (b - a) * _DFLOOR_FACTOR

    def level_sum(level):
        q, w = _rule(level)
        d = half * q
        keep = d >= dfloor
        d = d[keep]
        wk = w[keep]
        vals = _momentum_array(a + d, p2m2, kappa, sgn, e_abs, cent) + _momentum_array(
            b - d, p2m2, kappa, sgn, e_abs, cent
        )
        return half * float(wk @ vals)

    mid_term = half * _PI_HALF * float(
        _momentum_array(np.float64(a + half), p2m2, kappa, sgn, e_abs, cent)
    )
    i_prev = _H0 * (mid_term + level_sum(0))

    diff = 0.0
    level = 1
    converged = False
    for level in range(1, max_level + 1):
        h = _H0 / 2**level
        i_cur = 0.5 * i_prev + h * level_sum(level)
        diff = abs(i_cur - i_prev)
        i_prev = i_cur
        if level >= 2 and diff <= abs_tol:
            converged = True
            break
    return i_prev, diff, level, converged


def shoot_log_grid(e_signed, a_coef, b_coef, dx, g0, gstep, v0, v1, cap_index, v_out=None):
    """Numerov recurrence on the log grid; see the compiled twin for the contract.

    Arithmetic is ordered identically to the compiled kernel, so node counts
    agree exactly between backends.
    """
    a_coef = np.ascontiguousarray(a_coef, dtype=np.float64)
    b_coef = np.ascontiguousarray(b_coef, dtype=np.float64)
    n = a_coef.shape[0]
    if b_coef.shape[0] != n:
        raise ValueError("coefficient arrays differ in length")
    cap = min(int(cap_index), n - 1)
    if cap < 2:
        raise ValueError("need at least three grid points below the cap")
    record = v_out is not None
    if record and len(v_out) < cap + 1:
        raise ValueError("v_out too short for the requested cap")

    h2 = dx * dx / 12.0
    f = (1.0 + h2 * (e_signed * a_coef + b_coef)).tolist()
    fprev = f[0]
    fcur = f[1]
    vprev = float(v0)
    vcur = float(v1)
    g = g0 * gstep
    peak = max(abs(v0) * g0, abs(vcur) * g)
    nodes = 0
    last_node = -1
    if record:
        v_out[0] = v0
        v_out[1] = v1
    for i in range(2, cap + 1):
        fnext = f[i]
        vnext = ((12.0 - 10.0 * fcur) * vcur - fprev * vprev) / fnext
        g *= gstep
        if vnext != 0.0 and vcur != 0.0:
            if (vcur > 0.0) != (vnext > 0.0):
                nodes += 1
                last_node = i
        elif vcur == 0.0 and vnext != 0.0 and vprev != 0.0:
            if (vprev > 0.0) != (vnext > 0.0):
                nodes += 1
                last_node = i
        if abs(vnext) > _RESCALE_LIMIT:
            vnext *= _RESCALE
            vcur *= _RESCALE
            peak *= _RESCALE
        mag = abs(vnext) * g
        if mag > peak:
            peak = mag
        if record:
            v_out[i] = vnext
        vprev = vcur
        vcur = vnext
        fprev = fcur
        fcur = fnext

    resid = abs(vcur) * g / peak if peak > 0.0 else 0.0
    end_sign = 1.0 if vcur > 0.0 else (-1.0 if vcur < 0.0 else 0.0)
    return nodes, resid, last_node, end_sign
