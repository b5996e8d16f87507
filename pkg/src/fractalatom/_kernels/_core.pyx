# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled numeric kernels.

Two hot loops live here: tanh-sinh quadrature of the radial momentum (the
WKB action and the spectral-constant integrand) and Numerov shooting on a
uniform log-radius grid (the independent eigenvalue oracle). The pure-python
twin is ``_fallback.py``; keep algorithms and constants in sync, the test
suite cross-checks the two.
"""

from libc.math cimport cosh, exp, fabs, fmax, pow, sinh, sqrt

# tanh-sinh rule constants (sync with _fallback.py).
# U_MAX covers abscissas down to endpoint distances ~1e-300 of the interval;
# DFLOOR_FACTOR skips nodes closer than that, where doubles cannot separate
# the abscissa from the endpoint.
cdef double PI_HALF = 1.5707963267948966
cdef double U_MAX = 6.5
cdef double H0 = 0.5
cdef double DFLOOR_FACTOR = 1e-300
cdef double RESCALE_LIMIT = 1e250
cdef double RESCALE = 1e-250


cdef inline double _momentum(double r, double p2m2, double kappa, double sgn,
                             double e_abs, double cent) noexcept nogil:
    """sqrt of 2 r^p2m2 sgn (r^-kappa - e_abs) - cent r^-2, clamped to 0.

    cent == 0 marks the degenerate inner point (no centrifugal term); the
    dominant power is then factored out of the root so the expression stays
    finite for r down to ~1e-300 as long as the integrable-singularity
    exponent exceeds -1.
    """
    cdef double inner, rad
    if cent == 0.0:
        if sgn > 0.0:
            inner = 1.0 - e_abs * pow(r, kappa)
            if inner <= 0.0:
                return 0.0
            return pow(r, 0.5 * (p2m2 - kappa)) * sqrt(2.0 * inner)
        inner = e_abs - pow(r, -kappa)
        if inner <= 0.0:
            return 0.0
        return pow(r, 0.5 * p2m2) * sqrt(2.0 * inner)
    rad = 2.0 * pow(r, p2m2) * sgn * (pow(r, -kappa) - e_abs) - cent / (r * r)
    if rad <= 0.0:
        return 0.0
    return sqrt(rad)


def action_quadrature(double p2m2, double kappa, double sgn, double e_abs,
                      double cent, double a, double b, double abs_tol,
                      int max_level=10):
    """Tanh-sinh integral of the momentum integrand over [a, b].

    Node positions are handled as distances from the nearer endpoint so the
    rule stays accurate when the integrand is singular (yet integrable) at
    the ends. Levels double the node density; convergence is declared when
    two successive levels agree within abs_tol.

    Returns (value, error_estimate, level, converged).
    """
    if not b > a:
        raise ValueError(f"integration bounds must satisfy a < b, got [{a}, {b}]")
    if max_level < 2:
        raise ValueError("max_level must be at least 2")
    cdef double half = 0.5 * (b - a)
    cdef double wj = half * PI_HALF  # Jacobi factor of the [a, b] map times pi/2
    cdef double dfloor = (b - a) * DFLOOR_FACTOR
    cdef double total, i_prev, i_cur, diff, u, theta, q, d, w, h
    cdef int level, k
    cdef bint converged = False

    diff = 0.0
    with nogil:
        # level 0: trapezoid at spacing H0; u = 0 evaluates the midpoint once
        total = wj * _momentum(a + half, p2m2, kappa, sgn, e_abs, cent)
        k = 1
        while k * H0 <= U_MAX:
            u = k * H0
            theta = PI_HALF * sinh(u)
            q = 2.0 / (exp(2.0 * theta) + 1.0)
            d = half * q
            if d >= dfloor:
                w = wj * cosh(u) / (cosh(theta) * cosh(theta))
                total += w * (_momentum(a + d, p2m2, kappa, sgn, e_abs, cent)
                              + _momentum(b - d, p2m2, kappa, sgn, e_abs, cent))
            k += 1
        i_prev = H0 * total

        for level in range(1, max_level + 1):
            h = H0 / <double>(1 << level)
            total = 0.0
            k = 0
            while True:
                u = (2 * k + 1) * h
                if u > U_MAX:
                    break
                theta = PI_HALF * sinh(u)
                q = 2.0 / (exp(2.0 * theta) + 1.0)
                d = half * q
                if d >= dfloor:
                    w = wj * cosh(u) / (cosh(theta) * cosh(theta))
                    total += w * (_momentum(a + d, p2m2, kappa, sgn, e_abs, cent)
                                  + _momentum(b - d, p2m2, kappa, sgn, e_abs, cent))
                k += 1
            i_cur = 0.5 * i_prev + h * total
            diff = fabs(i_cur - i_prev)
            i_prev = i_cur
            if level >= 2 and diff <= abs_tol:
                converged = True
                break

    return i_prev, diff, level, converged


def shoot_log_grid(double e_signed, double[::1] a_coef, double[::1] b_coef,
                   double dx, double g0, double gstep, double v0, double v1,
                   Py_ssize_t cap_index, v_out=None):
    """Numerov recurrence for v'' + (e_signed * A + B) v = 0 on a uniform
    grid in x = ln r, integrating outward from index 0 through cap_index.

    v is the half-weight transform of the radial amplitude: psi = g v with
    g = e^(x/2) supplied incrementally via g0 (at index 0) and gstep (per
    step). Overflowing trajectories are rescaled in place; the peak tracker
    follows the same frame, so the returned ratio is scale-free.

    Returns (node_count, boundary_residual, last_node_index, end_sign) where
    boundary_residual = |psi(end)| / max |psi| and end_sign is the sign of v
    at cap_index. When v_out is given, the (rescaled-frame) v trajectory is
    stored in it.
    """
    cdef Py_ssize_t n = a_coef.shape[0]
    if b_coef.shape[0] != n:
        raise ValueError("coefficient arrays differ in length")
    cdef Py_ssize_t cap = cap_index if cap_index < n - 1 else n - 1
    if cap < 2:
        raise ValueError("need at least three grid points below the cap")
    cdef bint record = v_out is not None
    cdef double[::1] vo = v_out if record else a_coef  # alias; never written unless record
    if record and vo.shape[0] < cap + 1:
        raise ValueError("v_out too short for the requested cap")

    cdef double h2 = dx * dx / 12.0
    cdef double fprev = 1.0 + h2 * (e_signed * a_coef[0] + b_coef[0])
    cdef double fcur = 1.0 + h2 * (e_signed * a_coef[1] + b_coef[1])
    cdef double fnext, vnext
    cdef double vprev = v0
    cdef double vcur = v1
    cdef double g = g0 * gstep
    cdef double peak = fmax(fabs(v0) * g0, fabs(v1) * g)
    cdef long nodes = 0
    cdef Py_ssize_t last_node = -1
    cdef Py_ssize_t i

    if record:
        vo[0] = v0
        vo[1] = v1
    with nogil:
        for i in range(2, cap + 1):
            fnext = 1.0 + h2 * (e_signed * a_coef[i] + b_coef[i])
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
            if fabs(vnext) > RESCALE_LIMIT:
                vnext *= RESCALE
                vcur *= RESCALE
                peak *= RESCALE
            peak = fmax(peak, fabs(vnext) * g)
            if record:
                vo[i] = vnext
            vprev = vcur
            vcur = vnext
            fprev = fcur
            fcur = fnext

    cdef double resid = fabs(vcur) * g / peak if peak > 0.0 else 0.0
    cdef double end_sign = 0.0
    if vcur > 0.0:
        end_sign = 1.0
    elif vcur < 0.0:
        end_sign = -1.0
    return nodes, resid, last_node, end_sign
