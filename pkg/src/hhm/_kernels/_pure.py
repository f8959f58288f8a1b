"""Pure-Python implementations of the hot numerical kernels.

Same call signatures as the compiled module ``hhm._kernels._fast``; the
package selects one of the two at import time.  Complex arithmetic is done
on (re, im) pairs of floats so both backends execute the identical
operation sequence.
"""

import math

import numpy as np

BACKEND = "python"


def hyp2f1_neg_z(a_re, a_im, b_re, b_im, c, z, tol, max_terms):
    """Gauss 2F1(a, b; c; z) on z <= 0 via the w = z/(z-1) mapping.

    Evaluates (1-z)^(-a) * 2F1(a, c-b; c; w) as a power series in
    w in [0, 1).  Returns (re, im, terms_used, est_error, converged)
    where est_error is the geometric tail bound |t_K| * w/(1-w) scaled
    by the prefactor magnitude.
    """
    if z == 0.0:
        return 1.0, 0.0, 0, 0.0, 1
    w = z / (z - 1.0)
    if w >= 1.0:  # |z| so large that the mapped argument rounds to 1
        return 0.0, 0.0, 0, math.inf, 0
    lg = math.log1p(-z)  # log(1-z), real and positive for z < 0
    mag = math.exp(-a_re * lg)
    ang = -a_im * lg
    pre_re = mag * math.cos(ang)
    pre_im = mag * math.sin(ang)

    # series in w with second parameter c - b
    cb_re = c - b_re
    cb_im = -b_im
    t_re, t_im = 1.0, 0.0
    s_re, s_im = 1.0, 0.0
    geo = w / (1.0 - w)
    k = 0
    tail = math.inf
    while k < max_terms:
        u_re = (a_re + k) * (cb_re + k) - a_im * cb_im
        u_im = (a_re + k) * cb_im + a_im * (cb_re + k)
        f = w / ((c + k) * (k + 1.0))
        t_re, t_im = (t_re * u_re - t_im * u_im) * f, (t_re * u_im + t_im * u_re) * f
        s_re += t_re
        s_im += t_im
        k += 1
        tail = math.hypot(t_re, t_im) * geo
        if tail <= tol * max(1.0, math.hypot(s_re, s_im)):
            break
    else:
        return 0.0, 0.0, k, mag * tail, 0

    val_re = pre_re * s_re - pre_im * s_im
    val_im = pre_re * s_im + pre_im * s_re
    return val_re, val_im, k, mag * tail, 1


def _sigma(n, ell, q, r):
    x = 0.5 * ell * r
    th = math.tanh(x)
    return 0.5 * ell * ((n - 1) / th + (2.0 * q / ell - (n - 1)) * th)


def radial_rk4(n, ell, q, mu, r_start, phi0, dphi0, h, npts, stab):
    """Integrate phi'' = -sigma(r) phi' - mu phi on r_start + k*h, k < npts.

    Classical RK4 between consecutive grid points.  Near the origin the
    damping coefficient sigma ~ (n-1)/r would violate the explicit
    stability bound at the nominal step, so substeps are capped at
    stab * r / (n-1) until the nominal step h is admissible.
    """
    r = np.empty(npts)
    phi = np.empty(npts)
    dphi = np.empty(npts)
    r[0] = r_start
    phi[0] = phi0
    dphi[0] = dphi0

    nm1 = float(n - 1)
    t = r_start
    y1, y2 = phi0, dphi0
    for i in range(1, npts):
        target = r_start + i * h
        while True:
            remaining = target - t
            dt = stab * t / nm1
            if dt > h:
                dt = h
            if dt >= remaining - 1e-12 * h:
                dt = remaining
            # RK4 step of size dt
            k1a = y2
            k1b = -_sigma(n, ell, q, t) * y2 - mu * y1
            tm = t + 0.5 * dt
            sm = _sigma(n, ell, q, tm)
            u1 = y1 + 0.5 * dt * k1a
            u2 = y2 + 0.5 * dt * k1b
            k2a = u2
            k2b = -sm * u2 - mu * u1
            u1 = y1 + 0.5 * dt * k2a
            u2 = y2 + 0.5 * dt * k2b
            k3a = u2
            k3b = -sm * u2 - mu * u1
            te = t + dt
            se = _sigma(n, ell, q, te)
            u1 = y1 + dt * k3a
            u2 = y2 + dt * k3b
            k4a = u2
            k4b = -se * u2 - mu * u1
            y1 += dt * (k1a + 2.0 * (k2a + k3a) + k4a) / 6.0
            y2 += dt * (k1b + 2.0 * (k2b + k3b) + k4b) / 6.0
            t = te
            if dt == remaining:
                break
        t = target  # kill accumulated roundoff in the abscissa
        r[i] = t
        phi[i] = y1
        dphi[i] = y2
    return r, phi, dphi
