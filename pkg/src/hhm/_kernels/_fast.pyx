# Compiled implementations of the hot numerical kernels.  Mirrors
# hhm._kernels._pure operation for operation; keep the two in sync.

import numpy as np

cimport numpy as cnp
from libc.math cimport INFINITY, cos, exp, hypot, log1p, sin, tanh

cnp.import_array()

BACKEND = "cython"


def hyp2f1_neg_z(double a_re, double a_im, double b_re, double b_im,
                 double c, double z, double tol, long max_terms):
    """Gauss 2F1(a, b; c; z) on z <= 0 via the w = z/(z-1) mapping."""
    cdef double w, lg, mag, ang, pre_re, pre_im, cb_re, cb_im
    cdef double t_re, t_im, s_re, s_im, geo, u_re, u_im, f, nt_re, nt_im
    cdef double tail, smag
    cdef long k
    if z == 0.0:
        return 1.0, 0.0, 0, 0.0, 1
    w = z / (z - 1.0)
    if w >= 1.0:  # |z| so large that the mapped argument rounds to 1
        return 0.0, 0.0, 0, INFINITY, 0
    lg = log1p(-z)
    mag = exp(-a_re * lg)
    ang = -a_im * lg
    pre_re = mag * cos(ang)
    pre_im = mag * sin(ang)

    cb_re = c - b_re
    cb_im = -b_im
    t_re = 1.0
    t_im = 0.0
    s_re = 1.0
    s_im = 0.0
    geo = w / (1.0 - w)
    k = 0
    tail = 0.0
    while k < max_terms:
        u_re = (a_re + k) * (cb_re + k) - a_im * cb_im
        u_im = (a_re + k) * cb_im + a_im * (cb_re + k)
        f = w / ((c + k) * (k + 1.0))
        nt_re = (t_re * u_re - t_im * u_im) * f
        nt_im = (t_re * u_im + t_im * u_re) * f
        t_re = nt_re
        t_im = nt_im
        s_re += t_re
        s_im += t_im
        k += 1
        tail = hypot(t_re, t_im) * geo
        smag = hypot(s_re, s_im)
        if tail <= tol * (1.0 if smag < 1.0 else smag):
            return (pre_re * s_re - pre_im * s_im,
                    pre_re * s_im + pre_im * s_re,
                    k, mag * tail, 1)
    return 0.0, 0.0, k, mag * tail, 0


cdef inline double _sigma(double n, double ell, double q, double r) noexcept:
    cdef double x = 0.5 * ell * r
    cdef double th = tanh(x)
    return 0.5 * ell * ((n - 1.0) / th + (2.0 * q / ell - (n - 1.0)) * th)


def radial_rk4(long n, double ell, double q, double mu, double r_start,
               double phi0, double dphi0, double h, long npts, double stab):
    """Integrate phi'' = -sigma(r) phi' - mu phi on r_start + k*h, k < npts."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] r = np.empty(npts)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] phi = np.empty(npts)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] dphi = np.empty(npts)
    cdef double nm1 = n - 1.0
    cdef double nd = n
    cdef double t, y1, y2, target, remaining, dt, tm, te, sm, se
    cdef double k1a, k1b, k2a, k2b, k3a, k3b, k4a, k4b, u1, u2
    cdef long i

    r[0] = r_start
    phi[0] = phi0
    dphi[0] = dphi0
    t = r_start
    y1 = phi0
    y2 = dphi0
    for i in range(1, npts):
        target = r_start + i * h
        while True:
            remaining = target - t
            dt = stab * t / nm1
            if dt > h:
                dt = h
            if dt >= remaining - 1e-12 * h:
                dt = remaining
            k1a = y2
            k1b = -_sigma(nd, ell, q, t) * y2 - mu * y1
            tm = t + 0.5 * dt
            sm = _sigma(nd, ell, q, tm)
            u1 = y1 + 0.5 * dt * k1a
            u2 = y2 + 0.5 * dt * k1b
            k2a = u2
            k2b = -sm * u2 - mu * u1
            u1 = y1 + 0.5 * dt * k2a
            u2 = y2 + 0.5 * dt * k2b
            k3a = u2
            k3b = -sm * u2 - mu * u1
            te = t + dt
            se = _sigma(nd, ell, q, te)
            u1 = y1 + dt * k3a
            u2 = y2 + dt * k3b
            k4a = u2
            k4b = -se * u2 - mu * u1
            y1 += dt * (k1a + 2.0 * (k2a + k3a) + k4a) / 6.0
            y2 += dt * (k1b + 2.0 * (k2b + k3b) + k4b) / 6.0
            t = te
            if dt == remaining:
                break
        t = target
        r[i] = t
        phi[i] = y1
        dphi[i] = y2
    return r, phi, dphi
