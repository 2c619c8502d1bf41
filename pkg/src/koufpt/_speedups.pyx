# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of the hot transform path: quartic solve, root classification
and the fused fpt/joint transform evaluation at one complex abscissa.

Semantics (including the stable branches near coincident roots and the
residual contract of the quartic solve) mirror the pure-Python composition in
`koufpt.quartic` / `koufpt.transforms`; `tests/test_backends.py` pins the two
paths together.
"""

from libc.math cimport exp as cexp_d, fabs, sqrt as csqrt_d

cdef extern from "complex.h" nogil:
    double complex cexp(double complex)
    double complex csqrt(double complex)
    double complex cpow(double complex, double complex)
    double cabs(double complex)
    double creal(double complex)
    double cimag(double complex)
    double complex conj(double complex)

from koufpt.quartic import ClassificationError, RootSolveError


cdef double complex _cubic_root(double complex a2, double complex a1, double complex a0) noexcept nogil:
    cdef double complex p = a1 - a2 * a2 / 3.0
    cdef double complex q = a0 - a2 * a1 / 3.0 + 2.0 * a2 * a2 * a2 / 27.0
    cdef double complex w = csqrt(q * q / 4.0 + p * p * p / 27.0)
    cdef double complex u3 = -q / 2.0 + w
    cdef double complex alt = -q / 2.0 - w
    cdef double complex u, x
    if cabs(u3) < cabs(alt):
        u3 = alt
    if u3 == 0:
        x = 0
    else:
        u = cpow(u3, 1.0 / 3.0)
        x = u - p / (3.0 * u)
    return x - a2 / 3.0


cdef void _quad_roots(double complex b, double complex c,
                      double complex *r1, double complex *r2) noexcept nogil:
    cdef double complex d = csqrt(b * b - 4.0 * c)
    cdef double complex q
    if creal(conj(b) * d) > 0.0:
        d = -d
    q = -0.5 * (b - d)
    if q == 0:
        r1[0] = 0
        r2[0] = -b
    else:
        r1[0] = q
        r2[0] = c / q


cdef double complex _peval(double complex c4, double complex c3, double complex c2,
                           double complex c1, double complex c0, double complex z) noexcept nogil:
    return (((c4 * z + c3) * z + c2) * z + c1) * z + c0


cdef double complex _pderiv(double complex c4, double complex c3, double complex c2,
                            double complex c1, double complex z) noexcept nogil:
    return ((4.0 * c4 * z + 3.0 * c3) * z + 2.0 * c2) * z + c1


cdef double _max_coeff(double complex c4, double complex c3, double complex c2,
                       double complex c1, double complex c0) noexcept nogil:
    cdef double m = cabs(c4)
    if cabs(c3) > m: m = cabs(c3)
    if cabs(c2) > m: m = cabs(c2)
    if cabs(c1) > m: m = cabs(c1)
    if cabs(c0) > m: m = cabs(c0)
    return m


cdef int _solve_quartic(double complex c4, double complex c3, double complex c2,
                        double complex c1, double complex c0,
                        double complex *out) noexcept nogil:
    """Ferrari closed form + Newton polish; returns 0 on contract success."""
    cdef double complex a = c3 / c4
    cdef double complex b = c2 / c4
    cdef double complex c = c1 / c4
    cdef double complex d = c0 / c4
    cdef double complex e = b - 3.0 * a * a / 8.0
    cdef double complex f = c + a * a * a / 8.0 - a * b / 2.0
    cdef double complex g = d - 3.0 * a * a * a * a / 256.0 + a * a * b / 16.0 - a * c / 4.0
    cdef double complex shift = -a / 4.0
    cdef double scale = 1.0
    cdef double t
    cdef double complex m, s, t1, u, y2a, y2b, s1, s2
    cdef double complex ys[4]
    cdef int i, j
    cdef double complex z, dz, pz, best
    cdef double resid, best_resid, bound

    t = cabs(e)
    if t > scale: scale = t
    t = cabs(f) ** (2.0 / 3.0)
    if t > scale: scale = t
    t = csqrt_d(cabs(g))
    if t > scale: scale = t

    if cabs(f) <= 1e-14 * scale * scale * scale:
        _quad_roots(e, g, &y2a, &y2b)
        s1 = csqrt(y2a)
        s2 = csqrt(y2b)
        ys[0] = s1; ys[1] = -s1; ys[2] = s2; ys[3] = -s2
    else:
        m = _cubic_root(e, e * e / 4.0 - g, -f * f / 8.0)
        if m == 0:
            m = 1e-30
        s = csqrt(2.0 * m)
        t1 = e / 2.0 + m
        u = f / (2.0 * s)
        _quad_roots(s, t1 - u, &ys[0], &ys[1])
        _quad_roots(-s, t1 + u, &ys[2], &ys[3])

    bound = 1e-10 * _max_coeff(c4, c3, c2, c1, c0)
    for i in range(4):
        z = ys[i] + shift
        best = z
        best_resid = cabs(_peval(c4, c3, c2, c1, c0, z))
        for j in range(3):
            dz = _pderiv(c4, c3, c2, c1, z)
            if dz == 0:
                break
            z = z - _peval(c4, c3, c2, c1, c0, z) / dz
            resid = cabs(_peval(c4, c3, c2, c1, c0, z))
            if resid < best_resid:
                best = z
                best_resid = resid
            else:
                break
        out[i] = best
        t = 1.0 if cabs(best) < 1.0 else cabs(best)
        if not best_resid <= bound * t * t * t * t:
            return -1
    return 0


cdef int _classify(double complex *roots, double complex *b1, double complex *b2,
                   double complex *b3, double complex *b4) noexcept nogil:
    """2/2 split by sign of the real part; ascending (Re, Im) within pairs."""
    cdef double complex pos[2]
    cdef double complex neg[2]
    cdef int npos = 0, nneg = 0, i
    cdef double complex z, tmp
    for i in range(4):
        z = roots[i]
        if creal(z) > 0:
            if npos < 2:
                pos[npos] = z
            npos += 1
        elif creal(z) < 0:
            if nneg < 2:
                neg[nneg] = -z
            nneg += 1
        else:
            return -1
    if npos != 2 or nneg != 2:
        return -1
    if creal(pos[0]) > creal(pos[1]) or (creal(pos[0]) == creal(pos[1]) and cimag(pos[0]) > cimag(pos[1])):
        tmp = pos[0]; pos[0] = pos[1]; pos[1] = tmp
    if creal(neg[0]) > creal(neg[1]) or (creal(neg[0]) == creal(neg[1]) and cimag(neg[0]) > cimag(neg[1])):
        tmp = neg[0]; neg[0] = neg[1]; neg[1] = tmp
    b1[0] = pos[0]; b2[0] = pos[1]; b3[0] = neg[0]; b4[0] = neg[1]
    return 0


cdef void _char_quartic(double mu, double sigma, double lam, double eta1, double eta2,
                        double p, double complex alpha,
                        double complex *c4, double complex *c3, double complex *c2,
                        double complex *c1, double complex *c0) noexcept nogil:
    cdef double s2 = 0.5 * sigma * sigma
    c4[0] = -s2
    c3[0] = s2 * (eta1 - eta2) - mu
    c2[0] = s2 * eta1 * eta2 + mu * (eta1 - eta2) + lam + alpha
    c1[0] = mu * eta1 * eta2 - (lam + alpha) * (eta1 - eta2) + lam * (p * eta1 - (1.0 - p) * eta2)
    c0[0] = -alpha * eta1 * eta2


cdef double complex _phi(double complex delta, double b) noexcept nogil:
    """(exp(-delta*b) - 1)/delta with a series kernel through delta = 0."""
    cdef double complex x = delta * b
    cdef double complex acc, term
    cdef int k
    if cabs(x) < 1e-3:
        acc = 1.0
        term = 1.0
        for k in range(2, 8):
            term = term * (-x) / k
            acc = acc + term
        return -b * acc
    return (cexp(-x) - 1.0) / delta


cdef double _eps_deg(double complex x, double complex y) noexcept nogil:
    return 1e-6 * (1.0 + cabs(x) + cabs(y))


cdef double complex _dG(double mu, double sigma, double lam, double eta1, double eta2,
                        double p, double complex z) noexcept nogil:
    return (mu + sigma * sigma * z
            + lam * (p * eta1 / ((eta1 - z) * (eta1 - z))
                     - (1.0 - p) * eta2 / ((eta2 + z) * (eta2 + z))))


cdef int _roots_for(double mu, double sigma, double lam, double eta1, double eta2,
                    double p, double complex alpha,
                    double complex *b1, double complex *b2,
                    double complex *b3, double complex *b4,
                    double complex *lead) noexcept nogil:
    cdef double complex c4, c3, c2, c1, c0
    cdef double complex roots[4]
    _char_quartic(mu, sigma, lam, eta1, eta2, p, alpha, &c4, &c3, &c2, &c1, &c0)
    lead[0] = c4
    if _solve_quartic(c4, c3, c2, c1, c0, roots) != 0:
        return -2
    return _classify(roots, b1, b2, b3, b4)


def fpt_value(double mu, double sigma, double lam, double eta1, double eta2,
              double p, double b, double complex alpha):
    """Transform of P(tau_b <= t) at one abscissa (compiled hot path)."""
    cdef double complex b1, b2, b3, b4, lead, delta, num
    cdef int status = _roots_for(mu, sigma, lam, eta1, eta2, p, alpha, &b1, &b2, &b3, &b4, &lead)
    if status == -2:
        raise RootSolveError(f"quartic residual contract failed at alpha = {alpha}")
    if status != 0:
        raise ClassificationError(f"expected a 2/2 sign split of the roots at alpha = {alpha}")
    delta = b2 - b1
    if cabs(delta) < _eps_deg(b1, b2):
        return cexp(-b1 * b) / (alpha * eta1) * (eta1 + b1 * (b2 - eta1) * _phi(delta, b))
    num = b2 * (eta1 - b1) * cexp(-b1 * b) + b1 * (b2 - eta1) * cexp(-b2 * b)
    return num / (alpha * eta1 * delta)


def joint_value(double mu, double sigma, double lam, double eta1, double eta2,
                double p, double a, double b, double complex alpha):
    """Transform of P(X_t >= a, tau_b <= t) at one abscissa (compiled hot path)."""
    cdef double complex b1, b2, b3, b4, lead
    cdef double complex delta, phi, ea, a_val, b_val, tail
    cdef double complex g3, g4, c3, c4, d3, d4
    cdef double complex w, f_w, df_w, qm, dqm, den, dden, num, dnum
    cdef double c = b - a
    cdef int status = _roots_for(mu, sigma, lam, eta1, eta2, p, alpha, &b1, &b2, &b3, &b4, &lead)
    if status == -2:
        raise RootSolveError(f"quartic residual contract failed at alpha = {alpha}")
    if status != 0:
        raise ClassificationError(f"expected a 2/2 sign split of the roots at alpha = {alpha}")

    delta = b2 - b1
    if cabs(delta) < _eps_deg(b1, b2):
        phi = _phi(delta, b)
        ea = cexp(-b1 * b)
        a_val = ea * (cexp(-delta * b) - (eta1 - b1) * phi)
        b_val = -(b2 - eta1) * (eta1 - b1) / eta1 * ea * phi
    else:
        a_val = (eta1 - b1) / delta * cexp(-b1 * b) + (b2 - eta1) / delta * cexp(-b2 * b)
        b_val = (b2 - eta1) * (eta1 - b1) / (eta1 * delta) * (cexp(-b1 * b) - cexp(-b2 * b))

    if cabs(b4 - b3) < _eps_deg(b3, b4):
        # merged pole: tail = -g'((b3 + b4)/2), see transforms._merged_tail
        w = 0.5 * (b3 + b4)
        f_w = a_val + b_val * eta1 / (eta1 + w)
        df_w = -b_val * eta1 / ((eta1 + w) * (eta1 + w))
        qm = (eta1 + w) * (eta2 - w)
        dqm = (eta2 - w) - (eta1 + w)
        den = lead * w * (w + b1) * (w + b2)
        dden = lead * ((w + b1) * (w + b2) + w * (w + b2) + w * (w + b1))
        num = f_w * qm
        dnum = df_w * qm + f_w * dqm - c * f_w * qm
        tail = -cexp(-c * w) * (dnum * den - num * dden) / (den * den)
    else:
        g3 = _dG(mu, sigma, lam, eta1, eta2, p, -b3)
        g4 = _dG(mu, sigma, lam, eta1, eta2, p, -b4)
        c3 = 1.0 / (b3 * g3)
        c4 = 1.0 / (b4 * g4)
        d3 = eta1 / ((eta1 + b3) * b3 * g3)
        d4 = eta1 / ((eta1 + b4) * b4 * g4)
        tail = (a_val * c3 + b_val * d3) * cexp(-c * b3) + (a_val * c4 + b_val * d4) * cexp(-c * b4)

    return (a_val + b_val) / alpha + tail


def quartic_roots(double complex c4, double complex c3, double complex c2,
                  double complex c1, double complex c0):
    """Roots of a quartic under the solve_quartic residual contract."""
    cdef double complex roots[4]
    if c4 == 0:
        raise RootSolveError("leading coefficient is zero; polynomial is not a quartic")
    if _solve_quartic(c4, c3, c2, c1, c0, roots) != 0:
        raise RootSolveError("root residual exceeds contract")
    return (roots[0], roots[1], roots[2], roots[3])
