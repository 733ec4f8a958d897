# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled propagation kernel.

Per batch item: assemble the 9x9 Liouvillian of each pulse segment, take its
matrix exponential (order-13 Pade with scaling-and-squaring, hand-rolled
9x9 complex linear algebra on stack buffers) and accumulate the time-ordered
product.  Items are independent, so the batch loop runs under OpenMP.

Must stay numerically interchangeable with qutritchar.kernels.pure; the test
suite enforces agreement on random batches.
"""

import numpy as np

from cython.parallel cimport prange
from libc.math cimport NAN, ceil, log2, sqrt

ctypedef double complex zdouble

cdef double THETA13 = 5.371920351148152

cdef double B13[14]
B13[0] = 64764752532480000.0
B13[1] = 32382376266240000.0
B13[2] = 7771770303897600.0
B13[3] = 1187353796428800.0
B13[4] = 129060195264000.0
B13[5] = 10559470521600.0
B13[6] = 670442572800.0
B13[7] = 33522128640.0
B13[8] = 1323241920.0
B13[9] = 40840800.0
B13[10] = 960960.0
B13[11] = 16380.0
B13[12] = 182.0
B13[13] = 1.0


cdef inline double zmag(zdouble z) noexcept nogil:
    """Cheap magnitude |re| + |im|; a norm, adequate for pivoting and
    for the scaling norm (overestimates |z| by at most sqrt(2))."""
    cdef double re = z.real
    cdef double im = z.imag
    if re < 0:
        re = -re
    if im < 0:
        im = -im
    return re + im


cdef inline void mm9(zdouble* c, const zdouble* a, const zdouble* b) noexcept nogil:
    """c = a @ b for column-major 9x9; c must not alias a or b."""
    cdef int i, j, k
    cdef zdouble bkj
    for j in range(9):
        for i in range(9):
            c[i + 9 * j] = 0
        for k in range(9):
            bkj = b[k + 9 * j]
            for i in range(9):
                c[i + 9 * j] = c[i + 9 * j] + a[i + 9 * k] * bkj


cdef int lu_solve9(zdouble* m, zdouble* r) noexcept nogil:
    """Solve m @ x = r in place (x returned in r); partial pivoting."""
    cdef int i, j, k, piv
    cdef double big, mag
    cdef zdouble tmp, factor
    for k in range(9):
        piv = k
        big = zmag(m[k + 9 * k])
        for i in range(k + 1, 9):
            mag = zmag(m[i + 9 * k])
            if mag > big:
                big = mag
                piv = i
        if big == 0.0:
            return -1
        if piv != k:
            for j in range(9):
                tmp = m[k + 9 * j]
                m[k + 9 * j] = m[piv + 9 * j]
                m[piv + 9 * j] = tmp
                tmp = r[k + 9 * j]
                r[k + 9 * j] = r[piv + 9 * j]
                r[piv + 9 * j] = tmp
        for i in range(k + 1, 9):
            factor = m[i + 9 * k] / m[k + 9 * k]
            for j in range(k + 1, 9):
                m[i + 9 * j] = m[i + 9 * j] - factor * m[k + 9 * j]
            for j in range(9):
                r[i + 9 * j] = r[i + 9 * j] - factor * r[k + 9 * j]
    for j in range(9):
        for k in range(8, -1, -1):
            tmp = r[k + 9 * j]
            for i in range(k + 1, 9):
                tmp = tmp - m[k + 9 * i] * r[i + 9 * j]
            r[k + 9 * j] = tmp / m[k + 9 * k]
    return 0


cdef void build_liouvillian9(double delta, double chi, double tau1, double tau2,
                             double p, double q, zdouble* lv) noexcept nogil:
    """Column-major Liouvillian from angular scalars (rad/µs, rates 1/µs)."""
    cdef zdouble h[9]
    cdef double amat[9]
    cdef double nvec[3]
    cdef double nsq[3]
    cdef int i, i1, i2, j1, j2, rr, cc
    cdef double rt2 = sqrt(2.0)
    cdef zdouble z
    cdef double d

    for i in range(9):
        h[i] = 0
        amat[i] = 0.0
    h[1 + 3 * 1] = delta
    h[2 + 3 * 2] = 2.0 * delta - chi
    h[0 + 3 * 1] = p + 1j * q
    h[1 + 3 * 0] = p - 1j * q
    h[1 + 3 * 2] = rt2 * (p + 1j * q)
    h[2 + 3 * 1] = rt2 * (p - 1j * q)
    amat[0 + 3 * 1] = 1.0
    amat[1 + 3 * 2] = rt2
    nvec[0] = 0.0; nvec[1] = 1.0; nvec[2] = 2.0
    nsq[0] = 0.0; nsq[1] = 1.0; nsq[2] = 4.0

    for i1 in range(3):
        for i2 in range(3):
            rr = 3 * i1 + i2
            for j1 in range(3):
                for j2 in range(3):
                    cc = 3 * j1 + j2
                    z = 0
                    if i1 == j1:
                        z = z + h[i2 + 3 * j2]
                    if i2 == j2:
                        z = z - h[j1 + 3 * i1]
                    z = -1j * z
                    d = amat[i1 + 3 * j1] * amat[i2 + 3 * j2]
                    if i1 == j1 and i2 == j2:
                        d = d - 0.5 * (nvec[i1] + nvec[i2])
                    z = z + tau1 * d
                    if i1 == j1 and i2 == j2:
                        z = z + tau2 * (nvec[i1] * nvec[i2] - 0.5 * (nsq[i1] + nsq[i2]))
                    lv[rr + 9 * cc] = z


cdef int expm9(zdouble* a, zdouble* r, zdouble* a2, zdouble* a4, zdouble* a6,
               zdouble* t) noexcept nogil:
    """r = exp(a); a is destroyed.  Returns nonzero on a singular solve."""
    cdef int i, k, s
    cdef double norm, colsum, scale
    cdef int jj

    norm = 0.0
    for jj in range(9):
        colsum = 0.0
        for i in range(9):
            colsum = colsum + zmag(a[i + 9 * jj])
        if colsum > norm:
            norm = colsum
    s = 0
    if norm > THETA13:
        s = <int>ceil(log2(norm / THETA13))
    if s > 0:
        scale = 1.0
        for k in range(s):
            scale = scale * 0.5
        for i in range(81):
            a[i] = a[i] * scale

    mm9(a2, a, a)
    mm9(a4, a2, a2)
    mm9(a6, a2, a4)

    for i in range(81):
        t[i] = B13[13] * a6[i] + B13[11] * a4[i] + B13[9] * a2[i]
    mm9(r, a6, t)
    for i in range(81):
        r[i] = r[i] + B13[7] * a6[i] + B13[5] * a4[i] + B13[3] * a2[i]
    for i in range(9):
        r[i + 9 * i] = r[i + 9 * i] + B13[1]
    mm9(t, a, r)          # t = U

    for i in range(81):
        r[i] = B13[12] * a6[i] + B13[10] * a4[i] + B13[8] * a2[i]
    mm9(a, a6, r)         # a reused: a6 @ (...)
    for i in range(81):
        a[i] = a[i] + B13[6] * a6[i] + B13[4] * a4[i] + B13[2] * a2[i]
    for i in range(9):
        a[i + 9 * i] = a[i + 9 * i] + B13[0]
    # a = V, t = U
    for i in range(81):
        a2[i] = a[i] - t[i]      # V - U
        r[i] = a[i] + t[i]       # V + U
    if lu_solve9(a2, r) != 0:
        return -1
    for k in range(s):
        mm9(t, r, r)
        for i in range(81):
            r[i] = t[i]
    return 0


cdef void item_propagator(double delta, double chi, double tau1, double tau2,
                          const double* p, const double* q, const double* dt,
                          int n_seg, zdouble* out_rowmajor) noexcept nogil:
    cdef zdouble a[81]
    cdef zdouble r[81]
    cdef zdouble a2[81]
    cdef zdouble a4[81]
    cdef zdouble a6[81]
    cdef zdouble t[81]
    cdef zdouble prop[81]
    cdef int seg, i, j, ok

    ok = 0
    for seg in range(n_seg):
        build_liouvillian9(delta, chi, tau1, tau2, p[seg], q[seg], a)
        for i in range(81):
            a[i] = a[i] * dt[seg]
        if expm9(a, r, a2, a4, a6, t) != 0:
            ok = -1
            break
        if seg == 0:
            for i in range(81):
                prop[i] = r[i]
        else:
            mm9(t, r, prop)
            for i in range(81):
                prop[i] = t[i]
    if ok != 0:
        for i in range(81):
            out_rowmajor[i] = NAN + 1j * NAN
        return
    for i in range(9):
        for j in range(9):
            out_rowmajor[9 * i + j] = prop[i + 9 * j]


def segment_propagators(double[::1] delta, double[::1] chi,
                        double[::1] tau1, double[::1] tau2,
                        double[:, ::1] p, double[:, ::1] q, double[:, ::1] dt,
                        int threads=0):
    """Total per-item propagator over the segment sequence, shape (B, 9, 9).

    Same contract as qutritchar.kernels.pure.segment_propagators; ``threads``
    caps the OpenMP team size (0 = library default).
    """
    cdef Py_ssize_t nb = delta.shape[0]
    cdef int n_seg = <int>p.shape[1]
    if (chi.shape[0] != nb or tau1.shape[0] != nb or tau2.shape[0] != nb
            or p.shape[0] != nb or q.shape[0] != nb or dt.shape[0] != nb
            or q.shape[1] != n_seg or dt.shape[1] != n_seg):
        raise ValueError("inconsistent batch shapes")
    out = np.empty((nb, 9, 9), dtype=np.complex128)
    cdef zdouble[:, :, ::1] om = out
    cdef Py_ssize_t b
    if nb == 0:
        return out
    if threads > 0:
        for b in prange(nb, nogil=True, schedule='static', num_threads=threads):
            item_propagator(delta[b], chi[b], tau1[b], tau2[b],
                            &p[b, 0], &q[b, 0], &dt[b, 0], n_seg, &om[b, 0, 0])
    else:
        for b in prange(nb, nogil=True, schedule='static'):
            item_propagator(delta[b], chi[b], tau1[b], tau2[b],
                            &p[b, 0], &q[b, 0], &dt[b, 0], n_seg, &om[b, 0, 0])
    return out
