# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels for approximate (float/complex) data on an int64 grid.

Same contracts as :mod:`gaborstep._pykernels`.  ``fold`` and ``cross_fold``
take plain lists and return ``None`` when a value is not a float or complex,
so exact rationals fall back to the Python kernels without a separate scan.
"""
from cpython.complex cimport PyComplex_CheckExact
from cpython.float cimport PyFloat_CheckExact
from libc.math cimport cos, sin, M_PI
from libc.stdlib cimport free, malloc, qsort
from libc.string cimport memset

ctypedef long long i64

cdef struct Event:
    i64 pos
    double re
    double im


cdef int _cmp(const void* a, const void* b) noexcept nogil:
    cdef i64 x = (<const Event*>a).pos
    cdef i64 y = (<const Event*>b).pos
    return (x > y) - (x < y)


cdef inline i64 _pymod(i64 x, i64 p) noexcept nogil:
    cdef i64 r = x % p
    if r < 0:
        r += p
    return r


cdef inline Py_ssize_t _put(Event* ev, Py_ssize_t n, i64 pos, double re, double im) noexcept nogil:
    ev[n].pos = pos
    ev[n].re = re
    ev[n].im = im
    return n + 1


cdef Py_ssize_t _deposit(Event* ev, Py_ssize_t n, i64 s, i64 e, double re, double im,
                         i64 period) noexcept nogil:
    """Add the value on ``[s, e)`` wrapped onto ``[0, period)``; at most 6 events."""
    cdef i64 L = _pymod(s, period)
    cdef i64 end = L + (e - s)
    cdef i64 q, r
    if end <= period:
        n = _put(ev, n, L, re, im)
        return _put(ev, n, end, -re, -im)
    n = _put(ev, n, L, re, im)
    n = _put(ev, n, period, -re, -im)
    q = (end - period) // period
    r = (end - period) - q * period
    if q:
        n = _put(ev, n, 0, q * re, q * im)
        n = _put(ev, n, period, -q * re, -q * im)
    if r:
        n = _put(ev, n, 0, re, im)
        n = _put(ev, n, r, -re, -im)
    return n


cdef inline object _box(double re, double im, bint real):
    if real:
        return re
    return complex(re, im)


cdef tuple _sweep(Event* ev, Py_ssize_t n, i64 period, bint real):
    """Prefix-sum the events into cuts ``0 = c_0 < ... < c_m = period`` and cell values."""
    cdef list cuts = [0]
    cdef list vals = []
    cdef double are = 0.0, aim = 0.0
    cdef Py_ssize_t k = 0, i
    cdef i64 x
    cdef double* dre
    cdef double* dim
    cdef char* hit
    if period <= 4 * n + 64:
        # dense difference array: no sort needed
        dre = <double*>malloc((period + 1) * sizeof(double))
        dim = <double*>malloc((period + 1) * sizeof(double))
        hit = <char*>malloc(period + 1)
        if dre == NULL or dim == NULL or hit == NULL:
            free(dre); free(dim); free(hit)
            raise MemoryError()
        memset(dre, 0, (period + 1) * sizeof(double))
        memset(dim, 0, (period + 1) * sizeof(double))
        memset(hit, 0, period + 1)
        for i in range(n):
            dre[ev[i].pos] += ev[i].re
            dim[ev[i].pos] += ev[i].im
            hit[ev[i].pos] = 1
        are = dre[0]
        aim = dim[0]
        for x in range(1, period + 1):
            if hit[x]:
                vals.append(_box(are, aim, real))
                cuts.append(x)
                are += dre[x]
                aim += dim[x]
        if not hit[period]:
            vals.append(_box(are, aim, real))
            cuts.append(period)
        free(dre); free(dim); free(hit)
        return cuts, vals
    qsort(ev, n, sizeof(Event), _cmp)
    while k < n and ev[k].pos == 0:
        are += ev[k].re
        aim += ev[k].im
        k += 1
    while True:
        x = ev[k].pos if k < n and ev[k].pos < period else period
        vals.append(_box(are, aim, real))
        cuts.append(x)
        if x == period:
            break
        while k < n and ev[k].pos == x:
            are += ev[k].re
            aim += ev[k].im
            k += 1
    return cuts, vals


cdef inline int _unbox(object v, double* re, double* im) except -1:
    """0 for float, 1 for complex, 2 for anything else (caller falls back)."""
    if PyFloat_CheckExact(v):
        re[0] = <double>v
        im[0] = 0.0
        return 0
    if PyComplex_CheckExact(v):
        re[0] = (<double complex>v).real
        im[0] = (<double complex>v).imag
        return 1
    return 2


def fold(list starts, list ends, list vals, i64 period):
    cdef Py_ssize_t n = len(vals), i, m = 0
    cdef double re, im
    cdef int kind
    cdef bint real = True
    cdef Event* ev = <Event*>malloc((6 * n + 2) * sizeof(Event))
    if ev == NULL:
        raise MemoryError()
    try:
        for i in range(n):
            kind = _unbox(vals[i], &re, &im)
            if kind == 2:
                return None
            if kind == 1:
                real = False
            if re != 0.0 or im != 0.0:
                m = _deposit(ev, m, <i64>starts[i], <i64>ends[i], re, im, period)
        return _sweep(ev, m, period, real)
    finally:
        free(ev)


def cross_fold(list fs, list fe, list fv, list gs, list ge, list gv, i64 shift, i64 period):
    cdef Py_ssize_t nf = len(fs), ng = len(gs), i, j, m = 0
    cdef double re, im, gre, gim, vre, vim
    cdef int kind
    cdef bint real = True
    cdef i64 glo, ghi, lo, hi
    cdef i64* cfs = <i64*>malloc((2 * nf + 2 * ng + 2) * sizeof(i64))
    cdef double* cv = <double*>malloc((2 * nf + 2 * ng + 2) * sizeof(double))
    cdef Event* ev = <Event*>malloc((6 * (nf + ng) + 2) * sizeof(Event))
    cdef i64* cfe
    cdef i64* cgs
    cdef i64* cge
    if cfs == NULL or cv == NULL or ev == NULL:
        free(cfs); free(cv); free(ev)
        raise MemoryError()
    cfe = cfs + nf
    cgs = cfs + 2 * nf
    cge = cgs + ng
    try:
        for i in range(nf):
            kind = _unbox(fv[i], &re, &im)
            if kind == 2:
                return None
            real = real and kind == 0
            cfs[i] = fs[i]
            cfe[i] = fe[i]
            cv[2 * i] = re
            cv[2 * i + 1] = im
        for j in range(ng):
            kind = _unbox(gv[j], &re, &im)
            if kind == 2:
                return None
            real = real and kind == 0
            cgs[j] = gs[j]
            cge[j] = ge[j]
            cv[2 * (nf + j)] = re
            cv[2 * (nf + j) + 1] = im
        with nogil:
            i = 0
            j = 0
            while i < nf and j < ng:
                glo = cgs[j] + shift
                ghi = cge[j] + shift
                lo = cfs[i] if cfs[i] > glo else glo
                hi = cfe[i] if cfe[i] < ghi else ghi
                if lo < hi:
                    # f * conj(g)
                    re = cv[2 * i]
                    im = cv[2 * i + 1]
                    gre = cv[2 * (nf + j)]
                    gim = -cv[2 * (nf + j) + 1]
                    vre = re * gre - im * gim
                    vim = re * gim + im * gre
                    if vre != 0.0 or vim != 0.0:
                        m = _deposit(ev, m, lo, hi, vre, vim, period)
                if cfe[i] <= ghi:
                    i += 1
                else:
                    j += 1
        return _sweep(ev, m, period, real)
    finally:
        free(cfs); free(cv); free(ev)


def circle_extrema(list exps, Py_ssize_t npts):
    cdef Py_ssize_t i, j, k = len(exps)
    cdef double* e = <double*>malloc((k + 1) * sizeof(double))
    cdef double step = 2.0 * M_PI / npts
    cdef double th, c, s, r
    cdef double rmin = 1e300, rmax = -1e300
    cdef Py_ssize_t imin = 0, imax = 0
    if e == NULL:
        raise MemoryError()
    for j in range(k):
        e[j] = <double>(<i64>exps[j])
    with nogil:
        for i in range(npts):
            th = i * step
            c = 0.0
            s = 0.0
            for j in range(k):
                c += cos(e[j] * th)
                s += sin(e[j] * th)
            r = c * c + s * s
            if r < rmin:
                rmin = r
                imin = i
            if r > rmax:
                rmax = r
                imax = i
    free(e)
    return rmin, imin, rmax, imax
