# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels; semantics identical to _kernels_py (the reference)."""

BACKEND = "cython"


def mono_mul(tuple a, tuple b):
    cdef Py_ssize_t i = 0, j = 0, na = len(a), nb = len(b)
    cdef tuple ta, tb
    cdef long e
    if na == 0:
        return b
    if nb == 0:
        return a
    out = []
    while i < na and j < nb:
        ta = <tuple> a[i]
        tb = <tuple> b[j]
        if ta[0] < tb[0] or (ta[0] == tb[0] and ta[1] < tb[1]):
            out.append(ta)
            i += 1
        elif tb[0] < ta[0] or (tb[0] == ta[0] and tb[1] < ta[1]):
            out.append(tb)
            j += 1
        else:
            e = <long> ta[2] + <long> tb[2]
            if e != 0:
                out.append((ta[0], ta[1], e))
            i += 1
            j += 1
    while i < na:
        out.append(a[i])
        i += 1
    while j < nb:
        out.append(b[j])
        j += 1
    return tuple(out)


def mono_pow(tuple a, long n):
    if n == 0:
        return ()
    if n == 1:
        return a
    return tuple([(t[0], t[1], t[2] * n) for t in a])


def poly_add(dict p, dict q):
    cdef dict out = dict(p)
    for n, c in q.items():
        r = out.get(n, 0) + c
        if r:
            out[n] = r
        else:
            out.pop(n, None)
    return out


def poly_sub(dict p, dict q):
    cdef dict out = dict(p)
    for n, c in q.items():
        r = out.get(n, 0) - c
        if r:
            out[n] = r
        else:
            out.pop(n, None)
    return out


def poly_mul(dict p, dict q):
    cdef dict out = {}
    for n, c in p.items():
        for m, d in q.items():
            k = n + m
            r = out.get(k, 0) + c * d
            if r:
                out[k] = r
            else:
                del out[k]
    return out


def poly_scale(dict p, long n, c):
    cdef dict out = {}
    for m, d in p.items():
        out[m + n] = d * c
    return out


def poly_acc_mul(dict acc, dict p, dict q, long shift):
    for n, c in p.items():
        for m, d in q.items():
            k = n + m + shift
            r = acc.get(k, 0) + c * d
            if r:
                acc[k] = r
            else:
                del acc[k]


def dot_shifted(dict a, dict b, long shift):
    total = 0
    if shift == 0:
        for k, v in b.items():
            w = a.get(k)
            if w is not None:
                total += w * v
        return total
    for k, v in b.items():
        w = a.get((k[0], k[1] + shift))
        if w is not None:
            total += w * v
    return total
