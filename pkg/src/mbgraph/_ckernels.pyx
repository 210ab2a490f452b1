# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled reachability kernels over CSR adjacency arrays."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


cdef void _ancestor_mask(const int[:] pptr, const int[:] pidx,
                         unsigned char[:] cond, unsigned char[:] anc,
                         int[:] stack) noexcept nogil:
    cdef Py_ssize_t n = cond.shape[0], top = 0, i
    cdef int u, p
    for i in range(n):
        anc[i] = cond[i]
        if cond[i]:
            stack[top] = <int>i
            top += 1
    while top > 0:
        top -= 1
        u = stack[top]
        for i in range(pptr[u], pptr[u + 1]):
            p = pidx[i]
            if not anc[p]:
                anc[p] = 1
                stack[top] = p
                top += 1


cdef bint _reach(const int[:] sptr, const int[:] sidx,
                 const int[:] pptr, const int[:] pidx,
                 bint directed, const int[:] sources,
                 unsigned char[:] cond, unsigned char[:] out,
                 unsigned char[:] up, unsigned char[:] down,
                 unsigned char[:] anc, int[:] stack, int target) noexcept nogil:
    # returns True iff ``target`` was reached (early exit); ``out`` is then partial
    cdef Py_ssize_t n = cond.shape[0], top = 0, i, k
    cdef int s, x, v, w
    for i in range(n):
        out[i] = 0
    if not directed:
        for k in range(sources.shape[0]):
            s = sources[k]
            if not cond[s] and not out[s]:
                out[s] = 1
                stack[top] = s
                top += 1
        while top > 0:
            top -= 1
            v = stack[top]
            if v == target:
                return True
            for i in range(sptr[v], sptr[v + 1]):
                w = sidx[i]
                if not out[w] and not cond[w]:
                    out[w] = 1
                    stack[top] = w
                    top += 1
        return False

    _ancestor_mask(pptr, pidx, cond, anc, stack)
    for i in range(n):
        up[i] = 0
        down[i] = 0
    for k in range(sources.shape[0]):
        s = sources[k]
        if not cond[s] and not up[s]:
            up[s] = 1
            stack[top] = s
            top += 1
    # entries >= 0 arrived from a child, entries < 0 (bitwise not) from a parent
    while top > 0:
        top -= 1
        x = stack[top]
        if x >= 0:
            v = x
            if cond[v]:
                continue
            out[v] = 1
            if v == target:
                return True
            for i in range(pptr[v], pptr[v + 1]):
                w = pidx[i]
                if not up[w]:
                    up[w] = 1
                    stack[top] = w
                    top += 1
            for i in range(sptr[v], sptr[v + 1]):
                w = sidx[i]
                if not down[w]:
                    down[w] = 1
                    stack[top] = ~w
                    top += 1
        else:
            v = ~x
            if not cond[v]:
                out[v] = 1
                if v == target:
                    return True
                for i in range(sptr[v], sptr[v + 1]):
                    w = sidx[i]
                    if not down[w]:
                        down[w] = 1
                        stack[top] = ~w
                        top += 1
            if anc[v]:
                for i in range(pptr[v], pptr[v + 1]):
                    w = pidx[i]
                    if not up[w]:
                        up[w] = 1
                        stack[top] = w
                        top += 1
    return False


def reach(const int[:] sptr, const int[:] sidx, const int[:] pptr, const int[:] pidx,
          bint directed, const int[:] sources, unsigned char[:] cond):
    cdef Py_ssize_t n = cond.shape[0]
    out = np.zeros(n, dtype=np.uint8)
    up = np.empty(n, dtype=np.uint8)
    down = np.empty(n, dtype=np.uint8)
    anc = np.empty(n, dtype=np.uint8)
    stack = np.empty(2 * n + sources.shape[0] + 1, dtype=np.int32)
    _reach(sptr, sidx, pptr, pidx, directed, sources, cond, out, up, down, anc, stack, -1)
    return out


def blanket_flags(const int[:] sptr, const int[:] sidx, const int[:] pptr, const int[:] pidx,
                  bint directed, const int[:] sources, const int[:] candidates,
                  unsigned char[:] cond):
    cdef Py_ssize_t n = cond.shape[0], k
    cdef int v
    cdef unsigned char[:] c = np.array(cond, dtype=np.uint8)
    cdef unsigned char[:] out = np.empty(n, dtype=np.uint8)
    cdef unsigned char[:] up = np.empty(n, dtype=np.uint8)
    cdef unsigned char[:] down = np.empty(n, dtype=np.uint8)
    cdef unsigned char[:] anc = np.empty(n, dtype=np.uint8)
    cdef int[:] stack = np.empty(2 * n + sources.shape[0] + 1, dtype=np.int32)
    flags = np.zeros(candidates.shape[0], dtype=np.uint8)
    cdef unsigned char[:] f = flags
    with nogil:
        for k in range(candidates.shape[0]):
            v = candidates[k]
            c[v] = 0
            f[k] = _reach(sptr, sidx, pptr, pidx, directed, sources, c,
                          out, up, down, anc, stack, v)
            c[v] = 1
    return flags
