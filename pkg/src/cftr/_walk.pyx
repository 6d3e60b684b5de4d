# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled address walk over integer cone tables."""

from cpython.array cimport array, clone


def orbit_scan(int L, int maxF, int[:] voff, int[:] soff, int[:] slot_child,
               int[:] kind, int[:] mx, int[:] my, int[:] up,
               int base, int start, int[:] word, int iters,
               int[:] out_depth, int[:] out_final, int[:] out_type, int[:] out_min):
    cdef int n = word.shape[0]
    cdef array tmpl = array("i")
    cdef array st_a = clone(tmpl, iters * n + 2, False)
    cdef array ss_a = clone(tmpl, iters * n + 2, False)
    cdef int[:] st = st_a
    cdef int[:] ss = ss_a
    cdef int depth = 0, t = base, v = start
    cdef int k, i, a, g, kd, gs, low
    for k in range(iters):
        low = depth
        for i in range(n):
            a = word[i]
            g = (voff[t] + v) * L + a
            kd = kind[g]
            if kd == 0:
                v = mx[g]
            elif kd == 1:
                gs = soff[t] + mx[g]
                st[depth] = t
                ss[depth] = gs
                depth += 1
                t = slot_child[gs]
                v = my[g]
            else:
                if depth == 0:
                    return k, True
                depth -= 1
                v = up[(ss[depth] * maxF + v) * L + a]
                t = st[depth]
                if depth < low:
                    low = depth
        out_depth[k] = depth
        out_final[k] = v
        out_type[k] = t
        out_min[k] = low
    return iters, False
