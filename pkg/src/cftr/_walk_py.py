"""Pure-Python address walk over integer cone tables."""

from __future__ import annotations

from array import array


def orbit_scan(L, maxF, voff, soff, slot_child, kind, mx, my, up,
               base, start, word, iters, out_depth, out_final, out_type, out_min):
    """Walk word**iters from (base, [], start) without leaving the base cone.

    Fills one record per completed iteration and returns (completed, exited).
    """
    n = len(word)
    st = array("i", [0]) * (iters * n + 2)
    ss = array("i", [0]) * (iters * n + 2)
    depth = 0
    t = base
    v = start
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
