"""Compiled exact-greedy split scan: the hot loop of tree growth.

Must stay bit-identical to the NumPy fallback in _split_py: same sequential
prefix accumulation, same operation order per candidate gain, same scan
order for tie-breaking (feature ascending, boundary ascending, strict >).
"""


def best_split(
    const double[:, ::1] x,
    const Py_ssize_t[:, ::1] order,
    const double[::1] g,
    const double[::1] h,
    double g_total,
    double h_total,
    double parent_term,
    double reg_lambda,
    double gamma,
    double min_child_weight,
):
    cdef Py_ssize_t n = x.shape[0]
    cdef Py_ssize_t d = x.shape[1]
    cdef Py_ssize_t f, i, r
    cdef double gl, hl, gr, hr, wl, wr, gain, v, v_next
    cdef double best_gain = 0.0
    cdef double best_thr = 0.0
    cdef Py_ssize_t best_f = -1
    cdef bint found = False

    if n < 2:
        return (-1, 0.0, 0.0)

    for f in range(d):
        gl = 0.0
        hl = 0.0
        for i in range(n - 1):
            r = order[i, f]
            gl += g[r]
            hl += h[r]
            v = x[r, f]
            v_next = x[order[i + 1, f], f]
            if v == v_next:
                continue
            hr = h_total - hl
            if hl < min_child_weight or hr < min_child_weight:
                continue
            gr = g_total - gl
            wl = gl * gl / (hl + reg_lambda)
            wr = gr * gr / (hr + reg_lambda)
            gain = 0.5 * (wl + wr - parent_term) - gamma
            if gain > best_gain:
                best_gain = gain
                best_f = f
                best_thr = (v + v_next) / 2.0
                found = True

    if not found:
        return (-1, 0.0, 0.0)
    return (int(best_f), best_thr, best_gain)
