# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
# cython: cdivision=True
"""Compiled destabilizer box scan.

Same contract as the numpy fallback: maximize pairing^2/norm over primitive
integer vectors in [-bound, bound]^k subject to the row constraints and a
positive pairing against chi, with ties broken by smaller norm and then
lexicographically (first found in ascending lexicographic order wins).  All
comparisons are exact int64 arithmetic; with the certified bounds used by
the oracle the cross products stay far below 2**63.
"""


cdef inline long long _llabs(long long x) nogil:
    return -x if x < 0 else x


cdef inline long long _gcd(long long a, long long b) nogil:
    cdef long long t
    while b != 0:
        t = a % b
        a = b
        b = t
    return a


def scan_box(long long[:, ::1] rows, long long[::1] chi, long long bound):
    cdef Py_ssize_t m = rows.shape[0]
    cdef Py_ssize_t k = chi.shape[0]
    if k < 1 or k > 3:
        raise ValueError("compiled scan_box supports rank 1..3")
    if bound < 1:
        raise ValueError("scan_box needs a positive bound")

    cdef long long lo1 = -bound if k >= 2 else 0
    cdef long long hi1 = bound if k >= 2 else 0
    cdef long long lo2 = -bound if k >= 3 else 0
    cdef long long hi2 = bound if k >= 3 else 0
    cdef long long chi0 = chi[0]
    cdef long long chi1 = chi[1] if k >= 2 else 0
    cdef long long chi2 = chi[2] if k >= 3 else 0

    cdef long long x0, x1, x2, p, n, acc, g, lhs, rhs
    cdef Py_ssize_t j
    cdef bint have = False, ok, take
    cdef long long best_p = 0, best_n = 1
    cdef long long b0 = 0, b1 = 0, b2 = 0

    for x0 in range(-bound, bound + 1):
        for x1 in range(lo1, hi1 + 1):
            for x2 in range(lo2, hi2 + 1):
                p = -(x0 * chi0 + x1 * chi1 + x2 * chi2)
                if p <= 0:
                    continue
                g = _gcd(_gcd(_llabs(x0), _llabs(x1)), _llabs(x2))
                if g != 1:
                    continue
                ok = True
                for j in range(m):
                    acc = x0 * rows[j, 0]
                    if k >= 2:
                        acc += x1 * rows[j, 1]
                    if k >= 3:
                        acc += x2 * rows[j, 2]
                    if acc < 0:
                        ok = False
                        break
                if not ok:
                    continue
                n = x0 * x0 + x1 * x1 + x2 * x2
                if not have:
                    take = True
                else:
                    lhs = p * p * best_n
                    rhs = best_p * best_p * n
                    take = lhs > rhs or (lhs == rhs and n < best_n)
                if take:
                    have = True
                    best_p = p
                    best_n = n
                    b0 = x0
                    b1 = x1
                    b2 = x2

    if not have:
        return None
    if k == 1:
        lam = (b0,)
    elif k == 2:
        lam = (b0, b1)
    else:
        lam = (b0, b1, b2)
    return (lam, best_p, best_n)
