# cython: boundscheck=False, wraparound=False
"""Compiled set-family kernels; semantics identical to gentop.kernels._pure.

Masks are handled as C uint64, which covers carriers up to 63 points; the
package caps carriers far below that.  Oversized masks fall back to the pure
implementation.
"""

from libc.stdlib cimport malloc, free

from gentop.kernels import _pure

ctypedef unsigned long long u64

_U63_LIMIT = 1 << 63


def union_close(members):
    cdef list queue
    cdef set fam
    cdef u64 x, b, u
    ms = set(members)
    if any(m >= _U63_LIMIT for m in ms):
        return _pure.union_close(ms)
    fam = {0}
    queue = list(ms)
    while queue:
        x = queue.pop()
        if x in fam:
            continue
        fam.add(x)
        for b in list(fam):
            u = x | b
            if u not in fam:
                queue.append(u)
    return tuple(sorted(fam))


def union_closure_violation(members):
    cdef u64 a, b
    cdef Py_ssize_t i, j, k
    s = set(members)
    if any(m >= _U63_LIMIT for m in s):
        return _pure.union_closure_violation(s)
    cdef list ms = sorted(s)
    k = len(ms)
    for i in range(k):
        a = ms[i]
        for j in range(i + 1, k):
            b = ms[j]
            if (a | b) not in s:
                return (a, b)
    return None


def closure_table(opens, int n):
    cdef Py_ssize_t size = 1 << n
    cdef u64 full = size - 1
    cdef u64 a, c, rest, bit
    cdef char *closed = <char *> malloc(size)
    cdef u64 *tab = <u64 *> malloc(size * sizeof(u64))
    if closed == NULL or tab == NULL:
        if closed != NULL:
            free(closed)
        if tab != NULL:
            free(tab)
        raise MemoryError()
    try:
        for i in range(size):
            closed[i] = 0
        for m in opens:
            closed[full ^ <u64> m] = 1
        a = full
        while True:
            c = a if closed[a] else full
            rest = full ^ a
            while rest:
                bit = rest & (~rest + 1)
                c &= tab[a | bit]
                rest ^= bit
            tab[a] = c
            if a == 0:
                break
            a -= 1
        return [tab[i] for i in range(size)]
    finally:
        free(closed)
        free(tab)


def interior_table(opens, int n):
    cdef Py_ssize_t size = 1 << n
    cdef u64 a, v, rest, bit
    cdef char *is_open = <char *> malloc(size)
    cdef u64 *tab = <u64 *> malloc(size * sizeof(u64))
    if is_open == NULL or tab == NULL:
        if is_open != NULL:
            free(is_open)
        if tab != NULL:
            free(tab)
        raise MemoryError()
    try:
        for i in range(size):
            is_open[i] = 0
        for m in opens:
            is_open[<u64> m] = 1
        for a in range(size):
            v = a if is_open[a] else 0
            rest = a
            while rest:
                bit = rest & (~rest + 1)
                v |= tab[a ^ bit]
                rest ^= bit
            tab[a] = v
        return [tab[i] for i in range(size)]
    finally:
        free(is_open)
        free(tab)


def closure_of(closed_sets, a, full):
    cdef u64 c, f, am
    if a >= _U63_LIMIT or full >= _U63_LIMIT:
        return _pure.closure_of(closed_sets, a, full)
    am = a
    c = full
    for fs in closed_sets:
        f = fs
        if f & am == am:
            c &= f
    return c


def enumerate_union_closed(int n):
    return _pure.enumerate_union_closed(n)


def grid_separation_witness(int n, opens_lookup, fixed_vals,
                            free_points, int grid_size, trace_bases):
    cdef int nfree = len(free_points)
    cdef int nbases = len(trace_bases)
    cdef int i, p, bi
    cdef u64 pre, t
    cdef bint ok
    cdef const unsigned char[:] lookup = opens_lookup
    cdef int *vals = <int *> malloc(n * sizeof(int))
    cdef int *frees = <int *> malloc((nfree or 1) * sizeof(int))
    cdef int *counters = <int *> malloc((nfree or 1) * sizeof(int))
    cdef u64 *bases = <u64 *> malloc((nbases or 1) * sizeof(u64))
    if vals == NULL or frees == NULL or counters == NULL or bases == NULL:
        if vals != NULL:
            free(vals)
        if frees != NULL:
            free(frees)
        if counters != NULL:
            free(counters)
        if bases != NULL:
            free(bases)
        raise MemoryError()
    try:
        for p in range(n):
            vals[p] = 0
        for p, v in fixed_vals:
            vals[p] = v
        for i in range(nfree):
            frees[i] = free_points[i]
            counters[i] = 0
        for i in range(nbases):
            bases[i] = trace_bases[i]
        while True:
            ok = True
            for bi in range(nbases):
                t = bases[bi]
                pre = 0
                for p in range(n):
                    if (t >> vals[p]) & 1:
                        pre |= (<u64> 1) << p
                if not lookup[pre]:
                    ok = False
                    break
            if ok:
                return True
            i = 0
            while i < nfree:
                counters[i] += 1
                if counters[i] < grid_size:
                    vals[frees[i]] = counters[i]
                    break
                counters[i] = 0
                vals[frees[i]] = 0
                i += 1
            if i == nfree:
                return False
    finally:
        free(vals)
        free(frees)
        free(counters)
        free(bases)
