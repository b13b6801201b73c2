# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels.

RGF generation and per-partition statistic evaluation run in C; results
cross back into Python only as histograms.  Mirrors ``_kernels_py``.
"""

from libc.stdlib cimport malloc, calloc, free

BACKEND = "cython"

KERNEL_STATS = ("los", "inv", "crol", "croc", "nest2", "ov", "emb", "semb", "occ", "blocks")

cdef enum:
    MAXN = 64

cdef enum:
    LOS = 0
    INV = 1
    CROL = 2
    CROC = 3
    NEST2 = 4
    OV = 5
    EMB = 6
    SEMB = 7
    OCC = 8
    BLOCKS = 9


cdef struct Work:
    int lo[MAXN + 1]
    int hi[MAXN + 1]
    int last[MAXN + 1]
    int ei[2 * MAXN]
    int ej[2 * MAXN]
    long long dp[MAXN + 1]


cdef int _edges(const int* w, int n, int k, bint circular, Work* ws) nogil:
    """Fill ws.ei/ws.ej with edges sorted by left endpoint; return count."""
    cdef int i, x, m = 0, b, t, a, c
    for b in range(1, k + 1):
        ws.last[b] = 0
        ws.lo[b] = 0
    # consecutive pairs come out ordered by their right end; collect then sort
    for i in range(1, n + 1):
        x = w[i - 1]
        if ws.last[x] != 0:
            ws.ei[m] = ws.last[x]
            ws.ej[m] = i
            m += 1
        else:
            ws.lo[x] = i
        ws.last[x] = i
    if circular:
        for b in range(1, k + 1):
            # blocks with >= 3 elements add the (min, max) chord
            if ws.lo[b] != ws.last[b]:
                c = 0
                for i in range(ws.lo[b], ws.last[b] + 1):
                    if w[i - 1] == b:
                        c += 1
                        if c >= 3:
                            break
                if c >= 3:
                    ws.ei[m] = ws.lo[b]
                    ws.ej[m] = ws.last[b]
                    m += 1
    # insertion sort by (i, j); m <= 2n is small
    for a in range(1, m):
        x = ws.ei[a]
        t = ws.ej[a]
        b = a - 1
        while b >= 0 and (ws.ei[b] > x or (ws.ei[b] == x and ws.ej[b] > t)):
            ws.ei[b + 1] = ws.ei[b]
            ws.ej[b + 1] = ws.ej[b]
            b -= 1
        ws.ei[b + 1] = x
        ws.ej[b + 1] = t
    return m


cdef long long _pairs(Work* ws, int m, bint nesting) nogil:
    cdef long long count = 0
    cdef int a, b, i1, j1, i2, j2
    for a in range(m):
        i1 = ws.ei[a]
        j1 = ws.ej[a]
        for b in range(a + 1, m):
            i2 = ws.ei[b]
            j2 = ws.ej[b]
            if i2 >= j1:
                break
            if nesting:
                if i1 < i2 and j2 < j1:
                    count += 1
            elif i1 < i2 and j1 < j2:
                count += 1
    return count


cdef long long _stat(int code, const int* w, int n, int k,
                     const int* pat, int r, Work* ws) nogil:
    cdef long long total = 0
    cdef int i, j, x, b, c, a, m
    if code == LOS:
        for i in range(n):
            total += w[i] - 1
        return total
    if code == BLOCKS:
        return k
    if code == INV:
        for b in range(k + 2):
            ws.last[b] = 0
        for i in range(n):
            x = w[i]
            for b in range(x + 1, k + 1):
                total += ws.last[b]
            ws.last[x] += 1
        return total
    if code == CROL or code == NEST2:
        m = _edges(w, n, k, False, ws)
        return _pairs(ws, m, code == NEST2)
    if code == CROC:
        m = _edges(w, n, k, True, ws)
        return _pairs(ws, m, False)
    if code == OV or code == EMB or code == SEMB:
        for b in range(1, k + 1):
            ws.lo[b] = 0
        for i in range(1, n + 1):
            x = w[i - 1]
            if ws.lo[x] == 0:
                ws.lo[x] = i
            ws.hi[x] = i
        for b in range(1, k + 1):
            for c in range(b + 1, k + 1):
                if code == OV:
                    if ws.lo[c] < ws.hi[b] and ws.hi[b] < ws.hi[c]:
                        total += 1
                elif code == EMB:
                    if ws.hi[c] < ws.hi[b]:
                        total += 1
                else:
                    if ws.lo[c] < ws.hi[c] and ws.hi[c] < ws.hi[b]:
                        total += 1
        return total
    if code == OCC:
        for a in range(1, k + 1):
            for b in range(a + 1, k + 1):
                ws.dp[0] = 1
                for j in range(1, r + 1):
                    ws.dp[j] = 0
                for i in range(n):
                    x = w[i]
                    if x == a:
                        c = 1
                    elif x == b:
                        c = 2
                    else:
                        continue
                    for j in range(r, 0, -1):
                        if pat[j - 1] == c:
                            ws.dp[j] += ws.dp[j - 1]
                total += ws.dp[r]
        return total
    return -1


cdef int _first(int* w, int* mx, int n, int k) nogil:
    """Lexicographically first RGF (with exactly k blocks when k > 0)."""
    cdef int i
    if k <= 0:
        for i in range(n):
            w[i] = 1
            mx[i] = 1
    else:
        if k > n:
            return 0
        for i in range(n):
            if i < n - k + 1:
                w[i] = 1
            else:
                w[i] = i - (n - k) + 1
            mx[i] = w[i] if i == 0 or w[i] > mx[i - 1] else mx[i - 1]
    return 1


cdef int _next(int* w, int* mx, int n, int k) nogil:
    """Advance to the next RGF in lex order; 0 when exhausted."""
    cdef int i = n - 1, x, limit, top = 0, rest, need, t, slot
    cdef int cap = n if k <= 0 else k
    while i >= 1:
        limit = mx[i - 1] + 1
        if limit > cap:
            limit = cap
        x = w[i] + 1
        while x <= limit:
            top = mx[i - 1] if mx[i - 1] > x else x
            rest = n - 1 - i
            if k <= 0 or k - top <= rest:
                break
            x += 1
        if x <= limit:
            w[i] = x
            mx[i] = top
            rest = n - 1 - i
            need = 0 if k <= 0 else k - top
            for t in range(i + 1, n):
                slot = t - i
                if slot > rest - need:
                    w[t] = top + slot - (rest - need)
                else:
                    w[t] = 1
                mx[t] = w[t] if w[t] > mx[t - 1] else mx[t - 1]
            return 1
        i -= 1
    return 0


def evaluate(int code, word, pattern=()):
    cdef int n = len(word), r = len(pattern), i, k = 0
    cdef int w[MAXN]
    cdef int pat[MAXN]
    cdef Work ws
    if n > MAXN or r > MAXN:
        raise ValueError(f"word length limited to {MAXN}")
    if not 0 <= code <= BLOCKS:
        raise ValueError(f"bad kernel code {code}")
    for i in range(n):
        w[i] = word[i]
        if w[i] > k:
            k = w[i]
    for i in range(r):
        pat[i] = pattern[i]
    return _stat(code, w, n, k, pat, r, &ws)


def histogram(int n, int k, int code, pattern, long long maxval):
    """``hist[b][v]`` counts RGFs of length ``n`` with ``b`` blocks and value ``v``."""
    cdef int r = len(pattern), i, b
    cdef int w[MAXN]
    cdef int mx[MAXN]
    cdef int pat[MAXN]
    cdef Work ws
    cdef long long v, width = maxval + 1
    cdef long long bad = 0
    cdef int overflow = 0
    cdef long long* hist
    if n < 0 or n > MAXN or r > MAXN:
        raise ValueError(f"n must lie in 0..{MAXN}")
    if not 0 <= code <= BLOCKS:
        raise ValueError(f"bad kernel code {code}")
    for i in range(r):
        pat[i] = pattern[i]
    if k == 0 and n > 0:
        return [[0] * width for b in range(n + 1)]
    if k < 0:
        k = 0
    hist = <long long*> calloc((n + 1) * width, sizeof(long long))
    if hist == NULL:
        raise MemoryError()
    try:
        if n == 0:
            if k == 0:
                hist[0] += 1
        elif _first(w, mx, n, k):
            with nogil:
                while True:
                    b = mx[n - 1]
                    v = _stat(code, w, n, b, pat, r, &ws)
                    if v < 0 or v > maxval:
                        bad = v
                        overflow = 1
                        break
                    hist[b * width + v] += 1
                    if not _next(w, mx, n, k):
                        break
        if overflow:
            raise ValueError(f"statistic value {bad} outside histogram bound {maxval}")
        return [[hist[b * width + v] for v in range(width)] for b in range(n + 1)]
    finally:
        free(hist)


def count_by_blocks(int n):
    cdef int w[MAXN]
    cdef int mx[MAXN]
    cdef long long counts[MAXN + 1]
    cdef int b
    if n < 0 or n > MAXN:
        raise ValueError(f"n must lie in 0..{MAXN}")
    for b in range(n + 1):
        counts[b] = 0
    if n == 0:
        return [1]
    _first(w, mx, n, 0)
    with nogil:
        while True:
            counts[mx[n - 1]] += 1
            if not _next(w, mx, n, 0):
                break
    return [counts[b] for b in range(n + 1)]
