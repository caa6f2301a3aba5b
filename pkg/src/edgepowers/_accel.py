"""Hot numeric kernels.

Every kernel exists as plain Python/numpy source.  Unless the environment
variable ``EDGEPOWERS_NO_NUMBA`` is set to a non-empty value other than
``0``, the loop kernels are compiled with ``numba.njit``; the vectorised
numpy variants are used on the fallback path where they exist.

All kernels work on exact integer data (int64 / uint8).  Rank over the
rationals is computed by fraction-free elimination in int64 with an
explicit overflow guard; callers fall back to Python integers when the
guard trips (see :func:`rank_rational`).
"""

from __future__ import annotations

import os

import numpy as np

_flag = os.environ.get("EDGEPOWERS_NO_NUMBA", "")
USE_NUMBA = _flag in ("", "0")

if USE_NUMBA:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover - numba is a declared dependency
        USE_NUMBA = False

if not USE_NUMBA:

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda f: f


# ---------------------------------------------------------------------------
# monomial minimalisation
# ---------------------------------------------------------------------------


def _minimal_rows_py(A):
    m, n = A.shape
    keep = np.ones(m, dtype=np.bool_)
    kept = np.empty(m, dtype=np.int64)
    nk = 0
    for i in range(m):
        for t in range(nk):
            j = kept[t]
            divides = True
            for c in range(n):
                if A[j, c] > A[i, c]:
                    divides = False
                    break
            if divides:
                keep[i] = False
                break
        if keep[i]:
            kept[nk] = i
            nk += 1
    return keep


_minimal_rows_jit = njit(cache=True)(_minimal_rows_py)


def _minimal_rows_np(A):
    deg = A.sum(axis=1)
    keep = np.zeros(len(A), dtype=bool)
    accepted = np.empty((0, A.shape[1]), dtype=A.dtype)
    for d in np.unique(deg):
        idx = np.nonzero(deg == d)[0]
        block = A[idx]
        if len(accepted):
            ok = np.ones(len(idx), dtype=bool)
            step = max(1, 4_000_000 // (len(accepted) * A.shape[1] + 1))
            for s in range(0, len(idx), step):
                sub = block[s:s + step]
                hit = (accepted[None, :, :] <= sub[:, None, :]).all(axis=2).any(axis=1)
                ok[s:s + step] = ~hit
            idx = idx[ok]
            block = block[ok]
        keep[idx] = True
        accepted = np.vstack([accepted, block])
    return keep


def minimal_rows(A: np.ndarray) -> np.ndarray:
    """Mask of rows not divisible by an earlier row.

    ``A`` must hold distinct exponent vectors sorted by total degree.
    """
    if len(A) == 0:
        return np.zeros(0, dtype=bool)
    A = np.ascontiguousarray(A, dtype=np.int64)
    if USE_NUMBA:
        return _minimal_rows_jit(A)
    return _minimal_rows_np(A)


# ---------------------------------------------------------------------------
# face tables: uint8 arrays indexed by vertex bitmask
# ---------------------------------------------------------------------------


def _down_closure_py(table, nbits):
    size = table.shape[0]
    for b in range(nbits):
        bit = 1 << b
        for mask in range(size):
            if mask & bit and table[mask]:
                table[mask ^ bit] = 1


_down_closure_jit = njit(cache=True)(_down_closure_py)


def _down_closure_np(table, nbits):
    for b in range(nbits):
        view = table.reshape(-1, 2, 1 << b)
        np.bitwise_or(view[:, 0, :], view[:, 1, :], out=view[:, 0, :])


def face_table(facets: np.ndarray, nbits: int) -> np.ndarray:
    """Indicator over all ``2**nbits`` masks of the faces spanned by ``facets``."""
    table = np.zeros(1 << nbits, dtype=np.uint8)
    if len(facets):
        table[np.asarray(facets, dtype=np.int64)] = 1
        if USE_NUMBA:
            _down_closure_jit(table, nbits)
        else:
            _down_closure_np(table, nbits)
    return table


def _collapse_py(table, nbits):
    # elementary collapses of free pairs (sigma, tau); the empty face is kept
    size = table.shape[0]
    stack = np.empty(size, dtype=np.int64)
    top = 0
    for mask in range(size - 1, 0, -1):
        if table[mask]:
            stack[top] = mask
            top += 1
    removed = 0
    queued = np.zeros(size, dtype=np.uint8)
    for t in range(top):
        queued[stack[t]] = 1
    while top > 0:
        top -= 1
        s = stack[top]
        queued[s] = 0
        if s == 0 or not table[s]:
            continue
        count = 0
        tau = -1
        for b in range(nbits):
            bit = 1 << b
            if not (s & bit) and table[s | bit]:
                count += 1
                tau = s | bit
                if count > 1:
                    break
        if count != 1:
            continue
        maximal = True
        for b in range(nbits):
            bit = 1 << b
            if not (tau & bit) and table[tau | bit]:
                maximal = False
                break
        if not maximal:
            continue
        table[s] = 0
        table[tau] = 0
        removed += 2
        for b in range(nbits):
            bit = 1 << b
            if tau & bit:
                f = tau ^ bit
                if f != 0 and f != s and table[f] and not queued[f]:
                    queued[f] = 1
                    stack[top] = f
                    top += 1
            if s & bit:
                f = s ^ bit
                if f != 0 and table[f] and not queued[f]:
                    queued[f] = 1
                    stack[top] = f
                    top += 1
    return removed


_collapse_jit = njit(cache=True)(_collapse_py)


def collapse(table: np.ndarray, nbits: int) -> int:
    """Collapse free faces in place; returns the number of faces removed."""
    if USE_NUMBA:
        return _collapse_jit(table, nbits)
    return _collapse_py(table, nbits)


def _link_table_py(table, face, verts, out):
    # out[t] = 1 iff face | deposit(t, verts) is a face
    L = verts.shape[0]
    for t in range(1 << L):
        g = face
        for k in range(L):
            if (t >> k) & 1:
                g |= 1 << verts[k]
        out[t] = table[g]


_link_table_jit = njit(cache=True)(_link_table_py)


def link_table(table: np.ndarray, face: int, verts: np.ndarray) -> np.ndarray:
    """Face table of the link of ``face``, re-indexed over ``verts``."""
    verts = np.ascontiguousarray(verts, dtype=np.int64)
    out = np.zeros(1 << len(verts), dtype=np.uint8)
    if USE_NUMBA:
        _link_table_jit(table, face, verts, out)
    else:
        idx = np.zeros(1, dtype=np.int64) | face
        for v in verts:
            idx = np.concatenate([idx, idx | (1 << int(v))])
        out[:] = table[idx]
    return out


# ---------------------------------------------------------------------------
# exact ranks
# ---------------------------------------------------------------------------


def _rank_modp_py(M, p):
    A = M.copy()
    rows, cols = A.shape
    for i in range(rows):
        for j in range(cols):
            A[i, j] %= p
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if A[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, cols):
                tmp = A[r, j]
                A[r, j] = A[piv, j]
                A[piv, j] = tmp
        inv = 1
        base = A[r, c]
        e = p - 2
        while e > 0:
            if e & 1:
                inv = (inv * base) % p
            base = (base * base) % p
            e >>= 1
        for j in range(c, cols):
            A[r, j] = (A[r, j] * inv) % p
        for i in range(r + 1, rows):
            f = A[i, c]
            if f != 0:
                for j in range(c, cols):
                    A[i, j] = (A[i, j] - f * A[r, j]) % p
        r += 1
    return r


_rank_modp_jit = njit(cache=True)(_rank_modp_py)


def _rank_modp_np(M, p):
    A = np.array(M, dtype=np.int64) % p
    rows, cols = A.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if len(nz) == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = (A[r] * pow(int(A[r, c]), p - 2, p)) % p
        below = A[r + 1:, c].copy()
        hit = np.nonzero(below)[0]
        if len(hit):
            A[r + 1 + hit] = (A[r + 1 + hit] - below[hit, None] * A[r]) % p
        r += 1
    return r


def rank_modp(M: np.ndarray, p: int) -> int:
    """Rank over the prime field F_p (p < 2**31)."""
    M = np.ascontiguousarray(M, dtype=np.int64)
    if M.size == 0:
        return 0
    if USE_NUMBA:
        return int(_rank_modp_jit(M, p))
    return _rank_modp_np(M, p)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _rank_int64_py(M):
    # fraction-free elimination; returns -1 if entries leave the guard band
    A = M.copy()
    rows, cols = A.shape
    guard = 1 << 30
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        best = 0
        for i in range(r, rows):
            v = A[i, c]
            if v != 0:
                a = v if v > 0 else -v
                if piv < 0 or a < best:
                    piv = i
                    best = a
                    if a == 1:
                        break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, cols):
                tmp = A[r, j]
                A[r, j] = A[piv, j]
                A[piv, j] = tmp
        pv = A[r, c]
        for i in range(r + 1, rows):
            f = A[i, c]
            if f == 0:
                continue
            g = 0
            for j in range(c, cols):
                x = A[i, j] * pv - f * A[r, j]
                if x > guard or x < -guard:
                    return -1
                A[i, j] = x
                y = x if x >= 0 else -x
                while y:
                    g, y = y, g % y
            if g > 1:
                for j in range(c, cols):
                    A[i, j] //= g
        r += 1
    return r


_rank_int64_jit = njit(cache=True)(_rank_int64_py)


def _rank_bigint(M) -> int:
    """Fraction-free Bareiss-style elimination on Python integers."""
    A = [[int(x) for x in row] for row in np.asarray(M)]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        pv = A[r][c]
        for i in range(r + 1, rows):
            f = A[i][c]
            if f:
                row = [A[i][j] * pv - f * A[r][j] for j in range(cols)]
                g = 0
                for x in row:
                    g = _gcd(g, abs(x))
                A[i] = [x // g for x in row] if g > 1 else row
        r += 1
    return r


def rank_rational(M: np.ndarray) -> int:
    """Exact rank over Q."""
    M = np.ascontiguousarray(M, dtype=np.int64)
    if M.size == 0:
        return 0
    r = int(_rank_int64_jit(M)) if USE_NUMBA else -1
    if r >= 0:
        return r
    return _rank_bigint(M)


# ---------------------------------------------------------------------------
# fused reduced homology of a small complex
# ---------------------------------------------------------------------------


def _homology_py(facets, nb, top, p):
    # ranks of H~_{-1..top}; a leading -1 means the int64 guard tripped
    size = 1 << nb
    table = np.zeros(size, dtype=np.uint8)
    for f in facets:
        table[f] = 1
    _down_closure_jit(table, nb)
    _collapse_jit(table, nb)
    width = max(nb, top + 2) + 2
    counts = np.zeros(width, dtype=np.int64)
    pos = np.zeros(size, dtype=np.int64)
    for m in range(size):
        if table[m]:
            c = 0
            x = m
            while x:
                x &= x - 1
                c += 1
            pos[m] = counts[c]
            counts[c] += 1
    # masks grouped by size, ascending within each group
    starts = np.zeros(width + 1, dtype=np.int64)
    for c in range(width):
        starts[c + 1] = starts[c] + counts[c]
    flat = np.empty(starts[width], dtype=np.int64)
    for m in range(size):
        if table[m]:
            c = 0
            x = m
            while x:
                x &= x - 1
                c += 1
            flat[starts[c] + pos[m]] = m
    bd = np.zeros(top + 3, dtype=np.int64)  # bd[k + 1] = rank of C_k -> C_{k-1}
    for k in range(0, top + 2):
        m_lo = counts[k]
        m_up = counts[k + 1]
        if m_lo == 0 or m_up == 0:
            continue
        M = np.zeros((m_lo, m_up), dtype=np.int64)
        for col in range(m_up):
            s = flat[starts[k + 1] + col]
            sign = 1
            for b in range(nb):
                if (s >> b) & 1:
                    M[pos[s ^ (1 << b)], col] = sign
                    sign = -sign
        if p == 0:
            r = _rank_int64_jit(M)
            if r < 0:
                out = np.full(1, -1, dtype=np.int64)
                return out
        else:
            r = _rank_modp_jit(M, p)
        bd[k + 1] = r
    out = np.zeros(top + 2, dtype=np.int64)
    for k in range(-1, top + 1):
        out[k + 1] = counts[k + 1] - bd[k + 1] - bd[k + 2]
    return out


_homology_jit = njit(cache=True)(_homology_py)


def homology_ranks(facets: np.ndarray, nb: int, top: int, p: int):
    """Reduced Betti numbers in degrees ``-1..top`` of the complex spanned by
    ``facets`` (masks over ``nb`` bits), or ``None`` if exact int64
    elimination over Q overflowed.  Only available with numba."""
    out = _homology_jit(np.ascontiguousarray(facets, dtype=np.int64), nb, top, p)
    if len(out) and out[0] < 0:
        return None
    return out
