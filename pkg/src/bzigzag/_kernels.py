"""Hot integer kernels, compiled with numba when available.

Setting ``BZIGZAG_NO_NUMBA=1`` selects the pure-numpy versions (also used when
numba cannot be imported).  Both implementations return identical results.
"""
from __future__ import annotations

import os

import numpy as np

PRIME = 2_147_483_629  # largest prime below 2^31, keeps products inside int64


def _use_numba() -> bool:
    if os.environ.get("BZIGZAG_NO_NUMBA", "") not in ("", "0"):
        return False
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


USING_NUMBA = _use_numba()


def _assoc_defects_numpy(table: np.ndarray, signs: np.ndarray) -> int:
    d = table.shape[0]
    bad = 0
    for a in range(d):
        ab = table[a]  # a*b for all b
        sab = signs[a]
        for b in range(d):
            x = ab[b]
            # (ab)c for all c
            if x >= 0:
                left = table[x]
                lsign = sab[b] * signs[x]
            else:
                left = np.full(d, -1, dtype=table.dtype)
                lsign = np.zeros(d, dtype=signs.dtype)
            bc = table[b]
            sbc = signs[b]
            ok = bc >= 0
            right = np.full(d, -1, dtype=table.dtype)
            rsign = np.zeros(d, dtype=signs.dtype)
            right[ok] = table[a, bc[ok]]
            rsign[ok] = sbc[ok] * signs[a, bc[ok]]
            lv = np.where(left >= 0, lsign, 0)
            rv = np.where(right >= 0, rsign, 0)
            bad += int(np.count_nonzero((lv != rv) | ((lv != 0) & (left != right))))
    return bad


def _rank_mod_p_numpy(m: np.ndarray, p: int) -> int:
    a = np.array(m, dtype=np.int64) % p
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = (a[r] * inv) % p
        below = np.nonzero(a[r + 1:, c])[0] + r + 1
        for i in below:
            f = int(a[i, c])
            a[i] = (a[i] - f * a[r]) % p
        r += 1
    return r


if USING_NUMBA:
    from numba import njit

    @njit(cache=True)
    def _assoc_defects_numba(table, signs):
        d = table.shape[0]
        bad = 0
        for a in range(d):
            for b in range(d):
                x = table[a, b]
                for c in range(d):
                    lv, li = 0, -1
                    if x >= 0:
                        y = table[x, c]
                        if y >= 0:
                            lv = signs[a, b] * signs[x, c]
                            li = y
                    rv, ri = 0, -1
                    z = table[b, c]
                    if z >= 0:
                        w = table[a, z]
                        if w >= 0:
                            rv = signs[b, c] * signs[a, z]
                            ri = w
                    if lv != rv or (lv != 0 and li != ri):
                        bad += 1
        return bad

    @njit(cache=True)
    def _mulmod(a, b, p):
        # a, b < p < 2^31 so a*b fits in int64
        return (a * b) % p

    @njit(cache=True)
    def _powmod(a, e, p):
        r = 1
        a = a % p
        while e > 0:
            if e & 1:
                r = _mulmod(r, a, p)
            a = _mulmod(a, a, p)
            e >>= 1
        return r

    @njit(cache=True)
    def _rank_mod_p_numba(m, p):
        a = m.copy()
        rows, cols = a.shape
        for i in range(rows):
            for j in range(cols):
                a[i, j] %= p
        r = 0
        for c in range(cols):
            if r == rows:
                break
            piv = -1
            for i in range(r, rows):
                if a[i, c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(cols):
                    t = a[r, j]
                    a[r, j] = a[piv, j]
                    a[piv, j] = t
            inv = _powmod(a[r, c], p - 2, p)
            for j in range(cols):
                a[r, j] = _mulmod(a[r, j], inv, p)
            for i in range(r + 1, rows):
                f = a[i, c]
                if f != 0:
                    for j in range(cols):
                        a[i, j] = (a[i, j] - _mulmod(f, a[r, j], p)) % p
            r += 1
        return r


def associativity_defects(table: np.ndarray, signs: np.ndarray) -> int:
    """Number of basis triples (a, b, c) with (ab)c != a(bc).

    ``table[a, b]`` is the index of the basis product (or -1 for zero) and
    ``signs[a, b]`` its sign.
    """
    table = np.ascontiguousarray(table, dtype=np.int64)
    signs = np.ascontiguousarray(signs, dtype=np.int64)
    if USING_NUMBA:
        return int(_assoc_defects_numba(table, signs))
    return _assoc_defects_numpy(table, signs)


def rank_mod_p(m: np.ndarray, p: int = PRIME) -> int:
    """Rank of an integer matrix over F_p."""
    m = np.ascontiguousarray(m, dtype=np.int64)
    if m.size == 0:
        return 0
    if USING_NUMBA:
        return int(_rank_mod_p_numba(m, p))
    return _rank_mod_p_numpy(m, p)


def fmpq_to_mod_p(m, p: int = PRIME) -> np.ndarray | None:
    """Reduce a rational matrix mod p; None if some denominator vanishes mod p."""
    r, c = m.nrows(), m.ncols()
    out = np.zeros((r, c), dtype=np.int64)
    for k, v in enumerate(m.entries()):
        if v != 0:
            q = int(v.q) % p
            if q == 0:
                return None
            out[divmod(k, c)] = (int(v.p) % p) * pow(q, p - 2, p) % p
    return out
