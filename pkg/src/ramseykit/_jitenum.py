"""Compiled enumeration kernel for triangle-free (k = 3) censuses.

The whole search state fits one 64-bit word per color, so the
depth-first walk from fullenum is restated here over uint64 masks with
explicit stacks and handed to numba.  Only the k = 3 shape is
supported: color 0 forbids triangles, which keeps forced-link detection
to a single mask intersection, and every forcing points the same way so
no conflict bookkeeping is needed.

Results are bit-identical to the pure Python path; a cross-check test
holds the two censuses equal on mid-size cases.
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit, uint64

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False
    uint64 = int

    def njit(*a, **k):
        def wrap(f):
            return f

        return wrap


_M1 = 0x5555555555555555
_M2 = 0x3333333333333333
_M4 = 0x0F0F0F0F0F0F0F0F
_H01 = 0x0101010101010101


@njit(cache=True)
def _pop(x):
    x = x - ((x >> 1) & _M1)
    x = (x & _M2) + ((x >> 2) & _M2)
    x = (x + (x >> 4)) & _M4
    return (x * _H01) >> 56


@njit(cache=True)
def _low_bit(x):
    n = 0
    if x & 0xFFFFFFFF == 0:
        n += 32
        x >>= 32
    if x & 0xFFFF == 0:
        n += 16
        x >>= 16
    if x & 0xFF == 0:
        n += 8
        x >>= 8
    if x & 0xF == 0:
        n += 4
        x >>= 4
    if x & 0x3 == 0:
        n += 2
        x >>= 2
    if x & 0x1 == 0:
        n += 1
    return n


@njit(cache=True)
def _high_bit(x):
    n = 0
    if x >> 32:
        n += 32
        x >>= 32
    if x >> 16:
        n += 16
        x >>= 16
    if x >> 8:
        n += 8
        x >>= 8
    if x >> 4:
        n += 4
        x >>= 4
    if x >> 2:
        n += 2
        x >>= 2
    if x >> 1:
        n += 1
    return n


@njit(cache=True)
def _invert(m, rev, n):
    lo = rev >> (64 - n) if n > 0 else uint64(0)
    hi = m << (n + 1) if n < 63 else uint64(0)
    return lo | hi


@njit(cache=True)
def _has_clique(m, rev, b, need):
    """Clique of order >= need through link b, links inserted in order."""
    if need <= 2:
        return True
    cand = m & _invert(m, rev, b)
    if 3 + _pop(cand) < need:
        return False
    sym_depth = (need - 3) // 2
    cand_st = np.empty(64, np.uint64)
    depth = 0
    cand_st[0] = cand
    while depth >= 0:
        cand = cand_st[depth]
        if cand == uint64(0):
            depth -= 1
            continue
        if depth <= sym_depth:
            t = _high_bit(cand)
            if 2 * t + 1 < b:
                cand_st[depth] = uint64(0)
                depth -= 1
                continue
        else:
            t = _low_bit(cand)
        cand ^= uint64(1) << t
        cand_st[depth] = cand
        if depth + 3 >= need:
            return True
        sub = cand & _invert(m, rev, t)
        if depth + 3 + _pop(sub) >= need:
            depth += 1
            cand_st[depth] = sub
    return False


@njit(cache=True)
def _census_k3(j, retain_from, keep_orders, keep_vals, counts):
    """Depth-first census for (3, j) over link bits 0..62.

    counts[n] collects valid colorings of order n.  Colorings of order
    >= retain_from land in keep_orders/keep_vals until those fill up.
    Returns (tests, kept, longest).
    """
    keep_cap = keep_vals.shape[0]
    m0 = uint64(0)
    m1 = uint64(0)
    rev0 = uint64(0)
    rev1 = uint64(0)
    pend1 = np.zeros(64, np.uint16)
    stage = np.zeros(64, np.int8)  # next color to try; 2 = exhausted
    active = np.full(64, -1, np.int8)  # color assigned while a child runs
    undo_base = np.zeros(64, np.int32)
    undo_top = np.zeros(64, np.int32)
    undo_bits = np.empty(64 * 64, np.int8)
    value_st = np.zeros(65, np.uint64)
    tests = 0
    kept = 0
    longest = 0

    bit = 0
    while bit >= 0:
        st = stage[bit]
        if st == 0 and pend1[bit] > 0:
            # forced to color 1: no color-0 trial at all
            stage[bit] = 1
            st = 1
        if st >= 2:
            bit -= 1
            if bit >= 0:
                # the child subtree is exhausted: retract the trial we
                # descended from, forcings first
                for i in range(undo_base[bit], undo_top[bit]):
                    pend1[undo_bits[i]] -= 1
                mask = uint64(1) << bit
                rmask = uint64(1) << (63 - bit)
                if active[bit] == 0:
                    m0 &= ~mask
                    rev0 &= ~rmask
                else:
                    m1 &= ~mask
                    rev1 &= ~rmask
                active[bit] = -1
            continue
        color = st
        stage[bit] = st + 1
        tests += 1
        mask = uint64(1) << bit
        rmask = uint64(1) << (63 - bit)
        if color == 0:
            m0 |= mask
            rev0 |= rmask
            bad = _has_clique(m0, rev0, bit, 3)
        else:
            m1 |= mask
            rev1 |= rmask
            bad = _has_clique(m1, rev1, bit, j)
        if bad:
            if color == 0:
                m0 &= ~mask
                rev0 &= ~rmask
            else:
                m1 &= ~mask
                rev1 &= ~rmask
            continue
        value = value_st[bit] | (uint64(color) << bit)
        order = bit + 2
        counts[order] += 1
        if order > longest:
            longest = order
        if order >= retain_from and kept < keep_cap:
            keep_orders[kept] = order
            keep_vals[kept] = value
            kept += 1
        if bit == 62:
            # width exhausted; callers reject censuses that get here
            if color == 0:
                m0 &= ~mask
                rev0 &= ~rmask
            else:
                m1 &= ~mask
                rev1 &= ~rmask
            continue
        base = undo_top[bit - 1] if bit > 0 else 0
        top = base
        if color == 0:
            # a fresh color-0 link forces every uncolored link closing a
            # 0-triangle with it over to color 1
            f = ~(m0 | m1) & _invert(m0, rev0, bit)
            while f:
                t = _low_bit(f)
                f &= f - uint64(1)
                pend1[t] += 1
                undo_bits[top] = t
                top += 1
        undo_base[bit] = base
        undo_top[bit] = top
        active[bit] = color
        value_st[bit + 1] = value
        bit += 1
        stage[bit] = 0
    return tests, kept, longest
