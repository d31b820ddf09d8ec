"""Bitmask kernels: list-coloring search, coloring count, assignment scan.

Colors ``1..k`` are bits ``1 << (c - 1)`` of an int64 domain mask. Graphs are
passed in CSR form (``indptr``, ``indices``) over vertex indices ``0..n-1``.
Everything here is written in the numba-compatible subset of Python; see
``_jit`` for the switch between compiled and interpreted execution.
"""

from __future__ import annotations

import numpy as np

from ._jit import njit

# scan() status codes
ALL_FEASIBLE = 0
FOUND_INFEASIBLE = 1
BUDGET_EXHAUSTED = 2


@njit
def popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@njit
def bit_color(bit):
    """Color number (1-based) of a single-bit mask."""
    c = 1
    while bit > 1:
        bit >>= 1
        c += 1
    return c


@njit
def _pick_mrv(col, dom):
    best = -1
    best_size = 1 << 62
    for v in range(dom.shape[0]):
        if col[v] == 0:
            size = popcount(dom[v])
            if size < best_size:
                best_size = size
                best = v
                if size <= 1:
                    break
    return best


@njit
def solve_masks(indptr, indices, dom0, out):
    """Backtracking list coloring with forward checking.

    Branches on the unassigned vertex with the fewest remaining colors (lowest
    index on ties), colors in increasing order. Singleton domains are therefore
    always taken first. On success ``out[v]`` holds the color of ``v``.
    """
    n = dom0.shape[0]
    for v in range(n):
        if dom0[v] == 0:
            return False
    if n == 0:
        return True
    dom = dom0.copy()
    col = np.zeros(n, np.int64)
    stack_v = np.empty(n, np.int64)
    stack_rem = np.empty(n, np.int64)
    stack_mark = np.empty(n, np.int64)
    trail_u = np.empty(indices.shape[0] + 1, np.int64)
    trail_b = np.empty(indices.shape[0] + 1, np.int64)
    tp = 0

    v = _pick_mrv(col, dom)
    depth = 0
    stack_v[0] = v
    stack_rem[0] = dom[v]
    stack_mark[0] = 0
    while True:
        v = stack_v[depth]
        # undo removals made by the previous color tried at this depth
        while tp > stack_mark[depth]:
            tp -= 1
            dom[trail_u[tp]] |= trail_b[tp]
        col[v] = 0
        rem = stack_rem[depth]
        if rem == 0:
            depth -= 1
            if depth < 0:
                return False
            continue
        b = rem & -rem
        stack_rem[depth] = rem ^ b
        col[v] = b
        ok = True
        for e in range(indptr[v], indptr[v + 1]):
            u = indices[e]
            if col[u] == 0 and (dom[u] & b):
                dom[u] ^= b
                trail_u[tp] = u
                trail_b[tp] = b
                tp += 1
                if dom[u] == 0:
                    ok = False
                    break
        if not ok:
            continue
        nxt = _pick_mrv(col, dom)
        if nxt < 0:
            for w in range(n):
                out[w] = bit_color(col[w])
            return True
        depth += 1
        stack_v[depth] = nxt
        stack_rem[depth] = dom[nxt]
        stack_mark[depth] = tp


@njit
def count_masks(indptr, indices, dom):
    """Number of proper list colorings, by DFS in vertex-index order."""
    n = dom.shape[0]
    if n == 0:
        return 1
    col = np.zeros(n, np.int64)
    rem = np.zeros(n, np.int64)
    total = 0
    i = 0
    rem[0] = dom[0]
    while i >= 0:
        if i == n - 1:
            allowed = rem[i]
            total += popcount(allowed)
            col[i] = 0
            i -= 1
            continue
        r = rem[i]
        if r == 0:
            col[i] = 0
            i -= 1
            continue
        b = r & -r
        rem[i] = r ^ b
        col[i] = b
        i += 1
        m = dom[i]
        for e in range(indptr[i], indptr[i + 1]):
            u = indices[e]
            if u < i:
                m &= ~col[u]
        rem[i] = m
    return total


@njit
def _image(perms, p, mask):
    img = 0
    m = mask
    while m:
        b = m & -m
        img |= 1 << perms[p, bit_color(b) - 1]
        m ^= b
    return img


@njit
def _sym_step(perms, rank, alive, nalive, j, mask):
    """Advance the palette-permutation stabilizer past position ``j``.

    Returns False when some permutation still tied on the prefix maps ``mask``
    to a lexicographically smaller subset (the assignment is not canonical).
    """
    cnt = 0
    r0 = rank[mask]
    for p in range(perms.shape[0]):
        if alive[j, p]:
            d = rank[_image(perms, p, mask)] - r0
            if d < 0:
                return False
            if d == 0:
                alive[j + 1, p] = True
                cnt += 1
            else:
                alive[j + 1, p] = False
        else:
            alive[j + 1, p] = False
    nalive[j + 1] = cnt
    return True


@njit
def scan(indptr, indices, sub_masks, sub_count, rank, perms, use_sym,
         in_union, union_bound, prefix, prefix_len, budget, witness):
    """Scan f-list assignments in canonical order for an infeasible one.

    Position ``j`` (vertex ``j``) ranges over ``sub_masks[j, :sub_count[j]]``,
    which the caller lists in lexicographic order of color subsets. The first
    ``prefix_len`` positions are pinned to ``prefix``. With ``use_sym`` only
    representatives that are lexicographically minimal under every palette
    permutation in ``perms`` are examined. With ``union_bound >= 0`` only
    assignments whose union over the ``in_union`` vertices has at most
    ``union_bound`` colors are examined. At most ``budget`` assignments are
    examined.

    Returns ``(status, examined)``; on FOUND_INFEASIBLE, ``witness`` holds the
    subset index chosen at every position.
    """
    n = sub_count.shape[0]
    npar = perms.shape[0]
    alive = np.zeros((n + 1, npar), np.bool_)
    nalive = np.ones(n + 1, np.int64)
    if use_sym:
        for p in range(npar):
            alive[0, p] = True
        nalive[0] = npar
    union = np.zeros(n + 1, np.int64)
    assign = np.zeros(n, np.int64)
    idx = np.zeros(n, np.int64)
    out = np.zeros(n, np.int64)
    examined = 0

    for j in range(prefix_len):
        s = sub_masks[j, prefix[j]]
        u = union[j]
        if in_union[j]:
            u |= s
            if union_bound >= 0 and popcount(u) > union_bound:
                return ALL_FEASIBLE, examined
        if nalive[j] > 1:
            if not _sym_step(perms, rank, alive, nalive, j, s):
                return ALL_FEASIBLE, examined
        else:
            nalive[j + 1] = 1
        union[j + 1] = u
        assign[j] = s
        idx[j] = prefix[j]

    if prefix_len == n:
        if budget <= 0:
            return BUDGET_EXHAUSTED, examined
        examined += 1
        if not solve_masks(indptr, indices, assign, out):
            for t in range(n):
                witness[t] = idx[t]
            return FOUND_INFEASIBLE, examined
        return ALL_FEASIBLE, examined

    j0 = prefix_len
    j = j0
    idx[j] = -1
    while True:
        idx[j] += 1
        if idx[j] >= sub_count[j]:
            if j == j0:
                break
            j -= 1
            continue
        s = sub_masks[j, idx[j]]
        u = union[j]
        if in_union[j]:
            u |= s
            if union_bound >= 0 and popcount(u) > union_bound:
                continue
        if nalive[j] > 1:
            if not _sym_step(perms, rank, alive, nalive, j, s):
                continue
        else:
            nalive[j + 1] = 1
        assign[j] = s
        if j == n - 1:
            if examined >= budget:
                return BUDGET_EXHAUSTED, examined
            examined += 1
            if not solve_masks(indptr, indices, assign, out):
                for t in range(n):
                    witness[t] = idx[t]
                return FOUND_INFEASIBLE, examined
            continue
        union[j + 1] = u
        j += 1
        idx[j] = -1
    return ALL_FEASIBLE, examined
