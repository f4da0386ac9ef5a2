"""Hot loops for the exhaustive oracles, in two interchangeable flavours.

Every kernel exists as ``_nb_*`` (numba ``@njit``) and ``_np_*`` (plain
vectorized numpy). The public names dispatch on ``BACKEND``, which is
``"numba"`` unless numba is missing or ``SLORBITS_DISABLE_NUMBA`` is set to a
truthy value before import. Both flavours return bit-identical results; the
test suite checks that on every kernel.

Encodings used throughout:

* a vector ``a`` in Z_n^m is the integer ``sum(a[i] * n**(m-1-i))``;
* an m x m matrix is the integer whose m*m base-n digits are its entries in
  row-major order, most significant first.

Both orders agree with lexicographic order on the components, so sorting codes
sorts vectors/matrices.
"""
from __future__ import annotations

import os
from itertools import permutations

import numpy as np

INT64_MAX = np.iinfo(np.int64).max

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

_DISABLED = os.environ.get("SLORBITS_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}
BACKEND = "numpy" if (_DISABLED or numba is None) else "numba"

CHUNK = 1 << 18


def _njit(fn):
    if numba is None:
        return fn
    return numba.njit(cache=True)(fn)


def set_backend(name: str) -> None:
    """Switch backend at runtime (benchmarks, tests)."""
    global BACKEND
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and numba is None:
        raise RuntimeError("numba is not installed")
    BACKEND = name


def check_int64(*values: int) -> None:
    for v in values:
        if v > INT64_MAX:
            raise OverflowError(f"{v} does not fit the int64 kernels")


# -- encodings -------------------------------------------------------------

def powers(n: int, length: int) -> np.ndarray:
    return np.array([n ** (length - 1 - i) for i in range(length)], dtype=np.int64)


def decode(codes: np.ndarray, n: int, length: int) -> np.ndarray:
    """codes (B,) -> digits (B, length)."""
    codes = np.asarray(codes, dtype=np.int64)
    out = np.empty((codes.shape[0], length), dtype=np.int64)
    x = codes.copy()
    for k in range(length - 1, -1, -1):
        out[:, k] = x % n
        x //= n
    return out


def encode(digits: np.ndarray, n: int) -> np.ndarray:
    digits = np.asarray(digits, dtype=np.int64)
    return digits @ powers(n, digits.shape[-1])


def all_vectors(n: int, m: int) -> np.ndarray:
    return decode(np.arange(n**m, dtype=np.int64), n, m)


def leibniz_table(m: int) -> tuple[np.ndarray, np.ndarray]:
    """All permutations of range(m) with their signs (+1/-1)."""
    perms = list(permutations(range(m)))
    signs = []
    for p in perms:
        inv = sum(1 for i in range(m) for j in range(i + 1, m) if p[i] > p[j])
        signs.append(-1 if inv % 2 else 1)
    return np.array(perms, dtype=np.int64).reshape(len(perms), m), np.array(signs, dtype=np.int64)


# -- det == 1 filter over a range of matrix codes ---------------------------

@_njit
def _nb_sl_mask(lo, hi, n, m, perms, signs):
    # entries are walked as an odometer; the Leibniz sum is exact in int64
    # (the caller bounds m! (n-1)^m) and reduced once
    out = np.zeros(hi - lo, dtype=np.bool_)
    mm = m * m
    A = np.empty(mm, dtype=np.int64)
    x = lo
    for k in range(mm - 1, -1, -1):
        A[k] = x % n
        x //= n
    target = 1 % n
    for t in range(hi - lo):
        det = 0
        for s in range(perms.shape[0]):
            term = signs[s]
            for r in range(m):
                term *= A[r * m + perms[s, r]]
                if term == 0:
                    break
            det += term
        out[t] = det % n == target
        k = mm - 1
        while k >= 0:
            A[k] += 1
            if A[k] < n:
                break
            A[k] = 0
            k -= 1
    return out


def _np_sl_mask(lo, hi, n, m, perms, signs):
    A = decode(np.arange(lo, hi, dtype=np.int64), n, m * m)
    det = np.zeros(hi - lo, dtype=np.int64)
    for s in range(perms.shape[0]):
        term = np.full(hi - lo, signs[s], dtype=np.int64)
        for r in range(m):
            term *= A[:, r * m + perms[s, r]]
        det += term
    return det % n == 1 % n


def sl_mask(lo: int, hi: int, n: int, m: int) -> np.ndarray:
    """Boolean mask over matrix codes lo..hi-1: True where det == 1 mod n."""
    perms, signs = leibniz_table(m)
    check_int64(hi, len(perms) * (n - 1) ** m)
    fn = _nb_sl_mask if BACKEND == "numba" else _np_sl_mask
    return fn(np.int64(lo), np.int64(hi), np.int64(n), np.int64(m), perms, signs)


def sl_codes(n: int, m: int, chunk: int = CHUNK):
    """Yield ascending int64 arrays of the codes of all det == 1 matrices."""
    total = n ** (m * m)
    for lo in range(0, total, chunk):
        hi = min(total, lo + chunk)
        yield lo + np.flatnonzero(sl_mask(lo, hi, n, m))


# -- action of matrices on all vectors --------------------------------------

@_njit
def _nb_action_table(gens, n, m):
    g = gens.shape[0]
    N = n**m
    table = np.empty((g, N), dtype=np.int64)
    a = np.empty(m, dtype=np.int64)
    for v in range(N):
        x = v
        for i in range(m - 1, -1, -1):
            a[i] = x % n
            x //= n
        for k in range(g):
            code = 0
            for j in range(m):
                s = 0
                for i in range(m):
                    s += a[i] * gens[k, i, j]
                code = code * n + s % n
            table[k, v] = code
    return table


def _np_action_table(gens, n, m):
    V = all_vectors(n, m)
    pw = powers(n, m)
    return np.stack([((V @ G) % n) @ pw for G in gens]).reshape(len(gens), n**m)


def action_table(gens: np.ndarray, n: int, m: int) -> np.ndarray:
    """table[k, v] = code of (vector v) * gens[k] mod n."""
    gens = np.ascontiguousarray(gens, dtype=np.int64).reshape(-1, m, m)
    check_int64(n**m, m * (n - 1) ** 2)
    if gens.shape[0] == 0:
        return np.empty((0, n**m), dtype=np.int64)
    fn = _nb_action_table if BACKEND == "numba" else _np_action_table
    return fn(gens, np.int64(n), np.int64(m))


# -- orbit partition ---------------------------------------------------------

@_njit
def _nb_orbit_labels(table, N):
    labels = np.full(N, -1, dtype=np.int64)
    queue = np.empty(N, dtype=np.int64)
    g = table.shape[0]
    for s in range(N):
        if labels[s] >= 0:
            continue
        labels[s] = s
        head = 0
        tail = 1
        queue[0] = s
        while head < tail:
            v = queue[head]
            head += 1
            for k in range(g):
                w = table[k, v]
                if labels[w] < 0:
                    labels[w] = s
                    queue[tail] = w
                    tail += 1
    return labels


def _np_orbit_labels(table, N):
    labels = np.arange(N, dtype=np.int64)
    while True:
        prev = labels.copy()
        for k in range(table.shape[0]):
            np.minimum.at(labels, table[k], labels)
            labels = np.minimum(labels, labels[table[k]])
        labels = labels[labels]
        if np.array_equal(labels, prev):
            return labels


def orbit_labels(table: np.ndarray, N: int) -> np.ndarray:
    """Block id of every vector: the smallest code in its orbit."""
    fn = _nb_orbit_labels if BACKEND == "numba" else _np_orbit_labels
    return fn(np.ascontiguousarray(table, dtype=np.int64), np.int64(N))


# -- single-source reachability with parent pointers ------------------------

@_njit
def _nb_reach(table, start, N):
    parent = np.full(N, -1, dtype=np.int64)
    via = np.full(N, -1, dtype=np.int64)
    order = np.empty(N, dtype=np.int64)
    seen = np.zeros(N, dtype=np.bool_)
    seen[start] = True
    order[0] = start
    head = 0
    tail = 1
    g = table.shape[0]
    while head < tail:
        v = order[head]
        head += 1
        for k in range(g):
            w = table[k, v]
            if not seen[w]:
                seen[w] = True
                parent[w] = v
                via[w] = k
                order[tail] = w
                tail += 1
    return order[:tail].copy(), parent, via


def _np_reach(table, start, N):
    parent = np.full(N, -1, dtype=np.int64)
    via = np.full(N, -1, dtype=np.int64)
    seen = np.zeros(N, dtype=bool)
    seen[start] = True
    frontier = np.array([start], dtype=np.int64)
    levels = [frontier]
    g = table.shape[0]
    while frontier.size and g:
        # discovery order of a FIFO queue: parent-major, then generator
        cand = table[:, frontier].T.reshape(-1)
        src = np.repeat(frontier, g)
        gen = np.tile(np.arange(g, dtype=np.int64), frontier.size)
        fresh = ~seen[cand]
        cand, src, gen = cand[fresh], src[fresh], gen[fresh]
        uniq, first = np.unique(cand, return_index=True)
        first = np.sort(first)
        frontier = cand[first]
        seen[frontier] = True
        parent[frontier] = src[first]
        via[frontier] = gen[first]
        levels.append(frontier)
    return np.concatenate(levels), parent, via


def reach(table: np.ndarray, start: int, N: int):
    """BFS from `start`. Returns (visit order, parent code, generator index)."""
    fn = _nb_reach if BACKEND == "numba" else _np_reach
    return fn(np.ascontiguousarray(table, dtype=np.int64), np.int64(start), np.int64(N))


# -- closure of a matrix set under multiplication ---------------------------

@_njit
def _nb_closure(gens, n, m, total):
    mm = m * m
    g = gens.shape[0]
    seen = np.zeros(total, dtype=np.bool_)
    queue = np.empty(1024, dtype=np.int64)
    head = 0
    tail = 0
    for k in range(g):
        code = 0
        for e in range(mm):
            code = code * n + gens[k].ravel()[e]
        if not seen[code]:
            seen[code] = True
            queue[tail] = code
            tail += 1
    F = np.empty(mm, dtype=np.int64)
    # row-times-column sums are < m n^2; table lookup beats int64 %
    modtab = np.arange(m * (n - 1) * (n - 1) + 1, dtype=np.int64) % n
    while head < tail:
        x = queue[head]
        head += 1
        for e in range(mm - 1, -1, -1):
            F[e] = x % n
            x //= n
        for k in range(g):
            code = 0
            for i in range(m):
                for j in range(m):
                    s = 0
                    for r in range(m):
                        s += F[i * m + r] * gens[k, r, j]
                    code = code * n + modtab[s]
            if not seen[code]:
                seen[code] = True
                if tail == queue.shape[0]:
                    bigger = np.empty(2 * tail, dtype=np.int64)
                    bigger[:tail] = queue[:tail]
                    queue = bigger
                queue[tail] = code
                tail += 1
    return np.flatnonzero(seen).astype(np.int64)


def _np_closure(gens, n, m, total):
    seen = np.unique(encode(gens.reshape(len(gens), m * m), n))
    frontier = seen
    while frontier.size:
        new = []
        for lo in range(0, frontier.size, CHUNK):
            F = decode(frontier[lo:lo + CHUNK], n, m * m).reshape(-1, m, m)
            for G in gens:
                new.append(encode(((F @ G) % n).reshape(-1, m * m), n))
        cand = np.unique(np.concatenate(new))
        frontier = cand[~np.isin(cand, seen, assume_unique=True)]
        seen = np.union1d(seen, frontier)
    return seen


def closure_codes(gens: np.ndarray, n: int, m: int) -> np.ndarray:
    """Sorted codes of the multiplicative closure of `gens` (matrices mod n).

    numba walks a visited bitmap over all n^(m^2) codes; numpy expands
    whole BFS frontiers with batched matmuls.
    """
    gens = np.ascontiguousarray(np.asarray(gens, dtype=np.int64).reshape(-1, m, m) % n)
    total = n ** (m * m)
    check_int64(total, m * (n - 1) ** 2)
    if gens.shape[0] == 0:
        return np.empty(0, dtype=np.int64)
    fn = _nb_closure if BACKEND == "numba" else _np_closure
    return fn(gens, np.int64(n), np.int64(m), np.int64(total))
