"""Hot inner loops: pairwise distance scans, greedy selection, codeword sweeps.

Every kernel exists twice: a numba ``@njit`` loop and a vectorized pure-numpy
fallback.  The active path is chosen per call: numba when importable, unless
``SPHERECODES_NO_NUMBA`` is set to a non-empty value.  Both variants are kept
importable so the test suite and ``benchmarks/bench_kernels.py`` can compare
them directly.
"""

from __future__ import annotations

import os

import numpy as np

ENV_FLAG = "SPHERECODES_NO_NUMBA"

#: greedy selection result buffer cap, in words
GREEDY_CAP = 1 << 21

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba installed
    njit = None
    HAS_NUMBA = False


def backend() -> str:
    """Active kernel backend, ``"numba"`` or ``"numpy"``."""
    if HAS_NUMBA and not os.environ.get(ENV_FLAG):
        return "numba"
    return "numpy"


def _block_rows(m: int, n: int, budget: int = 8_000_000) -> int:
    return max(1, budget // max(1, m * n))


# ---------------------------------------------------------------------------
# numpy fallbacks (vectorized, chunked to bound memory)
# ---------------------------------------------------------------------------


def min_sq_dist_real_numpy(points: np.ndarray) -> float:
    pts = np.ascontiguousarray(points, dtype=np.float64)
    m, dim = pts.shape
    block = _block_rows(m, dim)
    best = np.inf
    for i0 in range(0, m - 1, block):
        blk = pts[i0 : i0 + block]
        tail = pts[i0 + 1 :]
        d = blk[:, None, :] - tail[None, :, :]
        sq = np.einsum("ijk,ijk->ij", d, d)
        rows = np.arange(blk.shape[0])[:, None]
        cols = np.arange(tail.shape[0])[None, :] + i0 + 1
        valid = cols > rows + i0
        if valid.any():
            best = min(best, float(sq[valid].min()))
    return best


def min_dist_words_numpy(words: np.ndarray, table: np.ndarray, q: int) -> int:
    w = np.ascontiguousarray(words, dtype=np.int64)
    m, n = w.shape
    block = _block_rows(m, n)
    best = np.iinfo(np.int64).max
    for i0 in range(0, m - 1, block):
        blk = w[i0 : i0 + block]
        tail = w[i0 + 1 :]
        diff = (blk[:, None, :] - tail[None, :, :]) % q
        sq = table[diff].sum(axis=2)
        rows = np.arange(blk.shape[0])[:, None]
        cols = np.arange(tail.shape[0])[None, :] + i0 + 1
        valid = cols > rows + i0
        if valid.any():
            best = min(best, int(sq[valid].min()))
    return int(best)


def _digits_chunk(start: int, count: int, q: int, n: int) -> np.ndarray:
    """Words ``start .. start+count`` in lexicographic order, leftmost digit
    most significant."""
    idx = np.arange(start, start + count, dtype=np.int64)
    out = np.empty((count, n), dtype=np.int64)
    for j in range(n - 1, -1, -1):
        out[:, j] = idx % q
        idx //= q
    return out


def greedy_lex_numpy(q: int, n: int, d: int, table: np.ndarray) -> np.ndarray:
    total = q**n
    if d <= 1:
        return _digits_chunk(0, total, q, n)
    cap = min(total, GREEDY_CAP)
    kept = np.zeros((cap, n), dtype=np.int64)
    nkept = 1  # zero word is first in lex order, always kept
    chunk = 4096
    for start in range(0, total, chunk):
        cands = _digits_chunk(start, min(chunk, total - start), q, n)
        first = 1 if start == 0 else 0
        for row in cands[first:]:
            diff = (row[None, :] - kept[:nkept]) % q
            if int(table[diff].sum(axis=1).min()) >= d:
                if nkept >= cap:
                    raise RuntimeError(
                        "greedy selection exceeded the result buffer cap; "
                        "reduce q**n or raise d"
                    )
                kept[nkept] = row
                nkept += 1
    return kept[:nkept].copy()


def cyclic_min_weights_numpy(
    g: np.ndarray, k: int, n: int, p: int, lee_table: np.ndarray, we_table: np.ndarray
) -> tuple[int, int]:
    """Exhaustive minimum Lee / Euclidean weight over the nonzero codewords of
    the cyclic code generated by g (degree n-k), via chunked encode."""
    gen = np.zeros((k, n), dtype=np.int64)
    deg = g.size - 1
    for i in range(k):
        gen[i, i : i + deg + 1] = g
    total = p**k
    chunk = 1 << 17
    big = np.iinfo(np.int64).max
    best_lee, best_we = big, big
    for start in range(0, total, chunk):
        count = min(chunk, total - start)
        msgs = _digits_chunk(start, count, p, k)
        cw = (msgs @ gen) % p
        lee = lee_table[cw].sum(axis=1)
        we = we_table[cw].sum(axis=1)
        if start == 0:
            lee[0] = big
            we[0] = big
        best_lee = min(best_lee, int(lee.min()))
        best_we = min(best_we, int(we.min()))
    return int(best_lee), int(best_we)


# ---------------------------------------------------------------------------
# numba kernels
# ---------------------------------------------------------------------------

if HAS_NUMBA:

    @njit(cache=True)
    def _min_sq_dist_real_jit(pts):
        m, dim = pts.shape
        best = np.inf
        for i in range(m - 1):
            for j in range(i + 1, m):
                acc = 0.0
                for t in range(dim):
                    dlt = pts[i, t] - pts[j, t]
                    acc += dlt * dlt
                if acc < best:
                    best = acc
        return best

    @njit(cache=True)
    def _min_dist_words_jit(words, table, q):
        m, n = words.shape
        best = np.int64(1) << 62
        for i in range(m - 1):
            for j in range(i + 1, m):
                acc = np.int64(0)
                for t in range(n):
                    dlt = words[i, t] - words[j, t]
                    if dlt < 0:
                        dlt += q
                    acc += table[dlt]
                    if acc >= best:
                        break
                if acc < best:
                    best = acc
        return best

    @njit(cache=True)
    def _greedy_lex_jit(q, n, d, table, total, kept):
        cap = kept.shape[0]
        nkept = 1  # zero word already in row 0
        cand = np.zeros(n, dtype=np.int64)
        for _ in range(total - 1):
            j = n - 1
            while True:
                cand[j] += 1
                if cand[j] < q:
                    break
                cand[j] = 0
                j -= 1
            ok = True
            for i in range(nkept):
                acc = np.int64(0)
                for t in range(n):
                    dlt = cand[t] - kept[i, t]
                    if dlt < 0:
                        dlt += q
                    acc += table[dlt]
                    if acc >= d:
                        break
                if acc < d:
                    ok = False
                    break
            if ok:
                if nkept >= cap:
                    return -1
                for t in range(n):
                    kept[nkept, t] = cand[t]
                nkept += 1
        return nkept

    @njit(cache=True)
    def _cyclic_min_weights_jit(g, k, n, p, lee_table, we_table):
        deg = g.size - 1
        cw = np.zeros(n, dtype=np.int64)
        digits = np.zeros(k, dtype=np.int64)
        lee_sum = np.int64(0)
        we_sum = np.int64(0)
        best_lee = np.int64(1) << 62
        best_we = np.int64(1) << 62
        total = np.int64(1)
        for _ in range(k):
            total *= p
        for _ in range(total - 1):
            # odometer step: each digit increment adds one shifted copy of g
            i = 0
            while True:
                for t in range(deg + 1):
                    pos = i + t
                    old = cw[pos]
                    new = old + g[t]
                    if new >= p:
                        new -= p
                    cw[pos] = new
                    lee_sum += lee_table[new] - lee_table[old]
                    we_sum += we_table[new] - we_table[old]
                digits[i] += 1
                if digits[i] < p:
                    break
                digits[i] = 0
                i += 1
            if lee_sum < best_lee:
                best_lee = lee_sum
            if we_sum < best_we:
                best_we = we_sum
        return best_lee, best_we

    def min_sq_dist_real_numba(points: np.ndarray) -> float:
        return float(_min_sq_dist_real_jit(np.ascontiguousarray(points, dtype=np.float64)))

    def min_dist_words_numba(words: np.ndarray, table: np.ndarray, q: int) -> int:
        return int(
            _min_dist_words_jit(
                np.ascontiguousarray(words, dtype=np.int64),
                np.ascontiguousarray(table, dtype=np.int64),
                np.int64(q),
            )
        )

    def greedy_lex_numba(q: int, n: int, d: int, table: np.ndarray) -> np.ndarray:
        total = q**n
        if d <= 1:
            return _digits_chunk(0, total, q, n)
        cap = min(total, GREEDY_CAP)
        kept = np.zeros((cap, n), dtype=np.int64)
        nkept = _greedy_lex_jit(
            np.int64(q),
            np.int64(n),
            np.int64(d),
            np.ascontiguousarray(table, dtype=np.int64),
            np.int64(total),
            kept,
        )
        if nkept < 0:
            raise RuntimeError(
                "greedy selection exceeded the result buffer cap; "
                "reduce q**n or raise d"
            )
        return kept[:nkept].copy()

    def cyclic_min_weights_numba(g, k, n, p, lee_table, we_table):
        lee, we = _cyclic_min_weights_jit(
            np.ascontiguousarray(g, dtype=np.int64),
            np.int64(k),
            np.int64(n),
            np.int64(p),
            np.ascontiguousarray(lee_table, dtype=np.int64),
            np.ascontiguousarray(we_table, dtype=np.int64),
        )
        return int(lee), int(we)

else:  # pragma: no cover
    min_sq_dist_real_numba = None
    min_dist_words_numba = None
    greedy_lex_numba = None
    cyclic_min_weights_numba = None


IMPLEMENTATIONS = {
    "numpy": {
        "min_sq_dist_real": min_sq_dist_real_numpy,
        "min_dist_words": min_dist_words_numpy,
        "greedy_lex": greedy_lex_numpy,
        "cyclic_min_weights": cyclic_min_weights_numpy,
    },
    "numba": None
    if not HAS_NUMBA
    else {
        "min_sq_dist_real": min_sq_dist_real_numba,
        "min_dist_words": min_dist_words_numba,
        "greedy_lex": greedy_lex_numba,
        "cyclic_min_weights": cyclic_min_weights_numba,
    },
}


def _impl(name: str):
    return IMPLEMENTATIONS[backend()][name]


def min_sq_dist_real(points: np.ndarray) -> float:
    """Minimum pairwise squared Euclidean distance over rows (>= 2 rows)."""
    return _impl("min_sq_dist_real")(points)


def min_dist_words(words: np.ndarray, table: np.ndarray, q: int) -> int:
    """Minimum pairwise difference weight over word rows, per-residue ``table``."""
    return _impl("min_dist_words")(words, table, q)


def greedy_lex(q: int, n: int, d: int, table: np.ndarray) -> np.ndarray:
    """Greedy lexicographic selection of words at pairwise weight >= d."""
    return _impl("greedy_lex")(q, n, d, table)


def cyclic_min_weights(g, k, n, p, lee_table, we_table) -> tuple[int, int]:
    """Exhaustive (min Lee, min Euclid) weight over nonzero codewords of the
    cyclic code with generator polynomial coefficients ``g`` (ascending)."""
    return _impl("cyclic_min_weights")(g, k, n, p, lee_table, we_table)
