"""Classical linear codes cut out of Fourier and Vandermonde matrices.

Row windows of a Fourier matrix are cyclic (``e_n == e_0``); windows of a
Vandermonde matrix are not.  Besides encoding and erasure decoding the
module carries two independent distance oracles, exhaustive enumeration
and the all-``k``-minors test, used to check MDS claims at desk scale.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    BadDimension,
    BadStep,
    ShapeMismatch,
    SingularSystem,
    TooLarge,
    TooManyErasures,
    ZeroEvaluationPoint,
)
from .finite_field import FieldSpec
from .matrix import FourierPair, MatrixGF, _matmul_raw, batched_nonsingular, nullspace, rank, row_echelon

DISTANCE_BUDGET = 2**20
MINOR_BUDGET = 10**6
ERASED = -1

_CHUNK = 2**15


@dataclass(frozen=True, eq=False)
class LinearCode:
    """An ``[n, k]`` code over ``spec`` given by a ``k x n`` generator.

    ``row_indices`` records which rows of the source matrix span the code
    (for a Vandermonde source they index powers, see
    :func:`code_from_consecutive_rows`).
    """

    spec: FieldSpec
    generator: MatrixGF
    source: str = "explicit"
    row_indices: tuple[int, ...] | None = None
    claimed_distance: int | None = None
    fourier: FourierPair | None = None

    @property
    def n(self) -> int:
        return self.generator.cols

    @property
    def k(self) -> int:
        return self.generator.rows

    def descriptor(self) -> dict:
        return {
            "field": self.spec.to_json(),
            "n": self.n,
            "k": self.k,
            "source": self.source,
            "row_indices": list(self.row_indices) if self.row_indices is not None else None,
            "claimed_distance": self.claimed_distance,
        }

    def __repr__(self):
        d = self.claimed_distance if self.claimed_distance is not None else "?"
        return f"LinearCode([{self.n},{self.k},{d}] over {self.spec}, source={self.source})"


@dataclass(frozen=True, eq=False)
class CheckMatrix:
    """``(n-k) x n`` matrix whose row space is the dual of the code.

    For Fourier codes ``complement`` lists the row indices outside the
    code, in the order their ``f`` columns appear in ``matrix.T``.
    """

    matrix: MatrixGF
    complement: tuple[int, ...] | None = None


def explicit_code(generator: MatrixGF, claimed_distance: int | None = None) -> LinearCode:
    return LinearCode(generator.spec, generator, "explicit", None, claimed_distance)


def code_from_consecutive_rows(src: FourierPair | MatrixGF, start: int, r: int) -> LinearCode:
    """Code spanned by ``r`` consecutive rows of a Fourier or Vandermonde matrix.

    For a Fourier pair the window wraps around.  A Vandermonde matrix
    ``V[i][j] = x_i**j`` is read in its power orientation: the code is
    spanned by rows ``start .. start+r-1`` of ``V.T``, i.e. the vectors
    ``(x_1**s, ..., x_n**s)``.  Windows with ``start > 0`` need nonzero
    points, and windows may not run past the last power.
    """
    if isinstance(src, FourierPair):
        n = src.n
        if not 1 <= r <= n:
            raise BadDimension(f"dimension {r} outside 1..{n}")
        rows = tuple((start + j) % n for j in range(r))
        gen = MatrixGF(src.spec, src.forward.data[list(rows)])
        return LinearCode(src.spec, gen, "fourier", rows, n - r + 1, src)
    n = src.rows
    if src.cols != n:
        raise ShapeMismatch("Vandermonde source must be square")
    if not 1 <= r <= n:
        raise BadDimension(f"dimension {r} outside 1..{n}")
    if start < 0 or start + r > n:
        raise IndexError(f"window {start}..{start + r - 1} does not fit in {n} Vandermonde rows")
    points = src.data[:, 1] if n > 1 else np.ones(1, dtype=np.int64)
    if start > 0 and np.any(points == 0):
        raise ZeroEvaluationPoint("a zero evaluation point kills every power window with start > 0")
    rows = tuple(range(start, start + r))
    gen = MatrixGF(src.spec, src.data.T[list(rows)])
    return LinearCode(src.spec, gen, "vandermonde", rows, n - r + 1)


def code_from_arithmetic_rows(fp: FourierPair, start: int, step: int, r: int) -> LinearCode:
    """Code spanned by rows ``start + j*step (mod n)``, ``0 <= j < r``."""
    n = fp.n
    if math.gcd(n, step) != 1:
        raise BadStep(f"gcd({n}, {step}) != 1")
    if not 1 <= r <= n:
        raise BadDimension(f"dimension {r} outside 1..{n}")
    rows = tuple((start + j * step) % n for j in range(r))
    gen = MatrixGF(fp.spec, fp.forward.data[list(rows)])
    return LinearCode(fp.spec, gen, "fourier", rows, n - r + 1, fp)


def check_matrix(code: LinearCode, order=None) -> CheckMatrix:
    """Check matrix of ``code``.

    Fourier codes with row set ``S`` get the exact construction: the
    columns of ``H.T`` are ``f_i`` for ``i`` outside ``S``, taken in
    ``order`` if given, else cyclically from just after the last row of
    ``S``.  Any other code gets a nullspace basis.
    """
    spec = code.spec
    n = code.n
    if code.source == "fourier" and code.fourier is not None and code.row_indices is not None:
        rows = set(code.row_indices)
        if order is None:
            first = (code.row_indices[-1] + 1) % n
            order = [(first + t) % n for t in range(n) if (first + t) % n not in rows]
        else:
            order = [int(i) % n for i in order]
            if sorted(order) != sorted(set(range(n)) - rows):
                raise ValueError("order must enumerate exactly the rows outside the code")
        fp = code.fourier
        data = fp.star.data[:, order].T if order else np.zeros((0, n), dtype=np.int64)
        return CheckMatrix(MatrixGF(spec, data.reshape(len(order), n)), tuple(order))
    if code.k == n:
        return CheckMatrix(MatrixGF(spec, np.zeros((0, n), dtype=np.int64)))
    return CheckMatrix(nullspace(code.generator))


def _as_batch(code: LinearCode, vec, width: int) -> tuple[np.ndarray, bool]:
    arr = np.asarray(vec, dtype=np.int64)
    single = arr.ndim == 1
    arr = arr.reshape(1, -1) if single else arr
    if arr.ndim != 2 or arr.shape[1] != width:
        raise ShapeMismatch(f"expected vectors of length {width}, got shape {np.shape(vec)}")
    return arr, single


def encode(code: LinearCode, message) -> np.ndarray:
    """``message @ generator``; accepts one message or a ``(B, k)`` batch."""
    msg, single = _as_batch(code, message, code.k)
    if msg.size and (msg.min() < 0 or msg.max() >= code.spec.q):
        raise ValueError("message symbols outside the field")
    out = _matmul_raw(code.spec, msg, code.generator.data)
    return out[0] if single else out


def erasure_decode(code: LinearCode, received, erased=None) -> np.ndarray:
    """Recover the message from a word with at most ``n - k`` erasures.

    Erased positions are given by ``erased`` or, when it is None, marked
    with :data:`ERASED` in ``received``.  A ``(B, n)`` batch must share one
    erasure pattern.  The message is solved from ``k`` independent
    surviving columns, which for an MDS code are just the first ``k``.
    """
    spec, n, k = code.spec, code.n, code.k
    words, single = _as_batch(code, received, n)
    if erased is None:
        mask = words == ERASED
        if not (mask == mask[0]).all():
            raise ValueError("batched words must share one erasure pattern")
        erased = np.nonzero(mask[0])[0]
    erased = sorted({int(j) for j in erased})
    if len(erased) > n - k:
        raise TooManyErasures(f"{len(erased)} erasures exceed n-k = {n - k}")
    surv = [j for j in range(n) if j not in set(erased)]
    g = code.generator.data[:, surv]
    s = len(surv)
    aug = np.concatenate([g, np.eye(k, dtype=np.int64)], axis=1)
    red, piv = row_echelon(spec, aug)
    if len(piv) < k or piv[k - 1] >= s:
        raise SingularSystem("surviving columns do not determine the message")
    # red = E @ [g | I], so red[:, s:] = E and the pivot columns of E g are the identity
    transform = red[:, s:]
    y = words[:, surv][:, piv[:k]]
    if y.size and (y.min() < 0 or y.max() >= spec.q):
        raise ValueError("received symbols outside the field")
    msg = _matmul_raw(spec, y, transform)
    return msg[0] if single else msg


def _span_table(spec: FieldSpec, rows: np.ndarray) -> np.ndarray:
    """All ``q**t`` combinations of ``rows``, lexicographic with row 0 most significant."""
    n = rows.shape[1]
    table = np.zeros((1, n), dtype=np.int64)
    scalars = spec.elements()[:, None]
    for g in rows[::-1]:
        multiples = spec.mul(scalars, g[None, :])
        table = spec.add(multiples[:, None, :], table[None, :, :]).reshape(-1, n)
    return table


def _span_chunks(spec: FieldSpec, rows: np.ndarray, offset: np.ndarray | None = None):
    """Yield every vector ``offset + sum(a_i * rows[i])``, in chunks.

    Coefficient tuples run in lexicographic order with ``a_0`` most
    significant; the trailing rows are tabulated once and shifted by each
    combination of the leading ones.
    """
    q = spec.q
    t, n = rows.shape
    inner = 0
    while inner < t and q ** (inner + 1) <= _CHUNK:
        inner += 1
    inner = max(inner, 1) if t else 0
    table = _span_table(spec, rows[t - inner :])
    if offset is not None:
        table = spec.add(table, offset[None, :])
    outer = rows[: t - inner]
    lo = 0
    for coeffs in itertools.product(range(q), repeat=t - inner):
        if outer.shape[0]:
            shift = _matmul_raw(spec, np.array(coeffs, dtype=np.int64)[None, :], outer)[0]
            yield lo, spec.add(table, shift[None, :])
        else:
            yield lo, table
        lo += table.shape[0]


def min_distance_exhaustive(code: LinearCode, budget: int = DISTANCE_BUDGET) -> int:
    """Minimum weight over all nonzero codewords by enumeration.

    Only messages whose leading nonzero symbol is 1 are visited; scaling a
    codeword leaves its weight unchanged.
    """
    q, k = code.spec.q, code.k
    if q**k > budget:
        raise TooLarge(f"q^k = {q}^{k} exceeds budget {budget}")
    g = code.generator.data
    best = code.n + 1
    for lead in range(k):
        for _, words in _span_chunks(code.spec, g[lead + 1 :], g[lead]):
            best = min(best, int(np.count_nonzero(words, axis=1).min()))
    if best == code.n + 1:
        raise ValueError("code has no nonzero codewords")
    return best


def mds_check_minors(code: LinearCode, bound: int = MINOR_BUDGET) -> bool:
    """True iff every ``k x k`` column submatrix of the generator is invertible.

    When ``k > n - k`` the equivalent test on the dual is run instead: a
    nullspace basis is eliminated from the generator and its
    ``(n-k) x (n-k)`` column submatrices are checked.  Both tests visit
    ``C(n, k)`` subsets.
    """
    n, k = code.n, code.k
    if math.comb(n, k) > bound:
        raise TooLarge(f"C({n},{k}) = {math.comb(n, k)} exceeds bound {bound}")
    if rank(code.generator) < k:
        return False
    g = code.generator.data
    if k > n - k:
        g = nullspace(code.generator).data
    return _all_minors_nonsingular(code.spec, g)


def _all_minors_nonsingular(spec: FieldSpec, g: np.ndarray) -> bool:
    s, n = g.shape
    if s == 0:
        return True
    subsets = itertools.combinations(range(n), s)
    step = max(1, 2**18 // (s * s))
    while True:
        block = list(itertools.islice(subsets, step))
        if not block:
            return True
        cols = np.array(block, dtype=np.int64)
        mats = g[:, cols].transpose(1, 0, 2)
        if not batched_nonsingular(spec, mats).all():
            return False


def nearest_codeword_bruteforce(code: LinearCode, word, budget: int = DISTANCE_BUDGET) -> np.ndarray:
    """Codeword closest to ``word`` in Hamming distance.

    Ties go to the lexicographically smallest message.
    """
    q, k, n = code.spec.q, code.k, code.n
    if q**k > budget:
        raise TooLarge(f"q^k = {q}^{k} exceeds budget {budget}")
    w, _ = _as_batch(code, word, n)
    w = w[0]
    best_d, best = n + 1, None
    for _, words in _span_chunks(code.spec, code.generator.data):
        dist = np.count_nonzero(words != w, axis=1)
        i = int(np.argmin(dist))
        if dist[i] < best_d:
            best_d, best = int(dist[i]), words[i].copy()
    return best
