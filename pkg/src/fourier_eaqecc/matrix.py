"""Dense matrices over a finite field.

A :class:`MatrixGF` is an immutable ``(rows, cols)`` array of canonical
field values tagged with its :class:`~fourier_eaqecc.finite_field.FieldSpec`.
Rows of a Fourier matrix are written ``e_i`` and columns of its conjugate
``f_j``; both are plain 1-D integer arrays.
"""

from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np

from .errors import DuplicatePoints, FieldMismatch, NotPrimitiveRoot, ShapeMismatch, SingularSystem
from .finite_field import FieldElement, FieldSpec, element_order, find_irreducible


@dataclass(frozen=True, eq=False)
class MatrixGF:
    spec: FieldSpec
    data: np.ndarray

    def __post_init__(self):
        arr = np.array(self.data, dtype=np.int64, copy=True)
        if arr.ndim != 2:
            raise ShapeMismatch(f"matrix data must be 2-D, got shape {arr.shape}")
        if arr.size and (arr.min() < 0 or arr.max() >= self.spec.q):
            raise ValueError(f"entries outside [0, {self.spec.q})")
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    def __eq__(self, other):
        if not isinstance(other, MatrixGF):
            return NotImplemented
        return self.spec == other.spec and np.array_equal(self.data, other.data)

    def __getitem__(self, key):
        return self.data[key]

    def __matmul__(self, other: MatrixGF) -> MatrixGF:
        return mat_mul(self, other)

    @property
    def T(self) -> MatrixGF:
        return transpose(self)

    def is_zero(self) -> bool:
        return not self.data.any()

    def tolist(self) -> list[list[int]]:
        return self.data.tolist()

    def __repr__(self):
        return f"MatrixGF({self.spec}, {self.rows}x{self.cols})"


def zeros(spec: FieldSpec, rows: int, cols: int) -> MatrixGF:
    return MatrixGF(spec, np.zeros((rows, cols), dtype=np.int64))


def identity(spec: FieldSpec, n: int, scale: int = 1) -> MatrixGF:
    return MatrixGF(spec, np.eye(n, dtype=np.int64) * spec.scalar(scale))


@dataclass(frozen=True, eq=False)
class FourierPair:
    """``forward[i][j] = omega^(ij)`` and ``star[i][j] = omega^(-(ij))``."""

    n: int
    omega: FieldElement
    forward: MatrixGF
    star: MatrixGF

    @property
    def spec(self) -> FieldSpec:
        return self.omega.spec

    def e(self, i: int) -> np.ndarray:
        """Row ``e_i`` of the forward matrix; ``i`` is taken mod n."""
        return self.forward.data[i % self.n]

    def f(self, j: int) -> np.ndarray:
        """Column ``f_j`` of the conjugate matrix; ``j`` is taken mod n."""
        return self.star.data[:, j % self.n]


def fourier(spec: FieldSpec, n: int, omega: FieldElement | int) -> FourierPair:
    if not isinstance(omega, FieldElement):
        omega = FieldElement(spec, int(omega))
    if omega.spec != spec:
        raise FieldMismatch(f"omega lives in {omega.spec}, not {spec}")
    if omega.value == 0 or element_order(omega) != n:
        raise NotPrimitiveRoot(f"{omega} is not a primitive {n}-th root of unity")
    powers = np.array([(omega**k).value for k in range(n)], dtype=np.int64)
    idx = np.arange(n)
    exps = np.outer(idx, idx) % n
    forward = MatrixGF(spec, powers[exps])
    star = MatrixGF(spec, powers[(-exps) % n])
    return FourierPair(n, omega, forward, star)


def vandermonde(spec: FieldSpec, points) -> MatrixGF:
    """Square matrix with ``entry[i][j] = points[i]**j``."""
    vals = [int(x) for x in points]
    if len(set(vals)) != len(vals):
        raise DuplicatePoints("Vandermonde points must be pairwise distinct")
    n = len(vals)
    out = np.ones((n, n), dtype=np.int64)
    x = np.array(vals, dtype=np.int64)
    for j in range(1, n):
        out[:, j] = spec.mul(out[:, j - 1], x)
    return MatrixGF(spec, out)


def _check_spec(a: MatrixGF, b: MatrixGF):
    if a.spec != b.spec:
        raise ShapeMismatch(f"field mismatch: {a.spec} vs {b.spec}")


def mat_mul(a: MatrixGF, b: MatrixGF) -> MatrixGF:
    _check_spec(a, b)
    if a.cols != b.rows:
        raise ShapeMismatch(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    return MatrixGF(a.spec, _matmul_raw(a.spec, a.data, b.data))


def _matmul_raw(spec: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if spec.m == 1:
        # entries < 2^20 so each partial sum stays well inside int64
        out = np.zeros(a.shape[:-1] + b.shape[-1:], dtype=np.int64)
        chunk = max(1, (2**62) // max(1, (spec.p - 1) ** 2))
        for s in range(0, a.shape[-1], chunk):
            out = (out + a[..., s : s + chunk] @ b[..., s : s + chunk, :]) % spec.p
        return out
    out = np.zeros(a.shape[:-1] + b.shape[-1:], dtype=np.int64)
    for k in range(a.shape[-1]):
        out = spec.add(out, spec.mul(a[..., k, None], b[..., k, None, :]))
    return out


def mat_add(a: MatrixGF, b: MatrixGF) -> MatrixGF:
    _check_spec(a, b)
    if a.shape != b.shape:
        raise ShapeMismatch(f"cannot add {a.shape} and {b.shape}")
    return MatrixGF(a.spec, a.spec.add(a.data, b.data))


def scale(a: MatrixGF, s: int) -> MatrixGF:
    return MatrixGF(a.spec, a.spec.mul(a.data, int(s)))


def transpose(m: MatrixGF) -> MatrixGF:
    return MatrixGF(m.spec, m.data.T)


def row(m: MatrixGF, i: int) -> np.ndarray:
    if not -m.rows <= i < m.rows:
        raise IndexError(f"row {i} out of range for {m.rows} rows")
    return m.data[i]


def col(m: MatrixGF, j: int) -> np.ndarray:
    if not -m.cols <= j < m.cols:
        raise IndexError(f"column {j} out of range for {m.cols} columns")
    return m.data[:, j]


def submatrix_rows(m: MatrixGF, indices) -> MatrixGF:
    idx = [int(i) for i in indices]
    for i in idx:
        if not 0 <= i < m.rows:
            raise IndexError(f"row {i} out of range for {m.rows} rows")
    return MatrixGF(m.spec, m.data[idx].reshape(len(idx), m.cols))


def submatrix_cols(m: MatrixGF, indices) -> MatrixGF:
    idx = [int(j) for j in indices]
    for j in idx:
        if not 0 <= j < m.cols:
            raise IndexError(f"column {j} out of range for {m.cols} columns")
    return MatrixGF(m.spec, m.data[:, idx].reshape(m.rows, len(idx)))


def dot(spec: FieldSpec, u, v) -> int:
    u = np.asarray(u, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64)
    return int(_matmul_raw(spec, u[None, :], v[:, None])[0, 0])


# -- elimination ------------------------------------------------------------


def row_echelon(spec: FieldSpec, data: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form and pivot columns.

    Pivots are the first nonzero entry found scanning each column top to bottom.
    """
    a = np.array(data, dtype=np.int64, copy=True)
    nrows, ncols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = spec.mul(a[r], spec.inv(a[r, c]))
        factors = a[:, c].copy()
        factors[r] = 0
        if factors.any():
            a = spec.sub(a, spec.mul(factors[:, None], a[r][None, :]))
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m: MatrixGF) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    return len(row_echelon(m.spec, m.data)[1])


def inverse(m: MatrixGF) -> MatrixGF:
    if m.rows != m.cols:
        raise ShapeMismatch("only square matrices are invertible")
    return MatrixGF(m.spec, _inverse_raw(m.spec, m.data))


def _inverse_raw(spec: FieldSpec, a: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    aug = np.concatenate([a, np.eye(n, dtype=np.int64)], axis=1)
    red, pivots = row_echelon(spec, aug)
    if pivots[:n] != list(range(n)):
        raise SingularSystem("matrix is singular")
    return red[:, n:]


def determinant(m: MatrixGF) -> int:
    """Determinant by elimination (tracks swaps and pivot scalings)."""
    if m.rows != m.cols:
        raise ShapeMismatch("determinant needs a square matrix")
    spec = m.spec
    a = np.array(m.data, copy=True)
    n = a.shape[0]
    det = 1
    for c in range(n):
        nz = np.nonzero(a[c:, c])[0]
        if nz.size == 0:
            return 0
        piv = c + int(nz[0])
        if piv != c:
            a[[c, piv]] = a[[piv, c]]
            det = int(spec.neg(det))
        det = int(spec.mul(det, a[c, c]))
        inv = spec.inv(a[c, c])
        factors = spec.mul(a[c + 1 :, c], inv)
        a[c + 1 :] = spec.sub(a[c + 1 :], spec.mul(factors[:, None], a[c][None, :]))
    return det


def nullspace(m: MatrixGF) -> MatrixGF:
    """Basis (as rows) of ``{x : m x^T = 0}``."""
    spec = m.spec
    ncols = m.cols
    if m.rows == 0:
        return identity(spec, ncols)
    red, pivots = row_echelon(spec, m.data)
    free = [c for c in range(ncols) if c not in pivots]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for t, fc in enumerate(free):
        basis[t, fc] = 1
        for r, pc in enumerate(pivots):
            basis[t, pc] = int(spec.neg(red[r, fc]))
    return MatrixGF(spec, basis)


def batched_nonsingular(spec: FieldSpec, mats: np.ndarray) -> np.ndarray:
    """For a stack of square matrices ``(B, k, k)``, flag which are invertible."""
    a = np.array(mats, dtype=np.int64, copy=True)
    nb, k, _ = a.shape
    alive = np.ones(nb, dtype=bool)
    idx = np.arange(nb)
    for c in range(k):
        nz = a[:, c:, c] != 0
        has = nz.any(axis=1)
        alive &= has
        if not alive.any():
            break
        piv = c + np.argmax(nz, axis=1)
        top = a[idx, c].copy()
        a[idx, c] = a[idx, piv]
        a[idx, piv] = top
        pv = a[:, c, c]
        pv = np.where(pv == 0, 1, pv)
        if c + 1 < k:
            factors = spec.mul(a[:, c + 1 :, c], spec.inv(pv)[:, None])
            a[:, c + 1 :, c:] = spec.sub(a[:, c + 1 :, c:], spec.mul(factors[:, :, None], a[:, c, None, c:]))
    return alive


# -- text dump format -------------------------------------------------------


def dumps(m: MatrixGF) -> str:
    """Header ``rows cols p m`` then one space-separated line per row."""
    buf = io.StringIO()
    buf.write(f"{m.rows} {m.cols} {m.spec.p} {m.spec.m}\n")
    for r in m.data:
        buf.write(" ".join(str(int(v)) for v in r))
        buf.write("\n")
    return buf.getvalue()


def loads(text: str, modulus=None) -> MatrixGF:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty matrix dump")
    head = lines[0].split()
    if len(head) != 4:
        raise ValueError(f"bad matrix header {lines[0]!r}")
    nrows, ncols, p, m = (int(x) for x in head)
    if len(lines) - 1 != nrows:
        raise ValueError(f"expected {nrows} rows, found {len(lines) - 1}")
    spec = FieldSpec(p, m, tuple(modulus) if modulus and m > 1 else tuple(find_irreducible(p, m)))
    data = np.array([[int(v) for v in ln.split()] for ln in lines[1:]], dtype=np.int64).reshape(nrows, ncols)
    if any(len(ln.split()) != ncols for ln in lines[1:]):
        raise ValueError("ragged matrix dump")
    return MatrixGF(spec, data)
