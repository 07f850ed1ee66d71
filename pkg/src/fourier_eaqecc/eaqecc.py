"""Entanglement-assisted quantum codes from pairs of classical codes.

Two length-``n`` codes ``C`` and ``D`` with check matrices ``H`` and ``K``
yield an ``[[n, k1 + k2 - n + c, min(d1, d2); c]]`` code, where the ebit
count is ``c = rank(H K^T)``.  The pair selectors here pick row windows of
one Fourier matrix so that ``c`` comes out as requested; ``c`` is always
recomputed from the product, never taken from a formula.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .classical_codes import (
    DISTANCE_BUDGET,
    MINOR_BUDGET,
    CheckMatrix,
    LinearCode,
    check_matrix,
    code_from_consecutive_rows,
    min_distance_exhaustive,
    mds_check_minors,
)
from .errors import (
    BadDimension,
    BadEntanglement,
    DegenerateCode,
    InternalInconsistency,
    PairMismatch,
    RankCollapse,
    TooLarge,
)
from .matrix import FourierPair, MatrixGF, identity, mat_mul, rank, transpose


def format_fraction(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(s: str) -> Fraction:
    num, sep, den = str(s).partition("/")
    return Fraction(int(num), int(den) if sep else 1)


@dataclass(frozen=True)
class EaqeccParams:
    n: int
    k: int
    d: int
    c: int
    q: int
    rate: Fraction
    net_rate: Fraction
    mds: bool
    catalytic: bool

    @classmethod
    def from_parameters(cls, n: int, k: int, d: int, c: int, q: int) -> EaqeccParams:
        return cls(
            n, k, d, c, q,
            Fraction(k, n),
            Fraction(k - c, n),
            n - k + c == 2 * (d - 1),
            k - c > 0,
        )

    @property
    def t(self) -> int:
        """Number of correctable errors."""
        return (self.d - 1) // 2

    def __str__(self):
        return f"[[{self.n},{self.k},{self.d};{self.c}]]_{self.q}"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "d": self.d,
            "c": self.c,
            "q": self.q,
            "rate": format_fraction(self.rate),
            "net_rate": format_fraction(self.net_rate),
            "mds": self.mds,
            "catalytic": self.catalytic,
        }

    @classmethod
    def from_json(cls, obj: dict) -> EaqeccParams:
        return cls(
            int(obj["n"]), int(obj["k"]), int(obj["d"]), int(obj["c"]), int(obj["q"]),
            parse_fraction(obj["rate"]), parse_fraction(obj["net_rate"]),
            bool(obj["mds"]), bool(obj["catalytic"]),
        )


@dataclass(frozen=True, eq=False)
class CodePair:
    C: LinearCode
    D: LinearCode
    H: CheckMatrix
    K: CheckMatrix
    hk_product: MatrixGF
    c: int
    mode: str = "explicit"

    @property
    def n(self) -> int:
        return self.C.n

    def descriptor(self) -> dict:
        return {"mode": self.mode, "C": self.C.descriptor(), "D": self.D.descriptor(), "c": self.c}


def make_pair(C: LinearCode, D: LinearCode, H: CheckMatrix | None = None, K: CheckMatrix | None = None,
              mode: str = "explicit") -> CodePair:
    if C.n != D.n:
        raise PairMismatch(f"lengths differ: {C.n} vs {D.n}")
    if C.spec != D.spec:
        raise PairMismatch(f"fields differ: {C.spec} vs {D.spec}")
    H = H or check_matrix(C)
    K = K or check_matrix(D)
    hk = mat_mul(H.matrix, transpose(K.matrix))
    return CodePair(C, D, H, K, hk, rank(hk), mode)


@dataclass(frozen=True)
class DistanceCertificate:
    """Distance of a classical code and how it was established.

    ``method`` is ``exhaustive``, ``minors`` or ``claimed`` (both oracles
    over budget; the row-window MDS theorem is taken on trust).
    """

    d: int
    method: str

    @property
    def checked(self) -> bool:
        return self.method != "claimed"


def certify_distance(code: LinearCode, distance_budget: int = DISTANCE_BUDGET,
                     minor_budget: int = MINOR_BUDGET) -> DistanceCertificate:
    q, n, k = code.spec.q, code.n, code.k
    if q**k <= distance_budget:
        d = min_distance_exhaustive(code, budget=distance_budget)
        if code.claimed_distance is not None and d != code.claimed_distance:
            raise InternalInconsistency(f"{code}: enumerated distance {d}")
        return DistanceCertificate(d, "exhaustive")
    if math.comb(n, k) <= minor_budget:
        if not mds_check_minors(code, bound=minor_budget):
            raise InternalInconsistency(f"{code}: generator has a singular {k}x{k} minor")
        if code.claimed_distance not in (None, n - k + 1):
            raise InternalInconsistency(f"{code}: MDS but claimed distance {code.claimed_distance}")
        return DistanceCertificate(n - k + 1, "minors")
    if code.claimed_distance is None:
        raise TooLarge(f"{code}: no claimed distance and both oracles exceed their budgets")
    return DistanceCertificate(code.claimed_distance, "claimed")


def construction1(pair: CodePair, d1: int | None = None, d2: int | None = None, **budgets) -> EaqeccParams:
    """EAQECC parameters from a classical pair.

    Distances not supplied are certified with :func:`certify_distance`.
    """
    C, D = pair.C, pair.D
    if C.n != D.n or C.spec != D.spec:
        raise PairMismatch("codes of a pair must share length and field")
    n = C.n
    c = rank(pair.hk_product)
    k = C.k + D.k - n + c
    if k <= 0:
        raise DegenerateCode(f"k1 + k2 - n + c = {C.k} + {D.k} - {n} + {c} = {k} <= 0")
    if d1 is None:
        d1 = certify_distance(C, **budgets).d
    if d2 is None:
        d2 = certify_distance(D, **budgets).d
    return EaqeccParams.from_parameters(n, k, min(d1, d2), c, C.spec.q)


def max_entanglement_pair(fp: FourierPair, r: int, i: int = 0) -> CodePair:
    """``C = <e_i .. e_{i+r-1}>`` and ``D = <e_{-(i+r-1)} .. e_{-i}>``.

    ``H`` lists ``f`` columns in descending order and ``K`` in ascending
    order so that ``H K^T = n I`` entrywise.
    """
    n = fp.n
    if not 1 <= r <= n:
        raise BadDimension(f"dimension {r} outside 1..{n}")
    if n % fp.spec.p == 0:
        raise RankCollapse(f"characteristic {fp.spec.p} divides n = {n}, so nI = 0")
    C = code_from_consecutive_rows(fp, i, r)
    D = code_from_consecutive_rows(fp, -(i + r - 1), r)
    h_order = [(i + n - 1 - t) % n for t in range(n - r)]
    k_order = [(-i + 1 + t) % n for t in range(n - r)]
    pair = make_pair(C, D, check_matrix(C, h_order), check_matrix(D, k_order), mode="max")
    expected = identity(fp.spec, n - r, n)
    if pair.hk_product != expected or pair.c != n - r:
        raise InternalInconsistency(f"H K^T != {n} I for r={r}, i={i}")
    return pair


def entanglement_c_pair(fp: FourierPair, r: int, c: int) -> CodePair:
    """``C = <e_0 .. e_{r-1}>`` and ``D = <e_{c+1} .. e_{c+r}>`` with ``rank(H K^T) = c``.

    Any two dimension-``r`` codes give ``rank(H K^T) >= n - 2r``, so ``c``
    is accepted in ``max(1, n - 2r) <= c <= n - r``.
    """
    n = fp.n
    if not 1 <= r <= n:
        raise BadDimension(f"dimension {r} outside 1..{n}")
    if not 1 <= c <= n - r:
        raise BadEntanglement(f"c = {c} outside 1..{n - r}")
    if c < n - 2 * r:
        raise BadEntanglement(f"c = {c} is below the rank floor n - 2r = {n - 2 * r} for dimension-{r} codes")
    C = code_from_consecutive_rows(fp, 0, r)
    D = code_from_consecutive_rows(fp, c + 1, r)
    h_order = [(n - 1 - t) % n for t in range(n - r)]
    pair = make_pair(C, D, check_matrix(C, h_order), check_matrix(D), mode="exact")
    if pair.c != c:
        raise InternalInconsistency(f"rank(H K^T) = {pair.c}, requested {c}")
    return pair


def is_mds_eaqecc(p: EaqeccParams) -> bool:
    return p.n - p.k + p.c == 2 * (p.d - 1)


def classify(p: EaqeccParams) -> dict:
    return {
        "params": str(p),
        "rate": format_fraction(p.rate),
        "net_rate": format_fraction(p.net_rate),
        "catalytic": p.net_rate > 0,
        "mds": is_mds_eaqecc(p),
        "t": p.t,
    }


def hk_nonzero_entries(pair: CodePair) -> int:
    return int(np.count_nonzero(pair.hk_product.data))
