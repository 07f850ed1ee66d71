"""Recompute every claim about a Fourier matrix, code, or code pair from scratch."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .classical_codes import (
    DISTANCE_BUDGET,
    MINOR_BUDGET,
    CheckMatrix,
    LinearCode,
    check_matrix,
    mds_check_minors,
    min_distance_exhaustive,
)
from .eaqecc import CodePair, EaqeccParams, format_fraction
from .matrix import FourierPair, MatrixGF, _matmul_raw, identity, mat_mul, rank, transpose

PAIRWISE_SAMPLE_THRESHOLD = 64
PAIRWISE_SAMPLES = 64


@dataclass
class Check:
    name: str
    status: str
    details: str = ""
    reason: str | None = None

    def to_json(self) -> dict:
        out = {"name": self.name, "status": self.status, "details": self.details}
        if self.reason is not None:
            out["reason"] = self.reason
        return out


@dataclass
class VerificationReport:
    subject: str
    checks: list[Check] = field(default_factory=list)

    @property
    def overall(self) -> bool:
        return all(c.status == "pass" for c in self.checks if c.status != "skipped")

    def add(self, name: str, ok: bool, details: str = "") -> None:
        self.checks.append(Check(name, "pass" if ok else "fail", details))

    def skip(self, name: str, reason: str, details: str = "") -> None:
        self.checks.append(Check(name, "skipped", details, reason))

    def extend(self, other: VerificationReport, prefix: str) -> None:
        for c in other.checks:
            self.checks.append(Check(f"{prefix}.{c.name}", c.status, c.details, c.reason))

    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.status == "fail"]

    def to_json(self) -> dict:
        return {
            "subject": self.subject,
            "checks": [c.to_json() for c in self.checks],
            "overall": self.overall,
        }


def verify_fourier(fp: FourierPair, seed: int = 0) -> VerificationReport:
    spec, n = fp.spec, fp.n
    rep = VerificationReport(f"F_{n} over {spec}")
    prod = mat_mul(fp.forward, fp.star)
    rep.add("forward_star_is_nI", prod == identity(spec, n, n), f"F F* vs {n % spec.p}*I_{n}")

    if n > PAIRWISE_SAMPLE_THRESHOLD:
        rng = random.Random(seed)
        pairs = [(rng.randrange(n), rng.randrange(n)) for _ in range(PAIRWISE_SAMPLES)]
        scope = f"{PAIRWISE_SAMPLES} sampled pairs (seed {seed})"
    else:
        pairs = [(i, j) for i in range(n) for j in range(n)]
        scope = f"all {n * n} pairs"
    bad = []
    nval = spec.scalar(n)
    for i, j in pairs:
        e_i = fp.forward.data[i]
        f_j = fp.star.data[:, j]
        got = int(_matmul_raw(spec, e_i[None, :], f_j[:, None])[0, 0])
        if got != (nval if i == j else 0):
            bad.append((i, j))
    rep.add("e_i_dot_f_j_is_n_delta", not bad, scope + (f"; failing {bad[:5]}" if bad else ""))

    bad_f = [i for i in range(n) if not np.array_equal(fp.star.data[:, i], fp.forward.data[(n - i) % n])]
    rep.add("f_i_is_e_minus_i", not bad_f, f"checked all {n} columns" + (f"; failing {bad_f[:5]}" if bad_f else ""))
    return rep


def verify_code(code: LinearCode, check: CheckMatrix | None = None, distance_budget: int = DISTANCE_BUDGET,
                minor_budget: int = MINOR_BUDGET, check_distance: bool = True) -> VerificationReport:
    q, n, k = code.spec.q, code.n, code.k
    rep = VerificationReport(f"[{n},{k}] {code.source} code over {code.spec}")
    g_rank = rank(code.generator)
    rep.add("generator_rank", g_rank == k, f"rank {g_rank}, k {k}")
    h = (check or check_matrix(code)).matrix
    if h.rows:
        prod = mat_mul(h, transpose(code.generator))
        rep.add("check_annihilates_generator", prod.is_zero(), f"H G^T is {h.rows}x{k}")
    else:
        rep.add("check_annihilates_generator", k == n, "empty check matrix")
    h_rank = rank(h)
    rep.add("check_rank", h_rank == n - k, f"rank {h_rank}, n-k {n - k}")

    claimed = code.claimed_distance
    if not check_distance:
        rep.skip("distance", "disabled")
    elif q**k <= distance_budget:
        d = min_distance_exhaustive(code, budget=distance_budget)
        expected = claimed if claimed is not None else n - k + 1
        rep.add("distance", d == expected, f"exhaustive d={d}, singleton n-k+1={n - k + 1}, claimed={claimed}")
    elif math.comb(n, k) <= minor_budget:
        ok = mds_check_minors(code, bound=minor_budget)
        ok = ok and (claimed is None or claimed == n - k + 1)
        rep.add("distance", ok, f"minors over {math.comb(n, k)} column subsets, claimed={claimed}")
    else:
        rep.skip(
            "distance",
            "budget_exceeded",
            f"q^k={q}^{k} > {distance_budget} and C({n},{k})={math.comb(n, k)} > {minor_budget}",
        )
    return rep


def verify_eaqecc(pair: CodePair, params: EaqeccParams, distance_budget: int = DISTANCE_BUDGET,
                  minor_budget: int = MINOR_BUDGET, check_distance: bool = True) -> VerificationReport:
    """Recompute ``c``, ``k``, ``d`` and every derived flag, comparing to ``params``."""
    C, D = pair.C, pair.D
    n = C.n
    rep = VerificationReport(f"{params} pair")
    rep.add("same_length_and_field", C.n == D.n == params.n and C.spec == D.spec and C.spec.q == params.q,
            f"n={C.n}/{D.n}/{params.n}, q={C.spec.q}/{params.q}")
    hk = mat_mul(pair.H.matrix, transpose(pair.K.matrix))
    c = rank(hk)
    rep.add("hk_rank_matches_c", c == params.c, f"rank(H K^T)={c}, claimed c={params.c}")
    k = C.k + D.k - n + c
    rep.add("logical_dimension", k == params.k, f"k1+k2-n+c={k}, claimed k={params.k}")

    rep_c = verify_code(C, pair.H, distance_budget, minor_budget, check_distance)
    rep_d = verify_code(D, pair.K, distance_budget, minor_budget, check_distance)
    rep.extend(rep_c, "C")
    rep.extend(rep_d, "D")
    d_claims = [x.claimed_distance if x.claimed_distance is not None else x.n - x.k + 1 for x in (C, D)]
    d = min(d_claims)
    rep.add("distance", d == params.d, f"min(d1,d2)={d}, claimed d={params.d}")

    rep.add("rate", params.rate == Fraction(k, n), f"rate {format_fraction(params.rate)}, k/n={k}/{n}")
    rep.add("net_rate", params.net_rate == Fraction(k - c, n),
            f"net rate {format_fraction(params.net_rate)}, (k-c)/n=({k}-{c})/{n}")
    mds = n - k + c == 2 * (d - 1)
    rep.add("mds_flag", mds == params.mds, f"n-k+c={n - k + c}, 2(d-1)={2 * (d - 1)}, flag {params.mds}")
    cat = k - c > 0
    rep.add("catalytic_flag", cat == params.catalytic, f"net rate positive: {cat}, flag {params.catalytic}")

    if pair.mode == "max":
        r = max(C.k, D.k)
        target = identity(C.spec, n - r, n)
        rep.add("hk_is_nI", hk == target, f"H K^T vs {n}*I_{n - r} entrywise")
    return rep


def verify_matrices(gen_c: MatrixGF, gen_d: MatrixGF, h: MatrixGF, k_mat: MatrixGF, params: EaqeccParams,
                    mode: str = "explicit", distance_budget: int = DISTANCE_BUDGET,
                    minor_budget: int = MINOR_BUDGET) -> VerificationReport:
    """Verify a pair given only its four matrices, as read back from a build directory.

    Distances are taken from the Singleton bound and checked by the oracles.
    """
    C = LinearCode(gen_c.spec, gen_c, "explicit", None, gen_c.cols - gen_c.rows + 1)
    D = LinearCode(gen_d.spec, gen_d, "explicit", None, gen_d.cols - gen_d.rows + 1)
    hk = mat_mul(h, transpose(k_mat))
    pair = CodePair(C, D, CheckMatrix(h), CheckMatrix(k_mat), hk, rank(hk), mode)
    return verify_eaqecc(pair, params, distance_budget, minor_budget)
