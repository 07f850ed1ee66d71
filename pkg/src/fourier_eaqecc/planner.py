"""Plan an MDS EAQECC from a required rate and error-correcting capability.

For a rate ``R = p/q`` and distance ``d`` the length is forced by
``n - r = d - 1``, i.e. ``n = (d - 1) / (1 - R)``.  The planner
walks the admissible ``d`` upwards, picks a field holding a primitive
``n``-th root of unity, selects the row windows and then executes the
plan so that the recorded parameters are recomputed, not assumed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .classical_codes import DISTANCE_BUDGET, MINOR_BUDGET
from .eaqecc import (
    CodePair,
    EaqeccParams,
    certify_distance,
    construction1,
    entanglement_c_pair,
    format_fraction,
    max_entanglement_pair,
    parse_fraction,
)
from .errors import BadEntanglement, CharacteristicDividesN, InternalInconsistency, NoRedundancy, SearchExhausted
from .finite_field import (
    DEFAULT_SEARCH_BOUND,
    FieldElement,
    FieldSpec,
    find_extension_field,
    find_prime_field,
    find_smallest_field,
    is_prime,
    primitive_nth_root,
)
from .matrix import FourierPair, fourier

DEFAULT_CANDIDATES = 8


@dataclass(frozen=True)
class Requirement:
    """What the user asks for.

    ``entanglement`` is ``"max"`` or an ebit count.  ``field_pref`` is
    ``"prime"`` (a prime field of order ``n + 1``), ``"anyprime"`` (the
    smallest prime ``= 1 mod n``), ``"smallest"`` or ``"char:<p>"``.
    """

    rate: Fraction
    t: int
    entanglement: str | int = "max"
    field_pref: str = "prime"
    d_min: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "rate", Fraction(self.rate))
        if self.t < 0:
            raise ValueError("t must be >= 0")
        if self.rate <= 0:
            raise ValueError("rate must be positive")
        if self.rate >= 1:
            raise NoRedundancy(f"rate {format_fraction(self.rate)} leaves no redundancy")
        if self.entanglement != "max" and (not isinstance(self.entanglement, int) or self.entanglement < 1):
            raise BadEntanglement(f"entanglement must be 'max' or a positive integer, got {self.entanglement!r}")
        parse_field_pref(self.field_pref)

    @property
    def required_distance(self) -> int:
        return max(2 * self.t + 1, self.d_min or 0, 2)

    def to_json(self) -> dict:
        return {
            "rate": format_fraction(self.rate),
            "t": self.t,
            "entanglement": self.entanglement,
            "field": self.field_pref,
            "d_min": self.d_min,
        }

    @classmethod
    def from_json(cls, obj: dict) -> Requirement:
        ent = obj.get("entanglement", "max")
        return cls(parse_fraction(obj["rate"]), int(obj["t"]), ent if ent == "max" else int(ent),
                   obj.get("field", "prime"), obj.get("d_min"))


def parse_field_pref(pref: str) -> tuple[str, int | None]:
    if pref in ("prime", "anyprime", "smallest"):
        return pref, None
    if pref.startswith("char:"):
        p = int(pref[5:])
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        return "char", p
    raise ValueError(f"unknown field preference {pref!r}")


@dataclass(frozen=True)
class Candidate:
    d: int
    n: int
    r: int


def solve_length(rate: Fraction, d_min: int, count: int = DEFAULT_CANDIDATES) -> list[Candidate]:
    """The first ``count`` solutions ``d >= d_min`` of ``r/n = rate``, ``n - r = d - 1``."""
    rate = Fraction(rate)
    if rate >= 1:
        raise NoRedundancy("rate 1 leaves no redundancy")
    if rate <= 0:
        raise ValueError("rate must be positive")
    if d_min < 2:
        raise ValueError("d_min must be >= 2")
    p, q = rate.numerator, rate.denominator
    gap = q - p
    out = []
    # (q - p) must divide d - 1
    j = -(-(d_min - 1) // gap)
    while len(out) < count:
        out.append(Candidate(j * gap + 1, q * j, p * j))
        j += 1
    return out


def field_for_length(n: int, pref: str = "prime", bound: int = DEFAULT_SEARCH_BOUND) -> tuple[FieldSpec, FieldElement]:
    """Field holding a primitive ``n``-th root of unity, and that root."""
    kind, p = parse_field_pref(pref)
    if kind == "prime":
        if not is_prime(n + 1):
            raise SearchExhausted(f"n + 1 = {n + 1} is not prime")
        spec = FieldSpec(n + 1)
    elif kind == "anyprime":
        spec = FieldSpec(find_prime_field(n, bound))
    elif kind == "smallest":
        spec = find_smallest_field(n, bound)
    else:
        m = find_extension_field(p, n)
        if p**m > bound:
            raise SearchExhausted(f"GF({p}^{m}) exceeds the field search bound {bound}")
        spec = FieldSpec(p, m)
    return spec, primitive_nth_root(spec, n)


@dataclass(frozen=True, eq=False)
class ConstructionPlan:
    requirement: Requirement | None
    n: int
    r: int
    d: int
    c: int
    field: FieldSpec
    omega: FieldElement
    c_rows: tuple[int, ...]
    d_rows: tuple[int, ...]
    expected: EaqeccParams
    verification: dict = field(default_factory=dict)
    candidates: tuple[Candidate, ...] = ()
    mode: str = "max"

    def to_json(self) -> dict:
        return {
            "requirement": self.requirement.to_json() if self.requirement else None,
            "n": self.n,
            "r": self.r,
            "d": self.d,
            "c": self.c,
            "field": self.field.to_json(),
            "omega": self.omega.value,
            "c_rows": list(self.c_rows),
            "d_rows": list(self.d_rows),
            "expected": self.expected.to_json(),
            "verification": dict(self.verification),
            "candidates": [{"d": c.d, "n": c.n, "r": c.r} for c in self.candidates],
            "mode": self.mode,
        }

    @classmethod
    def from_json(cls, obj: dict) -> ConstructionPlan:
        spec = FieldSpec.from_json(obj["field"])
        req = Requirement.from_json(obj["requirement"]) if obj.get("requirement") else None
        return cls(
            req, int(obj["n"]), int(obj["r"]), int(obj["d"]), int(obj["c"]), spec,
            FieldElement(spec, int(obj["omega"])),
            tuple(obj["c_rows"]), tuple(obj["d_rows"]),
            EaqeccParams.from_json(obj["expected"]),
            dict(obj.get("verification", {})),
            tuple(Candidate(int(c["d"]), int(c["n"]), int(c["r"])) for c in obj.get("candidates", [])),
            obj.get("mode", "max"),
        )


def build_pair(fp: FourierPair, r: int, entanglement: str | int) -> CodePair:
    if entanglement == "max":
        return max_entanglement_pair(fp, r, 0)
    return entanglement_c_pair(fp, r, int(entanglement))


def execute(spec: FieldSpec, omega: FieldElement, n: int, r: int, entanglement: str | int,
            distance_budget: int = DISTANCE_BUDGET, minor_budget: int = MINOR_BUDGET):
    """Build the Fourier matrix and code pair; return them with parameters and a verification summary."""
    fp = fourier(spec, n, omega)
    pair = build_pair(fp, r, entanglement)
    cert_c = certify_distance(pair.C, distance_budget, minor_budget)
    cert_d = certify_distance(pair.D, distance_budget, minor_budget)
    params = construction1(pair, cert_c.d, cert_d.d)
    verification = {
        "hk_rank": pair.c,
        "mds_method": cert_c.method if cert_c.method == cert_d.method else f"{cert_c.method}/{cert_d.method}",
        "distance_checked": cert_c.checked and cert_d.checked,
    }
    return fp, pair, params, verification


def plan_for_length(n: int, r: int, entanglement: str | int = "max", field_pref: str = "smallest",
                    requirement: Requirement | None = None, bound: int = DEFAULT_SEARCH_BOUND,
                    distance_budget: int = DISTANCE_BUDGET, minor_budget: int = MINOR_BUDGET) -> ConstructionPlan:
    """Plan for an explicit length and classical dimension, bypassing the rate search."""
    spec, omega = field_for_length(n, field_pref, bound)
    if entanglement != "max" and int(entanglement) > n - r:
        raise BadEntanglement(f"c = {entanglement} exceeds n - r = {n - r}")
    _, pair, params, verification = execute(spec, omega, n, r, entanglement, distance_budget, minor_budget)
    verification["p_is_n_plus_1"] = spec.m == 1 and spec.p == n + 1
    return ConstructionPlan(
        requirement, n, r, n - r + 1, pair.c, spec, omega,
        pair.C.row_indices, pair.D.row_indices, params, verification, (), pair.mode,
    )


def plan(req: Requirement, count: int = DEFAULT_CANDIDATES, bound: int = DEFAULT_SEARCH_BOUND,
         distance_budget: int = DISTANCE_BUDGET, minor_budget: int = MINOR_BUDGET) -> ConstructionPlan:
    """Smallest feasible construction meeting ``req``.

    Candidates ``(d, n, r)`` are tried in ascending ``d``; the first one
    whose field search succeeds is built and checked.
    """
    cands = solve_length(req.rate, req.required_distance, count)
    for cand in cands:
        try:
            spec, omega = field_for_length(cand.n, req.field_pref, bound)
        except (SearchExhausted, CharacteristicDividesN):
            continue
        if req.entanglement != "max" and req.entanglement > cand.n - cand.r:
            raise BadEntanglement(f"c = {req.entanglement} exceeds n - r = {cand.n - cand.r}")
        _, pair, params, verification = execute(spec, omega, cand.n, cand.r, req.entanglement,
                                                distance_budget, minor_budget)
        if params.d != cand.d or params.d < 2 * req.t + 1:
            raise InternalInconsistency(f"built distance {params.d}, planned {cand.d}")
        verification["p_is_n_plus_1"] = spec.m == 1 and spec.p == cand.n + 1
        return ConstructionPlan(
            req, cand.n, cand.r, cand.d, pair.c, spec, omega,
            pair.C.row_indices, pair.D.row_indices, params, verification, tuple(cands), pair.mode,
        )
    raise SearchExhausted(
        f"none of the {len(cands)} candidate lengths {[c.n for c in cands]} admits a {req.field_pref} field"
    )


def replay(p: ConstructionPlan, distance_budget: int = DISTANCE_BUDGET, minor_budget: int = MINOR_BUDGET):
    """Re-execute a plan from its field, root and dimensions."""
    ent = "max" if p.mode == "max" else p.c
    fp, pair, params, verification = execute(p.field, p.omega, p.n, p.r, ent, distance_budget, minor_budget)
    return fp, pair, params, verification


def series(rate: Fraction, count: int = 8, field_pref: str = "smallest", bound: int = DEFAULT_SEARCH_BOUND) -> list[dict]:
    """Family ``[[n_j, r_j, d_j; n_j - r_j]]`` of constant rate with growing length.

    Each row is the ``j``-th admissible length, with its field; parameters
    follow from the construction without building the matrices.
    """
    rows = []
    for cand in solve_length(Fraction(rate), 2, count):
        try:
            spec, _ = field_for_length(cand.n, field_pref, bound)
            q = spec.q
        except (SearchExhausted, CharacteristicDividesN):
            q = None
        params = EaqeccParams.from_parameters(cand.n, cand.r, cand.d, cand.n - cand.r, q or 0)
        rows.append({
            "n": cand.n,
            "k": cand.r,
            "d": cand.d,
            "c": cand.n - cand.r,
            "q": q,
            "rate": format_fraction(params.rate),
            "relative_distance": format_fraction(Fraction(cand.d, cand.n)),
            "net_rate": format_fraction(params.net_rate),
        })
    return rows
