"""Narrated end-to-end reproductions of the four prototype constructions.

Each demo returns a list of ``(label, value)`` steps; the CLI renders them
as text or JSON.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .eaqecc import construction1, entanglement_c_pair, format_fraction, hk_nonzero_entries, is_mds_eaqecc
from .finite_field import (
    FieldSpec,
    element_order,
    find_extension_field,
    find_prime_field,
    find_smallest_field,
    primitive_nth_root,
)
from .matrix import fourier
from .planner import Requirement, plan, solve_length


def _plan_steps(steps, p):
    steps.append(("field", str(p.field)))
    steps.append(("omega (primitive n-th root)", p.omega.value))
    steps.append(("C rows", f"e_{p.c_rows[0]} .. e_{p.c_rows[-1]}"))
    steps.append(("D rows", f"e_{p.d_rows[0]} .. e_{p.d_rows[-1]} (indices mod {p.n})"))
    steps.append(("rank(H K^T)", p.verification["hk_rank"]))
    steps.append(("code", str(p.expected)))
    steps.append(("rate", format_fraction(p.expected.rate)))
    steps.append(("net rate", format_fraction(p.expected.net_rate)))
    steps.append(("mds", p.expected.mds))
    steps.append(("catalytic (net rate > 0)", p.expected.catalytic))
    steps.append(("distance verification", p.verification["mds_method"]))


def example1():
    steps = [("requirement", "rate 7/8, d >= 11 (t = 5), maximum entanglement, characteristic 3")]
    cand = solve_length(Fraction(7, 8), 11, 1)[0]
    steps.append(("n = (d-1)/(1-R)", f"d={cand.d} -> n={cand.n}, r={cand.r}"))
    steps.append(("extension degree of 3 for n=80", find_extension_field(3, 80)))
    steps.append(("3^4 - 1", 3**4 - 1))
    p = plan(Requirement(Fraction(7, 8), 5, "max", "char:3"))
    _plan_steps(steps, p)
    nval = p.field.scalar(p.n)
    steps.append(("H K^T", f"{p.n} I_{p.n - p.r} (80 = {nval} in {p.field})"))
    steps.append(("net rate as 6/8", f"{p.expected.k - p.expected.c}/{p.n} = {format_fraction(p.expected.net_rate)}"))
    return steps


def example2():
    steps = [("requirement", "rate 7/8, d >= 11 (t = 5), maximum entanglement, prime field of order n+1")]
    for cand in solve_length(Fraction(7, 8), 11, 2):
        steps.append((f"candidate d={cand.d}", f"n={cand.n}, n+1={cand.n + 1}"))
    p = plan(Requirement(Fraction(7, 8), 5, "max", "prime"))
    g = FieldSpec(89)(3)
    steps.append(("order of 3 mod 89", element_order(g)))
    _plan_steps(steps, p)
    alt = find_prime_field(80)
    steps.append(("note", f"relaxing to any prime = 1 mod n keeps d=11: smallest such prime for n=80 is {alt}"))
    return steps


def example3():
    steps = [("requirement", "length 11, corrects 2 errors, entanglement c = 1 then c = 2")]
    for ch in (2, 3, 5):
        m = find_extension_field(ch, 11)
        steps.append((f"11x11 Fourier over characteristic {ch}", f"GF({ch}^{m}), order {ch**m}"))
    steps.append(("smallest among characteristics 2, 3, 5", "GF(3^5)"))
    steps.append(("smallest over all prime powers", str(find_smallest_field(11))))
    spec = FieldSpec(3, 5)
    fp = fourier(spec, 11, primitive_nth_root(spec, 11))
    for c in (1, 2):
        pair = entanglement_c_pair(fp, 7, c)
        params = construction1(pair)
        steps.append((f"c={c}: C rows", list(pair.C.row_indices)))
        steps.append((f"c={c}: D rows", list(pair.D.row_indices)))
        steps.append((f"c={c}: H^T columns f_i", list(pair.H.complement)))
        steps.append((f"c={c}: K^T columns f_i", list(pair.K.complement)))
        steps.append((f"c={c}: nonzero entries of H K^T", hk_nonzero_entries(pair)))
        steps.append((f"c={c}: rank(H K^T)", pair.c))
        steps.append((f"c={c}: code", str(params)))
        steps.append((f"c={c}: net rate", format_fraction(params.net_rate)))
        lhs = params.n - params.k + params.c
        steps.append((f"c={c}: n-k+c vs 2(d-1)", f"{lhs} vs {2 * (params.d - 1)} -> mds {is_mds_eaqecc(params)}"))
    return steps


def example4():
    steps = [("requirement", "rate 4/7, corrects 5 errors (d >= 11), maximum entanglement, prime field")]
    cands = solve_length(Fraction(4, 7), 11, 3)
    steps.append(("admissible d", [c.d for c in cands]))
    p = plan(Requirement(Fraction(4, 7), 5, "max", "prime"))
    steps.append(("n = 7(d-1)/3", f"d={p.d} -> n={p.n}, r={p.r}"))
    steps.append(("order of 2 mod 29", element_order(FieldSpec(29)(2))))
    _plan_steps(steps, p)
    steps.append(("note", f"r = R n = 4/7 * {p.n} = {p.r}, matching k = 2r - n + c = {p.expected.k}"))
    return steps


DEMOS = {1: example1, 2: example2, 3: example3, 4: example4}


def _plain(v):
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (np.bool_,)):
        return bool(v)
    return v


def run_demo(example: int) -> list[tuple[str, object]]:
    return [(label, _plain(v)) for label, v in DEMOS[example]()]
