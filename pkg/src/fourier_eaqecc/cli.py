"""Command-line interface: plan, build, verify, demo, dump and series.

Exit codes: 0 success, 1 invalid input, 2 search exhausted,
3 verification mismatch.
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction
from pathlib import Path

import click

from . import matrix as mx
from .classical_codes import DISTANCE_BUDGET, MINOR_BUDGET
from .demo import run_demo
from .eaqecc import EaqeccParams, format_fraction
from .errors import EaqeccError, InternalInconsistency, SearchExhausted
from .finite_field import DEFAULT_SEARCH_BOUND, FieldElement, FieldSpec
from .matrix import FourierPair, fourier
from .planner import (
    DEFAULT_CANDIDATES,
    ConstructionPlan,
    Requirement,
    field_for_length,
    parse_field_pref,
    plan,
    plan_for_length,
    replay,
    series,
)
from .verifier import VerificationReport, verify_fourier, verify_matrices

EXIT_OK, EXIT_INPUT, EXIT_SEARCH, EXIT_MISMATCH = 0, 1, 2, 3

MATRIX_FILES = {
    "forward": "F_forward.txt",
    "star": "F_star.txt",
    "C": "C_generator.txt",
    "D": "D_generator.txt",
    "H": "H_check.txt",
    "K": "K_check.txt",
    "HK": "HK_product.txt",
}


class _Group(click.Group):
    """Group whose usage errors exit with code 1, leaving 2 for search exhaustion."""

    def main(self, args=None, prog_name=None, complete_var=None, standalone_mode=True, **extra):
        try:
            rv = super().main(args, prog_name, complete_var, standalone_mode=False, **extra)
        except click.UsageError as e:
            e.show()
            rv = EXIT_INPUT
        except click.ClickException as e:
            e.show()
            rv = EXIT_INPUT
        except click.Abort:
            click.echo("Aborted!", err=True)
            rv = EXIT_INPUT
        if not standalone_mode:
            return rv
        sys.exit(rv or 0)


class RateType(click.ParamType):
    name = "p/q"

    def convert(self, value, param, ctx):
        if isinstance(value, Fraction):
            return value
        try:
            num, sep, den = str(value).partition("/")
            return Fraction(int(num), int(den) if sep else 1)
        except (ValueError, ZeroDivisionError):
            self.fail(f"{value!r} is not a rational p/q", param, ctx)


class EntanglementType(click.ParamType):
    name = "max|c"

    def convert(self, value, param, ctx):
        if value in ("max", None) or isinstance(value, int):
            return value
        try:
            c = int(value)
        except ValueError:
            self.fail(f"{value!r} is neither 'max' nor an integer", param, ctx)
        if c < 1:
            self.fail("entanglement must be >= 1", param, ctx)
        return c


class FieldPrefType(click.ParamType):
    name = "prime|anyprime|smallest|char:<p>"

    def convert(self, value, param, ctx):
        try:
            parse_field_pref(value)
        except ValueError as e:
            self.fail(str(e), param, ctx)
        return value


RATE = RateType()
ENTANGLEMENT = EntanglementType()
FIELD_PREF = FieldPrefType()


def _emit_json(obj) -> None:
    click.echo(json.dumps(obj, indent=2))


def _fail(err: Exception) -> int:
    click.echo(f"error: {type(err).__name__}: {err}", err=True)
    if isinstance(err, SearchExhausted):
        return EXIT_SEARCH
    if isinstance(err, InternalInconsistency):
        return EXIT_MISMATCH
    return EXIT_INPUT


def budget_options(f):
    f = click.option("--distance-budget", type=click.IntRange(min=1), default=DISTANCE_BUDGET,
                     envvar="FEQ_DISTANCE_BUDGET", show_default=True,
                     help="Largest q^k enumerated by the exhaustive distance oracle.")(f)
    f = click.option("--minor-budget", type=click.IntRange(min=1), default=MINOR_BUDGET,
                     envvar="FEQ_MINOR_BUDGET", show_default=True,
                     help="Largest number of k-column subsets tested by the minors oracle.")(f)
    f = click.option("--field-bound", type=click.IntRange(min=2), default=DEFAULT_SEARCH_BOUND,
                     envvar="FEQ_FIELD_BOUND", show_default=True,
                     help="Largest field order considered by field searches.")(f)
    return f


def requirement_options(f):
    f = click.option("--rate", type=RATE, help="Required rate r/n as p/q.")(f)
    f = click.option("--errors", "t", type=click.IntRange(min=0), help="Errors to correct (d >= 2t+1).")(f)
    f = click.option("--entanglement", type=ENTANGLEMENT, default="max", show_default=True,
                     help="'max' for c = n - r, or an exact ebit count c.")(f)
    f = click.option("--field", "field_pref", type=FIELD_PREF, default="prime", show_default=True,
                     help="prime (order n+1), anyprime, smallest, or char:<p>.")(f)
    f = click.option("--d-min", type=click.IntRange(min=2), default=None, help="Override the minimum distance.")(f)
    f = click.option("--max-candidates", type=click.IntRange(min=1), default=DEFAULT_CANDIDATES,
                     show_default=True, help="Number of (d, n, r) candidates tried.")(f)
    return f


@click.group(cls=_Group)
@click.option("--seed", type=click.IntRange(min=0), default=0, show_default=True,
              help="Seed for sampled checks.")
@click.pass_context
def cli(ctx, seed):
    """Build and verify MDS entanglement-assisted codes from Fourier matrices."""
    ctx.obj = {"seed": seed}


def _plan_text(p: ConstructionPlan) -> str:
    lines = [
        f"code      {p.expected}",
        f"field     {p.field} (modulus {list(p.field.modulus)}), omega = {p.omega.value}",
        f"n, r, d   {p.n}, {p.r}, {p.d}",
        f"C rows    {list(p.c_rows)}",
        f"D rows    {list(p.d_rows)}",
        f"rate      {format_fraction(p.expected.rate)}   net rate {format_fraction(p.expected.net_rate)}",
        f"mds       {p.expected.mds}   catalytic {p.expected.catalytic}",
        f"verify    {p.verification}",
    ]
    if p.candidates:
        lines.append("candidates (d, n, r): " + ", ".join(f"({c.d},{c.n},{c.r})" for c in p.candidates))
    return "\n".join(lines)


def _make_requirement(rate, t, entanglement, field_pref, d_min) -> Requirement:
    if rate is None or t is None:
        raise click.UsageError("--rate and --errors are required")
    return Requirement(rate, t, entanglement, field_pref, d_min)


@cli.command("plan")
@requirement_options
@budget_options
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="json", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), help="Also write the plan JSON here.")
def cmd_plan(rate, t, entanglement, field_pref, d_min, max_candidates, distance_budget, minor_budget,
             field_bound, fmt, out):
    """Plan a construction for a required rate and error capability."""
    try:
        req = _make_requirement(rate, t, entanglement, field_pref, d_min)
        p = plan(req, max_candidates, field_bound, distance_budget, minor_budget)
    except EaqeccError as e:
        return _fail(e)
    except ValueError as e:
        return _fail(e)
    obj = p.to_json()
    if out:
        out.write_text(json.dumps(obj, indent=2) + "\n")
    if fmt == "json":
        _emit_json(obj)
    else:
        click.echo(_plan_text(p))
    return EXIT_OK


def _write_build(outdir: Path, p: ConstructionPlan, fp: FourierPair, pair, params: EaqeccParams) -> None:
    outdir.mkdir(parents=True, exist_ok=True)
    mats = {
        "forward": fp.forward,
        "star": fp.star,
        "C": pair.C.generator,
        "D": pair.D.generator,
        "H": pair.H.matrix,
        "K": pair.K.matrix,
        "HK": pair.hk_product,
    }
    for key, fname in MATRIX_FILES.items():
        (outdir / fname).write_text(mx.dumps(mats[key]))
    (outdir / "plan.json").write_text(json.dumps(p.to_json(), indent=2) + "\n")
    (outdir / "pair.json").write_text(json.dumps(pair.descriptor(), indent=2) + "\n")
    (outdir / "params.json").write_text(json.dumps(params.to_json(), indent=2) + "\n")


@cli.command("build")
@click.option("--plan", "plan_file", type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help="Plan JSON from 'plan --out'.")
@requirement_options
@click.option("--length", "n", type=click.IntRange(min=1), help="Explicit length n (with --dimension).")
@click.option("--dimension", "r", type=click.IntRange(min=1), help="Explicit classical dimension r.")
@budget_options
@click.option("--outdir", required=True, type=click.Path(file_okay=False, path_type=Path))
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="json", show_default=True)
def cmd_build(plan_file, rate, t, entanglement, field_pref, d_min, max_candidates, n, r, distance_budget,
              minor_budget, field_bound, outdir, fmt):
    """Build generator, check and product matrices for a plan."""
    sources = sum([plan_file is not None, rate is not None or t is not None, n is not None or r is not None])
    if sources != 1:
        raise click.UsageError("give exactly one of --plan, --rate/--errors, or --length/--dimension")
    try:
        if plan_file is not None:
            try:
                p = ConstructionPlan.from_json(json.loads(plan_file.read_text()))
            except (KeyError, TypeError, json.JSONDecodeError) as e:
                raise ValueError(f"cannot parse plan {plan_file}: {e}") from e
        elif n is not None:
            if r is None:
                raise click.UsageError("--length needs --dimension")
            if r > n:
                raise click.UsageError("--dimension cannot exceed --length")
            p = plan_for_length(n, r, entanglement, field_pref, None, field_bound, distance_budget, minor_budget)
        else:
            req = _make_requirement(rate, t, entanglement, field_pref, d_min)
            p = plan(req, max_candidates, field_bound, distance_budget, minor_budget)
        fp, pair, params, _ = replay(p, distance_budget, minor_budget)
    except EaqeccError as e:
        return _fail(e)
    except ValueError as e:
        return _fail(e)

    if params != p.expected:
        diff = {key: [p.expected.to_json()[key], val] for key, val in params.to_json().items()
                if p.expected.to_json()[key] != val}
        click.echo(f"error: plan expected {p.expected}, execution gave {params}", err=True)
        _emit_json({"mismatch": diff})
        return EXIT_MISMATCH
    if params.k == params.n:
        click.echo(f"warning: degenerate construction {params} (r = n, no redundancy)", err=True)
    _write_build(outdir, p, fp, pair, params)
    if fmt == "json":
        _emit_json({"outdir": str(outdir), "params": params.to_json(), "pair": pair.descriptor()})
    else:
        click.echo(f"built {params} in {outdir}")
    return EXIT_OK


def _load_build(path: Path):
    plan_obj = json.loads((path / "plan.json").read_text())
    params = EaqeccParams.from_json(json.loads((path / "params.json").read_text()))
    pair_obj = json.loads((path / "pair.json").read_text())
    spec = FieldSpec.from_json(plan_obj["field"])
    mats = {key: mx.loads((path / fname).read_text(), spec.modulus) for key, fname in MATRIX_FILES.items()}
    fp = FourierPair(int(plan_obj["n"]), FieldElement(spec, int(plan_obj["omega"])), mats["forward"], mats["star"])
    return params, pair_obj, mats, fp


@cli.command("verify")
@click.argument("path", type=click.Path(exists=True, file_okay=False, path_type=Path))
@budget_options
@click.pass_context
def cmd_verify(ctx, path, distance_budget, minor_budget, field_bound):
    """Recompute every claim of a build directory; exit 0 iff all checks pass."""
    try:
        params, pair_obj, mats, fp = _load_build(path)
    except (OSError, KeyError, TypeError, ValueError, json.JSONDecodeError) as e:
        click.echo(f"error: cannot parse build in {path}: {e}", err=True)
        return EXIT_INPUT
    report = VerificationReport(f"build {path.name}: {params}")
    report.extend(verify_fourier(fp, seed=ctx.obj["seed"]), "fourier")
    pair_rep = verify_matrices(mats["C"], mats["D"], mats["H"], mats["K"], params, pair_obj.get("mode", "explicit"),
                               distance_budget, minor_budget)
    report.extend(pair_rep, "pair")
    stored = mats["HK"]
    report.add("stored_hk_product", stored == mx.mat_mul(mats["H"], mx.transpose(mats["K"])),
               "HK_product.txt equals H K^T recomputed")
    _emit_json(report.to_json())
    return EXIT_OK if report.overall else EXIT_MISMATCH


@cli.command("demo")
@click.argument("example", type=click.IntRange(1, 4))
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="text", show_default=True)
def cmd_demo(example, fmt):
    """Reproduce one of the four prototype constructions step by step."""
    steps = run_demo(example)
    if fmt == "json":
        _emit_json({"example": example, "steps": [{"label": a, "value": b} for a, b in steps]})
    else:
        width = max(len(a) for a, _ in steps)
        click.echo(f"Example {example}")
        for a, b in steps:
            click.echo(f"  {a.ljust(width)}  {b}")
    return EXIT_OK


@cli.command("dump")
@click.option("--n", "n", type=click.IntRange(min=1), required=True, help="Fourier size.")
@click.option("--field", "field_pref", type=FIELD_PREF, default="smallest", show_default=True)
@click.option("--which", type=click.Choice(["forward", "star"]), default="forward", show_default=True)
@click.option("--field-bound", type=click.IntRange(min=2), default=DEFAULT_SEARCH_BOUND, envvar="FEQ_FIELD_BOUND")
def cmd_dump(n, field_pref, which, field_bound):
    """Print a Fourier matrix in the matrix text format."""
    try:
        spec, omega = field_for_length(n, field_pref, field_bound)
    except EaqeccError as e:
        return _fail(e)
    fp = fourier(spec, n, omega)
    click.echo(mx.dumps(fp.forward if which == "forward" else fp.star), nl=False)
    return EXIT_OK


@cli.command("series")
@click.option("--rate", type=RATE, required=True)
@click.option("--count", type=click.IntRange(min=1), default=8, show_default=True)
@click.option("--field", "field_pref", type=FIELD_PREF, default="smallest", show_default=True)
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="text", show_default=True)
def cmd_series(rate, count, field_pref, fmt):
    """Tabulate a constant-rate family of maximum-entanglement codes."""
    if not 0 < rate < 1:
        click.echo("error: rate must lie strictly between 0 and 1", err=True)
        return EXIT_INPUT
    rows = series(rate, count, field_pref)
    if fmt == "json":
        _emit_json(rows)
        return EXIT_OK
    click.echo(f"{'code':>22}  {'q':>7}  {'rate':>6}  {'d/n':>7}  {'net':>6}")
    for row in rows:
        code = f"[[{row['n']},{row['k']},{row['d']};{row['c']}]]"
        q = row["q"] if row["q"] is not None else "-"
        click.echo(f"{code:>22}  {q:>7}  {row['rate']:>6}  {row['relative_distance']:>7}  {row['net_rate']:>6}")
    return EXIT_OK


def main():  # pragma: no cover
    cli()


if __name__ == "__main__":  # pragma: no cover
    main()
