"""Command-line surface.

Exit codes: 0 success / claim verified, 1 usage error, 2 claim verified
false on this instance (a reportable result, not a crash), 3 resource
refusal.  Flags can also be supplied via PANCAKE_-prefixed environment
variables (e.g. PANCAKE_DIAMETER_WORKERS).
"""

from __future__ import annotations

import json
import sys

import click

from . import bound as bound_mod
from . import graph, ham, sorter
from .perm import gp_stats, parse_perm
from .table import DIAMETERS


@click.group()
def cli():
    """Pancake-graph distance, diameter, and bound toolkit."""


def _emit(text: str, out):
    if out:
        graph.atomic_write_text(out, text)
    else:
        click.echo(text, nl=not text.endswith("\n"))


@cli.command("diameter")
@click.option("--n", "n", type=int, required=True)
@click.option("--workers", type=int, default=None)
@click.option("--memory-budget", type=int, default=None)
@click.option("--allow-large", is_flag=True, default=False)
@click.option("--field-out", type=click.Path(), default=None,
              help="Write the raw distance field (PNKD format) here.")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
@click.option("--out", type=click.Path(), default=None)
def cmd_diameter(n, workers, memory_budget, allow_large, field_out, fmt, out):
    """BFS from the identity; report eccentricity and layer profile."""
    if n < 2:
        raise click.UsageError("--n must be >= 2")
    field = graph.bfs(
        n, memory_budget=memory_budget, workers=workers, allow_large=allow_large
    )
    if field_out:
        field.save(field_out)
    ecc = field.eccentricity()
    profile = field.layer_profile()
    reference = DIAMETERS.get(n)
    match = None if reference is None else ecc == reference
    if fmt == "json":
        _emit(
            json.dumps(
                {
                    "n": n,
                    "eccentricity_of_identity": ecc,
                    "layer_profile": list(profile.counts),
                    "reference_diameter": reference,
                    "matches_reference": match,
                },
                indent=2,
            )
            + "\n",
            out,
        )
    else:
        lines = [
            f"n = {n}",
            f"eccentricity of identity (diameter) = {ecc}",
            f"layer profile = {list(profile.counts)}",
        ]
        if reference is not None:
            lines.append(f"reference diameter = {reference} ({'match' if match else 'MISMATCH'})")
        _emit("\n".join(lines) + "\n", out)
    return 0 if match in (True, None) else 2


@cli.command("profile")
@click.option("--n", "n", type=int, required=True)
@click.option("--workers", type=int, default=None)
@click.option("--memory-budget", type=int, default=None)
@click.option("--allow-large", is_flag=True, default=False)
@click.option("--out", type=click.Path(), default=None, help="CSV output path.")
def cmd_profile(n, workers, memory_budget, allow_large, out):
    """Layer profile of the identity distance field as CSV."""
    if n < 2:
        raise click.UsageError("--n must be >= 2")
    field = graph.bfs(
        n, memory_budget=memory_budget, workers=workers, allow_large=allow_large
    )
    _emit(field.layer_profile().csv_text(), out)
    return 0


@cli.command("bound")
@click.option("--n", "n", type=int, required=True)
@click.option("--mset-method", type=click.Choice(["exact", "chunked"]), default="exact")
@click.option("--chunk-size", type=int, default=5)
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="json")
@click.option("--out", type=click.Path(), default=None)
def cmd_bound(n, mset_method, chunk_size, fmt, out):
    """Certified diameter bound via the far-vertex set M."""
    if n < 4:
        raise click.UsageError("--n must be >= 4 (the method needs the previous diameter)")
    if n > 12:
        raise click.UsageError("--n must be <= 12 for the exact cross-check")
    if mset_method == "chunked" and n > 9:
        raise click.UsageError("chunked M-set construction is limited to n <= 9")
    report = bound_mod.certify_bound(n, mset_method=mset_method, chunk_size=chunk_size)
    if fmt == "json":
        _emit(report.to_json(), out)
    else:
        d = report.to_dict()
        _emit("\n".join(f"{k} = {v}" for k, v in d.items()) + "\n", out)
    code = 0
    if report.sound is False:
        code = 2
    if report.agreement is not None and not report.agreement.agrees:
        code = 2
    return code


@cli.command("trees")
@click.option("--n", "n", type=int, required=True)
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="text")
@click.option("--out", type=click.Path(), default=None)
def cmd_trees(n, fmt, out):
    """Translate-tree distance experiment against the BFS oracle."""
    if not 3 <= n <= 7:
        raise click.UsageError("--n must be in [3, 7]")
    report = ham.verify_prop2(n)
    if fmt == "json":
        _emit(json.dumps(report.to_dict(), indent=2) + "\n", out)
    else:
        total = sum(report.gap_histogram.values())
        verdict = "holds" if report.equality_holds else "fails"
        exact = total - report.counterexample_count
        lines = [
            f"n = {n}",
            f"translate-tree equality verdict: {verdict} ({exact}/{total})",
            f"lower bound (tree >= graph): {'ok' if report.lower_bound_ok else 'VIOLATED'}",
            f"max gap = {report.max_gap}",
            f"gap histogram = {report.gap_histogram}",
        ]
        _emit("\n".join(lines) + "\n", out)
    if not report.lower_bound_ok or not report.equality_holds:
        return 2
    return 0


@cli.command("ham")
@click.option("--n", "n", type=int, required=True)
@click.option("--cycle/--path", default=True)
@click.option("--check", is_flag=True, default=False)
@click.option("--out", type=click.Path(), default=None)
def cmd_ham(n, cycle, check, out):
    """Construct a Hamiltonian order (PNKH text format)."""
    if not 3 <= n <= 8:
        raise click.UsageError("--n must be in [3, 8]")
    h = ham.build_ham(n, want_cycle=cycle)
    if check:
        res = ham.validate_ham(h)
        click.echo(
            f"valid, {len(h.order)} vertices, cyclic={int(h.cyclic)}"
            if res.ok
            else f"INVALID: {res.reason}"
        )
        if not res.ok:
            return 2
    if out:
        graph.atomic_write_text(out, h.text())
    elif not check:
        click.echo(h.text(), nl=False)
    return 0


@cli.command("sort")
@click.option("--perm", "perm_text", type=str, required=True)
@click.option("--trace", is_flag=True, default=False)
def cmd_sort(perm_text, trace):
    """Greedy prefix-reversal sort of a permutation."""
    try:
        p = parse_perm(perm_text)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    seq = sorter.greedy_sort(p)
    if not sorter.verify_flip_sequence(seq):
        click.echo("internal error: flip sequence failed verification", err=True)
        return 2
    click.echo(" ".join(str(i) for i in seq.flips))
    if trace:
        click.echo(sorter.trace_text(seq), nl=False)
    return 0


@cli.command("stats")
@click.option("--perm", "perm_text", type=str, required=True)
def cmd_stats(perm_text):
    """Adjacency / block / free statistics of a permutation."""
    try:
        p = parse_perm(perm_text)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    st = gp_stats(p)
    click.echo(f"adjacencies at positions: {sorted(st.adjacency_positions)}")
    click.echo(f"blocks (entry spans): {[list(b) for b in st.blocks]}")
    click.echo(f"free positions: {sorted(st.free_positions)}")
    return 0


def main(argv=None) -> int:
    """Run the CLI and map exceptions onto the exit-code contract."""
    try:
        rv = cli.main(args=argv, standalone_mode=False, auto_envvar_prefix="PANCAKE")
    except click.UsageError as exc:
        click.echo(f"error: {exc.format_message()}", err=True)
        return 1
    except click.ClickException as exc:
        exc.show()
        return 1
    except click.exceptions.Abort:
        return 1
    except graph.MemoryBudgetError as exc:
        click.echo(f"refused: {exc}", err=True)
        return 3
    except bound_mod.ChunkBudgetError as exc:
        click.echo(f"refused: {exc}", err=True)
        return 3
    return int(rv) if isinstance(rv, int) else 0


def entry() -> None:
    sys.exit(main())
