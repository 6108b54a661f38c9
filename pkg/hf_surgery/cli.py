"""
CLI Interface - Command-line interface for the d-invariant toolkit.

Subcommands normalize Seifert presentations, compute correction terms of
elliptic manifolds and of knot surgeries, and run the surgery obstruction
over whole families.
"""

import csv
import functools
import io
import logging
import sys
from typing import Callable, List, Optional, Tuple, Type, TypeVar

import click
from dotenv import load_dotenv
from pydantic import BaseModel, ValidationError

from . import __version__
from .cache import ResultCache
from .errors import HFSurgeryError, InvalidInputError, MethodInapplicableError
from .exactmath import form_data, format_rational
from .knots import (
    AlexanderPoly,
    enumerate_lspace_alex,
    get_available_polynomials,
    get_polynomial,
    max_genus,
    name_of,
    parse_alex,
    torus_alex,
)
from .lattice import d_bruteforce, d_plumbing
from .models import (
    ClassificationModel,
    ConjectureRowModel,
    DInvariantsModel,
    ManifoldModel,
    MatchReportModel,
    OutputFormat,
    PolynomialListModel,
    PolynomialModel,
    RunConfig,
    SurgeryDModel,
    TableModel,
    TableRowModel,
)
from .obstruct import (
    BOTH,
    MIRRORED,
    conjecture_scan,
    match_manifold,
    run_classification,
    summarize,
)
from .plumbing import graph_from_json, graph_to_json, to_plumbing
from .seifert import (
    EllipticType,
    classify,
    euler_number,
    format_seifert,
    h1_order,
    h1_structure,
    normalize,
    parse_seifert,
)
from .surgery import Slope, d_surgery, parse_slope
from .tables import TABLE_NAMES, diff_table, table_entries

# Load environment variables
load_dotenv()

logger = logging.getLogger(__name__)

M = TypeVar("M", bound=BaseModel)
Rendered = Tuple[List[str], List[List[str]]]


def handle_errors(func):
    """Map toolkit errors to ``Error: ...`` on stderr and the error's exit code."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except HFSurgeryError as e:
            click.echo(f"Error: {e}", err=True)
            sys.exit(e.exit_code)

    return wrapper


def _cached(config: RunConfig, kind: str, payload: dict,
            compute: Callable[[], BaseModel], model_class: Type[M]) -> M:
    """Compute through the cache; always round-trips through JSON."""
    cache = ResultCache(config.cache_dir)
    text = cache.get_or_compute(
        kind, payload, lambda: compute().model_dump_json()
    )
    return model_class.model_validate_json(text)


def _emit(config: RunConfig, model: BaseModel, rendered: Rendered) -> None:
    lines, rows = rendered
    if config.format is OutputFormat.JSON:
        click.echo(model.model_dump_json(indent=2))
    elif config.format is OutputFormat.CSV:
        buffer = io.StringIO()
        csv.writer(buffer, lineterminator="\n").writerows(rows)
        click.echo(buffer.getvalue(), nl=False)
    else:
        for line in lines:
            click.echo(line)


@click.group()
@click.version_option(version=__version__)
@click.option(
    "--format", "-f", "output_format",
    type=click.Choice([f.value for f in OutputFormat]),
    help="Output format (default text)",
)
@click.option("--cache-dir", help="Result cache directory")
@click.option("--workers", "-w", type=int, help="Worker processes for classify")
@click.option("--verbose", "-v", is_flag=True, help="Enable verbose logging")
@click.pass_context
def cli(ctx, output_format, cache_dir, workers, verbose):
    """Heegaard Floer d-invariants of elliptic manifolds and knot surgeries."""
    try:
        config = RunConfig.from_env(
            format=output_format, cache_dir=cache_dir, workers=workers,
            verbose=verbose,
        )
    except (ValidationError, ValueError) as e:
        click.echo(f"Error: invalid configuration: {e}", err=True)
        sys.exit(InvalidInputError.exit_code)

    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING, stream=sys.stderr
    )
    if verbose:
        logging.getLogger().setLevel(logging.DEBUG)
    ctx.obj = config


@cli.group()
def sfs():
    """Seifert fibered spaces (b; a1/b1, a2/b2, a3/b3)."""


@sfs.command("normalize")
@click.argument("manifold")
@click.pass_obj
@handle_errors
def sfs_normalize(config, manifold):
    """Canonical form, type and first homology of MANIFOLD."""
    data = parse_seifert(manifold)
    oriented = normalize(data)
    model = ManifoldModel(
        manifold=format_seifert(data),
        canonical=format_seifert(oriented.data),
        reversed=oriented.reversed,
        type=classify(data).value,
        h1=h1_order(data),
        h1_structure=list(h1_structure(data)),
        euler_number=format_rational(euler_number(data)),
    )
    group = " x ".join(f"Z{k}" for k in model.h1_structure)
    lines = [
        f"Manifold:   {model.manifold}",
        f"Canonical:  {'-' if model.reversed else ''}{model.canonical}",
        f"Type:       {model.type}",
        f"|H1|:       {model.h1} ({group})",
        f"e:          {model.euler_number}",
    ]
    rows = [
        ["manifold", "canonical", "reversed", "type", "h1", "euler_number"],
        [model.manifold, model.canonical, str(model.reversed).lower(),
         model.type, str(model.h1), model.euler_number],
    ]
    _emit(config, model, (lines, rows))


def _render_d(model: DInvariantsModel) -> Rendered:
    lines = [f"Manifold: {model.manifold}"]
    if model.canonical:
        lines.append(f"Canonical: {model.canonical}")
    lines.append(f"|H1| = {model.h1}")
    lines.append(f"d: {', '.join(model.multiset)}")
    for spinc in model.classes:
        rep = ", ".join(str(v) for v in spinc.representative)
        lines.append(f"  [{spinc.id}] {spinc.d:>8}   ({rep})")
    rows = [["class", "d", "representative"]] + [
        [str(c.id), c.d, " ".join(str(v) for v in c.representative)]
        for c in model.classes
    ]
    return lines, rows


@sfs.command("d")
@click.argument("manifold", required=False)
@click.option("--graph", "graph_file", type=click.File("r"),
              help="Plumbing graph JSON instead of a presentation")
@click.option("--method", type=click.Choice(["paths", "bruteforce"]),
              default="paths", show_default=True,
              help="Nice full paths or the exhaustive oracle")
@click.pass_obj
@handle_errors
def sfs_d(config, manifold, graph_file, method):
    """Correction terms of MANIFOLD (or of the boundary of --graph)."""
    if graph_file is not None:
        graph = graph_from_json(graph_file.read())
        form = form_data(graph.intersection_form())
        reversed_, label, canonical = False, "plumbing graph", None
        payload = {"graph": graph_to_json(graph), "method": method}
    elif manifold:
        data = parse_seifert(manifold)
        result = to_plumbing(data)
        graph, form, reversed_ = result.graph, result.form, result.reversed
        label = format_seifert(data)
        try:
            canonical = str(normalize(data))
        except MethodInapplicableError:
            canonical = None
        payload = {"manifold": label, "method": method}
    else:
        raise InvalidInputError("Provide a MANIFOLD or --graph")
    if method == "bruteforce":
        payload["oracle_limit"] = config.oracle_limit

    def compute() -> DInvariantsModel:
        if method == "bruteforce":
            d = d_bruteforce(graph, form, reversed_, limit=config.oracle_limit)
        else:
            d = d_plumbing(graph, form, reversed_)
        return DInvariantsModel.from_result(
            label, d, abs(form.determinant), canonical
        )

    model = _cached(config, "sfs-d", payload, compute, DInvariantsModel)
    _emit(config, model, _render_d(model))


@cli.group()
def surgery():
    """Dehn surgery on knots in S^3."""


def _resolve_polynomial(alex: Optional[str], name: Optional[str],
                        torus: Optional[str]) -> AlexanderPoly:
    given = [x for x in (alex, name, torus) if x]
    if len(given) > 1:
        raise InvalidInputError("Give at most one of --alex, --name, --torus")
    if alex:
        return parse_alex(alex)
    if name:
        return get_polynomial(name)
    if torus:
        try:
            r, s = (int(x) for x in torus.split(","))
        except ValueError:
            raise InvalidInputError(f"Malformed --torus {torus!r}: expected 'r,s'")
        return torus_alex(r, s)
    return AlexanderPoly((1,))


@surgery.command("d")
@click.argument("slope")
@click.option("--q", "q", type=int, help="Slope denominator (SLOPE is then p)")
@click.option("--alex", help="Alexander polynomial coefficients a_g,...,a_1,a_0")
@click.option("--name", help="Named polynomial, e.g. 2' or D8''")
@click.option("--torus", help="Torus knot r,s")
@click.pass_obj
@handle_errors
def surgery_d(config, slope, q, alex, name, torus):
    """Correction terms of SLOPE-surgery on a knot (unknot by default)."""
    if q is not None:
        if "/" in slope:
            raise InvalidInputError("Use either p/q or --q, not both")
        parsed = Slope(parse_slope(slope).p, q)
    else:
        parsed = parse_slope(slope)
    poly = _resolve_polynomial(alex, name, torus)
    model = SurgeryDModel.from_result(d_surgery(parsed, poly))
    lines = [
        f"S^3_{model.p}/{model.q}(K), Alexander polynomial {poly} "
        f"[{model.alex}]",
        f"d (labels 0..{model.p // 2}): "
        f"{', '.join(v.d for v in model.labeled)}",
        f"multiset: {', '.join(model.multiset)}",
    ]
    rows = [["label", "multiplicity", "d"]] + [
        [str(v.label), str(v.multiplicity), v.d] for v in model.labeled
    ]
    _emit(config, model, (lines, rows))


@cli.group()
def knots():
    """Alexander polynomials of L-space knots."""


def _emit_polynomials(config, polys: List[Tuple[str, AlexanderPoly]]) -> None:
    model = PolynomialListModel(polynomials=[
        PolynomialModel(name=n, alex=p.to_text(), genus=p.genus, display=str(p))
        for n, p in polys
    ])
    lines = [
        f"  {p.name:<8} g={p.genus:<3} {p.display}" for p in model.polynomials
    ]
    rows = [["name", "genus", "alex"]] + [
        [p.name, str(p.genus), p.alex] for p in model.polynomials
    ]
    _emit(config, model, (lines, rows))


@knots.command("enumerate")
@click.option("--g-max", type=int, help="Largest genus")
@click.option("--slope", help="Use the genus bound of this slope instead")
@click.pass_obj
@handle_errors
def knots_enumerate(config, g_max, slope):
    """All alternating polynomials up to a genus bound."""
    if slope:
        g_max = max_genus(parse_slope(slope))
    if not g_max:
        raise InvalidInputError("Provide --g-max or --slope")
    polys = enumerate_lspace_alex(g_max)
    _emit_polynomials(config, [(name_of(p), p) for p in polys])


@knots.command("list")
@click.pass_obj
@handle_errors
def knots_list(config):
    """List the named polynomials."""
    _emit_polynomials(
        config,
        [(f"D{name}", p) for name, p in get_available_polynomials().items()],
    )


def _candidate_text(c) -> str:
    sign = {MIRRORED: "-", BOTH: "+-"}.get(c.orientation, "")
    knot = f"T({c.torus[0]},{c.torus[1]})" if c.torus else f"K[{c.name}]"
    extra = f" ({c.determined_by})" if c.determined_by else ""
    return f"{sign}S^3_{c.p}/{c.q}({knot}) {c.name}{extra}"


def _render_report(model: MatchReportModel) -> List[str]:
    head = f"{model.manifold}  type {model.type}  |H1|={model.h1}: "
    if model.excluded:
        return [head + f"excluded ({model.excluded})"]
    if not model.candidates:
        return [head + "no candidate passes the d-invariant obstruction"]
    tag = "unique" if model.unique else "candidates"
    return [head + tag] + [
        f"    {_candidate_text(c)}" for c in model.candidates
    ]


def _report_rows(models: List[MatchReportModel]) -> List[List[str]]:
    rows = [["manifold", "h1", "type", "verdict", "p", "q", "alex",
             "orientation", "torus"]]
    for m in models:
        if not m.candidates:
            rows.append([m.manifold, str(m.h1), m.type, m.verdict,
                         "", "", "", "", ""])
        for c in m.candidates:
            torus = f"{c.torus[0]},{c.torus[1]}" if c.torus else ""
            rows.append([m.manifold, str(m.h1), m.type, m.verdict,
                         str(c.p), str(c.q), c.alex, c.orientation, torus])
    return rows


@cli.command()
@click.argument("manifold")
@click.pass_obj
@handle_errors
def match(config, manifold):
    """Match MANIFOLD against every candidate knot surgery."""
    data = parse_seifert(manifold)
    model = _cached(
        config, "match", {"manifold": format_seifert(data)},
        lambda: MatchReportModel.from_report(match_manifold(data)),
        MatchReportModel,
    )
    lines = _render_report(model) + [
        f"target d: {', '.join(model.target_d)}"
    ]
    _emit(config, model, (lines, _report_rows([model])))


def _parse_types(types: Optional[str]) -> Optional[List[EllipticType]]:
    if not types:
        return None
    try:
        return [EllipticType(t.strip().upper()) for t in types.split(",")]
    except ValueError:
        raise InvalidInputError(f"Unknown elliptic type in {types!r}")


@cli.command("classify")
@click.option("--h1-max", type=int, default=9, show_default=True,
              help="Largest |H1|")
@click.option("--n-max", type=int, default=101, show_default=True,
              help="Largest dihedral b3")
@click.option("--types", help="Comma-separated subset of I,O,T,D")
@click.option("--include-even/--odd-only", default=True, show_default=True,
              help="Scan dihedral families with even b3 (non-cyclic H1)")
@click.pass_obj
@handle_errors
def classify_cmd(config, h1_max, n_max, types, include_even):
    """Run the obstruction over every elliptic manifold up to --h1-max."""
    kinds = _parse_types(types)

    def compute() -> ClassificationModel:
        reports = run_classification(
            h1_max, n_max, kinds, config.workers, include_even
        )
        summary = summarize(reports)
        m_max = h1_max // 4
        return ClassificationModel(
            h1_max=h1_max,
            n_max=n_max,
            reports=[MatchReportModel.from_report(r) for r in reports],
            unique=[str(r.manifold.data) for r in summary.unique],
            candidate_only=[str(r.manifold.data) for r in summary.candidate_only],
            not_surgery_count=len(summary.not_surgery),
            conjecture=[
                ConjectureRowModel.from_row(row)
                for row in conjecture_scan(reports, m_max)
            ] if m_max else [],
        )

    payload = {
        "h1_max": h1_max, "n_max": n_max, "include_even": include_even,
        "types": sorted(k.value for k in kinds) if kinds else None,
    }
    model = _cached(config, "classify", payload, compute, ClassificationModel)

    lines = [
        f"Scanned {len(model.reports)} manifolds with |H1| <= {model.h1_max}, "
        f"b3 <= {model.n_max}",
        "",
        "Unique surgery descriptions:",
    ]
    by_manifold = {r.manifold: r for r in model.reports}
    for key in model.unique:
        for c in by_manifold[key].candidates:
            lines.append(f"  {_candidate_text(c)} = {key}")
    lines += ["", "Candidates only:"]
    for key in model.candidate_only:
        lines += [f"  {line}" for line in _render_report(by_manifold[key])]
    lines += ["", f"Not surgery: {model.not_surgery_count} manifolds"]
    for row in model.conjecture:
        state = "holds" if row.holds else "fails"
        lines.append(
            f"  m={row.m}: n <= {2 * row.m + 1} {state} "
            f"(largest candidate n: {row.largest_n})"
        )
    _emit(config, model, (lines, _report_rows(model.reports)))


@cli.command()
@click.argument("which", type=click.Choice(TABLE_NAMES))
@click.option("--diff", is_flag=True,
              help="Only report rows that differ from the golden copy")
@click.pass_obj
@handle_errors
def tables(config, which, diff):
    """Regenerate reference table WHICH and compare it with its golden copy.

    Rows that correct a printed value are listed as known discrepancies and
    do not fail --diff.
    """
    entries = table_entries(which)
    model = TableModel(table=which, rows=[
        TableRowModel(
            key=e.key, values=e.values, expected=e.expected, note=e.note,
            matches=e.matches, known_discrepancy=e.known_discrepancy,
        )
        for e in entries
    ])
    known = [r for r in model.rows if r.known_discrepancy]
    if diff:
        problems = diff_table(which, entries)
        shown = [r for r in model.rows if not r.matches or r.known_discrepancy]
        lines = problems or [f"{which}: all {len(model.rows)} rows match"]
        lines += [f"known: {r.key}: {r.known_discrepancy}" for r in known]
    else:
        shown = model.rows
        lines = [
            f"{r.key}: {', '.join(r.values)}"
            + (f"  [{r.note}]" if r.note else "")
            + ("" if r.matches else f"  != {', '.join(r.expected)}")
            + (f"  (known: {r.known_discrepancy})" if r.known_discrepancy else "")
            for r in shown
        ]
    rows = [["key", "values", "expected", "matches", "known_discrepancy"]] + [
        [r.key, " ".join(r.values), " ".join(r.expected), str(r.matches).lower(),
         r.known_discrepancy or ""]
        for r in shown
    ]
    _emit(config, TableModel(table=model.table, rows=shown), (lines, rows))
    if diff and problems:
        sys.exit(1)


if __name__ == "__main__":
    cli()
