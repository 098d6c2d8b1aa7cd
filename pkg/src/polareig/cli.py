"""Command-line front end.

Subcommands: build, eigenfunction, enumerate, count-check, verify.
Exit codes: 0 success, 2 invalid configuration, 3 desk-scale cap exceeded,
4 verification failure, 5 count-check formula mismatch (informational),
6 file I/O error.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

import click

from . import cache as _cache
from . import eigenfunctions as ef
from . import forms, graphs, gf, oracle, polarspace, serialize


VERTEX_CAP = 8192

GRAPH_FAMILIES = ("sp", "o+", "o", "o-", "u", "vo+", "vo-")

CONSTRUCTIONS = ("theta1-polar", "theta1-hyperbolic", "theta1-elliptic",
                 "theta1-cliquepair", "theta2-unitary")


class ConfigError(Exception):
    pass


class CapError(Exception):
    pass


def _echo_json(payload: dict):
    click.echo(_cache.dumps_canonical(payload))


def build_graph(family: str, q: int, n: int | None, m: int | None,
                cap: int = VERTEX_CAP, cache_dir=None) -> graphs.PolarGraph:
    """Construct the requested graph, enforcing the vertex cap."""
    if family not in GRAPH_FAMILIES:
        raise ConfigError(f"unknown family {family!r}")
    try:
        ctx = gf.field_from_order(q)
    except gf.NonPrimeCharacteristic as exc:
        raise ConfigError(str(exc)) from exc
    except gf.CapExceeded as exc:
        raise CapError(str(exc)) from exc
    if family in ("vo+", "vo-"):
        if m is None:
            raise ConfigError("affine families need --m")
        if q ** (2 * m) > cap:
            raise CapError(f"q^(2m) = {q ** (2 * m)} exceeds the vertex cap {cap}")
        return graphs.affine_polar_graph(m, 1 if family == "vo+" else -1, ctx,
                                         cache_dir=cache_dir)
    if n is None:
        n = 2
    dim = {"sp": 2 * n, "o+": 2 * n, "o": 2 * n + 1, "o-": 2 * n + 2,
           "u": 2 * n}[family]
    try:
        form = forms.standard_form(family, dim, ctx)
    except (forms.FormError, gf.OddExtensionDegree) as exc:
        raise ConfigError(str(exc)) from exc
    space = polarspace.polar_space(form, cache_dir=cache_dir)
    if space.point_count() > cap:
        raise CapError(f"{space.point_count()} points exceed the vertex cap {cap}")
    try:
        if family == "u" and dim == 4:
            return graphs.unitary_graph(ctx, cache_dir=cache_dir)
        return graphs.collinearity_graph(space)
    except graphs.RankTooLow as exc:
        raise ConfigError(str(exc)) from exc


def parse_graph_spec(spec: str) -> tuple[str, int, int, int | None, int | None]:
    """family:n_or_m:q, e.g. sp:2:2 or vo-:2:3."""
    parts = spec.split(":")
    if len(parts) != 3:
        raise ConfigError(f"graph spec {spec!r} is not family:n:q")
    family = parts[0]
    try:
        size, q = int(parts[1]), int(parts[2])
    except ValueError as exc:
        raise ConfigError(f"bad graph spec {spec!r}") from exc
    if family in ("vo+", "vo-"):
        return family, size, q, None, size
    return family, size, q, size, None


def _affine_printed_clique_size(q: int, m: int, eps: int) -> Fraction:
    return 1 + Fraction((q ** m - eps) * (q ** (m - 1) + eps),
                        eps * q ** (m - 1) + 1)


def build_summary(g: graphs.PolarGraph) -> dict:
    params = graphs.srg_check(g)
    spec = graphs.spectrum(params)
    bound = graphs.delsarte_bound(params, spec)
    nexus = Fraction(params.mu, -spec.theta2)
    out = {
        "family": g.provenance["family"],
        "q": g.provenance["q"],
        "v": params.v,
        "k": params.k,
        "lambda": params.lam,
        "mu": params.mu,
        "theta1": spec.theta1,
        "theta2": spec.theta2,
        "delsarte_bound": str(bound),
        "delsarte_size": int(bound) if bound.denominator == 1 else None,
        "nexus": int(nexus) if bound.denominator == 1 and nexus.denominator == 1
                 else None,
        "wdb_theta1": ef.wdb(spec.theta1, params),
        "wdb_theta2": ef.wdb(spec.theta2, params),
    }
    if g.provenance.get("kind") == "affine":
        printed = _affine_printed_clique_size(
            g.provenance["q"], g.provenance["m"], g.provenance["epsilon"])
        out["affine_clique_formula_mismatch"] = printed != bound
    return out


def _common_options(fn):
    fn = click.option("--family", required=True,
                      type=click.Choice(GRAPH_FAMILIES))(fn)
    fn = click.option("--q", "q", required=True, type=int,
                      help="field size, a prime power")(fn)
    fn = click.option("--n", "n", type=int, default=None,
                      help="rank for sp/o+/o/o-/u families")(fn)
    fn = click.option("--m", "m", type=int, default=None,
                      help="half the dimension for vo+/vo-")(fn)
    fn = click.option("--cap", type=int, default=VERTEX_CAP, show_default=True,
                      help="vertex cap")(fn)
    fn = click.option("--cache-dir", default=None,
                      help=f"subspace/catalog cache (or ${_cache.ENV_VAR})")(fn)
    fn = click.option("--workers", type=int, default=1, show_default=True)(fn)
    return fn


@click.group()
def main():
    """Polar spaces, strongly regular polar graphs, optimal eigenfunctions."""


@main.command()
@_common_options
@click.option("--format", "fmt", type=click.Choice(sorted(serialize.GRAPH_FORMATS)),
              default=None, help="also export the graph in this format")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def build(family, q, n, m, cap, cache_dir, workers, fmt, out):
    """Build a graph, verify strong regularity, print the parameter summary."""
    g = _build_or_exit(family, q, n, m, cap, cache_dir)
    try:
        summary = build_summary(g)
    except graphs.GraphError as exc:
        raise SystemExit(_fail(2, f"not a primitive strongly regular graph: {exc}"))
    _echo_json(summary)
    if fmt:
        text = serialize.GRAPH_FORMATS[fmt](g)
        if out:
            _write_or_exit(out, text)
        else:
            click.echo(text, nl=False)


@main.command()
@_common_options
@click.option("--construct", required=True, type=click.Choice(CONSTRUCTIONS))
@click.option("--format", "fmt", type=click.Choice(("json", "csv")), default="json",
              show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def eigenfunction(family, q, n, m, cap, cache_dir, workers, construct, fmt, out):
    """Run a construction, verify it, and write the eigenfunction file."""
    g = _build_or_exit(family, q, n, m, cap, cache_dir)
    try:
        f = _construct(g, construct)
        report = ef.verify_eigenfunction(g, f)
    except (ef.EigenfunctionError, graphs.GraphError) as exc:
        raise SystemExit(_fail(4, f"construction failed verification: {exc}"))
    text = (serialize.eigenfunction_json(f) if fmt == "json"
            else serialize.eigenfunction_csv(f))
    if out:
        _write_or_exit(out, text)
    _echo_json({
        "construct": construct,
        "theta": report.theta,
        "bound": report.bound,
        "support_size": report.support_size,
        "tight": report.tight,
        "out": out,
    })
    raise SystemExit(0 if report.tight else 4)


def _construct(g: graphs.PolarGraph, name: str) -> ef.Eigenfunction:
    if name == "theta1-polar":
        return ef.theta1_polar(g)
    if name == "theta1-hyperbolic":
        return ef.theta1_hyperbolic(g)
    if name == "theta1-elliptic":
        return ef.theta1_elliptic(g)
    if name == "theta2-unitary":
        return ef.theta2_unitary(g)
    # theta1-cliquepair: the canonical optimal pair for the family
    fam = g.provenance.get("family")
    if fam == "vo-":
        base = ef.theta1_elliptic(g)
        t0 = [v for v, c in base.values.items() if c > 0]
        t1 = [v for v, c in base.values.items() if c < 0]
        return ef.theta1_from_clique_pair(g, t0, t1)
    c0, c1 = graphs.max_intersecting_delsarte_pair(g)
    return ef.theta1_from_clique_pair(g, c0, c1)


@main.command("enumerate")
@_common_options
@click.option("--kind", type=click.Choice(("isolated", "bipartite")),
              default="isolated", show_default=True)
@click.option("--size", "size", type=int, default=None,
              help="part size (default: theta1+1 or -theta2)")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def enumerate_pairs(family, q, n, m, cap, cache_dir, workers, kind, size, out):
    """Exhaustively catalogue isolated-clique or complete-bipartite pairs."""
    g = _build_or_exit(family, q, n, m, cap, cache_dir)
    params = graphs.srg_check(g)
    spec = graphs.spectrum(params)
    if size is None:
        size = spec.theta1 + 1 if kind == "isolated" else -spec.theta2
    if kind == "isolated":
        catalog = oracle.enumerate_isolated_clique_pairs(g, size, workers=workers)
    else:
        catalog = oracle.enumerate_bipartite_pairs(g, size, workers=workers)
    header, lines = serialize.catalog_json_lines(catalog, g.provenance)
    target = out
    if target is None:
        cdir = _cache.resolve_cache_dir(cache_dir)
        if cdir is not None:
            target = cdir / _cache.catalog_cache_name(
                g.provenance["family"], g.provenance["dim"],
                g.provenance["p"], g.provenance["k"], catalog.kind, size)
    if target is not None:
        try:
            _cache.write_jsonl(Path(target), header, lines)
        except OSError as exc:
            raise SystemExit(_fail(6, f"cannot write catalog: {exc}"))
    _echo_json({"kind": catalog.kind, "s": size, "counts": catalog.counts(),
                "out": str(target) if target else None})


@main.command("count-check")
@_common_options
def count_check(family, q, n, m, cap, cache_dir, workers):
    """Compare the enumerated pair count with the closed formulas (exit 5 on mismatch)."""
    g = _build_or_exit(family, q, n, m, cap, cache_dir)
    try:
        comparison = oracle.count_comparison(g, workers=workers)
    except oracle.OracleError as exc:
        raise SystemExit(_fail(2, str(exc)))
    _echo_json(comparison.to_json())
    ok = comparison.printed_matches and comparison.derived_matches
    raise SystemExit(0 if ok else 5)


@main.command()
@click.option("--graph", "graph_spec", required=True,
              help="family:n:q, e.g. sp:2:2")
@click.option("--function", "function_path", required=True,
              type=click.Path(exists=False, dir_okay=False))
@click.option("--theta", type=int, default=None,
              help="eigenvalue override (needed for CSV files)")
@click.option("--cap", type=int, default=VERTEX_CAP, show_default=True)
@click.option("--cache-dir", default=None)
def verify(graph_spec, function_path, theta, cap, cache_dir):
    """Re-check a stored eigenfunction against a freshly built graph."""
    try:
        family, size, q, n, m = parse_graph_spec(graph_spec)
    except ConfigError as exc:
        raise SystemExit(_fail(2, str(exc)))
    g = _build_or_exit(family, q, n, m, cap, cache_dir)
    try:
        f = serialize.load_eigenfunction(function_path)
    except OSError as exc:
        raise SystemExit(_fail(6, f"cannot read {function_path}: {exc}"))
    except (ValueError, KeyError, serialize.SerializeError) as exc:
        raise SystemExit(_fail(2, f"malformed eigenfunction file: {exc}"))
    if theta is not None:
        f.theta = theta
    try:
        report = ef.verify_eigenfunction(g, f)
    except ef.NotAnEigenfunction as exc:
        _echo_json({"valid": False, "vertex": exc.vertex,
                    "lhs": str(exc.lhs), "rhs": str(exc.rhs)})
        raise SystemExit(4)
    except ef.EigenfunctionError as exc:
        raise SystemExit(_fail(4, str(exc)))
    _echo_json({"valid": True, "theta": report.theta, "bound": report.bound,
                "support_size": report.support_size, "tight": report.tight})


def _build_or_exit(family, q, n, m, cap, cache_dir) -> graphs.PolarGraph:
    try:
        return build_graph(family, q, n, m, cap=cap, cache_dir=cache_dir)
    except ConfigError as exc:
        raise SystemExit(_fail(2, str(exc)))
    except CapError as exc:
        raise SystemExit(_fail(3, str(exc)))


def _write_or_exit(path, text):
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise SystemExit(_fail(6, f"cannot write {path}: {exc}"))


def _fail(code: int, message: str) -> int:
    click.echo(f"error: {message}", err=True)
    return code


if __name__ == "__main__":
    main()
