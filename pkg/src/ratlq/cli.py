"""Command-line front end: compute invariants, print quiver data, run the cross-route sweep.

Exit codes: 0 on success, 2 when the fraction cannot be parsed or is not
admissible, 3 when routes disagree or an internal consistency check fails.
"""

from __future__ import annotations

import json
import os
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import click

from . import __version__
from .algebra import LaurentPoly, QSeriesRatio
from .errors import RatlqError
from .evaluator import cross_verify, quiver_coefficient
from .quiver import jones_data, quiver, symmetric_transform
from .skein import homfly
from .tangles import admissible_fractions, as_tangle_fraction, is_closable

EXIT_PARSE, EXIT_MISMATCH = 2, 3
METHODS = {"skein": None, "quiver-alg": "algebraic", "quiver-geo": "geometric"}


def cache_dir():
    root = os.environ.get("RATLQ_CACHE")
    if root:
        return Path(root)
    base = os.environ.get("XDG_CACHE_HOME") or Path.home() / ".cache"
    return Path(base) / "ratlq"


def _cache_path(f, color, method):
    return cache_dir() / f"{f.u}_{f.v}_{color}_{method}.json"


def cache_load(f, color, method):
    path = _cache_path(f, color, method)
    try:
        record = json.loads(path.read_text())
    except (OSError, ValueError):
        return None
    if record.get("engine") != __version__:
        return None
    return record.get("value")


def cache_store(f, color, method, value):
    """Write-temp-then-rename so readers never see a partial file."""
    path = _cache_path(f, color, method)
    path.parent.mkdir(parents=True, exist_ok=True)
    record = {"engine": __version__, "fraction": str(f), "color": color, "method": method, "value": value}
    fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        json.dump(record, fh, sort_keys=True)
    os.replace(tmp, path)


def value_to_json(value):
    if isinstance(value, QSeriesRatio):
        return value.to_json()
    return {"numerator": value.to_json(), "denom_index": 0}


def value_from_json(data):
    return QSeriesRatio(LaurentPoly.from_json(data["numerator"]), data["denom_index"])


def _latex_monomial(eq, ea):
    parts = []
    if eq:
        parts.append("q" if eq == 1 else f"q^{{{eq}}}")
    if ea:
        parts.append("a" if ea == 1 else f"a^{{{ea}}}")
    return "".join(parts)


def latex_poly(poly):
    if poly.is_zero():
        return "0"
    out = []
    for eq, ea, c in sorted(poly.sorted_terms(), key=lambda t: (t[1], t[0])):
        body = _latex_monomial(eq, ea)
        mag = abs(c)
        text = body if body and mag == 1 else f"{mag}{body}"
        out.append(("-" if c < 0 else "+") + text)
    s = " ".join(out)
    return s[1:] if s.startswith("+") else s


def latex_value(ratio):
    num = latex_poly(ratio.numerator)
    if ratio.denom_index == 0:
        return num
    return f"\\frac{{{num}}}{{(q^2;q^2)_{{{ratio.denom_index}}}}}"


def latex_matrix(rows):
    body = " \\\\\n".join(" & ".join(str(x) for x in row) for row in rows)
    return "\\begin{bmatrix}\n" + body + "\n\\end{bmatrix}"


def _parse_fraction(text):
    try:
        f = as_tangle_fraction(text)
    except ValueError as exc:
        raise click.BadParameter(str(exc), param_hint="--fraction")
    if not is_closable(f):
        raise click.BadParameter(
            f"{f} is not closable (needs u/v > 1 and a non-RI tangle)", param_hint="--fraction"
        )
    return f


def _compute(f, color, method):
    route = METHODS[method]
    if route is None:
        value = homfly(f, color)
    else:
        value = quiver_coefficient(quiver(f, route), color)
    return value_to_json(value)


def _fail(exc):
    click.echo(f"error: {exc}", err=True)
    sys.exit(EXIT_MISMATCH)


@click.group()
@click.version_option(__version__)
def main():
    """Colored HOMFLY-PT invariants of rational knots and links."""


@main.command()
@click.option("--fraction", required=True, help="Tangle fraction U/V with U/V > 1.")
@click.option("--color", type=click.IntRange(min=0), default=1, show_default=True)
@click.option("--method", type=click.Choice(list(METHODS)), default="skein", show_default=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json", "latex"]), default="text", show_default=True)
@click.option("--no-cache", is_flag=True, help="Neither read nor write the cache.")
def compute(fraction, color, method, fmt, no_cache):
    """Print the color-j invariant of the closure of the tangle U/V."""
    f = _parse_fraction(fraction)
    data = None if no_cache else cache_load(f, color, method)
    if data is None:
        try:
            data = _compute(f, color, method)
        except RatlqError as exc:
            _fail(exc)
        if not no_cache:
            cache_store(f, color, method, data)
    # output is always rendered from the canonical JSON, so warm and cold runs agree
    value = value_from_json(data)
    if fmt == "json":
        click.echo(json.dumps({"fraction": str(f), "color": color, "method": method, "value": data}, sort_keys=True))
    elif fmt == "latex":
        click.echo(latex_value(value))
    else:
        click.echo(repr(value))


@main.command("quiver")
@click.option("--fraction", required=True, help="Tangle fraction U/V with U/V > 1.")
@click.option("--route", type=click.Choice(["algebraic", "geometric"]), default="algebraic", show_default=True)
@click.option(
    "--variant", type=click.Choice(["antisymmetric", "symmetric", "jones"]), default="antisymmetric", show_default=True
)
@click.option("--raw", is_flag=True, help="Leave out the correction terms (framing normalization).")
@click.option("--format", "fmt", type=click.Choice(["json", "latex"]), default="json", show_default=True)
def quiver_cmd(fraction, route, variant, raw, fmt):
    """Print quiver data [S|A|Q] for the closure of the tangle U/V."""
    f = _parse_fraction(fraction)
    try:
        data = quiver(f, route, corrected=not raw)
        if variant == "symmetric":
            data = symmetric_transform(data)
        if variant == "jones":
            H, QJ = jones_data(data)
    except (RatlqError, ValueError) as exc:
        _fail(exc)
    if variant == "jones":
        if fmt == "json":
            click.echo(json.dumps({"fraction": str(f), "H": list(H), "Q": [list(r) for r in QJ]}))
        else:
            click.echo("H = " + latex_matrix([[h] for h in H]))
            click.echo("Q = " + latex_matrix(QJ))
        return
    if fmt == "json":
        out = data.to_json()
        out["fraction"] = str(f)
        out["route"] = route
        out["corrected"] = data.corrected
        click.echo(json.dumps(out))
    else:
        click.echo("S = " + latex_matrix([[s] for s in data.S]))
        click.echo("A = " + latex_matrix([[a] for a in data.A]))
        click.echo("Q = " + latex_matrix(data.Q))


def _verify_one(args):
    f, max_color = args
    try:
        return str(f), cross_verify(f, max_color), None
    except RatlqError as exc:
        return str(f), None, str(exc)


@main.command()
@click.option("--max-denominator", type=click.IntRange(min=3), default=10, show_default=True,
              help="Check every admissible U/V with U + V up to this bound.")
@click.option("--max-color", type=click.IntRange(min=1), default=3, show_default=True)
@click.option("--workers", type=click.IntRange(min=1), default=os.cpu_count() or 1, show_default=True)
def verify(max_denominator, max_color, workers):
    """Cross-check skein, algebraic and geometric routes over small fractions."""
    jobs = [(f, max_color) for f in admissible_fractions(max_denominator)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(_verify_one, jobs))
    failures = []
    for name, report, error in results:
        if error is None:
            statuses = " ".join(report["status"][j] for j in range(max_color + 1))
            fr = report["framing"]
            click.echo(f"{name:>6}  {statuses}  alg {tuple(fr['algebraic'])}  geo {tuple(fr['geometric'])}")
        else:
            click.echo(f"{name:>6}  FAIL  {error}")
            failures.append((name, error))
    click.echo(f"{len(results) - len(failures)}/{len(results)} fractions pass")
    if failures:
        name, error = failures[0]
        click.echo(f"first failure: {name}: {error}", err=True)
        sys.exit(EXIT_MISMATCH)


if __name__ == "__main__":
    main()
