"""Command-line interface.

Every subcommand emits a versioned JSON envelope on stdout:

    {"schema": "veronese-kit/1", "status": "Ok", "payload": {...}, "log": [...]}

with exit code 0 exactly for status "Ok" (2: PreconditionFailed, 3:
BudgetExceeded). The one exception is `eqs --format text`, whose success
output is the plain generator file (one labeled generator per line); its
errors still arrive as envelopes. Configuration documents follow the schema
in `serialize`; subcommand outputs that contain a configuration can be fed
back to `eval`/`gale` directly.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass
from itertools import combinations

import click

from .brackets import (
    HigherEquationReport,
    phi_as_bracket_poly,
    psi_generators,
    relabel,
    wdn_membership,
)
from .conic import ConicEquationReport, w2n_membership
from .configurations import (
    dimension_estimate,
    sample_degenerate,
    sample_generic,
    sample_nodal_conic,
    sample_on_rnc,
    sample_quasi_veronese_chain,
)
from .errors import BudgetExceededError, VeroneseKitError
from .gale import affine_gale, duality_certificate, gale_of_config
from .serialize import (
    bracket_poly_to_json,
    config_from_json,
    config_to_json,
    field_to_json,
    parse_field_spec,
)
from .transversal import Hypergraph, bounds, failing_partition, min_transversal
from . import verify as verify_mod
from .brackets import format_bracket_poly

SCHEMA = "veronese-kit/1"

_EXIT_CODES = {"Ok": 0, "PreconditionFailed": 2, "BudgetExceeded": 3}


@dataclass(frozen=True)
class CommandResult:
    """Envelope for one CLI invocation."""

    status: str
    payload: dict
    log: tuple[str, ...] = ()

    @property
    def exit_code(self) -> int:
        return _EXIT_CODES[self.status]

    def to_document(self) -> dict:
        return {"schema": SCHEMA, "status": self.status, "payload": self.payload, "log": list(self.log)}


def _finish(result: CommandResult) -> None:
    click.echo(json.dumps(result.to_document(), sort_keys=True, indent=2))
    sys.exit(result.exit_code)


def _fail(status: str, message: str) -> None:
    _finish(CommandResult(status, {"error": message}, (message,)))


def _run(fn) -> None:
    try:
        result = fn()
    except BudgetExceededError as e:
        _fail("BudgetExceeded", str(e))
    except (VeroneseKitError, ValueError, KeyError, TypeError, ZeroDivisionError) as e:
        _fail("PreconditionFailed", str(e))
    else:
        _finish(result)


def _read_json_input(source: str):
    try:
        raw = sys.stdin.read() if source == "-" else open(source, "r", encoding="utf-8").read()
    except OSError as e:
        raise ValueError(f"cannot read {source!r}: {e}") from e
    try:
        return json.loads(raw)
    except json.JSONDecodeError as e:
        raise ValueError(f"malformed JSON at line {e.lineno}, column {e.colno}: {e.msg}") from e


def _extract_config(doc):
    """Accept a bare configuration, a payload with one, or a full envelope."""
    if isinstance(doc, dict):
        if "columns" in doc:
            return config_from_json(doc)
        for key in ("payload", "config"):
            if key in doc:
                return _extract_config(doc[key])
    raise ValueError("no configuration document found in input")


def _conic_report_json(field, r: ConicEquationReport) -> dict:
    out = {
        "kind": "conic",
        "n": r.n,
        "checked": r.checked,
        "all_vanish": r.all_vanish,
        "nonvanishing": [list(I) for I in r.nonvanishing],
    }
    if r.values is not None:
        out["values"] = {
            ",".join(map(str, I)): field.scalar_to_json(v) for I, v in r.values.items()
        }
    return out


def _higher_report_json(field, r: HigherEquationReport) -> dict:
    witness = None
    if r.witness is not None:
        I, J, v = r.witness
        witness = {"I": list(I), "J": list(J), "value": field.scalar_to_json(v)}
    return {
        "kind": "higher",
        "d": r.d,
        "n": r.n,
        "degenerate": r.degenerate,
        "all_vanish": r.all_vanish,
        "checked": r.checked,
        "witness": witness,
        "classification": r.classification,
        "in_V": r.in_v,
        "note": r.note,
    }


@click.group()
def main():
    """Exact equations, Gale transforms and transversality for point configurations."""


# -- eqs ---------------------------------------------------------------------


@main.command("eqs")
@click.option("--d", "d", type=int, required=True, help="ambient projective dimension")
@click.option("--n", "n", type=int, required=True, help="number of points")
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["text", "json"]),
    default="text",
    show_default=True,
    help="plain generator file or JSON envelope",
)
def cmd_eqs(d: int, n: int, fmt: str):
    """Emit the membership equation generators for (P^d)^n in lex order."""

    def body() -> CommandResult:
        if d < 2:
            raise ValueError(f"generators are defined for d >= 2, got d={d}")
        if d == 2 and n < 6:
            raise ValueError(f"d=2 needs n >= 6, got n={n}")
        if d >= 3 and n < d + 4:
            raise ValueError(f"d={d} needs n >= {d + 4}, got n={n}")
        gens = []
        if d == 2:
            phi = phi_as_bracket_poly()
            for I in combinations(range(1, n + 1), 6):
                gens.append({"I": list(I), "poly": relabel(phi, I, ground=n)})
        else:
            base = psi_generators(d)
            for J in combinations(range(1, n + 1), d + 4):
                for I, poly in base:
                    gens.append({"I": list(I), "J": list(J), "poly": relabel(poly, J, ground=n)})
        lines = []
        for g in gens:
            label = ",".join(map(str, g["I"]))
            if "J" in g:
                label += "; " + ",".join(map(str, g["J"]))
            lines.append(f"({label}) {format_bracket_poly(g['poly'])}")
        if fmt == "text":
            click.echo("\n".join(lines))
            sys.exit(0)
        payload = {
            "d": d,
            "n": n,
            "count": len(gens),
            "generators": [
                {k: v for k, v in g.items() if k != "poly"} | bracket_poly_to_json(g["poly"])
                for g in gens
            ],
        }
        return CommandResult("Ok", payload)

    _run(body)


# -- eval ---------------------------------------------------------------------


@main.command("eval")
@click.argument("input", default="-")
@click.option("--values/--no-values", "with_values", default=False, help="include per-subset values (d=2 only)")
def cmd_eval(input: str, with_values: bool):
    """Evaluate the membership equations on a configuration JSON document."""

    def body() -> CommandResult:
        p = _extract_config(_read_json_input(input))
        if p.d == 2:
            report = w2n_membership(p, collect_values=with_values)
            payload = {"config": config_to_json(p), "report": _conic_report_json(p.field, report)}
        elif p.d >= 3:
            report = wdn_membership(p)
            payload = {"config": config_to_json(p), "report": _higher_report_json(p.field, report)}
        else:
            raise ValueError(f"no membership equations for d={p.d}")
        return CommandResult("Ok", payload)

    _run(body)


# -- gale ----------------------------------------------------------------------


@main.command("gale")
@click.argument("input", default="-")
def cmd_gale(input: str):
    """Gale-transform a configuration; certifies the minor duality exactly."""

    def body() -> CommandResult:
        p = _extract_config(_read_json_input(input))
        q = gale_of_config(p)
        cert = duality_certificate(p.coords, affine_gale(p.coords))
        payload = {
            "config": config_to_json(q),
            "source": {"d": p.d, "n": p.n},
            "certificate": {
                "lambda": p.field.scalar_to_json(cert.lambda_),
                "checked": cert.checked,
                "ok": cert.ok,
            },
        }
        return CommandResult("Ok", payload, (f"certified {cert.checked} complementary minor pairs",))

    _run(body)


# -- sample ----------------------------------------------------------------------


@main.command("sample")
@click.option("--family", type=click.Choice(["rnc", "generic", "degenerate", "nodal-conic", "chain"]), required=True)
@click.option("--d", "d", type=int, required=True)
@click.option("--n", "n", type=int, required=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--field", "field_spec", default="Fp:65521", show_default=True, help="Q, Fp, or Fp:<prime>")
@click.option("--height", type=int, default=100, show_default=True)
@click.option("--degrees", default=None, help="chain component degrees, e.g. '2,1'")
@click.option("--counts", default=None, help="chain points per component, e.g. '4,3'")
@click.option("--split", default=None, help="nodal-conic line split, e.g. '4,3'")
def cmd_sample(family, d, n, seed, field_spec, height, degrees, counts, split):
    """Produce a seeded configuration from one of the sample families."""

    def body() -> CommandResult:
        field = parse_field_spec(field_spec)
        payload: dict = {"family": family, "seed": seed, "field": field_to_json(field)}
        if family == "rnc":
            p = sample_on_rnc(field, d, n, seed=seed, height=height)
        elif family == "generic":
            p = sample_generic(field, d, n, seed=seed, height=height)
        elif family == "degenerate":
            p = sample_degenerate(field, d, n, seed=seed, height=height)
        elif family == "nodal-conic":
            if d != 2:
                raise ValueError("nodal-conic sampling is a d=2 family")
            sp = tuple(int(x) for x in split.split(",")) if split else None
            p = sample_nodal_conic(field, n, seed=seed, split=sp, height=height)
        else:
            if degrees is None:
                raise ValueError("chain sampling needs --degrees, e.g. --degrees 2,1")
            degs = tuple(int(x) for x in degrees.split(","))
            cts = tuple(int(x) for x in counts.split(",")) if counts else None
            desc, p = sample_quasi_veronese_chain(field, d, n, degs, seed=seed, counts=cts, height=height)
            payload["descriptor"] = {
                "degrees": list(desc.degrees),
                "components": [
                    {
                        "degree": c.degree,
                        "fresh_axes": list(c.fresh_axes),
                        "parent": c.parent,
                    }
                    for c in desc.components
                ],
            }
        payload["config"] = config_to_json(p)
        return CommandResult("Ok", payload)

    _run(body)


# -- transversal -------------------------------------------------------------------


@main.command("transversal")
@click.option("--n", "n", type=int, required=True)
@click.option("--k", "k", type=int, required=True)
@click.option("--edges", default=None, help="JSON list of k-subsets, inline or @file")
@click.option("--min", "minimum", type=click.Choice(["exact", "greedy"]), default=None)
def cmd_transversal(n, k, edges, minimum):
    """Partition-transversality checks, minimum families, and lower bounds."""

    def body() -> CommandResult:
        payload: dict = {"n": n, "k": k}
        inc, avg = bounds(n, k)
        payload["bounds"] = {"incidence": inc, "averaging": avg}
        if edges is not None:
            doc = (
                _read_json_input(edges[1:])
                if edges.startswith("@")
                else json.loads(edges)
            )
            H = Hypergraph(n, k, [tuple(e) for e in doc])
            part = failing_partition(H)
            payload["edges"] = [list(e) for e in H.edges]
            payload["transversal"] = part is None
            payload["failing_partition"] = None if part is None else [list(b) for b in part.blocks]
        if minimum is not None:
            size, example = min_transversal(n, k, mode=minimum)
            payload["minimum"] = {
                "mode": minimum,
                "size": size,
                "edges": [list(e) for e in example.edges],
            }
        return CommandResult("Ok", payload)

    _run(body)


# -- dim -------------------------------------------------------------------------


@main.command("dim")
@click.option("--d", "d", type=int, required=True)
@click.option("--n", "n", type=int, required=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--field", "field_spec", default="Fp:65521", show_default=True)
def cmd_dim(d, n, seed, field_spec):
    """Exact Jacobian rank of the curve-configuration map, vs the formula."""

    def body() -> CommandResult:
        field = parse_field_spec(field_spec)
        est = dimension_estimate(d, n, seed=seed, field=field)
        formula = d * d + 2 * d + n - 3
        payload = {
            "d": d,
            "n": n,
            "seed": seed,
            "field": field_to_json(field),
            "estimate": est,
            "formula": formula,
            "agrees": est == formula,
        }
        return CommandResult("Ok", payload)

    _run(body)


# -- verify ------------------------------------------------------------------------


@main.command("verify")
@click.option(
    "--suite",
    type=click.Choice(sorted(verify_mod.SUITES) + ["all"]),
    default="all",
    show_default=True,
)
@click.option("--seed", type=int, default=0, show_default=True)
def cmd_verify(suite, seed):
    """Run the self-verification suites; nonzero exit on any failing check."""

    def body() -> CommandResult:
        names = sorted(verify_mod.SUITES) if suite == "all" else [suite]
        suites = {}
        log = []
        all_passed = True
        for name in names:
            results = verify_mod.run_suite(name, seed)
            suites[name] = [
                {"name": r.name, "passed": r.passed, "detail": r.detail, "seed": r.seed}
                for r in results
            ]
            for r in results:
                log.append(f"{'PASS' if r.passed else 'FAIL'} [{name}] {r.name}: {r.detail}")
                all_passed = all_passed and r.passed
        payload = {"seed": seed, "suites": suites, "all_passed": all_passed}
        status = "Ok" if all_passed else "PreconditionFailed"
        return CommandResult(status, payload, tuple(log))

    _run(body)


if __name__ == "__main__":
    main()
