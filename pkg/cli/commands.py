"""
Subcommand registry and dispatch.

Each handler is registered with the options it reads and returns a plain
result mapping; run_command wraps it into the output document and maps
library errors onto exit statuses (0 ok, 2 input, 3 resource cap, 4 field
extension required). Any other exception is reported as ComputationAborted
with status 3; the traceback is logged at DEBUG.
"""

import argparse
import json
import logging
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from algebra.poly import LinearPoly, compose
from cli.documents import render
from cli.parser import parse_curve, parse_field, parse_scalar, parse_univariate
from dml.experiments import ReturnSetSurvey
from dml.orbits import orbit, preperiodic_check, return_set_exact, return_sets_modp
from dml.progressions import progression_decompose
from errors import ComputationAborted, HypothesisViolation, InputError, RittKitError
from periodic.bounds import bound_c, bound_c1, closed_form_c2
from periodic.curves import curve_image, curve_period, ms_diagonal_curves, periodic_curve_search
from ritt.conjugacy import classify, equivalence_report, linear_conjugacy, power_normal_form
from ritt.decompose import complete_decompositions, engstrom_refine
from ritt.semiconj import (SemiconjWitness, approx_classes, common_semiconjugate, inou_normal_form,
                           semiconj_check, solve_eta, solve_eta_all, solve_p_report)
from ritt.symmetry import (align_iterates, common_commuting_iterate, gamma_group, lowest_commuting_search,
                           m_infinity)
from settings import ALGEBRA_CAPS, DML_CONFIG, SEARCH_CAPS

logger = logging.getLogger(__name__)

Option = Tuple[Tuple[str, ...], dict]
COMMANDS: Dict[str, Tuple[Callable, List[Option], str]] = {}


def option(*flags: str, **kwargs) -> Option:
    return flags, kwargs


def command(name: str, *options: Option, help: str = ""):
    def register(handler: Callable) -> Callable:
        COMMANDS[name] = (handler, list(options), help)
        return handler
    return register


# -- shared options ------------------------------------------------------------

F = option("--f", required=True, help="polynomial in x")
G = option("--g", required=True, help="polynomial in x")
P = option("--p", required=True, help="polynomial in x")
ETA = option("--eta", required=True, help="polynomial in x")
CURVE = option("--curve", required=True, help="polynomial in x and y")
NMAX = option("--nmax", type=int, default=SEARCH_CAPS["n_max"])
DEG_CAP = option("--deg-cap", type=int, default=SEARCH_CAPS["deg_cap"])
ITER_BOUND = option("--iter-bound", type=int, default=None)
HEIGHT_CAP = option("--height-cap", type=int, default=DML_CONFIG["height_cap_bits"])
MAPS = (option("--f1", required=True), option("--f2", required=True),
        option("--alpha", required=True, help="comma separated pair"))


def _poly(args, key: str):
    return parse_univariate(getattr(args, key), args.field)


def _alpha(args):
    parts = args.alpha.split(",")
    if len(parts) != 2:
        raise InputError(f"alpha needs two comma separated coordinates, got {args.alpha!r}")
    return tuple(parse_scalar(part, args.field) for part in parts)


def _ints(text: str) -> List[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise InputError(f"expected comma separated integers, got {text!r}")


# -- decomposition and conjugacy -------------------------------------------------

@command("classify", F, help="cyclic / dihedral / disintegrated")
def classify_command(args):
    return {"shape": classify(_poly(args, "f"))}


@command("decompose", F, option("--degree-cap", type=int, default=ALGEBRA_CAPS["decompose_degree_cap"]))
def decompose_command(args):
    report = complete_decompositions(_poly(args, "f"), args.degree_cap)
    return {"chains": [{"factors": c.factors, "degrees": c.degrees} for c in report.chains],
            "quotient": [c.degrees for c in report.quotient]}


@command("engstrom", *(option(f"--{k}", required=True) for k in "abcd"), help="a o b = c o d refinement")
def engstrom_command(args):
    a, b, c, d = (_poly(args, k) for k in "abcd")
    certificate = engstrom_refine(a, b, c, d)
    return {"certificate": certificate, "verified": certificate.check(a, b, c, d)}


@command("conjugacy", F, G)
def conjugacy_command(args):
    f, g = _poly(args, "f"), _poly(args, "g")
    return {"conjugacy": linear_conjugacy(f, g), "equivalence": equivalence_report(f, g)}


@command("power-normal-form", F)
def power_normal_form_command(args):
    f = _poly(args, "f")
    form = power_normal_form(f)
    verified = form is not None and compose(form.ell1.as_poly(), compose(f, form.ell2.as_poly())) == form.rebuild()
    return {"normal_form": form, "verified": verified}


# -- symmetries ------------------------------------------------------------------

@command("gamma", F, option("--strict", action="store_true"))
def gamma_command(args):
    group = gamma_group(_poly(args, "f"), args.strict)
    return {"group": group, "order": group.order, "is_group": group.is_group()}


@command("m-infinity", F, ITER_BOUND)
def m_infinity_command(args):
    f = _poly(args, "f")
    group = m_infinity(f, args.iter_bound)
    return {"group": group, "order": group.order, "common_iterate": common_commuting_iterate(f, args.iter_bound)}


@command("align", F, G, option("--ell", required=True), option("--n", type=int, required=True))
def align_command(args):
    ell = LinearPoly.from_poly(_poly(args, "ell"))
    return {"aligned": align_iterates(_poly(args, "f"), _poly(args, "g"), ell, args.n)}


@command("lowest-commuting", F, option("--iter-bound", type=int, default=2),
         option("--deg-cap", type=int, default=SEARCH_CAPS["solve_p_deg_bound"]))
def lowest_commuting_command(args):
    return {"candidate": lowest_commuting_search(_poly(args, "f"), args.iter_bound, args.deg_cap)}


# -- semiconjugacy -----------------------------------------------------------------

@command("semiconj-check", F, P, ETA)
def semiconj_check_command(args):
    witness = SemiconjWitness(_poly(args, "f"), _poly(args, "p"), _poly(args, "eta"))
    return {"holds": semiconj_check(witness)}


@command("solve-eta", F, P)
def solve_eta_command(args):
    f, p = _poly(args, "f"), _poly(args, "p")
    return {"eta": solve_eta(f, p), "all": solve_eta_all(f, p)}


@command("solve-p", F, ETA, option("--deg-bound", type=int, default=SEARCH_CAPS["solve_p_deg_bound"]))
def solve_p_command(args):
    return {"report": solve_p_report(_poly(args, "f"), _poly(args, "eta"), args.deg_bound)}


@command("inou", F, P, option("--eta", default=None))
def inou_command(args):
    f, p = _poly(args, "f"), _poly(args, "p")
    eta = _poly(args, "eta") if args.eta else solve_eta(f, p)
    if eta is None:
        raise HypothesisViolation(f"{p} is not a semiconjugacy out of {f}")
    return {"normal_form": inou_normal_form(SemiconjWitness(f, p, eta)), "eta": eta}


@command("common-semiconj", F, G, NMAX, DEG_CAP)
def common_semiconj_command(args):
    f, g = _poly(args, "f"), _poly(args, "g")
    result = common_semiconjugate(f, g, args.nmax, args.deg_cap)
    return {"status": result.status, "witness": result.witness, "strategy": result.strategy,
            "transcript": result.transcript,
            "verified": result.witness is not None and result.witness.check(f, g)}


@command("approx-classes", option("--f", action="append", required=True), NMAX, DEG_CAP)
def approx_classes_command(args):
    fs = [parse_univariate(text, args.field) for text in args.f]
    return {"classes": approx_classes(fs, args.nmax, args.deg_cap)}


# -- periodic curves ---------------------------------------------------------------

@command("curve-image", CURVE, F, G)
def curve_image_command(args):
    curve = parse_curve(args.curve, args.field)
    return {"image": curve_image(curve, _poly(args, "f"), _poly(args, "g"))}


@command("curve-period", CURVE, F, G, NMAX)
def curve_period_command(args):
    f, g = _poly(args, "f"), _poly(args, "g")
    certificate = curve_period(parse_curve(args.curve, args.field), f, g, args.nmax)
    if certificate is None:
        return {"period": None, "status": f"no period up to {args.nmax}"}
    return {"period": certificate.period, "image_chain": certificate.image_chain,
            "verified": certificate.verify(f, g)}


@command("ms-diagonal", F, option("--deg-cap", type=int, default=8), option("--iter-bound", type=int, default=2))
def ms_diagonal_command(args):
    return {"curves": ms_diagonal_curves(_poly(args, "f"), args.deg_cap, args.iter_bound)}


@command("periodic-curves", F, G, NMAX, option("--deg-cap", type=int, default=SEARCH_CAPS["solve_p_deg_bound"]),
         option("--no-lines", action="store_true"))
def periodic_curves_command(args):
    found = periodic_curve_search(_poly(args, "f"), _poly(args, "g"), args.nmax, args.deg_cap,
                                  include_lines=not args.no_lines)
    return {"curves": found}


# -- constants -----------------------------------------------------------------------

@command("bound-c1", option("d", type=int), option("n", type=int))
def bound_c1_command(args):
    result = bound_c1(args.d, args.n)
    return {"value": result.value, "trace": result.trace}


@command("bound-c", option("d", type=int), option("n", type=int))
def bound_c_command(args):
    result = bound_c(args.d, args.n)
    doc = {"value": result.value, "trace": result.trace}
    if args.n == 2:
        doc["closed_form"] = closed_form_c2(args.d)
    return doc


# -- dynamical Mordell-Lang harness ----------------------------------------------------

@command("orbit", *MAPS, option("--n", type=int, required=True), HEIGHT_CAP)
def orbit_command(args):
    path = orbit(_poly(args, "f1"), _poly(args, "f2"), _alpha(args), args.n, args.height_cap)
    return {"points": path.points, "truncated_at": path.truncated_at}


@command("return-set", *MAPS, CURVE, option("--n", type=int, required=True), HEIGHT_CAP)
def return_set_command(args):
    found = return_set_exact(_poly(args, "f1"), _poly(args, "f2"), _alpha(args),
                             parse_curve(args.curve, args.field), args.n, args.height_cap)
    doc = {"indices": found.indices, "truncated_at": found.truncated_at}
    if found.truncated_at is None:
        doc["progressions"] = progression_decompose(found.indices, args.n)
    return doc


@command("return-set-modp", *MAPS, CURVE, option("--n", type=int, required=True),
         option("--primes", default=",".join(map(str, DML_CONFIG["primes"]))))
def return_set_modp_command(args):
    results, bad = return_sets_modp(_poly(args, "f1"), _poly(args, "f2"), _alpha(args),
                                    parse_curve(args.curve, args.field), _ints(args.primes), args.n)
    merged: Optional[set] = None
    for p in sorted(results):
        merged = set(results[p].indices) if merged is None else merged & set(results[p].indices)
    return {"by_prime": {p: results[p] for p in sorted(results)}, "bad_primes": bad,
            "intersection": merged}


@command("survey", *MAPS, CURVE, option("--n", type=int, required=True), HEIGHT_CAP,
         option("--primes", default=",".join(map(str, DML_CONFIG["primes"]))))
def survey_command(args):
    survey = ReturnSetSurvey(_poly(args, "f1"), _poly(args, "f2"), _alpha(args), parse_curve(args.curve, args.field),
                             args.n, _ints(args.primes), args.height_cap)
    table = survey.run()
    return {"table": table, "summary": survey.summary(),
            "cumulative_intersections": survey.cumulative_intersections()}


@command("progressions", option("--set", dest="indices", required=True), option("--horizon", type=int,
                                                                                  default=DML_CONFIG["horizon"]))
def progressions_command(args):
    indices = _ints(args.indices)
    found = progression_decompose(indices, args.horizon)
    return {"progressions": found, "status": "decomposed" if found is not None else "no pattern at this horizon"}


@command("preperiodic", F, option("--a", required=True), option("--n", type=int, required=True), HEIGHT_CAP)
def preperiodic_command(args):
    return {"result": preperiodic_check(_poly(args, "f"), parse_scalar(args.a, args.field), args.n,
                                        args.height_cap)}


# -- dispatch ----------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ritt-kit", description="Exact polynomial decomposition and dynamics toolkit")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    parser.add_argument("--job", help="JSON job file with command, inputs and caps")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    for name, (handler, options, text) in COMMANDS.items():
        child = sub.add_parser(name, help=text)
        child.add_argument("--field", default="Q", help='"Q" or "Q(zeta N)"')
        for flags, kwargs in options:
            child.add_argument(*flags, **kwargs)
        child.set_defaults(handler=handler)
    return parser


def job_argv(job: dict) -> List[str]:
    """Turn a job document {"command", "inputs", "caps"} into an argument vector."""
    if not isinstance(job, dict) or "command" not in job:
        raise InputError("a job needs a command")
    unknown = set(job) - {"command", "inputs", "caps"}
    if unknown:
        raise InputError(f"unknown job keys {sorted(unknown)}")
    argv = [str(job["command"])]
    for section in ("inputs", "caps"):
        for key, value in (job.get(section) or {}).items():
            if key in ("d", "n") and job["command"] in ("bound-c1", "bound-c"):
                argv.append(str(value))
            elif isinstance(value, bool):
                if value:
                    argv.append(f"--{key}")
            elif isinstance(value, list) and key in ("primes", "set"):
                argv += [f"--{key}", ",".join(map(str, value))]
            elif isinstance(value, list):
                for item in value:
                    argv += [f"--{key}", str(item)]
            else:
                argv += [f"--{key}", str(value)]
    return argv


def _load_job(path: str) -> List[str]:
    try:
        with open(path, "r") as f:
            return job_argv(json.load(f))
    except (OSError, json.JSONDecodeError) as e:
        raise InputError(f"cannot read job file {path}: {e}")


def execute(argv: Sequence[str]) -> Tuple[int, dict]:
    document = {"command": argv[0] if argv else None}
    try:
        args = build_parser().parse_args(list(argv))
        if args.job:
            return execute(_load_job(args.job))
        if args.command is None:
            raise InputError("no subcommand given")
        document["command"] = args.command
        field_text = args.field
        args.field = parse_field(field_text)
        document["field"] = args.field.label
        logger.info("▶️ %s over %s", args.command, args.field.label)
        document["result"] = args.handler(args)
        document["status"] = "ok"
        return 0, document
    except RittKitError as e:
        logger.warning("❌ %s: %s", type(e).__name__, e)
        document["status"] = "error"
        document["error"] = e.to_document()
        return e.exit_status, document
    except Exception as e:
        logger.error("💥 unexpected failure in %s: %s", document["command"], e,
                     exc_info=logger.isEnabledFor(logging.DEBUG))
        aborted = ComputationAborted(e)
        document["status"] = "error"
        document["error"] = aborted.to_document()
        return aborted.exit_status, document


def run_command(argv: Sequence[str]) -> Tuple[int, str]:
    status, document = execute(argv)
    return status, render(document)
