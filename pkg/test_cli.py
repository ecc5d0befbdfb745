#!/usr/bin/env python3
"""
Polynomial grammar, job files, output documents and exit statuses.
"""

import json
import random
from fractions import Fraction

import pytest

import ritt_kit
from algebra.curves import BivarCurve
from algebra.fields import FieldDescriptor, Q
from algebra.poly import Poly
from cli.commands import COMMANDS, execute, job_argv, run_command
from cli.parser import parse_curve, parse_field, parse_poly, parse_scalar, parse_univariate
from errors import InputError, ParseError, ResourceCapExceeded

x = Poly.x(Q)

TORSION_PERIOD = ["curve-period", "--field", "Q(zeta 7)", "--curve", "x - z*y", "--f", "x^2", "--g", "x^2",
                  "--nmax", "5"]


def test_parse_examples():
    assert parse_poly("x^3 + x") == x ** 3 + x
    assert parse_poly("x^3 + x").coeffs == Poly.from_coeffs(Q, [0, 1, 0, 1]).coeffs
    assert parse_poly("x^5 + 2*x^4 + x^3") == x ** 3 * (x + 1) ** 2
    assert parse_poly("(x + 1)^2 - 1/2*x") == x ** 2 + Fraction(3, 2) * x + 1
    assert parse_poly("-x^2 + 3") == 3 - x ** 2

    K = FieldDescriptor.cyclotomic(7)
    curve = parse_poly("x - z*y", K)
    assert isinstance(curve, BivarCurve)
    assert curve == BivarCurve.from_terms(K, {(1, 0): K.one(), (0, 1): -K.gen()})


def test_parse_scalars_and_curves():
    assert parse_scalar("3/4") == Q.scalar(Fraction(3, 4))
    K = FieldDescriptor.cyclotomic(4)
    assert parse_scalar("z^2", K) == K.scalar(-1)
    assert parse_curve("y - x^2") == BivarCurve.graph(x ** 2)
    with pytest.raises(ParseError):
        parse_scalar("x + 1")
    with pytest.raises(ParseError):
        parse_univariate("x + y")


def test_field_headers():
    assert parse_field("Q") == Q
    assert parse_field("field Q") == Q
    assert parse_field("field Q(zeta 7)").label == "Q(zeta 7)"
    assert parse_field("Q( zeta 12 )") == FieldDescriptor.cyclotomic(12)
    with pytest.raises(ParseError):
        parse_field("R")
    with pytest.raises(ParseError):
        parse_field("Q(zeta 0)")


def test_syntax_errors_carry_positions():
    with pytest.raises(ParseError) as info:
        parse_poly("x + * 2")
    assert info.value.position == 4

    with pytest.raises(ParseError):
        parse_poly("x^^2")
    with pytest.raises(ParseError):
        parse_poly("x^1/2")
    with pytest.raises(ParseError):
        parse_poly("(x + 1")
    with pytest.raises(ParseError):
        parse_poly("")
    with pytest.raises(ParseError):
        parse_poly("x # 1")
    with pytest.raises(ParseError):
        parse_poly("1/0")


def test_generator_needs_cyclotomic_header():
    with pytest.raises(ParseError) as info:
        parse_poly("z*x")
    assert info.value.position == 0


def _random_scalar(rng, field):
    value = field.scalar(Fraction(rng.randint(-9, 9), rng.randint(1, 5)))
    if field.is_rational:
        return value
    z = field.gen()
    for k in range(1, rng.randint(1, 3)):
        value = value + field.scalar(rng.randint(-3, 3)) * z ** k
    return value


def test_print_parse_roundtrip():
    rng = random.Random(200)
    fields = [Q, FieldDescriptor.cyclotomic(5), FieldDescriptor.cyclotomic(4)]
    for _ in range(200):
        field = rng.choice(fields)
        f = Poly.from_coeffs(field, [_random_scalar(rng, field) for _ in range(rng.randint(0, 7))])
        assert parse_univariate(str(f), field) == f


def test_every_subcommand_is_registered():
    expected = {"classify", "decompose", "engstrom", "gamma", "m-infinity", "semiconj-check", "solve-eta",
                "solve-p", "inou", "common-semiconj", "approx-classes", "curve-image", "curve-period",
                "ms-diagonal", "bound-c1", "bound-c", "orbit", "return-set", "return-set-modp", "progressions",
                "preperiodic"}
    assert expected <= set(COMMANDS)


def test_classify_document():
    status, document = execute(["classify", "--f", "x^3 + x"])
    assert status == 0
    assert document["status"] == "ok"
    assert document["field"] == "Q"
    assert document["result"]["shape"].disintegrated


def test_bound_c_document():
    status, text = run_command(["bound-c", "2", "2"])
    assert status == 0
    doc = json.loads(text)
    value = doc["result"]["value"]
    assert value["kind"] == "exact" and value["value"] == 2147483648
    assert len(doc["result"]["trace"]) == 2
    assert doc["result"]["closed_form"]["value"] == 2147483648


def test_curve_period_document():
    status, text = run_command(TORSION_PERIOD)
    assert status == 0
    doc = json.loads(text)
    assert doc["field"] == "Q(zeta 7)"
    assert doc["result"]["period"] == 3
    assert doc["result"]["verified"] is True
    assert len(doc["result"]["image_chain"]) >= 3


def test_negative_answers_exit_zero():
    status, document = execute(["common-semiconj", "--f", "x^2 + 1", "--g", "x^2", "--nmax", "1", "--deg-cap", "2"])
    assert status == 0
    assert document["result"]["status"] == "not found (bounded search)"

    status, document = execute(["progressions", "--set", "2,3,5,7,11,13", "--horizon", "14"])
    assert status == 0


def test_input_errors_exit_two():
    status, document = execute(["classify", "--f", "x^^3"])
    assert status == 2
    assert document["error"]["type"] == "ParseError"

    status, document = execute(["frobnicate"])
    assert status == 2
    status, document = execute([])
    assert status == 2
    status, document = execute(["return-set-modp", "--f1", "x^2", "--f2", "x^2", "--alpha", "1,1",
                                "--curve", "x - y", "--n", "3", "--primes", "9"])
    assert status == 2


def test_resource_cap_exits_three():
    status, document = execute(["decompose", "--f", "x^4", "--degree-cap", "2"])
    assert status == 3
    assert document["error"]["details"]["cap"] == "decompose_degree_cap"


def test_field_extension_exits_four():
    status, document = execute(["gamma", "--f", "x^4 + x", "--strict"])
    assert status == 4
    assert document["error"]["type"] == "FieldExtensionRequired"
    assert document["error"]["details"]["hint"] == "Q(zeta 3)"


def test_job_files(tmp_path):
    job = tmp_path / "job.json"
    job.write_text(json.dumps({"command": "bound-c1", "inputs": {"d": 2, "n": 2}}))
    status, document = execute(["--job", str(job)])
    assert status == 0
    assert document["command"] == "bound-c1"
    assert document["result"]["value"].value == 32

    job.write_text(json.dumps({"command": "curve-period",
                               "inputs": {"field": "Q(zeta 7)", "curve": "x - z*y", "f": "x^2", "g": "x^2"},
                               "caps": {"nmax": 5}}))
    status, document = execute(["--job", str(job)])
    assert status == 0 and document["result"]["period"] == 3

    assert execute(["--job", str(tmp_path / "missing.json")])[0] == 2
    job.write_text("{not json")
    assert execute(["--job", str(job)])[0] == 2


def test_job_validation():
    assert job_argv({"command": "survey", "caps": {"primes": [3, 5]}}) == ["survey", "--primes", "3,5"]
    assert job_argv({"command": "gamma", "inputs": {"f": "x^3", "strict": True}}) == ["gamma", "--f", "x^3",
                                                                                      "--strict"]
    with pytest.raises(InputError):
        job_argv({"inputs": {}})
    with pytest.raises(InputError):
        job_argv({"command": "gamma", "extra": 1})


def test_documents_are_deterministic():
    runs = [
        ["return-set-modp", "--f1", "x^2", "--f2", "x^2", "--alpha", "2,3", "--curve", "x - y", "--n", "4",
         "--primes", "3,5,7,11"],
        ["survey", "--f1", "x^2", "--f2", "x^2", "--alpha", "2,3", "--curve", "x - y", "--n", "3",
         "--primes", "3,5,7"],
        ["decompose", "--f", "x^6"],
        TORSION_PERIOD,
    ]
    for argv in runs:
        first, second = run_command(argv), run_command(argv)
        assert first[0] == 0
        assert first == second


def test_main_prints_the_document(capsys):
    assert ritt_kit.main(["bound-c1", "2", "2"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["result"]["value"]["value"] == 32


def test_exponents_above_the_degree_cap():
    with pytest.raises(ResourceCapExceeded):
        parse_poly("x^99999999")
    status, document = execute(["classify", "--f", "x^99999999 + 1"])
    assert status == 3
    assert document["error"]["details"]["cap"] == "degree_cap"


def test_bound_c_document_beyond_float_range():
    status, text = run_command(["bound-c", "3", "3"])
    assert status == 0
    value = json.loads(text)["result"]["value"]
    assert value["kind"] == "symbolic"
    assert value["log2"] == "inf"
    assert 1035 < value["log2_log2"] < 1037
    assert value["integral"] is False


def test_unexpected_failures_get_a_document(monkeypatch):
    def overflow(d, n):
        raise OverflowError("int too large to convert to float")

    monkeypatch.setattr("cli.commands.bound_c", overflow)
    status, text = run_command(["bound-c", "3", "3"])
    assert status == 3
    doc = json.loads(text)
    assert doc["status"] == "error"
    assert doc["error"]["type"] == "ComputationAborted"
    assert doc["error"]["details"]["cause"] == "OverflowError"
