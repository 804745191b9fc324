import json

import pytest

import arithlc

SUITE = """
[run]
seed = 5

[job n1]
command = solve
p = 7
N = 2
q = 2

[job mixed]
command = mixed-trace
primes = 3 5
d = 1
"""


def test_one_dimensional_value():
    lam = arithlc.solve_lambda(7, 2, 1, [[2]])
    assert lam == [["8"]]


def test_run_config_is_deterministic():
    a, code_a = arithlc.run_config(SUITE)
    b, code_b = arithlc.run_config(SUITE, jobs=2)
    assert a == b
    assert code_a == code_b == 0
    doc = json.loads(a)
    assert doc["seed"] == 5
    assert [j["name"] for j in doc["jobs"]] == ["n1", "mixed"]
    assert doc["jobs"][0]["values"]["Lambda_1(1,1)"] == "8"


def test_config_errors_raise():
    with pytest.raises(arithlc.ConfigError, match="p must be an odd prime"):
        arithlc.run_config("[job a]\ncommand = solve\np = 4\nq = 1\n")


def test_checks_pass():
    for c in arithlc.verify_conformal(2, 2, 3):
        assert c["pass"], c
    for c in arithlc.star_curvature(2, 3, 5):
        assert c["pass"], c
    assert all(c["pass"] for c in arithlc.section_check([[1, 0, 0, 2], [1, 1, 1, 2]], 5))


def test_math_errors_map_to_exceptions():
    with pytest.raises(arithlc.DomainError):
        arithlc.verify_conformal(2, 3, 3)
    with pytest.raises(arithlc.NotAUnit):
        arithlc.solve_lambda(3, 2, 2, [[3, 0, 0, 1]])
    assert issubclass(arithlc.NotAUnit, arithlc.Error)


def test_d_determinant_at_identity():
    y = [[[1, 0], [0, 1]], [[1, 0], [0, 1]]]
    assert arithlc.d_determinant(2, y) == -16
