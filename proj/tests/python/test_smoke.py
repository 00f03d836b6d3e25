import json
import os
from fractions import Fraction
from pathlib import Path

import pytest

import ultranorm

FIXTURES = Path(os.environ.get("ULTRANORM_FIXTURES", Path(__file__).resolve().parents[1] / "fixtures"))


def test_abs_value_and_valuation():
    assert ultranorm.abs_value(Fraction(12, 5), 2) == Fraction(1, 4)
    assert ultranorm.abs_value(Fraction(12, 5), 5) == 5
    assert ultranorm.abs_value(7) == 1
    assert ultranorm.abs_value(0, 3) == 0
    assert ultranorm.valuation(Fraction(9, 4), 3) == 2
    assert ultranorm.valuation(Fraction(9, 4), 2) == -2


def test_norm_dual_quotient():
    space = ultranorm.NormedSpace({"type": "padic", "p": 3}, {"weights": ["1", "1/3"]})
    assert space.dim == 2
    assert space.norm([3, 1]) == Fraction(1, 3)
    assert space.norm([1, 9]) == 1
    dual = space.dual()
    assert dual.weights() == [1, 3]
    assert dual.dual().weights() == space.weights()
    q = space.quotient([[1, 1]])
    assert q.dim == 1
    assert q.norm([1]) == Fraction(1, 3)


def test_orthogonalize_gives_orthogonal_family():
    space = ultranorm.NormedSpace({"type": "padic", "p": 2}, {"weights": ["1", "1", "1/2"]})
    vectors, weights = space.orthogonalize([[1, 1, 0], [1, 0, 1], [0, 1, 1]])
    assert len(vectors) == 3
    for v, w in zip(vectors, weights):
        assert space.norm(v) == w
    # ultrametric orthogonality on a few combinations
    for a in range(-2, 3):
        for b in range(-2, 3):
            x = [a * vectors[0][i] + b * vectors[1][i] for i in range(3)]
            expect = max(ultranorm.abs_value(a, 2) * weights[0], ultranorm.abs_value(b, 2) * weights[1])
            assert space.norm(x) == expect


def test_lambda_of_standard_lattice():
    r = ultranorm.compute_lambda([[1, 0], [0, 1]], {"type": "sup"})
    assert r["rank"] == 2
    assert r["lambda_q"] == 1 and r["lambda_z"] == 1


def test_errors_carry_pointer_and_code():
    with pytest.raises(ultranorm.SchemaError) as e:
        ultranorm.NormedSpace({"type": "padic", "p": 4}, {"weights": ["1"]})
    assert e.value.pointer == "/field/p"
    space = ultranorm.NormedSpace({"type": "trivial"}, {"weights": ["1", "2"]})
    with pytest.raises(ultranorm.PreconditionError) as e:
        space.quotient([[1, 2], [2, 4]])
    assert e.value.code == "not_surjective"


def test_cli_in_process():
    r = ultranorm.run("dual", "--config", str(FIXTURES / "cli" / "dual.json"))
    assert r.code == 0
    out = json.loads(r.stdout)
    assert "norm" in out or "weights" in json.dumps(out)
    assert ultranorm.run("frobnicate").code == 2
