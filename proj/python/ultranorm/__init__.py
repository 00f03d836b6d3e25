"""Python bindings for the ultranorm library."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import _core
from ._core import PreconditionError, SchemaError

__all__ = [
    "NormedSpace",
    "PreconditionError",
    "RunResult",
    "SchemaError",
    "abs_value",
    "compute_lambda",
    "run",
    "valuation",
]


def _text(x) -> str:
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def _vec(v: Iterable) -> list[str]:
    return [_text(x) for x in v]


def _frac_vec(v: Sequence[str]) -> list[Fraction]:
    return [Fraction(x) for x in v]


@dataclass(frozen=True)
class RunResult:
    code: int
    stdout: str
    stderr: str


def run(*args: str) -> RunResult:
    """Runs one CLI invocation in process, e.g. run("dual", "--config", path)."""
    code, out, err = _core.run(list(args))
    return RunResult(code, out, err)


def abs_value(x, p: int | None = None) -> Fraction:
    """|x|_p, or the trivial absolute value when p is None."""
    return Fraction(_core.abs_value(_text(x), p))


def valuation(x, p: int) -> int:
    return _core.valuation(_text(x), p)


class NormedSpace:
    """Diagonalizable norm on Q^r. `field` and `norm` use the CLI JSON schema."""

    def __init__(self, field: dict, norm: dict, *, _impl=None):
        self._impl = _impl if _impl is not None else _core.NormedSpace.from_json(json.dumps(field), json.dumps(norm))

    @classmethod
    def _wrap(cls, impl) -> "NormedSpace":
        return cls(None, None, _impl=impl)

    @property
    def dim(self) -> int:
        return self._impl.dim

    def norm(self, v) -> Fraction:
        return Fraction(self._impl.norm(_vec(v)))

    def weights(self) -> list[Fraction]:
        return _frac_vec(self._impl.weights())

    def basis(self) -> list[list[Fraction]]:
        return [_frac_vec(b) for b in self._impl.basis()]

    def dual(self) -> "NormedSpace":
        return NormedSpace._wrap(self._impl.dual())

    def quotient(self, rows) -> "NormedSpace":
        return NormedSpace._wrap(self._impl.quotient([_vec(r) for r in rows]))

    def orthogonalize(self, flag):
        vectors, weights = self._impl.orthogonalize([_vec(f) for f in flag])
        return [_frac_vec(v) for v in vectors], _frac_vec(weights)

    def to_dict(self) -> dict:
        return json.loads(self._impl.to_json())


def compute_lambda(generators, norm: dict, jobs: int = 1) -> dict:
    """Successive-minimum bounds of a Z-lattice under a polyhedral norm."""
    r = _core.compute_lambda([_vec(g) for g in generators], json.dumps(norm), jobs)
    return {
        "rank": r["rank"],
        "lambda_q": Fraction(r["lambda_q"]),
        "lambda_z": Fraction(r["lambda_z"]),
        "q_basis": [_frac_vec(v) for v in r["q_basis"]],
        "z_basis": [_frac_vec(v) for v in r["z_basis"]],
    }
