"""Ready-made problems: the worked sum/product inequalities and a few companions."""

from __future__ import annotations

import json
from pathlib import Path

from .induction import ProblemSpec, problem_from_dict

# X counts the index and Y accumulates the free terms; with X = Y assumed,
# every x_i averages to one.
_COUNTERS = [
    {"name": "X", "init": "1", "shift": "X + 1"},
    {"name": "Y", "init": "x", "shift": "Y + s(x)"},
]
_AVERAGE_ONE = ["x > 0", "X = Y"]

_Q = "(x^4 + x^2 + 1)/(x^2 + x + 1)"
_QS = "(s(x)^4 + s(x)^2 + 1)/(s(x)^2 + s(x) + 1)"


def _sum_problem(name: str, var: str, init: str, step: str, claim: str) -> dict:
    return {
        "name": name,
        "t": 1,
        "sequence_vars": [*_COUNTERS, {"name": var, "init": init, "shift": f"{var} + {step}"}],
        "assumptions": list(_AVERAGE_ONE),
        "claim": claim,
        "strategy": "guard",
    }


def fixed_j(j: int) -> dict:
    """Sum of x_i^(j-1) (x_i - 1) Q(x_i) >= 0 for a fixed exponent j."""
    if j < 1:
        raise ValueError("j must be a positive integer")
    return _sum_problem(
        f"fixed_j{j}",
        "Zbar",
        f"x^{j - 1}*(x - 1)*{_Q}",
        f"s(x)^{j - 1}*(s(x) - 1)*{_QS}",
        "Zbar >= 0",
    )


PRODUCT = {
    "name": "product",
    "t": 1,
    "sequence_vars": [*_COUNTERS, {"name": "Z", "init": "x", "shift": "Z*s(x)"}],
    "assumptions": list(_AVERAGE_ONE),
    "claim": "Z <= 1",
    "strategy": "bdc",
}

ZHAT = _sum_problem("zhat", "Zhat", _Q, _QS, "Zhat >= X")
ZTILDE = _sum_problem("ztilde", "Ztilde", f"(x - 1)*{_Q}", f"(s(x) - 1)*{_QS}", "Ztilde >= 0")

# rational atoms that do not cancel to polynomials
HARMONIC = _sum_problem("harmonic", "W", "1/x", "1/s(x)", "W >= X")
CONCAVE = _sum_problem("concave", "V", "x/(1 + x)", "s(x)/(1 + s(x))", "V <= X/2")

# powers of the golden ratio stay >= 1; the cube brings in y^2 and y^3
SQRT5 = {
    "name": "signpattern_sqrt5",
    "t": 1,
    "sequence_vars": [
        {"name": "G", "init": "((1 + sqrt(5))/2)^3", "shift": "G*((1 + sqrt(5))/2)^3"},
    ],
    "assumptions": [],
    "claim": "G >= 1",
    "strategy": "guard",
}

# needs two consecutive hypotheses: fails at r = 1, proves at r = 2
FIBONACCI = {
    "name": "fibonacci",
    "t": 1,
    "sequence_vars": [
        {"name": "F", "init": "0", "shift": "G"},
        {"name": "G", "init": "1", "shift": "F + G"},
    ],
    "assumptions": [],
    "claim": "F >= 0",
    "strategy": "guard",
}


def catalog() -> dict[str, dict]:
    problems = [PRODUCT, ZHAT, ZTILDE, *(fixed_j(j) for j in range(1, 6)), HARMONIC, CONCAVE, SQRT5, FIBONACCI]
    return {p["name"]: p for p in problems}


def load(name: str) -> ProblemSpec:
    return problem_from_dict(catalog()[name])


def write_catalog(outdir: str | Path) -> list[Path]:
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, data in catalog().items():
        path = out / f"{name}.json"
        path.write_text(json.dumps(data, indent=2) + "\n", encoding="utf-8")
        paths.append(path)
    return paths
