import json
import math
from pathlib import Path

import numpy as np
import pytest

import dbar

ROOT = Path(__file__).resolve().parents[2]

BIDISC = {
    "domain": {
        "factors": [
            {"kind": "disc", "center": [0.0, 0.0], "radius": 1.0},
            {"kind": "disc", "center": [0.0, 0.0], "radius": 1.0},
        ],
        "blocks": [[1], [2]],
    },
    "form": {
        "components": [
            [{"a": [0, 0], "b": [0, 1], "re": 1.0, "im": 0.0}],
            [{"a": [0, 0], "b": [1, 0], "re": 1.0, "im": 0.0}],
        ]
    },
    "mode": "exact",
    "grid": 4,
}


def test_exact_solution_of_conj_z1_z2():
    p = dbar.Problem(json.dumps(BIDISC))
    assert p.dimension == 2
    z = np.array([[0.3 + 0.1j, -0.2 + 0.4j], [0.0, 0.5j]])
    got = p.evaluate(z)
    np.testing.assert_allclose(got, np.conj(z[:, 0] * z[:, 1]), atol=1e-14)
    terms = json.loads(p.solution_json())
    assert len(terms) == 1


def test_solve_grid_shapes():
    pts, vals = dbar.Problem(json.dumps(BIDISC)).solve_grid(4)
    assert pts.shape == (256, 2)
    np.testing.assert_allclose(vals, np.conj(pts[:, 0] * pts[:, 1]), atol=1e-14)


def test_config_file_loads():
    p = dbar.load_problem(ROOT / "configs" / "bidisc_exact.json")
    assert p.mode == "exact"


def test_errors_map_to_python():
    bad = json.loads(json.dumps(BIDISC))
    bad["form"]["components"][1] = []
    with pytest.raises(dbar.NotClosedError):
        dbar.Problem(json.dumps(bad))
    with pytest.raises(ValueError):
        dbar.Problem("{")
    with pytest.raises(dbar.SpecError):
        dbar.counterexample(2, [], 3)


def test_counterexample_partial_sums():
    csv_text, report = dbar.counterexample(2, [1, 2], 10)
    rows = csv_text.strip().splitlines()
    assert len(rows) == 11
    last = rows[-1].split(",")
    assert float(last[1]) == pytest.approx(-dbar.harmonic_number(10), abs=1e-12)
    assert isinstance(report, dict)


def test_verify_cases_pass():
    assert "residual" in dbar.verify_case_names()
    rep = dbar.verify("recursion", n=2, trials=3)
    assert rep["pass"] is True
    assert all(c["pass"] for c in rep["checks"])
    assert math.isfinite(dbar.harmonic_number(40))
