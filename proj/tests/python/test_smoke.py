"""Smoke tests of the Python bindings against closed-form anchors."""

import math

import pytest

import finitegap as fg


def test_capacity_closed_forms():
    assert fg.capacity([(-2.0, 2.0)]) == pytest.approx(1.0, abs=1e-10)
    # Symmetric pair [-2,-1] u [1,2]: capacity sqrt(3)/2.
    cap = fg.capacity([(-2.0, -1.0), (1.0, 2.0)])
    assert cap == pytest.approx(math.sqrt(3.0) / 2.0, abs=1e-8)


def test_green_closed_form():
    g3 = fg.green([(-2.0, 2.0)], 3.0)
    assert g3 == pytest.approx(math.log((3.0 + math.sqrt(5.0)) / 2.0), abs=1e-8)
    # Symmetry of the two-point function.
    ga = fg.green_pair([(-2.0, 2.0)], 3.0 + 0.0j, 5.0)
    gb = fg.green_pair([(-2.0, 2.0)], 5.0 + 0.0j, 3.0)
    assert ga == pytest.approx(gb, abs=1e-9)


def test_cantor_construction():
    removed = [0.25, 0.0625, 0.015625]
    bands = fg.cantor_bands(4.0, -2.0, removed, 3)
    assert len(bands) == 8
    expected = 4.0
    for k in removed:
        expected *= 1.0 - k
    assert fg.total_length(bands) == pytest.approx(expected, abs=1e-12)
    assert fg.homogeneity(bands)["eta"] > 0.3


def test_equilibrium_frequencies():
    info = fg.equilibrium_info([(-2.0, -1.0), (1.0, 2.0)])
    assert info["frequencies"] == pytest.approx([0.5], abs=1e-10)
    assert sum(info["band_measures"]) == pytest.approx(1.0, abs=1e-10)


def test_run_pipeline_report():
    config = {
        "schema": fg.run_config_schema,
        "set": {"bands": [[-2.0, 2.0]]},
        "weight": {"kind": "semicircle"},
        "solver": {"depth": 40},
    }
    report = fg.run(config)
    assert report["schema"] == fg.report_schema
    assert report["potential"]["capacity"] == pytest.approx(1.0, abs=1e-10)
    widom = report["asymptotics"]["widom"]
    assert max(abs(w - 1.0) for w in widom) < 1e-10
    # The pipeline is deterministic: an identical call gives an equal report.
    assert fg.run(config) == report


def test_validation_errors_become_value_errors():
    with pytest.raises(ValueError, match="mass point on support"):
        fg.run(
            {
                "schema": fg.run_config_schema,
                "set": {"bands": [[-2.0, 2.0]]},
                "weight": {"kind": "semicircle"},
                "masses": [[0.5, 0.1]],
            }
        )
    with pytest.raises(ValueError, match="unknown key"):
        fg.run(
            {
                "schema": fg.run_config_schema,
                "set": {"bands": [[-2.0, 2.0]]},
                "weight": {"kind": "semicircle"},
                "smoothing": True,
            }
        )
    with pytest.raises(ValueError):
        fg.capacity([(2.0, 1.0)])
