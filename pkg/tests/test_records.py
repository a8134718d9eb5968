import json
import math

import pytest

from tlab_hardy import errors, quadrature, records, utils


def describe_verify_record() -> None:
    def test_passes_within_tolerance() -> None:
        record = records.VerifyRecord("f", 0.5, math.pi * (1 + 1e-10), math.pi)
        assert record.passed
        assert record.violation == 0.0

    def test_quadrature_error_widens_the_check() -> None:
        assert not records.VerifyRecord("f", None, 1.1, 1.0).passed
        assert records.VerifyRecord("f", None, 1.1, 1.0, quad_err=0.2).passed

    def test_violation() -> None:
        record = records.VerifyRecord("f", None, 3.0, 2.0, rtol=0.0)
        assert record.violation == 1.0
        assert record.margin == -1.0

    def test_not_converged_never_passes() -> None:
        record = records.VerifyRecord("f", None, 0.0, 1.0, converged=False)
        assert not record.passed
        assert record.violation == math.inf

    def test_failed() -> None:
        error = errors.QuadratureError(
            "stuck", quadrature.QuadResult(0.5, 0.25, 64, converged=False)
        )
        record = records.VerifyRecord.failed("f", 1.0, error)
        assert (record.lhs, record.quad_err, record.converged) == (0.5, 0.25, False)
        assert math.isnan(record.rhs)
        assert record.violation == math.inf

    def test_to_dict() -> None:
        payload = records.VerifyRecord("poly:0,1", None, 1.0, math.pi).to_dict()
        assert list(payload) == list(records.CSV_HEADER)
        assert payload["eta"] is None
        assert payload["margin"] == math.pi - 1.0
        assert payload["pass"] is True

    def test_to_dict_maps_nan_to_none() -> None:
        payload = records.VerifyRecord("f", 0.0, math.nan, math.inf).to_dict()
        assert payload["lhs"] is None
        assert payload["rhs"] is None
        json.dumps(payload, allow_nan=False)


def describe_finite_or_none() -> None:
    @pytest.mark.parametrize(
        "value,expected",
        [(1.5, 1.5), (0, 0.0), (math.nan, None), (-math.inf, None)],
    )
    def test_values(value: float, expected: float | None) -> None:
        assert utils.finite_or_none(value) == expected


def describe_dump_json() -> None:
    def test_round_trip_is_byte_identical() -> None:
        payload = {"b": 0.1 + 0.2, "a": [1 / 3, None, True], "c": "η"}
        text = utils.dump_json(payload)
        assert text.endswith("}\n")
        assert utils.dump_json(json.loads(text)) == text
        assert list(json.loads(text)) == ["b", "a", "c"]
        assert "0.30000000000000004" in text

    def test_rejects_nan() -> None:
        with pytest.raises(ValueError):
            utils.dump_json({"x": math.nan})


def describe_dump_csv() -> None:
    def test_cells() -> None:
        rows = [{"name": "a,b", "value": 0.1, "ok": True, "gap": None, "n": 3}]
        text = utils.dump_csv(["name", "value", "ok", "gap", "n"], rows)
        assert text == 'name,value,ok,gap,n\n"a,b",0.1,true,,3\n'

    def test_header_only() -> None:
        assert utils.dump_csv(["x", "y"], []) == "x,y\n"
