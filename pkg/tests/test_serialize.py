import json

import numpy as np
import pytest

from ncprism.dilation import triangle_povm, naimark_normal
from ncprism.errors import ShapeMismatchError
from ncprism.opsys import DiagTuple, DualTuple, PrismElement, Unknown
from ncprism.reps import s3_pair
from ncprism.serialize import (
    diag_tuple_from_json,
    diag_tuple_to_json,
    dilation_result_to_json,
    dual_tuple_to_json,
    matrix_from_json,
    matrix_to_json,
    prism_element_from_json,
    prism_element_to_json,
    rep_pair_from_json,
    rep_pair_to_json,
    tuple_from_json,
    tuple_to_json,
    verdict_to_json,
)


class TestMatrixFormat:
    def test_layout(self):
        obj = matrix_to_json(np.array([[1.0, 2.0], [3.0, 4.0j]]))
        assert obj["rows"] == 2 and obj["cols"] == 2
        assert obj["data"] == [[1.0, 0.0], [2.0, 0.0], [3.0, 0.0], [0.0, 4.0]]

    def test_roundtrip_bit_exact(self):
        rng = np.random.default_rng(1)
        a = rng.standard_normal((3, 4)) + 1j * rng.standard_normal((3, 4))
        text = json.dumps(matrix_to_json(a))
        back = matrix_from_json(json.loads(text))
        assert np.array_equal(back, a)

    def test_decimal_literal_roundtrip(self):
        value = 0.12345678901234567
        obj = {"rows": 1, "cols": 1, "data": [[value, -value]]}
        text = json.dumps(matrix_to_json(matrix_from_json(obj)))
        assert json.loads(text)["data"] == [[value, -value]]

    def test_length_mismatch_rejected(self):
        with pytest.raises(ShapeMismatchError):
            matrix_from_json({"rows": 2, "cols": 2, "data": [[1.0, 0.0]]})

    def test_tuple_roundtrip(self):
        mats = [np.eye(2), np.diag([1.0, -1.0])]
        back = tuple_from_json(tuple_to_json(mats))
        for a, b in zip(mats, back):
            assert np.array_equal(a, b.real)


class TestStructured:
    def test_rep_pair_roundtrip(self):
        pair = s3_pair()
        back = rep_pair_from_json(rep_pair_to_json(pair))
        assert np.array_equal(back.w, pair.w)
        assert np.array_equal(back.v, pair.v)
        assert back.k == 3
        assert back.commutant_dim == 1

    def test_dilation_result_shape(self):
        result = naimark_normal(triangle_povm(np.array([[0.0]])))
        obj = dilation_result_to_json(result)
        assert set(obj) == {"isometry", "operators", "labels"}
        assert obj["labels"] == ["normal"]

    def test_prism_element_roundtrip(self):
        e = PrismElement.unit(4, 2)
        back = prism_element_from_json(prism_element_to_json(e))
        assert back.k == 4 and back.q == 2
        assert np.array_equal(back.c[0], e.c[0])

    def test_diag_tuple_roundtrip(self):
        x = DiagTuple.ones(3, 2)
        back = diag_tuple_from_json(diag_tuple_to_json(x))
        assert back.k == 3 and back.q == 2
        assert np.array_equal(back.blocks[4], x.blocks[4])

    def test_dual_tuple(self):
        obj = dual_tuple_to_json(DualTuple(3, np.array([1, 1, 1, 1, 2.0])))
        assert obj["z"][4] == [2.0, 0.0]

    def test_unknown_verdict(self):
        obj = verdict_to_json(Unknown(reason="budget", residual=0.5))
        assert obj["verdict"] == "unknown"
