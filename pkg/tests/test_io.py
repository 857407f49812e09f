from fractions import Fraction

import pytest

from fixtures import rand_poly
from kron_ansatz import io, linalg
from kron_ansatz.ansatz import random_params
from kron_ansatz.blocksym import random_bg_params
from kron_ansatz.classical import L1Params
from kron_ansatz.double import random_dg_params
from kron_ansatz.matpoly import DimensionError, Partition, Pencil


def test_scalars():
    assert io.parse_scalar("-3/4") == Fraction(-3, 4)
    assert io.parse_scalar(5) == 5
    assert io.scalar_str(Fraction(2, 6)) == "1/3"
    for bad in (0.5, True, "x", None):
        with pytest.raises(io.MalformedInput):
            io.parse_scalar(bad)


def test_poly_roundtrip():
    P = rand_poly(0, 2, 3, 1)
    assert io.poly_from_json(io.poly_to_json(P)) == P
    L = Pencil(linalg.eye(3), linalg.zeros(3, 3), partition=Partition(1, 1, 1, 1))
    back = io.poly_from_json(io.poly_to_json(L))
    assert back == L and back.partition == L.partition


def test_poly_validation():
    with pytest.raises(DimensionError):
        io.poly_from_json({"rows": 1, "cols": 1, "grade": 1, "coeffs": [[["1"]]]})
    with pytest.raises(io.MalformedInput):
        io.poly_from_json({"rows": 1, "cols": 1, "coeffs": [[["1"]]]})
    with pytest.raises((io.MalformedInput, DimensionError)):
        io.poly_from_json({"rows": 1, "cols": 2, "grade": 0, "coeffs": [[["1"]]]})


def test_params_roundtrip():
    P = rand_poly(1, 2, 4)
    cases = [
        ("g", random_params(1, 1, 2, 2, 2)),
        ("dg", random_dg_params(2, 4, 1, 2)),
        ("bg", random_bg_params(3, 4, 1, 2)),
        ("dg", random_dg_params(4, 4, 0, 2)),
    ]
    for family, params in cases:
        assert io.params_from_json(io.params_to_json(params), family, P) == params
    l1 = L1Params([1, 0, 2, 0], linalg.zeros(8, 6))
    back = io.params_from_json(io.params_to_json(l1), "l1", P)
    assert back.v == l1.v and linalg.equal(back.Z, l1.Z)


def test_params_split_mismatch():
    P = rand_poly(1, 2, 4)
    doc = io.params_to_json(random_dg_params(2, 5, 1, 2))
    with pytest.raises(DimensionError):
        io.params_from_json(doc, "dg", P)
