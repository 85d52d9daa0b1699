import pytest

import heuberger as hb


def test_circulant_kernel():
    m = hb.circulant_to_matrix(35, [6, 10])
    assert hb.lattice_equal(m, [[5, 0], [4, 7]])
    assert hb.kernel([[6, 10]], [[35]], relation_count=1) is not None
    assert hb.lattice_equal(hb.kernel([[6, 10]], [[35]], relation_count=1), [[5, 0], [4, 7]])
    n, conns = hb.matrix_to_circulant([[5, 0], [4, 7]])
    assert n == 35


def test_normal_forms():
    h, u, pivots = hb.hnf([[5, 0], [-3, 7]])
    assert h == [[5, 0], [4, 7]]
    assert pivots == [0, 1]
    assert hb.snf([[2, 0], [0, 3]]) == [1, 6]


def test_big_integers_survive():
    big = 10**30 + 7
    h, _, _ = hb.hnf([[big, 0], [0, 1]])
    assert h[0][0] == big


def test_distance_round_trip():
    assert hb.matrix_to_distance([[5, 0], [-12, 5], [6, -2]]) == [6, 10, 25]
    assert hb.cross_product([[5, 0], [-12, 5], [6, -2]]) == [6, -10, -25]
    assert hb.matrix_to_distance(hb.distance_to_matrix([3, 7])) == [3, 7]


def test_bounds_and_oracle():
    report = hb.chi_bounds([[4, 0], [-5, 4], [4, -5], [0, 4]])
    assert report["exact"]
    assert report["upper"]["value"] == 3
    result = hb.chromatic_number(hb.circulant_to_matrix(13, [1, 5]))
    assert result["status"] == "exact"
    assert result["upper"] == 4
    ball = hb.chromatic_number([[-3], [2]], radius=5)
    assert ball["upper"] == 3


def test_cube_like():
    assert hb.qnd_matrix(2) == [[1, 2, 0, 0], [1, 0, 2, 0], [1, 0, 0, 2]]
    v = hb.payan_analyze(2, [1, 2, 3])
    assert v["outcome"] == "at_least_four"
    assert hb.verify_chain(v["witness"])
    report = hb.payan_check(3)
    assert report["chi3_count"] == 0
    assert report["inconsistent"] == 0


def test_errors():
    with pytest.raises(hb.DomainError):
        hb.distance_to_matrix([2, 4])
    with pytest.raises(hb.DimensionError):
        hb.cross_product([[1, 0], [0, 1]])
    with pytest.raises(hb.CapExceeded):
        hb.chromatic_number([[400, 0], [0, 400]], cap=100)
