import pytest

from conftest import make_ring
from gorenstein_lab.complexes import poly_matmul, poly_matrix_is_zero
from gorenstein_lab.koszul import (
    depth,
    koszul_cohomology,
    koszul_complex,
    koszul_connecting_map,
    local_cohomology_socles,
    phi_kernel,
    socle,
)


@pytest.mark.parametrize("name,seq", [("QXY", ["x", "y"]), ("R1", ["y"]), ("PLANE_LINE", ["x+z", "y"])])
def test_koszul_is_a_complex(name, seq):
    R = make_ring(name)
    K = koszul_complex(R, seq)
    assert K.is_complex() and K.is_graded()
    assert K.ranks() == [1, len(seq)] + ([1] if len(seq) == 2 else [])


def test_connecting_maps_compose():
    R = make_ring("QXY")
    direct = koszul_connecting_map(R, ["x", "y"], 1, 3)
    two_step = koszul_connecting_map(R, ["x", "y"], 1, 2).compose(koszul_connecting_map(R, ["x", "y"], 2, 3))
    assert direct.equals(two_step)
    assert direct.commutes()


def test_koszul_cohomology_of_r1():
    R1 = make_ring("R1")
    H1 = koszul_cohomology(R1, ["y"], 1)
    assert H1.total_dim() == 2 and H1.dims() == {-1: 1, 0: 1}
    H0 = koszul_cohomology(R1, ["y"], 0)
    assert H0.total_dim() == 1 and H0.dims() == {1: 1}


def test_socles_of_finite_quotients():
    assert socle(koszul_cohomology(make_ring("R3"), [], 0)).dimension == 1
    assert socle(koszul_cohomology(make_ring("R4"), [], 0)).dimension == 2


@pytest.mark.parametrize(
    "name,expected",
    [("R1", [1, 1]), ("R2", [0, 1]), ("QXY", [0, 0, 1]), ("R3", [1]), ("R4", [2]), ("QX", [0, 1]), ("PLANE_LINE", [0, 1, 1])],
)
def test_local_cohomology_socles(name, expected):
    R = make_ring(name)
    got = [local_cohomology_socles(R, i).limit_socle_dim for i in range(R.dim + 1)]
    assert got == expected


def test_socle_images_record_surjectivity_from_t():
    rec = local_cohomology_socles(make_ring("R1"), 1, seq=["y"])
    assert rec.image_socle_dims[1] == 0 and rec.image_socle_dims[2] == 1
    assert rec.surjective_from() == 2


@pytest.mark.parametrize("name,d", [("R1", 0), ("R2", 1), ("QXY", 2), ("R3", 0), ("PLANE_LINE", 1)])
def test_depth(name, d):
    assert depth(make_ring(name)) == d


def test_phi_kernel():
    R1 = make_ring("R1")
    assert phi_kernel(R1, ["y"], 1) == 1
    assert phi_kernel(R1, ["y"], 3) == 1
    assert phi_kernel(make_ring("QXY"), ["x", "y"], 1) == 0
    assert phi_kernel(make_ring("R2"), ["y"], 2) == 0


def test_validated_window_vanishes_at_top():
    H = koszul_cohomology(make_ring("QXY"), ["x", "y"], 2)
    assert H.validated()
    assert H.total_dim() == 1


def test_complex_product_vanishes():
    R = make_ring("PLANE_LINE")
    K = koszul_complex(R, ["x+z", "y"])
    assert poly_matrix_is_zero(R, poly_matmul(R, K.diffs[1], K.diffs[2]))
