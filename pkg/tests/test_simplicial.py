"""Triangulations: validation, built-ins, sums, subdivision, file format."""

import pytest

from conf2.simplicial import (
    SimplicialComplex,
    barycentric_subdivide,
    builtin_triangulation,
    connected_sum,
    format_triangulation,
    parse_triangulation,
    read_triangulation,
    validate_surface,
)
from conf2.surfaces import SurfaceKind


def tetrahedron() -> SimplicialComplex:
    return SimplicialComplex(4, [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)])


def test_constructor_normalizes_and_indexes():
    K = SimplicialComplex(3, [(2, 1, 0)])
    assert K.facets == ((0, 1, 2),)
    assert K.counts() == (3, 3, 1)
    assert K.simplex_index((1, 2)) == 2


def test_constructor_rejects_bad_facets():
    with pytest.raises(ValueError):
        SimplicialComplex(3, [(0, 1, 1)])
    with pytest.raises(ValueError):
        SimplicialComplex(3, [(0, 1, 5)])
    with pytest.raises(ValueError):
        SimplicialComplex(3, [(0, -1)])
    with pytest.raises(ValueError):
        SimplicialComplex(4, [(0, 1, 2), (2, 1, 0)])
    with pytest.raises(ValueError):
        SimplicialComplex(5, [(0, 1, 2, 3)])


def test_tetrahedron_is_a_sphere():
    report = validate_surface(tetrahedron())
    assert report["closed"] and report["connected"]
    assert report["euler"] == 2
    assert report["betti"] == (1, 0, 1)


def test_single_triangle_is_not_closed():
    report = validate_surface(SimplicialComplex(3, [(0, 1, 2)]))
    assert not report["closed"]
    assert report["connected"]


def test_disjoint_spheres_are_closed_but_disconnected():
    K1 = tetrahedron()
    shifted = [(a + 4, b + 4, c + 4) for a, b, c in K1.facets]
    K = SimplicialComplex(8, list(K1.facets) + shifted)
    report = validate_surface(K)
    assert report["closed"]
    assert not report["connected"]
    assert report["betti"][0] == 2


def test_edge_complex_not_closed():
    report = validate_surface(SimplicialComplex(2, [(0, 1)]))
    assert not report["closed"]


def test_builtin_sphere():
    K = builtin_triangulation(SurfaceKind.sphere())
    assert K.counts() == (4, 6, 4)
    assert K.euler == 2
    assert K.betti() == (1, 0, 1)


def test_builtin_torus():
    K = builtin_triangulation(SurfaceKind.orientable(1))
    assert K.counts() == (7, 21, 14)
    assert K.euler == 0
    assert K.betti() == (1, 2, 1)


def test_builtin_projective_plane():
    K = builtin_triangulation(SurfaceKind.nonorientable(1))
    assert K.counts() == (6, 15, 10)
    assert K.euler == 1
    assert K.betti() == (1, 1, 1)


@pytest.mark.parametrize(
    "kind,betti",
    [
        (SurfaceKind.orientable(2), (1, 4, 1)),
        (SurfaceKind.orientable(3), (1, 6, 1)),
        (SurfaceKind.nonorientable(2), (1, 2, 1)),
        (SurfaceKind.nonorientable(3), (1, 3, 1)),
    ],
    ids=["genus2", "genus3", "klein", "crosscap3"],
)
def test_builtin_connected_sums(kind, betti):
    K = builtin_triangulation(kind)
    report = validate_surface(K)
    assert report["closed"] and report["connected"]
    assert report["euler"] == kind.euler
    assert report["betti"] == betti


def test_connected_sum_euler_additivity():
    torus = builtin_triangulation(SurfaceKind.orientable(1))
    out = connected_sum(torus, torus)
    assert out.euler == -2
    assert out.betti() == (1, 4, 1)


def test_connected_sum_of_projective_planes_is_klein():
    rp2 = builtin_triangulation(SurfaceKind.nonorientable(1))
    out = connected_sum(rp2, rp2)
    assert out.betti() == (1, 2, 1)
    assert out.euler == 0


def test_connected_sum_with_sphere_keeps_betti():
    sphere = builtin_triangulation(SurfaceKind.sphere())
    torus = builtin_triangulation(SurfaceKind.orientable(1))
    out = connected_sum(sphere, torus)
    assert out.betti() == torus.betti()


def test_connected_sum_rejects_open_input():
    disk = SimplicialComplex(3, [(0, 1, 2)])
    with pytest.raises(ValueError):
        connected_sum(disk, tetrahedron())


def test_subdivision_counts_for_sphere():
    K = barycentric_subdivide(tetrahedron())
    assert K.counts() == (14, 36, 24)
    assert K.euler == 2
    assert K.betti() == (1, 0, 1)


@pytest.mark.parametrize(
    "kind",
    [SurfaceKind.sphere(), SurfaceKind.orientable(1), SurfaceKind.nonorientable(1)],
    ids=["sphere", "torus", "rp2"],
)
def test_subdivision_preserves_betti(kind):
    K = builtin_triangulation(kind)
    fine = barycentric_subdivide(K)
    assert fine.euler == K.euler
    assert fine.betti() == K.betti()
    assert validate_surface(fine)["closed"]


def test_subdivision_of_edge_facets():
    K = barycentric_subdivide(SimplicialComplex(2, [(0, 1)]))
    assert K.counts() == (3, 2, 0)


def test_format_parse_roundtrip():
    K = builtin_triangulation(SurfaceKind.orientable(1))
    text = format_triangulation(K)
    back = parse_triangulation(text)
    assert back.facets == K.facets
    assert back.vertex_count == K.vertex_count


def test_parse_ignores_comments_and_blanks():
    text = "# a sphere\n\nvertices 4\nf 0 1 2  # first\nf 0 1 3\nf 0 2 3\nf 1 2 3\n"
    K = parse_triangulation(text)
    assert K.counts() == (4, 6, 4)


@pytest.mark.parametrize(
    "text",
    [
        "f 0 1 2\n",
        "vertices x\n",
        "vertices 4\nvertices 4\n",
        "vertices 3\nf 0 1 q\n",
        "vertices 3\ntriangle 0 1 2\n",
        "",
        "vertices 3\nf 0 1 1\n",
    ],
)
def test_parse_rejects_malformed_input(text):
    with pytest.raises(ValueError):
        parse_triangulation(text)


def test_read_triangulation_missing_file(tmp_path):
    with pytest.raises(ValueError):
        read_triangulation(tmp_path / "missing.tri")


def test_read_triangulation_roundtrip(tmp_path):
    K = tetrahedron()
    path = tmp_path / "sphere.tri"
    path.write_text(format_triangulation(K))
    assert read_triangulation(path).facets == K.facets
