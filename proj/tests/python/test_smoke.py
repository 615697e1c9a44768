"""End-to-end smoke tests of the python surface."""

import json
import os
import subprocess

import pytest

try:
    import reebmapper as rm
except ImportError:
    import _reebmapper as rm


def test_fixture_and_reeb():
    tent = rm.fixture("tent")
    assert tent.dim_range == 1
    assert tent.vertex_count == 3
    assert tent.simplex_count == 5

    g = rm.reeb_graph(tent)
    assert len(g.nodes()) == 3
    assert len(g.edges()) == 2
    assert g.betti() == (1, 0)

    circle = rm.fixture("circle4")
    gc = rm.reeb_graph(circle)
    assert len(gc.nodes()) == 2
    assert len(gc.edges()) == 2
    assert gc.betti() == (1, 1)


def test_mapper_and_cover():
    tent = rm.fixture("tent")
    cover = rm.auto_cover(tent, [2], 0.5)
    assert cover.resolution == pytest.approx(1.5)
    result = rm.mapper(tent, cover)
    assert len(result["vertices"]) == 3
    assert result["b0"] == 1 and result["b1"] == 0

    refined = cover.refine()
    assert refined.resolution == pytest.approx(0.75)


def test_components_and_critical_values():
    tent = rm.fixture("tent")
    comps = rm.components(tent, [[(0.5, 1.5)]])
    assert len(comps) == 1
    comps2 = rm.components(tent, [[(-0.5, 0.5)]])
    assert len(comps2) == 2
    assert rm.critical_values(tent) == [0.0, 1.0]


def test_certification():
    tent = rm.fixture("tent")
    cover = rm.auto_cover(tent, [3], 0.5)
    assert rm.certified_upper_bound(tent, cover) == pytest.approx(0.75)
    assert rm.colimit_equivalence_check(tent, cover)["pass"]
    report = rm.verify_interleaving(tent, cover)
    assert report["pass"] and not report["sampled"]


def test_jcn_2d():
    grid = rm.fixture("square_grid_2d")
    result = rm.jcn(grid, [2, 2], 0.5)
    assert len(result["vertices"]) == 4
    assert result["b0"] == 1


def test_mesh_roundtrip(tmp_path):
    torus = rm.fixture("torus")
    path = str(tmp_path / "torus.json")
    torus.save(path)
    reloaded = rm.load_mesh(path)
    assert reloaded.simplex_count == torus.simplex_count
    assert reloaded.values() == torus.values()


def test_geometric_mapper_isomorphism():
    ramp = rm.parse_mesh_json(json.dumps({
        "dim_range": 1,
        "vertices": [[0.0], [0.3], [0.7], [1.0]],
        "simplices": [[0, 1], [1, 2], [2, 3]],
    }))
    cover = rm.auto_cover(ramp, [4], 0.5)
    display = rm.geometric_mapper(ramp, cover)
    reeb = rm.reeb_graph(ramp)
    assert rm.rgraph_isomorphic(display, reeb, "monotone")


def test_errors_surface_as_python_exceptions():
    with pytest.raises(ValueError):
        rm.fixture("nope")
    tent = rm.fixture("tent")
    with pytest.raises(ValueError):
        rm.uniform_cover([(0.0, 1.0)], [3], 1.5)
    grid = rm.fixture("square_grid_2d")
    with pytest.raises(ValueError):
        rm.reeb_graph(grid)
    del tent


def test_convergence_csv_deterministic():
    circle = rm.fixture("circle4")
    cover = rm.auto_cover(circle, [2], 0.5)
    a = rm.convergence_csv(circle, cover, 3)
    b = rm.convergence_csv(circle, cover, 3)
    assert a == b
    assert a.splitlines()[0] == "resolution,mapper_vertices,mapper_edges,b0,b1,interleaving_verified,geom_reeb_iso"


def test_cli_available():
    cli = os.environ.get("REEBMAPPER_CLI")
    if not cli:
        pytest.skip("REEBMAPPER_CLI not set")
    out = subprocess.run([cli, "verify", "--mesh", "fixture:tent", "--intervals", "3",
                          "--gain", "0.5", "--out", os.environ.get("TMPDIR", "/tmp")],
                         capture_output=True, text=True)
    assert out.returncode == 0
    assert "certified upper bound" in out.stdout
