import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rayvoronoi.cell import point_in_cell
from rayvoronoi.diagram import BuildConfig, build_diagram, partition
from rayvoronoi.errors import InternalLogicError, ValidationError
from rayvoronoi.geometry import BISECTOR, BOUNDARY, Provenance
from rayvoronoi.grid import build_index
from rayvoronoi.io import diagram_to_dict, dumps
from rayvoronoi.world import World

from conftest import brute_nearest, uniform


def test_single_site():
    w = World.box(0.0, 0.0, 2.0, 1.0)
    d = build_diagram([(0.5, 0.5)], w)
    assert len(d) == 1
    assert sorted(tuple(round(t, 12) for t in q) for q in d.cells[0].polygon()) == sorted(w.vertices)


def test_two_sites_share_bisector():
    w = World.box(-10.0, -10.0, 10.0, 10.0)
    d = build_diagram([(-1.0, 0.0), (1.0, 0.0)], w)
    a, b = d.cells
    assert Provenance(BISECTOR, 1) in a.edges and Provenance(BISECTOR, 0) in b.edges
    shared_a = sorted(v.coords for v in a.vertices if Provenance(BISECTOR, 1) in v.lines)
    shared_b = sorted(v.coords for v in b.vertices if Provenance(BISECTOR, 0) in v.lines)
    assert shared_a == pytest.approx(shared_b)


def test_cells_are_k_indexed():
    sites, w = uniform(80, 9)
    d = build_diagram(sites, w)
    assert [c.site for c in d.cells] == list(range(80))
    assert len(d.stats) == 80


def test_workers_give_identical_output():
    sites, w = uniform(100, 12)
    one = dumps(build_diagram(sites, w, BuildConfig(workers=1)))
    four = dumps(build_diagram(sites, w, BuildConfig(workers=4)))
    assert one == four


def test_grid_and_brute_force_agree():
    sites, w = uniform(150, 3)
    grid = diagram_to_dict(build_diagram(sites, w))
    brute = diagram_to_dict(build_diagram(sites, w, BuildConfig(use_grid=False)))
    # geometry is identical; only the comparison counts differ
    assert grid["cells"] == brute["cells"]
    assert [s["rays"] for s in grid["stats"]["per_cell"]] == [s["rays"] for s in brute["stats"]["per_cell"]]
    assert max(s["r_k"] for s in grid["stats"]["per_cell"]) < max(s["r_k"] for s in brute["stats"]["per_cell"])


def test_partition():
    assert partition(10, 3) == [range(0, 4), range(4, 8), range(8, 10)]
    assert partition(2, 8) == [range(0, 1), range(1, 2)]
    assert partition(0, 2) == []
    with pytest.raises(ValueError):
        BuildConfig(workers=0)


def test_validation_failure_is_raised():
    w = World.box(0.0, 0.0, 1.0, 1.0)
    with pytest.raises(ValidationError) as info:
        build_diagram([(0.5, 0.5), (0.5, 0.5)], w)
    assert info.value.report.kinds() == {"duplicate-site"}


def test_internal_error_names_the_cell(monkeypatch):
    import rayvoronoi.diagram as dmod

    real = dmod.build_cell

    def broken(k, *args, **kw):
        if k == 5:
            raise InternalLogicError("boom", k)
        return real(k, *args, **kw)

    monkeypatch.setattr(dmod, "build_cell", broken)
    sites, w = uniform(10, 0)
    with pytest.raises(InternalLogicError) as info:
        build_diagram(sites, w)
    assert info.value.site == 5 and "cell 5" in str(info.value)


def test_internal_error_crosses_process_boundary(monkeypatch):
    import rayvoronoi.diagram as dmod

    def broken(k, *args, **kw):
        raise InternalLogicError("boom", k)

    monkeypatch.setattr(dmod, "build_cell", broken)
    sites, w = uniform(10, 0)
    with pytest.raises(InternalLogicError):
        build_diagram(sites, w, BuildConfig(workers=2))


def test_coverage_and_reciprocity():
    sites, w = uniform(300, 21)
    d = build_diagram(sites, w)
    g = build_index(sites, w)
    rnd = random.Random(3)
    for _ in range(1000):
        x = (rnd.random(), rnd.random())
        assert point_in_cell(x, brute_nearest(x, sites), sites, w, g)
    for c in d.cells:
        if any(s.kind == BOUNDARY for s in c.edges):
            continue
        for s in c.edges:
            assert Provenance(BISECTOR, c.site) in d.cells[s.id].edges


def test_mean_edges_in_range():
    sites, w = uniform(1000, 5)
    d = build_diagram(sites, w)
    mean = sum(s.e_k for s in d.stats) / len(d.stats)
    assert 4.0 <= mean <= 8.0


@given(st.integers(0, 10**6), st.sampled_from([2, 7, 33]), st.integers(1, 5))
@settings(max_examples=10, deadline=None)
def test_determinism_under_worker_count(seed, n, workers):
    sites, w = uniform(n, seed)
    assert dumps(build_diagram(sites, w)) == dumps(build_diagram(sites, w, BuildConfig(workers=workers)))


def test_area_sums_to_world():
    # the cells tile the world
    def area(poly):
        return 0.5 * abs(sum(poly[i][0] * poly[(i + 1) % len(poly)][1] - poly[(i + 1) % len(poly)][0] * poly[i][1]
                             for i in range(len(poly))))

    hexagon = World.from_vertices([(math.cos(i * math.pi / 3), math.sin(i * math.pi / 3)) for i in range(6)])
    sites, _ = uniform(200, 1, hexagon)
    d = build_diagram(sites, hexagon)
    assert sum(area(c.polygon()) for c in d.cells) == pytest.approx(hexagon.area, rel=1e-9)
