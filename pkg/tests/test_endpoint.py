import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rayvoronoi.cell import build_cell
from rayvoronoi.endpoint import nearest_conflict, select_primary_line, shoot_ray
from rayvoronoi.errors import PreconditionError
from rayvoronoi.geometry import BISECTOR, BOUNDARY, Provenance, bisector
from rayvoronoi.grid import brute_force_index, build_index
from rayvoronoi.oracle import compare, naive_cell
from rayvoronoi.world import World

from conftest import uniform

BIG = World.box(-10.0, -10.0, 10.0, 10.0)
TWO = [(0.0, 0.0), (4.0, 0.0)]
CORNERS = [(0.0, 0.0), (2.0, 0.0), (0.0, 2.0), (2.0, 2.0)]


def test_two_site_midline():
    e = shoot_ray(0, (1.0, 0.0), TWO, BIG, build_index(TWO, BIG))
    assert e.t == pytest.approx(2.0) and e.point == pytest.approx((2.0, 0.0))
    assert e.primary_line.source == Provenance(BISECTOR, 1)
    assert e.equidist_sites == (1,)
    assert e.replacements == 1


def test_boundary_hit():
    e = shoot_ray(0, (-1.0, 0.0), TWO, BIG, build_index(TWO, BIG))
    assert e.t == pytest.approx(10.0) and e.point == pytest.approx((-10.0, 0.0))
    assert e.primary_line.source == Provenance(BOUNDARY, 3)
    assert e.equidist_sites == ()


def test_cocircular_square_centre():
    h = math.sqrt(2.0) / 2.0
    world = World.box(-10.0, -10.0, 12.0, 12.0)
    e = shoot_ray(0, (h, h), CORNERS, world, build_index(CORNERS, world))
    assert e.point == pytest.approx((1.0, 1.0))
    # the centre is at distance sqrt(2) from each corner site
    for s in CORNERS:
        assert math.dist(s, e.point) == pytest.approx(math.sqrt(2.0))
    assert e.equidist_sites == (1, 2, 3)
    assert e.primary_line.source == Provenance(BISECTOR, 1)


def test_non_interior_site():
    with pytest.raises(PreconditionError):
        shoot_ray(0, (1.0, 0.0), [(10.0, 0.0)], BIG, build_index([(10.0, 0.0)], BIG))


def test_select_primary_line_prefers_bisectors_then_nearer_sites():
    p = (0.0, 0.0)
    sites = [p, (2.0, 0.0), (0.0, 2.0)]
    y = (1.0, 1.0)
    lines = [bisector(p, sites[2], 2), bisector(p, sites[1], 1)]
    assert select_primary_line(p, y, lines, sites).source.id == 1
    facet = World.box(-1.0, -1.0, 1.0, 1.0).boundary_lines[1]  # x = 1, through y
    assert select_primary_line(p, y, [facet, bisector(p, sites[2], 2)], sites).source.kind == BISECTOR


def test_grazing_line_is_not_primary():
    # found at n=20000: the bisector with site 929 passes within tolerance of the
    # endpoint but the ray crosses it about 4.5e-4 further out
    sites, world = uniform(20000, 3)
    grid = build_index(sites, world)
    k = 9956
    T = (-0.0017837615026259626, -0.004235569752566949)
    r = math.hypot(*T)
    e = shoot_ray(k, (T[0] / r, T[1] / r), sites, world, grid)
    assert 929 in e.equidist_sites
    assert e.primary_line.source == Provenance(BISECTOR, 18869)
    cell = build_cell(k, sites, world, grid)
    assert compare(cell, naive_cell(k, sites, world), 1e-7, world.scale).passed


def test_nearest_conflict_examples():
    g = build_index(TWO, BIG)
    assert nearest_conflict((3.0, 0.0), 0, TWO, g) == 1
    assert nearest_conflict((1.0, 0.0), 0, TWO, g) is None
    assert nearest_conflict((2.0, 0.0), 0, TWO, g) is None


def test_nearest_conflict_matches_brute_force():
    rnd = random.Random(5)
    for seed in range(20):
        sites, world = uniform(50, seed)
        g = build_index(sites, world)
        for _ in range(25):
            y = (rnd.random(), rnd.random())
            k = rnd.randrange(50)
            dk = math.dist(y, sites[k])
            closer = any(math.dist(y, s) < dk - 1e-9 * world.scale for j, s in enumerate(sites) if j != k)
            got = nearest_conflict(y, k, sites, g)
            assert (got is not None) == closer
            if got is not None:
                assert math.dist(y, sites[got]) < dk


def _check_endpoint(e, k, theta, sites, world):
    p = sites[k]
    eps = 1e-9 * world.scale
    assert e.point == pytest.approx((p[0] + e.t * theta[0], p[1] + e.t * theta[1]), abs=1e-12)
    L = e.primary_line
    assert abs(L.value(e.point)) <= eps
    dp = math.dist(e.point, p)
    assert all(dp <= math.dist(e.point, s) + eps for s in sites)
    if L.source.kind == BISECTOR:
        assert L.source.id in e.equidist_sites
    on_facet = any(abs(F.value(e.point)) <= eps for F in world.boundary_lines)
    assert e.equidist_sites or on_facet
    assert e.replacements <= len(sites) - 1
    assert e.comparisons <= len(sites)


@given(st.integers(0, 10**6), st.integers(2, 80), st.floats(-math.pi, math.pi))
@settings(max_examples=150, deadline=None)
def test_endpoint_properties_and_grid_independence(seed, n, a):
    sites, world = uniform(n, seed)
    theta = (math.cos(a), math.sin(a))
    grid = build_index(sites, world)
    brute = brute_force_index(sites, world)
    for k in range(0, n, max(1, n // 5)):
        e = shoot_ray(k, theta, sites, world, grid)
        _check_endpoint(e, k, theta, sites, world)
        b = shoot_ray(k, theta, sites, world, brute)
        assert b.t == pytest.approx(e.t, abs=1e-9 * world.scale)
        assert b.equidist_sites == e.equidist_sites


@given(st.lists(st.tuples(st.integers(1, 9), st.integers(1, 9)), min_size=2, max_size=25, unique=True),
       st.floats(-math.pi, math.pi))
@settings(max_examples=150, deadline=None)
def test_endpoint_on_lattice_sites(cells, a):
    # integer lattice: heavy cocircularity and collinearity
    sites = [(float(x), float(y)) for x, y in cells]
    world = World.box(0.0, 0.0, 10.0, 10.0)
    theta = (math.cos(a), math.sin(a))
    grid = build_index(sites, world)
    for k in range(len(sites)):
        _check_endpoint(shoot_ray(k, theta, sites, world, grid), k, theta, sites, world)
