import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ridgegap.errors import IndexOutOfRange
from ridgegap.geometry import DirectionPair, SampledDomain
from ridgegap.paths import (
    ClosedPath,
    canonical_closed_path,
    edge_type,
    path_functional,
    reverse_closed_path,
    rotate_closed_path,
    validate_path,
)

SQUARE = [[0, 0], [1, 0], [1, 1], [0, 1]]


@pytest.fixture
def square(axes):
    return SampledDomain.from_points(SQUARE, axes)


class TestValidate:
    def test_square_bolt(self, square):
        assert validate_path([0, 1, 2, 3], "B", square, closed=True)

    def test_wrong_first_edge(self, square):
        check = validate_path([0, 1, 2, 3], "A", square, closed=True)
        assert not check and check.edge == 0

    def test_odd_closed(self, square):
        assert not validate_path([0, 1, 2], "B", square, closed=True)
        assert validate_path([0, 1, 2], "B", square, closed=False)

    def test_out_of_range(self, square):
        with pytest.raises(IndexOutOfRange):
            validate_path([0, 7], "A", square)

    def test_length_two_in_3d(self):
        d = DirectionPair([1, 0, 0], [0, 1, 0])
        dom = SampledDomain.from_points([[0, 0, 0], [0, 0, 1]], d)
        assert validate_path([0, 1], "A", dom, closed=True)


class TestFunctional:
    def test_rectangle_xy(self, square):
        # (0,0),(0,1),(1,1),(1,0): alternating mean of x*y is 1/4
        f = np.array([p[0] * p[1] for p in SQUARE], dtype=float)
        cp = ClosedPath((0, 3, 2, 1), "A")
        assert validate_path(cp.pts, cp.first_edge, square, closed=True)
        assert path_functional(cp, f) == pytest.approx(0.25)
        assert path_functional(rotate_closed_path(cp, 1), f) == pytest.approx(-0.25)

    def test_edge_types_alternate(self):
        assert [edge_type("A", k) for k in range(4)] == ["A", "B", "A", "B"]

    def test_bad_length(self):
        with pytest.raises(ValueError):
            ClosedPath((0, 1, 2), "A")


@st.composite
def bolt_on_grid(draw):
    half = draw(st.integers(1, 4))
    cols = draw(st.lists(st.integers(0, 3), min_size=half, max_size=half))
    rows = draw(st.lists(st.integers(0, 3), min_size=half, max_size=half))
    # point k shares column with k+1 for even k (A edge), row for odd k
    pts = []
    for k in range(half):
        pts.append(4 * cols[k] + rows[k])
        pts.append(4 * cols[k] + rows[(k + 1) % half])
    return pts


class TestSymmetries:
    @settings(max_examples=200, deadline=None)
    @given(pts=bolt_on_grid(), shift=st.integers(0, 20), seed=st.integers(0, 2**31))
    def test_rotation_and_reversal(self, pts, shift, seed):
        dom = SampledDomain.from_points(
            [[i, j] for i in range(4) for j in range(4)], DirectionPair([1, 0], [0, 1])
        )
        if any(pts[k] == pts[(k + 1) % len(pts)] for k in range(len(pts))):
            return
        cp = ClosedPath(tuple(pts), "A")
        assert validate_path(cp.pts, "A", dom, closed=True)
        f = np.random.default_rng(seed).uniform(-1, 1, len(dom))
        g = path_functional(cp, f)
        r = rotate_closed_path(cp, shift)
        assert validate_path(r.pts, r.first_edge, dom, closed=True)
        assert path_functional(r, f) == pytest.approx((-1) ** shift * g, abs=1e-12)
        rev = reverse_closed_path(cp)
        assert validate_path(rev.pts, rev.first_edge, dom, closed=True)
        assert path_functional(rev, f) == pytest.approx(-g, abs=1e-12)
        assert canonical_closed_path(r) == canonical_closed_path(cp)

    def test_annihilates_ridge_sums(self, rng):
        dom = SampledDomain.from_points(
            [[i, j] for i in range(4) for j in range(4)], DirectionPair([1, 0], [0, 1])
        )
        g, h = rng.normal(size=4), rng.normal(size=4)
        f = g[dom.a_level] + h[dom.b_level]
        cp = ClosedPath((0, 1, 5, 6, 10, 8), "A")
        assert validate_path(cp.pts, "A", dom, closed=True)
        assert abs(path_functional(cp, f)) < 1e-14
