import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fuchsian_codes.errors import CapError, DomainError, NoCircle, UnsupportedGroup
from fuchsian_codes.fuchsian import (
    catalog, circle_image, depth, depth_of_point, enumerate_Sk, in_fundamental_domain,
    isometric_circle, mobius, theta_table,
)
from fuchsian_codes.geometry import Circle

SQRT3 = math.sqrt(3)


def random_word(F, rng, n):
    letters = list(F.generators) + [g.inverse() for g in F.generators]
    out = F.element("Id")
    for k in rng.integers(0, len(letters), n):
        out = out * letters[k]
    return out


def probe_near(tau, rho, theta):
    w = math.tanh(rho / 2) * complex(math.cos(theta), math.sin(theta))
    return (tau - tau.conjugate() * w) / (1 - w)


class TestCatalog:
    @pytest.mark.parametrize("D", [6, 10, 15])
    def test_relations_hold_exactly(self, D):
        F = catalog(D)
        assert F.relations
        for rel in F.relation_values():
            assert rel.is_pm_identity()

    def test_gamma6_data(self, g6):
        assert g6.generator(3).floats == (0.0, 1.0, -1.0, 0.0)
        assert g6.M == 5
        assert [g.label for g in g6.G_ext] == ["g1", "g1^-1", "g2", "g2^-1"]
        assert [g.label for g in g6.G_int] == ["g3"]

    def test_unknown_group(self):
        with pytest.raises(UnsupportedGroup):
            catalog(21)

    @pytest.mark.parametrize("D", [10, 15])
    def test_no_tabulated_sides(self, D):
        with pytest.raises(UnsupportedGroup):
            catalog(D, "circles")

    @pytest.mark.parametrize("D, area", [(6, 2 * math.pi / 3), (10, 4 * math.pi / 3), (15, 8 * math.pi / 3)])
    def test_covolume(self, D, area):
        assert catalog(D).covolume == pytest.approx(area)

    @pytest.mark.parametrize("D", [6, 10, 15])
    def test_sides_closed_under_inverse(self, D):
        F = catalog(D)
        keys = {g.key for g in F.G}
        assert all(g.inverse().key in keys for g in F.G)

    @pytest.mark.parametrize("D", [6, 10, 15])
    def test_center_is_interior(self, D):
        F = catalog(D)
        assert all(s.excess(F.tau) < 0 for s in F.sides)


class TestMobius:
    def test_identity(self, g6):
        assert mobius(g6.element("Id"), 0.3 + 0.7j) == 0.3 + 0.7j

    def test_g3(self, g6):
        assert mobius(g6.generator(3), 0.5j) == pytest.approx(2j)

    def test_g1_inverse(self, g6):
        z = mobius(g6.generator(1).inverse(), 0.5j)
        assert z == pytest.approx(complex(-0.3315011, 0.1531138), abs=1e-7)

    def test_lower_half_plane(self, g6):
        with pytest.raises(DomainError):
            mobius(g6.generator(1), -1j)

    @pytest.mark.parametrize("D", [6, 10, 15])
    @settings(max_examples=40, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1), x=st.floats(-3, 3), y=st.floats(0.1, 10))
    def test_action_is_compatible_with_products(self, D, seed, x, y):
        F = catalog(D)
        rng = np.random.default_rng(seed)
        g1, g2 = random_word(F, rng, 4), random_word(F, rng, 4)
        z = complex(x, y)
        lhs, rhs = mobius(g1, mobius(g2, z)), mobius(g1 * g2, z)
        assert rhs.imag > 0
        assert abs(lhs - rhs) < 1e-9 * max(1.0, abs(rhs))


class TestIsometricCircle:
    def test_g3_is_unit_circle(self, g6):
        c = isometric_circle(g6.generator(3))
        assert (c.center, c.radius) == (0.0, 1.0)

    @pytest.mark.parametrize("name, center", [("g1", -0.1547005), ("g1^-1", -0.5773503),
                                               ("g2", 0.1547005), ("g2^-1", 0.5773503)])
    def test_exterior_circles(self, g6, name, center):
        c = isometric_circle(g6.element(name))
        # oracle from exact entries: -a22/a21 and 1/|a21|
        assert c.center == pytest.approx(center, abs=1e-7)
        assert c.radius == pytest.approx(2 / (SQRT3 + 3), abs=1e-12)

    def test_fixes_infinity(self):
        with pytest.raises(NoCircle):
            isometric_circle(catalog(10).generator(3))

    def test_image_of_unit_circle_under_g3(self, g6):
        img = circle_image(g6.generator(3), isometric_circle(g6.generator(3)))
        assert isinstance(img, Circle)
        assert img.center == pytest.approx(0) and img.radius == pytest.approx(1)

    def test_image_under_identity(self, g6):
        c = isometric_circle(g6.generator(1))
        img = circle_image(g6.element("Id"), c)
        assert img.center.real == pytest.approx(c.center) and img.radius == pytest.approx(c.radius)


class TestMembership:
    def test_center(self, g6):
        assert in_fundamental_domain(0.5j, g6) == (True, None)

    def test_outside_unit_circle(self, g6):
        inside, k = in_fundamental_domain(2j, g6)
        assert not inside and g6.sides[k].label == "g3"

    def test_inside_g1_inverse_circle(self, g6):
        inside, k = in_fundamental_domain(-0.5 + 0.3j, g6)
        assert not inside and g6.sides[k].label == "g1^-1"

    def test_boundary_counts_as_inside(self, g6):
        assert in_fundamental_domain(1j, g6)[0]


class TestDepth:
    def test_identity(self, g6):
        assert depth(g6.element("Id"), g6) == 0

    @pytest.mark.parametrize("word, d", [("g3", 1), ("g1^-1", 1), ("g1^-1 g3", 2), ("g2^-1 g3", 2)])
    def test_small_elements(self, g6, word, d):
        assert depth(g6.element(word), g6) == d

    def test_depth_of_point(self, g6):
        assert depth_of_point(2j, g6) == 1

    @pytest.mark.parametrize("D", [6, 10, 15])
    def test_probe_independence_near_center(self, D):
        F = catalog(D)
        rng = np.random.default_rng(D)
        for e in enumerate_Sk(F, 3).entries:
            for theta in rng.uniform(0, 2 * math.pi, 3):
                p = probe_near(F.tau, 0.1, theta)
                assert depth(e.element, F, probe=p) == e.depth


class TestEnumerate:
    def test_kappa_zero(self, g6):
        sk = enumerate_Sk(g6, 0)
        assert sk.theta == 1 and sk.entries[0].element.is_pm_identity()

    def test_depth_one_contains_generators(self, g6):
        keys = {e.element.key for e in enumerate_Sk(g6, 1).entries}
        for w in ("Id", "g1", "g1^-1", "g2", "g2^-1", "g3"):
            assert g6.element(w).key in keys

    @pytest.mark.parametrize("rule", ["deepest", "first"])
    def test_theta_strictly_increasing(self, g6, rule):
        theta = theta_table(g6, 5, rule)
        assert all(a < b for a, b in zip(theta, theta[1:]))

    def test_products_of_at_most_kappa_sides(self, g6):
        for e in enumerate_Sk(g6, 3).entries:
            assert len(e.g_word) <= 3 and e.depth <= 3

    def test_cap(self, g6):
        with pytest.raises(CapError):
            enumerate_Sk(g6, 9)
