"""Checks for the resonance-curve specialization.

Oracle values here were computed by hand from the substitution rule
(t -> e s^(2(r-1)), square root of q -> omega2 s^-(k+1)) and frozen:
the curve equation collapses to e^(k+1) - 1, the branch factor picks up
a simple zero, and the gap-count examples follow from counting part
differences directly.  Wheel positives and negatives use explicit
products whose vanishing can be read off the chained substitution.
"""
import random

import pytest

from bcwheel.genpoly import GenPoly, RatFun, generator_ring, order_at
from bcwheel.koornwinder import (
    base_ring,
    evaluation_formula,
    flat_ring,
    koornwinder_polynomial,
    orbit_sum_at,
    principal_spectrum,
    spectral_polynomial,
)
from bcwheel.partitions import orbit_exponents, partitions_in_box
from bcwheel.resonance import (
    PoleAtResonance,
    ResonanceSetting,
    Z_of,
    check_wheel,
    has_no_pole,
    phi,
    verify_admissible_pipeline,
    zeros_poles_count,
)

SETTINGS = [(1, 2), (1, 3), (2, 2), (2, 3), (3, 3), (2, 4), (3, 5)]


def _curve_equation(ring, k, r):
    return ring.gen("t", k + 1) * ring.gen("rho", 2 * (r - 1)) - ring.one


# ---------------------------------------------------------------------
# setting data


@pytest.mark.parametrize("k,r", SETTINGS)
def test_setting_roots(k, r):
    st = ResonanceSetting(k, r)
    assert st.level == 2 * (r - 1)
    one = st.field.coerce(1)
    # omega has multiplicative order exactly m
    acc, order = one, 0
    while True:
        acc, order = acc * st.omega, order + 1
        if acc == one:
            break
    assert order == st.m
    assert st.omega1 ** ((r - 1) // st.m) == st.omega
    assert st.omega2 * st.omega2 == st.omega1


def test_setting_rejects_bad_arguments():
    with pytest.raises(ValueError):
        ResonanceSetting(0, 2)
    with pytest.raises(ValueError):
        ResonanceSetting(1, 1)


@pytest.mark.parametrize("k,r", SETTINGS)
def test_curve_equation_collapses_to_deformation(k, r):
    st = ResonanceSetting(k, r)
    ring = generator_ring(("rho", "t"), st.level)
    img = phi(_curve_equation(ring, k, r), st, keep_deformation=True)
    keep = st.curve_ring(keep_deformation=True)
    assert img == keep.gen("e", k + 1) - keep.one
    assert Z_of(_curve_equation(ring, k, r), st) == 1


@pytest.mark.parametrize("k,r", SETTINGS)
def test_branch_factor_has_simple_zero(k, r):
    st = ResonanceSetting(k, r)
    ring = generator_ring(("rho", "t"), st.level)
    branch = (ring.gen("t", (k + 1) // st.m) * ring.gen("rho", 2 * (r - 1) // st.m)
              - ring.const(st.omega))
    assert order_at(phi(branch, st, keep_deformation=True), "e", 1) == 1


# ---------------------------------------------------------------------
# multiplicities along the curve


def test_multiplicity_examples():
    st = ResonanceSetting(1, 2)
    ring = base_ring()
    assert Z_of(ring.one, st) == 0
    assert Z_of(_curve_equation(ring, 1, 2), st) == 1
    # 1 - tq survives: its value on the curve is 1 - s^-2
    f = ring.one - ring.gen("t") * ring.gen("rho", 2)
    assert Z_of(f, st) == 0
    spec = phi(f, st)
    target = st.curve_ring()
    assert spec == target.one - target.gen("s", -2)
    with pytest.raises(ValueError):
        Z_of(ring.zero, st)


@pytest.mark.parametrize("k,r", [(1, 2), (1, 3), (3, 3)])
def test_multiplicity_is_additive(k, r):
    st = ResonanceSetting(k, r)
    ring = generator_ring(("rho", "t"), st.level)
    rng = random.Random(9000 + 10 * k + r)
    curve = _curve_equation(ring, k, r)
    for _ in range(6):
        f = ring.zero
        while f.is_zero():
            f = ring.from_terms({
                (rng.randrange(-2, 3) * 2, rng.randrange(-2, 3)): rng.randrange(-4, 5)
                for _ in range(3)})
        g = curve ** rng.randrange(0, 3) * f
        assert Z_of(f * g, st) == Z_of(f, st) + Z_of(g, st)
        assert Z_of(RatFun(f, g), st) == Z_of(f, st) - Z_of(g, st)


def test_keep_then_collapse_matches_direct():
    st = ResonanceSetting(1, 3)
    ring = generator_ring(("rho", "t"), st.level)
    rng = random.Random(71)
    keep = st.curve_ring(keep_deformation=True)
    spec = st.curve_ring()
    at_one = {name: (1, tuple(int(name == other) for other in spec.names))
              if name != "e" else (1, (0,) * spec.nvars)
              for name in keep.names}
    for _ in range(8):
        f = ring.from_terms({
            (rng.randrange(-3, 4) * 2, rng.randrange(-3, 4)): rng.randrange(-5, 6)
            for _ in range(4)})
        if f.is_zero():
            continue
        assert phi(f, st, keep_deformation=True).substitute(at_one, spec) == phi(f, st)


# ---------------------------------------------------------------------
# gap counting


@pytest.mark.parametrize("lam,k,r,n,expected", [
    ((2, 0), 1, 2, 2, 1),
    ((0, 0), 1, 2, 2, 0),
    ((5, 2, 0), 1, 2, 3, 1),
    ((3, 0), 1, 3, 2, 1),
    ((2, 2, 2), 1, 2, 3, 0),
    ((2, 0, 0), 2, 2, 3, 1),
])
def test_gap_count_examples(lam, k, r, n, expected):
    assert zeros_poles_count(lam, ResonanceSetting(k, r), n) == expected


@pytest.mark.parametrize("k,r,n,top", [(1, 2, 2, 4), (1, 3, 2, 4), (1, 2, 3, 3)])
def test_gap_count_matches_evaluation_order(k, r, n, top):
    st = ResonanceSetting(k, r)
    for lam in partitions_in_box(n, top):
        ev = evaluation_formula(lam, n)
        assert Z_of(ev, st) == zeros_poles_count(lam, st, n), lam


def test_admissible_count_hits_floor():
    cases = [((2, 0), 1, 2, 2), ((3, 1), 1, 2, 2), ((3, 0), 1, 3, 2),
             ((5, 2, 0), 1, 2, 3), ((2, 0, 0), 2, 2, 3), ((4, 2, 0), 1, 2, 3)]
    for lam, k, r, n in cases:
        st = ResonanceSetting(k, r)
        assert zeros_poles_count(lam, st, n) == n // (k + 1)


# ---------------------------------------------------------------------
# poles of expansion coefficients


def test_admissible_coefficients_are_pole_free():
    st = ResonanceSetting(1, 2)
    assert has_no_pole(koornwinder_polynomial((2, 0), 2), st)
    assert has_no_pole(koornwinder_polynomial((3, 1), 2), st)


def test_pole_is_found_and_reported():
    # smallest three-variable case with a genuine resonant pole
    st = ResonanceSetting(1, 2)
    poly = koornwinder_polynomial((2, 1, 0), 3)
    assert not has_no_pole(poly, st)
    assert Z_of(poly.coefficients[(1, 1, 1)], st) == -1
    with pytest.raises(PoleAtResonance) as info:
        phi(poly, st)
    assert info.value.partition == (1, 1, 1)
    # the wheel check refuses to substitute around a pole
    with pytest.raises(PoleAtResonance):
        check_wheel(poly, st, 3)


def test_keeping_the_deformation_avoids_the_pole():
    st = ResonanceSetting(1, 2)
    poly = koornwinder_polynomial((2, 1, 0), 3)
    kept = phi(poly, st, keep_deformation=True)
    assert set(kept) == set(poly.coefficients)
    assert order_at(kept[(1, 1, 1)], "e", 1) == -1


# ---------------------------------------------------------------------
# wheel vanishing


def test_wheel_distinguishes_admissible_two_variable():
    st = ResonanceSetting(1, 2)
    assert check_wheel(koornwinder_polynomial((2, 0), 2), st, 2)
    assert not check_wheel(koornwinder_polynomial((1, 0), 2), st, 2)
    assert not check_wheel(koornwinder_polynomial((2, 1), 2), st, 2)


def test_wheel_with_free_tail_positions():
    # the wheel sits on x1, x2; x3 stays free on both sides
    st = ResonanceSetting(1, 2)
    assert not check_wheel(koornwinder_polynomial((2, 0, 0), 3), st, 3)
    fr = flat_ring(3)
    x1, x2, x3 = fr.gen("x1"), fr.gen("x2"), fr.gen("x3")
    t, q = fr.gen("t"), fr.gen("rho", 2)
    vanishing = (x2 - t * x1) * (x2 - t * q * x1) * (x3 + fr.one)
    near_miss = (x2 - t * x1) * (x2 - t * q * q * x1) * (x3 + fr.one)
    assert check_wheel(vanishing, st, 3)
    assert not check_wheel(near_miss, st, 3)
    assert check_wheel(fr.zero, st, 3)


def test_wheel_rejects_bare_orbit_sum():
    st = ResonanceSetting(1, 2)
    fr = flat_ring(2)
    msum = fr.zero
    for vec in orbit_exponents((1, 0), 2):
        e = [0] * fr.nvars
        e[fr.index("x1")], e[fr.index("x2")] = vec
        msum = msum + fr.from_terms({tuple(e): fr.field.one})
    assert not check_wheel(msum, st, 2)


def test_wheel_needs_enough_variables():
    with pytest.raises(ValueError):
        check_wheel(flat_ring(2).zero, ResonanceSetting(2, 2), 2)


# ---------------------------------------------------------------------
# the combined certificate


def test_pipeline_on_admissible_indices():
    rep = verify_admissible_pipeline((2, 0), ResonanceSetting(1, 2), 2)
    assert rep["all_pass"]
    assert rep["no_pole"] and rep["wheel"]
    assert rep["z_evaluation"] == rep["zeros_poles_count"] == rep["expected_z"] == 1
    # gcd(k+1, r-1) = 2 here, so the branch roots are genuinely complex
    rep = verify_admissible_pipeline((3, 0), ResonanceSetting(1, 3), 2)
    assert rep["all_pass"]


def test_pipeline_rejects_non_admissible():
    with pytest.raises(ValueError):
        verify_admissible_pipeline((1, 0), ResonanceSetting(1, 2), 2)


def test_resonant_spectra_collide_without_merging_eigenspaces():
    # two distinct indices whose principal spectra agree on the curve
    # while the full spectral polynomials stay distinct
    st = ResonanceSetting(3, 3)
    a, b = (3, 3, 2, 0), (4, 3, 3, 0)
    pa = principal_spectrum(a, 4)
    pb = principal_spectrum(b, 4)
    assert pa != pb
    assert phi(pa, st) == phi(pb, st)
    assert phi(spectral_polynomial(a, 4), st) != phi(spectral_polynomial(b, 4), st)
