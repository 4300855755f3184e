"""Specialization onto the resonance curve t^(k+1) q^(r-1) = 1.

The curve is reached through a transverse deformation scale e: t maps to
e*s^(2(r-1)) and the square root of q maps to omega2*s^-(k+1), so that
t^(k+1) q^(r-1) collapses to e^(k+1) and the curve itself is the slice
e = 1.  Orders of vanishing along the curve are orders in (e - 1),
computed factor by factor on rational functions, which keeps them cheap
on large structured products.  All arithmetic is exact over Q(zeta_L)
with L = 2(r-1); s carries the uniformizing direction (u = s^(2m)), so
every exponent stays integral even though q has a formal square root.
"""
from __future__ import annotations

from math import gcd

from .cyclotomic import scalar_field
from .genpoly import (
    GenPoly,
    RatFun,
    exact_divide,
    generator_ring,
    order_at,
    sum_ratfuns,
)
from .koornwinder import KMPoly, evaluation_formula, koornwinder_polynomial, orbit_sum_at
from .partitions import is_admissible, pad, wheel_sequences

_CURVE_NAMES = ("alpha", "beta", "gamma", "delta", "s")
_MAPPED = ("rho", "t")


class PoleAtResonance(ArithmeticError):
    """Setting e = 1 hit a negative order along the resonance curve.

    Carries the partition indexing the offending coefficient when the
    failure happened inside a symmetric expansion.
    """

    def __init__(self, message: str, partition=None):
        super().__init__(message)
        self.partition = partition


class ResonanceSetting:
    """Uniformization data for one resonance pair (k, r).

    omega is a primitive m-th root of unity with m = gcd(k+1, r-1);
    omega1 is the smallest power of zeta_L with omega1^((r-1)/m) = omega,
    and omega2 is its square root, used as the image of the square root
    of q.  For r = 2 the scalar field degenerates to Q.
    """

    __slots__ = ("k", "r", "m", "level", "field", "omega", "omega1", "omega2")

    def __init__(self, k: int, r: int):
        if k < 1:
            raise ValueError("need k >= 1")
        if r < 2:
            raise ValueError("need r >= 2")
        self.k = k
        self.r = r
        self.m = gcd(k + 1, r - 1)
        self.level = 2 * (r - 1)
        self.field = scalar_field(self.level)
        zeta = self.field.root()
        self.omega2 = zeta
        self.omega1 = zeta * zeta
        self.omega = self.omega1 ** ((r - 1) // self.m)

    def curve_ring(self, extra=(), keep_deformation: bool = False):
        """The image ring: curve generators, optionally e, then extras."""
        names = _CURVE_NAMES + (("e",) if keep_deformation else ()) + tuple(extra)
        return generator_ring(names, self.level)

    def __repr__(self):
        return f"ResonanceSetting(k={self.k}, r={self.r})"


def _unit(ring, name):
    e = [0] * ring.nvars
    e[ring.index(name)] = 1
    return tuple(e)


def _phi_images(setting: ResonanceSetting, src_ring, target) -> dict:
    """Substitution images for one source ring into a curve ring."""
    images = {}
    for name in src_ring.names:
        if name == "rho":
            e = [0] * target.nvars
            e[target.index("s")] = -(setting.k + 1)
            images[name] = (setting.omega2, tuple(e))
        elif name == "t":
            e = [0] * target.nvars
            e[target.index("s")] = 2 * (setting.r - 1)
            if "e" in target.names:
                e[target.index("e")] = 1
            images[name] = (1, tuple(e))
        else:
            images[name] = (1, _unit(target, name))
    return images


def _lift_images(src_ring, target) -> dict:
    return {name: (1, _unit(target, name)) for name in src_ring.names}


def _extras(src_ring) -> tuple:
    return tuple(n for n in src_ring.names
                 if n not in _CURVE_NAMES[:4] and n not in _MAPPED)


def _collapse(setting: ResonanceSetting, nf, df, keep_ring, extra):
    """Evaluate a factored quotient over the keep ring at e = 1.

    Divides the exact power of (e - 1) out of every factor first; a
    negative net order is a genuine pole on the curve.
    """
    eminus1 = keep_ring.gen("e") - keep_ring.one
    spec = setting.curve_ring(extra)
    images = {name: (1, _unit(spec, name) if name != "e" else (0,) * spec.nvars)
              for name in keep_ring.names}
    net = 0
    stripped = []
    for side, factors in (("num", nf), ("den", df)):
        out = []
        for poly, mult in factors:
            z = order_at(poly, "e", 1)
            if z:
                poly = exact_divide(poly, eminus1 ** z)
            net += z * mult if side == "num" else -z * mult
            out.append((poly.substitute(images, spec), mult))
        stripped.append(out)
    if net < 0:
        raise PoleAtResonance("negative order at the resonance curve")
    if net > 0:
        return RatFun(spec.zero)
    return RatFun.from_factors(spec, stripped[0], stripped[1])


def phi(f, setting: ResonanceSetting, keep_deformation: bool = False):
    """Specialize onto the resonance curve.

    Polynomials and rational functions map into the curve ring; a
    constructed eigenfunction maps coefficientwise and comes back as a
    partition -> value dict.  With keep_deformation the deformation
    scale e survives (t carries it); without it the result is evaluated
    at e = 1, which raises PoleAtResonance on any negative order.
    """
    if isinstance(f, KMPoly):
        out = {}
        for mu, c in f.coefficients.items():
            try:
                out[mu] = phi(c, setting, keep_deformation)
            except PoleAtResonance as exc:
                raise PoleAtResonance(
                    f"pole at resonance in the coefficient at {mu}", mu) from exc
        return out
    if isinstance(f, RatFun):
        extra = _extras(f.ring)
        if f.is_zero():
            return RatFun(setting.curve_ring(extra, keep_deformation).zero)
        keep = setting.curve_ring(extra, keep_deformation=True)
        images = _phi_images(setting, f.ring, keep)
        nf = [(p.substitute(images, keep), m) for p, m in f.num_factors()]
        df = [(p.substitute(images, keep), m) for p, m in f.den_factors()]
        if keep_deformation:
            return RatFun.from_factors(keep, nf, df)
        return _collapse(setting, nf, df, keep, extra)
    if isinstance(f, GenPoly):
        target = setting.curve_ring(_extras(f.ring), keep_deformation)
        return f.substitute(_phi_images(setting, f.ring, target), target)
    raise TypeError(f"cannot specialize {type(f)!r}")


def Z_of(x, setting: ResonanceSetting) -> int:
    """Multiplicity of x along the resonance curve; poles are negative."""
    if x.is_zero():
        raise ValueError("the zero element has no multiplicity")
    return order_at(phi(x, setting, keep_deformation=True), "e", 1)


def zeros_poles_count(lam, setting: ResonanceSetting, n: int) -> int:
    """Combinatorial resonance multiplicity of the principal evaluation.

    Counts part gaps reaching (r-1)l + 1 across windows of width
    (k+1)l - 1 minus those across width (k+1)l.
    """
    k, r = setting.k, setting.r
    lam = pad(lam, n)

    def gaps(width_shift: int) -> int:
        count = 0
        for i in range(1, n + 1):
            l = 1
            while i + (k + 1) * l + width_shift <= n:
                if lam[i - 1] - lam[i + (k + 1) * l + width_shift - 1] >= (r - 1) * l + 1:
                    count += 1
                l += 1
        return count

    return gaps(-1) - gaps(0)


def has_no_pole(poly: KMPoly, setting: ResonanceSetting) -> bool:
    """Every expansion coefficient has nonnegative order along the curve."""
    return all(Z_of(c, setting) >= 0 for c in poly.coefficients.values())


def _wheel_points(setting: ResonanceSetting, n: int, steps, ring):
    """Evaluation points with x_1..x_(k+1) chained on a wheel over x1.

    Consecutive wheel ratios are t q^(s_i); the remaining n - k - 1
    positions get their own free generators.
    """
    k, r = setting.k, setting.r
    sx = ring.index("s")
    pts = [(1, _unit(ring, "x1"))]
    sigma = 0
    for i, s in enumerate(steps, start=1):
        sigma += s
        e = [0] * ring.nvars
        e[ring.index("x1")] = 1
        e[sx] = 2 * (r - 1) * i - 2 * (k + 1) * sigma
        pts.append((setting.omega1 ** sigma, tuple(e)))
    for j in range(1, n - k):
        pts.append((1, _unit(ring, f"x{j + 1}")))
    return pts


def check_wheel(f, setting: ResonanceSetting, n: int) -> bool:
    """Does the specialized polynomial vanish on every wheel chain?

    The wheel occupies the first k+1 positions; x1 and the tail
    positions stay free, so vanishing is an identity in them.  By
    hyperoctahedral symmetry one placement decides all of them.
    Raises PoleAtResonance before substituting anything if f cannot be
    specialized.
    """
    k, r = setting.k, setting.r
    if n < k + 1:
        raise ValueError("a wheel needs at least k+1 variables")
    free = tuple(f"x{j}" for j in range(1, n - k + 1))
    ring = setting.curve_ring(free)
    if isinstance(f, KMPoly):
        if f.n != n:
            raise ValueError("variable count mismatch")
        spec = {}
        for mu, c in phi(f, setting).items():
            spec[mu] = c.substitute(_lift_images(c.ring, ring), ring)
        for steps in wheel_sequences(k, r):
            pts = _wheel_points(setting, n, steps, ring)
            items = []
            for mu, c in spec.items():
                val = orbit_sum_at(mu, n, pts, ring)
                if not val.is_zero():
                    items.append(c * val)
            if items and not sum_ratfuns(items, ring).is_zero():
                return False
        return True
    if isinstance(f, GenPoly):
        spec = phi(f, setting)
        for steps in wheel_sequences(k, r):
            pts = _wheel_points(setting, n, steps, ring)
            images = {}
            for name in spec.ring.names:
                if name.startswith("x"):
                    pos = int(name[1:])
                    images[name] = pts[pos - 1]
                else:
                    images[name] = (1, _unit(ring, name))
            if not spec.substitute(images, ring).is_zero():
                return False
        return True
    raise TypeError(f"cannot wheel-check {type(f)!r}")


def verify_admissible_pipeline(lam, setting: ResonanceSetting, n: int) -> dict:
    """Full per-index certificate: pole freedom, wheel vanishing, and the
    two multiplicity computations, together with their expected common
    value floor(n / (k+1))."""
    k, r = setting.k, setting.r
    lam = pad(lam, n)
    if not is_admissible(lam, n, k, r):
        raise ValueError(f"{lam} is not admissible for (k, r) = ({k}, {r})")
    poly = koornwinder_polynomial(lam, n)
    no_pole = has_no_pole(poly, setting)
    wheel = bool(no_pole and check_wheel(poly, setting, n))
    z_value = Z_of(evaluation_formula(lam, n), setting)
    count = zeros_poles_count(lam, setting, n)
    expected = n // (k + 1)
    return {
        "partition": lam,
        "no_pole": no_pole,
        "wheel": wheel,
        "z_evaluation": z_value,
        "zeros_poles_count": count,
        "expected_z": expected,
        "all_pass": bool(no_pole and wheel and z_value == count == expected),
    }
