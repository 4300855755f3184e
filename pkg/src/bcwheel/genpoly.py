"""Sparse Laurent polynomials in named formal generators, exact division,
valuation orders, and rational functions over them.

A GenPoly is a finite map from integer exponent tuples (negative exponents
allowed) to nonzero field scalars.  The scalar field is Q or Q(zeta_L);
scalars are Fraction for L <= 2 and Cyclotomic otherwise, both exact.
The monomial order used everywhere is graded lexicographic on exponent
tuples in the ring's fixed generator order.

A RatFun is a quotient of two GenPolys.  Its exposed numerator/denominator
pair is content-normalized; internally it may also carry num/den factor
lists (products are kept factored under *, /, ** and substitution, and
expanded on +, -, equality and serialization).  Valuation orders are
additive over factors, which keeps order computations on large structured
products cheap.
"""
from __future__ import annotations

import heapq
import random
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .cyclotomic import Cyclotomic, scalar_field


class NotDivisibleError(ArithmeticError):
    """Exact division was requested but the divisor does not divide."""


class InvalidSubstitutionError(ValueError):
    """A substitution image is not an invertible monomial times a nonzero scalar."""


# ---------------------------------------------------------------------
# packed exponent keys
#
# Hot loops (products, division, accumulation) key terms by a single
# integer instead of an exponent tuple: each exponent sits in its own
# 24-bit field, biased so negatives pack cleanly, and packed keys add
# like exponent vectors.  The bias leaves ~2^20 of headroom per field,
# far beyond any exponent this module produces.

_PACK_BITS = 24
_PACK_HALF = 1 << 20


@lru_cache(maxsize=None)
def _pack_spec(nvars: int) -> tuple[tuple[int, ...], int]:
    shifts = tuple(_PACK_BITS * i for i in range(nvars))
    bias = sum(_PACK_HALF << s for s in shifts)
    return shifts, bias


def _pack(exps: tuple[int, ...], shifts: tuple[int, ...]) -> int:
    total = 0
    for x, s in zip(exps, shifts):
        total += (x + _PACK_HALF) << s
    return total


def _unpack(packed: int, shifts: tuple[int, ...]) -> tuple[int, ...]:
    mask = (1 << _PACK_BITS) - 1
    return tuple(((packed >> s) & mask) - _PACK_HALF for s in shifts)


# ---------------------------------------------------------------------
# rings


class GeneratorRing:
    """Fixed tuple of generator names over a fixed scalar field."""

    __slots__ = ("names", "field", "nvars", "_index", "zero", "one")

    def __init__(self, names: tuple[str, ...], field):
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator names")
        self.names = names
        self.field = field
        self.nvars = len(names)
        self._index = {name: i for i, name in enumerate(names)}
        self.zero = GenPoly(self, {})
        self.one = GenPoly(self, {(0,) * self.nvars: field.one})

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"no generator {name!r} in ring {self.names}") from None

    def monomial(self, coeff, exps: tuple[int, ...]) -> GenPoly:
        c = self.field.coerce(coeff)
        if not c:
            return self.zero
        if len(exps) != self.nvars:
            raise ValueError("exponent tuple length mismatch")
        return GenPoly(self, {tuple(exps): c})

    def gen(self, name: str, power: int = 1) -> GenPoly:
        exps = [0] * self.nvars
        exps[self.index(name)] = power
        return self.monomial(1, tuple(exps))

    def const(self, value) -> GenPoly:
        return self.monomial(value, (0,) * self.nvars)

    def from_terms(self, terms: dict) -> GenPoly:
        out = {}
        for exps, coeff in terms.items():
            c = self.field.coerce(coeff)
            if c:
                out[tuple(exps)] = c
        return GenPoly(self, out)

    def __repr__(self):
        return f"GeneratorRing({self.names}, order={self.field.order})"


@lru_cache(maxsize=None)
def generator_ring(names: tuple[str, ...], cyclotomic_order: int = 1) -> GeneratorRing:
    """Interned ring: equal specs give the identical object."""
    return GeneratorRing(names, scalar_field(cyclotomic_order))


def _glex_key(item):
    exps = item
    return (sum(exps), exps)


# ---------------------------------------------------------------------
# polynomials


class GenPoly:
    __slots__ = ("ring", "terms", "_key")

    def __init__(self, ring: GeneratorRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._key = None

    # -- basic queries --------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def leading(self) -> tuple[tuple[int, ...], object]:
        """Graded-lex maximal term (exponents, coefficient)."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exps = max(self.terms, key=_glex_key)
        return exps, self.terms[exps]

    def min_exponents(self) -> tuple[int, ...]:
        """Componentwise minimum exponent vector (the monomial content)."""
        it = iter(self.terms)
        first = next(it)
        mins = list(first)
        for exps in it:
            for i, e in enumerate(exps):
                if e < mins[i]:
                    mins[i] = e
        return tuple(mins)

    def structural_key(self):
        """Hashable identity of the term map, for factor bookkeeping."""
        if self._key is None:
            self._key = frozenset(self.terms.items())
        return self._key

    def constant_value(self):
        """The scalar value of a constant polynomial."""
        if not self.terms:
            return self.ring.field.zero
        if len(self.terms) == 1:
            exps, c = next(iter(self.terms.items()))
            if not any(exps):
                return c
        raise ValueError("not a constant polynomial")

    # -- arithmetic -----------------------------------------------------

    def _coerce(self, other) -> GenPoly:
        if isinstance(other, GenPoly):
            if other.ring is not self.ring:
                raise ValueError("mixed generator rings")
            return other
        return self.ring.const(other)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, Cyclotomic)):
            other = self.ring.const(other)
        if not isinstance(other, GenPoly):
            return NotImplemented
        return self.ring is other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((id(self.ring), self.structural_key()))

    def __neg__(self) -> GenPoly:
        return GenPoly(self.ring, {e: -c for e, c in self.terms.items()})

    def __add__(self, other) -> GenPoly:
        other = self._coerce(other)
        big, small = self.terms, other.terms
        if len(big) < len(small):
            big, small = small, big
        out = dict(big)
        for e, c in small.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return GenPoly(self.ring, out)

    def __sub__(self, other) -> GenPoly:
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            if s is None:
                out[e] = -c
            else:
                s = s - c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return GenPoly(self.ring, out)

    def __mul__(self, other) -> GenPoly:
        if isinstance(other, (int, Fraction, Cyclotomic)):
            c = self.ring.field.coerce(other)
            if not c:
                return self.ring.zero
            return GenPoly(self.ring, {e: v * c for e, v in self.terms.items()})
        other = self._coerce(other)
        a, b = self.terms, other.terms
        if not a or not b:
            return self.ring.zero
        if len(a) < len(b):
            a, b = b, a
        if len(a) * len(b) >= 1024:
            return self._mul_packed(a, b)
        # b is the smaller factor; expand against it
        out: dict = {}
        for eb, cb in b.items():
            for ea, ca in a.items():
                key = tuple(x + y for x, y in zip(ea, eb))
                c = ca * cb
                s = out.get(key)
                if s is None:
                    out[key] = c
                else:
                    s = s + c
                    if s:
                        out[key] = s
                    else:
                        del out[key]
        return GenPoly(self.ring, out)

    def _mul_packed(self, a: dict, b: dict) -> GenPoly:
        shifts, bias = _pack_spec(self.ring.nvars)
        packed_a = [(_pack(e, shifts), c) for e, c in a.items()]
        out: dict = {}
        get = out.get
        for eb, cb in b.items():
            pb = _pack(eb, shifts) - bias
            for pa, ca in packed_a:
                key = pa + pb
                c = ca * cb
                s = get(key)
                if s is None:
                    out[key] = c
                else:
                    s = s + c
                    if s:
                        out[key] = s
                    else:
                        del out[key]
        return GenPoly(self.ring, {_unpack(k, shifts): c for k, c in out.items()})

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other) -> GenPoly:
        return self._coerce(other) - self

    def term_mul(self, exps: tuple[int, ...], coeff) -> GenPoly:
        """Multiply by a single term (monomial shift plus scale)."""
        return GenPoly(
            self.ring,
            {tuple(x + y for x, y in zip(e, exps)): c * coeff for e, c in self.terms.items()},
        )

    def __pow__(self, n: int) -> GenPoly:
        if n < 0:
            if not self.is_monomial():
                raise NotDivisibleError("negative power of a non-monomial")
            exps, c = next(iter(self.terms.items()))
            inv_c = (self.ring.field.one / c) if isinstance(c, Fraction) else c.inverse()
            base = GenPoly(self.ring, {tuple(-e for e in exps): inv_c})
            return base ** (-n)
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- structure ------------------------------------------------------

    def map_exponents(self, fn) -> GenPoly:
        """Apply fn to every exponent tuple; images may collide."""
        out: dict = {}
        for e, c in self.terms.items():
            key = fn(e)
            s = out.get(key)
            if s is None:
                out[key] = c
            else:
                s = s + c
                if s:
                    out[key] = s
                else:
                    del out[key]
        return GenPoly(self.ring, out)

    def substitute(self, images: dict, target: GeneratorRing) -> GenPoly:
        """Ring map sending each generator to scalar * monomial in target.

        images: name -> (scalar, exponent tuple over target).  Every
        generator of self.ring must have an image with a nonzero scalar.
        """
        field = target.field
        scalars = []
        exp_images = []
        for name in self.ring.names:
            if name not in images:
                raise InvalidSubstitutionError(f"no image for generator {name!r}")
            sc, exps = images[name]
            sc = field.coerce(sc)
            if not sc:
                raise InvalidSubstitutionError(f"zero image for generator {name!r}")
            if len(exps) != target.nvars:
                raise InvalidSubstitutionError("image exponent length mismatch")
            scalars.append(sc)
            exp_images.append(tuple(exps))
        out: dict = {}
        nt = target.nvars
        for e, c in self.terms.items():
            new_exps = [0] * nt
            coeff = field.coerce(c)
            for i, ei in enumerate(e):
                if ei == 0:
                    continue
                img = exp_images[i]
                for j in range(nt):
                    new_exps[j] += ei * img[j]
                coeff = coeff * scalars[i] ** ei
            key = tuple(new_exps)
            s = out.get(key)
            if s is None:
                if coeff:
                    out[key] = coeff
            else:
                s = s + coeff
                if s:
                    out[key] = s
                else:
                    del out[key]
        return GenPoly(target, out)

    def rational_content(self):
        """Positive rational c such that self/c has coprime integer
        coordinates, together with the sign of the leading coefficient."""
        nums: list[int] = []
        dens: list[int] = []
        for c in self.terms.values():
            if isinstance(c, Fraction):
                nums.append(c.numerator)
                dens.append(c.denominator)
            else:
                for fr in c.coords:
                    if fr:
                        nums.append(fr.numerator)
                        dens.append(fr.denominator)
        g = 0
        for n in nums:
            g = gcd(g, n)
        l = 1
        for d in dens:
            l = l * d // gcd(l, d)
        content = Fraction(g, l) if g else Fraction(1)
        _, lead = self.leading()
        if isinstance(lead, Fraction):
            sign = 1 if lead > 0 else -1
        else:
            sign = 1
            for fr in lead.coords:
                if fr:
                    sign = 1 if fr > 0 else -1
                    break
        return content, sign

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for e in sorted(self.terms, key=_glex_key, reverse=True)[:8]:
            c = self.terms[e]
            mono = "*".join(
                f"{n}^{p}" if p != 1 else n
                for n, p in zip(self.ring.names, e)
                if p
            )
            bits.append(f"({c})" + ("*" + mono if mono else ""))
        tail = " + ..." if len(self.terms) > 8 else ""
        return " + ".join(bits) + tail


# ---------------------------------------------------------------------
# exact division


def exact_divide(f: GenPoly, g: GenPoly) -> GenPoly:
    """Return q with f == q*g, or raise NotDivisibleError.

    Laurent divisibility: monomial content is cleared first, so the
    result is exact up to nothing -- q is itself a Laurent polynomial.
    """
    if g.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if f.is_zero():
        return f.ring.zero
    if f.ring is not g.ring:
        raise ValueError("mixed generator rings")
    off_f = f.min_exponents()
    off_g = g.min_exponents()
    offset = tuple(a - b for a, b in zip(off_f, off_g))
    shifts, bias = _pack_spec(f.ring.nvars)
    shifted_f = {_pack(tuple(e - o for e, o in zip(exps, off_f)), shifts): c
                 for exps, c in f.terms.items()}
    shifted_g = {_pack(tuple(e - o for e, o in zip(exps, off_g)), shifts): c
                 for exps, c in g.terms.items()}

    # packed-key comparison is a lexicographic monomial order, which is
    # all the division loop needs
    lt_g = max(shifted_g)
    lc_g = shifted_g[lt_g]
    rest_g = [(e - bias, c) for e, c in shifted_g.items() if e != lt_g]

    remainder = shifted_f
    quotient: dict = {}
    # max-heap via negated keys; lazy deletion
    heap = [-e for e in remainder]
    heapq.heapify(heap)
    while remainder:
        lt = None
        while heap:
            cand = -heap[0]
            if cand in remainder:
                lt = cand
                break
            heapq.heappop(heap)
        if lt is None:
            raise AssertionError("heap/remainder invariant broken")
        lc = remainder.pop(lt)
        heapq.heappop(heap)
        diff = lt - lt_g + bias
        if any(d < 0 for d in _unpack(diff, shifts)):
            raise NotDivisibleError("leading term not divisible")
        qc = lc / lc_g
        quotient[diff] = qc
        for ge, gc in rest_g:
            key = diff + ge
            s = remainder.get(key)
            c = qc * gc
            if s is None:
                remainder[key] = -c
                heapq.heappush(heap, -key)
            else:
                s = s - c
                if s:
                    remainder[key] = s
                else:
                    del remainder[key]
    return GenPoly(f.ring, {tuple(e + o for e, o in zip(_unpack(exps, shifts), offset)): c
                            for exps, c in quotient.items()})


def accumulate_poly(acc: dict, p: GenPoly) -> None:
    """Add p into the packed accumulator acc, in place.

    Fused form of acc += p for summation loops: no intermediate polynomial
    objects.  Keys are packed exponents; read the result back out with
    poly_from_accumulator over the same ring.
    """
    shifts, _ = _pack_spec(p.ring.nvars)
    get = acc.get
    for e, c in p.terms.items():
        key = _pack(e, shifts)
        cur = get(key)
        acc[key] = c if cur is None else cur + c


def poly_from_accumulator(ring: GeneratorRing, acc: dict) -> GenPoly:
    """Build a polynomial from an accumulate_poly dict, dropping zeros."""
    shifts, _ = _pack_spec(ring.nvars)
    return GenPoly(ring, {_unpack(k, shifts): c for k, c in acc.items() if c})


def binomial_rules_out(f: GenPoly, g: GenPoly) -> bool:
    """Cheap necessary-condition filter before exact_divide by two-term g.

    True means f is certainly not divisible by g; False is inconclusive.
    After a support-width check, f is collapsed to one variable u along a
    random integer weight vector orthogonal to the divisor direction, with
    signs arranged so the divisor's image vanishes; if g divides f the
    collapsed image must vanish identically.  Unit coefficients only.
    """
    if len(g.terms) != 2 or f.is_zero():
        return False
    (e1, c1), (e2, c2) = g.terms.items()
    d = tuple(a - b for a, b in zip(e1, e2))
    if c1 == -c2:
        pivot = None
    elif c1 == c2:
        # the image needs x^d = -1, so some coordinate must carry a sign
        pivot = next((i for i, a in enumerate(d) if a % 2), None)
        if pivot is None:
            return False
    else:
        return False
    spans = [sum(a * b for a, b in zip(e, d)) for e in f.terms]
    dd = sum(a * a for a in d)
    if max(spans) - min(spans) < dd:
        return True
    rng = random.Random(dd)
    while True:
        v = [rng.randrange(-9, 10) for _ in d]
        vd = sum(a * b for a, b in zip(v, d))
        w = [a * dd - b * vd for a, b in zip(v, d)]
        if any(w):
            break
    image: dict = {}
    for e, c in f.terms.items():
        key = sum(a * b for a, b in zip(w, e))
        if pivot is not None and e[pivot] % 2:
            c = -c
        cur = image.get(key)
        image[key] = c if cur is None else cur + c
    return any(image.values())


# ---------------------------------------------------------------------
# valuation order at a generator value


def _univariate_multiplicity(coeffs: dict[int, object], value, field) -> int:
    """Multiplicity of (v - value) in sum c_e v^e, value != 0."""
    lo = min(coeffs)
    dense = [field.zero] * (max(coeffs) - lo + 1)
    for e, c in coeffs.items():
        dense[e - lo] = c
    count = 0
    while True:
        # Horner evaluation at value
        acc = field.zero
        for c in reversed(dense):
            acc = acc * value + c
        if acc:
            return count
        # synthetic division by (v - value): forward Horner leaves quotient
        new = [field.zero] * (len(dense) - 1)
        acc = field.zero
        for i in range(len(dense) - 1, 0, -1):
            acc = dense[i] + acc * value
            new[i - 1] = acc
        dense = new
        count += 1
        if not dense:
            return count


def order_at(obj, name: str, value) -> int:
    """Vanishing order of obj along (generator - value); poles negative.

    Other generators are treated as transcendental.  value == 0 gives the
    minimal exponent of the generator.
    """
    if isinstance(obj, RatFun):
        total = 0
        for poly, mult in obj.num_factors():
            total += mult * order_at(poly, name, value)
        for poly, mult in obj.den_factors():
            total -= mult * order_at(poly, name, value)
        return total
    poly: GenPoly = obj
    if poly.is_zero():
        raise ValueError("the zero element has no finite order")
    field = poly.ring.field
    idx = poly.ring.index(name)
    value = field.coerce(value)
    if not value:
        return min(e[idx] for e in poly.terms)
    groups: dict[tuple[int, ...], dict[int, object]] = {}
    for exps, c in poly.terms.items():
        rest = exps[:idx] + exps[idx + 1:]
        groups.setdefault(rest, {})[exps[idx]] = c
    best = None
    for coeffs in groups.values():
        m = _univariate_multiplicity(coeffs, value, field)
        if m == 0:
            return 0
        if best is None or m < best:
            best = m
    return best


# ---------------------------------------------------------------------
# rational functions


def _normalize_pair(num: GenPoly, den: GenPoly) -> tuple[GenPoly, GenPoly]:
    if den.is_zero():
        raise ZeroDivisionError("rational function with zero denominator")
    ring = num.ring
    if num.is_zero():
        return ring.zero, ring.one
    mins = tuple(min(a, b) for a, b in zip(num.min_exponents(), den.min_exponents()))
    if any(mins):
        num = num.map_exponents(lambda e: tuple(x - m for x, m in zip(e, mins)))
        den = den.map_exponents(lambda e: tuple(x - m for x, m in zip(e, mins)))
    content, sign = den.rational_content()
    scale = Fraction(sign) / content
    if scale != 1:
        num = num * scale
        den = den * scale
    return num, den


class RatFun:
    """Exact quotient of generator polynomials.

    The (num, den) pair visible through .num/.den is content-normalized.
    Factor lists, when present, represent the same value unexpanded and
    are used for cheap valuation orders and substitutions.
    """

    __slots__ = ("ring", "_num", "_den", "_nf", "_df")

    def __init__(self, num: GenPoly, den: GenPoly | None = None, _normalized=False):
        self.ring = num.ring
        if den is None:
            den = num.ring.one
        if not _normalized:
            num, den = _normalize_pair(num, den)
        self._num = num
        self._den = den
        self._nf = None
        self._df = None

    @staticmethod
    def from_factors(ring: GeneratorRing, num_factors, den_factors) -> RatFun:
        """Build from [(GenPoly, multiplicity), ...] pairs without expanding."""
        nf = [(p, m) for p, m in num_factors if m]
        df = [(p, m) for p, m in den_factors if m]
        for p, m in df:
            if p.is_zero():
                raise ZeroDivisionError("zero factor in denominator")
            if m < 0:
                raise ValueError("negative multiplicity in factor list")
        for p, m in nf:
            if m < 0:
                raise ValueError("negative multiplicity in factor list")
        obj = object.__new__(RatFun)
        obj.ring = ring
        obj._num = None
        obj._den = None
        obj._nf = nf
        obj._df = df
        return obj

    # -- expansion ------------------------------------------------------

    def _expand(self) -> None:
        if self._num is not None:
            return
        num = self.ring.one
        for p, m in self._nf:
            num = num * p ** m
        den = self.ring.one
        for p, m in self._df:
            den = den * p ** m
        self._num, self._den = _normalize_pair(num, den)

    @property
    def num(self) -> GenPoly:
        self._expand()
        return self._num

    @property
    def den(self) -> GenPoly:
        self._expand()
        return self._den

    def num_factors(self):
        if self._nf is not None:
            return self._nf
        return [(self._num, 1)]

    def den_factors(self):
        if self._df is not None:
            return self._df
        return [] if self._den == self.ring.one else [(self._den, 1)]

    def is_factored(self) -> bool:
        return self._nf is not None

    # -- queries ----------------------------------------------------------

    def is_zero(self) -> bool:
        if self._nf is not None:
            return any(p.is_zero() for p, _ in self._nf)
        return self._num.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def is_polynomial(self) -> bool:
        return self.den == self.ring.one

    def __eq__(self, other) -> bool:
        if isinstance(other, GenPoly):
            other = RatFun(other)
        elif isinstance(other, (int, Fraction, Cyclotomic)):
            other = RatFun(self.ring.const(other))
        if not isinstance(other, RatFun):
            return NotImplemented
        if self.ring is not other.ring:
            return False
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        raise TypeError("RatFun is unhashable; compare with ==")

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> RatFun:
        if isinstance(other, RatFun):
            if other.ring is not self.ring:
                raise ValueError("mixed generator rings")
            return other
        if isinstance(other, GenPoly):
            return RatFun(other)
        return RatFun(self.ring.const(other))

    def __neg__(self) -> RatFun:
        if self._nf is not None:
            return RatFun.from_factors(
                self.ring, [(self.ring.const(-1), 1)] + list(self._nf), list(self._df))
        out = RatFun.__new__(RatFun)
        out.ring = self.ring
        out._num = -self._num
        out._den = self._den
        out._nf = None
        out._df = None
        return out

    def __add__(self, other) -> RatFun:
        other = self._coerce(other)
        return sum_ratfuns([self, other], self.ring)

    __radd__ = __add__

    def __sub__(self, other) -> RatFun:
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other) -> RatFun:
        other = self._coerce(other)
        nf = _merge_factors(self.num_factors(), other.num_factors())
        df = _merge_factors(self.den_factors(), other.den_factors())
        nf, df = _cancel_common(nf, df)
        return RatFun.from_factors(self.ring, nf, df)

    __rmul__ = __mul__

    def inverse(self) -> RatFun:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFun.from_factors(self.ring, self.den_factors(), self.num_factors())

    def __truediv__(self, other) -> RatFun:
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int) -> RatFun:
        if n == 0:
            return RatFun(self.ring.one)
        base = self if n > 0 else self.inverse()
        n = abs(n)
        return RatFun.from_factors(self.ring,
                                   [(p, m * n) for p, m in base.num_factors()],
                                   [(p, m * n) for p, m in base.den_factors()])

    # -- substitution -----------------------------------------------------

    def substitute(self, images: dict, target: GeneratorRing) -> RatFun:
        nf = [(p.substitute(images, target), m) for p, m in self.num_factors()]
        df = [(p.substitute(images, target), m) for p, m in self.den_factors()]
        for p, m in df:
            if p.is_zero():
                raise ZeroDivisionError("substitution sent the denominator to zero")
        return RatFun.from_factors(target, nf, df)

    def __repr__(self):
        if self.is_polynomial():
            return repr(self.num)
        return f"({self.num!r}) / ({self.den!r})"


def _merge_factors(a, b):
    out: dict = {}
    order: list = []
    for p, m in list(a) + list(b):
        k = (id(p.ring), p.structural_key())
        if k in out:
            prev_p, prev_m = out[k]
            out[k] = (prev_p, prev_m + m)
        else:
            out[k] = (p, m)
            order.append(k)
    return [out[k] for k in order]


def _cancel_common(nf, df):
    """Drop factors appearing (structurally) on both sides."""
    dmap = {(id(p.ring), p.structural_key()): [p, m] for p, m in df}
    new_nf = []
    for p, m in nf:
        k = (id(p.ring), p.structural_key())
        if k in dmap and dmap[k][1] > 0:
            take = min(m, dmap[k][1])
            dmap[k][1] -= take
            m -= take
        if m:
            new_nf.append((p, m))
    new_df = [(p, m) for p, m in dmap.values() if m]
    return new_nf, new_df


def sum_ratfuns(items: list[RatFun], ring: GeneratorRing | None = None) -> RatFun:
    """Exact sum over a shared factored common denominator.

    Builds the union (by structural key) of all denominator factor
    multisets, forms one numerator, then divides out any denominator
    factors that cancel.
    """
    if ring is None:
        if not items:
            raise ValueError("empty sum with no ring given")
        ring = items[0].ring
    items = [x for x in items if not x.is_zero()]
    if not items:
        return RatFun(ring.zero)
    union: dict = {}
    per_item = []
    for x in items:
        counts = {}
        for p, m in x.den_factors():
            k = (id(p.ring), p.structural_key())
            counts[k] = counts.get(k, 0) + m
            if k not in union or union[k][1] < counts[k]:
                union[k] = (p, counts[k])
        per_item.append(counts)
    total = ring.zero
    for x, counts in zip(items, per_item):
        contrib = ring.one
        for p, m in x.num_factors():
            contrib = contrib * p ** m
        for k, (p, m_union) in union.items():
            missing = m_union - counts.get(k, 0)
            if missing:
                contrib = contrib * p ** missing
        total = total + contrib
    if total.is_zero():
        return RatFun(ring.zero)
    # opportunistic cancellation of union factors against the numerator
    remaining = []
    for p, m in union.values():
        while m > 0:
            try:
                total = exact_divide(total, p)
            except NotDivisibleError:
                break
            m -= 1
        if m:
            remaining.append((p, m))
    return RatFun.from_factors(ring, [(total, 1)], remaining)


def ratfun_zero(ring: GeneratorRing) -> RatFun:
    return RatFun(ring.zero)


def ratfun_one(ring: GeneratorRing) -> RatFun:
    return RatFun(ring.one)
