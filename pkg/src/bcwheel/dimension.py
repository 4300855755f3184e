"""Two independent dimension computations for the wheel-vanishing span.

The primal computation instantiates the uniformized wheel substitutions
at rational sample points and takes the exact nullity of the resulting
coefficient matrix; sampling can only enlarge the null space, so the
value is an upper bound that becomes a certificate when it meets the
admissible-partition count from below.  The dual computation expands
generating currents e(tau^p z) against the orbit-sum basis, stacks every
relation row, and reads the quotient dimension off an exact rank, with
tau a root of unity of order r - 1.  Agreement of both with the count
certifies the dimension at that instance.
"""
from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .cyclotomic import scalar_field
from .genpoly import generator_ring
from .koornwinder import orbit_sum_at
from .partitions import is_admissible, partitions_in_box, wheel_sequences
from .resonance import ResonanceSetting


@dataclass(frozen=True)
class RelationRow:
    """Coefficient of z^d in a product of k+1 currents, on the e-basis.

    entries maps a sorted (k+1)-tuple of indices in [0, M] to a scalar
    in Q(tau).
    """

    p: tuple
    d: int
    entries: dict


def current_relation(p, d: int, M: int, k: int, r: int) -> RelationRow:
    """Coefficient of z^d in prod_j e(tau^(p_j) z).

    Each current contributes e_0 or e_i z^(+-i); a minus exponent is
    only available for i > 0.  Works for negative d as well, and the
    result satisfies the reflection symmetry in d.
    """
    p = tuple(p)
    if len(p) != k + 1:
        raise ValueError("p must have exactly k+1 components")
    fld = scalar_field(r - 1)
    tau = fld.root()
    entries: dict = {}
    for ivec in itertools.product(range(M + 1), repeat=k + 1):
        options = [(1,) if i == 0 else (1, -1) for i in ivec]
        for svec in itertools.product(*options):
            if sum(s * i for s, i in zip(svec, ivec)) != d:
                continue
            coeff = tau ** sum(pj * s * i for pj, s, i in zip(p, svec, ivec))
            key = tuple(sorted(ivec, reverse=True))
            cur = entries.get(key)
            entries[key] = coeff if cur is None else cur + coeff
    return RelationRow(p, d, {key: c for key, c in entries.items() if c})


def _echelon(mat: list, fld) -> tuple[list, list]:
    """Reduced row echelon form in place; returns (rows, pivot columns)."""
    zero = fld.zero
    pivots = []
    row = 0
    cols = len(mat[0]) if mat else 0
    for col in range(cols):
        hit = next((i for i in range(row, len(mat)) if mat[i][col] != zero), None)
        if hit is None:
            continue
        mat[row], mat[hit] = mat[hit], mat[row]
        inv = mat[row][col] ** -1
        mat[row] = [x * inv for x in mat[row]]
        for i in range(len(mat)):
            if i != row and mat[i][col] != zero:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[row])]
        pivots.append(col)
        row += 1
        if row == len(mat):
            break
    return mat, pivots


def _ideal_rows(k: int, r: int, n: int, M: int):
    """All relation rows multiplied onto weight n: indices concatenate."""
    rows = []
    for p in itertools.product(range(r - 1), repeat=k + 1):
        for d in range(M * (k + 1) + 1):
            rel = current_relation(p, d, M, k, r)
            if not rel.entries:
                continue
            for nu in partitions_in_box(n - k - 1, M):
                merged: dict = {}
                for key, c in rel.entries.items():
                    full = tuple(sorted(key + nu, reverse=True))
                    cur = merged.get(full)
                    merged[full] = c if cur is None else cur + c
                rows.append({key: c for key, c in merged.items() if c})
    return rows


def dual_quotient_dimension(k: int, r: int, n: int, M: int) -> int:
    """Dimension of the weight-n quotient by the current relations."""
    if n < k + 1:
        raise ValueError("need n >= k+1")
    fld = scalar_field(r - 1)
    basis = list(partitions_in_box(n, M))
    index = {lam: j for j, lam in enumerate(basis)}
    mat = []
    for entries in _ideal_rows(k, r, n, M):
        vec = [fld.zero] * len(basis)
        for lam, c in entries.items():
            vec[index[lam]] = c
        mat.append(vec)
    _, pivots = _echelon(mat, fld)
    assert comb(n + M, n) == len(basis)
    return len(basis) - len(pivots)


def dual_kernel_vectors(k: int, r: int, n: int, M: int) -> list[dict]:
    """Basis of coefficient vectors annihilated by every relation row.

    Each vector, read as f = sum c_lam m-hat_lam, represents a residual
    functional on the quotient; their number equals the quotient
    dimension.
    """
    fld = scalar_field(r - 1)
    basis = list(partitions_in_box(n, M))
    index = {lam: j for j, lam in enumerate(basis)}
    mat = []
    for entries in _ideal_rows(k, r, n, M):
        vec = [fld.zero] * len(basis)
        for lam, c in entries.items():
            vec[index[lam]] = c
        mat.append(vec)
    rref, pivots = _echelon(mat, fld)
    free = [j for j in range(len(basis)) if j not in pivots]
    out = []
    for j in free:
        v = [fld.zero] * len(basis)
        v[j] = fld.one
        for i, col in enumerate(pivots):
            v[col] = -rref[i][j]
        out.append({basis[idx]: c for idx, c in enumerate(v) if c})
    return out


def _unit(ring, name: str) -> tuple:
    e = [0] * ring.nvars
    e[ring.index(name)] = 1
    return tuple(e)


def verify_kernel_tau_wheel(kernel_vector: dict, k: int, r: int, n: int, M: int) -> bool:
    """Does f = sum c_lam m-hat_lam vanish on every tau-power wheel?

    The first k+1 positions take the values tau^(p_i) x0 over all p in
    [0, r-2]^(k+1); x0 and the trailing positions stay free, so the
    check is an exact polynomial identity over Q(tau).
    """
    fld = scalar_field(r - 1)
    tau = fld.root()
    names = ("x0",) + tuple(f"x{j}" for j in range(k + 2, n + 1))
    ring = generator_ring(names, r - 1)
    terms = [(lam, c) for lam, c in kernel_vector.items() if c]
    for p in itertools.product(range(r - 1), repeat=k + 1):
        pts = [(tau ** pi, _unit(ring, "x0")) for pi in p]
        pts += [(1, _unit(ring, f"x{j}")) for j in range(k + 2, n + 1)]
        total = ring.zero
        for lam, c in terms:
            total = total + orbit_sum_at(lam, n, pts, ring) * c
        if not total.is_zero():
            return False
    return True


def _wheel_nullity(k: int, r: int, n: int, M: int, s_val: Fraction) -> int:
    """Nullity of the wheel-constraint matrix at one rational s value."""
    st = ResonanceSetting(k, r)
    fld = st.field
    sv = fld.coerce(s_val)
    names = tuple(f"x{j}" for j in range(1, n - k + 1))
    ring = generator_ring(names, st.level)
    basis = list(partitions_in_box(n, M))
    row_of: dict = {}
    columns = []
    for lam in basis:
        col: dict = {}
        for si, steps in enumerate(wheel_sequences(k, r)):
            pts = [(1, _unit(ring, "x1"))]
            sigma = 0
            for i, step in enumerate(steps, start=1):
                sigma += step
                scalar = st.omega1 ** sigma * sv ** (2 * (r - 1) * i - 2 * (k + 1) * sigma)
                pts.append((scalar, _unit(ring, "x1")))
            for j in range(1, n - k):
                pts.append((1, _unit(ring, f"x{j + 1}")))
            val = orbit_sum_at(lam, n, pts, ring)
            for e, c in val.terms.items():
                key = (si, e)
                if key not in row_of:
                    row_of[key] = len(row_of)
                col[row_of[key]] = c
        columns.append(col)
    mat = [[fld.zero] * len(basis) for _ in range(len(row_of))]
    for j, col in enumerate(columns):
        for i, c in col.items():
            mat[i][j] = c
    _, pivots = _echelon(mat, fld)
    return len(basis) - len(pivots)


def _draw_samples(k: int, r: int, n: int, M: int, seed=None):
    rng = random.Random(seed if seed is not None else f"wheel-kernel-{k}-{r}-{n}-{M}")
    while True:
        val = Fraction(rng.randrange(2, 40), rng.randrange(2, 40))
        if val != 1:
            yield val


def _wheel_kernel_agreeing(k, r, n, M, samples=None, max_tries: int = 10, seed=None):
    source = iter(samples) if samples is not None else _draw_samples(k, r, n, M, seed)
    seen: list[tuple[Fraction, int]] = []
    for _ in range(max_tries):
        try:
            s_val = next(source)
        except StopIteration:
            break
        nullity = _wheel_nullity(k, r, n, M, s_val)
        for _, earlier in seen:
            if earlier == nullity:
                seen.append((s_val, nullity))
                return nullity, tuple(s for s, _ in seen)
        seen.append((s_val, nullity))
    raise ArithmeticError(
        f"no two sample nullities agreed after {len(seen)} draws: {seen}")


def wheel_kernel_dimension(k: int, r: int, n: int, M: int, samples=None,
                           seed=None) -> int:
    """Nullity of the sampled wheel-constraint system.

    Evaluates at independent rational s values until two agree; sampling
    can only overestimate the generic nullity, so agreement from two
    sides pins the value down in practice.
    """
    if n < k + 1:
        raise ValueError("need n >= k+1")
    dim, _ = _wheel_kernel_agreeing(k, r, n, M, samples, seed=seed)
    return dim


def multiplicity_coefficient(lam, mu, r: int) -> Fraction:
    """Ratio of part-multiplicity factorials between two compatible
    partitions; compatible means equal residue multisets mod r - 1."""
    lam, mu = tuple(lam), tuple(mu)
    if len(lam) != len(mu):
        raise ValueError("length mismatch")
    modulus = r - 1
    if sorted(x % modulus for x in lam) != sorted(x % modulus for x in mu):
        raise ValueError("incompatible residue profiles")

    def factor(parts):
        out = 1
        for mult in Counter(parts).values():
            out *= factorial(mult)
        return out

    return Fraction(factor(lam), factor(mu))


@dataclass(frozen=True)
class DimensionReport:
    """Side-by-side dimensions for one (k, r, n, M) instance."""

    k: int
    r: int
    n: int
    M: int
    admissible_count: int
    wheel_kernel_dim: int
    dual_quotient_dim: int
    samples: tuple

    @property
    def equal(self) -> bool:
        return (self.admissible_count == self.wheel_kernel_dim
                == self.dual_quotient_dim)


def admissible_count(k: int, r: int, n: int, M: int) -> int:
    return sum(1 for lam in partitions_in_box(n, M)
               if is_admissible(lam, n, k, r))


def compare_dimensions(k: int, r: int, n: int, M: int, seed=None) -> DimensionReport:
    """Assemble all three numbers; equality certifies the instance."""
    wheel, samples = _wheel_kernel_agreeing(k, r, n, M, seed=seed)
    return DimensionReport(
        k=k, r=r, n=n, M=M,
        admissible_count=admissible_count(k, r, n, M),
        wheel_kernel_dim=wheel,
        dual_quotient_dim=dual_quotient_dimension(k, r, n, M),
        samples=samples,
    )
