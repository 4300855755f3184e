"""Command-line front end: constructions, verifications, reports.

Exit codes: 0 when every requested check passes, 1 when a mathematical
check fails, 2 for invalid input or an exceeded resource cap.  JSON
goes to standard output, progress notes to standard error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .acceptance import CRITERIA
from .cyclotomic import Cyclotomic, euler_phi
from .dimension import compare_dimensions
from .genpoly import GenPoly, RatFun
from .koornwinder import (
    KMPoly,
    base_ring,
    evaluation_formula,
    koornwinder_polynomial,
    principal_evaluation,
    principal_spectrum,
    spectral_polynomial,
    verify_duality,
    verify_triangular,
)
from .partitions import is_admissible, pad, partitions_in_box
from .resonance import (
    ResonanceSetting,
    Z_of,
    phi,
    verify_admissible_pipeline,
    zeros_poles_count,
)

# the one documented spectral collision, keyed by (k, r, n)
COLLISION_PAIRS = {(3, 3, 4): ((3, 3, 2, 0), (4, 3, 3, 0))}


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------
# serialization


def _scalar_to_json(c) -> list[str]:
    if isinstance(c, Cyclotomic):
        coords = c.coords
    else:
        coords = (Fraction(c),)
    return [f"{x.numerator}/{x.denominator}" for x in coords]


def _scalar_from_json(field, seq):
    coords = tuple(Fraction(part) for part in seq)
    if getattr(field, "order", 1) <= 2:
        if len(coords) != 1:
            raise UsageError("rational coefficient needs exactly one component")
        return coords[0]
    if len(coords) != euler_phi(field.order):
        raise UsageError("coefficient length does not match the field degree")
    return Cyclotomic(field.order, coords)


def _poly_terms_to_json(poly: GenPoly) -> list[dict]:
    return [{"exponents": list(e), "coeff": _scalar_to_json(c)}
            for e, c in sorted(poly.terms.items())]


def _poly_terms_from_json(ring, terms: list[dict]) -> GenPoly:
    data = {}
    for term in terms:
        e = tuple(int(x) for x in term["exponents"])
        if len(e) != ring.nvars:
            raise UsageError("exponent length does not match the generator list")
        data[e] = _scalar_from_json(ring.field, term["coeff"])
    return GenPoly(ring, data)


def poly_report(poly: KMPoly) -> dict:
    """Lossless JSON form of an orbit-sum expansion."""
    return {
        "partition": list(poly.partition),
        "n": poly.n,
        "flavor": poly.flavor,
        "generators": list(poly.ring.names),
        "coefficients": [
            {
                "partition": list(mu),
                "numerator": _poly_terms_to_json(c.num),
                "denominator": _poly_terms_to_json(c.den),
            }
            for mu, c in sorted(poly.coefficients.items())
        ],
    }


def poly_from_report(data: dict) -> KMPoly:
    """Rebuild an expansion from its JSON form."""
    ring = base_ring()
    if list(ring.names) != list(data["generators"]):
        raise UsageError("unknown generator list")
    coefficients = {}
    for entry in data["coefficients"]:
        mu = tuple(int(x) for x in entry["partition"])
        num = _poly_terms_from_json(ring, entry["numerator"])
        den = _poly_terms_from_json(ring, entry["denominator"])
        coefficients[mu] = RatFun(num, den)
    return KMPoly(tuple(int(x) for x in data["partition"]), int(data["n"]),
                  data["flavor"], coefficients)


# ---------------------------------------------------------------------
# configuration


@dataclass
class RunConfig:
    subcommand: str
    k: int | None = None
    r: int | None = None
    n: int | None = None
    M: int | None = None
    lam: tuple | None = None
    mu: tuple | None = None
    fmt: str = "text"
    seed: int | None = None
    max_weight: int = 2
    max_basis: int = 512
    collision_check: bool = False
    flavor: str = "plain"


def _parse_partition(text: str) -> tuple:
    try:
        parts = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"cannot parse partition {text!r}") from None
    if any(x < 0 for x in parts) or list(parts) != sorted(parts, reverse=True):
        raise UsageError(f"{parts} is not weakly decreasing and nonnegative")
    return parts


def _validate(cfg: RunConfig) -> None:
    if cfg.n is not None and cfg.n < 1:
        raise UsageError("need n >= 1")
    if cfg.r is not None and cfg.r < 2:
        raise UsageError("need r >= 2")
    if cfg.k is not None:
        if cfg.k < 1:
            raise UsageError("need k >= 1")
        if cfg.n is not None and cfg.k > cfg.n - 1:
            raise UsageError("need k <= n-1")
    if cfg.M is not None and cfg.M < 0:
        raise UsageError("need M >= 0")
    if cfg.lam is not None and cfg.n is not None and len(cfg.lam) > cfg.n:
        raise UsageError("partition has more parts than variables")


def _emit(line: str) -> None:
    sys.stdout.write(line + "\n")


def _note(line: str) -> None:
    sys.stderr.write(line + "\n")


# ---------------------------------------------------------------------
# subcommands


def cmd_poly(cfg: RunConfig) -> int:
    lam = pad(cfg.lam, cfg.n)
    poly = koornwinder_polynomial(lam, cfg.n, cfg.flavor)
    ok = verify_triangular(poly) and poly.coefficient(lam) == 1
    if cfg.fmt == "json":
        _emit(json.dumps(poly_report(poly), indent=2))
    else:
        _emit(f"partition {lam}, {cfg.n} variables, {len(poly.coefficients)} orbit sums")
        _emit(f"triangular: {verify_triangular(poly)}, monic: {poly.coefficient(lam) == 1}")
    return 0 if ok else 1


def cmd_dual(cfg: RunConfig) -> int:
    n = cfg.n
    if cfg.lam is not None and cfg.mu is not None:
        pairs = [(pad(cfg.lam, n), pad(cfg.mu, n))]
    else:
        small = [lam for lam in partitions_in_box(n, cfg.max_weight)
                 if sum(lam) <= cfg.max_weight]
        pairs = [(lam, mu) for lam in small for mu in small]
    failures = []
    for lam, mu in pairs:
        if not verify_duality(lam, mu, n):
            failures.append((lam, mu))
    if cfg.fmt == "json":
        _emit(json.dumps({"pairs": len(pairs), "failures": [list(map(list, f)) for f in failures]}))
    else:
        _emit(f"{len(pairs) - len(failures)}/{len(pairs)} dual pairs agree")
        for lam, mu in failures:
            _emit(f"FAIL {lam} vs {mu}")
    return 0 if not failures else 1


def cmd_eval(cfg: RunConfig) -> int:
    n = cfg.n
    lams = [lam for lam in partitions_in_box(n, cfg.max_weight)
            if sum(lam) <= cfg.max_weight]
    failures = []
    for lam in lams:
        poly = koornwinder_polynomial(lam, n)
        if principal_evaluation(poly, (0,) * n) != evaluation_formula(lam, n):
            failures.append(lam)
    if cfg.fmt == "json":
        _emit(json.dumps({"indices": len(lams), "failures": [list(f) for f in failures]}))
    else:
        _emit(f"{len(lams) - len(failures)}/{len(lams)} principal values match the product formula")
        for lam in failures:
            _emit(f"FAIL {lam}")
    return 0 if not failures else 1


def cmd_wheel(cfg: RunConfig) -> int:
    if cfg.collision_check:
        key = (cfg.k, cfg.r, cfg.n)
        if key not in COLLISION_PAIRS:
            raise UsageError(f"no documented collision at (k,r,n)={key}")
        a, b = COLLISION_PAIRS[key]
        setting = ResonanceSetting(cfg.k, cfg.r)
        collide = phi(principal_spectrum(a, cfg.n), setting) == \
            phi(principal_spectrum(b, cfg.n), setting)
        distinct = spectral_polynomial(a, cfg.n) != spectral_polynomial(b, cfg.n)
        if cfg.fmt == "json":
            _emit(json.dumps({"pair": [list(a), list(b)],
                              "spectra_collide": collide,
                              "generically_distinct": distinct}))
        else:
            _emit(f"{a} and {b}: specialized spectra equal: {collide}, "
                  f"distinct beforehand: {distinct}")
        return 0 if collide and distinct else 1
    setting = ResonanceSetting(cfg.k, cfg.r)
    cap = cfg.M if cfg.M is not None else 3
    lams = [lam for lam in partitions_in_box(cfg.n, cap)
            if is_admissible(lam, cfg.n, cfg.k, cfg.r)]
    if not lams:
        _emit(f"no admissible partitions with largest part <= {cap}: vacuously true")
        return 0
    results = []
    for lam in lams:
        _note(f"checking {lam}")
        results.append(verify_admissible_pipeline(lam, setting, cfg.n))
    if cfg.fmt == "json":
        _emit(json.dumps([{**rep, "partition": list(rep["partition"])}
                          for rep in results]))
    else:
        for rep in results:
            _emit(f"{rep['partition']}: no_pole={rep['no_pole']} wheel={rep['wheel']} "
                  f"Z={rep['z_evaluation']} count={rep['zeros_poles_count']} "
                  f"expected={rep['expected_z']} -> "
                  f"{'pass' if rep['all_pass'] else 'FAIL'}")
    return 0 if all(rep["all_pass"] for rep in results) else 1


def cmd_zcount(cfg: RunConfig) -> int:
    setting = ResonanceSetting(cfg.k, cfg.r)
    cap = cfg.M if cfg.M is not None else 5
    checked, failures = 0, []
    for lam in partitions_in_box(cfg.n, cap):
        z = Z_of(evaluation_formula(lam, cfg.n), setting)
        count = zeros_poles_count(lam, setting, cfg.n)
        ok = z == count
        if ok and is_admissible(lam, cfg.n, cfg.k, cfg.r):
            ok = z == cfg.n // (cfg.k + 1)
        checked += 1
        if not ok:
            failures.append((lam, z, count))
    if cfg.fmt == "json":
        _emit(json.dumps({"indices": checked,
                          "failures": [{"partition": list(l), "z": z, "count": c}
                                       for l, z, c in failures]}))
    else:
        _emit(f"{checked - len(failures)}/{checked} multiplicities consistent")
        for lam, z, c in failures:
            _emit(f"FAIL {lam}: Z={z}, count={c}")
    return 0 if not failures else 1


def cmd_dims(cfg: RunConfig) -> int:
    if comb(cfg.n + cfg.M, cfg.n) > cfg.max_basis:
        raise UsageError(
            f"basis size {comb(cfg.n + cfg.M, cfg.n)} exceeds cap {cfg.max_basis}")
    rep = compare_dimensions(cfg.k, cfg.r, cfg.n, cfg.M, seed=cfg.seed)
    payload = {
        "admissible": rep.admissible_count,
        "wheel_kernel": rep.wheel_kernel_dim,
        "dual_quotient": rep.dual_quotient_dim,
        "equal": rep.equal,
    }
    if cfg.fmt == "json":
        _emit(json.dumps(payload))
    else:
        for key, value in payload.items():
            _emit(f"{key}: {value}")
    return 0 if rep.equal else 1


def cmd_report(cfg: RunConfig) -> int:
    all_ok = True
    for name, fn in CRITERIA:
        _note(f"running {name}")
        ok, detail = fn()
        all_ok = all_ok and ok
        _emit(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
    return 0 if all_ok else 1


_HANDLERS = {
    "poly": cmd_poly,
    "dual": cmd_dual,
    "eval": cmd_eval,
    "wheel": cmd_wheel,
    "zcount": cmd_zcount,
    "dims": cmd_dims,
    "report": cmd_report,
}


# ---------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bcwheel",
        description="Exact constructions and certificates for symmetric "
                    "eigenfunctions at resonance.")
    subs = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, *, krn=False, needs_n=False, M=False,
            lam=False, mu=False, weight=None, fmt_default="text"):
        sp = subs.add_parser(name, help=help_text)
        if krn:
            sp.add_argument("--k", type=int, required=True)
            sp.add_argument("--r", type=int, required=True)
        if krn or needs_n:
            sp.add_argument("--n", type=int, required=True)
        if M:
            sp.add_argument("--M", type=int, default=None)
        if lam:
            sp.add_argument("--lambda", dest="lam", default=None)
        if mu:
            sp.add_argument("--mu", default=None)
        if weight is not None:
            sp.add_argument("--max-weight", type=int, default=weight)
        sp.add_argument("--format", dest="fmt", choices=("json", "text"),
                        default=fmt_default)
        sp.add_argument("--seed", type=int, default=None)
        sp.add_argument("--max-basis", type=int, default=512)
        return sp

    p = add("poly", "construct one eigenfunction and emit its expansion",
            needs_n=True, lam=True, fmt_default="json")
    p.add_argument("--flavor", choices=("plain", "dual"), default="plain")
    add("dual", "check the evaluation duality on a grid or one pair",
        needs_n=True, lam=True, mu=True, weight=2)
    add("eval", "check principal values against the product formula",
        needs_n=True, weight=3)
    w = add("wheel", "certify admissible indices at a resonance",
            krn=True, M=True)
    w.add_argument("--collision-check", action="store_true")
    add("zcount", "sweep curve multiplicities against gap counts",
        krn=True, M=True)
    add("dims", "compare the three dimension computations",
        krn=True, M=True, fmt_default="json")
    add("report", "run the full certification suite")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = RunConfig(
            subcommand=ns.command,
            k=getattr(ns, "k", None),
            r=getattr(ns, "r", None),
            n=getattr(ns, "n", None),
            M=getattr(ns, "M", None),
            lam=_parse_partition(ns.lam) if getattr(ns, "lam", None) else None,
            mu=_parse_partition(ns.mu) if getattr(ns, "mu", None) else None,
            fmt=ns.fmt,
            seed=ns.seed,
            max_weight=getattr(ns, "max_weight", 2),
            max_basis=ns.max_basis,
            collision_check=getattr(ns, "collision_check", False),
            flavor=getattr(ns, "flavor", "plain"),
        )
        if cfg.subcommand == "poly" and cfg.lam is None:
            raise UsageError("poly needs --lambda")
        if cfg.subcommand == "dims" and cfg.M is None:
            raise UsageError("dims needs --M")
        _validate(cfg)
        return _HANDLERS[cfg.subcommand](cfg)
    except UsageError as exc:
        _note(f"error: {exc}")
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
