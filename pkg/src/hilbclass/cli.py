"""Command-line interface: compute coefficient tables, psi-series, and verify goldens."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable, Sequence

from . import closed_forms as cf
from .partitions import Partition, partitions_of
from .recursions import Recursions
from .series import (
    CoefficientTable,
    NonlinearResidual,
    NotGroupLike,
    WeightSeries,
    divide_by_unit,
    extract_exponential,
    extract_linear,
)
from .surface import C, D, I, ZERO, Mono, Profile, UnpairedMarker
from .tables import diff, load_golden, render, render_rational

EXIT_OK, EXIT_MISMATCH, EXIT_ENGINE = 0, 1, 2
DEFAULT_WEIGHT_CAP = 6
DEFAULT_RANK_CAP = 5

ENGINE_ERRORS = (UnpairedMarker, NonlinearResidual, NotGroupLike)


# -- table computations shared by the commands and by verification


def taut_ch_table(max_weight: int, surface: Profile | str = Profile.GENERIC, dual: bool = False) -> CoefficientTable:
    """Chern character of ``O^[n]`` (or its dual) relative to ``|1>``."""
    eng = Recursions(surface)
    f = eng.ch_taut_dual if dual else eng.ch_taut
    s = WeightSeries.from_function(lambda n: f(I, n), max_weight)
    return extract_linear(
        divide_by_unit(s), series="taut-ch-dual" if dual else "taut-ch", surface=Profile(surface).value, rank=1
    )


def taut_chern_table(
    rank: int, max_weight: int, classes: str = "generic", surface: Profile | str | None = None
) -> CoefficientTable:
    """Total Chern class of a rank-``rank`` tautological bundle, exponential form.

    ``classes="generic"`` uses Chern classes ``c1, c2``; ``"trivial"`` uses
    the trivial bundle and defaults to the plane profile.
    """
    if classes not in ("generic", "trivial"):
        raise ValueError(f"unknown classes {classes!r}")
    if surface is None:
        surface = Profile.PLANE if classes == "trivial" else Profile.GENERIC
    surface = Profile(surface)
    eng = Recursions(surface)
    if classes == "trivial":
        c1, c2 = ZERO, ZERO
    else:
        c1, c2 = C, (D if rank >= 2 else ZERO)
    s = WeightSeries.from_function(lambda n: eng.chern_taut(rank, c1, c2, n), max_weight)
    return extract_exponential(s, series="taut-chern", surface=surface.value, rank=rank)


def tangent_ch_table(max_weight: int, surface: Profile | str = Profile.GENERIC) -> CoefficientTable:
    eng = Recursions(surface)
    s = WeightSeries.from_function(eng.ch_tangent, max_weight)
    return extract_linear(divide_by_unit(s), series="tangent-ch", surface=Profile(surface).value)


def psi_coefficients(phi: str, relation: str, kmax: int, rank: int = 1) -> list[Fraction]:
    order = kmax + 2
    if phi == "chern":
        series = cf.phi_chern(rank, order)
    elif phi in cf.PHIS:
        series = cf.PHIS[phi](order)
    else:
        raise ValueError(f"unknown phi {phi!r}")
    if relation == "tangent":
        return cf.psi_tangent(series, kmax)
    if relation == "taut":
        return cf.psi_taut(series, kmax)
    raise ValueError(f"unknown relation {relation!r}")


# -- verification suites


@dataclass
class SuiteResult:
    name: str
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def _golden_suite(name: str, compute: Callable[[int], CoefficientTable]) -> SuiteResult:
    golden = load_golden(name)
    table = compute(golden.max_weight)
    return SuiteResult(f"golden:{name}", [str(m) for m in diff(table, golden)])


def _closed_form_suite(name: str, pairs) -> SuiteResult:
    res = SuiteResult(name)
    for label, expected, actual in pairs:
        if expected != actual:
            res.failures.append(
                f"{label}: expected {render_rational(expected)}, got {render_rational(actual)}"
            )
    return res


def _lqw_pairs(table: CoefficientTable, max_weight: int):
    for n in range(1, max_weight + 1):
        for lam in partitions_of(n):
            yield f"alpha {lam}", cf.lqw_alpha(lam), table.get(lam, Mono.I)
            yield f"beta {lam}", cf.lqw_beta(lam), table.get(lam, Mono.E)


def _lehn_pairs(table: CoefficientTable, max_weight: int):
    for n in range(1, max_weight + 1):
        for lam in partitions_of(n):
            for mono in Mono:
                single = len(lam) == 1 and mono in (Mono.I, Mono.C)
                expected = Fraction((-1) ** (n - 1), n) if single else Fraction(0)
                yield f"{lam} {mono.label}", expected, table.get(lam, mono)


def _psi_pairs(kmax: int = 15, taut_ranks=range(1, 6), taut_kmax: int = 10):
    oracles = (("chern", cf.catalan_coeff), ("segre", cf.segre_coeff), ("sqrt-todd", cf.sqrt_todd_coeff))
    for phi, oracle in oracles:
        got = psi_coefficients(phi, "tangent", kmax)
        for k in range(1, kmax + 1):
            yield f"tangent {phi} k={k}", oracle(k), got[k - 1]
    for r in taut_ranks:
        got = psi_coefficients("chern", "taut", taut_kmax, rank=r)
        for k in range(1, taut_kmax + 1):
            yield f"taut chern r={r} k={k}", cf.trivial_chern(r, k), got[k - 1]


def _tangent_alpha_pairs(table: CoefficientTable, max_weight: int):
    for k in range(1, max_weight + 1):
        expected = Fraction(2, factorial(k)) if k % 2 else Fraction(0)
        yield f"alpha ({k})", expected, table.get((k,), Mono.I)


def _symplectic_pairs(table: CoefficientTable, max_weight: int):
    for n in range(1, max_weight + 1):
        for lam in partitions_of(n):
            if (lam.weight + lam.length) % 2:
                for mono in (Mono.I, Mono.E):
                    yield f"{lam} {mono.label}", Fraction(0), table.get(lam, mono)


def verify(surface: Profile | str = Profile.GENERIC, out=None) -> int:
    surface = Profile(surface)
    out = out or sys.stdout
    results: list[SuiteResult] = []
    taut = taut_ch_table(4)
    results.append(_golden_suite("taut_ch_canonical", lambda w: taut))
    results.append(_closed_form_suite("closed:lqw", _lqw_pairs(taut, 4)))
    results.append(_golden_suite("chern_rank2", lambda w: taut_chern_table(2, w)))
    for r in (2, 3, 4, 5):
        results.append(
            _golden_suite(f"chern_trivial_rank{r}", lambda w, r=r: taut_chern_table(r, w, "trivial"))
        )
    results.append(_closed_form_suite("closed:lehn-rank1", _lehn_pairs(taut_chern_table(1, 5), 5)))
    tangent = tangent_ch_table(3)
    results.append(_golden_suite("tangent_ch", lambda w: tangent))
    results.append(_closed_form_suite("closed:tangent-alpha", _tangent_alpha_pairs(tangent, 3)))
    results.append(_closed_form_suite("closed:psi", _psi_pairs()))
    if surface is Profile.K3_ABELIAN:
        sym = tangent_ch_table(3, Profile.K3_ABELIAN)
        results.append(_closed_form_suite("symplectic-vanishing", _symplectic_pairs(sym, 3)))
    for res in results:
        status = "PASS" if res.ok else "FAIL"
        print(f"{status} {res.name}" + ("" if res.ok else f" ({len(res.failures)} mismatches)"), file=out)
        for line in res.failures:
            print(f"  {line}", file=out)
    return EXIT_OK if all(r.ok for r in results) else EXIT_MISMATCH


# -- argument handling


def _psi_render(coeffs: Sequence[Fraction], fmt: str, meta: dict) -> str:
    if fmt == "json":
        doc = dict(meta, coefficients=[render_rational(c) for c in coeffs])
        return json.dumps(doc, indent=2) + "\n"
    if fmt == "csv":
        return "k;coefficient\n" + "".join(f"{k};{render_rational(c)}\n" for k, c in enumerate(coeffs, 1))
    lines = ["| k | coefficient |", "|---|---|"]
    lines += [f"| {k} | {render_rational(c)} |" for k, c in enumerate(coeffs, 1)]
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--surface", choices=[p.value for p in Profile], default=None)
    common.add_argument("--max-weight", type=int, default=None)
    common.add_argument("--weight-cap", type=int, default=DEFAULT_WEIGHT_CAP,
                        help="refuse --max-weight above this (default %(default)s)")
    common.add_argument("--format", choices=["json", "csv", "md"], default="json")
    common.add_argument("--out", default=None, help="write to this file instead of stdout")

    parser = argparse.ArgumentParser(prog="hilbclass", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("taut-ch", parents=[common], help="Chern character of O^[n]")
    p.add_argument("--dual", action="store_true")
    p = sub.add_parser("taut-chern", parents=[common], help="total Chern class of a tautological bundle")
    p.add_argument("--rank", type=int, default=2)
    p.add_argument("--rank-cap", type=int, default=DEFAULT_RANK_CAP)
    p.add_argument("--classes", choices=["generic", "trivial"], default="generic")
    sub.add_parser("tangent-ch", parents=[common], help="Chern character of the tangent bundle")
    p = sub.add_parser("psi", parents=[common], help="psi-series of a multiplicative class")
    p.add_argument("--phi", choices=sorted(cf.PHIS), default="chern")
    p.add_argument("--relation", choices=["tangent", "taut"], default="tangent")
    p.add_argument("--rank", type=int, default=1)
    p.add_argument("--kmax", type=int, default=10)
    p = sub.add_parser("verify", help="recompute all tables and compare with the shipped goldens")
    p.add_argument("--surface", choices=[p.value for p in Profile], default="generic")
    return parser


_DEFAULT_WEIGHTS = {"taut-ch": 4, "taut-chern": 4, "tangent-ch": 3}


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            return verify(args.surface)
        if args.command == "psi":
            if args.kmax < 1:
                parser.error("--kmax must be positive")
            coeffs = psi_coefficients(args.phi, args.relation, args.kmax, args.rank)
            meta = {"phi": args.phi, "relation": args.relation, "rank": args.rank}
            text = _psi_render(coeffs, args.format, meta)
        else:
            weight = args.max_weight if args.max_weight is not None else _DEFAULT_WEIGHTS[args.command]
            if weight < 0 or weight > args.weight_cap:
                parser.error(f"--max-weight must lie in 0..{args.weight_cap}")
            if args.command == "taut-ch":
                table = taut_ch_table(weight, args.surface or "generic", args.dual)
            elif args.command == "taut-chern":
                if not 1 <= args.rank <= args.rank_cap:
                    parser.error(f"--rank must lie in 1..{args.rank_cap}")
                table = taut_chern_table(args.rank, weight, args.classes, args.surface)
            else:
                table = tangent_ch_table(weight, args.surface or "generic")
            text = render(table, args.format)
    except ENGINE_ERRORS as exc:
        print(f"engine error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ENGINE
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
