"""Weight-graded series of Fock states and extraction of universal coefficients."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable, Iterator, Mapping

from .fock import FockState, Gen, state_product
from .partitions import Partition, table_order
from .surface import Mono


class NotGroupLike(ValueError):
    """The weight-0 term of a series is not the vacuum with coefficient 1."""


class NonlinearResidual(ValueError):
    """A series expected to be linear in the generators is not."""

    def __init__(self, weight: int, monomial: str):
        super().__init__(f"nonlinear residual at weight {weight}: {monomial}")
        self.weight = weight
        self.monomial = monomial


class WeightSeries:
    """``sum_n terms[n]`` with ``terms[n]`` of conformal weight ``n``, kept
    up to ``max_weight``."""

    __slots__ = ("terms", "max_weight")

    def __init__(self, terms: Mapping[int, FockState], max_weight: int):
        self.max_weight = max_weight
        self.terms = {
            n: s for n, s in terms.items() if n <= max_weight and not s.is_zero()
        }

    @classmethod
    def from_function(cls, f: Callable[[int], FockState], max_weight: int) -> WeightSeries:
        return cls({n: f(n) for n in range(max_weight + 1)}, max_weight)

    def __getitem__(self, n: int) -> FockState:
        return self.terms.get(n, FockState.zero())

    def __iter__(self) -> Iterator[int]:
        return iter(range(self.max_weight + 1))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, WeightSeries)
            and self.max_weight == other.max_weight
            and self.terms == other.terms
        )

    __hash__ = None

    def __add__(self, other: WeightSeries) -> WeightSeries:
        top = min(self.max_weight, other.max_weight)
        return WeightSeries({n: self[n] + other[n] for n in range(top + 1)}, top)

    def __sub__(self, other: WeightSeries) -> WeightSeries:
        return self + other.scale(-1)

    def scale(self, c) -> WeightSeries:
        return WeightSeries({n: c * s for n, s in self.terms.items()}, self.max_weight)

    def __mul__(self, other: WeightSeries) -> WeightSeries:
        top = min(self.max_weight, other.max_weight)
        out: dict[int, FockState] = {}
        for a, sa in self.terms.items():
            for b, sb in other.terms.items():
                if a + b <= top:
                    out[a + b] = out.get(a + b, FockState.zero()) + state_product(sa, sb)
        return WeightSeries(out, top)

    def is_group_like(self) -> bool:
        return self[0] == FockState.vacuum() and all(
            self.terms[n].weights() <= {n} for n in self.terms
        )

    def check_homogeneous(self) -> None:
        for n, s in self.terms.items():
            if s.weights() - {n}:
                raise ValueError(f"term {n} has weights {sorted(s.weights())}")

    def __repr__(self) -> str:
        body = ", ".join(f"{n}: {s}" for n, s in sorted(self.terms.items()))
        return f"WeightSeries({{{body}}}, max_weight={self.max_weight})"


def vacuum_series(max_weight: int) -> WeightSeries:
    return WeightSeries({0: FockState.vacuum()}, max_weight)


def _q1_power(n: int, sign: int = 1) -> FockState:
    gens = (Gen((1,), Mono.I),) * n
    return FockState._raw({gens: Fraction(sign**n, factorial(n))})


def unit_series(max_weight: int) -> WeightSeries:
    """``|1> = exp(q_1(1))|0>``."""
    return WeightSeries({n: _q1_power(n) for n in range(max_weight + 1)}, max_weight)


def inverse_unit_series(max_weight: int) -> WeightSeries:
    return WeightSeries({n: _q1_power(n, -1) for n in range(max_weight + 1)}, max_weight)


def divide_by_unit(s: WeightSeries) -> WeightSeries:
    return s * inverse_unit_series(s.max_weight)


def multiply_by_unit(s: WeightSeries) -> WeightSeries:
    return s * unit_series(s.max_weight)


def series_exp(x: WeightSeries) -> WeightSeries:
    if not x[0].is_zero():
        raise ValueError("exponential needs a series without weight-0 term")
    result = vacuum_series(x.max_weight)
    power = vacuum_series(x.max_weight)
    for k in range(1, x.max_weight + 1):
        power = power * x
        result = result + power.scale(Fraction(1, factorial(k)))
    return result


def series_log(s: WeightSeries) -> WeightSeries:
    """Logarithm of a group-like series."""
    if not s.is_group_like():
        raise NotGroupLike("series_log needs weight-0 term equal to the vacuum")
    x = s - vacuum_series(s.max_weight)
    result = WeightSeries({}, s.max_weight)
    power = vacuum_series(s.max_weight)
    for k in range(1, s.max_weight + 1):
        power = power * x
        result = result + power.scale(Fraction((-1) ** (k + 1), k))
    return result


# ---------------------------------------------------------------- tables


@dataclass
class CoefficientTable:
    """Universal coefficients keyed by (partition, class monomial)."""

    entries: dict[tuple[Partition, Mono], Fraction]
    series_kind: str = "linear"
    series: str = ""
    surface: str = "generic"
    rank: int | None = None
    max_weight: int | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.entries = {
            (Partition(lam), Mono(m)): Fraction(c) for (lam, m), c in self.entries.items() if c
        }

    def get(self, lam, mono: Mono | str) -> Fraction:
        if isinstance(mono, str):
            mono = Mono.from_label(mono)
        return self.entries.get((Partition(lam), mono), Fraction(0))

    def __getitem__(self, key) -> Fraction:
        return self.get(*key)

    def items(self) -> list[tuple[tuple[Partition, Mono], Fraction]]:
        return sorted(self.entries.items(), key=lambda kv: (table_order(kv[0][0]), kv[0][1]))

    def partitions(self) -> list[Partition]:
        return sorted({lam for lam, _ in self.entries}, key=table_order)

    def row(self, lam) -> dict[Mono, Fraction]:
        lam = Partition(lam)
        return {m: c for (p, m), c in self.items() if p == lam}

    def restrict(self, monos) -> CoefficientTable:
        keep = set(monos)
        return CoefficientTable(
            {k: v for k, v in self.entries.items() if k[1] in keep},
            self.series_kind,
            self.series,
            self.surface,
            self.rank,
            self.max_weight,
            dict(self.meta),
        )


def extract_linear(s: WeightSeries, **meta) -> CoefficientTable:
    """Read off ``sum_lambda sum_u c(lambda, u) q_lambda(u)|0>``."""
    entries: dict = {}
    for n, state in sorted(s.terms.items()):
        for mono, c in state.items():
            if len(mono) != 1 or mono[0].markers:
                rendered = " ".join(g.render() for g in mono) or "|0>"
                raise NonlinearResidual(n, f"({c}) {rendered}")
            g = mono[0]
            entries[(Partition(g.partition), g.mono)] = c
    meta.setdefault("max_weight", s.max_weight)
    return CoefficientTable(entries, series_kind=meta.pop("series_kind", "linear"), **meta)


def extract_exponential(s: WeightSeries, **meta) -> CoefficientTable:
    return extract_linear(series_log(s), series_kind="exponential", **meta)
