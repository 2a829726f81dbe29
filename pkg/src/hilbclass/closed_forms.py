"""Exact one-variable power series, psi-series of multiplicative classes, and
closed-form coefficient oracles."""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial
from typing import Callable, Iterable, Sequence

from .partitions import Partition


class NotInvertible(ValueError):
    """The series has no compositional inverse (f(0) != 0 or f'(0) == 0)."""


class PowerSeries1:
    """``sum_k coeffs[k] x^k`` modulo ``x^order``, with exact rational coefficients."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable = (), order: int = 16):
        if order < 1:
            raise ValueError("order must be positive")
        cs = [Fraction(c) for c in coeffs][:order]
        self.coeffs = cs + [Fraction(0)] * (order - len(cs))
        self.order = order

    @classmethod
    def x(cls, order: int) -> PowerSeries1:
        return cls([0, 1], order)

    @classmethod
    def const(cls, c, order: int) -> PowerSeries1:
        return cls([c], order)

    @classmethod
    def from_function(cls, f: Callable[[int], object], order: int) -> PowerSeries1:
        return cls([f(k) for k in range(order)], order)

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < self.order else Fraction(0)

    def __len__(self) -> int:
        return self.order

    def __eq__(self, other) -> bool:
        if not isinstance(other, PowerSeries1):
            return NotImplemented
        n = min(self.order, other.order)
        return self.coeffs[:n] == other.coeffs[:n]

    __hash__ = None

    def _lift(self, other) -> PowerSeries1:
        if isinstance(other, PowerSeries1):
            return other
        return PowerSeries1.const(other, self.order)

    def __add__(self, other) -> PowerSeries1:
        other = self._lift(other)
        n = min(self.order, other.order)
        return PowerSeries1([a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n])], n)

    __radd__ = __add__

    def __neg__(self) -> PowerSeries1:
        return PowerSeries1([-a for a in self.coeffs], self.order)

    def __sub__(self, other) -> PowerSeries1:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> PowerSeries1:
        return self._lift(other) - self

    def __mul__(self, other) -> PowerSeries1:
        if not isinstance(other, PowerSeries1):
            c = Fraction(other)
            return PowerSeries1([a * c for a in self.coeffs], self.order)
        n = min(self.order, other.order)
        out = [Fraction(0)] * n
        for i, a in enumerate(self.coeffs[:n]):
            if a:
                for j in range(n - i):
                    out[i + j] += a * other.coeffs[j]
        return PowerSeries1(out, n)

    __rmul__ = __mul__

    def inverse(self) -> PowerSeries1:
        """Multiplicative inverse; needs a nonzero constant term."""
        if not self.coeffs[0]:
            raise ZeroDivisionError("series with zero constant term is not a unit")
        out = [1 / self.coeffs[0]]
        for k in range(1, self.order):
            s = sum(self.coeffs[j] * out[k - j] for j in range(1, k + 1))
            out.append(-s / self.coeffs[0])
        return PowerSeries1(out, self.order)

    def __truediv__(self, other) -> PowerSeries1:
        if isinstance(other, PowerSeries1):
            return self * other.inverse()
        return self * (1 / Fraction(other))

    def __rtruediv__(self, other) -> PowerSeries1:
        return self._lift(other) * self.inverse()

    def __pow__(self, k: int) -> PowerSeries1:
        if k < 0:
            return self.inverse() ** (-k)
        result, base = PowerSeries1.const(1, self.order), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def compose(self, g: PowerSeries1) -> PowerSeries1:
        """``self(g(x))``; needs ``g(0) = 0``."""
        if g[0]:
            raise ValueError("inner series must have zero constant term")
        n = min(self.order, g.order)
        out = PowerSeries1.const(self.coeffs[n - 1], n)
        for c in reversed(self.coeffs[: n - 1]):
            out = out * g + c
        return out

    def negate_variable(self) -> PowerSeries1:
        """``self(-x)``."""
        return PowerSeries1([c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs)], self.order)

    def deriv(self) -> PowerSeries1:
        return PowerSeries1([k * self.coeffs[k] for k in range(1, self.order)], self.order - 1)

    def integ(self) -> PowerSeries1:
        """Antiderivative with zero constant term, known to one more order."""
        return PowerSeries1([0] + [c / (k + 1) for k, c in enumerate(self.coeffs)], self.order + 1)

    def exp(self) -> PowerSeries1:
        if self[0]:
            raise ValueError("exp needs a zero constant term")
        out = [Fraction(1)]
        d = self.deriv()
        # f' = d * f, solved term by term
        for k in range(1, self.order):
            out.append(sum(d[j] * out[k - 1 - j] for j in range(k)) / k)
        return PowerSeries1(out, self.order)

    def log(self) -> PowerSeries1:
        if self[0] != 1:
            raise ValueError("log needs constant term 1")
        return (self.deriv() * self.inverse()).integ()

    def power(self, a) -> PowerSeries1:
        """``self ** a`` for rational ``a``, with constant term 1."""
        return (self.log() * Fraction(a)).exp()

    def sqrt(self) -> PowerSeries1:
        return self.power(Fraction(1, 2))

    def __repr__(self) -> str:
        return f"PowerSeries1({[str(c) for c in self.coeffs]}, order={self.order})"


def ps_reverse(f: PowerSeries1) -> PowerSeries1:
    """Compositional inverse ``g`` with ``f(g(t)) = t``, by Lagrange inversion:
    ``[t^k] g = (1/k) [x^(k-1)] (x / f(x))^k``."""
    if f[0] != 0 or f[1] == 0:
        raise NotInvertible("reversion needs f(0) = 0 and f'(0) != 0")
    n = f.order
    h = PowerSeries1(f.coeffs[1:], n - 1).inverse()
    out = [Fraction(0)]
    power = PowerSeries1.const(1, n - 1)
    for k in range(1, n):
        power = power * h
        out.append(power[k - 1] / k)
    return PowerSeries1(out, n)


def _truncate(phi: PowerSeries1, order: int) -> PowerSeries1:
    if phi.order < order:
        raise ValueError(f"phi is known only to order {phi.order}; need {order}")
    return PowerSeries1(phi.coeffs[:order], order)


def _psi_from(u_of_x: PowerSeries1, dpsi_of_x: PowerSeries1, kmax: int) -> list[Fraction]:
    x_of_u = ps_reverse(u_of_x)
    dpsi = dpsi_of_x.compose(x_of_u)
    psi = dpsi.integ()
    return [psi[k] for k in range(1, kmax + 1)]


def psi_tangent(phi: PowerSeries1, kmax: int) -> list[Fraction]:
    """Coefficients ``a_1..a_kmax`` of ``psi`` with ``psi'(x / (phi(x) phi(-x))) = phi(x) phi(-x)``."""
    if phi[0] != 1:
        raise ValueError("phi must have constant term 1")
    phi = _truncate(phi, kmax + 2)
    sym = phi * phi.negate_variable()
    return _psi_from(PowerSeries1.x(sym.order) / sym, sym, kmax)


def psi_taut(phi: PowerSeries1, kmax: int) -> list[Fraction]:
    """Coefficients of ``psi`` with ``psi'(x / phi(-x)) = phi(-x)``."""
    if phi[0] != 1:
        raise ValueError("phi must have constant term 1")
    phi = _truncate(phi, kmax + 2)
    bar = phi.negate_variable()
    return _psi_from(PowerSeries1.x(bar.order) / bar, bar, kmax)


# -- standard multiplicative classes


def phi_chern(rank: int = 1, order: int = 32) -> PowerSeries1:
    """Total Chern class: ``(1 + x)^rank``."""
    return PowerSeries1([1, 1], order) ** rank


def phi_segre(order: int = 32) -> PowerSeries1:
    """Total Segre class: ``1 / (1 + x)``."""
    return PowerSeries1([1, 1], order).inverse()


def phi_sqrt_todd(order: int = 32) -> PowerSeries1:
    """``sqrt(x / (1 - exp(-x)))``."""
    # (1 - exp(-x)) / x = sum (-1)^k x^k / (k+1)!
    q = PowerSeries1.from_function(lambda k: Fraction((-1) ** k, factorial(k + 1)), order)
    return q.inverse().sqrt()


PHIS = {"chern": phi_chern, "segre": phi_segre, "sqrt-todd": phi_sqrt_todd}


# -- closed-form oracles


def catalan(k: int) -> int:
    return comb(2 * k, k) // (k + 1)


def catalan_coeff(n: int) -> Fraction:
    """Tangent psi-series of the total Chern class at index ``n``."""
    if n % 2 == 0:
        return Fraction(0)
    k = (n - 1) // 2
    return Fraction((-1) ** k * catalan(k), 2 * k + 1)


def segre_coeff(n: int) -> Fraction:
    if n % 2 == 0:
        return Fraction(0)
    k = (n - 1) // 2
    return Fraction(comb(3 * k, k), (2 * k + 1) ** 2)


def sqrt_todd_coeff(n: int) -> Fraction:
    if n % 2 == 0:
        return Fraction(0)
    k = (n - 1) // 2
    return Fraction(1, 4**k * (2 * k + 1) * factorial(2 * k + 1))


def lqw_alpha(lam: Sequence[int]) -> Fraction:
    lam = Partition(lam)
    return Fraction((-1) ** (lam.weight - 1), lam.multfact * factorial(lam.weight))


def lqw_beta(lam: Sequence[int]) -> Fraction:
    lam = Partition(lam)
    return (
        Fraction((-1) ** lam.weight, lam.multfact * factorial(lam.weight))
        * Fraction(lam.weight + lam.norm2 - 2, 24)
    )


def trivial_chern(r: int, k: int) -> Fraction:
    """Coefficient of ``q_k(1)`` inside the exponential for the trivial rank-``r`` bundle."""
    return Fraction((-1) ** (k - 1) * comb(r * k, k - 1), k * k)


def conjecture_k1(r: int, k: int) -> Fraction:
    """CONJECTURE: observed value at the partition ``(k, 1)``, ``k >= 2``; not a theorem."""
    return Fraction((-1) ** k * (r - 1), k + 1) * comb(r * k, k)


ORACLES: dict[str, Callable[..., Fraction]] = {
    "lqw_alpha": lqw_alpha,
    "lqw_beta": lqw_beta,
    "trivial_chern": trivial_chern,
    "conjecture_k1": conjecture_k1,
}
CONJECTURES = frozenset({"conjecture_k1"})


def oracle_coeff(name: str, *args) -> Fraction:
    try:
        fn = ORACLES[name]
    except KeyError:
        raise ValueError(f"unknown oracle {name!r}; expected one of {sorted(ORACLES)}") from None
    if name.startswith("lqw"):
        if len(args) != 1:
            raise ValueError(f"{name} takes one partition")
        lam = args[0]
        if not lam or any(int(p) < 1 for p in lam):
            raise ValueError(f"{name} needs a nonempty partition")
    else:
        if len(args) != 2 or any(int(a) < 1 for a in args):
            raise ValueError(f"{name} takes two positive integers (r, k)")
        if name == "conjecture_k1" and args[1] < 2:
            raise ValueError("conjecture_k1 needs k >= 2")
    return fn(*args)
