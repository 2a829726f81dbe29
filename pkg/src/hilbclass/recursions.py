"""Recursions for Chern characters and Chern classes on Hilbert schemes.

All recursions step from ``n - 1`` to ``n`` points by commuting the relevant
multiplication operator past ``q_1(1)``:

* tautological Chern character (``ch_taut``) and its dual (``ch_taut_dual``)::

      ch(F^[n]) = 1/n q_1(1) ch(F^[n-1])
                  + 1/n! sum_{nu <= 2n} (+-1)^nu / nu! Q(nu, ch F, 1) q_1(1)^(n-1)|0>

* total Chern class of a tautological bundle of rank ``r``::

      c(F^[n]) = 1/n sum_{k, nu} binom(r - k, nu) Q(nu, c_k F, 1) c(F^[n-1])

* Chern character of the tangent bundle (``ch_tangent``), which also needs
  the tautological characters of the two Kuenneth halves of the diagonal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .fock import KEY_I, FockAlgebra, FockState, Gen, join
from .surface import I, Marker, MarkerIds, Mono, Profile, SurfaceClass

# weights of the Kuenneth terms of the tangent recursion, per split class:
# (dual side, direct side at even nu); the direct side flips sign with nu
_TANGENT_SPLITS = (
    (Mono.I, Fraction(-1), Fraction(-1)),
    (Mono.K, Fraction(-1, 2), Fraction(1, 2)),
    (Mono.K2, Fraction(-1, 6), Fraction(-1, 6)),
    (Mono.E, Fraction(1, 12), Fraction(1, 12)),
)


@dataclass(frozen=True)
class RecursionConfig:
    surface_profile: Profile = Profile.GENERIC
    max_weight: int = 6

    def __post_init__(self):
        object.__setattr__(self, "surface_profile", Profile(self.surface_profile))
        if self.max_weight < 0:
            raise ValueError("max_weight must be non-negative")


class Recursions:
    """Memoizing evaluator of the recursions for one surface profile.

    Instances own their caches and marker ids; use one instance per thread.
    """

    def __init__(self, profile: Profile | str = Profile.GENERIC):
        self.profile = Profile(profile)
        self.algebra = FockAlgebra(self.profile)
        self.ids = MarkerIds()
        self._ch: dict = {}
        self._chern: dict = {}
        self._tangent: dict = {0: FockState.zero()}
        self._halves = {mono: Marker(self.ids.fresh(), mono) for mono, _, _ in _TANGENT_SPLITS}

    def unit_power(self, n: int) -> FockState:
        """``q_1(1)^n |0>``."""
        if n == 0:
            return FockState.vacuum()
        return FockState._raw({(Gen((1,), Mono.I),) * n: Fraction(1)})

    # -- tautological Chern character

    def ch_taut(self, c: SurfaceClass, n: int) -> FockState:
        """``ch(F^[n])`` for ``ch(F) = c``.

        Marker-free input gives a normal form; a marked input (a Kuenneth
        half) gives a state that still carries the marker.
        """
        return self._ch_class(c, n, dual=False)

    def ch_taut_dual(self, c: SurfaceClass, n: int) -> FockState:
        return self._ch_class(c, n, dual=True)

    def _ch_class(self, c: SurfaceClass, n: int, dual: bool) -> FockState:
        total = FockState.zero()
        for key, coeff in c.items():
            total = total + coeff * self._ch_key(key, n, dual)
        return total if c.has_markers() else join(total, self.profile)

    def _ch_key(self, key, n: int, dual: bool) -> FockState:
        if n == 0:
            return FockState.zero()
        memo = (key, n, dual)
        if memo not in self._ch:
            prev = self._ch_key(key, n - 1, dual)
            weights = [Fraction((-1) ** nu if dual else 1, factorial(nu)) for nu in range(2 * n + 1)]
            fresh = self.algebra.derived_sum(weights, key, self.unit_power(n - 1))
            self._ch[memo] = (
                Fraction(1, n) * self.algebra.create(KEY_I, (1,), prev)
                + Fraction(1, factorial(n)) * fresh
            )
        return self._ch[memo]

    # -- total Chern class

    def chern_taut(self, r: int, c1: SurfaceClass, c2: SurfaceClass, n: int) -> FockState:
        """``c(F^[n])`` for a rank-``r`` bundle with Chern classes ``c1``, ``c2``."""
        if r < 1:
            raise ValueError("rank must be positive")
        if c1.has_markers() or c2.has_markers():
            raise ValueError("Chern classes must be marker-free")
        memo = (r, c1, c2, n)
        if memo in self._chern:
            return self._chern[memo]
        if n == 0:
            result = FockState.vacuum()
        else:
            prev = self.chern_taut(r, c1, c2, n - 1)
            result = FockState.zero()
            for k, ck in enumerate((I, c1, c2)):
                if k > r or ck.is_zero():
                    continue
                weights = [comb(r - k, nu) for nu in range(r - k + 1)]
                result = result + self.algebra.derived_sum(weights, ck, prev)
            result = Fraction(1, n) * result
        self._chern[memo] = result
        return result

    # -- tangent bundle

    def ch_tangent(self, n: int) -> FockState:
        """``ch(T S^[n])`` in normal form."""
        if n not in self._tangent:
            prev = self.ch_tangent(n - 1)
            base = self.unit_power(n - 1)
            top = 2 * n + 1
            direct = self.algebra.derived_sum(
                [Fraction(1, factorial(nu)) for nu in range(top)], I, base
            )
            signed = SurfaceClass({(Mono.I, ()): 1, (Mono.K, ()): -1, (Mono.K2, ()): Fraction(1, 2)})
            direct += self.algebra.derived_sum(
                [Fraction((-1) ** nu, factorial(nu)) for nu in range(top)], signed, base
            )
            split = FockState.zero()
            for mono, w_dual, w_direct in _TANGENT_SPLITS:
                half = (Mono.I, (self._halves[mono],))
                if self.profile.kills(mono):
                    continue
                split += self.algebra.derived_sum(
                    [w_dual / factorial(nu) for nu in range(top)],
                    half,
                    self._ch_key(half, n - 1, dual=True),
                )
                split += self.algebra.derived_sum(
                    [w_direct * (-1) ** nu / factorial(nu) for nu in range(top)],
                    half,
                    self._ch_key(half, n - 1, dual=False),
                )
            split = factorial(n - 1) * join(split, self.profile)
            euler = self.algebra.create((Mono.E, ()), (1,), base)
            self._tangent[n] = (
                Fraction(1, n) * self.algebra.create(KEY_I, (1,), prev)
                + Fraction(1, factorial(n)) * (direct + split - euler)
            )
        return self._tangent[n]


_shared: dict[Profile, Recursions] = {}


def engine(profile: Profile | str = Profile.GENERIC) -> Recursions:
    """A process-wide engine per profile, for interactive use."""
    profile = Profile(profile)
    if profile not in _shared:
        _shared[profile] = Recursions(profile)
    return _shared[profile]


def ch_taut(c: SurfaceClass, n: int, profile: Profile | str = Profile.GENERIC) -> FockState:
    return engine(profile).ch_taut(c, n)


def ch_taut_dual(c: SurfaceClass, n: int, profile: Profile | str = Profile.GENERIC) -> FockState:
    return engine(profile).ch_taut_dual(c, n)


def chern_taut(
    r: int, c1: SurfaceClass, c2: SurfaceClass, n: int, profile: Profile | str = Profile.GENERIC
) -> FockState:
    return engine(profile).chern_taut(r, c1, c2, n)


def ch_tangent(n: int, profile: Profile | str = Profile.GENERIC) -> FockState:
    return engine(profile).ch_tangent(n)
