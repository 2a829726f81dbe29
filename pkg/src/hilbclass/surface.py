"""Rational cohomology of a generic surface, truncated above degree 4.

Classes are rational combinations of eight basis monomials in the canonical
class ``K``, the Euler class ``e`` and the Chern classes ``c1``, ``c2`` of a
test bundle.  A class may also carry Kuenneth markers: a marker ``(tau, u)``
stands for one half of the diagonal push-forward of ``u``.  The two halves
of a split always share one fresh id ``tau``; when both land in the same
class they collapse to ``e * u``.
"""

from __future__ import annotations

import itertools
import threading
from enum import Enum, IntEnum
from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple, Union

Scalar = Union[int, Fraction]


class UnpairedMarker(ValueError):
    """A Kuenneth marker id occurs an odd number of times, or survives."""


class Mono(IntEnum):
    """Basis monomials, in table column order."""

    I = 0
    C = 1
    K = 2
    D = 3
    C2 = 4
    CK = 5
    K2 = 6
    E = 7

    @property
    def label(self) -> str:
        return _LABELS[self]

    @property
    def degree(self) -> int:
        """Real cohomological degree (0, 2 or 4)."""
        return 2 * sum(w * x for w, x in zip((1, 1, 2, 2), _EXPONENTS[self]))

    @classmethod
    def from_label(cls, label: str) -> Mono:
        try:
            return _BY_LABEL[label]
        except KeyError:
            raise ValueError(f"unknown class monomial {label!r}") from None


# exponents of (c1, K, c2, e)
_EXPONENTS = {
    Mono.I: (0, 0, 0, 0),
    Mono.C: (1, 0, 0, 0),
    Mono.K: (0, 1, 0, 0),
    Mono.D: (0, 0, 1, 0),
    Mono.C2: (2, 0, 0, 0),
    Mono.CK: (1, 1, 0, 0),
    Mono.K2: (0, 2, 0, 0),
    Mono.E: (0, 0, 0, 1),
}
_LABELS = {
    Mono.I: "1",
    Mono.C: "c1",
    Mono.K: "K",
    Mono.D: "c2",
    Mono.C2: "c1^2",
    Mono.CK: "c1K",
    Mono.K2: "K^2",
    Mono.E: "e",
}
_BY_LABEL = {v: k for k, v in _LABELS.items()}
_SCRIPT_NAMES = {
    Mono.I: "I",
    Mono.C: "C",
    Mono.K: "K",
    Mono.D: "D",
    Mono.C2: "C . C",
    Mono.CK: "C . K",
    Mono.K2: "K . K",
    Mono.E: "e",
}


def _build_products() -> dict[tuple[Mono, Mono], Mono | None]:
    by_exp = {v: k for k, v in _EXPONENTS.items()}
    table = {}
    for a in Mono:
        for b in Mono:
            exp = tuple(x + y for x, y in zip(_EXPONENTS[a], _EXPONENTS[b]))
            # anything above degree 4 is zero; every survivor is a basis monomial
            table[a, b] = by_exp.get(exp)
    return table


PRODUCT = _build_products()


class Profile(Enum):
    """Surface specializations: K3/abelian kills ``K``, plane kills all but 1."""

    GENERIC = "generic"
    K3_ABELIAN = "k3_abelian"
    PLANE = "plane"

    def kills(self, mono: Mono) -> bool:
        return mono in _KILLED[self]


_KILLED = {
    Profile.GENERIC: frozenset(),
    Profile.K3_ABELIAN: frozenset({Mono.K, Mono.CK, Mono.K2}),
    Profile.PLANE: frozenset(Mono) - {Mono.I},
}


class Marker(NamedTuple):
    id: int
    base: Mono


Markers = tuple  # sorted tuple of Marker
ClassKey = tuple  # (Mono, Markers)


def mul_keys(a: ClassKey, b: ClassKey, profile: Profile = Profile.GENERIC) -> ClassKey | None:
    """Cup product of two unit-coefficient classes, or ``None`` if it vanishes.

    Two halves of the same split in one class reduce to ``e * base``.
    """
    mono = PRODUCT[a[0], b[0]]
    if mono is None:
        return None
    if not b[1]:
        markers = a[1]
    elif not a[1]:
        markers = b[1]
    else:
        markers = tuple(sorted(a[1] + b[1]))
        if len({m.id for m in markers}) != len(markers):
            markers, mono = reduce_markers(markers, mono)
            if mono is None:
                return None
    if profile.kills(mono):
        return None
    return (mono, markers)


def reduce_markers(markers: Markers, mono: Mono) -> tuple[Markers, Mono | None]:
    kept = []
    i = 0
    while i < len(markers):
        m = markers[i]
        if i + 1 < len(markers) and markers[i + 1].id == m.id:
            if markers[i + 1].base != m.base:
                raise UnpairedMarker(f"marker {m.id} pairs halves of different classes")
            if i + 2 < len(markers) and markers[i + 2].id == m.id:
                raise UnpairedMarker(f"marker {m.id} occurs more than twice")
            mono = PRODUCT[mono, Mono.E]
            mono = mono if mono is None else PRODUCT[mono, m.base]
            if mono is None:
                return (), None
            i += 2
        else:
            kept.append(m)
            i += 1
    return tuple(kept), mono


def key_degree(key: ClassKey) -> int | None:
    """Degree of a marker-free class key; ``None`` when markers are present."""
    return None if key[1] else key[0].degree


def render_key(key: ClassKey, script: bool = False) -> str:
    mono, markers = key
    names = _SCRIPT_NAMES if script else _LABELS
    factors = [] if mono is Mono.I and markers else [names[mono]]
    for m in markers:
        base = names[m.base]
        factors.append(f"[ {base} '{m.id} ]" if script else f"[{m.base.label}'{m.id}]")
    return " . ".join(factors) if script else "*".join(factors)


class MarkerIds:
    """Thread-safe source of fresh marker ids."""

    def __init__(self, start: int = 1):
        self._counter = itertools.count(start)
        self._lock = threading.Lock()

    def fresh(self) -> int:
        with self._lock:
            return next(self._counter)


_default_ids = MarkerIds()


class SurfaceClass:
    """An immutable rational combination of (possibly marked) basis monomials."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: dict[ClassKey, Fraction] | Iterable[tuple[ClassKey, Scalar]] = ()):
        items = terms.items() if isinstance(terms, dict) else terms
        acc: dict[ClassKey, Fraction] = {}
        for key, c in items:
            acc[key] = acc.get(key, 0) + Fraction(c)
        self._terms = {k: v for k, v in acc.items() if v}
        self._hash = None

    @classmethod
    def mono(cls, mono: Mono, coeff: Scalar = 1) -> SurfaceClass:
        return cls({(mono, ()): Fraction(coeff)})

    @classmethod
    def zero(cls) -> SurfaceClass:
        return cls()

    @property
    def terms(self) -> dict[ClassKey, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[ClassKey, Fraction]]:
        return iter(sorted(self._terms.items()))

    def is_zero(self) -> bool:
        return not self._terms

    def has_markers(self) -> bool:
        return any(key[1] for key in self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)) and other == 0:
            return not self._terms
        return isinstance(other, SurfaceClass) and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other: SurfaceClass) -> SurfaceClass:
        if not isinstance(other, SurfaceClass):
            return NotImplemented
        return SurfaceClass([*self._terms.items(), *other._terms.items()])

    def __neg__(self) -> SurfaceClass:
        return SurfaceClass({k: -v for k, v in self._terms.items()})

    def __sub__(self, other: SurfaceClass) -> SurfaceClass:
        return self + (-other)

    def __mul__(self, other) -> SurfaceClass:
        if isinstance(other, SurfaceClass):
            return cup(self, other)
        if isinstance(other, (int, Fraction)):
            return SurfaceClass({k: v * other for k, v in self._terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> SurfaceClass:
        return self * (1 / Fraction(other))

    def __repr__(self) -> str:
        return f"SurfaceClass({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for key, c in self.items():
            name = render_key(key)
            parts.append(name if c == 1 else f"{c}*{name}")
        return " + ".join(parts)


def cup(a: SurfaceClass, b: SurfaceClass) -> SurfaceClass:
    acc: dict[ClassKey, Fraction] = {}
    for ka, ca in a._terms.items():
        for kb, cb in b._terms.items():
            key = mul_keys(ka, kb)
            if key is not None:
                acc[key] = acc.get(key, 0) + ca * cb
    return SurfaceClass(acc)


def specialize(a: SurfaceClass, profile: Profile | str) -> SurfaceClass:
    profile = Profile(profile)
    if a.has_markers():
        raise ValueError("cannot specialize a class carrying Kuenneth markers")
    return SurfaceClass({k: c for k, c in a._terms.items() if not profile.kills(k[0])})


def kunneth_split(u: SurfaceClass, ids: MarkerIds | None = None) -> tuple[SurfaceClass, int]:
    """Return the marked half ``[u'tau]`` of the diagonal push-forward of ``u``.

    The caller places the returned class in exactly two operator slots.
    """
    terms = list(u._terms.items())
    if len(terms) != 1 or terms[0][1] != 1 or terms[0][0][1]:
        raise ValueError("kunneth_split needs a single marker-free basis monomial")
    (mono, _), _ = terms[0]
    tau = (ids or _default_ids).fresh()
    return SurfaceClass({(Mono.I, (Marker(tau, mono),)): 1}), tau


# single-letter names follow the usual script notation: C = c1(F), D = c2(F)
ZERO = SurfaceClass()
I = SurfaceClass.mono(Mono.I)
C = SurfaceClass.mono(Mono.C)
K = SurfaceClass.mono(Mono.K)
D = SurfaceClass.mono(Mono.D)
E = SurfaceClass.mono(Mono.E)
