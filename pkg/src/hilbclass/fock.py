"""Nakajima operators acting on the Fock space of a surface.

States are rational combinations of monomials in commuting creation
generators ``q_lambda(u)``, applied to the vacuum.  Operators are built from
the boundary operator ``d``, Virasoro operators ``L(u, n)``, derived Nakajima
operators ``Q(i, u, n) = [d, Q(i - 1, u, n)]`` and creation generators.

Two evaluation paths exist.  ``FockAlgebra`` acts on states directly: the
boundary operator is a derivation on generators, and the commutation rules

    [d, q_n(u)]      = n L(u, n) + n(n - 1)/2 q_n(K u)
    [L(u, n), q_m(v)] = -m q_{n+m}(u v)
    L(u, n)|0>       = 1/2 sum_{0<m<n} q_m q_{n-m} (diagonal of u)|0>

collapse into a cut-and-join rule on the parts of each generator: every part
``p`` splits into ``(m, p - m)``, every pair of parts ``(a, b)`` merges with
weight ``-a b`` (times ``e`` when both parts sit in one generator), and every
part contributes ``p(p-1)/2`` times multiplication by ``K``.  The literal
word rewriter in :mod:`hilbclass.rewrite` applies the same rules one redex at
a time and serves as an independent check.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Iterator, NamedTuple, Sequence

from .partitions import Partition
from .surface import (
    PRODUCT,
    ClassKey,
    MarkerIds,
    Mono,
    Profile,
    Scalar,
    SurfaceClass,
    UnpairedMarker,
    mul_keys,
    reduce_markers,
    render_key,
)

KEY_I: ClassKey = (Mono.I, ())
KEY_K: ClassKey = (Mono.K, ())
KEY_E: ClassKey = (Mono.E, ())


class NonVacuumWord(ValueError):
    """An operator word does not end in the vacuum."""


class Gen(NamedTuple):
    """Creation generator ``q_partition(mono * markers)``."""

    partition: tuple
    mono: Mono
    markers: tuple = ()

    @property
    def key(self) -> ClassKey:
        return (self.mono, self.markers)

    @property
    def weight(self) -> int:
        return sum(self.partition)

    @property
    def degree(self) -> int | None:
        if self.markers:
            return None
        return 2 * (sum(self.partition) + len(self.partition)) + self.mono.degree - 4

    def render(self, script: bool = False) -> str:
        cls = render_key(self.key, script=script)
        if script:
            if len(self.partition) == 1:
                return f"< {cls} {self.partition[0]} >"
            return f"<< {cls} ({' ; '.join(map(str, self.partition))}) >>"
        return f"q[{','.join(map(str, self.partition))}]({cls})"


Monomial = tuple  # sorted tuple of Gen


def _gen_order(g: Gen):
    return (-sum(g.partition), g.partition, g.mono, g.markers)


def monomial(gens: Iterable[Gen]) -> Monomial:
    return tuple(sorted(gens, key=_gen_order))


def _desc(parts: Iterable[int]) -> tuple:
    return tuple(sorted(parts, reverse=True))


def _add(acc: dict, key, coeff) -> None:
    value = acc.get(key, 0) + coeff
    if value:
        acc[key] = value
    else:
        acc.pop(key, None)


class FockState:
    """Rational combination of creation monomials applied to the vacuum."""

    __slots__ = ("_terms",)

    def __init__(self, terms: dict | Iterable = ()):
        items = terms.items() if isinstance(terms, dict) else terms
        acc: dict = {}
        for mono, c in items:
            _add(acc, monomial(mono), Fraction(c))
        self._terms = acc

    @classmethod
    def _raw(cls, terms: dict) -> FockState:
        state = cls.__new__(cls)
        state._terms = terms
        return state

    @classmethod
    def vacuum(cls, coeff: Scalar = 1) -> FockState:
        return cls._raw({(): Fraction(coeff)} if coeff else {})

    @classmethod
    def zero(cls) -> FockState:
        return cls._raw({})

    @classmethod
    def generator(cls, cls_: SurfaceClass, partition: Iterable[int], coeff: Scalar = 1) -> FockState:
        lam = _desc(partition)
        return cls._raw({(Gen(lam, *key),): Fraction(coeff) * c for key, c in cls_.items()})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self) -> list:
        return sorted(self._terms.items(), key=lambda kv: _monomial_order(kv[0]))

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, gens: Iterable[Gen]) -> Fraction:
        return self._terms.get(monomial(gens), Fraction(0))

    def has_markers(self) -> bool:
        return any(g.markers for m in self._terms for g in m)

    def weights(self) -> set[int]:
        return {sum(g.weight for g in m) for m in self._terms}

    def degrees(self) -> set[int]:
        return {sum(g.degree for g in m) for m in self._terms}

    def component(self, weight: int) -> FockState:
        return FockState._raw(
            {m: c for m, c in self._terms.items() if sum(g.weight for g in m) == weight}
        )

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)) and other == 0:
            return not self._terms
        return isinstance(other, FockState) and self._terms == other._terms

    __hash__ = None

    def __add__(self, other: FockState) -> FockState:
        if not isinstance(other, FockState):
            return NotImplemented
        acc = dict(self._terms)
        for m, c in other._terms.items():
            _add(acc, m, c)
        return FockState._raw(acc)

    def __neg__(self) -> FockState:
        return FockState._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: FockState) -> FockState:
        return self + (-other)

    def __mul__(self, other) -> FockState:
        if isinstance(other, FockState):
            return state_product(self, other)
        if isinstance(other, (int, Fraction)):
            if not other:
                return FockState.zero()
            return FockState._raw({m: c * other for m, c in self._terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def render(self, script: bool = False) -> str:
        if not self._terms:
            return "O" if script else "0"
        parts = []
        for m, c in self.items():
            if script:
                word = " . ".join([g.render(True) for g in m] + ["|>"])
            else:
                word = " ".join(g.render() for g in m) or "|0>"
            parts.append(word if c == 1 else f"({c}) {word}")
        return " + ".join(parts)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"FockState({self.render()})"


def _monomial_order(m: Monomial):
    return (sum(g.weight for g in m), len(m), [_gen_order(g) for g in m])


def state_product(s: FockState, t: FockState) -> FockState:
    """Product in the commutative algebra generated by creation operators."""
    acc: dict = {}
    for ma, ca in s._terms.items():
        for mb, cb in t._terms.items():
            _add(acc, monomial(ma + mb), ca * cb)
    return FockState._raw(acc)


# ---------------------------------------------------------------- joining


def _join_keys(a: ClassKey, b: ClassKey, tau: int, profile: Profile) -> ClassKey | None:
    """Class of the generator obtained by gluing two generators along the two
    halves of split ``tau`` (one half in each)."""
    ma = [m for m in a[1] if m.id != tau]
    mb = [m for m in b[1] if m.id != tau]
    base = next(m.base for m in a[1] if m.id == tau)
    mono = PRODUCT[a[0], b[0]]
    mono = None if mono is None else PRODUCT[mono, base]
    if mono is None:
        return None
    markers = tuple(sorted(ma + mb))
    if len({m.id for m in markers}) != len(markers):
        markers, mono = reduce_markers(markers, mono)
        if mono is None:
            return None
    if profile.kills(mono):
        return None
    return (mono, markers)


def join_monomial(gens: Sequence[Gen], profile: Profile = Profile.GENERIC) -> Monomial | None:
    """Glue every pair of generators sharing a marker id; ``None`` if zero."""
    gens = list(gens)
    while True:
        owner: dict[int, int] = {}
        pair = None
        for i, g in enumerate(gens):
            for m in g.markers:
                j = owner.setdefault(m.id, i)
                if j != i:
                    pair = (j, i, m.id)
                    break
            if pair:
                break
        if pair is None:
            break
        i, j, tau = pair
        key = _join_keys(gens[i].key, gens[j].key, tau, profile)
        if key is None:
            return None
        merged = Gen(_desc(gens[i].partition + gens[j].partition), *key)
        gens = [g for k, g in enumerate(gens) if k not in (i, j)] + [merged]
    for g in gens:
        if g.markers:
            raise UnpairedMarker(f"unpaired Kuenneth marker(s) {[m.id for m in g.markers]}")
    return monomial(gens)


def join(state: FockState, profile: Profile = Profile.GENERIC) -> FockState:
    """Resolve all Kuenneth markers; the result is marker-free."""
    acc: dict = {}
    for m, c in state._terms.items():
        if not any(g.markers for g in m):
            _add(acc, m, c)
            continue
        joined = join_monomial(m, profile)
        if joined is not None:
            _add(acc, joined, c)
    return FockState._raw(acc)


# ---------------------------------------------------------------- operators


@dataclass(frozen=True)
class Boundary:
    def __str__(self) -> str:
        return "d"


@dataclass(frozen=True)
class Virasoro:
    cls: SurfaceClass
    n: int

    def __str__(self) -> str:
        return f"L({self.cls} {self.n})"


@dataclass(frozen=True)
class Derived:
    i: int
    cls: SurfaceClass
    n: int

    def __str__(self) -> str:
        return f"q({self.i} {self.cls} {self.n})"


@dataclass(frozen=True)
class Create:
    cls: SurfaceClass
    partition: Partition

    def __str__(self) -> str:
        return f"<<{self.cls} {self.partition}>>"


@dataclass(frozen=True)
class _Vacuum:
    def __str__(self) -> str:
        return "|>"


VACUUM = _Vacuum()
Atom = Boundary | Virasoro | Derived | Create | _Vacuum


class OperatorExpr:
    """Rational combination of operator words; ``@`` composes, ``+`` adds."""

    __slots__ = ("_words",)

    def __init__(self, words: dict | Iterable = ()):
        items = words.items() if isinstance(words, dict) else words
        acc: dict = {}
        for w, c in items:
            _add(acc, tuple(w), Fraction(c))
        self._words = acc

    @classmethod
    def atom(cls, a) -> OperatorExpr:
        return cls({(a,): 1})

    def words(self) -> list:
        return list(self._words.items())

    def __add__(self, other: OperatorExpr) -> OperatorExpr:
        acc = dict(self._words)
        for w, c in other._words.items():
            _add(acc, w, c)
        return OperatorExpr(acc)

    def __neg__(self) -> OperatorExpr:
        return OperatorExpr({w: -c for w, c in self._words.items()})

    def __sub__(self, other: OperatorExpr) -> OperatorExpr:
        return self + (-other)

    def __rmul__(self, scalar: Scalar) -> OperatorExpr:
        return OperatorExpr({w: c * scalar for w, c in self._words.items()})

    def __matmul__(self, other: OperatorExpr) -> OperatorExpr:
        acc: dict = {}
        for wa, ca in self._words.items():
            for wb, cb in other._words.items():
                _add(acc, wa + wb, ca * cb)
        return OperatorExpr(acc)

    def __eq__(self, other) -> bool:
        return isinstance(other, OperatorExpr) and self._words == other._words

    __hash__ = None

    def weights(self) -> set[int]:
        return {sum(atom_weight(a) for a in w) for w in self._words}

    def __str__(self) -> str:
        return " + ".join(
            f"({c}) " * (c != 1) + " . ".join(map(str, w)) for w, c in self._words.items()
        ) or "O"


def atom_weight(a) -> int:
    if isinstance(a, (Virasoro, Derived)):
        return a.n
    if isinstance(a, Create):
        return sum(a.partition)
    return 0


def d() -> OperatorExpr:
    return OperatorExpr.atom(Boundary())


def L(u: SurfaceClass, n: int) -> OperatorExpr:
    return OperatorExpr.atom(Virasoro(u, n))


def Q(i: int, u: SurfaceClass, n: int) -> OperatorExpr:
    return OperatorExpr.atom(Derived(i, u, n))


def q(u: SurfaceClass, n: int | Iterable[int]) -> OperatorExpr:
    lam = Partition([n] if isinstance(n, int) else n)
    if not lam:
        raise ValueError("creation generator needs a nonempty partition")
    return OperatorExpr.atom(Create(u, lam))


def vac() -> OperatorExpr:
    return OperatorExpr.atom(VACUUM)


def derived_nakajima(i: int, u: SurfaceClass, n: int) -> OperatorExpr:
    """``Q(i, u, n)`` expanded into words in ``d`` and ``q``."""
    expr = q(u, n)
    for _ in range(i):
        expr = d() @ expr - expr @ d()
    return expr


class FockAlgebra:
    """Operators acting on states for one surface profile.

    The boundary action on single monomials is memoized; the cache is
    instance-local.
    """

    def __init__(self, profile: Profile | str = Profile.GENERIC):
        self.profile = Profile(profile)
        self._d_cache: dict = {}

    # -- creation

    def create(self, u: SurfaceClass | ClassKey, partition: Iterable[int], state: FockState) -> FockState:
        lam = _desc(partition)
        classes = u.items() if isinstance(u, SurfaceClass) else [(u, 1)]
        acc: dict = {}
        for key, cu in classes:
            if self.profile.kills(key[0]) or any(self.profile.kills(m.base) for m in key[1]):
                continue
            g = Gen(lam, *key)
            for m, c in state._terms.items():
                _add(acc, monomial(m + (g,)), c * cu)
        return FockState._raw(acc)

    # -- boundary operator

    def boundary(self, state: FockState) -> FockState:
        acc: dict = {}
        for m, c in state._terms.items():
            for m2, c2 in self._boundary_monomial(m).items():
                _add(acc, m2, c * c2)
        return FockState._raw(acc)

    def _boundary_monomial(self, gens: Monomial) -> dict:
        cached = self._d_cache.get(gens)
        if cached is not None:
            return cached
        out: dict = {}
        profile = self.profile
        for i, g in enumerate(gens):
            rest = gens[:i] + gens[i + 1 :]
            lam = g.partition
            kcoef = sum(p * (p - 1) // 2 for p in lam)
            if kcoef:
                key = mul_keys(g.key, KEY_K, profile)
                if key is not None:
                    _add(out, monomial(rest + (Gen(lam, *key),)), Fraction(kcoef))
            for value, mult in Counter(lam).items():
                if value < 2:
                    continue
                others = list(lam)
                others.remove(value)
                for m in range(1, value):
                    new = Gen(_desc(others + [m, value - m]), g.mono, g.markers)
                    _add(out, monomial(rest + (new,)), Fraction(mult * value, 2))
            if len(lam) > 1:
                key = mul_keys(g.key, KEY_E, profile)
                if key is not None:
                    for a in range(len(lam)):
                        for b in range(a + 1, len(lam)):
                            others = [p for k, p in enumerate(lam) if k not in (a, b)]
                            new = Gen(_desc(others + [lam[a] + lam[b]]), *key)
                            _add(out, monomial(rest + (new,)), Fraction(-lam[a] * lam[b]))
            for j in range(i + 1, len(gens)):
                h = gens[j]
                key = mul_keys(g.key, h.key, profile)
                if key is None:
                    continue
                rest2 = tuple(x for k, x in enumerate(gens) if k not in (i, j))
                mu = h.partition
                for a in range(len(lam)):
                    for b in range(len(mu)):
                        parts = list(lam[:a] + lam[a + 1 :] + mu[:b] + mu[b + 1 :])
                        new = Gen(_desc(parts + [lam[a] + mu[b]]), *key)
                        _add(out, monomial(rest2 + (new,)), Fraction(-lam[a] * mu[b]))
        self._d_cache[gens] = out
        return out

    # -- Virasoro operators

    def virasoro(self, u: SurfaceClass | ClassKey, n: int, state: FockState) -> FockState:
        classes = u.items() if isinstance(u, SurfaceClass) else [(u, 1)]
        acc: dict = {}
        for key, cu in classes:
            for m, c in state._terms.items():
                for i, g in enumerate(m):
                    new_key = mul_keys(key, g.key, self.profile)
                    if new_key is None:
                        continue
                    rest = m[:i] + m[i + 1 :]
                    lam = g.partition
                    for b in range(len(lam)):
                        if b and lam[b] == lam[b - 1]:
                            continue
                        mult = lam.count(lam[b])
                        new = Gen(_desc(lam[:b] + lam[b + 1 :] + (lam[b] + n,)), *new_key)
                        _add(acc, monomial(rest + (new,)), -lam[b] * mult * c * cu)
                if self.profile.kills(key[0]) or any(self.profile.kills(x.base) for x in key[1]):
                    continue
                for k in range(1, n):
                    new = Gen(_desc((k, n - k)), *key)
                    _add(acc, monomial(m + (new,)), Fraction(1, 2) * c * cu)
        return FockState._raw(acc)

    # -- derived Nakajima operators

    def derived(self, i: int, u: SurfaceClass | ClassKey, n: int, state: FockState) -> FockState:
        weights = [0] * i + [1]
        return self.derived_sum(weights, u, state, n)

    def derived_sum(
        self,
        weights: Sequence[Scalar],
        u: SurfaceClass | ClassKey,
        state: FockState,
        n: int = 1,
    ) -> FockState:
        """``sum_nu weights[nu] * Q(nu, u, n)`` applied to ``state``.

        Uses ``Q(nu) = sum_{i+j=nu} binom(nu, i) (-1)^j d^i q_n(u) d^j`` and
        evaluates the outer powers of ``d`` by Horner's rule, so a sum up to
        ``N`` costs about ``2N`` boundary applications.
        """
        top = len(weights) - 1
        powers = [state]
        for _ in range(top):
            powers.append(self.boundary(powers[-1]))
        acc = FockState.zero()
        for i in range(top, -1, -1):
            inner: dict = {}
            for j in range(top - i + 1):
                w = weights[i + j]
                if not w:
                    continue
                c = Fraction(w) * comb(i + j, i) * (-1) ** j
                for m, v in powers[j]._terms.items():
                    _add(inner, m, c * v)
            term = self.create(u, (n,), FockState._raw(inner))
            acc = term + self.boundary(acc) if i < top else term
        return acc

    # -- words

    def apply(self, atom, state: FockState) -> FockState:
        if isinstance(atom, Boundary):
            return self.boundary(state)
        if isinstance(atom, Virasoro):
            return self.virasoro(atom.cls, atom.n, state)
        if isinstance(atom, Derived):
            return self.derived(atom.i, atom.cls, atom.n, state)
        if isinstance(atom, Create):
            return self.create(atom.cls, atom.partition, state)
        raise NonVacuumWord(f"unexpected atom {atom} before the end of a word")

    def evaluate(self, expr: OperatorExpr) -> FockState:
        """Apply every word to the vacuum, without resolving markers."""
        total = FockState.zero()
        for word, coeff in expr.words():
            if not word or word[-1] != VACUUM:
                raise NonVacuumWord(f"word does not end in the vacuum: {' . '.join(map(str, word))}")
            state = FockState.vacuum(coeff)
            for atom in reversed(word[:-1]):
                state = self.apply(atom, state)
                if state.is_zero():
                    break
            total = total + state
        return total

    def normalize(self, expr: OperatorExpr) -> FockState:
        return join(self.evaluate(expr), self.profile)


def normalize(
    expr: OperatorExpr,
    profile: Profile | str = Profile.GENERIC,
    strategy: str = "action",
    seed: int | None = None,
    ids: MarkerIds | None = None,
) -> FockState:
    """Normal form of ``expr`` (every word ending in the vacuum).

    ``strategy="action"`` evaluates words as operators on states; the
    strategies ``"rightmost"``, ``"leftmost"`` and ``"random"`` rewrite words
    literally, redex by redex.
    """
    if strategy == "action":
        return FockAlgebra(profile).normalize(expr)
    from .rewrite import rewrite_normalize

    return rewrite_normalize(expr, Profile(profile), strategy=strategy, seed=seed, ids=ids)


def expr_degree(word: Sequence) -> int:
    """Cohomological degree of a marker-free operator word."""
    total = 0
    for a in word:
        if isinstance(a, Boundary):
            total += 2
        elif isinstance(a, Virasoro):
            total += 2 * a.n + _class_degree(a.cls)
        elif isinstance(a, Derived):
            total += 2 * a.i + 2 * (a.n - 1) + _class_degree(a.cls)
        elif isinstance(a, Create):
            lam = a.partition
            total += 2 * (sum(lam) + len(lam)) + _class_degree(a.cls) - 4
    return total


def _class_degree(u: SurfaceClass) -> int:
    degrees = {key[0].degree for key, _ in u.items()}
    if len(degrees) != 1:
        raise ValueError(f"class {u} is not homogeneous")
    return degrees.pop()


def iter_generators(state: FockState) -> Iterator[Gen]:
    for m in state._terms:
        yield from m
