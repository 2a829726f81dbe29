"""Literal redex-by-redex rewriting of operator words.

Words are tuples over the atoms ``("d",)``, ``("L", key, n)``,
``("q", key, n)`` and ``("v",)`` (the vacuum), with single-part creation
operators only; a multi-part generator in the input is first unfolded into a
chain of single-part operators linked by Kuenneth markers.  The rules are

    d . v          -> 0
    d . q(u, n)    -> q(u, n) . d + n L(u, n) + n(n-1)/2 q(K u, n)
    L(u, n) . q(v, m) -> q(v, m) . L(u, n) - m q(u v, n + m)
    L(u, n) . v    -> 1/2 sum_{0<m<n} q([u'tau], m) . q([u'tau], n - m) . v

with a fresh marker ``tau`` per expansion.  When no redex is left, every word
is a product of creation operators and the markers are glued pairwise.

Termination: every push moves a ``d`` or ``L`` one creation operator to the
right, strictly lowering the number of atoms to its right; the side terms
either drop the ``d`` (replacing it by an ``L`` or a creation operator) or
drop the ``L``, and ``L . v`` removes the ``L`` for good.  Gluing lowers the
marker count by two each time.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import comb

from .fock import (
    VACUUM,
    Boundary,
    Create,
    Derived,
    FockState,
    Gen,
    NonVacuumWord,
    OperatorExpr,
    Virasoro,
    _add,
    derived_nakajima,
    join_monomial,
    monomial,
)
from .surface import Marker, MarkerIds, Mono, Profile, mul_keys

STRATEGIES = ("rightmost", "leftmost", "random")
_D = ("d",)
_V = ("v",)


def _lower(expr: OperatorExpr, ids: MarkerIds, profile: Profile) -> dict:
    """Flatten structured atoms into literal words."""
    out: dict = {}
    for word, coeff in expr.words():
        if not word or word[-1] != VACUUM:
            raise NonVacuumWord(f"word does not end in the vacuum: {word}")
        partial = [((), coeff)]
        for atom in word[:-1]:
            choices = _lower_atom(atom, ids, profile)
            partial = [(w + w2, c * c2) for w, c in partial for w2, c2 in choices]
        for w, c in partial:
            _add(out, w + (_V,), c)
    return out


def _alive(key, profile: Profile) -> bool:
    return not profile.kills(key[0]) and not any(profile.kills(m.base) for m in key[1])


def _lower_atom(atom, ids: MarkerIds, profile: Profile) -> list:
    if isinstance(atom, Boundary):
        return [((_D,), 1)]
    if isinstance(atom, Virasoro):
        return [((("L", key, atom.n),), c) for key, c in atom.cls.items() if _alive(key, profile)]
    if isinstance(atom, Derived):
        inner = derived_nakajima(atom.i, atom.cls, atom.n)
        out = []
        for w, c in inner.words():
            sub = [((), c)]
            for a in w:
                sub = [(x + y, cx * cy) for x, cx in sub for y, cy in _lower_atom(a, ids, profile)]
            out.extend(sub)
        return out
    if isinstance(atom, Create):
        return [
            (_unfold(key, tuple(atom.partition), ids), c)
            for key, c in atom.cls.items()
            if _alive(key, profile)
        ]
    raise NonVacuumWord(f"vacuum inside a word: {atom}")


def _unfold(key, lam: tuple, ids: MarkerIds) -> tuple:
    """``q_lam(u)`` as a chain of single-part operators joined by markers."""
    if len(lam) == 1:
        return (("q", key, lam[0]),)
    taus = [Marker(ids.fresh(), Mono.I) for _ in range(len(lam) - 1)]
    word = []
    for k, part in enumerate(lam):
        marks = ([taus[k - 1]] if k else []) + ([taus[k]] if k < len(taus) else [])
        if k == 0:
            mono, base_marks = key
            marks = list(base_marks) + marks
        else:
            mono = Mono.I
        word.append(("q", (mono, tuple(sorted(marks))), part))
    return tuple(word)


def _redexes(word: tuple) -> list[int]:
    return [
        i
        for i in range(len(word) - 1)
        if word[i][0] in ("d", "L") and word[i + 1][0] in ("q", "v")
    ]


def _step(word: tuple, i: int, ids: MarkerIds, profile: Profile) -> list:
    head, nxt = word[i], word[i + 1]
    pre, post = word[:i], word[i + 2 :]
    if head[0] == "d":
        if nxt[0] == "v":
            return []
        _, key, n = nxt
        out = [(pre + (nxt, _D) + post, 1), (pre + (("L", key, n),) + post, n)]
        kkey = mul_keys(key, (Mono.K, ()), profile)
        if kkey is not None and n > 1:
            out.append((pre + (("q", kkey, n),) + post, comb(n, 2)))
        return out
    _, ukey, n = head
    if nxt[0] == "q":
        _, vkey, m = nxt
        out = [(pre + (nxt, head) + post, 1)]
        prod = mul_keys(ukey, vkey, profile)
        if prod is not None:
            out.append((pre + (("q", prod, n + m),) + post, -m))
        return out
    if n == 1 or profile.kills(ukey[0]):
        return []
    tau = Marker(ids.fresh(), ukey[0])
    half1 = (Mono.I, tuple(sorted(ukey[1] + (tau,))))
    half2 = (Mono.I, (tau,))
    return [
        (pre + (("q", half1, m), ("q", half2, n - m), _V) + post, Fraction(1, 2))
        for m in range(1, n)
    ]


def rewrite_normalize(
    expr: OperatorExpr,
    profile: Profile = Profile.GENERIC,
    strategy: str = "rightmost",
    seed: int | None = None,
    ids: MarkerIds | None = None,
) -> FockState:
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
    ids = ids or MarkerIds()
    rng = random.Random(seed)
    pending = list(_lower(expr, ids, profile).items())
    normal: dict = {}
    while pending:
        if strategy == "random":
            k = rng.randrange(len(pending))
            pending[k], pending[-1] = pending[-1], pending[k]
        word, coeff = pending.pop()
        spots = _redexes(word)
        if not spots:
            _add(normal, word, coeff)
            continue
        if strategy == "rightmost":
            i = spots[-1]
        elif strategy == "leftmost":
            i = spots[0]
        else:
            i = rng.choice(spots)
        for new, c in _step(word, i, ids, profile):
            pending.append((new, coeff * c))
    acc: dict = {}
    for word, coeff in normal.items():
        gens = [Gen((n,), *key) for _, key, n in word[:-1]]
        joined = join_monomial(monomial(gens), profile)
        if joined is not None:
            _add(acc, joined, coeff)
    return FockState._raw(acc)
