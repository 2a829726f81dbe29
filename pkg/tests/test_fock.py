import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hilbclass.fock import (
    FockAlgebra,
    FockState,
    Gen,
    L,
    NonVacuumWord,
    Q,
    d,
    derived_nakajima,
    monomial,
    normalize,
    q,
    state_product,
    vac,
)
from hilbclass.surface import C, D, E, I, K, Mono, Profile, SurfaceClass

BASIS = [SurfaceClass.mono(m) for m in Mono]


def gen(lam, mono=Mono.I):
    return Gen(tuple(lam), mono)


def mono_state(*gens, coeff=1):
    return FockState._raw({monomial(gens): Fraction(coeff)})


# -- worked examples


def test_derived_zero_is_creation():
    assert normalize(derived_nakajima(0, I, 1) @ vac()) == normalize(q(I, 1) @ vac())


def test_derived_one_on_vacuum():
    for u in (I, K, C):
        for n in (1, 2, 3):
            lhs = normalize(derived_nakajima(1, u, n) @ vac())
            rhs = normalize(n * (L(u, n) @ vac()) + Fraction(n * (n - 1), 2) * (q(u * K, n) @ vac()))
            assert lhs == rhs


def test_derived_one_of_c_at_one_vanishes():
    assert normalize(Q(1, C, 1) @ vac()).is_zero()


def test_boundary_examples():
    assert normalize(d() @ q(I, 1) @ vac()).is_zero()
    expected = FockState.generator(I, (1, 1)) + FockState.generator(K, (2,))
    assert normalize(d() @ q(I, 2) @ vac()) == expected
    assert normalize(d() @ vac()).is_zero()


def test_creation_operators_commute():
    s = normalize(q(I, 1) @ q(I, 1) @ vac())
    assert s == mono_state(gen((1,)), gen((1,)))
    assert normalize(q(K, 2) @ q(E, 1) @ vac()) == normalize(q(E, 1) @ q(K, 2) @ vac())


def test_virasoro_on_vacuum_splits_diagonal():
    # L(1, 2)|0> = 1/2 q_1 q_1 (diagonal) -> 1/2 q_{1,1}(1)
    assert normalize(L(I, 2) @ vac()) == FockState.generator(I, (1, 1), Fraction(1, 2))
    assert normalize(L(I, 1) @ vac()).is_zero()


def test_virasoro_commutator():
    lhs = normalize(L(K, 1) @ q(I, 2) @ vac())
    rhs = normalize(q(I, 2) @ L(K, 1) @ vac()) - 2 * normalize(q(K, 3) @ vac())
    assert lhs == rhs


def test_state_product_examples():
    v = FockState.vacuum()
    s = FockState.generator(K, (2,), 3)
    assert state_product(v, s) == s
    assert state_product(FockState.generator(I, (1,)), FockState.generator(K, (2,))) == mono_state(
        gen((1,)), gen((2,), Mono.K)
    )
    half_e = FockState.generator(E, (1,), Fraction(1, 2))
    two_e = FockState.generator(E, (1,), 2)
    assert state_product(half_e, two_e) == mono_state(gen((1,), Mono.E), gen((1,), Mono.E))


def test_words_must_end_in_vacuum():
    with pytest.raises(NonVacuumWord):
        normalize(d() @ q(I, 1))


def test_profiles_drop_killed_classes():
    assert normalize(q(K, 2) @ vac(), Profile.K3_ABELIAN).is_zero()
    s = normalize(d() @ q(I, 3) @ vac(), Profile.PLANE)
    assert all(g.mono is Mono.I for m, _ in s.items() for g in m)


# -- generated corpus


def random_atom(rng, budget):
    kind = rng.choice("dqqLQ")
    u = rng.choice(BASIS[:4] + [I, I])
    n = rng.randint(1, max(1, min(budget, 3)))
    if kind == "d":
        return d(), 0
    if kind == "q":
        if budget >= 2 and rng.random() < 0.25:
            return q(rng.choice([I, K]), (1, 1)), 2
        return q(u, n), n
    if kind == "L":
        return L(u, n), n
    return Q(rng.randint(0, 2), u, n), n


def random_expr(rng, max_weight=4):
    budget = rng.randint(1, max_weight)
    atoms, weight = [], 0
    while len(atoms) < 5:
        atom, w = random_atom(rng, budget - weight)
        if weight + w > budget:
            break
        atoms.append(atom)
        weight += w
        if weight == budget and rng.random() < 0.5:
            break
    expr = vac()
    for a in reversed(atoms):
        expr = a @ expr
    return expr, weight


def corpus(size=120, seed=20240611):
    rng = random.Random(seed)
    return [random_expr(rng) for _ in range(size)]


CORPUS = corpus()


def test_corpus_size():
    assert len(CORPUS) >= 100
    assert max(w for _, w in CORPUS) <= 4


@pytest.mark.parametrize("k", range(len(CORPUS)))
def test_grading_preserved(k):
    expr, weight = CORPUS[k]
    state = normalize(expr)
    assert state.weights() <= {weight}
    assert not state.has_markers()


@pytest.mark.parametrize("k", range(len(CORPUS)))
def test_strategy_independence(k):
    expr, _ = CORPUS[k]
    reference = normalize(expr, strategy="action")
    assert normalize(expr, strategy="rightmost") == reference
    assert normalize(expr, strategy="leftmost") == reference
    assert normalize(expr, strategy="random", seed=k) == reference


@pytest.mark.parametrize("profile", list(Profile))
def test_strategy_independence_per_profile(profile):
    for expr, _ in CORPUS[:30]:
        assert normalize(expr, profile, "rightmost") == normalize(expr, profile)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**9))
def test_random_rewrite_confluence(seed):
    rng = random.Random(seed)
    expr, weight = random_expr(rng, 3)
    a = normalize(expr, strategy="random", seed=seed)
    b = normalize(expr, strategy="random", seed=seed + 1)
    assert a == b == normalize(expr)
    assert a.weights() <= {weight}


def test_boundary_on_products_matches_words():
    alg = FockAlgebra()
    s = normalize(q(I, 2) @ vac())
    t = normalize(q(K, 1) @ q(I, 1) @ vac())
    assert alg.boundary(state_product(s, t)) == normalize(d() @ q(I, 2) @ q(K, 1) @ q(I, 1) @ vac())


def test_derived_sum_matches_words():
    alg = FockAlgebra()
    start = normalize(q(I, 1) @ q(I, 1) @ vac())
    for u in (I, K, D):
        weights = [Fraction(1, k + 1) for k in range(4)]
        via_sum = alg.derived_sum(weights, u, start)
        via_words = sum(
            (w * normalize(Q(i, u, 1) @ q(I, 1) @ q(I, 1) @ vac()) for i, w in enumerate(weights)),
            FockState.zero(),
        )
        assert via_sum == via_words
