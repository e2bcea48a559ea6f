import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_element, random_even_invertible
from superspace_lab.errors import GeneratorError, NotInvertibleError, ParityError
from superspace_lab.grassmann import (
    GeneratorSet,
    GrassmannElement,
    berezin_integrate,
    expand_even_function,
    gmul,
    grassmann_delta,
    invert_even,
    left_derivative,
)
from superspace_lab.scalar import DELTA, EXP, IDENTITY, ONE, ZERO, ConstantFunction, delta, symbol

G = GeneratorSet(["theta", "thetabar"])
eps = symbol("eps")


def gen(name, gens=G):
    return GrassmannElement.generator(gens, name)


def mono(*names, gens=G, coeff=ONE):
    return GrassmannElement.monomial(gens, names, coeff)


# -- a naive oracle: bubble-sort words and count transpositions -----------


def naive_normalize(gens, words):
    """``words``: list of (list of names, coeff) -> {sorted tuple: coeff}."""
    out = {}
    for names, c in words:
        names = list(names)
        if len(set(names)) != len(names):
            continue
        sign = 1
        for i in range(len(names)):
            for j in range(len(names) - 1 - i):
                if gens.index(names[j]) > gens.index(names[j + 1]):
                    names[j], names[j + 1] = names[j + 1], names[j]
                    sign = -sign
        key = tuple(names)
        out[key] = out.get(key, ZERO) + (c if sign > 0 else -c)
    return {k: v for k, v in out.items() if not v.is_zero}


def as_dict(e):
    return {names: c for names, c in e.terms()}


def naive_product(a, b):
    words = [(list(na) + list(nb), ca * cb) for na, ca in a.terms() for nb, cb in b.terms()]
    return naive_normalize(a.gens, words)


def test_spec_products():
    th, tb = gen("theta"), gen("thetabar")
    assert (th * th).is_zero
    assert th * tb == mono("theta", "thetabar")
    assert tb * th == -mono("theta", "thetabar")
    assert (1 + th) * (1 + tb) == 1 + th + tb + mono("theta", "thetabar")


def test_mismatched_generator_sets():
    other = GeneratorSet(["theta", "eta"])
    with pytest.raises(GeneratorError):
        gmul(gen("theta"), GrassmannElement.generator(other, "eta"))


def test_spec_berezin_examples():
    a, b, c = symbol("a"), symbol("b"), symbol("c")
    assert berezin_integrate(mono("thetabar", "theta"), ["theta", "thetabar"]) == ONE
    assert berezin_integrate(a + b * gen("theta") + c * gen("thetabar"), ["theta", "thetabar"]).is_zero
    dd = grassmann_delta(G, "thetabar") * grassmann_delta(G, "theta")
    assert berezin_integrate(dd, ["theta", "thetabar"]) == ONE


def test_berezin_rejects_repeated_variable():
    with pytest.raises(GeneratorError):
        berezin_integrate(gen("theta"), ["theta", "theta"])


def test_grassmann_delta():
    assert grassmann_delta(G, "theta") == gen("theta")
    assert grassmann_delta(G, "thetabar") * grassmann_delta(G, "theta") == -mono("theta", "thetabar")
    assert berezin_integrate(grassmann_delta(G, "theta"), ["theta"]) == ONE
    with pytest.raises(GeneratorError):
        grassmann_delta(G, "eta")


def test_delta_sifting():
    # int dtheta delta(theta) f(theta) = f(0)
    a, b = symbol("a"), symbol("b")
    f = a + b * gen("theta")
    assert berezin_integrate(grassmann_delta(G, "theta") * f, ["theta"]) == a


def test_invert_examples():
    x = mono("theta", "thetabar") + eps
    inv = invert_even(x)
    assert inv == (1 - mono("theta", "thetabar") / eps) / eps
    assert x * inv == ONE
    assert invert_even(GrassmannElement.scalar(G, ONE)) == ONE
    y = 2 + 3 * mono("theta", "thetabar")
    assert invert_even(y) == GrassmannElement.scalar(G, ONE) / 2 - mono("theta", "thetabar") * 3 / 4
    assert y * invert_even(y) == ONE


def test_invert_errors():
    with pytest.raises(NotInvertibleError):
        invert_even(mono("theta", "thetabar"))
    with pytest.raises(ParityError):
        invert_even(1 + gen("theta"))


def test_expand_examples():
    tt = mono("theta", "thetabar")
    assert expand_even_function(EXP, tt) == 1 + tt
    ins = expand_even_function(DELTA, invert_even(tt + eps))
    assert ins == GrassmannElement.scalar(G, delta(1 / eps)) - tt * delta(1 / eps, 1) / eps**2
    assert str(ins) == "delta(1/eps) - delta^(1)(1/eps)/eps^2*theta thetabar"
    assert expand_even_function(DELTA, tt) == GrassmannElement.scalar(G, delta(ZERO)) + tt * delta(ZERO, 1)
    with pytest.raises(ParityError):
        expand_even_function(EXP, gen("theta"))


def test_to_text_is_canonical():
    e = mono("thetabar", "theta", coeff=symbol("a")) + 2 + gen("thetabar")
    assert e.to_text() == "2\n1 * thetabar\n-a * theta thetabar"
    assert GrassmannElement(G).to_text() == "0"


def test_coefficient_and_parts():
    a = symbol("a")
    e = 3 + mono("thetabar", "theta", coeff=a)
    assert e.coefficient("theta", "thetabar") == -a
    assert e.coefficient("thetabar", "theta") == a
    assert e.body == 3 and e.soul == mono("thetabar", "theta", coeff=a)
    assert e.is_even and not e.is_odd


# -- properties on random elements ----------------------------------------


@pytest.mark.parametrize("seed", range(40))
def test_product_matches_naive_oracle(seed, gens4):
    rng = random.Random(seed)
    a, b = random_element(rng, gens4), random_element(rng, gens4)
    assert as_dict(gmul(a, b)) == naive_product(a, b)


@pytest.mark.parametrize("seed", range(40))
def test_graded_commutativity(seed, gens4):
    rng = random.Random(seed)
    pa, pb = rng.randint(0, 1), rng.randint(0, 1)
    a = random_element(rng, gens4, parity=pa)
    b = random_element(rng, gens4, parity=pb)
    assert a * b == (-1) ** (pa * pb) * (b * a)


@pytest.mark.parametrize("seed", range(40))
def test_left_derivative_matches_naive(seed, gens4):
    rng = random.Random(seed)
    e = random_element(rng, gens4, terms=6)
    g = rng.choice(gens4.names)
    # oracle: move g to the front by transpositions, then strip it
    words = []
    for names, c in e.terms():
        if g in names:
            i = names.index(g)
            rest = list(names[:i]) + list(names[i + 1:])
            words.append((rest, c if i % 2 == 0 else -c))
    assert as_dict(left_derivative(e, g)) == naive_normalize(gens4, words)
    assert berezin_integrate(e, [g]) == left_derivative(e, g)


@pytest.mark.parametrize("seed", range(20))
def test_berezin_linear_and_annihilates_constants(seed, gens4):
    rng = random.Random(seed)
    a, b = random_element(rng, gens4), random_element(rng, gens4)
    k = symbol("k")
    measure = ["theta", "thetabar"]
    assert berezin_integrate(a + k * b, measure) == berezin_integrate(a, measure) + k * berezin_integrate(b, measure)
    free = GrassmannElement(gens4, {m: c for m, c in a.items() if not m & 0b11})
    assert berezin_integrate(free, ["theta"]).is_zero


@pytest.mark.parametrize("seed", range(30))
def test_inverse_round_trip(seed, gens4):
    rng = random.Random(seed)
    x = random_even_invertible(rng, gens4)
    y = invert_even(x)
    assert x * y == ONE and y * x == ONE
    assert invert_even(y) == x


@pytest.mark.parametrize("seed", range(10))
def test_expand_identity_and_constant(seed, gens4):
    rng = random.Random(seed)
    x = random_element(rng, gens4, parity=0)
    assert expand_even_function(IDENTITY, x) == x
    assert expand_even_function(ConstantFunction(), x) == ONE


def test_expand_exp_is_multiplicative(gens4):
    rng = random.Random(5)
    x = random_element(rng, gens4, parity=0).soul
    y = random_element(rng, gens4, parity=0).soul
    assert expand_even_function(EXP, x + y) == expand_even_function(EXP, x) * expand_even_function(EXP, y)


words = st.lists(st.sampled_from(["theta", "thetabar", "c1", "c2"]), max_size=4)


@settings(max_examples=200, deadline=None)
@given(words, words, words)
def test_associativity_on_monomials(w1, w2, w3):
    gens = GeneratorSet(["theta", "thetabar", "c1", "c2"])

    def el(w):
        if len(set(w)) != len(w):
            return GrassmannElement(gens)
        return GrassmannElement.monomial(gens, w)

    a, b, c = el(w1), el(w2), el(w3)
    assert (a * b) * c == a * (b * c)
    assert as_dict(a * b * c) == naive_normalize(gens, [(w1 + w2 + w3, ONE)] if a and b and c else [])
