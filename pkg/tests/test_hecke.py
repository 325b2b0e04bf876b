import json
import random
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jordhecke.errors import ContextMismatch, RankTooLarge
from jordhecke.hecke import (
    HeckeContext,
    AlgebraElement,
    check_antihom,
    check_associativity,
    check_bernstein_relation,
    check_braid,
    check_quadratic,
    check_translation_twist,
    opposite,
    random_element,
    small_basis,
    standard_contexts,
    weyl_elements,
)
from jordhecke.laurent import LaurentScalar, pack, raw_c, unpack


# --------------------------------------------------------------------------
# oracle: the polynomial representation, built from the root data alone
#
# theta_x acts by multiplication with X^x and T_s by
#   f -> z^lam s(f) + (z^lam - z^-lam) (f - s f) / (1 - X^-a),
# which is a faithful action of the algebra.  A polynomial is a Counter
# keyed by (lattice vector, twice the z exponent).


def _refl(x, root, coroot):
    n = sum(a * b for a, b in zip(x, coroot))
    return tuple(a - n * r for a, r in zip(x, root)), n


def _act_T(ctx, i, poly):
    s = ctx.simple[i]
    k = int(2 * s.lam)
    out = Counter()
    for (x, e), c in poly.items():
        sx, n = _refl(x, s.root, s.coroot)
        out[(sx, e + k)] += c
        # (X^x - X^sx) / (1 - X^-a) as a finite geometric sum
        if n > 0:
            quot = [(tuple(a - j * r for a, r in zip(x, s.root)), 1) for j in range(n)]
        else:
            quot = [(tuple(a + j * r for a, r in zip(x, s.root)), -1) for j in range(1, -n + 1)]
        for y, sign in quot:
            out[(y, e + k)] += sign * c
            out[(y, e - k)] -= sign * c
    return Counter({key: v for key, v in out.items() if v})


def _act(ctx, element, poly):
    out = Counter()
    for (x, w, g), coeff in element.sorted_terms():
        assert g == ctx.identity
        cur = Counter(poly)
        for i in reversed(ctx.word(w)):
            cur = _act_T(ctx, i, cur)
        for k2, c2 in coeff.raw.items():
            for (y, e), c in cur.items():
                out[(tuple(a + b for a, b in zip(x, y)), e + k2)] += c * c2
    return Counter({key: v for key, v in out.items() if v})


def _random_basis(ctx, rng):
    x = tuple(rng.randint(-1, 1) for _ in range(ctx.rank))
    return ctx.basis(x, rng.choice(ctx.weyl_group()), coeff=LaurentScalar({rng.randint(-1, 1): 1}))


@pytest.mark.parametrize("rtype,lam", [("A1", 1), ("A2", 1), ("B2", 1), ("C2", 2), ("B2", Fraction(1, 2))])
def test_multiplication_matches_polynomial_representation(rtype, lam):
    ctx = HeckeContext.from_type(rtype, lam=lam)
    rng = random.Random(7)
    tests = [Counter({(tuple(rng.randint(-2, 2) for _ in range(ctx.rank)), 0): 1}) for _ in range(3)]
    for _ in range(25):
        a, b = _random_basis(ctx, rng), _random_basis(ctx, rng)
        ab = a * b
        for f in tests:
            assert _act(ctx, ab, f) == _act(ctx, a, _act(ctx, b, f))


def test_oracle_is_faithful_on_small_basis():
    ctx = HeckeContext.from_type("A1")
    basis = small_basis(ctx, 1)
    f = Counter({((3, -5), 0): 1})
    images = [tuple(sorted(_act(ctx, b, f).items())) for b in basis]
    assert len(set(images)) == len(basis)


# --------------------------------------------------------------------------
# Weyl groups


@pytest.mark.parametrize("rtype,order", [("A1", 2), ("A2", 6), ("B2", 8), ("C2", 8), ("D2", 4),
                                         ("B3", 48), ("C3", 48), ("D3", 24), ("BC2", 8)])
def test_weyl_orders(rtype, order):
    words = weyl_elements(rtype)
    assert len(words) == order == len(set(words))


def test_weyl_words_are_reduced():
    ctx = HeckeContext.from_type("B3")
    for w in ctx.weyl_group():
        assert ctx.from_word(ctx.word(w)) == w and ctx.length(w) == len(ctx.word(w))


def test_rank_cap():
    with pytest.raises(RankTooLarge):
        weyl_elements("B4")


# --------------------------------------------------------------------------
# relations and examples


def test_unit_law():
    ctx = HeckeContext.from_type("B2")
    for b in small_basis(ctx, 1):
        assert ctx.one() * b == b == b * ctx.one()


def test_quadratic_example():
    ctx = HeckeContext.from_type("A1", lam=2)
    T = ctx.T(0)
    assert T * T == T.scale(LaurentScalar({2: 1, -2: -1})) + ctx.one()


def test_zero_label_collapses_to_group_algebra():
    ctx = HeckeContext.from_type("A1", lam=0)
    T = ctx.T(0)
    assert T * T == ctx.one()
    for x in [(1, 0), (2, -1), (0, 3)]:
        assert T * ctx.theta(x) == ctx.theta(ctx.reflect(0, x)) * T


def test_bernstein_example():
    ctx = HeckeContext.from_type("A1")
    lhs = ctx.T(0) * ctx.theta((1, 0)) - ctx.theta((0, 1)) * ctx.T(0)
    assert lhs == ctx.theta((1, 0)).scale(LaurentScalar({1: 1, -1: -1}))


def test_theta_is_additive():
    ctx = HeckeContext.from_type("C2", lam=2)
    assert ctx.theta((1, -2)) * ctx.theta((3, 1)) == ctx.theta((4, -1))


def test_center_elements_commute():
    ctx = HeckeContext.from_type("A1")
    sym = ctx.theta((1, 0)) + ctx.theta((0, 1))
    det = ctx.theta((1, 1))
    for z in (sym, det):
        assert z * ctx.T(0) == ctx.T(0) * z


@pytest.mark.parametrize("rtype", ["A2", "D2", "B2", "C2"])
def test_relations(rtype):
    ctx = HeckeContext.from_type(rtype, lam=1)
    n = len(ctx.simple)
    assert all(check_quadratic(ctx, i) for i in range(n))
    assert all(check_braid(ctx, i, j) for i in range(n) for j in range(i + 1, n))
    assert all(check_bernstein_relation(ctx, i, (2, -1) + (0,) * (ctx.rank - 2)) for i in range(n))


def test_unequal_labels():
    ctx = HeckeContext.from_type("B2", lam=1, lam_beta=3, lam_star_beta=1)
    assert check_quadratic(ctx, 1) and check_braid(ctx, 0, 1)
    assert all(check_bernstein_relation(ctx, 1, x) for x in [(1, 0), (0, 1), (2, -3)])


def test_quadratic_negative_control():
    ctx = HeckeContext.from_type("A1")
    ctx._c[0] = raw_c(2)
    assert not check_quadratic(ctx, 0)


def test_associativity_with_gamma():
    ctx = HeckeContext.from_type("D2", gamma_out=True)
    assert len(ctx.gamma_elements) == 2
    assert check_associativity(ctx, small_basis(ctx, 1)[:12])


def test_opposite():
    ctx = HeckeContext.from_type("A1")
    a = ctx.theta((1, 0)) * ctx.T(0)
    assert opposite(a) == ctx.T(0) * ctx.theta((1, 0))
    assert opposite(opposite(a)) == a
    assert check_antihom(ctx, 30, seed=3)


def test_translation_twist_report():
    ctx = HeckeContext.from_type("B1", lam_beta=2, lam_star_beta=2)
    assert check_translation_twist(ctx, 0).ok
    bad = HeckeContext.from_type("B1", lam_beta=2, lam_star_beta=0)
    assert not check_translation_twist(bad, 0).quadratic


def test_standard_contexts_cover_every_row():
    rows = {row.row for row, _ in standard_contexts()}
    assert {"D-empty", "B-half", "C-even", "B-one-sided", "B-two-sided", "A-free", "unitary-B"} <= rows


# --------------------------------------------------------------------------
# presentation and errors


def test_str_format():
    ctx = HeckeContext.from_type("A1")
    assert str(ctx.T(0)) == "θ[0,0]·T[s1] * (1)"
    assert str(ctx.zero()) == "0"


def test_json_round_trip():
    ctx = HeckeContext.from_type("D2", gamma_out=True)
    rng = random.Random(1)
    for _ in range(20):
        a = random_element(ctx, rng)
        obj = json.loads(json.dumps(a.to_json()))
        assert AlgebraElement.from_json(ctx, obj) == a


def test_context_mismatch():
    a = HeckeContext.from_type("A1").one()
    b = HeckeContext.from_type("A1").one()
    with pytest.raises(ContextMismatch):
        a * b
    with pytest.raises(ContextMismatch):
        a + b


# --------------------------------------------------------------------------
# Laurent scalars

halves = st.integers(-6, 6).map(lambda k: Fraction(k, 2))
scalars = st.dictionaries(halves, st.integers(-5, 5), max_size=4).map(LaurentScalar)


@settings(max_examples=80, deadline=None)
@given(scalars, scalars, scalars)
def test_ring_laws(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == 0


@settings(max_examples=80, deadline=None)
@given(st.dictionaries(st.integers(-20, 20), st.integers(-(2 ** 40), 2 ** 40)))
def test_pack_round_trip(raw):
    raw = {k: v for k, v in raw.items() if v}
    assert unpack(pack(raw)) == raw


def test_scalar_text():
    s = LaurentScalar({1: 1, 0: -2, Fraction(-1, 2): 3})
    assert str(s) == "z - 2 + 3z^(-1/2)"
    assert LaurentScalar.from_json(json.loads(json.dumps(s.to_json()))) == s
