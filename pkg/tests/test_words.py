from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from f4tori.words import (
    AliasAdapter,
    ExpressionError,
    GroupAdapter,
    Monomial,
    WordError,
    check_chain,
    eval_bool,
    eval_int,
    eval_monomial,
    evaluate,
    parse_word,
    word_atoms,
)


class PermAdapter(GroupAdapter[tuple]):
    """S5 as tuples; atoms a, b, c, h1, n2 are fixed permutations."""

    ATOMS = {
        "a": (1, 0, 2, 3, 4),
        "b": (0, 2, 1, 3, 4),
        "c": (1, 2, 3, 4, 0),
        "h1": (0, 1, 2, 4, 3),
        "n2": (2, 0, 1, 3, 4),
    }

    def identity(self):
        return (0, 1, 2, 3, 4)

    def mul(self, x, y):
        return tuple(x[y[i]] for i in range(5))

    def inv(self, x):
        out = [0] * 5
        for i, v in enumerate(x):
            out[v] = i
        return tuple(out)

    def atom(self, name):
        if name not in self.ATOMS:
            raise KeyError(name)
        return self.ATOMS[name]


P = PermAdapter()


def test_expressions():
    assert eval_int("(q^2+1)*(q-1)", q=3) == 20
    assert eval_int("(e*q+3)/2", q=5, e=-1) == -1
    assert eval_int("gcd(q-1, 4)", q=9) == 4
    assert eval_int(7) == 7
    assert evaluate("q/2", q=3) == Fraction(3, 2)
    with pytest.raises(ExpressionError):
        eval_int("q/2", q=3)
    with pytest.raises(ExpressionError):
        evaluate("x + 1", q=3)
    with pytest.raises(ExpressionError):
        evaluate("q(", q=3)
    with pytest.raises(ExpressionError):
        evaluate("__import__('os')", q=3)
    with pytest.raises(ExpressionError):
        evaluate("q ** (1/2)", q=3)


def test_conditions():
    assert eval_bool("q % 4 == 1", 5)
    assert eval_bool("q % 4 == 3", 7)
    assert eval_bool("e*q % 4 == 3", 5, -1)
    assert eval_bool("q % 4 != 1", 3)
    assert eval_bool("q % 4 == -1", 3)
    with pytest.raises(ExpressionError):
        eval_bool("q > 3", 5)


def test_monomials():
    z = Monomial(1, Fraction(1))
    assert z * z == Monomial(1, Fraction(2))
    assert -z == Monomial(-1, Fraction(1))
    assert (z ** 3) / z == Monomial(1, Fraction(2))
    assert (-z) ** 2 == Monomial(1, Fraction(2))
    with pytest.raises(ExpressionError):
        (-z) ** Fraction(1, 2)
    with pytest.raises(ExpressionError):
        z * 2
    assert eval_monomial("-z^((q+1)/2)", 5) == Monomial(-1, Fraction(3))
    assert eval_monomial("1", 3) == Monomial(1, Fraction(0))
    assert eval_monomial("-1", 3) == Monomial(-1, Fraction(0))
    assert eval_monomial("eta^2*z", 3, aux={"eta": "z^(q-1)"}) == Monomial(1, Fraction(5))
    with pytest.raises(ExpressionError):
        eval_monomial("2", 3)
    with pytest.raises(ExpressionError):
        eval_monomial("z^(q/2)", 3)
    with pytest.raises(ExpressionError):
        eval_monomial("z + 1", 3)


def test_word_syntax():
    a, b, c = P.atom("a"), P.atom("b"), P.atom("c")
    assert parse_word("ab", P) == P.mul(a, b)
    assert parse_word("a*b", P) == P.mul(a, b)
    assert parse_word("1", P) == P.identity()
    assert parse_word("c^-1", P) == P.inv(c)
    assert parse_word("c^5", P) == P.identity()
    assert parse_word("a^{c}", P) == P.mul(P.mul(c, a), P.inv(c))
    assert parse_word("[a,b]", P) == P.mul(P.mul(a, b), P.mul(P.inv(a), P.inv(b)))
    assert parse_word("(ab)^3", P) == P.identity()
    assert parse_word("h1n2", P) == P.mul(P.atom("h1"), P.atom("n2"))
    assert word_atoms("h1n2[a,b]^{c}") == {"h1", "n2", "a", "b", "c"}
    for bad in ("", "a^", "[a,b", "(a", "a)", "2", "a^{b", "a$"):
        with pytest.raises(WordError):
            parse_word(bad, P)


def test_chains():
    ok, parts = check_chain("(ab)^3 = a^2 = 1", P)
    assert ok and len(parts) == 3
    ok, _ = check_chain("a = b", P)
    assert not ok


def test_aliases():
    ad = AliasAdapter(P, {"x": "ab", "y": P.atom("c"), "Z": "x^2"})
    assert parse_word("x", ad) == P.mul(P.atom("a"), P.atom("b"))
    assert parse_word("y", ad) == P.atom("c")
    assert parse_word("Z", ad) == parse_word("abab", P)
    assert parse_word("xa", ad) == parse_word("aba", P)
    assert ad.power(P.atom("c"), -1) == P.inv(P.atom("c"))
    assert ad.eq(P.identity(), parse_word("x^3", ad))


words = st.lists(st.sampled_from(["a", "b", "c", "h1", "n2"]), min_size=1, max_size=6).map("".join)


@settings(max_examples=100, deadline=None)
@given(words, words, st.integers(-4, 6))
def test_word_laws(u, v, k):
    x, y = parse_word(u, P), parse_word(v, P)
    assert parse_word(f"({u})({v})", P) == P.mul(x, y)
    assert parse_word(f"({u})^{k}", P) == P.power(x, k)
    assert parse_word(f"({u})^{{{v}}}", P) == P.mul(P.mul(y, x), P.inv(y))
    assert parse_word(f"[{u},{v}]", P) == P.mul(P.mul(x, y), P.mul(P.inv(x), P.inv(y)))
    assert parse_word(f"[{u},{v}][{v},{u}]", P) == P.identity()
