import numpy as np
import pytest
import sympy

from f4tori.certdata import ROWS
from f4tori.certify import TitsAdapter, expected_factors, row_torus
from f4tori.fixedtori import (
    NotInNormalizer,
    TwistedTorus,
    coset_degree,
    element_order,
    fixed_torus,
    lemma1_member,
    normalizer_fixed,
    normalizer_order,
)
from f4tori.smith import UnsolvableError
from f4tori.words import parse_word

from oracles import smith_factors


def fixed_points_oracle(G, R, n, q, Q, u):
    """Number of x in (Z/Q)^4 with H s(u) fixed by y -> n sigma(y) n^-1,
    computed on root operators (logs over the 48 root vectors)."""
    t = G.section[u]
    ninv = n.inverse()
    y_perm = t.perm
    # n sigma(y) n^-1 permutes root vectors by n t n^-1 whatever H is
    f_perm = n.perm[y_perm][ninv.perm]
    if not np.array_equal(f_perm, y_perm):
        return 0
    P = np.array([[R.pairing(s, i) for i in range(1, 5)] for s in R.indices], dtype=np.int64)
    X = np.array(list(np.ndindex(Q, Q, Q, Q)), dtype=np.int64)
    chi = (X @ P.T) % Q  # (N, 48)
    sl = np.where(t.signs > 0, 0, Q // 2)
    y_logs = (chi[:, y_perm] + sl) % Q
    s_logs = (q * y_logs) % Q  # sigma
    nl = np.where(n.signs > 0, 0, Q // 2)
    nil = np.where(ninv.signs > 0, 0, Q // 2)
    # (a b).logs = b.logs + a.logs[b.perm]; compute n * s * n^-1
    ns_logs = (s_logs + nl[y_perm]) % Q
    f_logs = (nil + ns_logs[:, ninv.perm]) % Q
    return int((f_logs == y_logs).all(axis=1).sum())


@pytest.mark.parametrize("row", [1, 2, 3, 9, 17])
def test_torus_and_normalizer_orders_brute_force(G, R, W, row):
    q = 3
    T = row_torus(row, q)
    assert T.Q in (2, 8)
    n = T.n
    assert fixed_points_oracle(G, R, n, q, T.Q, 0) == T.order
    total = sum(fixed_points_oracle(G, R, n, q, T.Q, u) for u in range(W.order))
    assert total == normalizer_order(T) == T.order * W.centralizer(T.w).order


def test_examples(G, W):
    T1 = fixed_torus(G.identity(), 3)
    assert T1.factors == [2, 2, 2, 2] and T1.order == 16
    T23 = fixed_torus(G.word([3, 2, 1, 16]), 3)
    assert T23.factors == [82]
    for q in (3, 5, 7, 9, 13):
        T = fixed_torus(G.word([2, 1, 16]), q)
        assert T.factors == [2, (q**4 - 1) // 2]
    assert normalizer_order(fixed_torus(G.identity(), 3)) == 18432
    assert normalizer_order(T23) == 656


@pytest.mark.parametrize("q", [3, 5, 7, 9, 13])
def test_invariant_factors_all_rows(q, W):
    for r in ROWS:
        T = row_torus(r, q)
        assert T.factors == expected_factors(r, q), r
        M = q * T.w.B - np.eye(4, dtype=np.int64)
        assert [d for d in smith_factors(M) if d > 1] == T.factors
        assert T.order == abs(int(sympy.Matrix(M.tolist()).det()))


def test_basis_and_coords(G):
    T = row_torus(11, 5)
    elems = T.elements()
    assert len(elems) == T.order == len({tuple(e) for e in elems})
    for e in elems[:: max(1, len(elems) // 50)]:
        assert T.contains_torus(e)
        assert T.combine(T.coords(e)) == tuple(int(v) for v in e)
    assert not T.contains_torus((1, 0, 0, 0))


def test_lemma1_examples(G):
    n = G.n(2)
    T = TwistedTorus(n, 3, 2)
    assert lemma1_member(T, (0, 0, 0, 0), G.n(4))
    assert T.lemma1_member((0, 0, 0, 0), G.identity())
    # a torus element outside T fails
    assert not lemma1_member(T, (1, 0, 0, 0), G.identity())
    # Weyl part not centralizing w fails
    assert not lemma1_member(T, (0, 0, 0, 0), G.n(1))
    with pytest.raises(NotInNormalizer):
        T.commutator_log(G.n(1))


def test_lemma1_agrees_with_fixed_points(G, W):
    rng = np.random.default_rng(6)
    for row in (2, 8, 12, 22):
        T = row_torus(row, 5)
        C = W.centralizer(T.w).elements()
        for _ in range(40):
            u = C[int(rng.integers(len(C)))]
            x = [int(v) for v in rng.integers(0, T.Q, 4)]
            y = T.element(x, u)
            assert T.is_fixed(y) == T.lemma1_member(x, G.section[u.idx])
            z = T.coset_element(u)
            assert T.is_fixed(z) and T.lemma1_member(z.x, G.section[u.idx])


def test_group_law(G, W):
    T = row_torus(8, 5)
    rng = np.random.default_rng(7)

    def rand():
        return T.element([int(v) for v in rng.integers(0, T.Q, 4)], int(rng.integers(W.order)))

    for _ in range(100):
        a, b, c = rand(), rand(), rand()
        assert (a * b) * c == a * (b * c)
        assert a * a.inverse() == T.identity() == a.inverse() * a
        assert a ** 3 == a * a * a and a ** -2 == (a * a).inverse()
        assert a.conj(b) == b * a * b.inverse()
    # embedding of the Tits group is a homomorphism
    for _ in range(50):
        s, t = (G.section[int(i)] * G.h_element(rng.integers(0, 2, 4)) for i in rng.integers(0, W.order, 2))
        assert T.from_tits(s) * T.from_tits(t) == T.from_tits(s * t)


def test_element_orders(G, W):
    T = fixed_torus(G.identity(), 3)
    assert element_order(T.identity()) == 1
    assert element_order(T.from_tits(G.n0)) == 2
    lift = G.h(1) * G.n(2)
    T2 = fixed_torus(lift, 3, 2)
    y = T2.from_tits(lift)
    assert T2.is_fixed(y) and y.order() == 2
    # the same word does not normalize the torus of the bare n2
    assert not fixed_torus(G.n(2), 3, 2).is_fixed(fixed_torus(G.n(2), 3, 2).from_tits(lift))
    n22 = parse_word("n8n16n3n2", TitsAdapter(G))
    T22 = fixed_torus(n22, 3)
    lift = T22.from_tits(n22)
    assert T22.is_fixed(lift) and element_order(lift) == 4


def test_coset_degree_and_normalizer_fixed(G):
    n = G.word([3, 2])
    assert coset_degree(n, 3) % 4 == 0
    T = normalizer_fixed(n, 3)
    for u in G.W.centralizer(n.weyl_part).elements():
        assert T.is_fixed(T.coset_element(u))


def test_cosets_split_over_degree_w(G):
    # every coset of T in N meets the normalizer already over F_{q^|w|}
    for r in ROWS:
        for q in (3, 5):
            T = row_torus(r, q)
            assert coset_degree(T.n, q) == T.w.order
    with pytest.raises(ValueError):
        TwistedTorus(G.word([3, 2]), 3, 2)
