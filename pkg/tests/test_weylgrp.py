import numpy as np
import pytest

from f4tori.certdata import ROWS
from f4tori.weylgrp import centralizer, conjugacy_classes, exponent_matrix, from_word

from oracles import centralizer_order, class_data, matrix_group, reflection_matrix


@pytest.fixture(scope="module")
def oracle_group():
    elems = matrix_group([reflection_matrix(i) for i in range(4)])
    n, labels = class_data(elems)
    return elems, n, labels


def test_order(W, oracle_group):
    assert W.order == 1152 == len(oracle_group[0])


def test_matrices_match_oracle(W, oracle_group):
    elems = oracle_group[0]
    assert {W.element(i).A.astype(np.int64).tobytes() for i in range(W.order)} == set(elems)
    for i in range(1, 5):
        assert np.array_equal(W.reflection(i).A, reflection_matrix(i - 1))


def test_from_word_examples(W):
    assert from_word([3, 2]).A.tolist() == [[1, 0, 0, 0], [1, -1, 1, 0], [2, -2, 1, 1], [0, 0, 0, 1]]
    assert from_word([1, 1]) == W.identity()
    w0 = from_word([21, 8, 6, 3])
    assert np.array_equal(w0.A, -np.eye(4)) and w0 == W.w0


def test_multiplication_is_matrix_product(W):
    rng = np.random.default_rng(1)
    for _ in range(200):
        a, b = (W.element(int(i)) for i in rng.integers(0, W.order, 2))
        assert np.array_equal((a * b).A, a.A @ b.A)
        assert (a * a.inverse()) == W.identity()


def test_reduced_words_rebuild_elements(W):
    for i in range(W.order):
        assert W.from_word(W.element(i).word).idx == i


def test_class_count(W, oracle_group):
    assert len(conjugacy_classes()) == 25 == oracle_group[1]
    assert sum(c["size"] for c in W.conjugacy_classes()) == 1152


def test_classes_agree_with_oracle(W, oracle_group):
    labels = oracle_group[2]
    rng = np.random.default_rng(2)
    for _ in range(300):
        a, b = (W.element(int(i)) for i in rng.integers(0, W.order, 2))
        same = labels[a.A.astype(np.int64).tobytes()] == labels[b.A.astype(np.int64).tobytes()]
        assert W.are_conjugate(a, b) == same


def test_class_examples(W):
    assert not W.are_conjugate(from_word([2]), from_word([3]))
    w13 = from_word(ROWS[13]["w"])
    assert W.are_conjugate(W.w0 * w13, from_word(ROWS[15]["w"]))


def test_conjugator(W):
    a, b = from_word([2]), from_word([1])
    g = W.conjugator(a, b)
    assert g is not None and a.conj(g) == b
    assert W.conjugator(from_word([2]), from_word([3])) is None


def test_centralizer_examples():
    assert centralizer(from_word([])).order == 1152
    assert centralizer(from_word([3, 2])).order == 32
    assert centralizer(from_word([6, 1, 9, 4])).order == 72


def test_centralizer_orders_against_oracle(oracle_group):
    elems = oracle_group[0]
    for r, d in ROWS.items():
        w = from_word(d["w"])
        assert centralizer(w).order == centralizer_order(elems, w.A.astype(np.int64)) == d["centralizer"][0], r


def test_abelian_invariants():
    assert centralizer(from_word([3, 2])).abelian_invariants() == [2, 2, 4]  # Z4 x D8
    assert centralizer(from_word(ROWS[23]["w"])).abelian_invariants() == [8]
    assert centralizer(from_word(ROWS[24]["w"])).abelian_invariants() == [3, 4]


def test_exponent_matrix_examples(W):
    assert exponent_matrix(from_word([3, 2])).tolist() == [[1, 0, 0, 0], [1, -1, 2, 0], [1, -1, 1, 1], [0, 0, 0, 1]]
    assert np.array_equal(exponent_matrix(W.identity()), np.eye(4))
    assert np.array_equal(exponent_matrix(W.w0), -np.eye(4))


def test_exponent_matrix_is_conjugated_a(W):
    D = np.diag([1, 1, 2, 2])
    for i in range(0, W.order, 7):
        w = W.element(i)
        assert np.array_equal(D @ w.B, w.A @ D)
        assert np.array_equal(w.B, exponent_matrix(w))
