"""The Tits group generated by the n_r, realized as signed permutations of the
48 root vectors of the adjoint Chevalley basis.

n_r is computed as exp(ad e_r) exp(-ad e_-r) exp(ad e_r) over the integers
and restricted to the root-vector coordinates, where it acts monomially:
e_s -> sign * e_{w_r(s)}.  F4 is centre-free, so this model is faithful.
"""
from __future__ import annotations

from functools import cached_property, lru_cache
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from .rootsys import RootSystemF4, enumerate_roots
from .weylgrp import WeylElement, WeylGroup, weyl_group


class NonMonomialError(RuntimeError):
    pass


def _ad(R: RootSystemF4, a: int) -> np.ndarray:
    """Matrix of ad(x_a) on the 52-dim basis, columns are images."""
    return R.bracket_tensor[a].T.copy()


def _exp_nilpotent(X: np.ndarray) -> np.ndarray:
    out = np.eye(X.shape[0], dtype=object)
    term = np.eye(X.shape[0], dtype=object)
    Xo = X.astype(object)
    k = 1
    while True:
        term = term.dot(Xo)
        if not term.any():
            break
        fact = 1
        for j in range(2, k + 1):
            fact *= j
        q = term // fact
        if (q * fact != term).any():
            raise ArithmeticError("exp(ad e) is not integral")
        out = out + q
        k += 1
    return out


class TitsElement:
    """e_s -> signs[s] * e_{perm[s]} on the 48 root-vector slots."""

    __slots__ = ("group", "perm", "signs", "_key")

    def __init__(self, group: "TitsGroup", perm: np.ndarray, signs: np.ndarray):
        self.group = group
        self.perm = perm
        self.signs = signs
        self._key = None

    @property
    def key(self) -> bytes:
        if self._key is None:
            self._key = self.perm.astype(np.int8).tobytes() + self.signs.astype(np.int8).tobytes()
        return self._key

    def __mul__(self, other: "TitsElement") -> "TitsElement":
        # (a b)(e_s) = a(sb[s] e_{pb[s]}) = sb[s] sa[pb[s]] e_{pa[pb[s]]}
        return TitsElement(self.group, self.perm[other.perm], other.signs * self.signs[other.perm])

    def inverse(self) -> "TitsElement":
        inv = np.empty_like(self.perm)
        inv[self.perm] = np.arange(48)
        return TitsElement(self.group, inv, self.signs[inv].copy())

    def __pow__(self, m: int) -> "TitsElement":
        base = self if m >= 0 else self.inverse()
        out = self.group.identity()
        m = abs(m)
        while m:
            if m & 1:
                out = out * base
            base = base * base
            m >>= 1
        return out

    def conj(self, by: "TitsElement") -> "TitsElement":
        """by * self * by^-1 (the x^y convention)."""
        return by * self * by.inverse()

    def __eq__(self, other) -> bool:
        return isinstance(other, TitsElement) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    @property
    def weyl_part(self) -> WeylElement:
        W = self.group.W
        return W.element(W.index_of_perm(self.perm))

    def is_torus(self) -> bool:
        return bool((self.perm == np.arange(48)).all())

    @property
    def h_bits(self) -> tuple[int, int, int, int]:
        """Bits b with self = h_1^b1 h_2^b2 h_3^b3 h_4^b4; requires trivial Weyl part."""
        if not self.is_torus():
            raise ValueError("element does not lie in the subgroup H")
        return self.group.bits_of_signs(self.signs)

    def sign_of(self, r: int) -> int:
        return int(self.signs[self.group.R.slot[r]])

    def __repr__(self) -> str:
        if self.is_torus():
            b = self.h_bits
            return "h(" + ",".join(map(str, b)) + ")"
        return f"TitsElement(w={list(self.weyl_part.word)})"


class TitsGroup:
    def __init__(self, R: RootSystemF4 | None = None, W: WeylGroup | None = None):
        self.R = R or enumerate_roots()
        self.W = W or weyl_group()
        R = self.R
        # pairing[s, i] = <s, r_i^vee> for s in storage order
        self.pairing = np.array([[R.pairing(s, i + 1) for i in range(4)] for s in R.indices], dtype=np.int64)
        self._n_cache: dict[int, TitsElement] = {}
        self._bits_lookup = {}
        for bits in product((0, 1), repeat=4):
            signs = self._signs_of_bits(bits)
            self._bits_lookup[signs.tobytes()] = bits

    def identity(self) -> TitsElement:
        return TitsElement(self, np.arange(48), np.ones(48, dtype=np.int64))

    def _signs_of_bits(self, bits) -> np.ndarray:
        e = self.pairing @ np.asarray(bits, dtype=np.int64)
        return np.where(e % 2 == 0, 1, -1).astype(np.int64)

    def bits_of_signs(self, signs: np.ndarray) -> tuple[int, int, int, int]:
        key = np.asarray(signs, dtype=np.int64).tobytes()
        if key not in self._bits_lookup:
            raise ValueError("sign pattern is not a character value of H")
        return self._bits_lookup[key]

    def h_element(self, bits: Sequence[int]) -> TitsElement:
        """h_1^b1 h_2^b2 h_3^b3 h_4^b4, acting on e_s by (-1)^(sum b_i <s, r_i^vee>)."""
        if len(bits) != 4:
            raise ValueError("need four bits")
        return TitsElement(self, np.arange(48), self._signs_of_bits([b % 2 for b in bits]))

    def h(self, *simple: int) -> TitsElement:
        """Product h_i h_j ... of the named simple-root involutions."""
        bits = [0, 0, 0, 0]
        for i in simple:
            bits[i - 1] ^= 1
        return self.h_element(bits)

    def h_root(self, r: int) -> TitsElement:
        """h_r(-1) for an arbitrary root r."""
        return self.h_element([c % 2 for c in self.R.coroot(r)])

    def n(self, r: int) -> TitsElement:
        """n_r = x_r(1) x_-r(-1) x_r(1), restricted to the root vectors."""
        if r not in self._n_cache:
            self._n_cache[r] = self._build_n(r)
        return self._n_cache[r]

    def _build_n(self, r: int) -> TitsElement:
        R = self.R
        a, b = R.slot[r], R.slot[-r]
        Xp = _exp_nilpotent(_ad(R, a))
        Xm = _exp_nilpotent(-_ad(R, b))
        M = Xp.dot(Xm).dot(Xp)
        perm = np.empty(48, dtype=np.int64)
        signs = np.empty(48, dtype=np.int64)
        for s in range(48):
            col = M[:, s]
            nz = [i for i in range(52) if col[i] != 0]
            if len(nz) != 1 or nz[0] >= 48 or abs(col[nz[0]]) != 1:
                raise NonMonomialError(f"n_{r} is not monomial on e_{R.indices[s]}")
            perm[s] = nz[0]
            signs[s] = int(col[nz[0]])
        t = TitsElement(self, perm, signs)
        if not np.array_equal(perm, self.W.reflection_perms[abs(r)]):
            raise NonMonomialError(f"n_{r} does not induce w_{abs(r)}")
        return t

    def word(self, indices: Iterable[int]) -> TitsElement:
        """n_a n_b ... for a word of root indices (0 stands for n0)."""
        out = self.identity()
        for r in indices:
            out = out * (self.n0 if r == 0 else self.n(r))
        return out

    @cached_property
    def n0(self) -> TitsElement:
        """The reduced-word lift of the central involution w0.

        It equals h4 n21 n8 n6 n3; the bare product n21 n8 n6 n3 does not
        commute with n3 n2 n1, n2 n1 n16 or n16 n3 n2.
        """
        return self.canonical_lift(self.W.w0)

    def canonical_lift(self, w: WeylElement) -> TitsElement:
        return self.section[w.idx]

    @cached_property
    def section(self) -> list[TitsElement]:
        """Product of simple n_i along the BFS reduced word of each w."""
        out: list[TitsElement | None] = [None] * self.W.order
        out[0] = self.identity()
        simple = [self.n(i) for i in range(1, 5)]
        position = {word: idx for idx, word in enumerate(self.W.reduced_words)}
        for idx, word in enumerate(self.W.reduced_words):
            if idx == 0:
                continue
            parent = position[word[:-1]]
            out[idx] = out[parent] * simple[word[-1] - 1]
        return out  # type: ignore[return-value]

    def eta(self, s: int, r: int) -> int:
        """The sign with n_s n_r n_s^-1 = n_{w_s(r)}(eta) = n_{w_s(r)}^eta."""
        lhs = self.n(r).conj(self.n(s))
        t = self.W.reflection(s).act(r)
        base = self.n(t)
        if lhs == base:
            return 1
        if lhs == base.inverse():
            return -1
        raise AssertionError(f"n_{s} n_{r} n_{s}^-1 is not n_{t}^(+-1)")

    @cached_property
    def cocycle(self) -> np.ndarray:
        """cocycle[a, b] = 4-bit code of lift(a) lift(b) lift(ab)^-1 in H."""
        W = self.W
        P = np.array([t.perm for t in self.section])
        S = np.array([t.signs for t in self.section])
        table = W.table
        codes = np.zeros((W.order, W.order), dtype=np.int8)
        # simple-root slots determine an element of H
        simple_slots = [self.R.slot[i] for i in range(1, 5)]
        lookup = np.zeros(16, dtype=np.int8)
        for bits in product((0, 1), repeat=4):
            sg = self._signs_of_bits(bits)[simple_slots]
            lookup[_sign_code(sg)] = bits[0] | bits[1] << 1 | bits[2] << 2 | bits[3] << 3
        for a in range(W.order):
            comp_signs = S * S[a][P]  # signs of lift(a) lift(b), rows over b
            c = table[a]
            # lift(a)lift(b) = h lift(ab) => h_sign[perm_ab[s]] = comp_sign[s] * sign_ab[s]
            hs = comp_signs * S[c]
            # pick s with perm_ab[s] equal to each simple slot
            Pc = P[c]
            inv = np.argsort(Pc, axis=1)
            vals = np.take_along_axis(hs, inv[:, simple_slots], axis=1)
            codes[a] = lookup[_sign_code(vals)]
        return codes

    def closure(self, gens: Sequence[TitsElement], cap: int = 10**6) -> list[TitsElement]:
        seen = {self.identity().key: self.identity()}
        frontier = [self.identity()]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = x * g
                    if y.key not in seen:
                        seen[y.key] = y
                        nxt.append(y)
                        if len(seen) > cap:
                            raise RuntimeError("closure exceeded cap")
            frontier = nxt
        return list(seen.values())


def _sign_code(signs: np.ndarray) -> np.ndarray:
    bits = (np.asarray(signs) < 0).astype(np.int64)
    return bits[..., 0] | bits[..., 1] << 1 | bits[..., 2] << 2 | bits[..., 3] << 3


def bits_to_code(bits: Sequence[int]) -> int:
    return bits[0] | bits[1] << 1 | bits[2] << 2 | bits[3] << 3


def code_to_bits(code: int) -> tuple[int, int, int, int]:
    return (code & 1, code >> 1 & 1, code >> 2 & 1, code >> 3 & 1)


@lru_cache(maxsize=None)
def tits_group() -> TitsGroup:
    return TitsGroup()


def build_n_generator(r: int) -> TitsElement:
    return tits_group().n(r)


def h_element(bits: Sequence[int]) -> TitsElement:
    return tits_group().h_element(bits)


def canonical_lift(w: WeylElement) -> TitsElement:
    return tits_group().canonical_lift(w)


def eta(s: int, r: int) -> int:
    return tits_group().eta(s, r)
