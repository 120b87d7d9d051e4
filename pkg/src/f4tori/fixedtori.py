"""Concrete maximal tori T = H^{sigma n} and their normalizers over F_{q^k}.

A torus element H = h_1(l1) h_2(l2) h_3(l3) h_4(l4) is stored as the vector of
discrete logs of (l1, l2, l3, l4) modulo Q = q^k - 1.  Conjugation by a lift
of w acts on that vector by the exponent matrix B(w), and sigma multiplies
it by q, so T is the kernel of (q B(w) - I) modulo Q.

Normalizer elements are written H * s(u) with s the reduced-word section of
W into the Tits group; products pick up the section cocycle
s(a) s(b) = c(a, b) s(ab) with c(a, b) in the elementary abelian group of
the h_i = h_i(-1).
"""
from __future__ import annotations

from functools import cached_property, reduce
from itertools import product
from math import gcd, lcm
from typing import Iterable, Sequence

import numpy as np

from .extweyl import TitsElement, TitsGroup, code_to_bits, tits_group
from .gfq import GF, make_field
from .smith import UnsolvableError, kernel_mod, smith_normal_form
from .weylgrp import Subgroup, WeylElement, exponent_matrix

Vec = tuple[int, int, int, int]


class NotInNormalizer(ValueError):
    pass


class TwistedTorus:
    """The torus T fixed by sigma composed with conjugation by the Tits element n.

    ``k`` defaults to the order of w; the invariant factors of q B - I then
    divide Q = q^k - 1, so T is realized inside (F_{q^k}^*)^4.
    """

    def __init__(self, n: TitsElement, q: int, k: int | None = None, field: GF | None = None):
        self.n = n
        self.tits: TitsGroup = n.group
        self.W = self.tits.W
        self.w: WeylElement = n.weyl_part
        self.q = q
        if field is None:
            field = make_field(q, k if k is not None else self.w.order)
        self.field = field
        self.Q = field.Q
        if (field.k % self.w.order) != 0:
            raise ValueError(f"field degree {field.k} is not a multiple of |w| = {self.w.order}")
        self.B = self.w.B
        self.M = q * self.B - np.eye(4, dtype=np.int64)
        self.factors, self.basis = kernel_mod(self.M, self.Q)
        self.order = reduce(lambda a, b: a * b, self.factors, 1)
        self._B_cache: dict[int, np.ndarray] = {}
        self.n_element = self.from_tits(n)

    # -- helpers -------------------------------------------------------------
    def B_of(self, widx: int) -> np.ndarray:
        B = self._B_cache.get(widx)
        if B is None:
            B = exponent_matrix(self.W.element(widx)).astype(object)
            self._B_cache[widx] = B
        return B

    def bits_log(self, bits: Sequence[int]) -> Vec:
        h = self.Q // 2
        return tuple(int(b) * h % self.Q for b in bits)  # type: ignore[return-value]

    def reduce(self, v: Iterable[int]) -> Vec:
        return tuple(int(a) % self.Q for a in v)  # type: ignore[return-value]

    def contains_torus(self, x: Sequence[int]) -> bool:
        """H in T iff (q B - I) x = 0 mod Q."""
        return all(int(v) % self.Q == 0 for v in self.M.astype(object).dot(np.array(x, dtype=object)))

    def torus_order(self, x: Sequence[int]) -> int:
        return lcm(*[self.Q // gcd(int(v) % self.Q, self.Q) for v in x])

    # -- elements --------------------------------------------------------------
    def element(self, x: Sequence[int], u: WeylElement | int = 0) -> "NormalizerElement":
        widx = u.idx if isinstance(u, WeylElement) else int(u)
        return NormalizerElement(self, self.reduce(x), widx)

    def identity(self) -> "NormalizerElement":
        return self.element((0, 0, 0, 0), 0)

    def from_tits(self, t: TitsElement, prefix: Sequence[int] = (0, 0, 0, 0)) -> "NormalizerElement":
        """The element H * t where H has log vector ``prefix``."""
        u = t.weyl_part
        h = t * self.tits.canonical_lift(u).inverse()
        hx = self.bits_log(h.h_bits)
        return self.element([a + b for a, b in zip(prefix, hx)], u)

    def sigma(self, y: "NormalizerElement") -> "NormalizerElement":
        return NormalizerElement(self, self.reduce(self.q * a for a in y.x), y.widx)

    def twisted_frobenius(self, y: "NormalizerElement") -> "NormalizerElement":
        """n sigma(y) n^-1."""
        return self.n_element * self.sigma(y) * self.n_element.inverse()

    def is_fixed(self, y: "NormalizerElement") -> bool:
        return self.twisted_frobenius(y) == y

    def commutator_log(self, u: TitsElement) -> Vec:
        """Log vector of [n, u] = n u n^-1 u^-1, which must lie in H."""
        c = self.n * u * self.n.inverse() * u.inverse()
        if not c.is_torus():
            raise NotInNormalizer("w does not commute with the Weyl image of u")
        return self.bits_log(c.h_bits)

    def lemma1_member(self, x: Sequence[int], u: TitsElement) -> bool:
        """H u lies in the normalizer iff q B x + log [n, u] = x (mod Q)."""
        try:
            c = self.commutator_log(u)
        except NotInNormalizer:
            return False
        lhs = self.M.astype(object).dot(np.array(x, dtype=object))
        return all((int(a) + b) % self.Q == 0 for a, b in zip(lhs, c))

    def coset_element(self, u: TitsElement | WeylElement) -> "NormalizerElement":
        """Some H with H u in the normalizer (u is a Tits element or, via the
        section, a Weyl element).  Raises UnsolvableError if the coset T u
        does not meet the normalizer over this field."""
        if isinstance(u, WeylElement):
            u = self.tits.canonical_lift(u)
        c = self.commutator_log(u)
        x = self.solve([-v for v in c])
        return self.from_tits(u, x)

    # -- the group T -------------------------------------------------------------
    def coords(self, x: Sequence[int]) -> list[int]:
        """Coefficients of x in the basis of T (inverse of :meth:`combine`)."""
        # basis vectors are V[:, i] * Q / d_i; solve through V^-1 from the SNF
        D, Vinv = self._snf_inverse
        y = Vinv.dot(np.array([int(v) for v in x], dtype=object))
        out = []
        j = 0
        for i in range(4):
            d = int(D[i, i])
            yi = int(y[i]) % self.Q
            if d == 1:
                if yi:
                    raise ValueError("vector does not lie in T")
                continue
            step = self.Q // d
            if yi % step:
                raise ValueError("vector does not lie in T")
            out.append(yi // step)
            j += 1
        return out

    @cached_property
    def _snf(self):
        return smith_normal_form(self.M)

    @cached_property
    def _snf_inverse(self):
        D, _, V = self._snf
        return D, _inverse_unimodular(V)

    def solve(self, b: Sequence[int]) -> list[int]:
        """One x with (q B - I) x = b (mod Q); UnsolvableError if none."""
        D, U, V = self._snf
        c = U.dot(np.array([int(v) for v in b], dtype=object))
        y = []
        for i in range(4):
            d = int(D[i, i]) % self.Q
            ci = int(c[i]) % self.Q
            g = gcd(d, self.Q)
            if ci % g:
                raise UnsolvableError(f"no solution mod {self.Q}")
            y.append((ci // g) * pow(d // g, -1, self.Q // g) % (self.Q // g))
        return [int(v) % self.Q for v in V.dot(np.array(y, dtype=object))]

    def combine(self, coeffs: Sequence[int]) -> Vec:
        v = [0, 0, 0, 0]
        for c, g in zip(coeffs, self.basis):
            for i in range(4):
                v[i] += c * g[i]
        return self.reduce(v)

    def elements(self) -> np.ndarray:
        """All of T as an (|T|, 4) array of log vectors."""
        if not self.factors:
            return np.zeros((1, 4), dtype=object if self.Q > 2**62 else np.int64)
        dtype = object if self.Q * max(self.factors) > 2**62 else np.int64
        grids = np.meshgrid(*[np.arange(d, dtype=np.int64) for d in self.factors], indexing="ij")
        K = np.stack([g.ravel() for g in grids], axis=1).astype(dtype)
        G = np.array(self.basis, dtype=dtype)
        return (K.dot(G)) % self.Q

    def structure(self) -> list[int]:
        return list(self.factors)


class NormalizerElement:
    """H s(u) with H given by logs x and u by its index in W."""

    __slots__ = ("torus", "x", "widx")

    def __init__(self, torus: TwistedTorus, x: Vec, widx: int):
        self.torus = torus
        self.x = x
        self.widx = widx

    @property
    def weyl_part(self) -> WeylElement:
        return self.torus.W.element(self.widx)

    def __mul__(self, other: "NormalizerElement") -> "NormalizerElement":
        T = self.torus
        B = T.B_of(self.widx)
        code = int(T.tits.cocycle[self.widx, other.widx])
        c = T.bits_log(code_to_bits(code))
        bx = B.dot(np.array(other.x, dtype=object))
        x = tuple((self.x[i] + int(bx[i]) + c[i]) % T.Q for i in range(4))
        return NormalizerElement(T, x, int(T.W.table[self.widx, other.widx]))

    def inverse(self) -> "NormalizerElement":
        T = self.torus
        winv = int(T.W.inverses[self.widx])
        code = int(T.tits.cocycle[self.widx, winv])
        c = T.bits_log(code_to_bits(code))
        v = T.B_of(winv).dot(np.array([-(a + b) for a, b in zip(self.x, c)], dtype=object))
        return NormalizerElement(T, T.reduce(v), winv)

    def __pow__(self, m: int) -> "NormalizerElement":
        base = self if m >= 0 else self.inverse()
        out = self.torus.identity()
        m = abs(m)
        while m:
            if m & 1:
                out = out * base
            base = base * base
            m >>= 1
        return out

    def conj(self, by: "NormalizerElement") -> "NormalizerElement":
        return by * self * by.inverse()

    def __eq__(self, other) -> bool:
        return isinstance(other, NormalizerElement) and self.widx == other.widx and self.x == other.x

    def __hash__(self) -> int:
        return hash((self.x, self.widx))

    def is_torus(self) -> bool:
        return self.widx == 0

    def order(self) -> int:
        m = self.weyl_part.order
        return m * self.torus.torus_order((self ** m).x)

    def __repr__(self) -> str:
        return f"NormalizerElement(x={self.x}, w={list(self.weyl_part.word)})"


def _inverse_unimodular(V: np.ndarray) -> np.ndarray:
    import sympy

    inv = sympy.Matrix(V.tolist()).inv()
    return np.array([[int(v) for v in row] for row in inv.tolist()], dtype=object)


# -- module-level API -----------------------------------------------------------

def fixed_torus(n: TitsElement, q: int, k: int | None = None) -> TwistedTorus:
    return TwistedTorus(n, q, k)


def lemma1_member(torus: TwistedTorus, x: Sequence[int], u: TitsElement) -> bool:
    return torus.lemma1_member(x, u)


def element_order(y: NormalizerElement) -> int:
    return y.order()


def coset_degree(n: TitsElement, q: int, centralizer: Subgroup | None = None) -> int:
    """Smallest k in {|w|, 2|w|} over which every coset of C_W(w) meets the
    normalizer.  The equations always become solvable after one doubling."""
    w = n.weyl_part
    C = centralizer or w.group.centralizer(w)
    for k in (w.order, 2 * w.order):
        T = TwistedTorus(n, q, k)
        try:
            for u in C.elements():
                T.coset_element(u)
        except UnsolvableError:
            continue
        return k
    raise UnsolvableError("coset equations unsolvable even after doubling the degree")


def normalizer_order(torus: TwistedTorus) -> int:
    """|T| times the number of Weyl elements u whose coset meets the normalizer."""
    count = 0
    for i in range(torus.W.order):
        u = torus.tits.section[i]
        try:
            torus.coset_element(u)
        except (UnsolvableError, NotInNormalizer):
            continue
        count += 1
    return torus.order * count


def normalizer_fixed(n: TitsElement, q: int, k: int | None = None) -> TwistedTorus:
    """Torus handle with its normalizer arithmetic; k defaults to coset_degree."""
    if k is None:
        k = coset_degree(n, q)
    return TwistedTorus(n, q, k)


__all__ = [
    "TwistedTorus",
    "NormalizerElement",
    "NotInNormalizer",
    "UnsolvableError",
    "fixed_torus",
    "lemma1_member",
    "element_order",
    "coset_degree",
    "normalizer_order",
    "normalizer_fixed",
]
