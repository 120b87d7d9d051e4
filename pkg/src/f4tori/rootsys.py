"""The F4 root system, its numbering, the ordering of positive roots and the
Chevalley structure constants with "+" at every extraspecial pair.

Roots are addressed by signed index: ``1..24`` are the positive roots,
``-i`` is the negative of root ``i``.  Coefficients are taken over the
fundamental roots r1..r4 with r1, r2 long and r3, r4 short
(Dynkin diagram r1 - r2 => r3 - r4).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable

import numpy as np

# twice the Gram matrix of the fundamental roots, so that all entries are integers
GRAM2 = np.array(
    [
        [4, -2, 0, 0],
        [-2, 4, -2, 0],
        [0, -2, 2, -1],
        [0, 0, -1, 2],
    ],
    dtype=np.int64,
)

# (index, coefficient vector) pairs the numbering must reproduce
ANCHORS = {8: (1, 1, 1, 0), 16: (0, 1, 2, 2), 21: (1, 2, 3, 2)}


class RootSystemError(RuntimeError):
    """Raised when the constructed data violates a structural check."""


def _ip2(a, b) -> int:
    """Twice the inner product of two coefficient vectors."""
    return int(np.asarray(a) @ GRAM2 @ np.asarray(b))


@dataclass(frozen=True)
class Root:
    index: int
    coeffs: tuple[int, int, int, int]
    length: str  # "long" or "short"

    @property
    def height(self) -> int:
        return sum(self.coeffs)

    @property
    def positive(self) -> bool:
        return self.index > 0

    def __repr__(self) -> str:
        return f"r{self.index}{self.coeffs}"


def precede(r: Root | Iterable[int], s: Root | Iterable[int]) -> bool:
    """True iff ``r`` comes strictly before ``s`` in the height-then-lex order."""
    a = r.coeffs if isinstance(r, Root) else tuple(r)
    b = s.coeffs if isinstance(s, Root) else tuple(s)
    ha, hb = sum(a), sum(b)
    if ha != hb:
        return ha < hb
    for x, y in zip(a, b):
        if x != y:
            return y - x > 0
    return False


def _close_positive_roots() -> list[tuple[int, ...]]:
    simple = [tuple(int(i == j) for j in range(4)) for i in range(4)]
    found = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for s in frontier:
            for i in range(4):
                ri = simple[i]
                # <s, ri^vee> = 2 (s, ri) / (ri, ri)
                k = Fraction(2 * _ip2(s, ri), _ip2(ri, ri))
                assert k.denominator == 1
                t = tuple(a - int(k) * b for a, b in zip(s, ri))
                if all(c >= 0 for c in t) and any(t) and t not in found:
                    found.add(t)
                    nxt.append(t)
        frontier = nxt
    return sorted(found, key=lambda c: (sum(c), tuple(-x for x in c)))


class RootSystemF4:
    """Immutable container for the 48 roots and everything derived from them."""

    def __init__(self):
        positive = _close_positive_roots()
        if len(positive) != 24:
            raise RootSystemError(f"expected 24 positive roots, got {len(positive)}")
        for idx, coeffs in ANCHORS.items():
            if positive[idx - 1] != coeffs:
                raise RootSystemError(
                    f"numbering anchor violated: root {idx} is {positive[idx - 1]}, expected {coeffs}"
                )
        roots: dict[int, Root] = {}
        for i, c in enumerate(positive, start=1):
            length = "long" if _ip2(c, c) == 4 else "short"
            roots[i] = Root(i, c, length)
            roots[-i] = Root(-i, tuple(-x for x in c), length)
        self._roots = roots
        self._by_coeffs = {r.coeffs: r.index for r in roots.values()}
        self.cartan = np.array(
            [[2 * _ip2(positive[i], positive[j]) // _ip2(positive[i], positive[i]) for j in range(4)] for i in range(4)],
            dtype=np.int64,
        )  # cartan[i, j] = <r_j, r_i^vee>

    # -- lookup -----------------------------------------------------------
    def root(self, key) -> Root:
        if isinstance(key, Root):
            return key
        if isinstance(key, (int, np.integer)):
            if int(key) not in self._roots:
                raise KeyError(f"no root with index {key}")
            return self._roots[int(key)]
        coeffs = tuple(int(x) for x in key)
        if coeffs not in self._by_coeffs:
            raise KeyError(f"{coeffs} is not a root")
        return self._roots[self._by_coeffs[coeffs]]

    def index_of(self, coeffs) -> int | None:
        return self._by_coeffs.get(tuple(int(x) for x in coeffs))

    def is_root(self, coeffs) -> bool:
        return tuple(int(x) for x in coeffs) in self._by_coeffs

    @property
    def roots(self) -> list[Root]:
        return [self._roots[i] for i in self.indices]

    @property
    def positive_roots(self) -> list[Root]:
        return [self._roots[i] for i in range(1, 25)]

    @cached_property
    def indices(self) -> list[int]:
        """Signed root indices in storage order: 1..24 then -1..-24."""
        return list(range(1, 25)) + [-i for i in range(1, 25)]

    @cached_property
    def slot(self) -> dict[int, int]:
        """Map signed index -> position 0..47 in :attr:`indices`."""
        return {idx: k for k, idx in enumerate(self.indices)}

    # -- geometry ---------------------------------------------------------
    def pairing(self, s, r) -> int:
        """<s, r^vee> = 2 (s, r) / (r, r)."""
        a, b = self.root(s).coeffs, self.root(r).coeffs
        v = Fraction(2 * _ip2(a, b), _ip2(b, b))
        assert v.denominator == 1
        return int(v)

    def norm2(self, r) -> int:
        """Twice the squared length: 4 for long roots, 2 for short ones."""
        c = self.root(r).coeffs
        return _ip2(c, c)

    def coroot(self, r) -> tuple[int, int, int, int]:
        """Coordinates of r^vee over the simple coroots r_1^vee..r_4^vee."""
        c = self.root(r).coeffs
        n = self.norm2(r)
        out = []
        for i in range(4):
            v = Fraction(c[i] * _ip2(self._roots[i + 1].coeffs, self._roots[i + 1].coeffs), n)
            assert v.denominator == 1
            out.append(int(v))
        return tuple(out)

    def reflect(self, r, s) -> Root:
        """w_r(s) = s - <s, r^vee> r."""
        rr, ss = self.root(r), self.root(s)
        k = self.pairing(ss, rr)
        return self.root(tuple(a - k * b for a, b in zip(ss.coeffs, rr.coeffs)))

    def reflection_matrix(self, r) -> np.ndarray:
        """Integer matrix A of w_r with w_r(r_j) = sum_i A[i, j] r_i."""
        A = np.zeros((4, 4), dtype=np.int64)
        for j in range(4):
            A[:, j] = self.reflect(r, j + 1).coeffs
        return A

    def add(self, r, s) -> int | None:
        """Index of r + s if it is a root, else None."""
        a, b = self.root(r).coeffs, self.root(s).coeffs
        return self.index_of(tuple(x + y for x, y in zip(a, b)))

    def string_down(self, r, s) -> int:
        """Largest p with s - p r a root (p = 0 if s - r is not)."""
        a, b = self.root(r).coeffs, self.root(s).coeffs
        p = 0
        while self.is_root(tuple(y - (p + 1) * x for x, y in zip(a, b))):
            p += 1
        return p

    # -- pairs ------------------------------------------------------------
    @cached_property
    def special_pairs(self) -> list[tuple[int, int]]:
        out = []
        for r in self.positive_roots:
            for s in self.positive_roots:
                if precede(r, s) and self.add(r, s) is not None:
                    out.append((r.index, s.index))
        return out

    @cached_property
    def extraspecial_pairs(self) -> dict[int, tuple[int, int]]:
        """Map positive root t (height >= 2) -> its extraspecial pair (r, s)."""
        best: dict[int, tuple[int, int]] = {}
        for r, s in self.special_pairs:
            t = self.add(r, s)
            if t not in best or precede(self._roots[r], self._roots[best[t][0]]):
                best[t] = (r, s)
        return dict(sorted(best.items()))

    # -- structure constants ---------------------------------------------
    @cached_property
    def nconst(self) -> dict[tuple[int, int], int]:
        """N_{r,s} for every ordered pair of roots with r + s a root."""
        return _structure_constants(self)

    def N(self, r, s) -> int:
        r, s = self.root(r).index, self.root(s).index
        return self.nconst.get((r, s), 0)

    @cached_property
    def bracket_tensor(self) -> np.ndarray:
        """Structure tensor C[a, b, c] of the 52-dim Chevalley basis.

        Basis order: e_r for r in :attr:`indices` (slots 0..47), then the
        simple coroot elements h_1..h_4 (slots 48..51).  ``[x_a, x_b] =
        sum_c C[a, b, c] x_c``.
        """
        C = np.zeros((52, 52, 52), dtype=np.int64)
        slot = self.slot
        for r in self.indices:
            a = slot[r]
            for s in self.indices:
                b = slot[s]
                if s == -r:
                    for i, c in enumerate(self.coroot(r)):
                        C[a, b, 48 + i] = c
                    continue
                t = self.add(r, s)
                if t is not None:
                    C[a, b, slot[t]] = self.nconst[(r, s)]
            for i in range(4):
                k = self.pairing(r, i + 1)
                C[48 + i, a, a] = k
                C[a, 48 + i, a] = -k
        return C

    def jacobi_defect(self) -> int:
        """Sum of |entries| of [x,[y,z]] + [y,[z,x]] + [z,[x,y]] over all basis triples."""
        C = self.bracket_tensor
        # [y, z] = C[y, z, d] x_d ; [x, x_d] = C[x, d, e] x_e
        J = np.einsum("yzd,xde->xyze", C, C)
        J = J + np.transpose(J, (2, 0, 1, 3)) + np.transpose(J, (1, 2, 0, 3))
        return int(np.abs(J).sum())


def _structure_constants(R: RootSystemF4) -> dict[tuple[int, int], int]:
    """Propagate N_{r,s} from the extraspecial signs, height by height.

    Uses the standard identities of a Chevalley basis: antisymmetry,
    N_{-r,-s} = -N_{r,s}, the cyclic rule N_{r,s}/(t,t) = N_{s,t}/(r,r) =
    N_{t,r}/(s,s) for r+s+t = 0, and the four-root rule for r+s+t+u = 0.
    """
    N: dict[tuple[int, int], int] = {}
    norm = R.norm2

    def pos(r: int, s: int) -> int:
        # r, s positive with r + s a root
        if (r, s) in N:
            return N[(r, s)]
        if (s, r) in N:
            return -N[(s, r)]
        raise RootSystemError(f"N_{{{r},{s}}} requested before it was determined")

    def mixed(a: int, b: int) -> int:
        # N_{a,-b} for positive a, b; 0 unless a - b is a root
        d = R.index_of(tuple(x - y for x, y in zip(R.root(a).coeffs, R.root(b).coeffs)))
        if d is None:
            return 0
        if d > 0:  # a = b + d
            v = Fraction(-norm(d) * pos(b, d), norm(a))
        else:  # b = a + |d|
            d = -d
            v = Fraction(norm(d) * pos(d, a), norm(b))
        assert v.denominator == 1
        return int(v)

    def general(r: int, s: int) -> int:
        if r > 0 and s > 0:
            return pos(r, s)
        if r < 0 and s < 0:
            return -pos(-r, -s)
        if r > 0:
            return mixed(r, -s)
        return -mixed(s, -r)

    by_height = sorted(R.extraspecial_pairs, key=lambda t: R.root(t).height)
    for t in by_height:
        xi, zeta = R.extraspecial_pairs[t]
        N[(xi, zeta)] = R.string_down(xi, zeta) + 1
        for r, s in R.special_pairs:
            if R.add(r, s) != t or (r, s) == (xi, zeta):
                continue
            total = Fraction(0)
            # four-root rule on (r, s, -xi, -zeta)
            if R.add(s, -xi) is not None:
                total += Fraction(general(s, -xi) * general(r, -zeta), norm(R.add(s, -xi)))
            if R.add(-xi, r) is not None:
                total += Fraction(general(-xi, r) * general(s, -zeta), norm(R.add(-xi, r)))
            v = total * norm(t) / N[(xi, zeta)]
            if v.denominator != 1 or abs(v) != R.string_down(r, s) + 1:
                raise RootSystemError(f"propagation inconsistency at ({r},{s}): {v}")
            N[(r, s)] = int(v)

    full: dict[tuple[int, int], int] = {}
    for r in R.indices:
        for s in R.indices:
            if s != -r and R.add(r, s) is not None:
                full[(r, s)] = general(r, s)
    return full


@lru_cache(maxsize=None)
def enumerate_roots() -> RootSystemF4:
    """The shared F4 root system (built once)."""
    return RootSystemF4()


def extraspecial_pairs() -> list[tuple[Root, Root]]:
    R = enumerate_roots()
    return [(R.root(r), R.root(s)) for r, s in R.extraspecial_pairs.values()]


def structure_constants() -> dict[tuple[int, int], int]:
    return enumerate_roots().nconst
