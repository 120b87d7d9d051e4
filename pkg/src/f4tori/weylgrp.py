"""The Weyl group W(F4) as 1152 permutations of the 48 roots.

Elements are stored once in a :class:`WeylGroup` table and addressed by an
integer index; :class:`WeylElement` is a thin handle around that index.
Products follow composition of maps: ``from_word([3, 2])`` is w3 after w2.
"""
from __future__ import annotations

from collections import Counter
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np
import sympy

from .rootsys import RootSystemF4, enumerate_roots

D = np.diag([1, 1, 2, 2]).astype(np.int64)


class WeylGroup:
    def __init__(self, R: RootSystemF4 | None = None):
        self.R = R or enumerate_roots()
        R = self.R
        slot = R.slot
        self.reflection_perms = {}
        for r in range(1, 25):
            self.reflection_perms[r] = np.array([slot[R.reflect(r, s).index] for s in R.indices], dtype=np.int64)

        ident = np.arange(48, dtype=np.int64)
        gens = [self.reflection_perms[i] for i in range(1, 5)]
        seen = {ident.tobytes(): 0}
        perms = [ident]
        words: list[tuple[int, ...]] = [()]
        k = 0
        # BFS from the identity: words are reduced in the simple reflections
        while k < len(perms):
            p = perms[k]
            for i, g in enumerate(gens, start=1):
                q = p[g]  # p o w_i
                key = q.tobytes()
                if key not in seen:
                    seen[key] = len(perms)
                    perms.append(q)
                    words.append(words[k] + (i,))
            k += 1
        self.perms = np.array(perms)
        self.reduced_words = words
        self.order = len(perms)
        self._lookup = np.full(48**4, -1, dtype=np.int32)
        self._lookup[self._key(self.perms[:, :4])] = np.arange(self.order)
        # matrices: column j is the image of r_j
        coeffs = np.array([R.root(i).coeffs for i in R.indices], dtype=np.int64)
        self.matrices = np.transpose(coeffs[self.perms[:, :4]], (0, 2, 1)).copy()

    @staticmethod
    def _key(images: np.ndarray) -> np.ndarray:
        images = np.asarray(images, dtype=np.int64)
        return images[..., 0] + 48 * images[..., 1] + 48**2 * images[..., 2] + 48**3 * images[..., 3]

    def index_of_perm(self, perm: np.ndarray) -> int:
        i = int(self._lookup[self._key(np.asarray(perm)[:4])])
        if i < 0 or not np.array_equal(self.perms[i], perm):
            raise ValueError("permutation is not an element of W(F4)")
        return i

    @cached_property
    def table(self) -> np.ndarray:
        """table[a, b] = index of a*b."""
        comp = self.perms[:, self.perms[:, :4]]  # [a, b, k] = perm_a[perm_b[k]]
        return self._lookup[self._key(comp)].astype(np.int32)

    @cached_property
    def inverses(self) -> np.ndarray:
        return np.argmax(self.table == 0, axis=1).astype(np.int32)

    @cached_property
    def orders(self) -> np.ndarray:
        out = np.ones(self.order, dtype=np.int64)
        cur = np.arange(self.order)
        while True:
            todo = cur != 0
            if not todo.any():
                return out
            cur = np.where(todo, self.table[cur, np.arange(self.order)], 0)
            out += todo

    def element(self, idx: int) -> "WeylElement":
        return WeylElement(self, int(idx))

    def identity(self) -> "WeylElement":
        return WeylElement(self, 0)

    def reflection(self, r: int) -> "WeylElement":
        if not 1 <= abs(r) <= 24:
            raise ValueError(f"root index out of range: {r}")
        return WeylElement(self, self.index_of_perm(self.reflection_perms[abs(r)]))

    def from_word(self, indices: Iterable[int]) -> "WeylElement":
        w = self.identity()
        for r in indices:
            w = w * self.reflection(r)
        return w

    def from_matrix(self, A) -> "WeylElement":
        A = np.asarray(A, dtype=np.int64)
        R = self.R
        images = [R.slot[R.index_of(A[:, j])] for j in range(4)]
        i = int(self._lookup[self._key(np.array(images))])
        if i < 0:
            raise ValueError("matrix does not belong to W(F4)")
        return self.element(i)

    @cached_property
    def w0(self) -> "WeylElement":
        return self.from_matrix(-np.eye(4, dtype=np.int64))

    # -- classes -----------------------------------------------------------
    def conjugates(self, x: int) -> np.ndarray:
        """Array of g x g^-1 over all g."""
        return self.table[self.table[:, x], self.inverses]

    @cached_property
    def class_of(self) -> np.ndarray:
        cls = np.full(self.order, -1, dtype=np.int32)
        n = 0
        for x in range(self.order):
            if cls[x] < 0:
                cls[self.conjugates(x)] = n
                n += 1
        return cls

    def conjugacy_classes(self) -> list[dict]:
        """One entry per class: representative (first in BFS order), size, members."""
        out = []
        for c in range(int(self.class_of.max()) + 1):
            members = np.flatnonzero(self.class_of == c)
            out.append({"rep": self.element(members[0]), "size": len(members), "members": members})
        return out

    def are_conjugate(self, a: "WeylElement", b: "WeylElement") -> bool:
        return bool(self.class_of[a.idx] == self.class_of[b.idx])

    def conjugator(self, a: "WeylElement", b: "WeylElement") -> "WeylElement | None":
        """Some g with g a g^-1 = b, or None."""
        hits = np.flatnonzero(self.conjugates(a.idx) == b.idx)
        return self.element(hits[0]) if len(hits) else None

    def centralizer(self, w: "WeylElement") -> "Subgroup":
        t = self.table
        members = np.flatnonzero(t[:, w.idx] == t[w.idx, :])
        return Subgroup(self, members)

    def generate(self, gens: Sequence["WeylElement"]) -> "Subgroup":
        elems = {0}
        frontier = [0]
        g_idx = [g.idx for g in gens]
        while frontier:
            nxt = []
            for x in frontier:
                for g in g_idx:
                    y = int(self.table[x, g])
                    if y not in elems:
                        elems.add(y)
                        nxt.append(y)
            frontier = nxt
        return Subgroup(self, np.array(sorted(elems)))


class WeylElement:
    __slots__ = ("group", "idx")

    def __init__(self, group: WeylGroup, idx: int):
        self.group = group
        self.idx = idx

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return WeylElement(self.group, int(self.group.table[self.idx, other.idx]))

    def __pow__(self, m: int) -> "WeylElement":
        base = self if m >= 0 else self.inverse()
        out = self.group.identity()
        for _ in range(abs(m)):
            out = out * base
        return out

    def inverse(self) -> "WeylElement":
        return WeylElement(self.group, int(self.group.inverses[self.idx]))

    def conj(self, by: "WeylElement") -> "WeylElement":
        """by * self * by^-1."""
        return by * self * by.inverse()

    def __eq__(self, other) -> bool:
        return isinstance(other, WeylElement) and other.idx == self.idx

    def __hash__(self) -> int:
        return hash(("W", self.idx))

    def __repr__(self) -> str:
        return f"WeylElement({self.idx}, word={list(self.word)})"

    @property
    def A(self) -> np.ndarray:
        return self.group.matrices[self.idx]

    @property
    def B(self) -> np.ndarray:
        return exponent_matrix(self)

    @property
    def perm(self) -> np.ndarray:
        return self.group.perms[self.idx]

    @property
    def word(self) -> tuple[int, ...]:
        """A reduced word in the simple reflections."""
        return self.group.reduced_words[self.idx]

    @property
    def order(self) -> int:
        return int(self.group.orders[self.idx])

    def act(self, r: int) -> int:
        """Signed index of w(r)."""
        R = self.group.R
        return R.indices[self.perm[R.slot[r]]]


class Subgroup:
    def __init__(self, group: WeylGroup, members):
        self.group = group
        self.members = np.asarray(members, dtype=np.int64)
        self._set = set(int(x) for x in self.members)

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, w: WeylElement) -> bool:
        return w.idx in self._set

    def elements(self) -> list[WeylElement]:
        return [self.group.element(i) for i in self.members]

    def is_abelian(self) -> bool:
        t = self.group.table
        m = self.members
        return bool(np.array_equal(t[np.ix_(m, m)], t[np.ix_(m, m)].T))

    def generators(self) -> list[WeylElement]:
        """A small generating set found greedily (fewest-first search for size <= 2)."""
        members = [int(x) for x in self.members]
        if self.order == 1:
            return []
        for x in members:
            if self.group.generate([self.group.element(x)]).order == self.order:
                return [self.group.element(x)]
        for i, x in enumerate(members):
            for y in members[i + 1 :]:
                if self.group.generate([self.group.element(x), self.group.element(y)]).order == self.order:
                    return [self.group.element(x), self.group.element(y)]
        # greedy fallback: add the element enlarging the span most
        gens: list[WeylElement] = []
        span = {0}
        while len(span) < self.order:
            best = max(members, key=lambda z: 0 if z in span else self.group.generate(gens + [self.group.element(z)]).order)
            gens.append(self.group.element(best))
            span = set(int(v) for v in self.group.generate(gens).members)
        return gens

    def derived_subgroup(self) -> "Subgroup":
        t, inv = self.group.table, self.group.inverses
        comms = set()
        for a in self.members:
            for b in self.members:
                comms.add(int(t[t[a, b], t[inv[a], inv[b]]]))
        return self.group.generate([self.group.element(c) for c in comms])

    def abelian_invariants(self) -> list[int]:
        """Invariants of the abelianization, as prime powers sorted ascending."""
        derived = self.derived_subgroup()
        dset = derived._set
        t = self.group.table
        # coset label: smallest member of x * derived
        label = {}
        for x in self.members:
            if int(x) in label:
                continue
            coset = [int(t[x, d]) for d in derived.members]
            lab = min(coset)
            for c in coset:
                label[c] = lab
        reps = sorted(set(label.values()))
        n = len(reps)
        if n == 1:
            return []

        def qorder(x: int) -> int:
            k, y = 1, x
            while y not in dset:
                y = int(t[y, x])
                k += 1
            return k

        orders = Counter(qorder(x) for x in reps)
        out: list[int] = []
        for p, e in sympy.factorint(n).items():
            # count elements whose order divides p^k, for k = 1..e
            counts = [sum(c for o, c in orders.items() if (p**k) % o == 0 and _is_p_power(o, p)) for k in range(e + 1)]
            # number of cyclic factors of order >= p^k is log_p(counts[k]/counts[k-1])
            ge = []
            for k in range(1, e + 1):
                ratio = counts[k] // counts[k - 1]
                ge.append(_ilog(ratio, p))
            for k in range(1, e + 1):
                exact = ge[k - 1] - (ge[k] if k < e else 0)
                out += [p**k] * exact
        return sorted(out)


def _is_p_power(o: int, p: int) -> bool:
    while o % p == 0:
        o //= p
    return o == 1


def _ilog(x: int, p: int) -> int:
    k = 0
    while x > 1:
        assert x % p == 0
        x //= p
        k += 1
    return k


@lru_cache(maxsize=None)
def weyl_group() -> WeylGroup:
    return WeylGroup()


def from_word(indices: Iterable[int]) -> WeylElement:
    return weyl_group().from_word(indices)


def exponent_matrix(w: WeylElement) -> np.ndarray:
    """B = D^-1 A D with D = diag(1, 1, 2, 2): the action on torus coordinates."""
    A = w.A
    num = A @ D
    B = num // np.diag(D)[:, None]
    if not np.array_equal(B * np.diag(D)[:, None], num):
        raise ArithmeticError("non-integral exponent matrix")
    return B


def conjugacy_classes() -> list[dict]:
    return weyl_group().conjugacy_classes()


def centralizer(w: WeylElement) -> Subgroup:
    return weyl_group().centralizer(w)


__all__ = [
    "WeylGroup",
    "WeylElement",
    "Subgroup",
    "weyl_group",
    "from_word",
    "exponent_matrix",
    "conjugacy_classes",
    "centralizer",
]
