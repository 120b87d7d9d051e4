"""Supplements to T in its normalizer: exact intersection orders and the
exhaustive minimal-supplement oracle.

For generators y_1..y_k of M with Weyl images x_1..x_k, the image pi(M) is
closed in W and a BFS transversal r(c) over it (products of the y_i) gives,
by Schreier's lemma, generators r(c) y_i r(c x_i)^-1 of M n T.  Those all lie
in the torus, so M n T is a subgroup of the finite abelian group T whose order
comes from a Smith normal form.

For the oracle the lifts are y_i = t_i z_i with t_i ranging over T and z_i a
fixed coset element; every Schreier generator is then an affine function of
(t_1, ..., t_k), which lets whole batches of tuples be evaluated with numpy.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Sequence

import numpy as np

from .extweyl import code_to_bits
from .fixedtori import NormalizerElement, NotInNormalizer, TwistedTorus
from .smith import invariant_factors
from .weylgrp import Subgroup, WeylElement


class BudgetExceeded(RuntimeError):
    pass


# -- exact intersection for concrete generators --------------------------------

def weyl_image(gens: Sequence[NormalizerElement]) -> Subgroup:
    T = gens[0].torus if gens else None
    if T is None:
        raise ValueError("need at least one generator")
    return T.W.generate([g.weyl_part for g in gens])


def _transversal(W, gen_idx: Sequence[int]):
    """BFS over the subgroup generated by gen_idx: (order, parent edges)."""
    order = [0]
    edge = {0: None}  # c -> (parent, generator position)
    k = 0
    while k < len(order):
        c = order[k]
        for j, g in enumerate(gen_idx):
            d = int(W.table[c, g])
            if d not in edge:
                edge[d] = (c, j)
                order.append(d)
        k += 1
    return order, edge


def schreier_vectors(gens: Sequence[NormalizerElement]) -> list[tuple[int, ...]]:
    """Torus log vectors generating M n T for M = <gens>."""
    T = gens[0].torus
    W = T.W
    idx = [g.widx for g in gens]
    order, edge = _transversal(W, idx)
    rep = {0: T.identity()}
    for c in order[1:]:
        parent, j = edge[c]
        rep[c] = rep[parent] * gens[j]
    out = set()
    for c in order:
        for j, g in enumerate(gens):
            d = int(W.table[c, g.widx])
            s = rep[c] * g * rep[d].inverse()
            assert s.widx == 0
            if any(s.x):
                out.add(s.x)
    return sorted(out)


def subgroup_order(torus: TwistedTorus, vectors: Sequence[Sequence[int]]) -> int:
    """Order of the subgroup of T generated by the given log vectors."""
    if not vectors:
        return 1
    coords = [torus.coords(v) for v in vectors]
    d = torus.factors
    if not d:
        return 1
    rows = [list(c) for c in coords] + [[d[i] if i == j else 0 for j in range(len(d))] for i in range(len(d))]
    index = prod(invariant_factors(np.array(rows, dtype=object)))
    return prod(d) // index


@dataclass
class SupplementReport:
    weyl_order: int
    centralizer_order: int
    intersection: int
    order: int
    normalizer_order: int

    @property
    def covers(self) -> bool:
        return self.weyl_order == self.centralizer_order

    @property
    def is_supplement(self) -> bool:
        """M T = N, i.e. |M| |T| / |M n T| = |N|."""
        torus_order = self.normalizer_order // self.centralizer_order
        return self.covers and self.order * torus_order == self.normalizer_order * self.intersection


def analyze_supplement(torus: TwistedTorus, gens: Sequence[NormalizerElement]) -> SupplementReport:
    for g in gens:
        if not torus.is_fixed(g):
            raise NotInNormalizer(f"generator {g!r} is not fixed by the twisted Frobenius map")
    C = torus.W.centralizer(torus.w)
    img = weyl_image(gens)
    inter = subgroup_order(torus, schreier_vectors(gens))
    return SupplementReport(
        weyl_order=img.order,
        centralizer_order=C.order,
        intersection=inter,
        order=inter * img.order,
        normalizer_order=torus.order * C.order,
    )


def brute_force_closure(gens: Sequence[NormalizerElement], cap: int = 10**7) -> set[NormalizerElement]:
    """Explicit closure of <gens>; used only to cross-check the Schreier count."""
    T = gens[0].torus
    seen = {T.identity()}
    frontier = [T.identity()]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > cap:
                        raise BudgetExceeded("closure cap reached")
        frontier = nxt
    return seen


# -- affine lifts and the oracle ------------------------------------------------

class AffineElement:
    """Normalizer element whose torus part is const + sum_i lin[i] @ t_i."""

    __slots__ = ("torus", "const", "lin", "widx")

    def __init__(self, torus: TwistedTorus, const: np.ndarray, lin: np.ndarray, widx: int):
        self.torus = torus
        self.const = const
        self.lin = lin
        self.widx = widx

    def __mul__(self, other: "AffineElement") -> "AffineElement":
        T = self.torus
        B = T.B_of(self.widx)
        c = np.array(T.bits_log(code_to_bits(int(T.tits.cocycle[self.widx, other.widx]))), dtype=object)
        const = (self.const + B.dot(other.const) + c) % T.Q
        lin = self.lin + np.einsum("ij,kjl->kil", B, other.lin)
        return AffineElement(T, const, lin, int(T.W.table[self.widx, other.widx]))

    def inverse(self) -> "AffineElement":
        T = self.torus
        winv = int(T.W.inverses[self.widx])
        c = np.array(T.bits_log(code_to_bits(int(T.tits.cocycle[self.widx, winv]))), dtype=object)
        Binv = T.B_of(winv)
        const = Binv.dot(-(self.const + c)) % T.Q
        lin = -np.einsum("ij,kjl->kil", Binv, self.lin)
        return AffineElement(T, const, lin, winv)


def _affine_identity(T: TwistedTorus, k: int) -> AffineElement:
    return AffineElement(T, np.zeros(4, dtype=object), np.zeros((k, 4, 4), dtype=object), 0)


def _affine_lift(T: TwistedTorus, z: NormalizerElement, i: int, k: int) -> AffineElement:
    lin = np.zeros((k, 4, 4), dtype=object)
    lin[i] = np.eye(4, dtype=object)
    return AffineElement(T, np.array(z.x, dtype=object), lin, z.widx)


@dataclass
class OracleResult:
    torus_id: int | None
    q: int
    minimum: int | None
    tuples: int
    status: str  # "ok" or "skipped"
    generators: list[tuple[int, ...]]

    def as_dict(self) -> dict:
        return {
            "torus": self.torus_id,
            "q": self.q,
            "minimum": self.minimum,
            "tuples": self.tuples,
            "status": self.status,
            "generators": [list(g) for g in self.generators],
        }


def _image_cosets(T: TwistedTorus, B: np.ndarray) -> list[list[int]]:
    """Representatives (as T-coordinates) of T / (I - B)T."""
    r = len(T.factors)
    if r == 0:
        return [[]]
    imgs = set()
    I = np.eye(4, dtype=object)
    # (I - B) applied to basis vectors, in T coordinates
    cols = [T.coords(T.reduce((I - B).dot(np.array(g, dtype=object)))) for g in T.basis]
    # enumerate the image subgroup by closure
    seen = {tuple([0] * r)}
    frontier = [tuple([0] * r)]
    while frontier:
        nxt = []
        for v in frontier:
            for c in cols:
                u = tuple((a + b) % d for a, b, d in zip(v, c, T.factors))
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        frontier = nxt
    imgs = seen
    # greedy coset representatives in lexicographic order of coordinates
    reps = []
    covered = set()
    for k in np.ndindex(*T.factors):
        if k in covered:
            continue
        reps.append(list(k))
        for s in imgs:
            covered.add(tuple((a + b) % d for a, b, d in zip(k, s, T.factors)))
    return reps


def oracle_min_supplement(
    torus: TwistedTorus,
    generators: Sequence[WeylElement] | None = None,
    budget: int = 10**8,
    torus_id: int | None = None,
    chunk: int = 1 << 15,
) -> OracleResult:
    """Exact min |M n T| over all supplements M, by enumerating lift tuples.

    Every supplement contains lifts y_i of the generators x_i of C_W(w), and
    <y_1..y_k> is again a supplement with smaller or equal intersection, so it
    suffices to scan tuples (t_1 z_1, ..., t_k z_k) with t_i in T.  Conjugating
    a tuple by s in T replaces every t_i by t_i + (I - B(x_i)) s and keeps
    |M n T|, so each orbit has a member whose t_1 is one of the coset
    representatives of T / (I - B(x_1)) T, while t_2..t_k stay free.
    """
    T = torus
    W = T.W
    C = W.centralizer(T.w)
    gens = list(generators) if generators is not None else C.generators()
    k = len(gens)
    if W.generate(gens).order != C.order:
        raise ValueError("generators do not generate the centralizer")
    Tsize = T.order
    if k == 0:
        return OracleResult(torus_id, T.q, 1, 1, "ok", [])
    first = _image_cosets(T, T.B_of(gens[0].idx))
    tuples = len(first) * Tsize ** (k - 1)
    gen_words = [tuple(g.word) for g in gens]
    if tuples > budget:
        return OracleResult(torus_id, T.q, None, tuples, "skipped", gen_words)

    z = [T.coset_element(g) for g in gens]
    lifts = [_affine_lift(T, z[i], i, k) for i in range(k)]
    order, edge = _transversal(W, [g.idx for g in gens])
    rep = {0: _affine_identity(T, k)}
    for c in order[1:]:
        parent, j = edge[c]
        rep[c] = rep[parent] * lifts[j]
    # Schreier generators as affine maps, deduplicated
    maps = {}
    for c in order:
        for j in range(k):
            d = int(W.table[c, gens[j].idx])
            s = rep[c] * lifts[j] * rep[d].inverse()
            assert s.widx == 0
            key = (tuple(int(v) for v in s.const), tuple(int(v) for v in s.lin.ravel()))
            if any(key[0]) or any(key[1]):
                maps[key] = s

    # translate to T coordinates: v = const + sum_i lin_i t_i, t_i = basis^T kappa_i
    r = len(T.factors)
    d = np.array(T.factors, dtype=np.int64)
    if r == 0:
        return OracleResult(torus_id, T.q, 1, tuples, "ok", gen_words)
    basis = np.array(T.basis, dtype=object)  # r x 4
    consts, mats = [], []
    for s in maps.values():
        consts.append(T.coords(T.reduce(s.const)))
        per = []
        for i in range(k):
            cols = [T.coords(T.reduce(s.lin[i].dot(basis[j]))) for j in range(r)]
            per.append(np.array(cols, dtype=np.int64).T)  # r x r
        mats.append(per)
    consts = np.array(consts, dtype=np.int64)  # m x r
    K = np.array(mats, dtype=np.int64)  # m x k x r x r
    m = len(consts)
    if m == 0:
        return OracleResult(torus_id, T.q, 1, tuples, "ok", gen_words)

    # group table on T-coordinates flattened to mixed-radix indices
    radix = np.cumprod(np.concatenate([[1], d[:-1]])).astype(np.int64)
    allk = np.array(list(np.ndindex(*T.factors)), dtype=np.int64)  # |T| x r, index order
    flat = allk @ radix
    pos = np.empty(Tsize, dtype=np.int64)
    pos[flat] = np.arange(Tsize)
    # sub[x, g] = index of x - g
    add = pos[((allk[:, None, :] + allk[None, :, :]) % d) @ radix]  # |T| x |T|
    reg = _SubgroupRegistry(add)

    best = Tsize
    first_arr = np.array(first, dtype=np.int64)
    rest = [allk] * (k - 1)
    # iterate over the product space in chunks
    sizes = [len(first_arr)] + [Tsize] * (k - 1)
    total = int(np.prod(sizes))
    for start in range(0, total, chunk):
        ids = np.arange(start, min(total, start + chunk), dtype=np.int64)
        kappa = []
        rem = ids.copy()
        for i, sz in enumerate(sizes):
            kappa.append((first_arr if i == 0 else allk)[rem % sz])
            rem //= sz
        # Schreier vectors for the chunk: shape (n, m, r)
        vec = np.broadcast_to(consts, (len(ids), m, r)).copy()
        for i in range(k):
            vec += np.einsum("mab,nb->nma", K[:, i], kappa[i])
        vec %= d
        idx = vec @ radix  # (n, m) positions in flat order
        idx = pos[idx]
        best = min(best, _min_span(idx, reg, best))
        if best == 1:
            break
    return OracleResult(torus_id, T.q, int(best), tuples, "ok", gen_words)


class _SubgroupRegistry:
    """Subgroups of T met during the scan, as bitmasks over element indices,
    with a memoized join S v <g>."""

    def __init__(self, add: np.ndarray):
        self.add = add
        self.size = add.shape[0]
        self.masks: list[int] = [1]  # the trivial subgroup {0}
        self.orders: list[int] = [1]
        self.ids = {1: 0}
        self.joins: dict[tuple[int, int], int] = {}

    def join(self, sid: int, g: int) -> int:
        key = (sid, g)
        hit = self.joins.get(key)
        if hit is not None:
            return hit
        mask = self.masks[sid]
        if mask >> g & 1:
            self.joins[key] = sid
            return sid
        elems = [i for i in range(self.size) if mask >> i & 1]
        members = set(elems)
        frontier = elems
        while frontier:
            nxt = []
            for x in frontier:
                y = int(self.add[x, g])
                if y not in members:
                    members.add(y)
                    nxt.append(y)
            # adding g to the new elements only; members stay a coset union
            frontier = nxt
        new_mask = 0
        for x in members:
            new_mask |= 1 << x
        out = self.ids.get(new_mask)
        if out is None:
            out = len(self.masks)
            self.masks.append(new_mask)
            self.orders.append(len(members))
            self.ids[new_mask] = out
        self.joins[key] = out
        return out


def _min_span(idx: np.ndarray, reg: _SubgroupRegistry, best: int) -> int:
    """Smallest order of the subgroup spanned by each row of element indices."""
    n, m = idx.shape
    sid = np.zeros(n, dtype=np.int64)
    alive = np.arange(n)
    for j in range(m):
        g = idx[alive, j]
        pairs = sid[alive] * reg.size + g
        uniq, inv = np.unique(pairs, return_inverse=True)
        res = np.array([reg.join(int(p // reg.size), int(p % reg.size)) for p in uniq], dtype=np.int64)
        sid[alive] = res[inv.ravel()]
        orders = np.array(reg.orders, dtype=np.int64)[sid[alive]]
        alive = alive[orders <= best]
        if len(alive) == 0:
            return best
    orders = np.array(reg.orders, dtype=np.int64)[sid[alive]]
    return int(orders.min())
