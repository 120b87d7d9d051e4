"""Finite fields F_{q^k} for odd prime powers q, modelled through discrete logs.

Torus computations only need the cyclic group F_{q^k}^*, so an element is
stored as its exponent with respect to a fixed primitive element g, modulo
Q = q^k - 1.  Frobenius is then multiplication of the exponent by q and -1
is g^(Q/2).

An explicit polynomial model F_p[x]/(f) is built lazily (f is the
lexicographically least monic irreducible polynomial of degree e*k over F_p,
g the first primitive element in the same order) for round-trip checks.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import isqrt

import sympy

DEFAULT_MAX_Q = 13
DEFAULT_MAX_K = 24


class FieldError(ValueError):
    pass


class NoRootError(ArithmeticError):
    """Raised when the requested root of -1 does not exist in the field."""


def prime_power(q: int) -> tuple[int, int]:
    f = sympy.factorint(q)
    if q < 2 or len(f) != 1:
        raise FieldError(f"{q} is not a prime power")
    (p, e), = f.items()
    return int(p), int(e)


# -- polynomials over F_p, coefficient lists low degree first ----------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymulmod(a, b, f, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _polymod(out, f, p)


def _polymod(a, f, p):
    a = list(a)
    n = len(f) - 1
    inv = pow(f[-1], -1, p)
    for i in range(len(a) - 1, n - 1, -1):
        c = a[i] * inv % p
        if c:
            for j in range(n + 1):
                a[i - n + j] = (a[i - n + j] - c * f[j]) % p
    return _trim(a[:n] if len(a) > n else a)


def _polypowmod(a, m, f, p):
    out = [1]
    base = _polymod(a, f, p)
    while m:
        if m & 1:
            out = _polymulmod(out, base, f, p)
        base = _polymulmod(base, base, f, p)
        m >>= 1
    return out


def _polygcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _polymod(a, b, p)
    return a


def _polysub(a, b, p):
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def is_irreducible(f: list[int], p: int) -> bool:
    """Rabin's test for a monic polynomial f over F_p."""
    n = len(f) - 1
    if n < 1:
        return False
    x = [0, 1]
    if _polysub(_polypowmod(x, p**n, f, p), x, p):
        return False
    for r in sympy.primefactors(n):
        h = _polysub(_polypowmod(x, p ** (n // r), f, p), x, p)
        if len(_polygcd(f, h, p)) != 1:
            return False
    return True


def least_irreducible(p: int, n: int) -> list[int]:
    """Least monic irreducible of degree n, comparing (c_0, c_1, ..., c_{n-1}) lexicographically."""
    if n == 1:
        return [0, 1]
    for code in range(p**n):
        coeffs = []
        c = code
        for _ in range(n):
            coeffs.append(c % p)
            c //= p
        # the last digit produced is the most significant one and becomes c_0
        f = coeffs[::-1] + [1]
        if f[0] and is_irreducible(f, p):
            return f
    raise FieldError(f"no irreducible polynomial of degree {n} over F_{p}")


# -- the field ---------------------------------------------------------------

@dataclass(frozen=True)
class FieldElement:
    """g^log in F_{q^k}^*."""

    field: "GF"
    log: int

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        return FieldElement(self.field, (self.log + other.log) % self.field.Q)

    def __pow__(self, m: int) -> "FieldElement":
        return FieldElement(self.field, self.log * m % self.field.Q)

    def inverse(self) -> "FieldElement":
        return self ** -1

    def __neg__(self) -> "FieldElement":
        return self * self.field.minus_one

    def frobenius(self, times: int = 1) -> "FieldElement":
        """x -> x^(q^times)."""
        return self ** (self.field.q**times)

    def order(self) -> int:
        Q = self.field.Q
        return Q // sympy.gcd(self.log, Q)

    def to_poly(self) -> list[int]:
        return self.field.poly_of_log(self.log)


class GF:
    def __init__(self, q: int, k: int = 1, *, max_q: int = DEFAULT_MAX_Q, max_k: int = DEFAULT_MAX_K):
        p, e = prime_power(q)
        if p == 2:
            raise FieldError("characteristic 2 is handled by the structural check only")
        if q > max_q:
            raise FieldError(f"q = {q} exceeds the configured bound {max_q}")
        if not 1 <= k <= max_k:
            raise FieldError(f"degree k = {k} outside 1..{max_k}")
        self.q, self.k, self.p, self.e = q, k, p, e
        self.Q = q**k - 1

    def __repr__(self) -> str:
        return f"GF({self.q}^{self.k})"

    def __eq__(self, other) -> bool:
        return isinstance(other, GF) and (self.q, self.k) == (other.q, other.k)

    def __hash__(self) -> int:
        return hash(("GF", self.q, self.k))

    def element(self, log: int) -> FieldElement:
        return FieldElement(self, log % self.Q)

    @property
    def one(self) -> FieldElement:
        return self.element(0)

    @property
    def minus_one(self) -> FieldElement:
        return self.element(self.Q // 2)

    @property
    def generator(self) -> FieldElement:
        return self.element(1)

    def root_of_minus_one(self, m: int) -> FieldElement:
        """Some zeta with zeta^m = -1: g^(Q / 2m).  Needs 2m | Q."""
        m = abs(int(m))
        if m == 0 or self.Q % (2 * m):
            raise NoRootError(f"no zeta with zeta^{m} = -1 in F_{self.q}^{self.k}")
        return self.element(self.Q // (2 * m))

    # -- explicit model ------------------------------------------------------
    @cached_property
    def modulus(self) -> list[int]:
        return least_irreducible(self.p, self.e * self.k)

    @cached_property
    def _Q_primes(self) -> list[int]:
        return [int(r) for r in sympy.primefactors(self.Q)]

    def _is_primitive(self, a: list[int]) -> bool:
        f, p = self.modulus, self.p
        return all(_polypowmod(a, self.Q // r, f, p) != [1] for r in self._Q_primes)

    @cached_property
    def primitive_poly(self) -> list[int]:
        n, p = self.e * self.k, self.p
        for code in range(1, p**n):
            a, c = [], code
            for _ in range(n):
                a.append(c % p)
                c //= p
            a = _trim(a)
            if self._is_primitive(a):
                return a
        raise FieldError("no primitive element found")

    def poly_of_log(self, log: int) -> list[int]:
        return _polypowmod(self.primitive_poly, log % self.Q, self.modulus, self.p)

    def log_of_poly(self, a: list[int]) -> int:
        """Discrete log by Pohlig-Hellman with baby-step giant-step in each prime part."""
        f, p, Q = self.modulus, self.p, self.Q
        a = _polymod(_trim(list(a)), f, p)
        if not a:
            raise ZeroDivisionError("log of zero")
        g = self.primitive_poly
        residues, moduli = [], []
        for r, e in sympy.factorint(Q).items():
            pe = r**e
            gi = _polypowmod(g, Q // pe, f, p)  # order r^e
            ai = _polypowmod(a, Q // pe, f, p)
            gamma = _polypowmod(gi, r ** (e - 1), f, p)  # order r
            x = 0
            for j in range(e):
                # (ai * gi^-x)^(r^(e-1-j)) = gamma^d
                t = _polymulmod(ai, _polypowmod(gi, (pe - x) % pe, f, p), f, p)
                t = _polypowmod(t, r ** (e - 1 - j), f, p)
                d = self._bsgs(gamma, t, r)
                x += d * r**j
            residues.append(x)
            moduli.append(pe)
        from sympy.ntheory.modular import crt

        return int(crt(moduli, residues)[0]) % Q

    def _bsgs(self, base, target, order):
        f, p = self.modulus, self.p
        m = isqrt(order) + 1
        table = {}
        cur = [1]
        for j in range(m):
            table.setdefault(tuple(cur), j)
            cur = _polymulmod(cur, base, f, p)
        step = _polypowmod(base, (order - m) % order, f, p)  # base^-m
        gamma = _trim(list(target))
        for i in range(m + 1):
            if tuple(gamma) in table:
                return (i * m + table[tuple(gamma)]) % order
            gamma = _polymulmod(gamma, step, f, p)
        raise ArithmeticError("discrete log not found")


@lru_cache(maxsize=None)
def make_field(q: int, k: int = 1) -> GF:
    return GF(q, k)


def root_of_minus_one(field: GF, m: int) -> FieldElement:
    return field.root_of_minus_one(m)
