"""Symbolic torus calculus: H = (l1, l2, l3, l4) with indeterminate l_i.

A monomial expression for each coordinate is an integer row of exponents, so a
torus-valued formula is a 4x4 integer matrix (row i gives coordinate i) plus a
sign pattern coming from the elements h_i = h_i(-1).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .extweyl import TitsElement, TitsGroup, tits_group
from .smith import smith_normal_form
from .weylgrp import WeylElement, exponent_matrix

SYMBOLS = ("λ1", "λ2", "λ3", "λ4")


def render_monomial(row: Sequence[int], sign: int = 1, symbols=SYMBOLS) -> str:
    parts = []
    for s, e in zip(symbols, row):
        e = int(e)
        if e == 0:
            continue
        parts.append(s if e == 1 else f"{s}^{e}")
    body = "".join(parts) if parts else "1"
    return ("-" + body) if sign < 0 else body


def render_torus(matrix, signs: Sequence[int] = (1, 1, 1, 1)) -> str:
    return "(" + ", ".join(render_monomial(row, s) for row, s in zip(np.asarray(matrix), signs)) + ")"


def _signs(bits: Sequence[int]) -> tuple[int, ...]:
    return tuple(-1 if b else 1 for b in bits)


def conj_symbolic(w: WeylElement | TitsElement) -> np.ndarray:
    """Exponent matrix of H -> H^n for any lift n of w: row i gives the i-th coordinate."""
    if isinstance(w, TitsElement):
        w = w.weyl_part
    return exponent_matrix(w)


def render_conjugate(w: WeylElement | TitsElement) -> str:
    return render_torus(conj_symbolic(w))


@dataclass
class SymbolicPowerFormula:
    """(H n)^m = H' n^m where H' has exponent matrix C = sum_{t<m} B^t."""

    n: TitsElement
    m: int
    C: np.ndarray
    tail: TitsElement

    @property
    def tail_in_torus(self) -> bool:
        return self.tail.is_torus()

    @property
    def h_bits(self) -> tuple[int, int, int, int] | None:
        return self.tail.h_bits if self.tail.is_torus() else None

    def render(self) -> str:
        """String like (λ1^4, λ1^4λ4^4, -λ1^2λ4^4, λ4^4); a non-torus n^m is appended as a word."""
        if self.tail.is_torus():
            return render_torus(self.C, _signs(self.tail.h_bits))
        return render_torus(self.C) + "·n^" + str(self.m)

    def evaluate(self, x: Sequence[int], Q: int) -> tuple[int, ...]:
        """Log vector of the torus part of (H n)^m for H with logs x, when n^m lies in H."""
        if not self.tail.is_torus():
            raise ValueError("n^m is not in H; the power has a nontrivial Weyl part")
        half = Q // 2
        cx = self.C.astype(object).dot(np.array([int(v) for v in x], dtype=object))
        return tuple((int(cx[i]) + half * self.tail.h_bits[i]) % Q for i in range(4))

    def as_dict(self) -> dict:
        return {
            "m": self.m,
            "C": self.C.tolist(),
            "tail_bits": list(self.h_bits) if self.h_bits is not None else None,
            "formula": self.render(),
        }


def power_formula(n: TitsElement, m: int) -> SymbolicPowerFormula:
    if m < 1:
        raise ValueError("m must be positive")
    B = conj_symbolic(n)
    C = np.zeros((4, 4), dtype=np.int64)
    P = np.eye(4, dtype=np.int64)
    for _ in range(m):
        C = C + P
        P = B @ P
    return SymbolicPowerFormula(n, m, C, n**m)


NOLIFT_WORD = (21, 8, 3, 2)


@dataclass
class NoLiftCertificate:
    """(H n^u)^4 = h_3^u for every H, where n = n21 n8 n3 n2."""

    u: TitsElement
    formula: SymbolicPowerFormula
    expected_bits: tuple[int, int, int, int]

    @property
    def holds(self) -> bool:
        return (not self.formula.C.any()) and self.formula.h_bits == self.expected_bits

    @property
    def obstructs(self) -> bool:
        """Every lift H n^u then has order 8, not 4."""
        return self.holds and any(self.expected_bits)


def nolift_certificate(u: TitsElement | None = None, tits: TitsGroup | None = None) -> NoLiftCertificate:
    G = tits or tits_group()
    if u is None:
        u = G.identity()
    n = G.word(NOLIFT_WORD)
    nu = n.conj(u)
    expected = G.h(3).conj(u).h_bits
    return NoLiftCertificate(u, power_formula(nu, 4), expected)


def universal_obstruction(formula: SymbolicPowerFormula) -> tuple[int, ...] | None:
    """An integer row y with y C = 0 and y . h odd, if one exists.

    (H n)^m = 1 needs C x + (Q/2) h = 0 (mod Q); multiplying by y gives
    (Q/2)(y . h) = 0 (mod Q), impossible when y . h is odd.  So such a y shows
    that no element of the coset T n has order m, for every q and every
    field.  The rows of U beyond the rank of a Smith form U C V = D span the
    integral left kernel, and parity is linear, so checking them suffices.
    """
    bits = formula.h_bits
    if bits is None:
        return None
    D, U, _ = smith_normal_form(formula.C)
    rank = sum(1 for i in range(4) if D[i, i] != 0)
    for i in range(rank, 4):
        y = tuple(int(v) for v in U[i])
        if sum(a * b for a, b in zip(y, bits)) % 2:
            return y
    return None


@dataclass
class CommuteCriterion:
    """For a = H1 u1 and b = H2 u2 with commuting Weyl images:
    ab = ba iff (B(u2) - I) E1 + c = (B(u1) - I) E2, where E_i are the
    exponent matrices of H_i and c the bits of [u2, u1] = u2 u1 u2^-1 u1^-1."""

    lhs: np.ndarray
    rhs: np.ndarray
    c_bits: tuple[int, int, int, int] | None = field(default=None)

    def render(self) -> str:
        if self.c_bits is None:
            return "Weyl parts do not commute"
        return f"{render_torus(self.lhs, _signs(self.c_bits))} = {render_torus(self.rhs)}"

    def holds_at(self, x1: Sequence[int], x2: Sequence[int], Q: int) -> bool:
        """Evaluate with generic exponent matrices identified with the identity
        (E1, E2 applied to log vectors x1, x2)."""
        if self.c_bits is None:
            return False
        half = Q // 2
        return all(
            (int(a) + half * b - int(c)) % Q == 0
            for a, b, c in zip(self._apply(self.lhs, x1), self.c_bits, self._apply(self.rhs, x2))
        )

    @staticmethod
    def _apply(M, x):
        return np.asarray(M, dtype=object).dot(np.array([int(v) for v in x], dtype=object))


def commute_criterion(E1, u1: TitsElement, E2, u2: TitsElement) -> CommuteCriterion:
    """E1 and E2 are 4x4 exponent matrices describing H1 and H2 in terms of
    independent parameters (pass the identity for a generic torus element;
    for two independent generic elements use :func:`commute_criterion_generic`)."""
    I = np.eye(4, dtype=np.int64)
    B1, B2 = conj_symbolic(u1), conj_symbolic(u2)
    lhs = (B2 - I) @ np.asarray(E1, dtype=np.int64)
    rhs = (B1 - I) @ np.asarray(E2, dtype=np.int64)
    c = u2 * u1 * u2.inverse() * u1.inverse()
    return CommuteCriterion(lhs, rhs, c.h_bits if c.is_torus() else None)


def commute_criterion_generic(u1: TitsElement, u2: TitsElement) -> CommuteCriterion:
    I = np.eye(4, dtype=np.int64)
    return commute_criterion(I, u1, I, u2)


__all__ = [
    "SYMBOLS",
    "render_monomial",
    "render_torus",
    "conj_symbolic",
    "render_conjugate",
    "SymbolicPowerFormula",
    "power_formula",
    "NOLIFT_WORD",
    "NoLiftCertificate",
    "universal_obstruction",
    "nolift_certificate",
    "CommuteCriterion",
    "commute_criterion",
    "commute_criterion_generic",
]
