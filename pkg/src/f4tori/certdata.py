"""Per-torus certificate data.

Every row of the two tables gets one record.  Words use the syntax of
:mod:`f4tori.words`: ``n0`` is the reduced-word lift of the central involution,
``hK`` is h_K(-1), capitalised names refer to torus elements given by their
four coordinates, and lowercase letters are local aliases.

Fields of a record:

``w``            the Weyl representative as a list of reflection indices
``pair``         the row whose class is w w0 (None for self-paired classes)
``e``            the sign +1/-1 used by case analyses shared by two rows
``n``            the Tits lift n with T = T_{sigma n} used for this row; a
                 list of (condition, word) pairs when the lift depends on q
``centralizer``  (order, structure) of C_W(w)
``torus``        cyclic factors of T as q-expressions
``claimed``      minimal |M n T|; a dict {condition: value} for the 4/8 rows
``supplements``  constructions: condition, zeta (z^zeta = -1), aux monomials,
                 torus elements, generator words and the intersection that the
                 construction itself yields
``relations``    q-independent relation chains (evaluated in the Tits group)
``lift``         a lift of w of order |w|: (word, condition, zeta, torus)
``exceptional``  condition under which no lift of order |w| exists
"""
from __future__ import annotations

ALWAYS = "q % 1 == 0"
Q1 = "q % 4 == 1"
Q3 = "q % 4 == 3"


def _pair_supp(gens, inter, torus=None, zeta=None, when=ALWAYS, aux=None):
    return {"when": when, "zeta": zeta, "aux": aux or {}, "torus": torus or {}, "gens": gens, "intersection": inter}


_T1 = {
    "aliases": {"a": "h2n1", "b": "h1n2", "c": "h4n3", "d": "h3n4"},
    "relations": [
        "a^2 = b^2 = c^2 = d^2 = (ab)^3 = [a,d] = [b,d] = (cd)^3 = 1",
        "[a,c] = (bc)^4 = h3",
    ],
}

_T2_REL = {
    "aliases": {},
    "relations": [
        "[n2,n4] = [n2,n8] = [n2,n13] = [n2,n0] = 1",
        "h3^{n2} = h3^{n0} = h3^{n8} = h3",
        "h3^{n4} = h3^{n13} = h4^{n8} = h3h4",
        "h4^{n2} = h4^{n0} = h4^{n4} = h4^{n13} = h4",
        "n4^2 = n13^2 = (n4n13)^2 = h4",
        "n8^2 = h3",
        "(n4n8)^3 = (n8n13)^3 = 1",
        "[n0,n2] = [n0,n4] = [n0,n13] = 1",
    ],
}

_T2_SUPP = [
    _pair_supp(
        ["H1n2", "H0n0", "n4", "n8", "n13"], 4,
        when="e*q % 4 == 3", zeta="e*q+1",
        torus={"H0": ["-1", "z^((e*q+3)/2)", "1", "1"], "H1": ["-1", "z", "1", "1"]},
    ),
    _pair_supp(["n0", "n2", "n4", "n8", "n13"], 8),
]

_T3 = {
    "aliases": {"a": "n3", "b": "h4n14n21n1", "c": "h2h4n1", "d": "h1n16", "e": "h2h4n14"},
    "relations": [
        "[a,b] = [a,c] = [a,d] = [a,e] = [b,c] = [b,d] = [b,e] = c^2 = d^2 = e^2 = (de)^3 = 1",
        "a^2 = b^2 = (cd)^3 = (ce)^2 = h3",
    ],
}

_T6 = {
    "aliases": {"a": "n0n2n1", "b": "h3h4n4", "c": "h4n19"},
    "relations": ["a^6 = [a,b] = [a,c] = b^2 = c^2 = (bc)^3 = 1"],
}

_T7 = {
    "aliases": {"a": "n0n3n4", "b": "h2h4n1", "c": "h1n24"},
    "relations": ["a^6 = [a,b] = [a,c] = b^2 = c^2 = (bc)^3 = 1"],
}

_T8 = {
    "aliases": {"a": "n3n2", "b": "h2n8"},
    "relations": [
        "[a,b] = [a,n24] = 1",
        "a^4 = b^2 = h3",
        "n24^2 = h2h4",
        "(n24h2n8)^4 = h3",
    ],
}

_T8_SUPP = [
    _pair_supp(
        ["a", "b", "H3n24"], 2, when="e*q % 4 == 1", zeta="2",
        torus={"H3": ["-1", "-1", "z", "1"]},
    ),
    _pair_supp(
        ["a", "b", "H3n24"], 2, when="e*q % 4 == 3", zeta="(q^2-1)/2",
        torus={"H3": ["z^(e*q+1)", "z^(3*(e*q+1)^2/4)", "z^((q^2-1)/4+e*q+1)", "z^((e*q+1)^2/4)"]},
    ),
]

_T13 = {"aliases": {"m": "h1n3n2n7"}, "relations": ["m^6 = n0^2 = [m,n0] = 1"]}
_T14 = {"aliases": {"m": "n3n2n1"}, "relations": ["m^6 = n0^2 = [m,n0] = 1"]}

# The displayed h-prefixes (h1h2h4, h1h3h4, h1h2) do not commute with
# n = n6n1n9n4 in this sign model; these are the unique prefixes that do and
# that satisfy the presentation of C_W(w).
TORUS25_DISPLAYED = {"a": "h1h2h4n1n4n2n19", "b": "h1h3h4n1n3n6n20", "c": "h1h2n1n2"}

_T25 = {
    "aliases": {"a": "h3h4n1n4n2n19", "b": "h3n1n3n6n20", "c": "n1n2"},
    "relations": ["a^3 = b^4 = c^3 = [a,b] = [a,c] = bcb^-1cbc = (c^-1b)^3 = 1"],
}

ROWS: dict[int, dict] = {
    1: {
        "w": [], "pair": 17, "e": 1, "n": "1",
        "centralizer": (1152, "W(F4) = GO4+"),
        "torus": ["q-1", "q-1", "q-1", "q-1"],
        "claimed": 4,
        **_T1,
        "supplements": [_pair_supp(["a", "b", "c", "d"], 4)],
        "lift": ("1", None, None, {}),
    },
    2: {
        "w": [2], "pair": 9, "e": 1, "n": "n2",
        "centralizer": (96, "Z2 x Z2 x S4"),
        "torus": ["q-1", "q-1", "q^2-1"],
        "claimed": {Q1: 4, Q3: 8},
        **_T2_REL,
        "supplements": _T2_SUPP,
        "lift": ("h1n2", None, None, {}),
    },
    3: {
        "w": [3], "pair": 10, "e": 1, "n": "n3",
        "centralizer": (96, "Z2 x Z2 x S4"),
        "torus": ["q-1", "q-1", "q^2-1"],
        "claimed": 2,
        **_T3,
        "supplements": [_pair_supp(["a", "b", "c", "d", "e"], 2)],
        "lift": ("h2n3", None, None, {}),
    },
    4: {
        "w": [6, 3], "pair": None, "e": 1, "n": [(Q3, "n6n3"), (Q1, "n0n6n3")],
        "centralizer": (64, "D8 x D8"),
        "torus": ["q-1", "q+1", "q^2-1"],
        "claimed": 4,
        "aliases": {},
        "relations": [
            "(h1n3)^2 = n21^2 = [h1n3,n21] = (n21n24)^4 = h3",
            "n24^2 = [h1n3,n24] = h2h4",
            "[n2,n21] = [n2,n24] = 1",
            "(n2h1n3)^4 = h3",
            "(h2h4)^{n21} = h2h3h4",
        ],
        "supplements": [
            _pair_supp(["H1n2", "h1n3", "n21", "n24"], 4, zeta="2", torus={"H1": ["1", "1", "z", "1"]}),
        ],
        "lift": ("h1n6n3", None, None, {}),
    },
    5: {
        "w": [16, 3], "pair": None, "e": 1, "n": "h1n16n3",
        "centralizer": (16, "Z2 x Z2 x Z2 x Z2"),
        "torus": ["q^2-1", "q^2-1"],
        "claimed": 2,
        "aliases": {"a": "n3", "b": "n6", "c": "h1n16", "d": "h1h2n24", "m": "n16n3"},
        "relations": [
            "a^2 = b^2 = [a,b] = [a,d] = [b,c] = [c,d] = h3",
            "c^2 = d^2 = [a,c] = [b,d] = 1",
            "[m,n3] = [m,h2n6] = [m,n16] = [n3,n16] = [h2n6,n16] = 1",
            "n16^2 = h2h3h4",
        ],
        "supplements": [_pair_supp(["a", "b", "c", "d"], 2)],
        "lift": ("h1h2n16n3", None, None, {}),
    },
    6: {
        "w": [2, 1], "pair": 21, "e": 1, "n": "n2n1",
        "centralizer": (36, "Z6 x S3"),
        "torus": ["q-1", "q^3-1"],
        "claimed": 1,
        **_T6,
        "supplements": [_pair_supp(["a", "b", "c"], 1)],
        "lift": ("n2n1", None, None, {}),
    },
    7: {
        "w": [3, 4], "pair": 20, "e": 1, "n": "n3n4",
        "centralizer": (36, "Z6 x S3"),
        "torus": ["q-1", "q^3-1"],
        "claimed": 1,
        **_T7,
        "supplements": [_pair_supp(["a", "b", "c"], 1)],
        "lift": ("n3n4", None, None, {}),
    },
    8: {
        "w": [3, 2], "pair": 19, "e": 1, "n": "n3n2",
        "centralizer": (32, "Z4 x D8"),
        "torus": ["q-1", "(q^2+1)*(q-1)"],
        "claimed": 2,
        **_T8,
        "supplements": _T8_SUPP,
        "lift": ("Ln3n2", Q1, "2*(q^2+1)", {"L": ["z^(q^2+1)", "z^(q+1)", "z", "1"]}),
        "exceptional": Q3,
    },
    9: {
        "w": [21, 8, 2], "pair": 2, "e": -1, "n": "n0n2",
        "centralizer": (96, "Z2 x Z2 x S4"),
        "torus": ["q^2-1", "q+1", "q+1"],
        "claimed": {Q3: 4, Q1: 8},
        "supplements": _T2_SUPP,
        "lift": ("h1n2n0", None, None, {}),
    },
    10: {
        "w": [8, 6, 3], "pair": 3, "e": -1, "n": "n0n3",
        "centralizer": (96, "Z2 x Z2 x S4"),
        "torus": ["q^2-1", "q+1", "q+1"],
        "claimed": 2,
        "aliases": _T3["aliases"],
        "supplements": [_pair_supp(["a", "b", "c", "d", "e"], 2)],
        "lift": ("h2n3n0", None, None, {}),
    },
    11: {
        "w": [2, 1, 16], "pair": None, "e": 1, "n": "n2n1n16",
        "centralizer": (16, "Z4 x Z2 x Z2"),
        "torus": ["gcd(q-1,2)", "(q^4-1)/gcd(q-1,2)"],
        "claimed": 2,
        "aliases": {"m": "n2n1n16"},
        "relations": [
            "[m,n0] = [m,n10] = 1",
            "m^4 = n10^2 = h3h4",
            "n0^2 = [n0,n10] = 1",
            "(h3h4)^{m} = (h3h4)^{n0} = (h3h4)^{n10} = h3h4",
        ],
        "supplements": [_pair_supp(["m", "n0", "n10"], 2)],
        "lift": (
            "Ln2n1n16", Q1, "q^3+q^2+q+1",
            {"L": ["z^(q^3+1)", "-z^(1-q)", "z^((-q^3-q^2-q+1)/2)", "z"]},
        ),
        "exceptional": Q3,
    },
    12: {
        "w": [16, 3, 2], "pair": None, "e": 1, "n": "n16n3n2",
        "centralizer": (16, "Z4 x Z2 x Z2"),
        "torus": ["gcd(q-1,2)", "(q^4-1)/gcd(q-1,2)"],
        "claimed": 2,
        "aliases": {},
        "relations": [],
        "supplements": [
            _pair_supp(
                ["H1n16n3n2", "H2n24", "H0n0"], 2, zeta="(q^4-1)/2",
                aux={"eta": "z^(-(q^2+1)*(q+1)/2)"},
                torus={
                    "H0": ["z^(-(q^2+1)*(q+1))", "z^(-2*(q^3+q^2+1))", "z^(-(q^3+2*q^2+1))", "z^(-(q^2+1))"],
                    "H1": ["-1", "z^(q-1)", "z^(-(q-1)^2/2)", "-z^((q^2+1)*(q-1)/2)"],
                    "H2": ["-eta^2", "(-1)^((q-1)/2)*eta^3", "eta^((q+3)/2)", "eta"],
                },
            ),
        ],
        "lift": None,
        "exceptional": ALWAYS,
        # (H n)^4 = (l1^4, l1^6, -l1^4, l1^2) for every H
        "obstruction": "n16n3n2",
    },
    13: {
        "w": [3, 2, 7], "pair": 15, "e": 1, "n": "h1n3n2n7",
        "centralizer": (12, "Z6 x Z2"),
        "torus": ["(q-1)*(q^3+1)"],
        "claimed": 1,
        **_T13,
        "supplements": [_pair_supp(["m", "n0"], 1)],
        "lift": ("h1n3n2n7", None, None, {}),
    },
    14: {
        "w": [3, 2, 1], "pair": 16, "e": 1, "n": "n3n2n1",
        "centralizer": (12, "Z6 x Z2"),
        "torus": ["(q-1)*(q^3+1)"],
        "claimed": 1,
        **_T14,
        "supplements": [_pair_supp(["m", "n0"], 1)],
        "lift": ("n3n2n1", None, None, {}),
    },
    15: {
        "w": [16, 3, 12], "pair": 13, "e": -1, "n": "n0h1n3n2n7",
        "centralizer": (12, "Z6 x Z2"),
        "torus": ["(q+1)*(q^3-1)"],
        "claimed": 1,
        "aliases": _T13["aliases"],
        "supplements": [_pair_supp(["m", "n0"], 1)],
        "lift": ("h1n3n2n7n0", None, None, {}),
    },
    16: {
        "w": [21, 2, 1], "pair": 14, "e": -1, "n": "n0n3n2n1",
        "centralizer": (12, "Z6 x Z2"),
        "torus": ["(q+1)*(q^3-1)"],
        "claimed": 1,
        "aliases": _T14["aliases"],
        "supplements": [_pair_supp(["m", "n0"], 1)],
        "lift": ("n3n2n1n0", None, None, {}),
    },
    17: {
        "w": [21, 8, 6, 3], "pair": 1, "e": -1, "n": "n0",
        "centralizer": (1152, "W(F4) = GO4+"),
        "torus": ["q+1", "q+1", "q+1", "q+1"],
        "claimed": 4,
        "aliases": _T1["aliases"],
        "supplements": [_pair_supp(["a", "b", "c", "d"], 4)],
        "lift": ("n0", None, None, {}),
    },
    18: {
        "w": [21, 2, 1, 19], "pair": 25, "e": -1, "n": "n0n6n1n9n4",
        "centralizer": (72, "Z3 x SL2(3)"),
        "torus": ["q^2+q+1", "q^2+q+1"],
        "claimed": 1,
        "aliases": _T25["aliases"],
        "supplements": [_pair_supp(["a", "b", "c"], 1)],
        "lift": ("n21n2n1n19", None, None, {}),
    },
    19: {
        "w": [21, 8, 3, 2], "pair": 8, "e": -1, "n": "n0n3n2",
        "centralizer": (32, "Z4 x D8"),
        "torus": ["(q^2+1)*(q+1)", "q+1"],
        "claimed": 2,
        "aliases": _T8["aliases"],
        "supplements": _T8_SUPP,
        "lift": None,
        "exceptional": ALWAYS,
        "obstruction": "n21n8n3n2",
    },
    20: {
        "w": [21, 8, 3, 10], "pair": 7, "e": -1, "n": "n0n3n4",
        "centralizer": (36, "Z6 x S3"),
        "torus": ["q^3+1", "q+1"],
        "claimed": 1,
        "aliases": _T7["aliases"],
        "supplements": [_pair_supp(["a", "b", "c"], 1)],
        "lift": ("n3n4n0", None, None, {}),
    },
    21: {
        "w": [6, 1, 16, 3], "pair": 6, "e": -1, "n": "n0n2n1",
        "centralizer": (36, "Z6 x S3"),
        "torus": ["q^3+1", "q+1"],
        "claimed": 1,
        "aliases": _T6["aliases"],
        "supplements": [_pair_supp(["a", "b", "c"], 1)],
        "lift": ("n2n1n0", None, None, {}),
    },
    22: {
        "w": [8, 16, 3, 2], "pair": None, "e": 1, "n": "h2n8n16n3n2",
        "centralizer": (96, "SL2(3):Z4"),
        "torus": ["q^2+1", "q^2+1"],
        "claimed": 4,
        "aliases": {"a": "n16n8", "b": "h2n2n3", "c": "n1n3n16n19"},
        "relations": [
            "a^4 = b^4 = [a,b] = a^3b^2cb^-1c^-2 = h3",
            "c^3 = 1",
            "h3^{a} = h3^{b} = h3",
            "h3^{c} = h4^{a} = h4^{b} = h3h4",
            "h4^{c} = h3",
            "(n8n16n3n2)^4 = 1",
        ],
        "supplements": [_pair_supp(["a", "b", "c"], 4)],
        "lift": ("n8n16n3n2", None, None, {}),
    },
    23: {
        "w": [3, 2, 1, 16], "pair": None, "e": 1, "n": "n3n2n1n16",
        "centralizer": (8, "Z8"),
        "torus": ["q^4+1"],
        "claimed": 1,
        "aliases": {"m": "n3n2n1n16"},
        "relations": ["m^8 = 1"],
        "supplements": [_pair_supp(["m"], 1)],
        "lift": ("n3n2n1n16", None, None, {}),
    },
    24: {
        "w": [8, 1, 2, 4], "pair": None, "e": 1, "n": "n8n1n2n4",
        "centralizer": (12, "Z12"),
        "torus": ["q^4-q^2+1"],
        "claimed": 1,
        "aliases": {"m": "n8n1n2n4"},
        "relations": ["m^12 = 1"],
        "supplements": [_pair_supp(["m"], 1)],
        "lift": ("n8n1n2n4", None, None, {}),
    },
    25: {
        "w": [6, 1, 9, 4], "pair": 18, "e": 1, "n": "n6n1n9n4",
        "centralizer": (72, "Z3 x SL2(3)"),
        "torus": ["q^2-q+1", "q^2-q+1"],
        "claimed": 1,
        **_T25,
        "supplements": [_pair_supp(["a", "b", "c"], 1)],
        "lift": ("n6n1n9n4", None, None, {}),
    },
}

# The element n21 n8 n3 n2 has (H n^u)^4 = h3^u for every torus element H;
# the expected right-hand sides are the h-elements quoted with each use.
NOLIFT = [
    {"u": "1", "expected": "h3", "rows": [19]},
    {"u": "n7", "expected": "h4", "rows": [2]},
    {"u": "n5", "expected": "h3", "rows": [3]},
    {"u": "n16", "expected": "h3", "rows": [22]},
]

# (w21 w8 w3 w2)^{u} lies in C_W(w) for the row's representative w.
WEYL_MEMBERSHIP = [
    {"u": [7], "row": 2},
    {"u": [5], "row": 3},
    {"u": [16], "row": 22},
]

# Tits identities quoted in the case analyses that are not tied to one row.
GLOBAL_RELATIONS = [
    "(n21n8n3n2)^4 = h3",
    "n24^2 = h2h4",
    "(n4n8)^3 = 1",
    "n16^2 = h2h3h4",
    "(n24h2n8)^4 = h3",
    "n0^2 = 1",
    "(n2h1n3)^4 = h3",
    "n4^2 = n13^2 = (n4n13)^2 = h4",
    "n8^2 = h3",
]


def claimed_intersection(row: int, q: int) -> int:
    from .words import eval_bool

    c = ROWS[row]["claimed"]
    if isinstance(c, int):
        return c
    for cond, v in c.items():
        if eval_bool(cond, q):
            return v
    raise ValueError(f"no claimed value for row {row} at q={q}")
