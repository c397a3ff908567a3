"""Strong Gelfand pair decisions: multiplicity checks, the total-character
shortcut, the maximal-subgroup scans, and the Schur-ring cross-check.

The primary check restricts each irreducible of G to H and takes inner
products against the irreducibles of H (the cheap side of Frobenius
reciprocity); the induction side is available for cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .chartab import (CharTable, Character, dixon_schneider, induce,
                      inner_product, restrict, total_character,
                      trivial_character)
from .errors import ResourceBoundError, SubgroupError
from .groups import (FinGroup, build_group, h_classes, is_subgroup,
                     maximal_subgroups_sp4, squares_subgroup)

__all__ = [
    "SgpVerdict", "Witness", "is_multiplicity_free", "is_strong_gelfand_pair",
    "is_gelfand_pair", "total_char_shortcut", "scan_maximal_sp4",
    "schur_commutes",
]

SCHUR_MAX_ORDER = 20000


@dataclass(frozen=True)
class Witness:
    g_index: int
    h_index: int
    multiplicity: int
    g_degree: int
    h_degree: int

    def to_json(self) -> dict:
        return {"g_char_degree": self.g_degree, "h_char_degree": self.h_degree,
                "multiplicity": self.multiplicity}


@dataclass(frozen=True)
class SgpVerdict:
    g_label: str
    h_label: str
    verdict: str                 # "sgp" | "not_sgp"
    method: str                  # "full_check" | "total_char_shortcut"
    witness: Witness | None = None

    def to_json(self) -> dict:
        return {"G": self.g_label, "H": self.h_label, "verdict": self.verdict,
                "method": self.method,
                "witness": self.witness.to_json() if self.witness else None}

    def __str__(self):
        tail = ""
        if self.witness:
            w = self.witness
            tail = (f"  [deg {w.g_degree} restricts to deg {w.h_degree} "
                    f"with multiplicity {w.multiplicity}]")
        return f"({self.g_label}, {self.h_label}): {self.verdict} via {self.method}{tail}"


def is_multiplicity_free(chi: Character, T: CharTable):
    """(True, None) or (False, (irreducible index, multiplicity))."""
    for idx, irr in enumerate(T.irreducibles):
        m = inner_product(chi, irr)
        if m.denominator != 1 or m < 0:
            raise ValueError(f"not a character: multiplicity {m} on irr {idx}")
        if m > 1:
            return False, (idx, int(m))
    return True, None


def is_strong_gelfand_pair(G: FinGroup, H: FinGroup, *,
                           side: str = "restrict") -> SgpVerdict:
    """Full check: every G-irreducible must restrict multiplicity-free to H
    (equivalently, every H-irreducible induces multiplicity-free).
    """
    if not is_subgroup(H, G):
        raise SubgroupError(f"{H.label} is not a subgroup of {G.label}")
    TG = dixon_schneider(G)
    TH = dixon_schneider(H)
    if side == "restrict":
        for gi, chi in enumerate(TG.irreducibles):
            r = restrict(chi, H)
            for hi, psi in enumerate(TH.irreducibles):
                m = inner_product(r, psi)
                if m > 1:
                    w = Witness(gi, hi, int(m), int(chi.degree), int(psi.degree))
                    return SgpVerdict(G.label, H.label, "not_sgp", "full_check", w)
    elif side == "induce":
        for hi, psi in enumerate(TH.irreducibles):
            ind = induce(psi, G)
            for gi, chi in enumerate(TG.irreducibles):
                m = inner_product(ind, chi)
                if m > 1:
                    w = Witness(gi, hi, int(m), int(chi.degree), int(psi.degree))
                    return SgpVerdict(G.label, H.label, "not_sgp", "full_check", w)
    else:
        raise ValueError(f"unknown side {side!r}")
    return SgpVerdict(G.label, H.label, "sgp", "full_check")


def is_gelfand_pair(G: FinGroup, H: FinGroup) -> bool:
    """Whether the trivial character of H induces multiplicity-free."""
    if not is_subgroup(H, G):
        raise SubgroupError(f"{H.label} is not a subgroup of {G.label}")
    TG = dixon_schneider(G)
    ind = induce(trivial_character(H), G)
    ok, _ = is_multiplicity_free(ind, TG)
    return ok


def total_char_shortcut(tau_h_degree, max_irr_degree_g) -> str:
    """Degree shortcut: a G-irreducible larger than deg tau_H rules out
    the strong Gelfand property; otherwise nothing is concluded.
    """
    tau_h_degree = Fraction(tau_h_degree)
    max_irr_degree_g = Fraction(max_irr_degree_g)
    if tau_h_degree <= 0 or max_irr_degree_g <= 0:
        raise ValueError("degrees must be positive")
    if tau_h_degree < max_irr_degree_g:
        return "not_sgp"
    return "inconclusive"


def _s6_scan_subgroups(max_order):
    """The maximal subgroups of S6 = Sp4(2): A6 plus the Table-1-shaped rows."""
    G = build_group("sp4:2", max_order=max_order)
    a6 = squares_subgroup(G, "a6")
    rows = [(a6, "a6"),
            (build_group("parabolic-p:2"), "parabolic-p:2"),
            (build_group("parabolic-q:2"), "parabolic-q:2"),
            (build_group("wreath-sp2:2"), "wreath-sp2:2"),
            (build_group("ext-sp2q2-embedded:2"), "ext-sp2q2:2"),
            (build_group("so4+:2"), "so4+:2"),
            (build_group("so4-:2"), "so4-:2")]
    return G, rows


def scan_maximal_sp4(q: int, *, max_order: int = 2_500_000) -> list:
    """Verdicts for the maximal subgroups of sp4:q (q = 2 or 4 only).

    Tries the total-character shortcut against the exact maximal degree of
    the computed sp4:q table; subgroups it cannot settle get the full
    restrict-and-inner-product check.
    """
    if q not in (2, 4):
        raise ResourceBoundError("the maximal-subgroup scan is desk-scale: q in {2, 4}")
    if q == 2:
        G, rows = _s6_scan_subgroups(max_order)
    else:
        G = build_group(f"sp4:{q}", max_order=max_order)
        rows = maximal_subgroups_sp4(q, max_order=max_order)
    max_deg = dixon_schneider(G).max_degree()
    out = []
    for H, label in rows:
        tau_h = total_character(dixon_schneider(H)).degree
        if total_char_shortcut(tau_h, max_deg) == "not_sgp":
            out.append(SgpVerdict(G.label, label, "not_sgp", "total_char_shortcut"))
        else:
            v = is_strong_gelfand_pair(G, H)
            out.append(SgpVerdict(G.label, label, v.verdict, v.method, v.witness))
    return out


def schur_commutes(G: FinGroup, H: FinGroup) -> bool:
    """Whether the Schur ring spanned by the H-classes of G is commutative.

    Checks, for every pair of H-classes C, D and every H-class representative
    g, that #{(c,d) in CxD : cd = g} = #{(d,c) in DxC : dc = g}.  Equality at
    representatives suffices: the pair counts are constant on the H-class of g.
    """
    if G.order > SCHUR_MAX_ORDER:
        raise ResourceBoundError(
            f"|G| = {G.order} exceeds the Schur-ring bound {SCHUR_MAX_ORDER}")
    hc = h_classes(G, H)
    k = len(hc)
    hcls = hc.class_of
    inv_keys = G.keys[G.inv_idx]
    for rep in hc.reps:
        g = G.keys[rep]
        y = G.ops.mul(inv_keys, g)            # y[x] = x^-1 g, so x * y = g
        d = hcls[G.index_of(y)]
        counts = np.zeros((k, k), dtype=np.int64)
        np.add.at(counts, (hcls, d), 1)
        if not np.array_equal(counts, counts.T):
            return False
    return True
