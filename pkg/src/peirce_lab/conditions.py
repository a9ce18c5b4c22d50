"""Annihilation hypothesis sets checked with explicit witnesses.

Three named sets, each a list of implications "antecedent annihilates for
every r, hence the consequent element is zero", quantified over all x (or m):

    thm1  (i)  x e R (1-e) = 0  =>  x = 0
          (ii) R e x = 0        =>  x = 0
    thm2  (i)  x e R = 0        =>  x = 0
          (ii) R x = 0          =>  x = 0
          (iii) exe R (1-e) = 0 =>  exe = 0
    ei    I..VI, the six component annihilation conditions with e1 = e,
          e2 = 1-e and the bimodule taken to be the ring itself.

Products with (1-e) are expanded to unit-free form (t(1-e) = t - te), so
non-unital rings are supported. A failing item stores the lowest-index
witness: an element where the antecedent holds but the consequent fails.
The default ei mode quantifies m over the whole ring; strict mode restricts
m to the annihilator of the center, {m : m Z(R) = 0}.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .rings import Element, GuardError, Ring, SpecError, center, scan_guard

CONDITION_SETS = {
    "thm1": ("i", "ii"),
    "thm2": ("i", "ii", "iii"),
    "ei": ("I", "II", "III", "IV", "V", "VI"),
}


@dataclass
class ConditionItem:
    item_id: str
    passed: bool
    witness: Element | None

    def to_dict(self) -> dict:
        return {
            "id": self.item_id,
            "pass": self.passed,
            "witness": None if self.witness is None else self.witness.as_list(),
        }


@dataclass
class ConditionReport:
    set_name: str
    idempotent: Element
    items: list[ConditionItem]
    mode: str | None = None  # "all" | "strict" for the ei set

    @property
    def overall(self) -> bool:
        return all(it.passed for it in self.items)

    def item(self, item_id: str) -> ConditionItem:
        for it in self.items:
            if it.item_id == item_id:
                return it
        raise KeyError(item_id)

    def to_dict(self) -> dict:
        out = {
            "set": self.set_name,
            "idempotent": self.idempotent.as_list(),
            "items": [it.to_dict() for it in self.items],
            "overall": self.overall,
        }
        if self.mode is not None:
            out["mode"] = self.mode
        return out


def _components(ring: Ring, e_idx: int):
    """Index vectors of eme, em-eme, me-eme, m-em-me+eme over all m."""
    M, A, N = ring.mul_table, ring.add_table, ring.neg_table
    idx = np.arange(ring.order, dtype=np.int64)
    em = M[e_idx, :]
    me = M[:, e_idx]
    eme = M[em, e_idx]
    return {
        "11": eme,
        "12": A[em, N[eme]],
        "21": A[me, N[eme]],
        "22": A[A[idx, N[em]], A[N[me], eme]],
    }


def _kills_on_right_of(ring: Ring, vec: np.ndarray, side: str, e_idx: int) -> np.ndarray:
    """antecedent[x]: vec[x]*r*e = 0 for all r (side "e1"), or
    vec[x]*r*(1-e) = 0 for all r (side "e2")."""
    M = ring.mul_table
    prod = M[vec]  # [x, r] = vec[x] * r
    if side == "e1":
        return (M[prod, e_idx] == 0).all(axis=1)
    if side == "e2":
        return (prod == M[prod, e_idx]).all(axis=1)
    raise ValueError(side)


def check_conditions(
    ring: Ring,
    e: Element,
    set_name: str,
    strict: bool = False,
    max_size: int | None = None,
) -> ConditionReport:
    """Scan one hypothesis set at an idempotent; witnesses are lowest-index."""
    if set_name not in CONDITION_SETS:
        raise SpecError(f"unknown condition set {set_name!r}; known: {sorted(CONDITION_SETS)}")
    e = ring.element(e)
    if ring.mul(e, e) != e:
        raise SpecError(f"{e} is not idempotent")
    guard = scan_guard(max_size)
    if ring.order > guard:
        raise GuardError(f"ring order {ring.order} exceeds size guard {guard}")

    n = ring.order
    M = ring.mul_table
    e_idx = ring.index(e)
    idx = np.arange(n, dtype=np.int64)
    items: list[ConditionItem] = []
    mode = None

    def finish(item_id, antecedent, consequent_holds, domain=None):
        failing = antecedent & ~consequent_holds
        if domain is not None:
            failing &= domain
        where = np.flatnonzero(failing)
        if where.size:
            items.append(ConditionItem(item_id, False, ring.at(int(where[0]))))
        else:
            items.append(ConditionItem(item_id, True, None))

    if set_name == "thm1":
        xe = M[:, e_idx]
        finish("i", _kills_on_right_of(ring, xe, "e2", e_idx), idx == 0)
        rex = M[M[:, e_idx]]  # [r, x] = (r*e)*x
        finish("ii", (rex == 0).all(axis=0), idx == 0)
    elif set_name == "thm2":
        xe = M[:, e_idx]
        finish("i", (M[xe] == 0).all(axis=1), idx == 0)
        finish("ii", (M == 0).all(axis=0), idx == 0)
        exe = M[M[e_idx, :], e_idx]
        finish("iii", _kills_on_right_of(ring, exe, "e2", e_idx), exe == 0)
    else:
        mode = "strict" if strict else "all"
        domain = None
        if strict:
            domain = np.ones(n, dtype=bool)
            for z in center(ring, max_size=max_size):
                domain &= M[:, ring.index(z)] == 0
        comps = _components(ring, e_idx)
        layout = {
            "I": ("11", "e2"),
            "II": ("12", "e1"),
            "III": ("12", "e2"),
            "IV": ("21", "e2"),
            "V": ("22", "e1"),
            "VI": ("22", "e2"),
        }
        for item_id in CONDITION_SETS["ei"]:
            comp_key, side = layout[item_id]
            vec = comps[comp_key]
            antecedent = _kills_on_right_of(ring, vec, side, e_idx)
            finish(item_id, antecedent, vec == 0, domain)

    return ConditionReport(set_name, e, items, mode)


# -- independent witness revalidation ------------------------------------------
# Deliberately written with plain element loops, no shared table machinery.


def witness_revalidate(
    ring: Ring, e: Element, condition_id: str, w: Element, strict: bool = False
) -> bool:
    """True iff w satisfies the antecedent and violates the consequent of the
    condition named by a qualified id like "thm1.i" or "ei.IV"."""
    try:
        set_name, item_id = condition_id.split(".", 1)
    except ValueError:
        raise SpecError(
            f"condition id must look like 'thm2.iii', got {condition_id!r}"
        ) from None
    if set_name not in CONDITION_SETS or item_id not in CONDITION_SETS[set_name]:
        raise SpecError(f"unknown condition id {condition_id!r}")
    e = ring.element(e)
    if ring.mul(e, e) != e:
        raise SpecError(f"{e} is not idempotent")
    w = ring.element(w)
    zero = ring.zero

    def times_one_minus_e(t):
        return ring.sub(t, ring.mul(t, e))

    def comp(m, key):
        em = ring.mul(e, m)
        me = ring.mul(m, e)
        eme = ring.mul(em, e)
        if key == "11":
            return eme
        if key == "12":
            return ring.sub(em, eme)
        if key == "21":
            return ring.sub(me, eme)
        return ring.add(ring.sub(ring.sub(m, em), me), eme)

    elements = ring.elements()

    if set_name == "thm1" and item_id == "i":
        antecedent = all(
            times_one_minus_e(ring.mul(ring.mul(w, e), r)) == zero for r in elements
        )
        return antecedent and w != zero
    if set_name == "thm1" and item_id == "ii":
        antecedent = all(ring.mul(ring.mul(r, e), w) == zero for r in elements)
        return antecedent and w != zero
    if set_name == "thm2" and item_id == "i":
        antecedent = all(ring.mul(ring.mul(w, e), r) == zero for r in elements)
        return antecedent and w != zero
    if set_name == "thm2" and item_id == "ii":
        antecedent = all(ring.mul(r, w) == zero for r in elements)
        return antecedent and w != zero
    if set_name == "thm2" and item_id == "iii":
        exe = comp(w, "11")
        antecedent = all(
            times_one_minus_e(ring.mul(exe, r)) == zero for r in elements
        )
        return antecedent and exe != zero

    comp_key, side = {"I": ("11", "e2"), "II": ("12", "e1"), "III": ("12", "e2"),
                      "IV": ("21", "e2"), "V": ("22", "e1"), "VI": ("22", "e2")}[item_id]
    if strict and any(ring.mul(w, z) != zero for z in center(ring)):
        return False
    part = comp(w, comp_key)
    if side == "e1":
        antecedent = all(
            ring.mul(ring.mul(part, r), e) == zero for r in elements
        )
    else:
        antecedent = all(
            times_one_minus_e(ring.mul(part, r)) == zero for r in elements
        )
    return antecedent and part != zero
