"""Idempotents and two-sided Peirce decompositions.

For an idempotent e the ring splits as R = R11 + R12 + R21 + R22 with
R11 = eRe, R12 = eR(1-e), R21 = (1-e)Re, R22 = (1-e)R(1-e). The projections
are computed in unit-free form (x12 = ex - exe and so on) so non-unital
rings are covered; in unital rings both readings agree.
"""

from __future__ import annotations

import numpy as np

from .rings import Element, GuardError, Ring, SpecError, scan_guard

COMPONENT_TAGS = ((1, 1), (1, 2), (2, 1), (2, 2))


def find_idempotents(
    ring: Ring, max_size: int | None = None
) -> list[tuple[Element, bool]]:
    """All e with e*e = e, in index order, each flagged nontrivial.

    Nontrivial means e != 0 and, when the ring has a unit, e != 1.
    """
    guard = scan_guard(max_size)
    if ring.order > guard:
        raise GuardError(f"ring order {ring.order} exceeds size guard {guard}")
    M = ring.mul_table
    diag = M[np.arange(ring.order), np.arange(ring.order)]
    unit_idx = ring.index(ring.unit) if ring.unit is not None else None
    out = []
    for i in np.flatnonzero(diag == np.arange(ring.order)):
        i = int(i)
        nontrivial = i != 0 and i != unit_idx
        out.append((ring.at(i), nontrivial))
    return out


def is_nontrivial_idempotent(ring: Ring, e: Element) -> bool:
    if ring.mul(e, e) != e or e == ring.zero:
        return False
    return ring.unit is None or e != ring.unit


class PeirceDecomposition:
    """Peirce components and projections relative to a nontrivial idempotent.

    Components are materialized as index sets because downstream condition
    checks quantify over them. Directness is verified at construction: the
    projections must reconstruct every element and the component sizes must
    multiply out to |R|.
    """

    def __init__(self, ring: Ring, e: Element):
        e = ring.element(e)
        if ring.mul(e, e) != e:
            raise SpecError(f"{e} is not idempotent")
        if not is_nontrivial_idempotent(ring, e):
            raise SpecError(f"{e} is a trivial idempotent (0 or the unit)")
        self.ring = ring
        self.e = e
        self.unital = ring.unit is not None

        n = ring.order
        M, A, N = ring.mul_table, ring.add_table, ring.neg_table
        idx = np.arange(n, dtype=np.int64)
        ei = ring.index(e)
        ex = M[ei, :]                      # e*x
        xe = M[:, ei]                      # x*e
        exe = M[ex, ei]                    # (e*x)*e
        self._proj = {
            (1, 1): exe,
            (1, 2): A[ex, N[exe]],         # ex - exe
            (2, 1): A[xe, N[exe]],         # xe - exe
            (2, 2): A[A[idx, N[ex]], A[N[xe], exe]],
        }
        total = A[A[self._proj[1, 1], self._proj[1, 2]],
                  A[self._proj[2, 1], self._proj[2, 2]]]
        if not np.array_equal(total, idx):
            raise AssertionError("internal error: projections do not reconstruct x")

        self._members = {
            tag: [int(i) for i in np.unique(self._proj[tag])]
            for tag in COMPONENT_TAGS
        }
        self._member_sets = {tag: set(m) for tag, m in self._members.items()}
        sizes = [len(self._members[tag]) for tag in COMPONENT_TAGS]
        if math_prod(sizes) != n:
            raise AssertionError(
                f"internal error: decomposition not direct, sizes {sizes} for order {n}"
            )

    def projections(self, x: Element) -> tuple[Element, Element, Element, Element]:
        """(x11, x12, x21, x22) with x = x11 + x12 + x21 + x22."""
        i = self.ring.index(self.ring.element(x))
        return tuple(self.ring.at(int(self._proj[tag][i])) for tag in COMPONENT_TAGS)

    def component_indices(self, i: int, j: int) -> list[int]:
        return list(self._members[(i, j)])

    def component_elements(self, i: int, j: int) -> list[Element]:
        return [self.ring.at(m) for m in self._members[(i, j)]]

    def component_sizes(self) -> dict[tuple[int, int], int]:
        return {tag: len(self._members[tag]) for tag in COMPONENT_TAGS}

    def contains(self, tag: tuple[int, int], index: int) -> bool:
        return index in self._member_sets[tag]

    def component_of(self, x: Element):
        """Tag (i, j) when x sits in exactly one component, "zero" for 0,
        "mixed" when more than one projection is nonzero."""
        i = self.ring.index(self.ring.element(x))
        nonzero = [tag for tag in COMPONENT_TAGS if int(self._proj[tag][i]) != 0]
        if not nonzero:
            return "zero"
        if len(nonzero) == 1:
            return nonzero[0]
        return "mixed"

    def e_times_ring(self) -> list[int]:
        """Index set of eR = R11 + R12."""
        ei = self.ring.index(self.e)
        return [int(i) for i in np.unique(self.ring.mul_table[ei, :])]

    def to_dict(self) -> dict:
        return {
            "idempotent": self.e.as_list(),
            "unital": self.unital,
            "sizes": {f"{i}{j}": len(self._members[(i, j)]) for i, j in COMPONENT_TAGS},
            "members": {
                f"{i}{j}": self._members[(i, j)] for i, j in COMPONENT_TAGS
            },
        }


def math_prod(xs) -> int:
    out = 1
    for x in xs:
        out *= x
    return out


def peirce_decompose(ring: Ring, e: Element) -> PeirceDecomposition:
    return PeirceDecomposition(ring, e)


def verify_component_products(dec: PeirceDecomposition):
    """Full scan of R_ij * R_kl <= R_il (j = k) or = 0 (j != k).

    Returns (ok, witness) where witness is (tag_ij, tag_kl, x, y) for the
    first violating pair in component-then-index order.
    """
    M = dec.ring.mul_table
    for tag1 in COMPONENT_TAGS:
        for tag2 in COMPONENT_TAGS:
            chained = tag1[1] == tag2[0]
            target = (tag1[0], tag2[1])
            for x in dec.component_indices(*tag1):
                row = M[x]
                for y in dec.component_indices(*tag2):
                    p = int(row[y])
                    if chained:
                        if not dec.contains(target, p):
                            return False, (tag1, tag2, dec.ring.at(x), dec.ring.at(y))
                    elif p != 0:
                        return False, (tag1, tag2, dec.ring.at(x), dec.ring.at(y))
    return True, None
