"""Self-maps of a ring stored as index tables, and their classification.

A MapTable is a total function on ring elements, not assumed additive.
Classification decides each defining law by exhaustive pair (or triple)
scan and keeps the lowest-index violating tuple as a witness:

    additive            f(a+b) = f(a) + f(b)
    derivation law      f(ab)  = f(a)b + af(b)
    reverse law         f(ab)  = f(b)a + bf(a)
    Jordan law          f(ab+ba) = f(a)b + af(b) + f(b)a + bf(a)
    left centralizer    f(ab)  = f(a)b
    right centralizer   f(ab)  = af(b)

The additivity defect of a map is defect(x, y) = f(x+y) - f(x) - f(y);
a map is additive exactly when the defect vanishes everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import dsl
from .peirce import COMPONENT_TAGS, PeirceDecomposition
from .rings import Element, GuardError, Ring, SpecError, scan_guard

_SCAN_CHUNK = 1 << 22


class MapTable:
    """A total self-map of a ring, stored element-index to element-index."""

    def __init__(self, ring: Ring, table, label: str = "map"):
        self.ring = ring
        arr = np.asarray(table, dtype=np.int64)
        if arr.shape != (ring.order,):
            raise SpecError(
                f"map table must have length {ring.order}, got shape {arr.shape}"
            )
        if arr.min(initial=0) < 0 or arr.max(initial=0) >= ring.order:
            raise SpecError("map table contains an out-of-range image index")
        arr = arr.astype(np.int32)
        arr.flags.writeable = False
        self.table = arr
        self.label = str(label)

    def __call__(self, x: Element) -> Element:
        return self.ring.at(int(self.table[self.ring.index(self.ring.element(x))]))

    def image_index(self, i: int) -> int:
        return int(self.table[i])

    def as_tuple(self) -> tuple[int, ...]:
        return tuple(int(v) for v in self.table)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MapTable)
            and self.ring.same_structure(other.ring)
            and np.array_equal(self.table, other.table)
        )

    def __repr__(self) -> str:
        return f"MapTable({self.label!r} on {self.ring.name}, {self.ring.order} entries)"

    def to_dict(self) -> dict:
        return {
            "type": "table",
            "entries": [
                [self.ring.at(i).as_list(), self.ring.at(int(v)).as_list()]
                for i, v in enumerate(self.table)
            ],
        }


# -- construction ---------------------------------------------------------------


@dataclass(frozen=True)
class CatalogMap:
    name: str
    arity: int
    expr_text: str
    fn: object  # integer coords -> integer coords


def _catalog_entries():
    return {
        "zero": None,  # built per-ring below
        "eg1_map": CatalogMap(
            "eg1_map", 3, "vars m,n,p : (m, n*p, -p)",
            lambda c: (c[0], c[1] * c[2], -c[2]),
        ),
        "eg2_map": CatalogMap(
            "eg2_map", 2, "vars a,b : (0, b)",
            lambda c: (0, c[1]),
        ),
        "lambda": CatalogMap(
            "lambda", 3, "vars a,b,c : (0, -b, c)",
            lambda c: (0, -c[1], c[2]),
        ),
        "phi": CatalogMap(
            "phi", 3, "vars a,b,c : (0, -b, -c)",
            lambda c: (0, -c[1], -c[2]),
        ),
    }


MAP_CATALOG = _catalog_entries()


def zero_map_expr_text(ring: Ring) -> str:
    names = [f"x{i}" for i in range(ring.k)]
    zeros = ", ".join("0" for _ in range(ring.k))
    return f"vars {','.join(names)} : ({zeros})"


def catalog_map_expr_text(name: str, ring: Ring) -> str:
    if name == "zero":
        return zero_map_expr_text(ring)
    entry = MAP_CATALOG.get(name)
    if entry is None:
        raise SpecError(f"unknown catalog map {name!r}; known: {sorted(MAP_CATALOG)}")
    return entry.expr_text


def _map_from_fn(ring: Ring, fn, label: str) -> MapTable:
    table = np.empty(ring.order, dtype=np.int64)
    for i in range(ring.order):
        x = ring.at(i)
        table[i] = ring.index(ring.element(fn(x.coords)))
    return MapTable(ring, table, label)


def eval_map_expr(ring: Ring, expr: dsl.MapExpr, label: str | None = None) -> MapTable:
    """Materialize a coordinate-expression map over a whole ring."""
    if len(expr.coords) != ring.k:
        raise SpecError(
            f"expression produces {len(expr.coords)} coordinates, ring needs {ring.k}"
        )
    if len(expr.vars) != ring.k:
        raise SpecError(
            f"expression declares {len(expr.vars)} variables, ring needs {ring.k}"
        )
    return _map_from_fn(
        ring, lambda coords: dsl.eval_coords(expr, coords), label or str(expr)
    )


def build_map(ring: Ring, source, label: str | None = None) -> MapTable:
    """Build a MapTable from a catalog id, a map-file dict, a parsed
    expression, DSL text, or a raw image-index table."""
    if isinstance(source, MapTable):
        if not ring.same_structure(source.ring):
            raise SpecError("map was built for a structurally different ring")
        return source
    if isinstance(source, dsl.MapExpr):
        return eval_map_expr(ring, source, label)
    if isinstance(source, str):
        if source == "zero":
            return MapTable(ring, np.zeros(ring.order, dtype=np.int64), "zero")
        if source in MAP_CATALOG:
            entry = MAP_CATALOG[source]
            if entry.arity != ring.k:
                raise SpecError(
                    f"catalog map {source!r} needs {entry.arity} coordinates, "
                    f"ring {ring.name} has {ring.k}"
                )
            return _map_from_fn(ring, entry.fn, source)
        if source.lstrip().startswith("vars"):
            return eval_map_expr(ring, dsl.parse_map_expr(source), label)
        raise SpecError(f"unknown catalog map {source!r}; known: {sorted(MAP_CATALOG)}")
    if isinstance(source, dict):
        return _map_from_dict(ring, source, label)
    try:
        return MapTable(ring, list(source), label or "table")
    except TypeError:
        raise SpecError(f"cannot build a map from {type(source).__name__}") from None


def _map_from_dict(ring: Ring, spec: dict, label: str | None) -> MapTable:
    kind = spec.get("type")
    if kind == "catalog":
        return build_map(ring, spec["name"], label)
    if kind == "expr":
        expr = dsl.parse_map_expr(spec["expr"])
        declared = spec.get("vars")
        if declared is not None and tuple(declared) != expr.vars:
            raise SpecError(
                f"map file vars {declared} disagree with expression vars {list(expr.vars)}"
            )
        return eval_map_expr(ring, expr, label)
    if kind == "table":
        table = np.zeros(ring.order, dtype=np.int64)
        seen = np.zeros(ring.order, dtype=bool)
        for pair in spec["entries"]:
            if len(pair) != 2:
                raise SpecError("table entries must be [source, image] coordinate pairs")
            src = ring.index(ring.element(pair[0]))
            table[src] = ring.index(ring.element(pair[1]))
            seen[src] = True
        if not seen.all():
            raise SpecError(
                f"map table is not total: {int((~seen).sum())} elements have no image"
            )
        return MapTable(ring, table, label or "table")
    raise SpecError(f"unknown map source type {kind!r}")


def load_map(ring: Ring, path: str, label: str | None = None) -> MapTable:
    import json

    try:
        with open(path, "r", encoding="utf-8") as fh:
            spec = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SpecError(f"malformed map file {path}: {exc}") from None
    return build_map(ring, spec, label)


# -- law checks ------------------------------------------------------------------


@dataclass
class LawCheck:
    """Outcome of one exhaustive law scan; witness is the lowest violating tuple."""

    ok: bool
    witness: tuple[Element, ...] | None = None

    def to_dict(self) -> dict:
        return {
            "pass": self.ok,
            "witness": None if self.witness is None else [w.as_list() for w in self.witness],
        }


def _pair_check(m: MapTable, lhs: np.ndarray, rhs: np.ndarray) -> LawCheck:
    bad = lhs != rhs
    if not bad.any():
        return LawCheck(True)
    a, b = (int(v) for v in np.argwhere(bad)[0])
    return LawCheck(False, (m.ring.at(a), m.ring.at(b)))


def _guard(ring: Ring, max_size: int | None) -> None:
    guard = scan_guard(max_size)
    if ring.order > guard:
        raise GuardError(f"ring order {ring.order} exceeds size guard {guard}")


def check_additive(m: MapTable, max_size: int | None = None) -> LawCheck:
    _guard(m.ring, max_size)
    A, f = m.ring.add_table, m.table
    return _pair_check(m, f[A], A[np.ix_(f, f)])


def check_derivation_law(m: MapTable, max_size: int | None = None) -> LawCheck:
    _guard(m.ring, max_size)
    A, M, f = m.ring.add_table, m.ring.mul_table, m.table
    return _pair_check(m, f[M], A[M[f], M[:, f]])


def check_reverse_law(m: MapTable, max_size: int | None = None) -> LawCheck:
    _guard(m.ring, max_size)
    A, M, f = m.ring.add_table, m.ring.mul_table, m.table
    return _pair_check(m, f[M], A[M[f].T, M[:, f].T])


def check_jordan_law(m: MapTable, max_size: int | None = None) -> LawCheck:
    _guard(m.ring, max_size)
    A, M, f = m.ring.add_table, m.ring.mul_table, m.table
    lhs = f[A[M, M.T]]
    rhs = A[A[M[f], M[:, f]], A[M[f].T, M[:, f].T]]
    return _pair_check(m, lhs, rhs)


def check_left_centralizer(m: MapTable, max_size: int | None = None) -> LawCheck:
    _guard(m.ring, max_size)
    M, f = m.ring.mul_table, m.table
    return _pair_check(m, f[M], M[f])


def check_right_centralizer(m: MapTable, max_size: int | None = None) -> LawCheck:
    _guard(m.ring, max_size)
    M, f = m.ring.mul_table, m.table
    return _pair_check(m, f[M], M[:, f])


@dataclass
class MapClassification:
    additive: LawCheck
    derivation: LawCheck
    reverse_derivation: LawCheck
    jordan_derivation: LawCheck
    left_centralizer: LawCheck
    right_centralizer: LawCheck

    def to_dict(self) -> dict:
        return {
            "additive": self.additive.to_dict(),
            "derivation": self.derivation.to_dict(),
            "reverse_derivation": self.reverse_derivation.to_dict(),
            "jordan_derivation": self.jordan_derivation.to_dict(),
            "left_centralizer": self.left_centralizer.to_dict(),
            "right_centralizer": self.right_centralizer.to_dict(),
        }


def classify_map(m: MapTable, max_size: int | None = None) -> MapClassification:
    """Decide every defining law by full pair scan."""
    return MapClassification(
        additive=check_additive(m, max_size),
        derivation=check_derivation_law(m, max_size),
        reverse_derivation=check_reverse_law(m, max_size),
        jordan_derivation=check_jordan_law(m, max_size),
        left_centralizer=check_left_centralizer(m, max_size),
        right_centralizer=check_right_centralizer(m, max_size),
    )


def is_n_multiplicative(m: MapTable, n: int, max_size: int | None = None) -> LawCheck:
    """Leibniz-style law over n-fold products, n in {2, 3}; exhaustive scan."""
    if n not in (2, 3):
        raise SpecError(f"n must be 2 or 3, got {n}")
    if n == 2:
        return check_derivation_law(m, max_size)
    _guard(m.ring, max_size)
    ring = m.ring
    A, M, f = ring.add_table, ring.mul_table, m.table
    nn = ring.order
    step = max(1, _SCAN_CHUNK // (nn * nn))
    for a0 in range(0, nn, step):
        ab = M[a0 : a0 + step]                      # (s, n) a*b
        lhs = f[M[ab]]                              # f((a*b)*c)
        t1 = M[M[f[a0 : a0 + step]]]                # (f(a)*b)*c
        t2 = M[M[:, f][a0 : a0 + step]]             # (a*f(b))*c
        t3 = M[ab[:, :, None], f[None, None, :]]    # (a*b)*f(c)
        rhs = A[A[t1, t2], t3]
        bad = lhs != rhs
        if bad.any():
            a, b, c = (int(v) for v in np.argwhere(bad)[0])
            return LawCheck(False, (ring.at(a0 + a), ring.at(b), ring.at(c)))
    return LawCheck(True)


def is_generalized_derivation(
    f: MapTable, d: MapTable, max_size: int | None = None
) -> LawCheck:
    """Check F(ab) = F(a)b + a d(b) on all pairs."""
    if not f.ring.same_structure(d.ring):
        raise SpecError("the two maps live on structurally different rings")
    _guard(f.ring, max_size)
    A, M = f.ring.add_table, f.ring.mul_table
    return _pair_check(f, f.table[M], A[M[f.table], M[:, d.table]])


# -- additivity defect ------------------------------------------------------------


def additivity_defect(m: MapTable, x: Element, y: Element) -> Element:
    """f(x+y) - f(x) - f(y); zero everywhere iff the map is additive."""
    r = m.ring
    return r.sub(r.sub(m(r.add(x, y)), m(x)), m(y))


def _defect_table(m: MapTable) -> np.ndarray:
    A, N, f = m.ring.add_table, m.ring.neg_table, m.table
    return A[f[A], N[A[np.ix_(f, f)]]]


def check_defect_identities(m: MapTable, max_size: int | None = None) -> LawCheck:
    """Verify, for every triple (r, x, y), that the additivity defect D obeys
    r*D(x,y) = D(xr, yr) and D(x,y)*r = D(rx, ry).

    Both identities follow from the reverse law, so the map must already
    satisfy it; a failure here would indicate an arithmetic bug.
    """
    _guard(m.ring, max_size)
    if not check_reverse_law(m, max_size).ok:
        raise SpecError("defect identities are only meaningful for reverse derivable maps")
    ring = m.ring
    M = ring.mul_table
    D = _defect_table(m)
    for r in range(ring.order):
        right_col = M[:, r]                    # x*r for each x
        lhs1 = M[r, D]
        rhs1 = D[np.ix_(right_col, right_col)]
        bad = lhs1 != rhs1
        if bad.any():
            x, y = (int(v) for v in np.argwhere(bad)[0])
            return LawCheck(False, (ring.at(r), ring.at(x), ring.at(y)))
        left_row = M[r, :]                     # r*x for each x
        lhs2 = M[D, r]
        rhs2 = D[np.ix_(left_row, left_row)]
        bad = lhs2 != rhs2
        if bad.any():
            x, y = (int(v) for v in np.argwhere(bad)[0])
            return LawCheck(False, (ring.at(r), ring.at(x), ring.at(y)))
    return LawCheck(True)


# -- structure relative to a Peirce decomposition ----------------------------------


@dataclass
class StructureItem:
    """One observation; passed is None when the item was skipped."""

    item_id: str
    passed: bool | None
    witness: tuple[Element, ...] | None = None

    def to_dict(self) -> dict:
        return {
            "id": self.item_id,
            "pass": self.passed,
            "witness": None if self.witness is None else [w.as_list() for w in self.witness],
        }


@dataclass
class StructureReport:
    map_label: str
    idempotent: Element
    items: list[StructureItem]

    def all_passed(self) -> bool:
        return all(item.passed for item in self.items if item.passed is not None)

    def item(self, item_id: str) -> StructureItem:
        for it in self.items:
            if it.item_id == item_id:
                return it
        raise KeyError(item_id)

    def to_dict(self) -> dict:
        return {
            "map": self.map_label,
            "idempotent": self.idempotent.as_list(),
            "items": [it.to_dict() for it in self.items],
            "all_pass": self.all_passed(),
        }


def _additive_on(m: MapTable, xs: list[int], ys: list[int]) -> StructureItem:
    A, f = m.ring.add_table, m.table
    for x in xs:
        for y in ys:
            if int(f[A[x, y]]) != int(A[f[x], f[y]]):
                return StructureItem("", False, (m.ring.at(x), m.ring.at(y)))
    return StructureItem("", True)


def _named(item: StructureItem, item_id: str) -> StructureItem:
    item.item_id = item_id
    return item


def verify_reverse_map_structure(
    m: MapTable, dec: PeirceDecomposition
) -> StructureReport:
    """Observe, per (ring, idempotent, map): does the map kill e; do images of
    the Peirce components land in the transposed components; is the map
    additive on each component, on diagonal/off-diagonal mixed pairs, and on
    eR. Each item is an independent observation with its own witness.

    Containment items are only evaluated when the map kills e (they are
    derived from that fact), otherwise they are reported as skipped.
    """
    if not check_reverse_law(m).ok:
        raise SpecError("structure report requires a reverse derivable map")
    if not m.ring.same_structure(dec.ring):
        raise SpecError("map and decomposition belong to different rings")
    ring = m.ring
    f = m.table
    items: list[StructureItem] = []

    e_idx = ring.index(dec.e)
    kills_e = int(f[e_idx]) == 0
    items.append(
        StructureItem(
            "e_image_zero", kills_e, None if kills_e else (ring.at(int(f[e_idx])),)
        )
    )

    swap = {(1, 1): (1, 1), (1, 2): (2, 1), (2, 1): (1, 2), (2, 2): (2, 2)}
    for tag in COMPONENT_TAGS:
        item_id = f"containment_{tag[0]}{tag[1]}"
        if not kills_e:
            items.append(StructureItem(item_id, None))
            continue
        target = swap[tag]
        witness = None
        for x in dec.component_indices(*tag):
            if not dec.contains(target, int(f[x])):
                witness = (ring.at(x),)
                break
        items.append(StructureItem(item_id, witness is None, witness))

    for tag in COMPONENT_TAGS:
        members = dec.component_indices(*tag)
        items.append(
            _named(_additive_on(m, members, members), f"additive_on_{tag[0]}{tag[1]}")
        )

    diag = sorted(set(dec.component_indices(1, 1)) | set(dec.component_indices(2, 2)))
    off = sorted(set(dec.component_indices(1, 2)) | set(dec.component_indices(2, 1)))
    items.append(_named(_additive_on(m, diag, off), "additive_on_mixed_pairs"))

    e_row = dec.e_times_ring()
    items.append(_named(_additive_on(m, e_row, e_row), "additive_on_eR"))

    return StructureReport(m.label, dec.e, items)
