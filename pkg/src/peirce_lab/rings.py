"""Finite rings presented by cyclic moduli and multiplication structure constants.

The additive group is Z_{d_0} x ... x Z_{d_(k-1)}. Multiplication is the
bilinear extension of the generator products b_i * b_j = sum_l c[i][j][l] b_l,
with the l-th coordinate reduced mod d_l. Everything here is finite and small
enough for exhaustive scanning, which the rest of the package relies on.

Elements are coordinate vectors of residues. Each element also has a mixed
radix index (coordinate 0 is the fastest digit), used for deterministic
ordering, witnesses and table lookups.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from functools import cached_property

import numpy as np

DEFAULT_MAX_RING_SIZE = 4096
GUARD_ENV_VAR = "PEIRCE_LAB_MAX_RING_SIZE"

# chunk budget for table-building and triple scans, in array cells
_CHUNK_CELLS = 1 << 24


class SpecError(ValueError):
    """A ring or map description is malformed or violates its invariants."""


class GuardError(RuntimeError):
    """A construction, scan or search would exceed the configured guard."""


def scan_guard(override: int | None = None) -> int:
    """Effective full-scan size guard; PEIRCE_LAB_MAX_RING_SIZE overrides the default."""
    if override is not None:
        value = int(override)
    else:
        raw = os.environ.get(GUARD_ENV_VAR)
        if raw is None:
            return DEFAULT_MAX_RING_SIZE
        try:
            value = int(raw)
        except ValueError:
            raise SpecError(f"{GUARD_ENV_VAR} must be an integer, got {raw!r}") from None
    if value < 1:
        raise SpecError(f"size guard must be positive, got {value}")
    return value


@dataclass(frozen=True)
class Element:
    """A ring element: one canonical residue per modulus."""

    coords: tuple[int, ...]

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.coords)

    def as_list(self) -> list[int]:
        return list(self.coords)


def parse_coords(text: str) -> tuple[int, ...]:
    """Parse the comma-separated element syntax, e.g. "3,0"."""
    parts = [p.strip() for p in text.split(",")]
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise SpecError(f"bad element syntax {text!r}, expected comma-separated integers") from None


class Ring:
    """A validated finite ring.

    moduli        -- additive orders of the generators b_0..b_(k-1), all >= 2
    mul_constants -- k x k table of k-vectors, entry [i][j] = coords of b_i*b_j
    unit          -- multiplicative identity, or None for non-unital rings

    Construction checks (unless validate=False, a test backdoor): shape,
    the size guard, well-definedness of the bilinear extension
    (d_i*c[i][j][l] = d_j*c[i][j][l] = 0 mod d_l), associativity on all
    generator triples, and the declared unit against every element.
    """

    def __init__(
        self,
        name: str,
        moduli,
        mul_constants,
        unit=None,
        *,
        validate: bool = True,
        max_size: int | None = None,
    ):
        self.name = str(name)
        try:
            self.moduli = tuple(int(d) for d in moduli)
        except (TypeError, ValueError):
            raise SpecError("moduli must be a list of integers") from None
        if not self.moduli:
            raise SpecError("moduli must be non-empty")
        if any(d < 2 for d in self.moduli):
            raise SpecError(f"all moduli must be >= 2, got {list(self.moduli)}")
        self.k = len(self.moduli)
        self.order = math.prod(self.moduli)
        if validate:
            guard = scan_guard(max_size)
            if self.order > guard:
                raise GuardError(f"ring order {self.order} exceeds size guard {guard}")

        const = np.array(mul_constants, dtype=np.int64)
        if const.shape != (self.k, self.k, self.k):
            raise SpecError(
                f"mul_constants must have shape {(self.k,) * 3}, got {const.shape}"
            )
        mods = np.array(self.moduli, dtype=np.int64)
        const %= mods  # canonical residues, broadcast over the last axis
        const.flags.writeable = False
        self.mul_constants = const
        self._mods = mods
        strides = [1]
        for d in self.moduli[:-1]:
            strides.append(strides[-1] * d)
        self._strides = np.array(strides, dtype=np.int64)
        self._const_rows = tuple(
            tuple(tuple(int(v) for v in const[i, j]) for j in range(self.k))
            for i in range(self.k)
        )

        if validate:
            self._check_well_defined()
            self._check_basis_associativity()

        self.unit = self.element(unit) if unit is not None else None
        if validate and self.unit is not None:
            self._check_unit()

    # -- element plumbing ---------------------------------------------------

    def element(self, coords) -> Element:
        """Canonicalize a coordinate vector into an Element of this ring."""
        coords = tuple(coords.coords if isinstance(coords, Element) else coords)
        if len(coords) != self.k:
            raise SpecError(f"expected {self.k} coordinates, got {len(coords)}")
        return Element(tuple(int(c) % d for c, d in zip(coords, self.moduli)))

    @property
    def zero(self) -> Element:
        return Element((0,) * self.k)

    def index(self, x: Element) -> int:
        i = 0
        for c, s in zip(x.coords, self._strides):
            i += c * int(s)
        return i

    def at(self, i: int) -> Element:
        if not 0 <= i < self.order:
            raise SpecError(f"element index {i} out of range [0, {self.order})")
        coords = []
        for d in self.moduli:
            coords.append(i % d)
            i //= d
        return Element(tuple(coords))

    def elements(self, max_size: int | None = None) -> list[Element]:
        """All elements in mixed radix order; index 0 is the zero element."""
        guard = scan_guard(max_size)
        if self.order > guard:
            raise GuardError(f"ring order {self.order} exceeds size guard {guard}")
        return [self.at(i) for i in range(self.order)]

    # -- arithmetic ---------------------------------------------------------

    def add(self, x: Element, y: Element) -> Element:
        self._check_arity(x, y)
        return Element(
            tuple((a + b) % d for a, b, d in zip(x.coords, y.coords, self.moduli))
        )

    def neg(self, x: Element) -> Element:
        self._check_arity(x)
        return Element(tuple((-a) % d for a, d in zip(x.coords, self.moduli)))

    def sub(self, x: Element, y: Element) -> Element:
        return self.add(x, self.neg(y))

    def mul(self, x: Element, y: Element) -> Element:
        self._check_arity(x, y)
        acc = [0] * self.k
        for i, xi in enumerate(x.coords):
            if not xi:
                continue
            row = self._const_rows[i]
            for j, yj in enumerate(y.coords):
                if not yj:
                    continue
                f = xi * yj
                cij = row[j]
                for l in range(self.k):
                    acc[l] += f * cij[l]
        return Element(tuple(a % d for a, d in zip(acc, self.moduli)))

    def _check_arity(self, *xs: Element) -> None:
        for x in xs:
            if len(x.coords) != self.k:
                raise SpecError(
                    f"element has {len(x.coords)} coordinates, ring needs {self.k}"
                )

    # -- index tables (lazy, immutable) ---------------------------------------

    @cached_property
    def _coord_matrix(self) -> np.ndarray:
        idx = np.arange(self.order, dtype=np.int64)
        cols = [(idx // int(s)) % d for s, d in zip(self._strides, self.moduli)]
        out = np.stack(cols, axis=1)
        out.flags.writeable = False
        return out

    def _indices_of(self, coords: np.ndarray) -> np.ndarray:
        return (coords % self._mods) @ self._strides

    @cached_property
    def add_table(self) -> np.ndarray:
        """n x n table: add_table[i, j] = index of element(i) + element(j)."""
        n, C = self.order, self._coord_matrix
        out = np.empty((n, n), dtype=np.int32)
        step = max(1, _CHUNK_CELLS // (n * self.k))
        for a in range(0, n, step):
            block = C[a : a + step, None, :] + C[None, :, :]
            out[a : a + step] = self._indices_of(block)
        out.flags.writeable = False
        return out

    @cached_property
    def mul_table(self) -> np.ndarray:
        """n x n table: mul_table[i, j] = index of element(i) * element(j)."""
        n, C = self.order, self._coord_matrix
        out = np.empty((n, n), dtype=np.int32)
        step = max(1, _CHUNK_CELLS // (n * self.k))
        for a in range(0, n, step):
            # partial[c, j, l] = sum_i C[a+c, i] * const[i, j, l]
            partial = np.tensordot(C[a : a + step], self.mul_constants, axes=([1], [0]))
            block = np.einsum("cjl,bj->cbl", partial, C)
            out[a : a + step] = self._indices_of(block)
        out.flags.writeable = False
        return out

    @cached_property
    def neg_table(self) -> np.ndarray:
        out = self._indices_of(-self._coord_matrix).astype(np.int32)
        out.flags.writeable = False
        return out

    # -- validation ---------------------------------------------------------

    def _check_well_defined(self) -> None:
        const, mods = self.mul_constants, self._mods
        d_i = mods[:, None, None]
        d_j = mods[None, :, None]
        bad = ((d_i * const) % mods != 0) | ((d_j * const) % mods != 0)
        if bad.any():
            i, j, l = (int(v) for v in np.argwhere(bad)[0])
            raise SpecError(
                "multiplication is not well defined: "
                f"c[{i}][{j}][{l}] = {int(const[i, j, l])} is not killed by "
                f"the generator orders modulo d_{l} = {self.moduli[l]}"
            )

    def _check_basis_associativity(self) -> None:
        const, mods = self.mul_constants, self._mods
        left = np.einsum("ijl,lmt->ijmt", const, const) % mods
        right = np.einsum("jml,ilt->ijmt", const, const) % mods
        bad = left != right
        if bad.any():
            i, j, m = (int(v) for v in np.argwhere(bad.any(axis=3))[0])
            raise SpecError(
                f"multiplication is not associative on generators: "
                f"(b{i}*b{j})*b{m} != b{i}*(b{j}*b{m})"
            )

    def _check_unit(self) -> None:
        u = self.unit
        for i in range(self.order):
            x = self.at(i)
            if self.mul(u, x) != x or self.mul(x, u) != x:
                raise SpecError(f"declared unit {u} fails on element {x}")

    # -- structural helpers ---------------------------------------------------

    def generator(self, i: int) -> Element:
        coords = [0] * self.k
        coords[i] = 1
        return Element(tuple(coords))

    def same_structure(self, other: "Ring") -> bool:
        return (
            self.moduli == other.moduli
            and np.array_equal(self.mul_constants, other.mul_constants)
            and self.unit == other.unit
        )

    def is_commutative(self) -> bool:
        M = self.mul_table
        return bool(np.array_equal(M, M.T))

    def __repr__(self) -> str:
        unital = "unital" if self.unit is not None else "non-unital"
        return f"Ring({self.name!r}, order={self.order}, {unital})"

    # -- serialization --------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "moduli": list(self.moduli),
            "mul": [
                [[int(v) for v in self.mul_constants[i, j]] for j in range(self.k)]
                for i in range(self.k)
            ],
            "unit": self.unit.as_list() if self.unit is not None else None,
        }


def build_ring(spec: dict, max_size: int | None = None) -> Ring:
    """Build and validate a ring from its file-format dict."""
    if not isinstance(spec, dict):
        raise SpecError("ring spec must be a JSON object")
    missing = {"name", "moduli", "mul"} - spec.keys()
    if missing:
        raise SpecError(f"ring spec is missing keys: {sorted(missing)}")
    return Ring(
        spec["name"],
        spec["moduli"],
        spec["mul"],
        unit=spec.get("unit"),
        max_size=max_size,
    )


def load_ring(path: str, max_size: int | None = None) -> Ring:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            spec = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SpecError(f"malformed ring file {path}: {exc}") from None
    return build_ring(spec, max_size=max_size)


# -- full-element axiom verification -----------------------------------------


@dataclass
class AxiomReport:
    """Outcome of the full element-level axiom scan."""

    ok: bool
    associativity: tuple[Element, Element, Element] | None
    left_distributivity: tuple[Element, Element, Element] | None
    right_distributivity: tuple[Element, Element, Element] | None
    unit_failure: Element | None

    def to_dict(self) -> dict:
        def triple(t):
            return None if t is None else [x.as_list() for x in t]

        return {
            "ok": self.ok,
            "associativity": triple(self.associativity),
            "left_distributivity": triple(self.left_distributivity),
            "right_distributivity": triple(self.right_distributivity),
            "unit_failure": None
            if self.unit_failure is None
            else self.unit_failure.as_list(),
        }


def _first_bad_triple(ring: Ring, lhs_fn, rhs_fn) -> tuple | None:
    """Chunked scan over all (a, b, c); returns the lowest failing triple."""
    n = ring.order
    step = max(1, _CHUNK_CELLS // (n * n))
    for a0 in range(0, n, step):
        bad = lhs_fn(a0, a0 + step) != rhs_fn(a0, a0 + step)
        if bad.any():
            a, b, c = (int(v) for v in np.argwhere(bad)[0])
            return ring.at(a0 + a), ring.at(b), ring.at(c)
    return None


def verify_ring_axioms(ring: Ring, max_size: int | None = None) -> AxiomReport:
    """Confirm associativity and both distributive laws on all element triples,
    plus the declared unit; reports the first counterexample per law."""
    guard = scan_guard(max_size)
    if ring.order > guard:
        raise GuardError(f"ring order {ring.order} exceeds size guard {guard}")
    M, A = ring.mul_table, ring.add_table

    assoc = _first_bad_triple(
        ring,
        lambda lo, hi: M[M[lo:hi]],                 # (a*b)*c
        lambda lo, hi: M[lo:hi][:, M],              # a*(b*c)
    )
    ldist = _first_bad_triple(
        ring,
        lambda lo, hi: M[A[lo:hi]],                 # (a+b)*c
        lambda lo, hi: A[M[lo:hi][:, None, :], M[None, :, :]],  # a*c + b*c
    )
    rdist = _first_bad_triple(
        ring,
        lambda lo, hi: M[lo:hi][:, A],              # a*(b+c)
        lambda lo, hi: A[M[lo:hi][:, :, None], M[lo:hi][:, None, :]],  # a*b + a*c
    )

    unit_failure = None
    if ring.unit is not None:
        u = ring.index(ring.unit)
        idx = np.arange(ring.order, dtype=M.dtype)
        bad = (M[u] != idx) | (M[:, u] != idx)
        if bad.any():
            unit_failure = ring.at(int(np.argwhere(bad)[0][0]))

    ok = assoc is None and ldist is None and rdist is None and unit_failure is None
    return AxiomReport(ok, assoc, ldist, rdist, unit_failure)


def center(ring: Ring, max_size: int | None = None) -> list[Element]:
    """Elements commuting with everything (scan against generators suffices)."""
    guard = scan_guard(max_size)
    if ring.order > guard:
        raise GuardError(f"ring order {ring.order} exceeds size guard {guard}")
    M = ring.mul_table
    mask = np.ones(ring.order, dtype=bool)
    for i in range(ring.k):
        g = ring.index(ring.generator(i))
        mask &= M[:, g] == M[g, :]
    return [ring.at(int(i)) for i in np.flatnonzero(mask)]


# -- catalog ------------------------------------------------------------------


def _require_params(name: str, params, count: int) -> list[int]:
    if len(params) != count:
        raise SpecError(f"catalog ring {name!r} takes {count} parameter(s), got {len(params)}")
    return [int(p) for p in params]


def _cyclic(params) -> Ring:
    (n,) = _require_params("zn", params, 1)
    return Ring(f"Z{n}", [n], [[[1]]], unit=[1])


def _matrix_ring(params) -> Ring:
    k, n = _require_params("matrix", params, 2)
    if k < 1:
        raise SpecError("matrix ring needs dimension >= 1")
    dim = k * k
    const = [[[0] * dim for _ in range(dim)] for _ in range(dim)]
    for u in range(k):
        for v in range(k):
            for w in range(k):
                for z in range(k):
                    if v == w:  # E_uv * E_wz = E_uz
                        const[u * k + v][w * k + z][u * k + z] = 1
    unit = [0] * dim
    for u in range(k):
        unit[u * k + u] = 1
    return Ring(f"M{k}(Z{n})", [n] * dim, const, unit=unit)


def _product_ring(params) -> Ring:
    if not params:
        raise SpecError("catalog ring 'product' needs at least one modulus")
    mods = [int(p) for p in params]
    kk = len(mods)
    const = [[[0] * kk for _ in range(kk)] for _ in range(kk)]
    for i in range(kk):
        const[i][i][i] = 1
    name = "x".join(f"Z{d}" for d in mods)
    return Ring(name, mods, const, unit=[1] * kk)


def _eg1(params) -> Ring:
    """Strictly upper triangular 3x3 matrices over Z_m, coords (m, n, p)
    for entries (1,2), (1,3), (2,3); the only nonzero generator product is
    (1,2)-gen * (2,3)-gen = (1,3)-gen."""
    (m,) = _require_params("eg1", params or [5], 1)
    const = [[[0, 0, 0] for _ in range(3)] for _ in range(3)]
    const[0][2] = [0, 1, 0]
    return Ring(f"eg1(Z{m})", [m] * 3, const)


def _eg2(params) -> Ring:
    """Matrices [[a, b], [0, a]] over Z_6, coords (a, b)."""
    _require_params("eg2", params, 0)
    const = [
        [[1, 0], [0, 1]],
        [[0, 1], [0, 0]],
    ]
    return Ring("eg2", [6, 6], const, unit=[1, 0])


def _eg3(params) -> Ring:
    """4x4 ring with coords (a, b, c); products collapse onto the c axis:
    x*y = (0, 0, a_y*b_x - a_x*b_y)."""
    (m,) = _require_params("eg3", params or [5], 1)
    const = [[[0, 0, 0] for _ in range(3)] for _ in range(3)]
    const[0][1] = [0, 0, m - 1]
    const[1][0] = [0, 0, 1]
    return Ring(f"eg3(Z{m})", [m] * 3, const)


RING_CATALOG = {
    "zn": _cyclic,
    "matrix": _matrix_ring,
    "product": _product_ring,
    "eg1": _eg1,
    "eg2": _eg2,
    "eg3": _eg3,
    "m2z2": lambda params: (_require_params("m2z2", params, 0), _matrix_ring([2, 2]))[1],
}


def construct_catalog_ring(name: str, params=()) -> Ring:
    """Build one of the named catalog rings, e.g. ('zn', [6]) or ('matrix', [2, 2])."""
    builder = RING_CATALOG.get(name)
    if builder is None:
        raise SpecError(
            f"unknown catalog ring {name!r}; known: {sorted(RING_CATALOG)}"
        )
    return builder(list(params))
