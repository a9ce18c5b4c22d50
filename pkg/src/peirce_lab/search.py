"""Exhaustive enumeration of reverse derivable maps on a small ring.

Two independent routes compute the same solution set:

  csp    -- backtracking over the image of each element in index order,
            seeded with the forced values f(0) = 0 (and f(1) = 0 when the
            ring is unital). After every assignment the consequences are
            propagated to a fixpoint: once f(a) and f(b) are both known,
            f(ab) is forced to f(b)a + bf(a); a clash prunes the branch.
  oracle -- lexicographic enumeration of all |R|^|R| image tables, with a
            prefix rejected as soon as some fully-determined pair already
            violates the law. No value is ever forced, only checked.

Both routes emit solutions in lexicographic table order, so completed
searches are comparable list-for-list. Every emitted map is re-verified
against the law by the independent pair-scan classifier before it is
returned.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from . import conditions as conditions_mod
from . import maps as maps_mod
from .peirce import is_nontrivial_idempotent, peirce_decompose
from .rings import Element, GuardError, Ring, SpecError

DEFAULT_CSP_MAX_RING = 16
DEFAULT_ORACLE_MAX_RING = 8
DEFAULT_ORACLE_CAP = 10**9


@dataclass
class SearchConfig:
    mode: str = "csp"
    max_ring_size: int | None = None
    max_solutions: int | None = None
    time_budget: float | None = None
    oracle_cap: int = DEFAULT_ORACLE_CAP

    def __post_init__(self):
        if self.mode not in ("csp", "oracle"):
            raise SpecError(f"search mode must be 'csp' or 'oracle', got {self.mode!r}")
        if self.max_solutions is not None and self.max_solutions < 1:
            raise SpecError("max_solutions must be positive")
        if self.time_budget is not None and self.time_budget <= 0:
            raise SpecError("time_budget must be positive")
        if self.max_ring_size is not None and self.max_ring_size < 1:
            raise SpecError("max_ring_size must be positive")

    @property
    def effective_max_ring(self) -> int:
        if self.max_ring_size is not None:
            return self.max_ring_size
        return DEFAULT_CSP_MAX_RING if self.mode == "csp" else DEFAULT_ORACLE_MAX_RING

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "max_ring_size": self.effective_max_ring,
            "max_solutions": self.max_solutions,
            "time_budget": self.time_budget,
        }


@dataclass
class SearchStats:
    nodes: int = 0
    propagations: int = 0
    wall_time: float = 0.0

    def to_dict(self) -> dict:
        # wall_time is intentionally left out: reports must be byte-stable
        return {"nodes": self.nodes, "propagations": self.propagations}


@dataclass
class SearchResult:
    maps: list[maps_mod.MapTable]
    complete: bool
    stats: SearchStats
    config: SearchConfig

    def tables(self) -> list[tuple[int, ...]]:
        return [m.as_tuple() for m in self.maps]

    def to_dict(self) -> dict:
        return {
            "config": self.config.to_dict(),
            "complete": self.complete,
            "count": len(self.maps),
            "stats": self.stats.to_dict(),
            "maps": [m.to_dict() for m in self.maps],
        }


class _Budget(Exception):
    pass


def _deadline(cfg: SearchConfig):
    return None if cfg.time_budget is None else time.monotonic() + cfg.time_budget


def _check_ring(ring: Ring, cfg: SearchConfig) -> None:
    if ring.order > cfg.effective_max_ring:
        raise GuardError(
            f"ring order {ring.order} exceeds the {cfg.mode} search cap "
            f"{cfg.effective_max_ring}"
        )
    if cfg.mode == "oracle" and ring.order**ring.order > cfg.oracle_cap:
        raise GuardError(
            f"oracle candidate space {ring.order}^{ring.order} exceeds the hard cap "
            f"{cfg.oracle_cap}"
        )


def _iter_csp(ring: Ring, deadline, stats: SearchStats):
    """Yield solution tables in lexicographic order via propagation search."""
    n = ring.order
    mul = [[int(v) for v in row] for row in ring.mul_table]
    add = [[int(v) for v in row] for row in ring.add_table]
    img: list[int | None] = [None] * n
    assigned: list[int] = []

    def place(var: int, value: int, trail: list[int]) -> bool:
        """Assign and propagate to a fixpoint; False on clash."""
        img[var] = value
        assigned.append(var)
        trail.append(var)
        queue = [var]
        while queue:
            a = queue.pop(0)
            fa = img[a]
            row_a = mul[a]
            for b in assigned:
                fb = img[b]
                for x, y, fx, fy in ((a, b, fa, fb), (b, a, fb, fa)):
                    p = mul[x][y]
                    forced = add[mul[fy][x]][mul[y][fx]]
                    current = img[p]
                    if current is None:
                        img[p] = forced
                        assigned.append(p)
                        trail.append(p)
                        queue.append(p)
                        stats.propagations += 1
                    elif current != forced:
                        return False
            del row_a
        return True

    def undo(trail: list[int]) -> None:
        for var in trail:
            img[var] = None
            assigned.pop()

    def seed() -> bool:
        trail: list[int] = []
        if not place(0, 0, trail):
            return False
        if ring.unit is not None:
            u = ring.index(ring.unit)
            if img[u] is None:
                if not place(u, 0, trail):
                    return False
            elif img[u] != 0:
                return False
        return True

    def descend():
        if deadline is not None and time.monotonic() > deadline:
            raise _Budget
        var = next((i for i in range(n) if img[i] is None), None)
        if var is None:
            yield tuple(img)
            return
        for value in range(n):
            stats.nodes += 1
            trail: list[int] = []
            if place(var, value, trail):
                yield from descend()
            undo(trail)

    if seed():
        yield from descend()


def _iter_oracle(ring: Ring, deadline, stats: SearchStats):
    """Yield solution tables by filtering all |R|^|R| candidates, skipping a
    prefix subtree as soon as a determined pair violates the law."""
    n = ring.order
    mul = [[int(v) for v in row] for row in ring.mul_table]
    add = [[int(v) for v in row] for row in ring.add_table]
    # pairs become checkable at the depth where a, b and ab are all assigned
    checks_at: list[list[tuple[int, int, int]]] = [[] for _ in range(n)]
    for a in range(n):
        for b in range(n):
            p = mul[a][b]
            checks_at[max(a, b, p)].append((a, b, p))

    table = [0] * n

    def descend(depth: int):
        if deadline is not None and time.monotonic() > deadline:
            raise _Budget
        if depth == n:
            yield tuple(table)
            return
        for value in range(n):
            stats.nodes += 1
            table[depth] = value
            ok = True
            for a, b, p in checks_at[depth]:
                stats.propagations += 1
                if table[p] != add[mul[table[b]][a]][mul[b][table[a]]]:
                    ok = False
                    break
            if ok:
                yield from descend(depth + 1)

    yield from descend(0)


def iter_reverse_derivable_maps(ring: Ring, cfg: SearchConfig, stats: SearchStats):
    deadline = _deadline(cfg)
    if cfg.mode == "csp":
        return _iter_csp(ring, deadline, stats)
    return _iter_oracle(ring, deadline, stats)


def enumerate_reverse_derivable_maps(
    ring: Ring, cfg: SearchConfig | None = None
) -> SearchResult:
    """All maps satisfying f(ab) = f(b)a + bf(a), in deterministic order."""
    cfg = cfg or SearchConfig()
    _check_ring(ring, cfg)
    stats = SearchStats()
    start = time.monotonic()
    tables: list[tuple[int, ...]] = []
    complete = True
    try:
        for t in iter_reverse_derivable_maps(ring, cfg, stats):
            tables.append(t)
            if cfg.max_solutions is not None and len(tables) >= cfg.max_solutions:
                complete = False
                break
    except _Budget:
        complete = False
    stats.wall_time = time.monotonic() - start

    out = []
    for i, t in enumerate(tables):
        m = maps_mod.MapTable(ring, t, f"found-{i}")
        if not maps_mod.check_reverse_law(m).ok:
            raise AssertionError(
                "internal error: search emitted a table failing the reverse law"
            )
        out.append(m)
    return SearchResult(out, complete, stats, cfg)


def find_nonadditive_reverse_derivable(
    ring: Ring, cfg: SearchConfig | None = None
) -> maps_mod.MapTable | None:
    """First enumerated map that is not additive; None if a completed search
    finds none. Raises GuardError when the budget runs out undecided."""
    cfg = cfg or SearchConfig()
    _check_ring(ring, cfg)
    stats = SearchStats()
    try:
        for i, t in enumerate(iter_reverse_derivable_maps(ring, cfg, stats)):
            m = maps_mod.MapTable(ring, t, f"found-{i}")
            if not maps_mod.check_additive(m).ok:
                if not maps_mod.check_reverse_law(m).ok:
                    raise AssertionError(
                        "internal error: search emitted a table failing the reverse law"
                    )
                return m
    except _Budget:
        raise GuardError(
            "time budget exhausted before the search completed"
        ) from None
    return None


def empirical_theorem_report(
    ring: Ring, e: Element, cfg: SearchConfig | None = None
) -> dict:
    """Bundle condition reports, the full enumeration, per-map classification
    and structure observations, plus headline verdicts, for one (ring, e)."""
    cfg = cfg or SearchConfig()
    e = ring.element(e)
    if not is_nontrivial_idempotent(ring, e):
        raise SpecError(
            f"no idempotent to work with: {e} is not a nontrivial idempotent of {ring.name}"
        )
    dec = peirce_decompose(ring, e)
    cond = {
        name: conditions_mod.check_conditions(ring, e, name)
        for name in ("thm1", "thm2", "ei")
    }
    result = enumerate_reverse_derivable_maps(ring, cfg)
    if not result.complete:
        raise GuardError("search did not complete; raise the budget or the caps")

    map_reports = []
    nonadditive_exists = False
    additive_all_zero = True
    zero_table = (0,) * ring.order
    for m in result.maps:
        cls = maps_mod.classify_map(m)
        structure = maps_mod.verify_reverse_map_structure(m, dec)
        if cls.additive.ok:
            if m.as_tuple() != zero_table:
                additive_all_zero = False
        else:
            nonadditive_exists = True
        map_reports.append(
            {
                "label": m.label,
                "map": m.to_dict(),
                "classification": cls.to_dict(),
                "structure": structure.to_dict(),
            }
        )

    def implication(report) -> str:
        if not report.overall:
            return "vacuous"
        return "counterexample" if nonadditive_exists else "confirmed"

    verdicts = {
        "nonadditive_exists": nonadditive_exists,
        "additive_maps_all_zero": additive_all_zero,
        "thm1_hypotheses_hold": cond["thm1"].overall,
        "thm2_hypotheses_hold": cond["thm2"].overall,
        "ei_conditions_hold": cond["ei"].overall,
        "thm1_implication": implication(cond["thm1"]),
        "thm2_implication": implication(cond["thm2"]),
        "additivity_without_hypotheses": (
            (not cond["thm1"].overall or not cond["thm2"].overall)
            and any(r["classification"]["additive"]["pass"] for r in map_reports)
        ),
    }

    return {
        "ring": ring.name,
        "order": ring.order,
        "idempotent": e.as_list(),
        "peirce": dec.to_dict(),
        "conditions": {name: rep.to_dict() for name, rep in cond.items()},
        "search": {
            "config": cfg.to_dict(),
            "complete": result.complete,
            "count": len(result.maps),
            "stats": result.stats.to_dict(),
        },
        "maps": map_reports,
        "verdicts": verdicts,
    }
