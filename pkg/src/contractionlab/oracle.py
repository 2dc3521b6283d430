"""Exact minimum of the union-of-images size over axiom-valid systems.

For a fixed base set, each map's image of a point x must land in an interval
anchored at the base point a (length |x-a|/k, half-open at a).  Feasibility
of a candidate union is one bipartite matching per base point: the images of
a single map must be distinct, while different maps may reuse points freely.

The search is made finite and exact by an arrangement argument: region
endpoints cut the line into cells (single boundary points and open gaps),
membership in every region is constant on a cell, and a single map can use
at most n-1 points, so at most n-1 evenly spaced representatives per gap
suffice.  The minimum is found by iterative deepening on the number of extra
points beyond the base set, branching on cell representatives that raise the
matching rank of the currently most deficient base point (complete by the
transversal-matroid exchange property), with Hall-deficiency lower bounds
for pruning and memoization on cell-multiplicity vectors.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .intervals import Interval
from .rationals import as_fraction
from .sets import RealSet
from .systems import ContractionSystem, canonical_dilate_system, image_union


@dataclass(frozen=True)
class AllowedRegion:
    """Where the map at `center` may send `source`, by the contraction axioms."""

    center: Fraction
    source: Fraction
    interval: Interval


def allowed_region(a: Fraction, x: Fraction, k: Fraction) -> AllowedRegion:
    """The half-open segment from a toward x of length |x-a|/k.

    Open at a because the map fixes a and is injective; closed at the far
    end because the contraction inequality is non-strict.
    """
    a, x, k = as_fraction(a), as_fraction(x), as_fraction(k)
    if k < 1:
        raise ValueError("contraction factor must be at least 1")
    if x == a:
        raise ValueError("image of the base point is pinned to itself")
    if x > a:
        iv = Interval(a, a + (x - a) / k, lo_open=True)
    else:
        iv = Interval(a - (a - x) / k, a, hi_open=True)
    return AllowedRegion(center=a, source=x, interval=iv)


@dataclass(frozen=True)
class Cell:
    """A maximal set of points with identical region memberships.

    Either a single boundary value (lo == hi) or an open gap between two
    consecutive boundaries.  `reps` are the candidate points the search may
    place inside this cell; capacity is len(reps).
    """

    kind: str  # "point" or "gap"
    lo: Fraction
    hi: Fraction
    reps: tuple[Fraction, ...]


def _regions_by_center(base: RealSet, k: Fraction) \
        -> dict[Fraction, list[AllowedRegion]]:
    return {
        a: [allowed_region(a, x, k) for x in base if x != a]
        for a in base
    }


def arrangement_cells(base: RealSet, k: Fraction) -> tuple[Cell, ...]:
    """Boundary-point cells and open-gap cells covering all allowed regions.

    Gap cells carry |base|-1 evenly spaced representatives; a single map
    cannot use more points of one gap, and distinct maps may reuse them.
    """
    k = as_fraction(k)
    n = len(base)
    boundaries: set[Fraction] = set(base.points)
    for regions in _regions_by_center(base, k).values():
        for region in regions:
            boundaries.add(region.interval.lo)
            boundaries.add(region.interval.hi)
    ordered = sorted(boundaries)
    cells: list[Cell] = []
    for i, b in enumerate(ordered):
        cells.append(Cell(kind="point", lo=b, hi=b, reps=(b,)))
        if i + 1 < len(ordered):
            lo, hi = b, ordered[i + 1]
            step = (hi - lo) / n if n else hi - lo
            reps = tuple(lo + step * j for j in range(1, n))
            cells.append(Cell(kind="gap", lo=lo, hi=hi, reps=reps))
    return tuple(cells)


def _max_matching(adj: Sequence[Sequence[int]], n_items: int) \
        -> tuple[int, list[int]]:
    """Kuhn's augmenting-path matching; returns (size, item -> slot or -1)."""
    owner = [-1] * n_items
    slot_of = [-1] * len(adj)

    def augment(slot: int, seen: list[bool]) -> bool:
        for item in adj[slot]:
            if seen[item]:
                continue
            seen[item] = True
            if owner[item] < 0 or augment(owner[item], seen):
                owner[item] = slot
                slot_of[slot] = item
                return True
        return False

    size = 0
    for s in range(len(adj)):
        if augment(s, [False] * n_items):
            size += 1
    return size, owner


def feasible(s_points: RealSet, base: RealSet, k: Fraction) -> bool:
    """Whether some axiom-valid system on base has its image union in s_points.

    Checked per base point: the other points must match injectively into
    points of s_points lying in their allowed regions.
    """
    k = as_fraction(k)
    if any(a not in s_points for a in base):
        raise ValueError("base set must be contained in the candidate union")
    pts = list(s_points)
    for a in base:
        adj = []
        for x in base:
            if x == a:
                continue
            region = allowed_region(a, x, k).interval
            adj.append([i for i, p in enumerate(pts) if region.contains(p)])
        size, _ = _max_matching(adj, len(pts))
        if size < len(base) - 1:
            return False
    return True


@dataclass(frozen=True)
class SearchBudget:
    """Limits for the oracle search; exceeding either flags the result."""

    node_limit: int | None = 20000
    time_limit: float | None = None


@dataclass(frozen=True)
class OracleResult:
    min_union_size: int
    witness: ContractionSystem
    optimal: bool
    nodes: int


class BudgetExhausted(Exception):
    pass


class _Instance:
    """Precomputed matching structures for one (base, k) oracle instance."""

    def __init__(self, base: RealSet, k: Fraction):
        self.base = base
        self.k = k
        self.n = len(base)
        self.slots = {a: [x for x in base if x != a] for a in base}
        regions = _regions_by_center(base, k)
        self.region_of = {
            a: {x: r.interval for x, r in zip(self.slots[a], regions[a])}
            for a in base
        }
        # free items: base points usable by (a, slot)
        self.free_items = {
            a: [
                [p for p in base if self.region_of[a][x].contains(p)]
                for x in self.slots[a]
            ]
            for a in base
        }
        # candidate cells: non-base points only, profile = usable slots per a
        self.cells: list[Cell] = []
        self.caps: list[int] = []
        self.profiles: list[dict[Fraction, tuple[int, ...]]] = []
        for cell in arrangement_cells(base, k):
            if cell.kind == "point" and cell.lo in base:
                continue
            probe = cell.reps[0] if cell.reps else None
            if probe is None:
                continue
            profile: dict[Fraction, tuple[int, ...]] = {}
            for a in base:
                usable = tuple(
                    i for i, x in enumerate(self.slots[a])
                    if self.region_of[a][x].contains(probe)
                )
                if usable:
                    profile[a] = usable
            if profile:
                self.cells.append(cell)
                # copies beyond the largest per-center slot demand can never
                # raise any rank: a single map uses each point at most once
                cap = max(len(u) for u in profile.values())
                self.caps.append(min(len(cell.reps), cap))
                self.profiles.append(profile)
        self.cells_of = {
            a: tuple(g for g, prof in enumerate(self.profiles) if a in prof)
            for a in base
        }
        # per side, regions toward nearer points nest inside farther ones,
        # so Hall's condition reduces to counting: the region of the t-th
        # nearest neighbour must hold at least t available points
        self.left_order: dict[Fraction, tuple[int, ...]] = {}
        self.right_order: dict[Fraction, tuple[int, ...]] = {}
        self.cells_in_region: dict[Fraction, dict[int, tuple[int, ...]]] = {}
        self.base_in_region: dict[Fraction, dict[int, int]] = {}
        for a in base:
            slots = self.slots[a]
            self.right_order[a] = tuple(sorted(
                (i for i, x in enumerate(slots) if x > a),
                key=lambda i: slots[i]))
            self.left_order[a] = tuple(sorted(
                (i for i, x in enumerate(slots) if x < a),
                key=lambda i: -slots[i]))
            self.cells_in_region[a] = {
                i: tuple(g for g in self.cells_of[a]
                         if i in self.profiles[g][a])
                for i in range(len(slots))
            }
            self.base_in_region[a] = {
                i: sum(1 for p in base
                       if p != a and self.region_of[a][slots[i]].contains(p))
                for i in range(len(slots))
            }
        self._rank_cache: dict = {}

    def components(self) -> list[tuple[list[Fraction], list[int]]]:
        """Group base points coupled through shared candidate cells."""
        parent = {a: a for a in self.base}

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for profile in self.profiles:
            anchors = list(profile)
            for other in anchors[1:]:
                ra, rb = find(anchors[0]), find(other)
                if ra != rb:
                    parent[rb] = ra
        groups: dict[Fraction, list[Fraction]] = {}
        for a in self.base:
            groups.setdefault(find(a), []).append(a)
        out = []
        for members in groups.values():
            cell_ids = [
                g for g, profile in enumerate(self.profiles)
                if any(a in profile for a in members)
            ]
            out.append((members, cell_ids))
        return out

    def rank(self, a: Fraction, counts: Sequence[int]) -> int:
        """Max matching size for base point a given cell multiplicities.

        Memoized on the projection of counts to cells usable by a; the
        projections recur heavily across search nodes.
        """
        key = (a, tuple(counts[g] for g in self.cells_of[a]))
        hit = self._rank_cache.get(key)
        if hit is not None:
            return hit
        adj, n_items = self._adjacency(a, counts)
        size, _ = _max_matching(adj, n_items)
        self._rank_cache[key] = size
        return size

    def _adjacency(self, a: Fraction, counts: Sequence[int]):
        """Slot adjacency over items: usable base points, then cell copies."""
        items: list[tuple[str, int | Fraction]] = []
        item_ids: dict = {}
        for free in self.free_items[a]:
            for p in free:
                if ("base", p) not in item_ids:
                    item_ids[("base", p)] = len(items)
                    items.append(("base", p))
        copy_base: dict[int, int] = {}
        for g in self.cells_of[a]:
            if counts[g]:
                copy_base[g] = len(items)
                for _ in range(counts[g]):
                    items.append(("cell", g))
        adj: list[list[int]] = []
        for slot, x in enumerate(self.slots[a]):
            row = [item_ids[("base", p)] for p in self.free_items[a][slot]]
            for g, start in copy_base.items():
                if slot in self.profiles[g][a]:
                    row.extend(range(start, start + counts[g]))
            adj.append(row)
        return adj, len(items)

    def raises_rank(self, a: Fraction, counts: list[int], g: int) -> bool:
        before = self.rank(a, counts)
        counts[g] += 1
        after = self.rank(a, counts)
        counts[g] -= 1
        return after > before


def _deficiency_lower_bound(inst: _Instance, members: Sequence[Fraction],
                            cell_ids: Sequence[int], counts: list[int],
                            defs: dict) -> int:
    """Exact number of extra points still needed in this component.

    Each Hall condition is an interval demand: the region of the t-th
    nearest neighbour of a on one side must contain at least t available
    points.  Region membership is cell-constant, the demand matrix has the
    consecutive-ones property, and a rightmost-placement greedy over cells
    (respecting caps) solves the covering problem exactly.
    """
    if all(defs[a] == 0 for a in members):
        return 0
    shortfalls = []
    for a in members:
        for order in (inst.left_order[a], inst.right_order[a]):
            for t, slot in enumerate(order, 1):
                cells_r = inst.cells_in_region[a][slot]
                have = inst.base_in_region[a][slot] \
                    + sum(counts[g] for g in cells_r)
                if t > have:
                    if not cells_r:
                        return 10 ** 9  # demand with nowhere to place points
                    shortfalls.append(
                        (cells_r[-1], cells_r[0], t - have, cells_r))
    shortfalls.sort(key=lambda c: (c[0], c[1]))
    placed: dict[int, int] = {}
    total = 0
    for _, _, deficit, cells_r in shortfalls:
        missing = deficit - sum(placed.get(g, 0) for g in cells_r)
        for g in reversed(cells_r):
            if missing <= 0:
                break
            spare = inst.caps[g] - counts[g] - placed.get(g, 0)
            if spare > 0:
                take = min(spare, missing)
                placed[g] = placed.get(g, 0) + take
                total += take
                missing -= take
        if missing > 0:
            return 10 ** 9
    return total


def _search_component(inst: _Instance, members: list[Fraction],
                      cell_ids: list[int], budget: SearchBudget,
                      state: dict) -> list[int] | None:
    """Iterative-deepening search for one component; returns cell counts."""
    counts = [0] * len(inst.cells)
    base_defs = {a: inst.n - 1 - inst.rank(a, counts) for a in members}
    if all(d == 0 for d in base_defs.values()):
        return counts
    start = _deficiency_lower_bound(inst, members, cell_ids, counts, base_defs)

    def tick():
        state["nodes"] += 1
        if budget.node_limit is not None and state["nodes"] > budget.node_limit:
            raise BudgetExhausted
        if budget.time_limit is not None and \
                time.monotonic() - state["t0"] > budget.time_limit:
            raise BudgetExhausted

    def dfs(counts: list[int], used: int, limit: int,
            memo: set) -> list[int] | None:
        tick()
        defs = {a: inst.n - 1 - inst.rank(a, counts) for a in members}
        if all(d == 0 for d in defs.values()):
            return list(counts)
        bound = _deficiency_lower_bound(inst, members, cell_ids, counts, defs)
        if used + bound > limit:
            return None
        worst = max((a for a in members if defs[a] > 0),
                    key=lambda a: (defs[a], -members.index(a)))
        cands = [
            g for g in cell_ids
            if counts[g] < inst.caps[g] and worst in inst.profiles[g]
            and inst.raises_rank(worst, counts, g)
        ]
        needy = [a for a in members if defs[a] > 0]
        cands.sort(key=lambda g: (
            -sum(1 for a in needy if a in inst.profiles[g]), g))
        for g in cands:
            counts[g] += 1
            key = tuple(counts)
            if key not in memo:
                memo.add(key)
                found = dfs(counts, used + 1, limit, memo)
                if found is not None:
                    return found
            counts[g] -= 1
        return None

    limit = max(start, 1)
    while True:
        found = dfs(counts, 0, limit, set())
        if found is not None:
            return found
        limit += 1
        if limit > (inst.n - 1) * inst.n:
            # cannot exceed one fresh point per (map, argument) pair
            raise AssertionError("deepening ran past the trivial ceiling")


def _witness_from_counts(inst: _Instance, counts: list[int]) \
        -> ContractionSystem:
    chosen: list[Fraction] = []
    for g, c in enumerate(counts):
        chosen.extend(inst.cells[g].reps[:c])
    union = RealSet.of(list(inst.base) + chosen)
    pts = list(union)
    table: dict[Fraction, dict[Fraction, Fraction]] = {}
    for a in inst.base:
        adj = []
        for x in inst.slots[a]:
            region = inst.region_of[a][x]
            adj.append([i for i, p in enumerate(pts) if region.contains(p)])
        size, owner = _max_matching(adj, len(pts))
        if size < inst.n - 1:
            raise AssertionError("witness reconstruction lost feasibility")
        row = {a: a}
        for item, slot in enumerate(owner):
            if slot >= 0:
                row[inst.slots[a][slot]] = pts[item]
        table[a] = row
    return ContractionSystem.create(inst.base, inst.k, table)


def min_union(base: RealSet, k: Fraction,
              budget: SearchBudget = SearchBudget(),
              max_size: int = 6) -> OracleResult:
    """Exact minimum union size over all axiom-valid systems on base.

    Exhausts the discretized search within the budget; when the budget runs
    out, returns the canonical system's union as an upper bound flagged
    optimal=False.
    """
    k = as_fraction(k)
    if k < 1:
        raise ValueError("contraction factor must be at least 1")
    if len(base) == 0:
        raise ValueError("base set must be nonempty")
    if len(base) > max_size:
        raise ValueError("instance larger than the configured maximum")
    canonical = canonical_dilate_system(base, k)
    if len(base) == 1:
        return OracleResult(min_union_size=1, witness=canonical,
                            optimal=True, nodes=0)
    inst = _Instance(base, k)
    state = {"nodes": 0, "t0": time.monotonic()}
    try:
        total = [0] * len(inst.cells)
        for members, cell_ids in inst.components():
            found = _search_component(inst, members, cell_ids, budget, state)
            for g, c in enumerate(found):
                total[g] += c
        witness = _witness_from_counts(inst, total)
        size = len(image_union(witness))
        return OracleResult(min_union_size=size, witness=witness,
                            optimal=True, nodes=state["nodes"])
    except BudgetExhausted:
        return OracleResult(
            min_union_size=len(image_union(canonical)),
            witness=canonical, optimal=False, nodes=state["nodes"])


def compare_to_theorem(base: RealSet, k: Fraction,
                       budget: SearchBudget = SearchBudget(),
                       max_size: int = 6) -> dict:
    """Report the oracle minimum against the certified bound and canonical."""
    from .bounds import CMP_WORDS, cmp_union_bound

    k = as_fraction(k)
    result = min_union(base, k, budget=budget, max_size=max_size)
    canonical_size = len(image_union(canonical_dilate_system(base, k)))
    word = CMP_WORDS[cmp_union_bound(
        Fraction(result.min_union_size), len(base), k)]
    return {
        "minUnionSize": result.min_union_size,
        "optimal": result.optimal,
        "boundComparison": word,
        "canonicalUnionSize": canonical_size,
        "nodes": result.nodes,
    }
