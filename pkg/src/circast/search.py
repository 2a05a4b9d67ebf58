"""Exhaustive search for AST-regular partitions of the pair universe.

The tree covers X(n) orbit by orbit: at each node the least uncovered pair is
fixed, every regular candidate part through it is closed under the six index
maps, and the closure is placed when its members are regular and pairwise
disjoint (closure forces the Sym(3)-invariance condition long before leaves).
Intersection-number constancy is checked incrementally, for each quadruple of
parts as soon as all four are fixed. Every leaf is re-verified from scratch
through the public regularity test and the axiom checker before it is
reported, so the output is sound by certification rather than by trust in the
pruning.

Worker processes, when requested, each take one root branch; results are
merged and sorted canonically, so the report is identical for any worker
count.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterator, Optional

from .astcheck import verify_ast
from .circulant import SYM3, ASTRegularityReport, build_ast, is_ast_regular, pair_image
from .core import (
    IndexPartition,
    Pair,
    PairSet,
    in_pair_universe,
    iter_bits,
    pair_capacity,
    pair_rank,
    pair_unrank,
)


@dataclass(frozen=True)
class SearchConfig:
    """Parameters of one search run. `dedupe` is "none" or "multiplier";
    `time_budget` is wall-clock seconds, exceeded budgets yield partial
    results with the completeness flag cleared."""

    n: int
    max_nI: Optional[int] = None
    require_all_thin: bool = False
    require_symmetric: bool = False
    dedupe: str = "none"
    limit: Optional[int] = None
    time_budget: Optional[float] = None

    def __post_init__(self) -> None:
        if self.n < 3:
            raise ValueError(f"search needs n >= 3, got n={self.n}")
        if self.dedupe not in ("none", "multiplier"):
            raise ValueError(f"dedupe must be 'none' or 'multiplier', got {self.dedupe!r}")

    def to_obj(self) -> dict:
        return {
            "n": self.n,
            "max_nI": self.max_nI,
            "require_all_thin": self.require_all_thin,
            "require_symmetric": self.require_symmetric,
            "dedupe": self.dedupe,
            "limit": self.limit,
            "time_budget": self.time_budget,
        }


@dataclass
class SearchHit:
    partition: IndexPartition
    report: ASTRegularityReport

    def to_obj(self) -> dict:
        return {"partition": self.partition.to_obj(), "report": self.report.to_obj()}


@dataclass
class SearchResult:
    config: SearchConfig
    hits: tuple
    nodes: int
    complete: bool
    elapsed: float

    def to_obj(self) -> dict:
        # elapsed stays out: the report must be identical across runs
        return {
            "config": self.config.to_obj(),
            "complete": self.complete,
            "nodes": self.nodes,
            "partitions": [hit.to_obj() for hit in self.hits],
        }


class _Universe:
    """Per-n lookup tables: rank <-> pair, row memberships, and the six index
    maps as permutations of the ranks."""

    def __init__(self, n: int):
        self.n = n
        cap = pair_capacity(n)
        self.capacity = cap
        self.full = (1 << cap) - 1
        self.pair_of = [pair_unrank(n, r) for r in range(cap)]
        self.rank2 = [[-1] * n for _ in range(n)]
        for r, (i, j) in enumerate(self.pair_of):
            self.rank2[i][j] = r
        self.row_ranks = [
            [r for r in range(cap) if self.pair_of[r][0] == i] for i in range(n)
        ]
        self.sym3_perm = {
            g: [self.rank2[a][b] for (a, b) in (pair_image(n, p, g) for p in self.pair_of)]
            for g in SYM3
        }

    def image_mask(self, mask: int, g) -> int:
        perm = self.sym3_perm[g]
        out = 0
        for r in iter_bits(mask):
            out |= 1 << perm[r]
        return out

    def valency(self, mask: int) -> Optional[int]:
        """The constant row/column count if the mask is regular, else None."""
        n = self.n
        r, rem = divmod(mask.bit_count(), n - 1)
        if rem or r == 0:
            return None
        rows = [0] * n
        cols = [0] * n
        for rank in iter_bits(mask):
            i, j = self.pair_of[rank]
            rows[i] += 1
            cols[j] += 1
        for x in range(1, n):
            if rows[x] != r or cols[x] != r:
                return None
        return r

    def regular_subsets(self, r: int, allowed: int, forced_rank: Optional[int] = None) -> Iterator[int]:
        """Masks of r-regular subsets of `allowed`, rows filled in order with
        lexicographic column choices; optionally through one forced pair."""
        n = self.n
        forced_row = forced_col = None
        if forced_rank is not None:
            if not (allowed >> forced_rank) & 1:
                return
            forced_row, forced_col = self.pair_of[forced_rank]
        rows = []
        for i in range(1, n):
            opts = [
                (self.pair_of[rank][1], 1 << rank)
                for rank in self.row_ranks[i]
                if (allowed >> rank) & 1
            ]
            if len(opts) < r:
                return
            rows.append(opts)
        need = [r] * n

        def rec(idx: int, mask: int) -> Iterator[int]:
            if idx == n - 1:
                yield mask
                return
            opts = [(c, b) for (c, b) in rows[idx] if need[c] > 0]
            rows_left = n - 2 - idx
            here_forced = idx + 1 == forced_row
            for combo in combinations(opts, r):
                if here_forced and all(c != forced_col for c, _ in combo):
                    continue
                new_mask = mask
                for c, b in combo:
                    need[c] -= 1
                    new_mask |= b
                if all(need[x] <= rows_left for x in range(1, n)):
                    yield from rec(idx + 1, new_mask)
                for c, _ in combo:
                    need[c] += 1

        yield from rec(0, 0)


@lru_cache(maxsize=None)
def _universe(n: int) -> _Universe:
    return _Universe(n)


def enumerate_candidate_parts(n: int, containing: Pair, max_nI: Optional[int] = None) -> Iterator[PairSet]:
    """All regular subsets of X(n) through the given pair with valency at most
    max_nI, by ascending valency and then lexicographically."""
    containing = tuple(containing)
    if not in_pair_universe(n, containing):
        raise ValueError(f"{containing!r} is not in the pair universe for n={n}")
    uni = _universe(n)
    cap = n - 2 if max_nI is None else min(max_nI, n - 2)
    forced = pair_rank(n, containing)
    for r in range(1, cap + 1):
        for mask in uni.regular_subsets(r, uni.full, forced):
            yield PairSet(n, mask)


class _Search:
    def __init__(self, n: int, max_r: int, symmetric_only: bool, deadline: Optional[float]):
        self.uni = _universe(n)
        self.max_r = max_r
        self.symmetric_only = symmetric_only
        self.deadline = deadline
        self.found: list = []
        self.nodes = 0
        self.complete = True
        self._const_cache: dict = {}

    def branches(self, covered: int) -> Iterator[tuple]:
        """Valid part orbits through the least uncovered pair."""
        uni = self.uni
        allowed = uni.full & ~covered
        target = (allowed & -allowed).bit_length() - 1
        for r in range(1, self.max_r + 1):
            for mask in uni.regular_subsets(r, allowed, target):
                orbit = self._orbit(mask)
                if orbit is None:
                    continue
                if self.symmetric_only and len(orbit) > 1:
                    continue
                yield orbit

    def _orbit(self, mask: int) -> Optional[tuple]:
        """The distinct images of the mask under the six maps, provided they
        are pairwise disjoint and all regular; None otherwise."""
        uni = self.uni
        images = sorted({uni.image_mask(mask, g) for g in SYM3})
        union = 0
        for m in images:
            if m & union:
                return None
            union |= m
            if m != mask and uni.valency(m) is None:
                return None
        return tuple(images)

    def _constant(self, I: int, J: int, K: int, L: int) -> bool:
        """Mask-level constancy test of the intersection count over L."""
        key = (I, J, K, L)
        cached = self._const_cache.get(key)
        if cached is not None:
            return cached
        uni = self.uni
        n = uni.n
        rank2 = uni.rank2
        first = -1
        ok = True
        for rank in iter_bits(L):
            y, z = uni.pair_of[rank]
            c = 0
            for w in range(1, n):
                if w == y or w == z:
                    continue
                if (
                    (I >> rank2[(y - w) % n][(z - w) % n]) & 1
                    and (J >> rank2[w][z]) & 1
                    and (K >> rank2[y][w]) & 1
                ):
                    c += 1
            if first < 0:
                first = c
            elif c != first:
                ok = False
                break
        self._const_cache[key] = ok
        return ok

    def place(self, parts: tuple, covered: int, orbit: tuple) -> None:
        """Add one orbit of parts if every newly completed quadruple of parts
        has a constant intersection count, then keep exploring."""
        new_parts = parts + orbit
        old = len(parts)
        new = len(new_parts)
        for a in range(new):
            for b in range(new):
                for c in range(new):
                    for d in range(new):
                        if a < old and b < old and c < old and d < old:
                            continue
                        if not self._constant(
                            new_parts[a], new_parts[b], new_parts[c], new_parts[d]
                        ):
                            return
        self.nodes += 1
        union = 0
        for m in orbit:
            union |= m
        self.explore(new_parts, covered | union)

    def explore(self, parts: tuple, covered: int) -> None:
        if self.deadline is not None and time.monotonic() > self.deadline:
            self.complete = False
            return
        if covered == self.uni.full:
            self.found.append(parts)
            return
        for orbit in self.branches(covered):
            self.place(parts, covered, orbit)


def _branch_worker(task):
    n, max_r, symmetric_only, deadline, orbit = task
    engine = _Search(n, max_r, symmetric_only, deadline)
    engine.place((), 0, orbit)
    return engine.found, engine.nodes, engine.complete


def _partition_key(P: IndexPartition) -> tuple:
    return tuple(part.pairs() for part in P.parts)


def search_ast_regular(config: SearchConfig, jobs: int = 1) -> SearchResult:
    """Backtracking enumeration of all AST-regular partitions of X(n) under
    the config's caps and filters; each reported partition is re-verified via
    the scheme construction and the axiom checker."""
    start = time.monotonic()
    n = config.n
    max_r = n - 2
    if config.max_nI is not None:
        max_r = min(max_r, config.max_nI)
    if config.require_all_thin:
        max_r = min(max_r, 1)
    deadline = start + config.time_budget if config.time_budget is not None else None

    engine = _Search(n, max_r, config.require_symmetric, deadline)
    root_branches = list(engine.branches(0))
    if jobs > 1 and len(root_branches) > 1:
        tasks = [
            (n, max_r, config.require_symmetric, deadline, orbit) for orbit in root_branches
        ]
        found: list = []
        nodes = 0
        complete = True
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for branch_found, branch_nodes, branch_complete in pool.map(_branch_worker, tasks):
                found.extend(branch_found)
                nodes += branch_nodes
                complete &= branch_complete
    else:
        for orbit in root_branches:
            engine.place((), 0, orbit)
        found, nodes, complete = engine.found, engine.nodes, engine.complete

    hits = []
    for masks in found:
        partition = IndexPartition(n, tuple(PairSet(n, m) for m in masks))
        report = is_ast_regular(partition)
        if not report.ok:
            raise RuntimeError("search emitted a partition that fails re-verification")
        if not verify_ast(build_ast(partition)).ok:
            raise RuntimeError("search emitted a partition whose scheme fails the axiom check")
        hits.append(SearchHit(partition, report))
    hits.sort(key=lambda hit: _partition_key(hit.partition))
    if len({_partition_key(h.partition) for h in hits}) != len(hits):
        raise RuntimeError("search emitted a duplicate partition")
    if config.dedupe == "multiplier":
        hits = dedupe_multiplier(hits, n)
    if config.limit is not None:
        hits = hits[: config.limit]
    elapsed = time.monotonic() - start
    return SearchResult(config, tuple(hits), nodes, complete, elapsed)


def _multiplier_image(P: IndexPartition, c: int) -> IndexPartition:
    n = P.n
    return IndexPartition(
        n,
        tuple(
            PairSet.from_pairs(n, ((c * i % n, c * j % n) for (i, j) in part))
            for part in P.parts
        ),
    )


def dedupe_multiplier(hits: list, n: int) -> list:
    """Collapse partitions equivalent under some unit multiplier x -> cx to
    the lexicographically least representative."""
    units = [c for c in range(1, n) if math.gcd(c, n) == 1]
    groups: dict = {}
    for hit in hits:
        canon = min(_partition_key(_multiplier_image(hit.partition, c)) for c in units)
        groups.setdefault(canon, []).append(hit)
    kept = [
        min(group, key=lambda hit: _partition_key(hit.partition)) for group in groups.values()
    ]
    kept.sort(key=lambda hit: _partition_key(hit.partition))
    return kept
