"""Base objects for ternary relations over the residues mod n.

The ground set is Omega = {0, ..., n-1}; pairs and triples are plain tuples
of residues. Index sets live inside the pair universe

    X(n) = {(i, j) : 1 <= i, j <= n-1, i != j}

and are stored as bitmasks keyed by the lexicographic rank of (i, j) in X(n),
so the subset/disjointness/union tests that the search leans on are single
integer operations. Relations and the two partition types canonicalise their
contents: equal values compare equal and serialise to identical JSON.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

Pair = tuple[int, int]
Triple = tuple[int, int, int]


class CircastError(Exception):
    """Base class for the errors raised by this package."""


class DomainTooSmall(CircastError, ValueError):
    """Raised for base sets with fewer than three points."""


@dataclass(frozen=True)
class Domain:
    """The base set {0, ..., n-1}; all arithmetic on points is mod n."""

    n: int

    def __post_init__(self) -> None:
        if self.n < 3:
            raise DomainTooSmall(f"base set needs n >= 3, got n={self.n}")


def make_domain(n: int) -> Domain:
    """Validated constructor for :class:`Domain`."""
    return Domain(n)


def pair_capacity(n: int) -> int:
    """|X(n)| = (n-1)(n-2)."""
    return (n - 1) * (n - 2)


def in_pair_universe(n: int, pair: Pair) -> bool:
    i, j = pair
    return 0 < i < n and 0 < j < n and i != j


def pair_rank(n: int, pair: Pair) -> int:
    """Lexicographic rank of a pair within X(n)."""
    i, j = pair
    return (i - 1) * (n - 2) + (j - 1 if j < i else j - 2)


def pair_unrank(n: int, rank: int) -> Pair:
    row, offset = divmod(rank, n - 2)
    i = row + 1
    j = offset + 1 if offset + 1 < i else offset + 2
    return (i, j)


def iter_bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of mask, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class PairSet:
    """A subset of X(n), held as a bitmask over the canonical pair ranks."""

    n: int
    mask: int = 0

    def __post_init__(self) -> None:
        if self.n < 3:
            raise DomainTooSmall(f"pair universe needs n >= 3, got n={self.n}")
        if self.mask < 0 or self.mask >> pair_capacity(self.n):
            raise ValueError("mask has bits outside the pair universe")

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[Pair]) -> "PairSet":
        mask = 0
        for pair in pairs:
            pair = tuple(pair)
            if len(pair) != 2 or not in_pair_universe(n, pair):
                raise ValueError(f"{pair!r} is not in the pair universe for n={n}")
            mask |= 1 << pair_rank(n, pair)
        return cls(n, mask)

    @classmethod
    def universe(cls, n: int) -> "PairSet":
        return cls(n, (1 << pair_capacity(n)) - 1)

    def pairs(self) -> tuple[Pair, ...]:
        return tuple(pair_unrank(self.n, r) for r in iter_bits(self.mask))

    def __contains__(self, pair: object) -> bool:
        if not (isinstance(pair, tuple) and len(pair) == 2):
            return False
        if not in_pair_universe(self.n, pair):
            return False
        return bool(self.mask >> pair_rank(self.n, pair) & 1)

    def __iter__(self) -> Iterator[Pair]:
        return iter(self.pairs())

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __bool__(self) -> bool:
        return self.mask != 0

    def _same_universe(self, other: "PairSet") -> None:
        if not isinstance(other, PairSet) or other.n != self.n:
            raise ValueError("operands must share one pair universe")

    def __or__(self, other: "PairSet") -> "PairSet":
        self._same_universe(other)
        return PairSet(self.n, self.mask | other.mask)

    def __and__(self, other: "PairSet") -> "PairSet":
        self._same_universe(other)
        return PairSet(self.n, self.mask & other.mask)

    def __sub__(self, other: "PairSet") -> "PairSet":
        self._same_universe(other)
        return PairSet(self.n, self.mask & ~other.mask)

    def isdisjoint(self, other: "PairSet") -> bool:
        self._same_universe(other)
        return not self.mask & other.mask

    def issubset(self, other: "PairSet") -> bool:
        self._same_universe(other)
        return not self.mask & ~other.mask

    def to_obj(self) -> dict:
        return {"n": self.n, "pairs": [list(p) for p in self.pairs()]}

    @classmethod
    def from_obj(cls, obj: dict) -> "PairSet":
        return cls.from_pairs(int(obj["n"]), (tuple(p) for p in obj["pairs"]))

    def __repr__(self) -> str:
        return f"PairSet(n={self.n}, pairs={list(self.pairs())})"


def build_pair_universe(d: Domain) -> PairSet:
    """All (n-1)(n-2) ordered pairs of distinct nonzero residues."""
    return PairSet.universe(d.n)


@dataclass(frozen=True)
class TernaryRelation:
    """A set of triples over {0, ..., n-1}."""

    n: int
    triples: frozenset

    def __post_init__(self) -> None:
        if self.n < 3:
            raise DomainTooSmall(f"relations need n >= 3, got n={self.n}")
        object.__setattr__(self, "triples", frozenset(self.triples))

    @classmethod
    def from_triples(cls, n: int, triples: Iterable[Triple]) -> "TernaryRelation":
        out = set()
        for t in triples:
            t = tuple(t)
            if len(t) != 3 or not all(isinstance(c, int) and 0 <= c < n for c in t):
                raise ValueError(f"{t!r} is not a triple over 0..{n - 1}")
            out.add(t)
        return cls(n, frozenset(out))

    def sorted_triples(self) -> tuple[Triple, ...]:
        return tuple(sorted(self.triples))

    def __contains__(self, t: object) -> bool:
        return t in self.triples

    def __iter__(self) -> Iterator[Triple]:
        return iter(self.sorted_triples())

    def __len__(self) -> int:
        return len(self.triples)

    def to_obj(self) -> dict:
        return {"n": self.n, "triples": [list(t) for t in self.sorted_triples()]}

    @classmethod
    def from_obj(cls, obj: dict) -> "TernaryRelation":
        return cls.from_triples(int(obj["n"]), (tuple(t) for t in obj["triples"]))

    def __repr__(self) -> str:
        return f"TernaryRelation(n={self.n}, size={len(self.triples)})"


def trivial_relations(d: Domain) -> tuple[TernaryRelation, ...]:
    """R0..R3: the diagonal and the three 'two coordinates equal' relations.

    |R0| = n and |R1| = |R2| = |R3| = n(n-1); together they hold exactly the
    triples with a repeated coordinate.
    """
    n = d.n
    r0 = frozenset((x, x, x) for x in range(n))
    r1 = frozenset((x, y, y) for x in range(n) for y in range(n) if x != y)
    r2 = frozenset((x, y, x) for x in range(n) for y in range(n) if x != y)
    r3 = frozenset((x, x, y) for x in range(n) for y in range(n) if x != y)
    return tuple(TernaryRelation(n, r) for r in (r0, r1, r2, r3))


@dataclass(frozen=True)
class TriplePartition:
    """A labelled partition of Omega^3; index i in `relations` is relation id i.

    Ids 0..3 are reserved for the trivial relations when present. The
    constructor trusts its input; use :meth:`validate` or :meth:`from_obj`
    when partition-ness is not guaranteed by construction.
    """

    n: int
    relations: tuple

    def __post_init__(self) -> None:
        relations = tuple(self.relations)
        for rel in relations:
            if not isinstance(rel, TernaryRelation) or rel.n != self.n:
                raise ValueError("relations must be TernaryRelations over the same base set")
        object.__setattr__(self, "relations", relations)

    @property
    def m(self) -> int:
        return len(self.relations) - 1

    def triple_ids(self) -> dict:
        """Map each triple to the id of the relation containing it."""
        out = {}
        for rid, rel in enumerate(self.relations):
            for t in rel.triples:
                out[t] = rid
        return out

    def validate(self) -> None:
        """Check nonempty relations, pairwise disjoint, union = Omega^3."""
        total = 0
        union = set()
        for rid, rel in enumerate(self.relations):
            if len(rel) == 0:
                raise ValueError(f"relation {rid} is empty")
            total += len(rel)
            union |= rel.triples
        if total != self.n ** 3 or len(union) != self.n ** 3:
            raise ValueError("relations do not partition the triple space")

    def to_obj(self) -> dict:
        return {
            "n": self.n,
            "relations": [
                {"id": rid, "triples": [list(t) for t in rel.sorted_triples()]}
                for rid, rel in enumerate(self.relations)
            ],
        }

    @classmethod
    def from_obj(cls, obj: dict) -> "TriplePartition":
        n = int(obj["n"])
        entries = obj["relations"]
        ids = sorted(int(e["id"]) for e in entries)
        if ids != list(range(len(entries))):
            raise ValueError("relation ids must be exactly 0..m")
        rels: list = [None] * len(entries)
        for e in entries:
            rels[int(e["id"])] = TernaryRelation.from_triples(n, (tuple(t) for t in e["triples"]))
        part = cls(n, tuple(rels))
        part.validate()
        return part

    def __repr__(self) -> str:
        return f"TriplePartition(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class IndexPartition:
    """A partition of X(n) into nonempty PairSets, sorted by least pair."""

    n: int
    parts: tuple

    def __post_init__(self) -> None:
        parts = tuple(self.parts)
        if not parts:
            raise ValueError("partition needs at least one part")
        union = 0
        for part in parts:
            if not isinstance(part, PairSet) or part.n != self.n:
                raise ValueError("parts must be PairSets over the same universe")
            if part.mask == 0:
                raise ValueError("parts must be nonempty")
            if part.mask & union:
                raise ValueError("parts must be pairwise disjoint")
            union |= part.mask
        if union != (1 << pair_capacity(self.n)) - 1:
            raise ValueError("parts must cover the whole pair universe")
        object.__setattr__(self, "parts", tuple(sorted(parts, key=lambda p: p.mask & -p.mask)))

    def to_obj(self) -> dict:
        return {"n": self.n, "parts": [[list(p) for p in part.pairs()] for part in self.parts]}

    @classmethod
    def from_obj(cls, obj: dict) -> "IndexPartition":
        n = int(obj["n"])
        parts = tuple(PairSet.from_pairs(n, (tuple(p) for p in block)) for block in obj["parts"])
        return cls(n, parts)

    def __repr__(self) -> str:
        return f"IndexPartition(n={self.n}, parts={len(self.parts)})"
