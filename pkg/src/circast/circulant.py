"""Index-set calculus for shift-invariant ternary relations.

A nontrivial relation closed under (x,y,z) -> (x+1,y+1,z+1) mod n is
determined by its fibre over 0: the index set I = {(i,j) : (0,i,j) in R}
inside X(n), with

    R_I = {(x, i+x, j+x) : x in Omega, (i,j) in I}.

Permuting the three coordinates of R_I translates into six maps on subsets
of X(n); the generators are

    tau : (i,j) -> (-i, j-i)        (swap of coordinates 1,2)
    T   : (i,j) -> (j, i)           (swap of coordinates 2,3)

and tau*T*tau = T*tau*T. This module provides that dictionary in both
directions, the row/column regularity bookkeeping for index sets, and the
AST-regularity test for partitions of X(n) together with the construction
of the corresponding triple scheme and its inverse.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .core import (
    CircastError,
    IndexPartition,
    Pair,
    PairSet,
    TernaryRelation,
    TriplePartition,
    make_domain,
    trivial_relations,
)


class EmptyIndexSet(CircastError, ValueError):
    """The empty index set names no relation."""


class NotCirculant(CircastError):
    """A relation is not closed under the simultaneous +1 shift."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class NotNontrivial(CircastError):
    """A relation contains a triple with a repeated coordinate."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class NotASTRegular(CircastError):
    """A partition of X(n) fails one of the AST-regularity conditions."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class NotCirculantAST(CircastError):
    """A triple partition is not a circulant scheme."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


# --- the Sym(3) action -------------------------------------------------------

Sym3Element = tuple  # images (g(1), g(2), g(3)) of the positions 1,2,3

IDENTITY: Sym3Element = (1, 2, 3)
SWAP12: Sym3Element = (2, 1, 3)
SWAP13: Sym3Element = (3, 2, 1)
SWAP23: Sym3Element = (1, 3, 2)
CYCLE123: Sym3Element = (2, 3, 1)
CYCLE132: Sym3Element = (3, 1, 2)

SYM3: tuple = (IDENTITY, SWAP12, SWAP13, SWAP23, CYCLE123, CYCLE132)

SYM3_NAME = {
    IDENTITY: "e",
    SWAP12: "(12)",
    SWAP13: "(13)",
    SWAP23: "(23)",
    CYCLE123: "(123)",
    CYCLE132: "(132)",
}


def sym3_mul(g: Sym3Element, h: Sym3Element) -> Sym3Element:
    """g followed by h; triples transform by t^(g*h) = (t^g)^h."""
    return (h[g[0] - 1], h[g[1] - 1], h[g[2] - 1])


def sym3_inverse(g: Sym3Element) -> Sym3Element:
    out = [0, 0, 0]
    for k in range(3):
        out[g[k] - 1] = k + 1
    return tuple(out)


def permute_triple(t, g: Sym3Element):
    """Move the value at position k to position g(k)."""
    out = [0, 0, 0]
    for k in range(3):
        out[g[k] - 1] = t[k]
    return tuple(out)


def permute_relation(R: TernaryRelation, g: Sym3Element) -> TernaryRelation:
    return TernaryRelation(R.n, frozenset(permute_triple(t, g) for t in R.triples))


def pair_image(n: int, pair: Pair, g: Sym3Element) -> Pair:
    """Image of one index pair under the map realising the permutation g."""
    i, j = pair
    if g == IDENTITY:
        return (i, j)
    if g == SWAP12:
        return (-i % n, (j - i) % n)
    if g == SWAP23:
        return (j, i)
    if g == SWAP13:
        return ((i - j) % n, -j % n)
    if g == CYCLE123:
        return (-j % n, (i - j) % n)
    if g == CYCLE132:
        return ((j - i) % n, -i % n)
    raise ValueError(f"{g!r} is not a Sym(3) element")


def sym3_image(I: PairSet, g: Sym3Element) -> PairSet:
    """Image of an index set under the map realising g; again a subset of X."""
    return PairSet.from_pairs(I.n, (pair_image(I.n, p, g) for p in I))


# --- expansion and extraction ------------------------------------------------


def expand(I: PairSet) -> TernaryRelation:
    """The shift-closed relation with fibre I over 0; has exactly n*|I| triples."""
    if len(I) == 0:
        raise EmptyIndexSet("cannot expand the empty index set")
    n = I.n
    triples = frozenset(
        (x, (i + x) % n, (j + x) % n) for (i, j) in I for x in range(n)
    )
    return TernaryRelation(n, triples)


def is_circulant(R: TernaryRelation) -> bool:
    """True iff R is closed under the coordinate-wise +1 shift mod n."""
    n = R.n
    return all(((x + 1) % n, (y + 1) % n, (z + 1) % n) in R.triples for (x, y, z) in R.triples)


def extract(R: TernaryRelation) -> PairSet:
    """The unique index set I with R = R_I; inverse of :func:`expand`."""
    if len(R) == 0:
        raise ValueError("cannot extract from an empty relation")
    n = R.n
    for t in R.sorted_triples():
        x, y, z = t
        if x == y or y == z or x == z:
            raise NotNontrivial(f"triple {t} has a repeated coordinate", witness=t)
    for t in R.sorted_triples():
        shifted = ((t[0] + 1) % n, (t[1] + 1) % n, (t[2] + 1) % n)
        if shifted not in R.triples:
            raise NotCirculant(f"shift of {t} is missing", witness=t)
    return PairSet.from_pairs(n, ((y, z) for (x, y, z) in R.triples if x == 0))


# --- regularity of index sets ------------------------------------------------


@dataclass
class RegularityStats:
    """Row/column counts of a regular index set; all equal n_I."""

    n_I: int
    row_counts: dict
    col_counts: dict

    def to_obj(self) -> dict:
        return {
            "n_I": self.n_I,
            "rows": {str(k): v for k, v in sorted(self.row_counts.items())},
            "cols": {str(k): v for k, v in sorted(self.col_counts.items())},
        }


@dataclass
class RegularityReport:
    ok: bool
    stats: Optional[RegularityStats] = None
    failure_witness: Optional[tuple] = None  # (axis, value, count)

    def to_obj(self) -> dict:
        return {
            "ok": self.ok,
            "stats": self.stats.to_obj() if self.stats else None,
            "failure": list(self.failure_witness) if self.failure_witness else None,
        }


def regularity_stats(I: PairSet) -> RegularityReport:
    """Check that every row and column of I has one common positive count."""
    n = I.n
    rows = {x: 0 for x in range(1, n)}
    cols = {x: 0 for x in range(1, n)}
    for (i, j) in I:
        rows[i] += 1
        cols[j] += 1
    ref = rows[1]
    for axis, counts in (("row", rows), ("col", cols)):
        for x in range(1, n):
            if counts[x] != ref:
                return RegularityReport(False, failure_witness=(axis, x, counts[x]))
    if ref == 0:
        return RegularityReport(False, failure_witness=("row", 1, 0))
    return RegularityReport(True, stats=RegularityStats(ref, rows, cols))


@dataclass(frozen=True)
class NonConstant:
    """Two index pairs whose intersection counts disagree."""

    pair_a: Pair
    count_a: int
    pair_b: Pair
    count_b: int

    def to_obj(self) -> dict:
        return {
            "pair_a": list(self.pair_a),
            "count_a": self.count_a,
            "pair_b": list(self.pair_b),
            "count_b": self.count_b,
        }


def circulant_structure_constant(
    I: PairSet, J: PairSet, K: PairSet, L: PairSet
) -> Union[int, NonConstant]:
    """The common count p^L_{IJK}, or the least pair of conflicting witnesses.

    For (y,z) in L this counts the w outside {0,y,z} with (y-w, z-w) in I,
    (w,z) in J and (y,w) in K.
    """
    if len(L) == 0:
        raise EmptyIndexSet("the fourth index set must be nonempty")
    n = I.n
    if not (J.n == K.n == L.n == n):
        raise ValueError("index sets must share one pair universe")
    first_pair = None
    first = 0
    for (y, z) in L:
        c = 0
        for w in range(1, n):
            if w == y or w == z:
                continue
            if ((y - w) % n, (z - w) % n) in I and (w, z) in J and (y, w) in K:
                c += 1
        if first_pair is None:
            first_pair, first = (y, z), c
        elif c != first:
            return NonConstant(first_pair, first, (y, z), c)
    return first


# --- AST-regularity of partitions of X ----------------------------------------


@dataclass
class ASTRegularityReport:
    """Outcome of the three-condition test on a partition of X(n).

    Fields are filled up to the first failing condition: `part_stats` after
    (a), `action` after (b), `constants` after (c).
    """

    ok: bool
    part_stats: Optional[list] = None
    action: Optional[dict] = None  # (part index, Sym3Element) -> part index
    constants: Optional[dict] = None  # (i, j, k, l) part indices -> count
    failure: Optional[dict] = None

    def to_obj(self) -> dict:
        action_obj = None
        if self.action is not None:
            k = len(self.part_stats)
            action_obj = {
                SYM3_NAME[g]: [self.action[(idx, g)] for idx in range(k)] for g in SYM3
            }
        constants_obj = None
        if self.constants is not None:
            constants_obj = {}
            for (a, b, c, d), v in sorted(self.constants.items()):
                constants_obj.setdefault(str(a), {}).setdefault(str(b), {}).setdefault(
                    str(c), {}
                )[str(d)] = v
        return {
            "ok": self.ok,
            "parts": [s.to_obj() for s in self.part_stats] if self.part_stats is not None else None,
            "action": action_obj,
            "constants": constants_obj,
            "failure": self.failure,
        }


def is_ast_regular(P: IndexPartition) -> ASTRegularityReport:
    """Test conditions (a) regularity, (b) Sym(3)-invariance, (c) constant
    intersection numbers, in that order, stopping at the first failure."""
    # (a): every part row/column regular
    part_stats = []
    for idx, part in enumerate(P.parts):
        rep = regularity_stats(part)
        if not rep.ok:
            return ASTRegularityReport(
                False,
                failure={"condition": "a", "part": idx, "witness": list(rep.failure_witness)},
            )
        part_stats.append(rep.stats)
    # (b): the six maps permute the parts
    index_of = {part: idx for idx, part in enumerate(P.parts)}
    action = {}
    for idx, part in enumerate(P.parts):
        for g in SYM3:
            target = index_of.get(sym3_image(part, g))
            if target is None:
                return ASTRegularityReport(
                    False,
                    part_stats=part_stats,
                    failure={"condition": "b", "part": idx, "element": SYM3_NAME[g]},
                )
            action[(idx, g)] = target
    # (c): all quadruples of parts have a constant count
    constants = {}
    k = len(P.parts)
    for a in range(k):
        for b in range(k):
            for c in range(k):
                for d in range(k):
                    res = circulant_structure_constant(
                        P.parts[a], P.parts[b], P.parts[c], P.parts[d]
                    )
                    if isinstance(res, NonConstant):
                        return ASTRegularityReport(
                            False,
                            part_stats=part_stats,
                            action=action,
                            failure={
                                "condition": "c",
                                "quadruple": [a, b, c, d],
                                "witness": res.to_obj(),
                            },
                        )
                    constants[(a, b, c, d)] = res
    return ASTRegularityReport(True, part_stats, action, constants, None)


def build_ast(P: IndexPartition) -> TriplePartition:
    """The triple scheme of an AST-regular partition: the four trivial
    relations followed by the expansion of each part, ids 4..3+|parts|."""
    report = is_ast_regular(P)
    if not report.ok:
        raise NotASTRegular(f"partition is not AST-regular: {report.failure}", report=report)
    d = make_domain(P.n)
    relations = list(trivial_relations(d)) + [expand(part) for part in P.parts]
    return TriplePartition(P.n, tuple(relations))


def extract_partition(A: TriplePartition) -> IndexPartition:
    """Recover the partition of X(n) from a circulant scheme; inverse of
    :func:`build_ast` up to relation order."""
    d = make_domain(A.n)
    if len(A.relations) < 5 or tuple(A.relations[:4]) != trivial_relations(d):
        raise NotCirculantAST("relations 0..3 are not the trivial relations")
    parts = []
    for rid in range(4, len(A.relations)):
        try:
            parts.append(extract(A.relations[rid]))
        except (NotCirculant, NotNontrivial) as exc:
            raise NotCirculantAST(
                f"relation {rid} is not a nontrivial 3-circulant: {exc}",
                witness=exc.witness,
            ) from exc
    return IndexPartition(A.n, tuple(parts))
