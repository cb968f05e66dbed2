"""Coxeter systems with odd exponents and tree-shaped diagrams.

A system is stored as a symmetric matrix of exponents.  Diagonal entries
are 1, off-diagonal entries are odd integers >= 3 or ``INFINITY``.  The
value ``INFINITY`` (``math.inf``) is the single sentinel for unbounded
exponents; it never takes part in integer arithmetic.

Generators are 1-indexed everywhere.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    DiagonalNotOne,
    EvenOrSmallExponent,
    MalformedInvariant,
    NotAdjacentPair,
    NotInTW,
    NotStarForm,
    NotSymmetric,
    SystemFileError,
)

INFINITY = math.inf


def _is_valid_exponent(m) -> bool:
    if m == INFINITY:
        return True
    return isinstance(m, int) and not isinstance(m, bool) and m >= 3 and m % 2 == 1


@dataclass(frozen=True)
class CoxeterSystem:
    """Validated system: rank plus the symmetric exponent matrix."""

    rank: int
    exponents: tuple

    def m(self, i: int, j: int):
        """Exponent of the pair (i, j), 1-indexed."""
        return self.exponents[i - 1][j - 1]

    @property
    def generators(self) -> range:
        return range(1, self.rank + 1)

    def finite_pairs(self) -> list[tuple[int, int, int]]:
        """All (i, j, m) with i < j and m finite."""
        out = []
        for i in range(1, self.rank + 1):
            for j in range(i + 1, self.rank + 1):
                m = self.m(i, j)
                if m != INFINITY:
                    out.append((i, j, m))
        return out


def validate_system(raw: Sequence[Sequence]) -> CoxeterSystem:
    """Check a raw matrix and wrap it.  Never normalizes silently."""
    n = len(raw)
    if n < 1:
        raise MalformedInvariant("rank must be at least 1")
    for i, row in enumerate(raw):
        if len(row) != n:
            raise NotSymmetric(f"row {i + 1} has length {len(row)}, expected {n}")
    for i in range(n):
        entry = raw[i][i]
        if entry != 1:
            raise DiagonalNotOne(f"exponents[{i + 1}][{i + 1}] = {entry}, expected 1")
    for i in range(n):
        for j in range(i + 1, n):
            if raw[i][j] != raw[j][i]:
                raise NotSymmetric(
                    f"exponents[{i + 1}][{j + 1}] != exponents[{j + 1}][{i + 1}]"
                )
            if not _is_valid_exponent(raw[i][j]):
                raise EvenOrSmallExponent(
                    f"exponents[{i + 1}][{j + 1}] = {raw[i][j]}; "
                    "off-diagonal entries must be odd integers >= 3 or infinity"
                )
    rows = tuple(tuple(row) for row in raw)
    return CoxeterSystem(rank=n, exponents=rows)


@dataclass(frozen=True)
class DiagramV:
    """Graph with one labeled edge per finite exponent."""

    vertices: tuple
    edges: tuple  # (i, j, m) with i < j, m finite


@dataclass(frozen=True)
class DiagramGamma:
    """Graph with an edge for every pair; labels shown for exponents >= 4."""

    vertices: tuple
    edges: tuple  # (i, j, label) with label None when the exponent is 3


def diagram_v(sys: CoxeterSystem) -> DiagramV:
    return DiagramV(
        vertices=tuple(sys.generators),
        edges=tuple(sys.finite_pairs()),
    )


def diagram_gamma(sys: CoxeterSystem) -> DiagramGamma:
    edges = []
    for i in range(1, sys.rank + 1):
        for j in range(i + 1, sys.rank + 1):
            m = sys.m(i, j)
            edges.append((i, j, None if m == 3 else m))
    return DiagramGamma(vertices=tuple(sys.generators), edges=tuple(edges))


@dataclass(frozen=True)
class Classification:
    odd: bool
    connected: bool
    tree: bool
    in_tw: bool


def classify(sys: CoxeterSystem) -> Classification:
    """Connectivity and tree shape of the finite-exponent diagram."""
    n = sys.rank
    adjacency: dict[int, list[int]] = {i: [] for i in sys.generators}
    edge_count = 0
    for i, j, _ in sys.finite_pairs():
        adjacency[i].append(j)
        adjacency[j].append(i)
        edge_count += 1
    seen = {1}
    stack = [1]
    while stack:
        v = stack.pop()
        for w in adjacency[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    connected = len(seen) == n
    tree = connected and edge_count == n - 1
    return Classification(
        odd=True,
        connected=connected,
        tree=tree,
        in_tw=connected and tree and n >= 2,
    )


@dataclass(frozen=True)
class SystemInvariant:
    """Rank together with the multiset of finite exponents (sorted)."""

    rank: int
    finite_exponents: tuple


def invariants(sys: CoxeterSystem) -> SystemInvariant:
    if not classify(sys).in_tw:
        raise NotInTW("system is not an odd connected tree of rank >= 2")
    ms = sorted(m for _, _, m in sys.finite_pairs())
    return SystemInvariant(rank=sys.rank, finite_exponents=tuple(ms))


def decide_isomorphic(a: CoxeterSystem, b: CoxeterSystem) -> bool:
    """Groups are isomorphic exactly when rank and exponent multiset agree."""
    return invariants(a) == invariants(b)


@dataclass(frozen=True)
class StarForm:
    """Canonical star presentation: center 1, leaves 2..n, exponents ascending.

    ``t`` lists the leaf exponents in leaf order, ``blocks`` groups leaves
    with equal exponent into consecutive runs.
    """

    system: CoxeterSystem
    t: tuple  # t[i - 2] is the exponent of leaf i
    distinct: tuple
    multiplicities: tuple
    blocks: tuple  # tuple of tuples of leaf indices

    @property
    def rank(self) -> int:
        return self.system.rank

    @property
    def leaves(self) -> range:
        return range(2, self.rank + 1)

    def t_of(self, leaf: int) -> int:
        return self.t[leaf - 2]

    def block_of(self, leaf: int) -> tuple:
        for block in self.blocks:
            if leaf in block:
                return block
        raise NotStarForm(f"no leaf {leaf}")


def _star_matrix(ts: Sequence[int]) -> CoxeterSystem:
    n = len(ts) + 1
    rows = [[INFINITY] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = 1
    for idx, t in enumerate(ts):
        rows[0][idx + 1] = t
        rows[idx + 1][0] = t
    return validate_system(rows)


def _star_form_from_ts(ts: Sequence[int]) -> StarForm:
    ts = tuple(ts)
    distinct: list[int] = []
    mults: list[int] = []
    blocks: list[tuple] = []
    leaf = 2
    for t in ts:
        if distinct and distinct[-1] == t:
            mults[-1] += 1
            blocks[-1] = blocks[-1] + (leaf,)
        else:
            distinct.append(t)
            mults.append(1)
            blocks.append((leaf,))
        leaf += 1
    return StarForm(
        system=_star_matrix(ts),
        t=ts,
        distinct=tuple(distinct),
        multiplicities=tuple(mults),
        blocks=tuple(blocks),
    )


def canonical_star(inv: SystemInvariant) -> StarForm:
    """Star presentation determined by an invariant pair."""
    if inv.rank < 2:
        raise MalformedInvariant("rank must be at least 2")
    if len(inv.finite_exponents) != inv.rank - 1:
        raise MalformedInvariant(
            f"expected {inv.rank - 1} finite exponents, got {len(inv.finite_exponents)}"
        )
    for m in inv.finite_exponents:
        if not _is_valid_exponent(m) or m == INFINITY:
            raise MalformedInvariant(f"bad exponent {m}")
    return _star_form_from_ts(sorted(inv.finite_exponents))


def star_form(sys: CoxeterSystem) -> StarForm:
    """Interpret an existing system as a canonical star, or fail."""
    n = sys.rank
    if n < 2:
        raise NotStarForm("rank must be at least 2")
    ts = []
    for i in range(2, n + 1):
        m = sys.m(1, i)
        if m == INFINITY:
            raise NotStarForm(f"pair (1, {i}) must carry a finite exponent")
        ts.append(m)
    for i in range(2, n + 1):
        for j in range(i + 1, n + 1):
            if sys.m(i, j) != INFINITY:
                raise NotStarForm(f"pair ({i}, {j}) must be unbounded in a star")
    if list(ts) != sorted(ts):
        raise NotStarForm("leaf exponents must be ascending")
    return _star_form_from_ts(ts)


def path_system(labels: Sequence[int]) -> CoxeterSystem:
    """Path-shaped system: consecutive generators joined by the given labels."""
    n = len(labels) + 1
    rows = [[INFINITY] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = 1
    for idx, m in enumerate(labels):
        rows[idx][idx + 1] = m
        rows[idx + 1][idx] = m
    return validate_system(rows)


def merge_generators(star: StarForm, i: int, j: int):
    """Quotient identifying generators ``i`` and ``j`` of a star.

    Merging a leaf into the center deletes the leaf.  Merging two leaves
    keeps one leaf labeled gcd of the two exponents; a gcd of 1 collapses
    the merged leaf into the center as well.  Returns the quotient system
    together with the old-generator -> new-generator index map.
    """
    n = star.rank
    if i == j or not (1 <= i <= n) or not (1 <= j <= n):
        raise NotAdjacentPair(f"cannot merge generator pair ({i}, {j})")
    mapping = [0] * n
    mapping[0] = 1
    merged_tag = None
    if 1 in (i, j):
        leaf = j if i == 1 else i
        entries = sorted((star.t_of(u), u) for u in star.leaves if u != leaf)
        mapping[leaf - 1] = 1
    else:
        d = math.gcd(star.t_of(i), star.t_of(j))
        entries = sorted((star.t_of(u), u) for u in star.leaves if u not in (i, j))
        if d > 1:
            merged_tag = min(i, j)
            entries = sorted(entries + [(d, merged_tag)])
        else:
            mapping[i - 1] = 1
            mapping[j - 1] = 1
    for pos, (_, tag) in enumerate(entries):
        new_index = pos + 2
        if tag == merged_tag:
            mapping[i - 1] = new_index
            mapping[j - 1] = new_index
        else:
            mapping[tag - 1] = new_index
    if not entries:
        quotient = validate_system([[1]])
    else:
        quotient = _star_matrix([t for t, _ in entries])
    return quotient, tuple(mapping)


# system file format: {"rank": n, "edges": [{"u":1,"v":2,"m":3}, ...]},
# missing pairs mean an unbounded exponent


def system_to_json(sys: CoxeterSystem) -> str:
    edges = [{"u": i, "v": j, "m": m} for i, j, m in sys.finite_pairs()]
    return json.dumps({"rank": sys.rank, "edges": edges}, separators=(", ", ": "))


def system_from_json(text: str) -> CoxeterSystem:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SystemFileError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise SystemFileError("top level must be an object")
    if "rank" not in data:
        raise SystemFileError("missing field 'rank'")
    rank = data["rank"]
    if not isinstance(rank, int) or isinstance(rank, bool) or rank < 1:
        raise SystemFileError("'rank' must be a positive integer")
    edges = data.get("edges", [])
    if not isinstance(edges, list):
        raise SystemFileError("'edges' must be an array")
    rows = [[INFINITY] * rank for _ in range(rank)]
    for idx in range(rank):
        rows[idx][idx] = 1
    seen: set[tuple[int, int]] = set()
    for k, edge in enumerate(edges):
        where = f"edges[{k}]"
        if not isinstance(edge, dict):
            raise SystemFileError(f"{where}: must be an object")
        for field in ("u", "v", "m"):
            if field not in edge:
                raise SystemFileError(f"{where}: missing field '{field}'")
            value = edge[field]
            if not isinstance(value, int) or isinstance(value, bool):
                raise SystemFileError(f"{where}.{field}: must be an integer")
        u, v, m = edge["u"], edge["v"], edge["m"]
        if not (1 <= u <= rank):
            raise SystemFileError(f"{where}.u: vertex {u} out of range 1..{rank}")
        if not (1 <= v <= rank):
            raise SystemFileError(f"{where}.v: vertex {v} out of range 1..{rank}")
        if u == v:
            raise SystemFileError(f"{where}: self-loop at vertex {u}")
        if m % 2 == 0:
            raise SystemFileError(f"{where}.m: label {m} is even")
        if m < 3:
            raise SystemFileError(f"{where}.m: label {m} is below 3")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise SystemFileError(f"{where}: duplicate edge {key[0]}-{key[1]}")
        seen.add(key)
        rows[u - 1][v - 1] = m
        rows[v - 1][u - 1] = m
    return validate_system(rows)


def relabel(sys: CoxeterSystem, perm: Sequence[int]) -> CoxeterSystem:
    """System with vertices renamed by ``perm`` (perm[i-1] is the new name of i)."""
    n = sys.rank
    rows = [[1] * n for _ in range(n)]
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            rows[perm[i - 1] - 1][perm[j - 1] - 1] = sys.m(i, j)
    return validate_system(rows)


def random_tree_system(rng, rank: int, labels: Iterable[int] = (3, 5, 7, 9)) -> CoxeterSystem:
    """Random member of the validated tree family (for tests and demos)."""
    labels = tuple(labels)
    rows = [[INFINITY] * rank for _ in range(rank)]
    for i in range(rank):
        rows[i][i] = 1
    for v in range(2, rank + 1):
        parent = rng.randint(1, v - 1)
        m = rng.choice(labels)
        rows[v - 1][parent - 1] = m
        rows[parent - 1][v - 1] = m
    return validate_system(rows)
