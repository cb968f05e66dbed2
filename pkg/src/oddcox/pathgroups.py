"""Path-presented family, symmetric-group projection, and subgroup tools.

``build_ln(n)`` is the rank n-1 path system whose consecutive generators
braid (every finite exponent is 3).  Its projection to the symmetric
group sends the i-th generator to the adjacent transposition (i, i+1);
permutations compose with the leftmost word letter acting first.  The
kernel of the projection is the pure subgroup.

Reidemeister-Schreier presentations of kernels are computed from a full
coset table over the image group's elements with a ShortLex Schreier
transversal.  Tietze simplification is limited to removing trivial
relators and eliminating generators pinned by length-1 relators.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import INFINITY, CoxeterSystem, classify, path_system, validate_system
from .errors import (
    BadLetter,
    GroupTooLarge,
    ImageTooLarge,
    NonIntegerResult,
    NotAHomomorphism,
    NotBijectiveHom,
    NotInTW,
    RankTooSmall,
    UnsupportedShape,
)
from .words import DEFAULT_ORBIT_BUDGET, alternating, reduce_word
from .autkit import Endomorphism, apply, make_endo, satisfies_relations

DEFAULT_IMAGE_CAP = 10**5
DEFAULT_GROUP_CAP = 10**5


@dataclass(frozen=True)
class Permutation:
    """Bijection of {1..n}; images[i-1] is the image of i.

    Products apply the left factor first: (p * q)(x) = q(p(x)).
    """

    images: tuple

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise NotBijectiveHom(f"{self.images} is not a permutation")

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.degree != other.degree:
            raise NotBijectiveHom("degrees differ")
        return Permutation(tuple(other(self(i)) for i in range(1, self.degree + 1)))

    def inverse(self) -> "Permutation":
        out = [0] * self.degree
        for i in range(1, self.degree + 1):
            out[self(i) - 1] = i
        return Permutation(tuple(out))

    def is_identity(self) -> bool:
        return all(self(i) == i for i in range(1, self.degree + 1))

    def cycles(self) -> list:
        seen = set()
        out = []
        for start in range(1, self.degree + 1):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            nxt = self(start)
            while nxt != start:
                cycle.append(nxt)
                seen.add(nxt)
                nxt = self(nxt)
            if len(cycle) > 1:
                out.append(tuple(cycle))
        return out

    def __str__(self) -> str:
        return format_cycles(self)


def identity_perm(n: int) -> Permutation:
    return Permutation(tuple(range(1, n + 1)))


def transposition(n: int, i: int) -> Permutation:
    images = list(range(1, n + 1))
    images[i - 1], images[i] = images[i], images[i - 1]
    return Permutation(tuple(images))


def format_cycles(perm: Permutation) -> str:
    cycles = perm.cycles()
    if not cycles:
        return "()"
    return "".join("(" + " ".join(str(v) for v in c) + ")" for c in cycles)


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse cycle notation like "(1 3 4)(2 5)"; "()" is the identity."""
    text = text.strip()
    images = list(range(1, degree + 1))
    if text in ("()", ""):
        return Permutation(tuple(images))
    if not text.startswith("(") or not text.endswith(")"):
        raise NotBijectiveHom(f"cannot parse permutation {text!r}")
    body = text[1:-1]
    for chunk in body.split(")("):
        try:
            entries = [int(tok) for tok in chunk.split()]
        except ValueError as exc:
            raise NotBijectiveHom(f"cannot parse cycle ({chunk})") from exc
        if not entries:
            continue
        for v in entries:
            if not (1 <= v <= degree):
                raise NotBijectiveHom(f"cycle entry {v} out of range 1..{degree}")
        for pos, v in enumerate(entries):
            images[v - 1] = entries[(pos + 1) % len(entries)]
    return Permutation(tuple(images))


def build_ln(n: int) -> CoxeterSystem:
    """Rank n-1 path with all labels 3; rank 1 when n = 2."""
    if n < 2:
        raise RankTooSmall("the family starts at two strands")
    if n == 2:
        return validate_system([[1]])
    return path_system([3] * (n - 2))


def symmetric_images(n: int) -> list[Permutation]:
    """Standard projection targets: generator i maps to (i, i+1) in S_n."""
    return [transposition(n, i) for i in range(1, n)]


def pi_image(n: int, word: Sequence[int]) -> Permutation:
    """Image of a path word in S_n, leftmost letter applied first."""
    out = identity_perm(n)
    for letter in word:
        if not isinstance(letter, int) or isinstance(letter, bool) or not (
            1 <= letter <= n - 1
        ):
            raise BadLetter(f"letter {letter} out of range 1..{n - 1}")
        out = out * transposition(n, letter)
    return out


def is_pure(n: int, word: Sequence[int]) -> bool:
    """Does the word project to the identity permutation?"""
    return pi_image(n, word).is_identity()


@dataclass(frozen=True)
class FinitePresentation:
    """Generator count plus relators as words in signed generator indices."""

    num_generators: int
    relators: tuple


@dataclass(frozen=True)
class CommutatorStructure:
    """Presentation of the even-length (commutator) subgroup.

    Star form: generators a_i = w_1 w_i, relators a_i^{t_i}.
    Path form: generators x_i = y_i y_{i+1}, relators x_i^{m_i}.
    ``action`` gives the image of each generator under conjugation by the
    chosen odd generator (w_1 for stars, y_2 for paths), as a signed word.
    """

    kind: str
    presentation: FinitePresentation
    chosen_generator: int
    action: tuple
    names: tuple


def commutator_presentation(sys: CoxeterSystem) -> CommutatorStructure:
    if not classify(sys).in_tw:
        raise NotInTW("system is not an odd connected tree of rank >= 2")
    n = sys.rank
    degree = {i: 0 for i in sys.generators}
    for i, j, _ in sys.finite_pairs():
        degree[i] += 1
        degree[j] += 1
    if n == 2 or degree[1] == n - 1:
        # star centered at 1
        orders = [sys.m(1, i) for i in range(2, n + 1)]
        if any(m == INFINITY for m in orders):
            raise UnsupportedShape("star must be centered at generator 1")
        relators = tuple(tuple([g] * orders[g - 1]) for g in range(1, n))
        action = tuple((-g,) for g in range(1, n))
        names = tuple(f"a{i}" for i in range(2, n + 1))
        return CommutatorStructure(
            kind="star",
            presentation=FinitePresentation(n - 1, relators),
            chosen_generator=1,
            action=action,
            names=names,
        )
    if all(sys.m(i, i + 1) != INFINITY for i in range(1, n)) and all(
        degree[i] <= 2 for i in sys.generators
    ):
        # path labeled consecutively
        orders = [sys.m(i, i + 1) for i in range(1, n)]
        relators = tuple(tuple([g] * orders[g - 1]) for g in range(1, n))
        action = [(-1,), (-2,)]
        for j in range(3, n):
            prefix = tuple(range(2, j))
            action.append(prefix + (-j,) + tuple(-v for v in reversed(prefix)))
        names = tuple(f"x{i}" for i in range(1, n))
        return CommutatorStructure(
            kind="path",
            presentation=FinitePresentation(n - 1, relators),
            chosen_generator=2,
            action=tuple(action),
            names=names,
        )
    raise UnsupportedShape(
        "commutator presentation needs a star centered at 1 or a "
        "consecutively labeled path"
    )


def _simplify_limited(num_symbols: int, relators: list) -> FinitePresentation:
    """Drop trivial relators; kill generators pinned by length-1 relators."""
    alive = [True] * num_symbols
    rels = [list(r) for r in relators]
    changed = True
    while changed:
        changed = False
        cleaned = []
        seen = set()
        for r in rels:
            r = [s for s in r if alive[abs(s) - 1]]
            if not r:
                continue
            key = tuple(r)
            if key in seen:
                continue
            seen.add(key)
            cleaned.append(r)
        rels = cleaned
        for r in rels:
            if len(r) == 1:
                alive[abs(r[0]) - 1] = False
                changed = True
                break
    renumber = {}
    for idx, ok in enumerate(alive):
        if ok:
            renumber[idx + 1] = len(renumber) + 1
    out = []
    seen = set()
    for r in rels:
        mapped = tuple(
            renumber[s] if s > 0 else -renumber[-s] for s in r
        )
        if mapped and mapped not in seen:
            seen.add(mapped)
            out.append(mapped)
    return FinitePresentation(len(renumber), tuple(out))


def rs_kernel(
    sys: CoxeterSystem,
    images: Sequence[Permutation],
    image_cap: int = DEFAULT_IMAGE_CAP,
) -> FinitePresentation:
    """Presentation of the kernel of the map sending generators to ``images``.

    The images must satisfy the defining relations.  Cosets of the kernel
    are the elements of the image group; the Schreier transversal is the
    ShortLex-first spelling of each element.  Relators are the rewrites of
    every defining relator over every coset.
    """
    n = sys.rank
    if len(images) != n:
        raise NotAHomomorphism(f"expected {n} images, got {len(images)}")
    degree = images[0].degree
    for img in images:
        if img.degree != degree:
            raise NotAHomomorphism("images act on different degrees")
    ident = identity_perm(degree)
    for i, img in enumerate(images, start=1):
        if not (img * img).is_identity():
            raise NotAHomomorphism(f"image of generator {i} is not an involution")
    for i, j, m in sys.finite_pairs():
        prod = images[i - 1] * images[j - 1]
        power = ident
        for _ in range(m):
            power = power * prod
        if not power.is_identity():
            raise NotAHomomorphism(
                f"images of generators {i}, {j} do not satisfy the exponent {m}"
            )

    # BFS over the image group: ShortLex transversal and full coset table
    index = {ident.images: 0}
    elements = [ident]
    tree_edge = set()
    queue = deque([0])
    while queue:
        state = queue.popleft()
        for letter in range(1, n + 1):
            nxt = elements[state] * images[letter - 1]
            key = nxt.images
            if key not in index:
                if len(elements) >= image_cap:
                    raise ImageTooLarge(f"image group exceeds {image_cap} elements")
                index[key] = len(elements)
                elements.append(nxt)
                tree_edge.add((state, letter))
                queue.append(index[key])
    size = len(elements)
    table = [
        [index[(elements[s] * images[l - 1]).images] for l in range(1, n + 1)]
        for s in range(size)
    ]

    # Schreier generators: one symbol per non-tree (coset, letter) pair
    symbol = {}
    for s in range(size):
        for letter in range(1, n + 1):
            if (s, letter) not in tree_edge:
                symbol[(s, letter)] = len(symbol) + 1

    def rewrite(state: int, relator: Sequence[int]) -> list:
        out = []
        cur = state
        for letter in relator:
            if (cur, letter) in symbol:
                out.append(symbol[(cur, letter)])
            cur = table[cur][letter - 1]
        return out

    defining = [(i, i) for i in sys.generators]
    defining += [
        alternating(i, j, 2 * m) for i, j, m in sys.finite_pairs()
    ]
    relators = []
    for s in range(size):
        for rel in defining:
            relators.append(rewrite(s, rel))
    return _simplify_limited(len(symbol), relators)


def free_rank(sys: CoxeterSystem, index: int) -> int:
    """Rank of a torsion-free subgroup of the given finite index.

    Uses rank = 1 - index * chi where chi is the rational Euler measure
    of the group: half of (sum of reciprocal finite exponents minus
    (rank - 2)).  Refuses loudly on a non-integer result, which signals a
    violated precondition.
    """
    if not classify(sys).in_tw:
        raise NotInTW("system is not an odd connected tree of rank >= 2")
    chi = (
        sum(Fraction(1, m) for _, _, m in sys.finite_pairs()) - (sys.rank - 2)
    ) / 2
    rank = 1 - index * chi
    if rank.denominator != 1:
        raise NonIntegerResult(f"1 - index * chi = {rank} is not an integer")
    return int(rank)


@dataclass(frozen=True)
class PureWitness:
    """Automorphism moving a pure element out of the pure subgroup."""

    endo: Endomorphism
    g: tuple
    image: Permutation


def pl_witness(n: int, budget: int = DEFAULT_ORBIT_BUDGET) -> PureWitness:
    """Exhibit that the pure subgroup is not characteristic for n >= 4.

    The automorphism inverts x_1 = y_1 y_2 and fixes the other even
    generators and y_2; on the path generators it sends y_1 to
    y_2 y_1 y_2 and fixes the rest.  The pure element (x_1 x_2)^2 then
    maps to a word with nontrivial symmetric-group image.
    """
    if n < 4:
        raise RankTooSmall("the pure subgroup is trivial below four strands")
    sys = build_ln(n)
    images = [(2, 1, 2)] + [(i,) for i in range(2, n)]
    endo = make_endo(sys, images)
    assert satisfies_relations(sys, endo, budget)
    g = reduce_word(sys, (1, 2, 2, 3, 1, 2, 2, 3), budget)  # (x1 x2)^2
    assert is_pure(n, g)
    moved = apply(sys, endo, g, budget)
    image = pi_image(n, moved)
    assert not image.is_identity()
    return PureWitness(endo=endo, g=g, image=image)


def perm_group_table(gens: Sequence[Permutation], cap: int = DEFAULT_GROUP_CAP):
    """Element list and multiplication table of the group the gens generate."""
    if not gens:
        raise NotBijectiveHom("need at least one generator")
    degree = gens[0].degree
    ident = identity_perm(degree)
    index = {ident.images: 0}
    elements = [ident]
    queue = deque([0])
    while queue:
        state = queue.popleft()
        for g in gens:
            nxt = elements[state] * g
            if nxt.images not in index:
                if len(elements) >= cap:
                    raise GroupTooLarge(f"group exceeds {cap} elements")
                index[nxt.images] = len(elements)
                elements.append(nxt)
                queue.append(index[nxt.images])
    table = [
        [index[(a * b).images] for b in elements] for a in elements
    ]
    return elements, table


def symmetric_group_table(n: int, cap: int = DEFAULT_GROUP_CAP):
    return perm_group_table(symmetric_images(n), cap)


def cyclic_group_table(n: int):
    """Z/n as a table: element i is the residue i."""
    return [[(a + b) % n for b in range(n)] for a in range(n)]


def _identity_of(table: Sequence[Sequence[int]]) -> int:
    size = len(table)
    for e in range(size):
        if all(table[e][x] == x == table[x][e] for x in range(size)):
            return e
    raise ValueError("multiplication table has no identity element")


def _inverses_of(table: Sequence[Sequence[int]]) -> list:
    size = len(table)
    identity = _identity_of(table)
    out = [None] * size
    for a in range(size):
        for b in range(size):
            if table[a][b] == identity:
                out[a] = b
                break
        if out[a] is None:
            raise ValueError(f"element {a} has no inverse in the table")
    return out


def twisted_count(
    table: Sequence[Sequence[int]],
    aut: Sequence[int],
    cap: int = DEFAULT_GROUP_CAP,
) -> int:
    """Number of orbits of x ~ g x aut(g)^-1 over a finite group table."""
    size = len(table)
    if size > cap:
        raise GroupTooLarge(f"group of order {size} exceeds cap {cap}")
    if sorted(aut) != list(range(size)):
        raise NotBijectiveHom("map is not a bijection")
    for a in range(size):
        for b in range(size):
            if aut[table[a][b]] != table[aut[a]][aut[b]]:
                raise NotBijectiveHom(
                    f"map fails multiplicativity at ({a}, {b})"
                )
    inverse = _inverses_of(table)
    parent = list(range(size))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    def union(a: int, b: int):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for x in range(size):
        for g in range(size):
            union(x, table[table[g][x]][inverse[aut[g]]])
    return len({find(v) for v in range(size)})


def conjugation_map(table: Sequence[Sequence[int]], g: int) -> list:
    """Index map of x -> g x g^-1 over a group table."""
    size = len(table)
    ginv = _inverses_of(table)[g]
    return [table[table[g][x]][ginv] for x in range(size)]


def inversion_map(table: Sequence[Sequence[int]]) -> list:
    """Index map of x -> x^-1 over a group table."""
    return _inverses_of(table)
