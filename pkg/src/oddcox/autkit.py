"""Endomorphisms and automorphisms of star-form groups.

An endomorphism is stored as the list of generator images.  Verified
automorphisms of a star factor as

    e = inner(x^-1) o graph(perm) o exponent_product(cvec)

where perm permutes leaves within blocks of equal exponent and cvec
collects, per leaf i, the exponent k of the reflection map
w_i -> w_1 (w_1 w_i)^k.  ``factorize`` recovers the three parts and
checks the recomposition; failure of any step is reported as
``NotAutomorphism``, which doubles as the non-surjectivity detector used
by ``try_invert``.

Composition convention: compose(e1, e2) applies e2 first.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Sequence

from .core import CoxeterSystem, StarForm, merge_generators
from .errors import (
    BadThetaExponent,
    BlockViolatingPermutation,
    EndoFileError,
    IsInnerNoWitness,
    NoMergeWitness,
    NotAutomorphism,
    NotInvolution,
    NotSurjective,
)
from .words import (
    DEFAULT_ORBIT_BUDGET,
    alternating,
    check_word,
    dihedral_log,
    inverse_word,
    involution_to_base,
    reduce_word,
)


@dataclass(frozen=True)
class Endomorphism:
    """Generator-image list over a fixed ambient system."""

    system: CoxeterSystem
    images: tuple  # images[i - 1] is the image word of generator i

    def image_of(self, i: int):
        return self.images[i - 1]


def make_endo(sys: CoxeterSystem, images: Sequence[Sequence[int]]) -> Endomorphism:
    if len(images) != sys.rank:
        raise EndoFileError(
            f"expected {sys.rank} generator images, got {len(images)}"
        )
    return Endomorphism(
        system=sys, images=tuple(check_word(sys, w) for w in images)
    )


def identity_endo(sys: CoxeterSystem) -> Endomorphism:
    return Endomorphism(system=sys, images=tuple((i,) for i in sys.generators))


def apply(
    sys: CoxeterSystem,
    e: Endomorphism,
    word: Sequence[int],
    budget: int = DEFAULT_ORBIT_BUDGET,
):
    """Canonical form of the image of a word: substitute letterwise, reduce."""
    word = check_word(sys, word)
    out: list[int] = []
    for letter in word:
        out.extend(e.image_of(letter))
    return reduce_word(sys, tuple(out), budget)


def satisfies_relations(
    sys: CoxeterSystem, e: Endomorphism, budget: int = DEFAULT_ORBIT_BUDGET
) -> bool:
    """Do the images satisfy every defining relation of the system?"""
    for i in sys.generators:
        if apply(sys, e, (i, i), budget) != ():
            return False
    for i, j, m in sys.finite_pairs():
        if apply(sys, e, alternating(i, j, 2 * m), budget) != ():
            return False
    return True


def verify_endo(
    star: StarForm, e: Endomorphism, budget: int = DEFAULT_ORBIT_BUDGET
) -> bool:
    return satisfies_relations(star.system, e, budget)


def inner_auto(
    star: StarForm, x: Sequence[int], budget: int = DEFAULT_ORBIT_BUDGET
) -> Endomorphism:
    """Conjugation by x: every generator g maps to x g x^-1."""
    sys = star.system
    x = check_word(sys, x)
    xinv = inverse_word(x)
    return Endomorphism(
        system=sys,
        images=tuple(
            reduce_word(sys, x + (g,) + xinv, budget) for g in sys.generators
        ),
    )


def theta_auto(
    star: StarForm, i: int, k: int, budget: int = DEFAULT_ORBIT_BUDGET
) -> Endomorphism:
    """Reflection-rescaling map fixing all generators but leaf i,
    which is sent to w_1 (w_1 w_i)^k; requires gcd(k, t_i) = 1."""
    if i not in star.leaves:
        raise BadThetaExponent(f"{i} is not a leaf")
    t = star.t_of(i)
    if not (1 <= k < t) or math.gcd(k, t) != 1:
        raise BadThetaExponent(f"exponent {k} invalid for leaf of label {t}")
    sys = star.system
    images = [(g,) for g in sys.generators]
    images[i - 1] = reduce_word(sys, (1,) + alternating(1, i, 2) * k, budget)
    return Endomorphism(system=sys, images=tuple(images))


def _normalize_perm(star: StarForm, perm) -> tuple:
    """Leaf permutation as a tuple indexed by leaf - 2; validates blocks."""
    if isinstance(perm, dict):
        images = [perm.get(i, i) for i in star.leaves]
    else:
        images = list(perm)
    if sorted(images) != list(star.leaves):
        raise BlockViolatingPermutation(f"{images} is not a permutation of the leaves")
    for leaf, image in zip(star.leaves, images):
        if star.t_of(leaf) != star.t_of(image):
            raise BlockViolatingPermutation(
                f"leaf {leaf} (label {star.t_of(leaf)}) may not map to "
                f"{image} (label {star.t_of(image)})"
            )
    return tuple(images)


def graph_auto(star: StarForm, perm) -> Endomorphism:
    """Diagram symmetry: permutes leaves within equal-label blocks."""
    images = _normalize_perm(star, perm)
    sys = star.system
    out = [(1,)] + [(images[i - 2],) for i in star.leaves]
    return Endomorphism(system=sys, images=tuple(out))


def theta_product(
    star: StarForm, cvec: Sequence[int], budget: int = DEFAULT_ORBIT_BUDGET
) -> Endomorphism:
    """Product of leaf maps with the given exponents, ascending leaf order."""
    if len(cvec) != star.rank - 1:
        raise BadThetaExponent(
            f"expected {star.rank - 1} exponents, got {len(cvec)}"
        )
    sys = star.system
    images = [(1,)]
    for leaf, k in zip(star.leaves, cvec):
        t = star.t_of(leaf)
        if not (1 <= k < t) or math.gcd(k, t) != 1:
            raise BadThetaExponent(f"exponent {k} invalid for leaf {leaf}")
        images.append(reduce_word(sys, (1,) + alternating(1, leaf, 2) * k, budget))
    return Endomorphism(system=sys, images=tuple(images))


def compose(
    e1: Endomorphism, e2: Endomorphism, budget: int = DEFAULT_ORBIT_BUDGET
) -> Endomorphism:
    """compose(e1, e2)(w) = e1(e2(w))."""
    if e1.system != e2.system:
        raise NotAutomorphism("cannot compose endomorphisms of different systems")
    sys = e1.system
    return Endomorphism(
        system=sys,
        images=tuple(
            apply(sys, e1, e2.image_of(g), budget) for g in sys.generators
        ),
    )


@dataclass(frozen=True)
class AutFactorization:
    """Inner word x, leaf permutation, and exponent vector of an automorphism.

    The factored map is inner(x^-1) o graph(perm) o exponent_product(cvec);
    perm is stored as the image tuple for leaves 2..n, cvec likewise.
    """

    inner: tuple
    cvec: tuple
    perm: tuple

    def perm_of(self, leaf: int) -> int:
        return self.perm[leaf - 2]

    def perm_is_identity(self) -> bool:
        return all(self.perm_of(i) == i for i in range(2, len(self.perm) + 2))


def recompose(
    star: StarForm, f: AutFactorization, budget: int = DEFAULT_ORBIT_BUDGET
) -> Endomorphism:
    sys = star.system
    x = check_word(sys, f.inner)
    xinv = inverse_word(x)
    images = []
    for g in sys.generators:
        if g == 1:
            core = (1,)
        else:
            k = f.cvec[g - 2]
            target = f.perm_of(g)
            core = (1,) + alternating(1, target, 2) * k
        images.append(reduce_word(sys, xinv + core + x, budget))
    return Endomorphism(system=sys, images=tuple(images))


def factorize(
    star: StarForm, e: Endomorphism, budget: int = DEFAULT_ORBIT_BUDGET
) -> AutFactorization:
    """Factor a verified endomorphism, or prove it is no automorphism.

    Steps: conjugate the image of the center back to the center; each leaf
    image must then be a reflection inside exactly one maximal dihedral
    subgroup, which pins the leaf permutation and the exponent vector;
    finally the recomposition must reproduce the input on every generator.
    """
    sys = star.system
    image_of_center = reduce_word(sys, e.image_of(1), budget)
    if image_of_center == ():
        raise NotAutomorphism("center generator maps to the identity")
    try:
        x = involution_to_base(star, image_of_center, budget)
    except NotInvolution as exc:
        raise NotAutomorphism(f"center image is not an involution: {exc}") from exc
    psi = compose(inner_auto(star, x, budget), e, budget)
    perm = {}
    cvec = {}
    for i in star.leaves:
        u = psi.image_of(i)
        letters = set(u)
        leaf_letters = letters - {1}
        if len(leaf_letters) != 1:
            raise NotAutomorphism(
                f"image of leaf {i} has support {sorted(letters)}, "
                "expected exactly one maximal dihedral subgroup"
            )
        (j,) = leaf_letters
        parity, k = dihedral_log(star, j, u, budget)
        if parity != "odd":
            raise NotAutomorphism(f"image of leaf {i} is a rotation, not a reflection")
        if star.t_of(i) != star.t_of(j):
            raise NotAutomorphism(
                f"leaf {i} (label {star.t_of(i)}) maps into the subgroup of "
                f"leaf {j} (label {star.t_of(j)})"
            )
        if k < 1 or math.gcd(k, star.t_of(j)) != 1:
            raise NotAutomorphism(
                f"leaf {i} maps to a reflection of non-coprime exponent {k}"
            )
        if j in perm.values():
            raise NotAutomorphism(f"two leaves map into the subgroup of leaf {j}")
        perm[i] = j
        cvec[i] = k
    f = AutFactorization(
        inner=x,
        cvec=tuple(cvec[i] for i in star.leaves),
        perm=tuple(perm[i] for i in star.leaves),
    )
    rebuilt = recompose(star, f, budget)
    for g in sys.generators:
        if rebuilt.image_of(g) != reduce_word(sys, e.image_of(g), budget):
            raise NotAutomorphism(
                f"recomposition differs from the input on generator {g}"
            )
    return f


def is_inner(star: StarForm, f: AutFactorization) -> bool:
    """Inner exactly when the permutation is trivial and the exponent
    vector is all ones or all (t_i - 1): those are the only members of the
    abelian part that conjugation can produce."""
    if not f.perm_is_identity():
        return False
    all_one = all(k == 1 for k in f.cvec)
    all_minus = all(
        k == star.t_of(i) - 1 for i, k in zip(star.leaves, f.cvec)
    )
    return all_one or all_minus


@dataclass(frozen=True)
class NormalityWitness:
    """Element g of the merge-quotient kernel whose image escapes it."""

    g: tuple
    merge: tuple
    evidence: tuple
    quotient: CoxeterSystem
    mapping: tuple


def normality_witness(
    star: StarForm, f: AutFactorization, budget: int = DEFAULT_ORBIT_BUDGET
) -> NormalityWitness:
    """Witness that a non-inner automorphism moves some normal subgroup.

    The normal subgroup is the kernel N of a generator merge; the witness
    is g in N whose image under the automorphism maps to a nontrivial
    element of the quotient.  A moved leaf gives g = w_1 w_i with the
    center merge (1, i); differing exponents at leaves i, j with
    gcd(t_i, t_j) > 1 give g = w_i w_j with the leaf merge (i, j).
    When neither case applies no merge quotient can tell the automorphism
    from a normal one and the search fails explicitly.
    """
    if is_inner(star, f):
        raise IsInnerNoWitness("inner automorphisms preserve every normal subgroup")
    sys = star.system
    phi = recompose(star, f, budget)

    def certified(g, pair):
        quotient, mapping = merge_generators(star, *pair)
        image = apply(sys, phi, g, budget)
        pushed = tuple(mapping[letter - 1] for letter in image)
        evidence = reduce_word(quotient, pushed, budget)
        if evidence == ():
            return None
        kernel_check = tuple(mapping[letter - 1] for letter in g)
        if reduce_word(quotient, kernel_check, budget) != ():
            raise NoMergeWitness("witness candidate does not lie in the kernel")
        return NormalityWitness(
            g=g, merge=pair, evidence=evidence, quotient=quotient, mapping=mapping
        )

    for i in star.leaves:
        if f.perm_of(i) != i:
            witness = certified((1, i), (1, i))
            if witness is not None:
                return witness
    for i in star.leaves:
        for j in range(i + 1, star.rank + 1):
            d = math.gcd(star.t_of(i), star.t_of(j))
            if d > 1 and f.cvec[i - 2] % d != f.cvec[j - 2] % d:
                witness = certified((i, j), (i, j))
                if witness is not None:
                    return witness
    raise NoMergeWitness(
        "no generator-merge quotient separates this automorphism from a normal one"
    )


def try_invert(
    star: StarForm, e: Endomorphism, budget: int = DEFAULT_ORBIT_BUDGET
) -> Endomorphism:
    """Invert a verified endomorphism or prove it not surjective.

    A verified endomorphism that factorizes is an automorphism and each
    factor inverts termwise; one that does not factorize cannot be onto.
    """
    try:
        f = factorize(star, e, budget)
    except NotAutomorphism as exc:
        raise NotSurjective(f"endomorphism is not onto: {exc}") from exc
    inv_perm = {}
    for i in star.leaves:
        inv_perm[f.perm_of(i)] = i
    inv_cvec = []
    for i in star.leaves:
        t = star.t_of(i)
        inv_cvec.append(pow(f.cvec[i - 2], -1, t))
    inverse = compose(
        theta_product(star, inv_cvec, budget),
        compose(
            graph_auto(star, inv_perm),
            inner_auto(star, f.inner, budget),
            budget,
        ),
        budget,
    )
    ident = identity_endo(star.system)
    forward = compose(e, inverse, budget)
    backward = compose(inverse, e, budget)
    for g in star.system.generators:
        if forward.image_of(g) != ident.image_of(g) or backward.image_of(
            g
        ) != ident.image_of(g):
            raise NotSurjective("inverse check failed; endomorphism is not onto")
    return inverse


# automorphism file format: {"images": [[1], [1, 2, 1], [3]]}


def endo_to_json(e: Endomorphism) -> str:
    return json.dumps({"images": [list(w) for w in e.images]})


def endo_from_json(sys: CoxeterSystem, text: str) -> Endomorphism:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise EndoFileError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict) or "images" not in data:
        raise EndoFileError("top level must be an object with field 'images'")
    images = data["images"]
    if not isinstance(images, list):
        raise EndoFileError("'images' must be an array of words")
    if len(images) != sys.rank:
        raise EndoFileError(
            f"images[]: expected {sys.rank} words, got {len(images)}"
        )
    for idx, word in enumerate(images):
        if not isinstance(word, list) or not all(
            isinstance(letter, int) and not isinstance(letter, bool)
            for letter in word
        ):
            raise EndoFileError(f"images[{idx}]: must be an array of integers")
        for letter in word:
            if not (1 <= letter <= sys.rank):
                raise EndoFileError(
                    f"images[{idx}]: letter {letter} out of range 1..{sys.rank}"
                )
    return make_endo(sys, [tuple(w) for w in images])
