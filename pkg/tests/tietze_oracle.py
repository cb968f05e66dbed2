"""Test-side presentation tools: Nielsen-style collapse and abelianization.

Independent of the library's limited simplification; used as the oracle
that certifies freeness and rank of Reidemeister-Schreier outputs.
"""

from collections import Counter


def free_reduce(relator):
    out = []
    for s in relator:
        if out and out[-1] == -s:
            out.pop()
        else:
            out.append(s)
    return out


def cyclically_reduce(relator):
    r = free_reduce(relator)
    while len(r) >= 2 and r[0] == -r[-1]:
        r = r[1:-1]
    return r


def _canonical_key(relator):
    variants = []
    for w in (relator, [-s for s in reversed(relator)]):
        for i in range(len(w)):
            variants.append(tuple(w[i:] + w[:i]))
    return min(variants)


def collapse(num_generators, relators):
    """Apply Tietze moves until no relator is removable.

    Moves: cyclic reduction, deduplication up to rotation and inversion,
    killing generators pinned by length-1 relators, identifying inverse
    pairs from length-2 relators, and dropping a generator that occurs
    exactly once in exactly one relator.  Returns (rank, leftover
    relators) and None when a torsion relator x^2 is found, which rules
    out freeness.
    """
    gens = set(range(1, num_generators + 1))
    rels = [list(r) for r in relators]
    while True:
        rels = [cyclically_reduce(r) for r in rels]
        rels = [r for r in rels if r]
        seen, deduped = set(), []
        for r in rels:
            key = _canonical_key(r)
            if key not in seen:
                seen.add(key)
                deduped.append(r)
        rels = deduped
        length_one = next((r for r in rels if len(r) == 1), None)
        if length_one:
            g = abs(length_one[0])
            gens.discard(g)
            rels = [[s for s in r if abs(s) != g] for r in rels]
            continue
        pair = next(
            (r for r in rels if len(r) == 2 and abs(r[0]) != abs(r[1])), None
        )
        if pair:
            a, b = pair
            g = abs(b)
            replacement = [-a] if b > 0 else [a]
            new_rels = []
            for r in rels:
                if r is pair:
                    continue
                word = []
                for s in r:
                    if abs(s) == g:
                        word.extend(
                            replacement if s > 0 else [-x for x in reversed(replacement)]
                        )
                    else:
                        word.append(s)
                new_rels.append(word)
            gens.discard(g)
            rels = new_rels
            continue
        if any(len(r) == 2 and abs(r[0]) == abs(r[1]) for r in rels):
            return None
        counts = Counter()
        location = {}
        for idx, r in enumerate(rels):
            for s in r:
                counts[abs(s)] += 1
                location[abs(s)] = idx
        unique = next((g for g in sorted(counts) if counts[g] == 1), None)
        if unique is not None:
            del rels[location[unique]]
            gens.discard(unique)
            continue
        return len(gens), [tuple(r) for r in rels]


def certified_free_rank(presentation):
    """Rank when the collapse removes every relator, else None."""
    result = collapse(presentation.num_generators, presentation.relators)
    if result is None:
        return None
    rank, leftover = result
    return rank if not leftover else None


def abelian_invariants(num_generators, relators):
    """Invariant factors (> 1) of the abelianized presentation."""
    rows = []
    for r in relators:
        row = [0] * num_generators
        for s in r:
            row[abs(s) - 1] += 1 if s > 0 else -1
        rows.append(row)
    return _smith(rows, num_generators)


def _smith(rows, ncols):
    mat = [list(r) for r in rows]
    nrows = len(mat)
    t = 0
    invariants = []
    while t < min(nrows, ncols):
        pivot = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                if mat[i][j] != 0 and (
                    pivot is None or abs(mat[i][j]) < abs(mat[pivot[0]][pivot[1]])
                ):
                    pivot = (i, j)
        if pivot is None:
            break
        i0, j0 = pivot
        mat[t], mat[i0] = mat[i0], mat[t]
        for row in mat:
            row[t], row[j0] = row[j0], row[t]
        dirty = False
        for i in range(nrows):
            if i != t and mat[i][t] != 0:
                q = mat[i][t] // mat[t][t]
                for j in range(ncols):
                    mat[i][j] -= q * mat[t][j]
                dirty = dirty or mat[i][t] != 0
        for j in range(ncols):
            if j != t and mat[t][j] != 0:
                q = mat[t][j] // mat[t][t]
                for row in mat:
                    row[j] -= q * row[t]
                dirty = dirty or mat[t][j] != 0
        if dirty:
            continue
        offender = None
        for i in range(t + 1, nrows):
            for j in range(t + 1, ncols):
                if mat[i][j] % mat[t][t] != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            for j in range(ncols):
                mat[t][j] += mat[offender][j]
            continue
        invariants.append(abs(mat[t][t]))
        t += 1
    return sorted(d for d in invariants if d > 1)
