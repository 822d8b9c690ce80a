"""Barycentric subdivision of fibered complexes.

The subdivided complex lives over a new transversal with one atom per
(family, atom) pair of the original complex: the barycenter instances.
k-simplices of the subdivision are flags A_0 < A_1 < ... < A_k = full of
vertex subsets of an original simplex, with vertices ordered by increasing
face dimension; each flag family sits over the base of its top family.
"""

from .complexes import FiberedComplex, SimplexFamily, Transversal


def _chains_ending_full(d, length):
    """Strictly increasing chains of nonempty subsets of {0..d} of the
    given length whose last entry is the full set, in lexicographic order."""
    full = frozenset(range(d + 1))
    if length == 1:
        return [(full,)]
    subsets = []
    for mask in range(1, 1 << (d + 1)):
        s = frozenset(i for i in range(d + 1) if mask >> i & 1)
        if s != full:
            subsets.append(s)
    subsets.sort(key=lambda s: (len(s), tuple(sorted(s))))
    out = []

    def extend(chain):
        if len(chain) == length - 1:
            out.append(tuple(chain) + (full,))
            return
        for s in subsets:
            if len(s) > len(chain[-1]) and chain[-1] < s:
                extend(chain + [s])

    for s in subsets:
        extend([s])
    out.sort(key=lambda ch: tuple(tuple(sorted(a)) for a in ch))
    return out


def _face_by_subset(complex, d, gi, subset):
    """Iterated face of family (d, gi) spanned by a vertex subset.

    Drops the complement in decreasing index order, so each drop uses the
    vertex's original index.  Returns (dim, family index, holonomy dict).
    """
    fam, hol = gi, {t: t for t in complex.families[d][gi].base}
    cur = d
    for c in sorted(set(range(d + 1)) - set(subset), reverse=True):
        target, fmap = complex.families[cur][fam].faces[c]
        hol = {t: fmap[h] for t, h in hol.items()}
        fam = target
        cur -= 1
    return cur, fam, hol


def barycentric_subdivide_with_atlas(complex):
    """Subdivide; also return new-atom -> (dim, family, atom) provenance."""
    # new atoms: one per (dim, family, atom), deterministic order
    atom_of = {}
    origin = []
    weights = []
    for d, fl in enumerate(complex.families):
        for gi, f in enumerate(fl):
            for t in f.base:
                atom_of[(d, gi, t)] = len(origin)
                origin.append((d, gi, t))
                weights.append(complex.transversal.weights[t])
    transversal = Transversal(weights)

    # families of the subdivision, per new dimension k
    fam_index = {}
    fam_keys = []
    top = complex.top_dim
    for k in range(top + 1):
        keys = []
        for d in range(k, top + 1):
            for gi in range(len(complex.families[d])):
                for chain in _chains_ending_full(d, k + 1):
                    keys.append((d, gi, chain))
        fam_keys.append(keys)
        fam_index.update({key: i for i, key in enumerate(keys)})

    def reindex(chain, subset):
        pos = {v: i for i, v in enumerate(sorted(subset))}
        return tuple(frozenset(pos[v] for v in a) for a in chain)

    fams = []
    for k in range(top + 1):
        row = []
        for d, gi, chain in fam_keys[k]:
            base_atoms = complex.families[d][gi].base
            base = [atom_of[(d, gi, t)] for t in base_atoms]
            faces = []
            if k > 0:
                for i in range(k):
                    tkey = (d, gi, chain[:i] + chain[i + 1:])
                    faces.append((fam_index[tkey],
                                  {atom_of[(d, gi, t)]: atom_of[(d, gi, t)]
                                   for t in base_atoms}))
                # dropping the top: land in the subdivision of the face
                # spanned by the second largest subset
                sub = chain[k - 1]
                nd, nfam, hol = _face_by_subset(complex, d, gi, sub)
                tkey = (nd, nfam, reindex(chain[:k], sub))
                faces.append((fam_index[tkey],
                              {atom_of[(d, gi, t)]: atom_of[(nd, nfam, hol[t])]
                               for t in base_atoms}))
            row.append(SimplexFamily(k, base, faces))
        fams.append(row)
    return FiberedComplex(transversal, fams), tuple(origin)


def barycentric_subdivide(complex):
    """Barycentric subdivision as a fibered complex.

    Each n-family is replaced by (n+1)! top families over the same atom
    set; leaf decomposition is preserved under the barycenter-atom
    identification, and cohomology dimensions are unchanged.
    """
    return barycentric_subdivide_with_atlas(complex)[0]


def leaf_blocks_match(complex, subdivided, origin):
    """Do leaf blocks correspond 1:1 under the barycenter identification?"""
    old = {min(b): i for i, b in enumerate(complex.leaf_decomposition())}
    old_block = {}
    for i, b in enumerate(complex.leaf_decomposition()):
        for a in b:
            old_block[a] = i
    pairs = set()
    for new_block in subdivided.leaf_decomposition():
        olds = {old_block[origin[a][2]] for a in new_block}
        if len(olds) != 1:
            return False
        pairs.add((min(new_block), olds.pop()))
    blocks_hit = {o for _, o in pairs}
    return (len(pairs) == len(subdivided.leaf_decomposition())
            and len(blocks_hit) == len(complex.leaf_decomposition())
            and len(pairs) == len(blocks_hit) == len(old))
