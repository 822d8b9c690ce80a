"""Seeded random corpora for the property suites.

All generators take a random.Random so that a single seed reproduces the
whole corpus; the CLI exposes the same complexes through the
random-complex recipe kind.
"""

import random
from fractions import Fraction

from .arcs import ArcSet
from .builders import (FiniteComplex, SuspensionData, kronecker_model,
                       product_complex, suspension, wedge)
from .complexes import FiberedComplex, Subcomplex, Transversal
from .geometry import LinearRegion
from .quadfield import QuadReal
from .subdivision import barycentric_subdivide


def _orbits(perms, k):
    parent = list(range(k))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in perms:
        for t in range(k):
            ra, rb = find(t), find(p[t])
            if ra != rb:
                parent[rb] = ra
    blocks = {}
    for t in range(k):
        blocks.setdefault(find(t), []).append(t)
    return list(blocks.values())


def _orbit_weights(rng, perms, k):
    weights = [None] * k
    for block in _orbits(perms, k):
        w = Fraction(rng.randint(1, 6), rng.randint(1, 6))
        for t in block:
            weights[t] = w
    return weights


def random_finite_complex(rng, max_vertices=5, max_dim=2, max_top=4):
    nv = rng.randint(1, max_vertices)
    simplices = [(v,) for v in range(nv)]
    for _ in range(rng.randint(0, max_top)):
        size = rng.randint(2, min(max_dim + 1, nv)) if nv >= 2 else 1
        simplices.append(tuple(rng.sample(range(nv), size)))
    return FiniteComplex(simplices)


def random_product(rng, max_atoms=4, max_vertices=5, max_dim=2):
    C = random_finite_complex(rng, max_vertices, max_dim)
    k = rng.randint(1, max_atoms)
    weights = [Fraction(rng.randint(1, 6), rng.randint(1, 6)) for _ in range(k)]
    return product_complex(C, Transversal(weights))


def random_suspension(rng, max_atoms=6):
    k = rng.randint(1, max_atoms)
    kind = rng.choice(["bouquet", "bouquet", "torus"])
    if kind == "bouquet":
        nloops = rng.randint(1, 2)
        perms = [list(rng.sample(range(k), k)) for _ in range(nloops)]
    else:
        a, b = rng.randrange(k), rng.randrange(k)
        perms = [[(t + a) % k for t in range(k)],
                 [(t + b) % k for t in range(k)]]
    weights = _orbit_weights(rng, perms, k)
    return suspension(SuspensionData(kind, Transversal(weights), perms))


def random_complex(rng, allow_subdivision=True):
    """A valid fibered complex within the desk-scale corpus bounds."""
    choice = rng.randrange(6)
    if choice <= 1:
        return random_product(rng)
    if choice <= 3:
        return random_suspension(rng)
    if choice == 4 and allow_subdivision:
        small = random_product(rng, max_atoms=2, max_vertices=4, max_dim=1)
        return barycentric_subdivide(small)
    W, _ = random_wedge_pair(rng)
    return W


def random_wedge_pair(rng):
    """(wedge complex, (F, G, glue pairs, glued subcomplex))."""
    while True:
        F = rng.choice([random_product, random_suspension])(rng)
        G = rng.choice([random_product, random_suspension])(rng)
        if F.families[0] and G.families[0]:
            break
    nglue = rng.randint(1, 2)
    f_insts = [(fi, t) for fi, fam in enumerate(F.families[0]) for t in fam.base]
    g_insts = [(gi, t) for gi, fam in enumerate(G.families[0]) for t in fam.base]
    nglue = min(nglue, len(f_insts), len(g_insts))
    fs = rng.sample(f_insts, nglue)
    gs = rng.sample(g_insts, nglue)
    # gluing merges leaves across the two sides, so every merged class of
    # orbits must carry a single weight; chase the merges with union-find
    fb = F.leaf_decomposition()
    gb = G.leaf_decomposition()
    ids = [("F", i) for i in range(len(fb))] + [("G", i) for i in range(len(gb))]
    parent = {x: x for x in ids}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def block_id(side, blocks, atom):
        for i, b in enumerate(blocks):
            if atom in b:
                return (side, i)
        raise AssertionError

    for (ff, ft), (gf, gt) in zip(fs, gs):
        ra, rb = find(block_id("F", fb, ft)), find(block_id("G", gb, gt))
        if ra != rb:
            parent[rb] = ra
    class_weight = {}
    for side, blocks, X in (("F", fb, F), ("G", gb, G)):
        for i, b in enumerate(blocks):
            root = find((side, i))
            class_weight.setdefault(root, X.transversal.weights[b[0]])
    fw = list(F.transversal.weights)
    gw = list(G.transversal.weights)
    for i, b in enumerate(fb):
        for a in b:
            fw[a] = class_weight[find(("F", i))]
    for i, b in enumerate(gb):
        for a in b:
            gw[a] = class_weight[find(("G", i))]
    F = FiberedComplex(Transversal(fw), F.families, F.regularity_bound)
    G = FiberedComplex(Transversal(gw), G.families, G.regularity_bound)
    pairs = list(zip(fs, gs))
    W, pts = wedge(F, G, pairs)
    return W, (F, G, pairs, pts)


def random_subcomplex(rng, X, density=0.4):
    triples = [(n, fi, t)
               for n in range(X.top_dim + 1)
               for fi, fam in enumerate(X.families[n])
               for t in fam.base]
    chosen = [tr for tr in triples if rng.random() < density]
    return Subcomplex.from_instances(X, chosen)


def random_cover(rng, X):
    """(U, V) face-closed with U union V = X."""
    U = random_subcomplex(rng, X, density=rng.uniform(0.3, 0.8))
    rest = Subcomplex.full(X).difference(U)
    V = Subcomplex.from_instances(X, rest.triples())
    return U, V


def _coface_closure(X, seed_triples):
    cofaces = {}
    for n in range(1, X.top_dim + 1):
        for fi, fam in enumerate(X.families[n]):
            for t in fam.base:
                for i in range(n + 1):
                    tgt, s = X.face_instance(n, fi, t, i)
                    cofaces.setdefault((n - 1, tgt, s), set()).add((n, fi, t))
    out = set()
    stack = list(seed_triples)
    while stack:
        tr = stack.pop()
        if tr in out:
            continue
        out.add(tr)
        stack.extend(cofaces.get(tr, ()))
    return out


def random_excision_data(rng, X):
    """(U, Z) with Z open inside U and X - Z face-closed; Z may be empty."""
    U = random_subcomplex(rng, X, density=rng.uniform(0.4, 0.9))
    candidates = U.triples()
    rng.shuffle(candidates)
    z_triples = set()
    for tr in candidates[:max(1, len(candidates) // 3)]:
        closure = _coface_closure(X, [tr])
        if all(U.contains(n, fi, t) for n, fi, t in closure):
            z_triples |= closure
    sel = [[set() for _ in fl] for fl in X.families]
    for n, fi, t in z_triples:
        sel[n][fi].add(t)
    Z = Subcomplex(X, sel)
    return U, Z


# -- geometry corpora -------------------------------------------------------------

def random_box(rng, dim, span=4):
    bounds = []
    for _ in range(dim):
        a = Fraction(rng.randint(0, 2 * span - 2), 2)
        ln = Fraction(rng.randint(1, 2 * span), 2)
        bounds.append((a, a + ln))
    return LinearRegion.box(bounds)


def random_box_union(rng, dim=None, max_boxes=4):
    if dim is None:
        dim = rng.randint(1, 3)
    return [random_box(rng, dim) for _ in range(rng.randint(1, max_boxes))], dim


# -- arc corpora --------------------------------------------------------------------

def random_quadreal(rng, d=5, small=False):
    den = 8 if small else 12
    a = Fraction(rng.randint(0, den), den)
    b = Fraction(rng.randint(-2, 2), den * 2)
    return QuadReal(a, b, d)


def random_arcset(rng, d=5, max_arcs=3, nonempty_proper=True):
    while True:
        pairs = []
        for _ in range(rng.randint(1, max_arcs)):
            lo = random_quadreal(rng, d)
            ln = QuadReal(Fraction(rng.randint(1, 5), 16),
                          Fraction(rng.randint(0, 1), 32), d)
            pairs.append((lo, lo + ln))
        A = ArcSet.from_unreduced(pairs, d)
        if not nonempty_proper:
            return A
        if not A.is_empty() and not A.complement().is_empty():
            return A


def random_irrational_angle(rng, d=5):
    while True:
        b = Fraction(rng.randint(-3, 3), rng.randint(1, 5))
        if b:
            a = Fraction(rng.randint(-2, 2), rng.randint(1, 4))
            return QuadReal(a, b, d)


def corpus_complexes(seed, count):
    rng = random.Random(seed)
    return [random_complex(rng) for _ in range(count)]
