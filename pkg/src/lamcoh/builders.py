"""Builders for the standard worked examples: products, wedges, suspensions.

Suspension bases are restricted to wedges of circles and to the
square-with-diagonal torus; those cover the worked finite rotation models
at desk scale.
"""

from fractions import Fraction

from .complexes import FiberedComplex, SimplexFamily, Subcomplex, Transversal


class FiniteComplex:
    """A plain finite simplicial complex: sorted vertex tuples per dimension.

    Construction closes the given simplices under faces.  Used as the fiber
    of product complexes and as the classical-cohomology oracle.
    """

    def __init__(self, simplices):
        by_dim = {}
        stack = [tuple(sorted(set(s))) for s in simplices]
        seen = set()
        while stack:
            s = stack.pop()
            if not s or s in seen:
                continue
            seen.add(s)
            by_dim.setdefault(len(s) - 1, set()).add(s)
            if len(s) > 1:
                stack.extend(s[:i] + s[i + 1:] for i in range(len(s)))
        self.simplices = []
        for n in range(max(by_dim, default=-1) + 1):
            self.simplices.append(tuple(sorted(by_dim.get(n, ()))))
        self._index = [{s: i for i, s in enumerate(fl)} for fl in self.simplices]

    @property
    def top_dim(self):
        return len(self.simplices) - 1

    def count(self, n):
        if 0 <= n <= self.top_dim:
            return len(self.simplices[n])
        return 0

    def face(self, n, idx, i):
        """Index in dimension n-1 of the i-th face (drop vertex i)."""
        s = self.simplices[n][idx]
        return self._index[n - 1][s[:i] + s[i + 1:]]

    @classmethod
    def point(cls):
        return cls([(0,)])

    @classmethod
    def segment(cls):
        return cls([(0, 1)])

    @classmethod
    def circle(cls, k=3):
        if k < 3:
            raise ValueError("a simplicial circle needs at least 3 vertices")
        return cls([(i, (i + 1) % k) for i in range(k)])

    @classmethod
    def torus7(cls):
        """The minimal 7-vertex triangulated torus (Moebius torus)."""
        tris = [tuple(sorted(((i, (i + 1) % 7, (i + 3) % 7)))) for i in range(7)]
        tris += [tuple(sorted(((i, (i + 2) % 7, (i + 3) % 7)))) for i in range(7)]
        return cls(tris)


def product_complex(C, transversal):
    """Product of a finite complex with a measured transversal.

    One family per simplex of C, based on all atoms, with identity face
    maps; leaves are copies of C, one per atom.
    """
    ident = {t: t for t in transversal.atoms}
    fams = []
    for n in range(C.top_dim + 1):
        row = []
        for idx in range(C.count(n)):
            faces = []
            if n > 0:
                faces = [(C.face(n, idx, i), dict(ident)) for i in range(n + 1)]
            row.append(SimplexFamily(n, transversal.atoms, faces))
        fams.append(row)
    return FiberedComplex(transversal, fams)


# -- wedges ------------------------------------------------------------------

def _regroup_families(transversal, dim_count, instance_sets, face_of, regularity=None):
    """Rebuild a FiberedComplex from instance-level face data.

    instance_sets[n] lists iterables of instances (opaque hashables whose
    last component is the atom); face_of(n, inst, i) gives the
    (n-1)-instance under face i.  Groups are refined until every face
    index lands in a single group, which is what SimplexFamily needs.
    Returns (complex, locate) with locate[(n, inst)] = new family index.
    """
    group_of = {}
    groups = []
    for n in range(dim_count):
        row = []
        for insts in instance_sets[n]:
            insts = tuple(insts)
            if not insts:
                continue
            row.append(insts)
            for inst in insts:
                group_of[(n, inst)] = len(row) - 1
        groups.append(row)

    changed = True
    while changed:
        changed = False
        for n in range(1, dim_count):
            new_row = []
            for insts in groups[n]:
                buckets = {}
                for inst in insts:
                    sig = tuple(group_of[(n - 1, face_of(n, inst, i))]
                                for i in range(n + 1))
                    buckets.setdefault(sig, []).append(inst)
                for sig in sorted(buckets):
                    new_row.append(tuple(buckets[sig]))
                if len(buckets) > 1:
                    changed = True
            groups[n] = new_row
            for gi, insts in enumerate(new_row):
                for inst in insts:
                    group_of[(n, inst)] = gi

    fams = []
    for n in range(dim_count):
        row = []
        for insts in groups[n]:
            base = [inst[-1] for inst in insts]
            if len(set(base)) != len(base):
                raise ValueError("two instances of one group share an atom")
            faces = []
            if n > 0:
                for i in range(n + 1):
                    t_gi = group_of[(n - 1, face_of(n, insts[0], i))]
                    fmap = {}
                    for inst in insts:
                        fpair = face_of(n, inst, i)
                        if group_of[(n - 1, fpair)] != t_gi:
                            raise ValueError("face grouping failed to converge")
                        fmap[inst[-1]] = fpair[-1]
                    faces.append((t_gi, fmap))
            row.append(SimplexFamily(n, base, faces))
        fams.append(row)
    return FiberedComplex(transversal, fams, regularity), group_of


def wedge(F, G, glue_pairs):
    """Glue two complexes along pairs of 0-instances.

    glue_pairs is a list of ((vertex family of F, atom), (vertex family of
    G, atom)); both projections must be injective, targets must exist, and
    glued atoms must carry equal weights.  Returns (wedge complex, the
    image of the glued vertex set as a Subcomplex).
    """
    pairs = list(glue_pairs)
    fs = [p[0] for p in pairs]
    gs = [p[1] for p in pairs]
    if len(set(fs)) != len(fs) or len(set(gs)) != len(gs):
        raise ValueError("glue map must be injective on both sides")
    for (ff, ft), (gf, gt) in pairs:
        if not (0 <= ff < len(F.families[0])) or ft not in F.families[0][ff].base:
            raise ValueError("glue source (%d,%d) missing in left complex" % (ff, ft))
        if not (0 <= gf < len(G.families[0])) or gt not in G.families[0][gf].base:
            raise ValueError("glue target (%d,%d) missing in right complex" % (gf, gt))
        if F.transversal.weights[ft] != G.transversal.weights[gt]:
            raise ValueError("glued atoms must carry equal weights")

    off = len(F.transversal)
    transversal = Transversal(list(F.transversal.weights) + list(G.transversal.weights))
    removed = {("G", gf, gt + off) for _, (gf, gt) in pairs}
    redirect = {("G", gf, gt + off): ("F", ff, ft)
                for (ff, ft), (gf, gt) in pairs}

    dim_count = max(len(F.families), len(G.families))

    # instances are (side, original family, atom in the combined transversal)
    instance_sets = []
    for n in range(dim_count):
        row = []
        for side, X, shift in (("F", F, 0), ("G", G, off)):
            if n >= len(X.families):
                continue
            for fi, fam in enumerate(X.families[n]):
                insts = [(side, fi, t + shift) for t in fam.base
                         if n > 0 or (side, fi, t + shift) not in removed]
                row.append(insts)
        instance_sets.append(row)

    def face_of(n, inst, i):
        side, fi, atom = inst
        X, shift = (F, 0) if side == "F" else (G, off)
        target, s = X.face_instance(n, fi, atom - shift, i)
        key = (side, target, s + shift)
        if n == 1 and key in redirect:
            rf, rfam, rt = redirect[key]
            return (rf, rfam, rt)
        return (side, target, s + shift)

    W, locate = _regroup_families(transversal, dim_count, instance_sets, face_of)
    glued = [(0, locate[(0, ("F", ff, ft))], ft) for (ff, ft), _ in pairs]
    return W, Subcomplex.from_instances(W, glued)


# -- suspensions ---------------------------------------------------------------

class SuspensionData:
    """Recipe for a measurable suspension over a finite transversal.

    base_kind "bouquet": a wedge of k circles (one vertex, k loop edges),
    one permutation per loop.  base_kind "torus": the square-with-diagonal
    torus (one vertex, edges a, b, diagonal, two triangles); the two
    permutations must commute.
    """

    def __init__(self, base_kind, transversal, perms):
        if base_kind not in ("bouquet", "circle", "torus"):
            raise ValueError("unsupported suspension base %r" % (base_kind,))
        if base_kind == "circle":
            base_kind = "bouquet"
            if len(perms) != 1:
                raise ValueError("a circle base takes exactly one permutation")
        self.base_kind = base_kind
        self.transversal = transversal
        self.perms = [tuple(p) for p in perms]
        k = len(transversal)
        for p in self.perms:
            if sorted(p) != list(range(k)):
                raise ValueError("representation entries must be permutations of the atoms")
        if base_kind == "torus":
            if len(self.perms) != 2:
                raise ValueError("a torus base takes exactly two permutations")
            pa, pb = self.perms
            if any(pa[pb[t]] != pb[pa[t]] for t in range(k)):
                raise ValueError("torus base requires commuting permutations")


def suspension(data):
    """The fibered complex of a suspension recipe."""
    T = data.transversal
    ident = {t: t for t in T.atoms}
    if data.base_kind == "bouquet":
        v = SimplexFamily(0, T.atoms)
        edges = []
        for p in data.perms:
            pm = {t: p[t] for t in T.atoms}
            edges.append(SimplexFamily(1, T.atoms, [(0, pm), (0, dict(ident))]))
        return FiberedComplex(T, [[v], edges])

    pa = {t: data.perms[0][t] for t in T.atoms}
    pb = {t: data.perms[1][t] for t in T.atoms}
    pab = {t: pb[pa[t]] for t in T.atoms}
    v = SimplexFamily(0, T.atoms)
    e_a = SimplexFamily(1, T.atoms, [(0, dict(pa)), (0, dict(ident))])
    e_b = SimplexFamily(1, T.atoms, [(0, dict(pb)), (0, dict(ident))])
    e_c = SimplexFamily(1, T.atoms, [(0, dict(pab)), (0, dict(ident))])
    # upper triangle (v0,v1,v2) = (corner, corner+a, corner+a+b)
    f_u = SimplexFamily(2, T.atoms, [(1, dict(pa)), (2, dict(ident)), (0, dict(ident))])
    # lower triangle (v0,v1,v2) = (corner, corner+b, corner+a+b)
    f_l = SimplexFamily(2, T.atoms, [(0, dict(pb)), (2, dict(ident)), (1, dict(ident))])
    return FiberedComplex(T, [[v], [e_a, e_b, e_c], [f_u, f_l]])


def kronecker_model(q, p=1, weights=None):
    """Finite cyclic model of the Kronecker flow: suspension of t -> t+p."""
    if q < 1:
        raise ValueError("the cyclic model needs q >= 1")
    if weights is None:
        weights = [Fraction(1, q)] * q
    T = Transversal(weights)
    perm = [(t + p) % q for t in range(q)]
    return suspension(SuspensionData("circle", T, [perm]))
