"""Fibered simplicial complexes over measured transversals.

A FiberedComplex is the desk-scale model of a leafwise triangulation: the
n-simplices come in families parametrized by atoms of a finite measured
transversal, and each face of a family is another family together with a
holonomy map on atoms.  Face index i omits vertex i of the ordered simplex
and carries sign (-1)^i in the coboundary.

All structures are immutable after construction and safe to share between
threads; every operation below is a pure function of its inputs.
"""

import json
from fractions import Fraction

from .exactla import SignedIntMatrix

Z2 = "z2"
Q = "q"
R = "r"
EXACT_KINDS = (Z2, Q)
KINDS = (Z2, Q, R)


def coeff_zero(kind):
    if kind == Z2:
        return 0
    if kind == Q:
        return Fraction(0)
    return 0.0


def coeff_one(kind):
    if kind == Z2:
        return 1
    if kind == Q:
        return Fraction(1)
    return 1.0


def coeff_normalize(kind, value):
    """Coerce a raw number into the field, rejecting junk."""
    if kind == Z2:
        return int(value) % 2
    if kind == Q:
        return Fraction(value)
    return float(value)


def coeff_add(kind, a, b):
    return (a + b) % 2 if kind == Z2 else a + b


def coeff_mul(kind, a, b):
    return (a * b) % 2 if kind == Z2 else a * b


def coeff_scale_sign(kind, sign, a):
    if kind == Z2:
        return a % 2
    return a if sign > 0 else -a


def parse_fraction(text):
    """Exact rational from a "p/q" (or integer) string."""
    if isinstance(text, str):
        return Fraction(text)
    if isinstance(text, int):
        return Fraction(text)
    raise ValueError("rationals must be given exactly as strings, got %r" % (text,))


def format_fraction(x):
    x = Fraction(x)
    return "%d/%d" % (x.numerator, x.denominator) if x.denominator != 1 else "%d" % x.numerator


class Transversal:
    """Finite set of measured atoms; ids are dense 0..k-1."""

    def __init__(self, weights):
        self.weights = tuple(Fraction(w) for w in weights)
        if any(w < 0 for w in self.weights):
            raise ValueError("transversal weights must be nonnegative")

    @property
    def atoms(self):
        return range(len(self.weights))

    def __len__(self):
        return len(self.weights)

    def __eq__(self, other):
        return isinstance(other, Transversal) and self.weights == other.weights

    def __repr__(self):
        return "Transversal(%s)" % (list(map(str, self.weights)),)

    def total(self):
        return sum(self.weights, Fraction(0))


class SimplexFamily:
    """A family of n-simplices over a base of atoms.

    faces[i] = (target family index in dimension n-1, atom map dict),
    total on the base.  Vertex slots are positional: slot i of the ordered
    simplex is the one omitted by faces[i].
    """

    def __init__(self, dim, base, faces=()):
        self.dim = int(dim)
        self.base = tuple(sorted(set(base)))
        self.faces = tuple((int(t), dict(m)) for t, m in faces)
        if self.dim < 0:
            raise ValueError("dimension must be >= 0")
        if self.dim > 0 and len(self.faces) != self.dim + 1:
            raise ValueError("a %d-family needs %d faces, got %d"
                             % (self.dim, self.dim + 1, len(self.faces)))

    @property
    def vertex_order(self):
        return tuple(range(self.dim + 1))

    def __repr__(self):
        return "SimplexFamily(dim=%d, base=%s)" % (self.dim, list(self.base))


class ValidationReport:
    """Diagnostics from validate(): a list of violations, empty if valid."""

    def __init__(self, violations):
        self.violations = list(violations)

    @property
    def ok(self):
        return not self.violations

    def __repr__(self):
        if self.ok:
            return "ValidationReport(valid)"
        return "ValidationReport(%d violations)" % len(self.violations)

    def summary(self):
        if self.ok:
            return "valid"
        return "; ".join("%s: %s" % v for v in self.violations)


class FiberedComplex:
    """Leafwise simplicial complex over a measured transversal.

    families[n] lists the n-dimensional SimplexFamily objects.  Instances
    in degree n are (family index, atom) pairs enumerated family-major:
    family order first, then atom order.  The object is immutable after
    construction; derived data (instance tables, leaf blocks) is cached.
    """

    def __init__(self, transversal, families, regularity_bound=None):
        self.transversal = transversal
        fams = []
        for dim, fl in enumerate(families):
            fams.append(tuple(fl))
            for f in fl:
                if f.dim != dim:
                    raise ValueError("family of dim %d listed under dim %d" % (f.dim, dim))
        while fams and not fams[-1]:
            fams.pop()
        self.families = tuple(fams)
        if regularity_bound is None:
            regularity_bound = max(1, self._max_coface_count())
        self.regularity_bound = int(regularity_bound)
        self._instances = {}
        self._index = {}
        self._leaves = None

    # -- basic structure ---------------------------------------------------

    @property
    def top_dim(self):
        return len(self.families) - 1

    def family(self, n, idx):
        return self.families[n][idx]

    def instances(self, n):
        """Canonical instance enumeration for degree n."""
        if n not in self._instances:
            if 0 <= n <= self.top_dim:
                out = [(fi, t) for fi, f in enumerate(self.families[n]) for t in f.base]
            else:
                out = []
            self._instances[n] = tuple(out)
            self._index[n] = {inst: i for i, inst in enumerate(out)}
        return self._instances[n]

    def instance_index(self, n):
        self.instances(n)
        return self._index[n]

    def instance_count(self, n):
        return len(self.instances(n))

    def face_instance(self, n, fam_idx, atom, i):
        """The i-th face of instance (fam_idx, atom) in degree n."""
        target, fmap = self.families[n][fam_idx].faces[i]
        return target, fmap[atom]

    def instance_weight(self, inst):
        return self.transversal.weights[inst[1]]

    def euler_characteristic(self):
        return sum((-1) ** n * self.instance_count(n)
                   for n in range(self.top_dim + 1))

    def _max_coface_count(self):
        counts = {}
        for n in range(1, len(self.families)):
            for fi, f in enumerate(self.families[n]):
                for t in f.base:
                    for i in range(n + 1):
                        target, fmap = f.faces[i]
                        key = (n - 1, target, fmap.get(t))
                        counts[key] = counts.get(key, 0) + 1
        return max(counts.values(), default=0)

    # -- leaves ------------------------------------------------------------

    def leaf_decomposition(self):
        """Partition of atoms into leaf-orbits, blocks sorted by least atom.

        Two atoms share a block iff they are linked by a chain of face-map
        images through simplex instances.
        """
        if self._leaves is not None:
            return self._leaves
        parent = list(range(len(self.transversal)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                if rb < ra:
                    ra, rb = rb, ra
                parent[rb] = ra

        for fl in self.families:
            for f in fl:
                for _, fmap in f.faces:
                    for t in f.base:
                        union(t, fmap[t])
        blocks = {}
        for a in self.transversal.atoms:
            blocks.setdefault(find(a), []).append(a)
        self._leaves = tuple(tuple(sorted(b)) for _, b in sorted(blocks.items()))
        return self._leaves

    # -- validation ----------------------------------------------------------

    def validate(self):
        """Diagnostics report; never raises.

        Checks face totality and targets, simplicial identities, the
        regularity bound, and leaf-constancy of the transverse measure.
        """
        bad = []
        for n, fl in enumerate(self.families):
            for fi, f in enumerate(fl):
                for i, (target, fmap) in enumerate(f.faces):
                    if n == 0:
                        bad.append(("structure", "0-family %d has faces" % fi))
                        continue
                    if not (0 <= target < len(self.families[n - 1])):
                        bad.append(("face-target",
                                    "family (%d,%d) face %d targets missing family %d"
                                    % (n, fi, i, target)))
                        continue
                    tf = self.families[n - 1][target]
                    for t in f.base:
                        if t not in fmap:
                            bad.append(("face-map",
                                        "family (%d,%d) face %d undefined at atom %d"
                                        % (n, fi, i, t)))
                        elif fmap[t] not in tf.base:
                            bad.append(("face-map",
                                        "family (%d,%d) face %d sends atom %d to %d "
                                        "outside the target base"
                                        % (n, fi, i, t, fmap[t])))
        if bad:
            return ValidationReport(bad)

        # simplicial identity: face_i(face_j) = face_{j-1}(face_i) for i<j
        for n in range(2, len(self.families)):
            for fi, f in enumerate(self.families[n]):
                for j in range(1, n + 1):
                    for i in range(j):
                        tj, mj = f.faces[j]
                        ti_of_tj, mi2 = self.families[n - 1][tj].faces[i]
                        ti, mi = f.faces[i]
                        tj1_of_ti, mj2 = self.families[n - 1][ti].faces[j - 1]
                        if ti_of_tj != tj1_of_ti:
                            bad.append(("simplicial-identity",
                                        "family (%d,%d): faces %d,%d land in "
                                        "different families" % (n, fi, i, j)))
                            continue
                        for t in f.base:
                            if mi2[mj[t]] != mj2[mi[t]]:
                                bad.append(("simplicial-identity",
                                            "family (%d,%d): face_%d.face_%d != "
                                            "face_%d.face_%d at atom %d"
                                            % (n, fi, i, j, j - 1, i, t)))
                                break

        counts = {}
        for n in range(1, len(self.families)):
            for fi, f in enumerate(self.families[n]):
                for t in f.base:
                    for i in range(n + 1):
                        target, fmap = f.faces[i]
                        key = (n - 1, target, fmap[t])
                        counts[key] = counts.get(key, 0) + 1
        for key, c in sorted(counts.items()):
            if c > self.regularity_bound:
                bad.append(("regularity",
                            "instance %s is a face of %d > %d cofaces"
                            % (key, c, self.regularity_bound)))

        for block in self.leaf_decomposition():
            w = {self.transversal.weights[a] for a in block}
            if len(w) > 1:
                bad.append(("leaf-weight",
                            "leaf block %s carries unequal weights %s"
                            % (list(block), sorted(map(str, w)))))
        return ValidationReport(bad)

    # -- coboundary ----------------------------------------------------------

    def coboundary_matrix(self, n):
        """Sparse signed matrix from degree-n instances to degree-(n+1).

        Entry for ((g,s) row index taken in degree n+1 ... ) follows the
        (-1)^i convention; a degree past the top dimension yields a
        zero-row matrix.
        """
        cols = self.instance_index(n)
        rows = self.instance_index(n + 1)
        entries = {}
        if n + 1 <= self.top_dim:
            for fi, f in enumerate(self.families[n + 1]):
                for t in f.base:
                    r = rows[(fi, t)]
                    for i in range(n + 2):
                        target, fmap = f.faces[i]
                        c = cols[(target, fmap[t])]
                        entries[(r, c)] = entries.get((r, c), 0) + (-1) ** i
        return SignedIntMatrix(len(rows), len(cols), entries)


class Cochain:
    """Degree-n assignment of coefficients to simplex instances.

    values[family index] is a sparse dict atom -> coefficient; support must
    stay inside each family's base.
    """

    def __init__(self, complex, degree, kind, values=None):
        if kind not in KINDS:
            raise ValueError("unknown coefficient kind %r" % (kind,))
        self.complex = complex
        self.degree = int(degree)
        self.kind = kind
        nfam = len(complex.families[degree]) if 0 <= degree <= complex.top_dim else 0
        self.values = [dict() for _ in range(nfam)]
        if values:
            for fi, d in enumerate(values):
                fam = complex.families[degree][fi]
                for t, v in d.items():
                    if t not in fam.base:
                        raise ValueError("cochain supported outside family base "
                                         "(family %d, atom %d)" % (fi, t))
                    v = coeff_normalize(kind, v)
                    if v:
                        self.values[fi][t] = v

    @classmethod
    def zero(cls, complex, degree, kind):
        return cls(complex, degree, kind)

    @classmethod
    def constant(cls, complex, degree, kind, value=1):
        vals = []
        for f in (complex.families[degree] if 0 <= degree <= complex.top_dim else ()):
            vals.append({t: value for t in f.base})
        return cls(complex, degree, kind, vals)

    @classmethod
    def from_vector(cls, complex, degree, kind, vec):
        insts = complex.instances(degree)
        if len(vec) != len(insts):
            raise ValueError("vector length mismatch")
        vals = [dict() for _ in complex.families[degree]] if insts else []
        for (fi, t), v in zip(insts, vec):
            if v:
                vals[fi][t] = v
        return cls(complex, degree, kind, vals)

    def get(self, fam_idx, atom):
        return self.values[fam_idx].get(atom, coeff_zero(self.kind))

    def as_vector(self):
        z = coeff_zero(self.kind)
        return [self.values[fi].get(t, z) for fi, t in self.complex.instances(self.degree)]

    def is_zero(self):
        return all(not d for d in self.values)

    def restrict(self, atom_subsets):
        """Multiply by the indicator of per-family atom subsets."""
        vals = []
        for fi, d in enumerate(self.values):
            keep = atom_subsets[fi] if fi < len(atom_subsets) else ()
            vals.append({t: v for t, v in d.items() if t in keep})
        return Cochain(self.complex, self.degree, self.kind, vals)

    def __add__(self, other):
        if (other.complex is not self.complex or other.degree != self.degree
                or other.kind != self.kind):
            raise ValueError("cochain mismatch")
        vals = []
        for a, b in zip(self.values, other.values):
            d = dict(a)
            for t, v in b.items():
                nv = coeff_add(self.kind, d.get(t, coeff_zero(self.kind)), v)
                if nv:
                    d[t] = nv
                else:
                    d.pop(t, None)
            vals.append(d)
        return Cochain(self.complex, self.degree, self.kind, vals)

    def scale(self, c):
        vals = [{t: coeff_mul(self.kind, v, c) for t, v in d.items()} for d in self.values]
        return Cochain(self.complex, self.degree, self.kind, vals)

    def __eq__(self, other):
        return (isinstance(other, Cochain) and other.complex is self.complex
                and other.degree == self.degree and other.kind == self.kind
                and all(a == b for a, b in zip_pad(self.values, other.values)))

    def __repr__(self):
        nnz = sum(len(d) for d in self.values)
        return "Cochain(degree=%d, kind=%s, %d nonzeros)" % (self.degree, self.kind, nnz)


def zip_pad(a, b):
    n = max(len(a), len(b))
    for i in range(n):
        yield (a[i] if i < len(a) else {}), (b[i] if i < len(b) else {})


def apply_coboundary(complex, cochain):
    """The coboundary of a cochain: degree goes up by one.

    Commutes with restriction to atom subsets (elementary-cochain axiom).
    """
    if cochain.complex is not complex:
        raise ValueError("cochain belongs to a different complex")
    n = cochain.degree
    if n >= complex.top_dim:
        return Cochain.zero(complex, n + 1, cochain.kind)
    vec = cochain.as_vector()
    out = complex.coboundary_matrix(n).apply(vec, cochain.kind)
    return Cochain.from_vector(complex, n + 1, cochain.kind, out)


class Subcomplex:
    """Face-closed selection of instances, stored per (dim, family)."""

    def __init__(self, complex, selection=None):
        self.complex = complex
        self.selection = []
        for n in range(complex.top_dim + 1):
            row = []
            for fi, f in enumerate(complex.families[n]):
                chosen = ()
                if selection is not None and n < len(selection) and fi < len(selection[n]):
                    chosen = selection[n][fi]
                row.append(frozenset(chosen) & set(f.base))
            self.selection.append(row)

    @classmethod
    def empty(cls, complex):
        return cls(complex)

    @classmethod
    def full(cls, complex):
        sel = [[set(f.base) for f in fl] for fl in complex.families]
        return cls(complex, sel)

    @classmethod
    def from_instances(cls, complex, instances):
        """Face closure of a set of (dim, family, atom) triples."""
        sel = [[set() for _ in fl] for fl in complex.families]
        stack = list(instances)
        seen = set()
        while stack:
            n, fi, t = stack.pop()
            if (n, fi, t) in seen:
                continue
            seen.add((n, fi, t))
            sel[n][fi].add(t)
            if n > 0:
                for i in range(n + 1):
                    target, fmap = complex.families[n][fi].faces[i]
                    stack.append((n - 1, target, fmap[t]))
        return cls(complex, sel)

    def contains(self, n, fam_idx, atom):
        if not (0 <= n <= self.complex.top_dim):
            return False
        return atom in self.selection[n][fam_idx]

    def instances(self, n):
        return [inst for inst in self.complex.instances(n)
                if inst[1] in self.selection[n][inst[0]]]

    def instance_count(self, n):
        if not (0 <= n <= self.complex.top_dim):
            return 0
        return sum(len(s) for s in self.selection[n])

    def triples(self):
        out = []
        for n, row in enumerate(self.selection):
            for fi, atoms in enumerate(row):
                out.extend((n, fi, t) for t in sorted(atoms))
        return out

    def is_face_closed(self):
        for n in range(1, self.complex.top_dim + 1):
            for fi, atoms in enumerate(self.selection[n]):
                f = self.complex.families[n][fi]
                for t in atoms:
                    for i in range(n + 1):
                        target, fmap = f.faces[i]
                        if fmap[t] not in self.selection[n - 1][target]:
                            return False
        return True

    def union(self, other):
        sel = [[a | b for a, b in zip(ra, rb)]
               for ra, rb in zip(self.selection, other.selection)]
        return Subcomplex(self.complex, sel)

    def intersection(self, other):
        sel = [[a & b for a, b in zip(ra, rb)]
               for ra, rb in zip(self.selection, other.selection)]
        return Subcomplex(self.complex, sel)

    def difference(self, other):
        sel = [[a - b for a, b in zip(ra, rb)]
               for ra, rb in zip(self.selection, other.selection)]
        return Subcomplex(self.complex, sel)

    def covers(self, other=None):
        """Does this selection contain every instance (or the other's)?"""
        if other is None:
            return all(len(s) == len(f.base)
                       for fl, row in zip(self.complex.families, self.selection)
                       for f, s in zip(fl, row))
        return all(b <= a for ra, rb in zip(self.selection, other.selection)
                   for a, b in zip(ra, rb))

    def __eq__(self, other):
        return (isinstance(other, Subcomplex) and other.complex is self.complex
                and other.selection == self.selection)


def subcomplex_as_complex(sub):
    """A face-closed selection rebuilt as a FiberedComplex of its own.

    Family indices are preserved (families may have smaller or empty
    bases), so Subcomplex coordinates remain meaningful.
    """
    X = sub.complex
    fams = []
    for n, fl in enumerate(X.families):
        row = []
        for fi, f in enumerate(fl):
            base = sorted(sub.selection[n][fi])
            faces = []
            if n > 0:
                for target, fmap in f.faces:
                    faces.append((target, {t: fmap[t] for t in base}))
            row.append(SimplexFamily(n, base, faces))
        fams.append(row)
    return FiberedComplex(X.transversal, fams, X.regularity_bound)


# -- serialization -----------------------------------------------------------

def complex_to_dict(complex):
    return {
        "transversal": {
            "atoms": len(complex.transversal),
            "weights": [format_fraction(w) for w in complex.transversal.weights],
        },
        "families": [
            [
                {
                    "base": list(f.base),
                    "faces": [
                        {"target": t, "map": {str(a): b for a, b in sorted(m.items())}}
                        for t, m in f.faces
                    ],
                }
                for f in fl
            ]
            for fl in complex.families
        ],
        "regularity_bound": complex.regularity_bound,
    }


def complex_from_dict(data):
    extra = set(data) - {"transversal", "families", "regularity_bound"}
    if extra:
        raise ValueError("unknown keys in complex: %s" % sorted(extra))
    tr = data["transversal"]
    weights = [parse_fraction(w) for w in tr["weights"]]
    if tr.get("atoms", len(weights)) != len(weights):
        raise ValueError("atom count does not match weights")
    fams = []
    for n, fl in enumerate(data["families"]):
        row = []
        for f in fl:
            faces = [(face["target"], {int(a): int(b) for a, b in face["map"].items()})
                     for face in f.get("faces", [])]
            row.append(SimplexFamily(n, [int(a) for a in f["base"]], faces))
        fams.append(row)
    return FiberedComplex(Transversal(weights), fams, data.get("regularity_bound"))


def complex_to_json(complex):
    return json.dumps(complex_to_dict(complex), indent=2, sort_keys=True)


def complex_from_json(text):
    return complex_from_dict(json.loads(text))
