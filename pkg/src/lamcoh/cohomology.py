"""Measurable simplicial cohomology: dimensions, bases, cup products,
and the long exact sequence of a pair.

Ranks over Q and Z2 are computed by exact elimination; real coefficients
are rejected here (the L2 backend owns the float path).
"""

from .complexes import Cochain, EXACT_KINDS, coeff_mul, coeff_zero
from .exactla import SignedIntMatrix, kernel, span_completion


class CohomologyGroup:
    """Hn of a complex (relative to an optional subcomplex) over Z2 or Q.

    Holds the restricted instance coordinates, a deterministic basis of
    representative cocycle vectors, and the coboundary image needed to
    compute coordinates of arbitrary cocycles in the quotient.
    """

    def __init__(self, complex, degree, kind, rel=None):
        if kind not in EXACT_KINDS:
            raise ValueError(
                "cohomology over %r needs the L2 backend; exact ranks take 'z2' or 'q'"
                % (kind,))
        if rel is not None and not rel.is_face_closed():
            raise ValueError("relative subcomplex must be face-closed")
        self.complex = complex
        self.degree = degree
        self.kind = kind
        self.rel = rel
        self.cols = self._restricted(degree)
        self.col_index = {inst: i for i, inst in enumerate(self.cols)}
        mat_up = self._restricted_matrix(degree)
        mat_down = self._restricted_matrix(degree - 1)
        kernel_vecs = kernel(mat_up, kind)
        self.image_cols = self._columns(mat_down)
        chosen = span_completion(self.image_cols, kernel_vecs, len(self.cols), kind)
        self.basis = [kernel_vecs[i] for i in chosen]
        self.dim = len(self.basis)

    def _restricted(self, n):
        if not (0 <= n <= self.complex.top_dim):
            return []
        insts = self.complex.instances(n)
        if self.rel is None:
            return list(insts)
        return [inst for inst in insts if not self.rel.contains(n, *inst)]

    def _restricted_matrix(self, n):
        """Coboundary from degree n to n+1 on the non-relative instances."""
        full = self.complex.coboundary_matrix(n) if n >= 0 else None
        cols = self._restricted(n) if n >= 0 else []
        rows = self._restricted(n + 1)
        if full is None or self.rel is None:
            if full is None:
                return SignedIntMatrix(len(rows), 0)
            return full
        col_keep = {self.complex.instance_index(n)[inst]: i
                    for i, inst in enumerate(cols)}
        row_keep = {self.complex.instance_index(n + 1)[inst]: i
                    for i, inst in enumerate(rows)}
        entries = {}
        for (r, c), v in full.entries.items():
            if r in row_keep and c in col_keep:
                entries[(row_keep[r], col_keep[c])] = v
        return SignedIntMatrix(len(rows), len(cols), entries)

    def _columns(self, mat):
        zero = coeff_zero(self.kind)
        cols = [[zero] * mat.nrows for _ in range(mat.ncols)]
        for (r, c), v in mat.entries.items():
            cols[c][r] = v % 2 if self.kind == "z2" else v
        return [c for c in cols if any(c)]

    # -- vectors and cochains -------------------------------------------------

    def cochain_from_vector(self, vec):
        full = [coeff_zero(self.kind)] * self.complex.instance_count(self.degree)
        idx = self.complex.instance_index(self.degree)
        for inst, v in zip(self.cols, vec):
            full[idx[inst]] = v
        return Cochain.from_vector(self.complex, self.degree, self.kind, full)

    def vector_from_cochain(self, cochain):
        return [cochain.get(*inst) for inst in self.cols]

    def basis_cochains(self):
        return [self.cochain_from_vector(v) for v in self.basis]

    def coords(self, vec):
        """Coordinates of a cocycle vector in the quotient basis."""
        ncols = self.dim + len(self.image_cols)
        rows = []
        for r in range(len(self.cols)):
            row = {}
            for j, b in enumerate(self.basis):
                if b[r]:
                    row[j] = b[r]
            for j, c in enumerate(self.image_cols):
                if c[r]:
                    row[self.dim + j] = c[r]
            rows.append(row)
        if self.kind == "q":
            sol = _solve_rows_q(rows, ncols, vec)
        else:
            sol = _solve_rows_gf2(rows, ncols, vec)
        if sol is None:
            raise RuntimeError("vector is not a cocycle modulo coboundaries")
        return sol[:self.dim]

    def is_trivial_class(self, vec):
        return all(not v for v in self.coords(vec))


def _solve_rows_q(rows, ncols, rhs):
    from fractions import Fraction
    from .exactla import solve_q
    frows = [{c: Fraction(v) for c, v in row.items()} for row in rows]
    return solve_q(frows, ncols, [Fraction(x) for x in rhs])


def _solve_rows_gf2(rows, ncols, rhs):
    from .exactla import solve_gf2
    masks = []
    for row in rows:
        m = 0
        for c, v in row.items():
            if v % 2:
                m |= 1 << c
        masks.append(m)
    return solve_gf2(masks, ncols, [x % 2 for x in rhs])


def cohomology_dim(complex, n, kind, rel=None):
    """(dimension, basis cocycle representatives) of Hn over Z2 or Q."""
    group = CohomologyGroup(complex, n, kind, rel)
    return group.dim, group.basis_cochains()


def betti_numbers(complex, kind="q", rel=None):
    return [cohomology_dim(complex, n, kind, rel)[0]
            for n in range(complex.top_dim + 1)]


# -- cup product ----------------------------------------------------------------

def _front_face(complex, dim, fam, atom, n):
    """Iterated last-vertex faces down to the front n-face."""
    for d in range(dim, n, -1):
        fam, atom = complex.face_instance(d, fam, atom, d)
    return fam, atom


def _back_face(complex, dim, fam, atom, m):
    """Iterated first-vertex faces down to the back m-face."""
    for d in range(dim, m, -1):
        fam, atom = complex.face_instance(d, fam, atom, 0)
    return fam, atom


def cup_product(complex, omega, theta):
    """Front-face/back-face cup product of cochains of degrees n and m.

    Satisfies the Leibniz rule exactly over Z2 and Q; degrees past the top
    dimension give the zero cochain on an empty instance set.
    """
    if omega.kind != theta.kind:
        raise ValueError("cup product needs matching coefficient kinds")
    n, m = omega.degree, theta.degree
    N = n + m
    if N > complex.top_dim:
        return Cochain.zero(complex, N, omega.kind)
    vals = [dict() for _ in complex.families[N]]
    for fi, f in enumerate(complex.families[N]):
        for t in f.base:
            ff, ft = _front_face(complex, N, fi, t, n)
            bf, bt = _back_face(complex, N, fi, t, m)
            v = coeff_mul(omega.kind, omega.get(ff, ft), theta.get(bf, bt))
            if v:
                vals[fi][t] = v
    return Cochain(complex, N, omega.kind, vals)


# -- long exact sequence of a pair ------------------------------------------------

class SequenceNode:
    def __init__(self, degree, node, ok, detail=""):
        self.degree = degree
        self.node = node
        self.ok = ok
        self.detail = detail

    def __repr__(self):
        return "SequenceNode(H^%d %s: %s)" % (
            self.degree, self.node, "exact" if self.ok else "NOT exact")


class ExactnessReport:
    def __init__(self, nodes):
        self.nodes = list(nodes)

    @property
    def ok(self):
        return all(n.ok for n in self.nodes)

    def failures(self):
        return [n for n in self.nodes if not n.ok]

    def __repr__(self):
        return "ExactnessReport(%d nodes, %s)" % (
            len(self.nodes), "exact" if self.ok else "%d failures" % len(self.failures()))


def _matrix_rank(cols, kind):
    # rank is transpose-invariant, so feed the columns in as rows
    if not cols:
        return 0
    if kind == "z2":
        from .exactla import rank_gf2
        masks = []
        for col in cols:
            m = 0
            for i, v in enumerate(col):
                if int(v) % 2:
                    m |= 1 << i
            masks.append(m)
        return rank_gf2(masks)
    from fractions import Fraction
    from .exactla import rank_q
    return rank_q([{i: Fraction(v) for i, v in enumerate(col) if v} for col in cols])


def _compose_zero(outgoing_cols, incoming_cols, kind):
    """Does outgoing . incoming vanish?  Columns are coordinate lists."""
    target_dim = len(outgoing_cols[0]) if outgoing_cols else 0
    for col in incoming_cols:
        acc = [coeff_zero(kind)] * target_dim
        for j, c in enumerate(col):
            if not c or j >= len(outgoing_cols):
                continue
            for i, v in enumerate(outgoing_cols[j]):
                acc[i] = (acc[i] + c * v) % 2 if kind == "z2" else acc[i] + c * v
        if any(acc):
            return False
    return True


def pair_sequence_check(complex, A, kinds=EXACT_KINDS):
    """Rank-exactness of ... -> Hn(X,A) -> Hn(X) -> Hn(A) -> Hn+1(X,A) -> ...

    A must be face-closed.  Exactness at a node holds iff the incoming
    image has the same rank as the outgoing kernel and the composite
    vanishes; both are checked by exact elimination over Q and Z2.
    """
    if not A.is_face_closed():
        raise ValueError("subcomplex must be face-closed")
    from .complexes import apply_coboundary, subcomplex_as_complex
    XA = subcomplex_as_complex(A)
    nodes = []
    for kind in kinds:
        D = complex.top_dim + 2  # degrees 0..D, all groups 0 at D
        H_rel = [CohomologyGroup(complex, n, kind, A) for n in range(D + 1)]
        H_X = [CohomologyGroup(complex, n, kind) for n in range(D + 1)]
        H_A = [CohomologyGroup(XA, n, kind) for n in range(D + 1)]

        j_mats, i_mats, d_mats = [], [], []
        for n in range(D + 1):
            # j*: Hn(X,A) -> Hn(X), relative cocycles read as cocycles on X
            j_cols = []
            for vec in H_rel[n].basis:
                coch = H_rel[n].cochain_from_vector(vec)
                j_cols.append(H_X[n].coords(H_X[n].vector_from_cochain(coch)))
            j_mats.append(j_cols)

            # i*: Hn(X) -> Hn(A), restriction of instance values
            i_cols = []
            for vec in H_X[n].basis:
                coch = H_X[n].cochain_from_vector(vec)
                restricted = [coch.get(*inst) for inst in H_A[n].cols]
                i_cols.append(H_A[n].coords(restricted))
            i_mats.append(i_cols)

            # connecting d: Hn(A) -> Hn+1(X,A): extend by zero, coboundary
            d_cols = []
            if n < D:
                for vec in H_A[n].basis:
                    on_x = _transfer(complex, H_A[n].cochain_from_vector(vec))
                    dv = apply_coboundary(complex, on_x)
                    d_cols.append(H_rel[n + 1].coords(
                        H_rel[n + 1].vector_from_cochain(dv)))
            d_mats.append(d_cols)

        for n in range(D + 1):
            incoming = d_mats[n - 1] if n > 0 else []
            nodes.append(_node(kind, n, "H(X,A)", incoming, j_mats[n], H_rel[n]))
            nodes.append(_node(kind, n, "H(X)", j_mats[n], i_mats[n], H_X[n]))
            nodes.append(_node(kind, n, "H(A)", i_mats[n], d_mats[n], H_A[n]))
    return ExactnessReport(nodes)


def _transfer(X, cochain):
    """Reinterpret a cochain on a base-restricted copy as a cochain on X."""
    if cochain.degree > X.top_dim:
        return Cochain.zero(X, cochain.degree, cochain.kind)
    vals = [dict(d) for d in cochain.values]
    vals += [dict() for _ in range(len(X.families[cochain.degree]) - len(vals))]
    return Cochain(X, cochain.degree, cochain.kind, vals)


def _node(kind, degree, name, incoming_cols, outgoing_cols, group):
    rank_in = _matrix_rank(incoming_cols, kind)
    rank_out = _matrix_rank(outgoing_cols, kind)
    ker_out = group.dim - rank_out
    composite_ok = True
    if incoming_cols and outgoing_cols:
        composite_ok = _compose_zero(outgoing_cols, incoming_cols, kind)
    ok = (rank_in == ker_out) and composite_ok
    detail = "%s: im=%d ker=%d dim=%d" % (kind, rank_in, ker_out, group.dim)
    return SequenceNode(degree, name, ok, detail)


# -- classical oracle for finite fibers -----------------------------------------

def finite_complex_betti(C, n, kind="q"):
    """Betti number of a plain FiniteComplex, computed directly.

    Independent of the fibered machinery: coboundary matrices come straight
    from the vertex-tuple face structure of C.
    """
    def delta(k):
        entries = {}
        if 0 <= k <= C.top_dim - 1:
            for idx in range(C.count(k + 1)):
                for i in range(k + 2):
                    c = C.face(k + 1, idx, i)
                    entries[(idx, c)] = entries.get((idx, c), 0) + (-1) ** i
        return SignedIntMatrix(C.count(k + 1), C.count(k), entries)

    from .exactla import rank as exact_rank
    up = delta(n)
    down = delta(n - 1)
    dim_ker = C.count(n) - exact_rank(up, kind)
    return dim_ker - exact_rank(down, kind)
