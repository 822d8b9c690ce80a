"""Exact linear algebra over the rationals and over GF(2).

Everything here is deterministic: pivots are chosen by smallest column
index, rows are processed in the order given.  Rational rows are sparse
``dict[col] -> Fraction``; GF(2) rows are int bitmasks (bit i = column i).
Matrices at desk scale are small, so plain Gaussian elimination is fine;
sparsity only keeps the incidence-matrix eliminations cheap.
"""

from fractions import Fraction


class SignedIntMatrix:
    """Sparse integer matrix, entries in entries[(row, col)].

    Used for coboundary operators: entries are small signed integer
    incidence sums, reduced to a target field only at solve time.
    """

    def __init__(self, nrows, ncols, entries=None):
        self.nrows = nrows
        self.ncols = ncols
        self.entries = {}
        if entries:
            for (r, c), v in entries.items():
                if v != 0:
                    self.entries[(r, c)] = v

    def __eq__(self, other):
        return (isinstance(other, SignedIntMatrix)
                and self.nrows == other.nrows and self.ncols == other.ncols
                and self.entries == other.entries)

    def __repr__(self):
        return "SignedIntMatrix(%d x %d, %d nonzeros)" % (
            self.nrows, self.ncols, len(self.entries))

    def is_zero(self):
        return not self.entries

    def matmul(self, other):
        """self @ other with exact integer arithmetic."""
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch: %d x %d @ %d x %d" % (
                self.nrows, self.ncols, other.nrows, other.ncols))
        by_row = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, []).append((c, v))
        out = {}
        for (r, k), v in self.entries.items():
            for c, w in by_row.get(k, ()):
                out[(r, c)] = out.get((r, c), 0) + v * w
        return SignedIntMatrix(self.nrows, other.ncols,
                               {k: v for k, v in out.items() if v != 0})

    def transpose(self):
        return SignedIntMatrix(self.ncols, self.nrows,
                               {(c, r): v for (r, c), v in self.entries.items()})

    def q_rows(self):
        """Rows as sparse Fraction dicts."""
        rows = [dict() for _ in range(self.nrows)]
        for (r, c), v in self.entries.items():
            rows[r][c] = Fraction(v)
        return rows

    def gf2_rows(self):
        """Rows as bitmasks, entries reduced mod 2."""
        rows = [0] * self.nrows
        for (r, c), v in self.entries.items():
            if v % 2:
                rows[r] ^= 1 << c
        return rows

    def to_numpy(self):
        import numpy as np
        a = np.zeros((self.nrows, self.ncols))
        for (r, c), v in self.entries.items():
            a[r, c] = float(v)
        return a

    def rows_for(self, kind):
        if kind == "q":
            return self.q_rows()
        if kind == "z2":
            return self.gf2_rows()
        raise ValueError("exact elimination supports kinds 'q' and 'z2', not %r" % (kind,))

    def apply(self, vec, kind):
        """Matrix times a dense column vector over the given kind."""
        if len(vec) != self.ncols:
            raise ValueError("vector length %d != %d columns" % (len(vec), self.ncols))
        if kind == "z2":
            out = [0] * self.nrows
            for (r, c), v in self.entries.items():
                if v % 2 and vec[c]:
                    out[r] ^= 1
            return out
        zero = Fraction(0) if kind == "q" else 0.0
        out = [zero] * self.nrows
        for (r, c), v in self.entries.items():
            if vec[c]:
                out[r] += v * vec[c]
        return out


# --- rational elimination -------------------------------------------------

def _reduce_row_q(row, pivots):
    """Fully reduce a sparse row against pivot rows (pivot col -> unit row).

    Eliminates every pivot column present in the row, not only leading
    ones; the returned lead is then guaranteed to be a fresh column.
    """
    while True:
        hit = [c for c in row if c in pivots]
        if not hit:
            break
        for lead in sorted(hit):
            factor = row.get(lead)
            if not factor:
                continue
            for c, v in pivots[lead].items():
                nv = row.get(c, Fraction(0)) - factor * v
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
    if not row:
        return row, None
    return row, min(row)


def rref_q(rows):
    """Reduced row echelon form of sparse Fraction rows.

    Returns (pivots, order): pivots maps pivot column -> unit reduced row,
    order lists pivot columns in insertion order.
    """
    pivots = {}
    order = []
    for row in rows:
        row = dict(row)
        row, lead = _reduce_row_q(row, pivots)
        if lead is None:
            continue
        inv = 1 / row[lead]
        row = {c: v * inv for c, v in row.items()}
        # back-substitute into existing pivot rows
        for pc, prow in pivots.items():
            if lead in prow:
                f = prow[lead]
                for c, v in row.items():
                    nv = prow.get(c, Fraction(0)) - f * v
                    if nv:
                        prow[c] = nv
                    else:
                        prow.pop(c, None)
        pivots[lead] = row
        order.append(lead)
    return pivots, order


def rank_q(rows):
    return len(rref_q(rows)[1])


def kernel_q(rows, ncols):
    """Basis of the null space of the matrix given by sparse rows.

    Returns dense Fraction vectors, one per free column, deterministic.
    """
    pivots, _ = rref_q(rows)
    piv_cols = set(pivots)
    basis = []
    for free in range(ncols):
        if free in piv_cols:
            continue
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for pc, prow in pivots.items():
            if free in prow:
                vec[pc] = -prow[free]
        basis.append(vec)
    return basis


def solve_q(rows, ncols, rhs):
    """One solution x of A x = rhs, or None if inconsistent.

    rows are sparse rows of A; rhs is a dense Fraction list.
    """
    aug = []
    for i, row in enumerate(rows):
        r = dict(row)
        if rhs[i]:
            r[ncols] = Fraction(rhs[i])
        aug.append(r)
    pivots, _ = rref_q(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for pc, prow in pivots.items():
        x[pc] = prow.get(ncols, Fraction(0))
    return x


def span_completion_q(base_vecs, cand_vecs, ncols):
    """Indices of candidates extending span(base_vecs) to span(base+cands).

    Deterministic: candidates are tried in order against a growing RREF.
    """
    pivots = {}
    for v in base_vecs:
        row = {c: Fraction(x) for c, x in enumerate(v) if x}
        row, lead = _reduce_row_q(row, pivots)
        if lead is not None:
            inv = 1 / row[lead]
            pivots[lead] = {c: x * inv for c, x in row.items()}
    chosen = []
    for i, v in enumerate(cand_vecs):
        row = {c: Fraction(x) for c, x in enumerate(v) if x}
        row, lead = _reduce_row_q(row, pivots)
        if lead is not None:
            inv = 1 / row[lead]
            pivots[lead] = {c: x * inv for c, x in row.items()}
            chosen.append(i)
    return chosen


# --- GF(2) elimination ----------------------------------------------------

def rref_gf2(rows):
    """Pivots for bitmask rows: dict pivot column -> fully reduced row mask."""
    pivots = {}
    pivot_mask = 0
    for row in rows:
        hit = row & pivot_mask
        while hit:
            lead = (hit & -hit).bit_length() - 1
            row ^= pivots[lead]
            hit = row & pivot_mask
        if not row:
            continue
        lead = (row & -row).bit_length() - 1
        for pc in list(pivots):
            if pivots[pc] >> lead & 1:
                pivots[pc] ^= row
        pivots[lead] = row
        pivot_mask |= 1 << lead
    return pivots


def rank_gf2(rows):
    return len(rref_gf2(rows))


def kernel_gf2(rows, ncols):
    """Null space basis over GF(2): dense 0/1 vectors."""
    pivots = rref_gf2(rows)
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        vec = [0] * ncols
        vec[free] = 1
        for pc, prow in pivots.items():
            if prow >> free & 1:
                vec[pc] = 1
        basis.append(vec)
    return basis


def solve_gf2(rows, ncols, rhs):
    """One solution of A x = rhs over GF(2), or None."""
    aug = [row | (1 << ncols if rhs[i] else 0) for i, row in enumerate(rows)]
    pivots = rref_gf2(aug)
    if ncols in pivots:
        return None
    x = [0] * ncols
    for pc, prow in pivots.items():
        x[pc] = 1 if prow >> ncols & 1 else 0
    return x


def span_completion_gf2(base_vecs, cand_vecs, ncols):
    """GF(2) analogue of span_completion_q (vectors are 0/1 lists)."""
    def mask(v):
        m = 0
        for c, x in enumerate(v):
            if x % 2:
                m |= 1 << c
        return m

    pivots = {}

    def insert(m):
        while m:
            lead = (m & -m).bit_length() - 1
            if lead in pivots:
                m ^= pivots[lead]
            else:
                pivots[lead] = m
                return True
        return False

    for v in base_vecs:
        insert(mask(v))
    chosen = []
    for i, v in enumerate(cand_vecs):
        if insert(mask(v)):
            chosen.append(i)
    return chosen


# --- kind dispatch ---------------------------------------------------------

def rank(matrix, kind):
    if kind == "q":
        return rank_q(matrix.q_rows())
    if kind == "z2":
        return rank_gf2(matrix.gf2_rows())
    raise ValueError("exact rank needs kind 'q' or 'z2', not %r" % (kind,))


def kernel(matrix, kind):
    if kind == "q":
        return kernel_q(matrix.q_rows(), matrix.ncols)
    if kind == "z2":
        return kernel_gf2(matrix.gf2_rows(), matrix.ncols)
    raise ValueError("exact kernel needs kind 'q' or 'z2', not %r" % (kind,))


def solve(matrix, rhs, kind):
    if kind == "q":
        return solve_q(matrix.q_rows(), matrix.ncols, rhs)
    if kind == "z2":
        return solve_gf2(matrix.gf2_rows(), matrix.ncols, rhs)
    raise ValueError("exact solve needs kind 'q' or 'z2', not %r" % (kind,))


def span_completion(base_vecs, cand_vecs, ncols, kind):
    if kind == "q":
        return span_completion_q(base_vecs, cand_vecs, ncols)
    if kind == "z2":
        return span_completion_gf2(base_vecs, cand_vecs, ncols)
    raise ValueError("span completion needs kind 'q' or 'z2', not %r" % (kind,))
