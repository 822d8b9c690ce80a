"""Weighted inner products, Hodge Laplacians, harmonic cochains, and
transverse-measure Betti numbers.

The L2 space of a degree drops every instance lying over a zero-weight
leaf orbit (almost-everywhere equivalence); the transverse measure must be
leaf-constant.  The adjoint is taken in the weighted inner product,
delta* = W^-1 delta^T W, which needs strictly positive retained weights.

Two parallel paths: an exact one over Fractions (rational weights give a
rational Laplacian, kernels computed by exact elimination) and a float one
backed by numpy with an eigenvalue threshold.
"""

from fractions import Fraction

import numpy as np

from .complexes import Cochain, FiberedComplex, SimplexFamily, format_fraction
from .exactla import kernel_q, rank_q, solve_q

EIGEN_RELATIVE_THRESHOLD = 1e-9


class MeasureNotLeafConstantError(ValueError):
    pass


def _leaf_constant_blocks(complex):
    blocks = complex.leaf_decomposition()
    for block in blocks:
        ws = {complex.transversal.weights[a] for a in block}
        if len(ws) > 1:
            raise MeasureNotLeafConstantError(
                "transverse measure is not leaf-constant on block %s" % (list(block),))
    return blocks


class L2Context:
    """Retained instances and weight data of a complex, cached per degree."""

    def __init__(self, complex):
        self.complex = complex
        blocks = _leaf_constant_blocks(complex)
        self.blocks = blocks
        self.retained_atoms = frozenset(
            a for b in blocks if complex.transversal.weights[b[0]] > 0 for a in b)
        self._insts = {}

    def instances(self, n):
        if n not in self._insts:
            self._insts[n] = [inst for inst in self.complex.instances(n)
                              if inst[1] in self.retained_atoms]
        return self._insts[n]

    def weights(self, n):
        return [self.complex.transversal.weights[t] for _, t in self.instances(n)]

    def delta(self, n):
        """Coboundary restricted to retained instances, as sparse rows."""
        full = self.complex.coboundary_matrix(n)
        rows_keep = {self.complex.instance_index(n + 1)[inst]: i
                     for i, inst in enumerate(self.instances(n + 1))}
        cols_keep = {self.complex.instance_index(n)[inst]: i
                     for i, inst in enumerate(self.instances(n))}
        out = [dict() for _ in rows_keep]
        for (r, c), v in full.entries.items():
            if r in rows_keep and c in cols_keep:
                out[rows_keep[r]][cols_keep[c]] = v
        return out

    def vector(self, cochain):
        return [cochain.get(*inst) for inst in self.instances(cochain.degree)]

    def cochain(self, n, vec, kind):
        full = [0] * self.complex.instance_count(n)
        idx = self.complex.instance_index(n)
        for inst, v in zip(self.instances(n), vec):
            full[idx[inst]] = v
        return Cochain.from_vector(self.complex, n, kind, full)


def inner_product(complex, omega, theta):
    """Weighted inner product over retained instances; exact for Q."""
    if omega.degree != theta.degree:
        raise ValueError("inner product needs cochains of equal degree")
    ctx = L2Context(complex)
    total = Fraction(0) if omega.kind == "q" and theta.kind == "q" else 0.0
    for fi, t in ctx.instances(omega.degree):
        total += complex.transversal.weights[t] * omega.get(fi, t) * theta.get(fi, t)
    return total


# -- exact dense helpers -------------------------------------------------------

def _dense_from_rows(rows, ncols):
    out = [[Fraction(0)] * ncols for _ in rows]
    for i, row in enumerate(rows):
        for c, v in row.items():
            out[i][c] = Fraction(v)
    return out


def _mat_mul(A, B):
    if not A or not B:
        return [[Fraction(0)] * (len(B[0]) if B else 0) for _ in A]
    n, k, m = len(A), len(B), len(B[0])
    out = [[Fraction(0)] * m for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        for j in range(k):
            a = Ai[j]
            if a:
                Bj = B[j]
                row = out[i]
                for c in range(m):
                    if Bj[c]:
                        row[c] += a * Bj[c]
    return out


def _transpose(A):
    if not A:
        return []
    return [[A[i][j] for i in range(len(A))] for j in range(len(A[0]))]


def _scale_rows(A, ws):
    return [[w * x for x in row] for w, row in zip(ws, A)]


def laplacian(complex, n, kind="q"):
    """The Hodge Laplacian on retained degree-n instances.

    kind "q": dense Fraction matrix; kind "r": numpy array.  Symmetric and
    positive semidefinite in the weighted inner product.
    """
    ctx = L2Context(complex)
    return _laplacian_ctx(ctx, n, kind)


def _laplacian_ctx(ctx, n, kind):
    wn = ctx.weights(n)
    dim = len(wn)
    up = _dense_from_rows(ctx.delta(n), dim)
    wn1 = ctx.weights(n + 1)
    down = _dense_from_rows(ctx.delta(n - 1), len(ctx.instances(n - 1))) if n >= 1 else []
    wm1 = ctx.weights(n - 1) if n >= 1 else []

    if any(w == 0 for w in wn):
        raise ValueError("retained weights must be strictly positive")

    # delta_n* delta_n = Wn^-1 Dn^T Wn+1 Dn
    lap = [[Fraction(0)] * dim for _ in range(dim)]
    if up:
        t1 = _mat_mul(_transpose(_scale_rows(up, wn1)), up)
        for i in range(dim):
            inv = 1 / wn[i]
            for j in range(dim):
                lap[i][j] += inv * t1[i][j]
    # delta_{n-1} delta_{n-1}* = Dn-1 Wn-1^-1 Dn-1^T Wn
    if down and wm1:
        dt = _transpose(down)
        inv_m1 = [[Fraction(0)] * len(wm1) for _ in range(len(wm1))]
        for i, w in enumerate(wm1):
            if w == 0:
                raise ValueError("retained weights must be strictly positive")
            inv_m1[i][i] = 1 / w
        t2 = _mat_mul(down, _mat_mul(inv_m1, dt))
        for i in range(dim):
            for j in range(dim):
                lap[i][j] += t2[i][j] * wn[j]
    if kind == "q":
        return lap
    return np.array([[float(x) for x in row] for row in lap], dtype=float)


def laplacian_kernel_dim(complex, n, kind="q", tol=EIGEN_RELATIVE_THRESHOLD):
    """dim ker of the Hodge Laplacian: exact elimination or eigen threshold."""
    ctx = L2Context(complex)
    return _kernel_dim_ctx(ctx, n, kind, tol)


def _kernel_dim_ctx(ctx, n, kind, tol=EIGEN_RELATIVE_THRESHOLD):
    dim = len(ctx.instances(n))
    if dim == 0:
        return 0
    lap = _laplacian_ctx(ctx, n, "q")
    if kind == "q":
        rows = [{j: v for j, v in enumerate(row) if v} for row in lap]
        return dim - rank_q(rows)
    evals = _weighted_eigvals(ctx, n, lap)
    cut = tol * max(evals[-1], 1.0)
    return int(sum(1 for e in evals if e < cut))


def _weighted_eigvals(ctx, n, lap_q):
    wn = np.array([float(w) for w in ctx.weights(n)])
    lap = np.array([[float(x) for x in row] for row in lap_q])
    s = np.sqrt(wn)
    sym = (s[:, None] * lap) / s[None, :]
    sym = (sym + sym.T) / 2.0
    return np.linalg.eigvalsh(sym)


# -- Hodge decomposition -------------------------------------------------------

def _project_exact(cols, ws, vec):
    """W-orthogonal projection of vec onto the span of the given columns."""
    if not cols:
        return [Fraction(0)] * len(vec)
    # normal equations: (B^T W B) x = B^T W vec
    k = len(cols)
    rows = []
    rhs = []
    for i in range(k):
        row = {}
        for j in range(k):
            s = sum(w * a * b for w, a, b in zip(ws, cols[i], cols[j]) if a and b)
            if s:
                row[j] = s
        rows.append(row)
        rhs.append(sum(w * a * v for w, a, v in zip(ws, cols[i], vec) if a and v))
    x = solve_q(rows, k, rhs)
    if x is None:
        raise RuntimeError("normal equations inconsistent")
    out = [Fraction(0)] * len(vec)
    for j, c in enumerate(x):
        if c:
            for i, b in enumerate(cols[j]):
                if b:
                    out[i] += c * b
    return out


def _project_float(cols, ws, vec):
    if not cols:
        return np.zeros(len(vec))
    B = np.array(cols, dtype=float).T
    s = np.sqrt(np.array(ws, dtype=float))
    x, *_ = np.linalg.lstsq(B * s[:, None], np.array(vec, dtype=float) * s, rcond=None)
    return B @ x


class HodgeDecomposition:
    def __init__(self, harmonic, exact, coexact, residuals):
        self.harmonic = harmonic
        self.exact = exact
        self.coexact = coexact
        self.residuals = residuals

    def __repr__(self):
        return "HodgeDecomposition(max residual %.3e)" % (
            max(self.residuals.values(), default=0.0),)


def hodge_decompose(complex, cochain):
    """omega = harmonic + delta(alpha) + delta*(beta), pairwise orthogonal.

    Exact over Q (residuals are literally zero); float path for kind "r".
    """
    ctx = L2Context(complex)
    n = cochain.degree
    kind = cochain.kind
    if kind == "z2":
        raise ValueError("Hodge decomposition needs Q or R coefficients")
    vec = ctx.vector(cochain)
    ws = ctx.weights(n)
    dim = len(vec)
    if dim == 0:
        zero = Cochain.zero(complex, n, kind)
        return HodgeDecomposition(zero, zero, zero, {"total": 0.0})

    down = _dense_from_rows(ctx.delta(n - 1), len(ctx.instances(n - 1))) if n >= 1 else []
    img_cols = _transpose(down) if down else []
    img_cols = [c for c in img_cols if any(c)]

    up = _dense_from_rows(ctx.delta(n), dim)
    wn1 = ctx.weights(n + 1)
    coimg_cols = []
    if up:
        # columns of delta_n^* = Wn^-1 Dn^T Wn+1 applied to basis vectors
        for j in range(len(up)):
            col = [up[j][i] * wn1[j] / ws[i] for i in range(dim)]
            if any(col):
                coimg_cols.append(col)

    if kind == "q":
        vq = [Fraction(v) for v in vec]
        e = _project_exact(img_cols, ws, vq)
        c = _project_exact(coimg_cols, ws, vq)
        h = [v - a - b for v, a, b in zip(vq, e, c)]
        residuals = _residuals_exact(ctx, n, h, e, c, ws)
        mk = lambda u: ctx.cochain(n, u, "q")
    else:
        wsf = [float(w) for w in ws]
        vf = np.array([float(v) for v in vec])
        imgf = [[float(x) for x in col] for col in img_cols]
        coimgf = [[float(x) for x in col] for col in coimg_cols]
        e = _project_float(imgf, wsf, vf)
        c = _project_float(coimgf, wsf, vf)
        h = vf - e - c
        residuals = _residuals_float(ctx, n, h, e, c, wsf)
        mk = lambda u: ctx.cochain(n, [float(x) for x in u], "r")
    return HodgeDecomposition(mk(h), mk(e), mk(c), residuals)


def _residuals_exact(ctx, n, h, e, c, ws):
    def ip(a, b):
        return float(sum(w * x * y for w, x, y in zip(ws, a, b)))
    up = ctx.delta(n)
    dh = [sum(row.get(j, 0) * h[j] for j in row) for row in up]
    # delta* h: Wn-1^-1 Dn-1^T Wn h
    down = ctx.delta(n - 1) if n >= 1 else []
    wm1 = ctx.weights(n - 1) if n >= 1 else []
    dsh = [Fraction(0)] * len(wm1)
    for i, row in enumerate(down):
        for j, v in row.items():
            dsh[j] += v * ws[i] * h[i]
    dsh = [x / w if w else x for x, w in zip(dsh, wm1)]
    return {
        "delta_h": float(sum(abs(x) for x in dh)),
        "delta_star_h": float(sum(abs(x) for x in dsh)),
        "ip_h_exact": abs(ip(h, e)),
        "ip_h_coexact": abs(ip(h, c)),
        "ip_exact_coexact": abs(ip(e, c)),
    }


def _residuals_float(ctx, n, h, e, c, ws):
    def ip(a, b):
        return float(abs(sum(w * x * y for w, x, y in zip(ws, a, b))))
    up = ctx.delta(n)
    dh = [sum(row.get(j, 0) * h[j] for j in row) for row in up]
    down = ctx.delta(n - 1) if n >= 1 else []
    wm1 = [float(w) for w in (ctx.weights(n - 1) if n >= 1 else [])]
    dsh = [0.0] * len(wm1)
    for i, row in enumerate(down):
        for j, v in row.items():
            dsh[j] += v * ws[i] * h[i]
    dsh = [x / w if w else x for x, w in zip(dsh, wm1)]
    return {
        "delta_h": float(sum(abs(x) for x in dh)),
        "delta_star_h": float(sum(abs(x) for x in dsh)),
        "ip_h_exact": ip(h, e),
        "ip_h_coexact": ip(h, c),
        "ip_exact_coexact": ip(e, c),
    }


# -- transverse-measure Betti numbers --------------------------------------------

def _orbit_complex(complex, atoms):
    """The complex restricted to the instances over one leaf orbit."""
    keep = set(atoms)
    fams = []
    for n, fl in enumerate(complex.families):
        row = []
        for f in fl:
            base = [t for t in f.base if t in keep]
            faces = []
            if n > 0:
                faces = [(target, {t: fmap[t] for t in base})
                         for target, fmap in f.faces]
            row.append(SimplexFamily(n, base, faces))
        fams.append(row)
    return FiberedComplex(complex.transversal, fams, complex.regularity_bound)


def l2_betti(complex, n, exact=True, tol=EIGEN_RELATIVE_THRESHOLD):
    """Transverse-measure Betti number in degree n.

    Finite-orbit von Neumann dimension: the sum over positive-weight leaf
    orbits of (weight of one atom) x (dimension of the harmonic cochains
    of the orbit's instance complex); equivalently the orbit's total
    measure times that dimension over the orbit size.  Exact path returns
    a Fraction, float path a double from eigenvalue thresholds.
    """
    blocks = _leaf_constant_blocks(complex)
    total = Fraction(0) if exact else 0.0
    for block in blocks:
        w = complex.transversal.weights[block[0]]
        if w == 0:
            continue
        oc = _orbit_complex(complex, block)
        ctx = L2Context(oc)
        if exact:
            d = _kernel_dim_ctx(ctx, n, "q")
            total += w * d
        else:
            d = _kernel_dim_ctx(ctx, n, "r", tol)
            total += float(w) * d
    return total


class HodgeReport:
    """Harmonic basis, transverse Betti number, and residual norms."""

    def __init__(self, degree, harmonic_basis, lambda_betti, residuals, kind):
        self.degree = degree
        self.harmonic_basis = list(harmonic_basis)
        self.lambda_betti = lambda_betti
        self.residuals = dict(residuals)
        self.kind = kind

    def to_dict(self):
        basis = []
        for coch in self.harmonic_basis:
            vec = coch.as_vector()
            if self.kind == "q":
                basis.append([format_fraction(v) for v in vec])
            else:
                basis.append(["%.17g" % float(v) for v in vec])
        lb = (format_fraction(self.lambda_betti) if isinstance(self.lambda_betti, Fraction)
              else "%.17g" % self.lambda_betti)
        return {
            "degree": self.degree,
            "kind": self.kind,
            "lambda_betti": lb,
            "harmonic_basis": basis,
            "residuals": {k: "%.17g" % v for k, v in sorted(self.residuals.items())},
        }

    def __repr__(self):
        return "HodgeReport(degree=%d, lambda_betti=%s, %d harmonic vectors)" % (
            self.degree, self.lambda_betti, len(self.harmonic_basis))


def hodge_report(complex, n, kind="q", tol=EIGEN_RELATIVE_THRESHOLD):
    """Harmonic basis and transverse Betti number for one degree."""
    ctx = L2Context(complex)
    dim = len(ctx.instances(n))
    if dim == 0:
        return HodgeReport(n, [], Fraction(0) if kind == "q" else 0.0, {}, kind)
    lap = _laplacian_ctx(ctx, n, "q")
    ws = ctx.weights(n)
    if kind == "q":
        rows = [{j: v for j, v in enumerate(row) if v} for row in lap]
        basis = kernel_q(rows, dim)
        basis = _gram_schmidt_exact(basis, ws)
        cochains = [ctx.cochain(n, vec, "q") for vec in basis]
        residuals = {"orthogonality": 0.0, "eigen": 0.0}
        lb = l2_betti(complex, n, exact=True)
    else:
        wn = np.array([float(w) for w in ws])
        s = np.sqrt(wn)
        lapf = np.array([[float(x) for x in row] for row in lap])
        sym = (s[:, None] * lapf) / s[None, :]
        sym = (sym + sym.T) / 2.0
        evals, evecs = np.linalg.eigh(sym)
        cut = tol * max(evals[-1] if len(evals) else 0.0, 1.0)
        null = [evecs[:, i] / s for i in range(len(evals)) if evals[i] < cut]
        cochains = [ctx.cochain(n, [float(x) for x in v], "r") for v in null]
        ortho = 0.0
        eig = 0.0
        for i, u in enumerate(null):
            eig = max(eig, float(np.max(np.abs(lapf @ u))) if len(u) else 0.0)
            for v in null[i + 1:]:
                ortho = max(ortho, abs(float(np.sum(wn * u * v))))
        residuals = {"orthogonality": ortho, "eigen": eig}
        lb = l2_betti(complex, n, exact=False, tol=tol)
    return HodgeReport(n, cochains, lb, residuals, kind)


def _gram_schmidt_exact(basis, ws):
    out = []
    for vec in basis:
        v = [Fraction(x) for x in vec]
        for u in out:
            num = sum(w * a * b for w, a, b in zip(ws, u, v))
            den = sum(w * a * a for w, a in zip(ws, u))
            if num:
                f = num / den
                v = [x - f * y for x, y in zip(v, u)]
        if any(v):
            out.append(v)
    return out


def weighted_euler_characteristic(complex):
    """Sum over orbits of atom weight times the orbit complex's Euler number."""
    blocks = _leaf_constant_blocks(complex)
    total = Fraction(0)
    for block in blocks:
        w = complex.transversal.weights[block[0]]
        if w == 0:
            continue
        oc = _orbit_complex(complex, block)
        total += w * oc.euler_characteristic()
    return total
