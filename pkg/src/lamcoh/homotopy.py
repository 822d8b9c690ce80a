"""Simplicial maps, prism complexes, and the cochain homotopy operator.

The prism complex over K is the staircase triangulation of K x [0,1]: for
each n-family F it carries bottom and top copies, the diagonal n-simplices
[a_0..a_k, b_{k+1}..b_n], and the shuffle (n+1)-simplices
[a_0..a_i, b_i..b_n].  A PrismHomotopy assigns to each (family, shuffle
index) a target family of one dimension higher; entries may be None for
degenerate pieces, which contribute nothing to the operator.
"""

from .complexes import FiberedComplex, SimplexFamily
from .exactla import SignedIntMatrix


class SimplicialMap:
    """Dimension-preserving map of fibered complexes.

    entries[n][fi] = (target family index, atom map) for each n-family fi
    of the source.  Face compatibility is verified by check().
    """

    def __init__(self, source, target, entries):
        self.source = source
        self.target = target
        self.entries = [list(row) for row in entries]

    def image(self, n, fam_idx, atom):
        tf, m = self.entries[n][fam_idx]
        return tf, m[atom]

    def check(self):
        """Raise ValueError on face-incompatible or non-total data."""
        for n, fl in enumerate(self.source.families):
            if n >= len(self.entries) or len(self.entries[n]) != len(fl):
                raise ValueError("map entries missing in dimension %d" % n)
            for fi, f in enumerate(fl):
                tf, m = self.entries[n][fi]
                tfam = self.target.families[n][tf]
                for t in f.base:
                    if t not in m:
                        raise ValueError("map undefined at (%d,%d,%d)" % (n, fi, t))
                    if m[t] not in tfam.base:
                        raise ValueError("map image outside target base at (%d,%d,%d)"
                                         % (n, fi, t))
                for i in range(n + 1) if n > 0 else ():
                    src_t, src_m = f.faces[i]
                    img_t, img_m = self.entries[n - 1][src_t]
                    tgt_t, tgt_m = tfam.faces[i]
                    if img_t != tgt_t:
                        raise ValueError(
                            "face %d of family (%d,%d) maps inconsistently" % (i, n, fi))
                    for t in f.base:
                        if img_m[src_m[t]] != tgt_m[m[t]]:
                            raise ValueError(
                                "face %d of family (%d,%d) fails to commute at atom %d"
                                % (i, n, fi, t))

    def pullback_matrix(self, n):
        """Matrix of the induced cochain map Cn(target) -> Cn(source)."""
        rows = self.source.instance_index(n)
        cols = self.target.instance_index(n)
        entries = {}
        if 0 <= n <= self.source.top_dim and n <= self.target.top_dim:
            for fi, f in enumerate(self.source.families[n]):
                tf, m = self.entries[n][fi]
                for t in f.base:
                    entries[(rows[(fi, t)], cols[(tf, m[t])])] = 1
        return SignedIntMatrix(len(rows), len(cols), entries)

    def pullback(self, cochain):
        from .complexes import Cochain
        n = cochain.degree
        vec = self.pullback_matrix(n).apply(cochain.as_vector(), cochain.kind)
        return Cochain.from_vector(self.source, n, cochain.kind, vec)


class PrismHomotopy:
    """Shuffle-piece data of a simplicial homotopy K x [0,1] -> L.

    entries[n][fi][i] is None or (family of dimension n+1 in L, atom map):
    the image of the i-th shuffle piece over the n-family fi of K.
    """

    def __init__(self, source, target, entries):
        self.source = source
        self.target = target
        self.entries = [list(row) for row in entries]

    def piece(self, n, fam_idx, i):
        return self.entries[n][fam_idx][i]

    def operator_matrix(self, n):
        """P: Cn(L) -> Cn-1(K), alternating sum over shuffle pieces."""
        rows = self.source.instance_index(n - 1)
        cols = self.target.instance_index(n)
        entries = {}
        if 1 <= n <= self.source.top_dim + 1 and n <= self.target.top_dim:
            for fi, f in enumerate(self.source.families[n - 1]):
                if n - 1 >= len(self.entries):
                    continue
                pieces = self.entries[n - 1][fi]
                for t in f.base:
                    r = rows[(fi, t)]
                    for i, piece in enumerate(pieces):
                        if piece is None:
                            continue
                        tf, m = piece
                        c = cols[(tf, m[t])]
                        entries[(r, c)] = entries.get((r, c), 0) + (-1) ** i
        return SignedIntMatrix(len(rows), len(cols),
                               {k: v for k, v in entries.items() if v})


class HomotopyCertificate:
    """Outcome of the cochain homotopy identity g* - f* = dP + Pd."""

    def __init__(self, exact_over_q, exact_over_z2, degrees, operators):
        self.exact_over_q = exact_over_q
        self.exact_over_z2 = exact_over_z2
        self.degrees = degrees
        self.operators = operators

    @property
    def ok(self):
        return self.exact_over_q and self.exact_over_z2

    def __repr__(self):
        return "HomotopyCertificate(q=%s, z2=%s, degrees=0..%d)" % (
            self.exact_over_q, self.exact_over_z2, self.degrees)


def _check_ends(K, L, f, g, H):
    """H restricted to the prism ends must agree with f and g."""
    for n, fl in enumerate(K.families):
        for fi, fam in enumerate(fl):
            pieces = H.entries[n][fi] if n < len(H.entries) else []
            if len(pieces) not in (0, n + 1):
                raise ValueError("homotopy over a %d-family needs %d pieces" % (n, n + 1))
            if not pieces:
                continue
            bottom = pieces[n]
            if bottom is not None:
                tf, m = bottom
                bt, bm = L.families[n + 1][tf].faces[n + 1]
                ef, em = f.entries[n][fi]
                if bt != ef or any(bm[m[t]] != em[t] for t in fam.base):
                    raise ValueError(
                        "bottom end of the homotopy disagrees with f at family (%d,%d)"
                        % (n, fi))
            topp = pieces[0]
            if topp is not None:
                tf, m = topp
                tt, tm = L.families[n + 1][tf].faces[0]
                eg, em = g.entries[n][fi]
                if tt != eg or any(tm[m[t]] != em[t] for t in fam.base):
                    raise ValueError(
                        "top end of the homotopy disagrees with g at family (%d,%d)"
                        % (n, fi))


def homotopy_operator(K, L, f, g, H):
    """Cochain maps and the prism operator P with an exactness certificate.

    Verifies the simplicial data (ends of H against f and g), then checks
    g* - f* = dP + Pd degreewise by exact matrix arithmetic over Q and Z2.
    """
    f.check()
    g.check()
    _check_ends(K, L, f, g, H)

    max_deg = max(K.top_dim, L.top_dim) + 1
    ok_q = True
    ok_z2 = True
    operators = {}
    for n in range(max_deg + 1):
        P_n = H.operator_matrix(n)
        P_n1 = H.operator_matrix(n + 1)
        operators[n] = P_n
        G = g.pullback_matrix(n)
        F = f.pullback_matrix(n)
        dK = K.coboundary_matrix(n - 1) if n >= 1 else None
        dL = L.coboundary_matrix(n)
        rhs = P_n1.matmul(dL)
        if dK is not None:
            rhs_entries = dict(rhs.entries)
            for (r, c), v in dK.matmul(P_n).entries.items():
                rhs_entries[(r, c)] = rhs_entries.get((r, c), 0) + v
            rhs = SignedIntMatrix(rhs.nrows, rhs.ncols, rhs_entries)
        diff = dict(rhs.entries)
        for (r, c), v in G.entries.items():
            diff[(r, c)] = diff.get((r, c), 0) - v
        for (r, c), v in F.entries.items():
            diff[(r, c)] = diff.get((r, c), 0) + v
        residual = {k: v for k, v in diff.items() if v}
        if residual:
            ok_q = False
        if any(v % 2 for v in residual.values()):
            ok_z2 = False
    return HomotopyCertificate(ok_q, ok_z2, max_deg, operators)


def induced_map_matrix(smap, n, kind):
    """Matrix of the induced map on Hn in the computed quotient bases."""
    from .cohomology import CohomologyGroup
    HL = CohomologyGroup(smap.target, n, kind)
    HK = CohomologyGroup(smap.source, n, kind)
    cols = []
    for vec in HL.basis:
        coch = HL.cochain_from_vector(vec)
        pulled = smap.pullback(coch)
        cols.append(HK.coords(HK.vector_from_cochain(pulled)))
    return cols


# -- the prism complex --------------------------------------------------------

def prism_complex(K):
    """Staircase triangulation of K x [0,1] as a fibered complex.

    Returns (L, bottom, top, H): the two end inclusions as SimplicialMaps
    and the identity prism homotopy between them.
    """
    top_dim = K.top_dim

    keys = []  # keys[m] = ordered family keys of dimension m
    for m in range(top_dim + 2):
        row = []
        if m <= top_dim:
            row += [("bot", fi) for fi in range(len(K.families[m]))]
            row += [("top", fi) for fi in range(len(K.families[m]))]
            row += [("diag", fi, k)
                    for fi in range(len(K.families[m])) for k in range(m)]
        if m >= 1 and m - 1 <= top_dim:
            row += [("shuf", fi, i)
                    for fi in range(len(K.families[m - 1])) for i in range(m)]
        keys.append(row)
    index = [{key: i for i, key in enumerate(row)} for row in keys]

    def ident(fam):
        return {t: t for t in fam.base}

    fams = []
    for m, row in enumerate(keys):
        out = []
        for key in row:
            if key[0] in ("bot", "top"):
                side, fi = key
                f = K.families[m][fi]
                faces = [(index[m - 1][(side, t)], dict(fm))
                         for t, fm in f.faces]
                out.append(SimplexFamily(m, f.base, faces))
            elif key[0] == "diag":
                _, fi, k = key
                f = K.families[m][fi]
                n = m
                faces = []
                for j in range(n + 1):
                    t, fm = f.faces[j]
                    if j <= k:
                        if k == 0:
                            faces.append((index[n - 1][("top", t)], dict(fm)))
                        else:
                            faces.append((index[n - 1][("diag", t, k - 1)], dict(fm)))
                    else:
                        if k == n - 1 and j == n:
                            faces.append((index[n - 1][("bot", t)], dict(fm)))
                        else:
                            faces.append((index[n - 1][("diag", t, k)], dict(fm)))
                out.append(SimplexFamily(m, f.base, faces))
            else:
                _, fi, i = key
                f = K.families[m - 1][fi]
                n = m - 1
                faces = []
                for p in range(m + 1):
                    if p < i:
                        t, fm = f.faces[p]
                        faces.append((index[m - 1][("shuf", t, i - 1)], dict(fm)))
                    elif p == i:
                        if i == 0:
                            faces.append((index[m - 1][("top", fi)], ident(f)))
                        else:
                            faces.append((index[m - 1][("diag", fi, i - 1)], ident(f)))
                    elif p == i + 1:
                        if i == n:
                            faces.append((index[m - 1][("bot", fi)], ident(f)))
                        else:
                            faces.append((index[m - 1][("diag", fi, i)], ident(f)))
                    else:
                        t, fm = f.faces[p - 1]
                        faces.append((index[m - 1][("shuf", t, i)], dict(fm)))
                out.append(SimplexFamily(m, f.base, faces))
        fams.append(out)

    L = FiberedComplex(K.transversal, fams)
    bottom = SimplicialMap(K, L, [
        [(index[m][("bot", fi)], ident(f)) for fi, f in enumerate(fl)]
        for m, fl in enumerate(K.families)])
    topm = SimplicialMap(K, L, [
        [(index[m][("top", fi)], ident(f)) for fi, f in enumerate(fl)]
        for m, fl in enumerate(K.families)])
    H = PrismHomotopy(K, L, [
        [[(index[m + 1][("shuf", fi, i)], ident(f)) for i in range(m + 1)]
         for fi, f in enumerate(fl)]
        for m, fl in enumerate(K.families)])
    return L, bottom, topm, H


def constant_homotopy(K, L, f):
    """All-degenerate homotopy from f to itself: P = 0."""
    return PrismHomotopy(K, L, [
        [[None] * (m + 1) for _ in fl] for m, fl in enumerate(K.families)])
