"""Exact-arithmetic polytope geometry for the subdivision lemmas.

Everything is rational and ambient dimension is capped at 3: vertex
enumeration is brute force over hyperplane subsets, volumes come from fan
triangulations, and barycenters are exact mass centers.  No epsilons
anywhere; shared faces are resolved by canonical half-space keys.
"""

from fractions import Fraction
from itertools import combinations
from math import gcd


class UnboundedRegionError(ValueError):
    pass


class NotAttachedError(ValueError):
    pass


class CoverageError(ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


# -- linear algebra helpers ------------------------------------------------------

def _solve_square(rows, rhs):
    """Solve an n x n rational system; None if singular."""
    n = len(rows)
    a = [list(map(Fraction, rows[i])) + [Fraction(rhs[i])] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(a[i][n] for i in range(n))


def _affine_rank(points):
    if not points:
        return -1
    base = points[0]
    rows = [[p[i] - base[i] for i in range(len(base))] for p in points[1:]]
    rank = 0
    cols = len(base)
    pivots = {}
    for row in rows:
        row = list(row)
        for pc, prow in pivots.items():
            if row[pc]:
                f = row[pc]
                row = [x - f * y for x, y in zip(row, prow)]
        lead = next((i for i in range(cols) if row[i]), None)
        if lead is not None:
            inv = 1 / row[lead]
            pivots[lead] = [x * inv for x in row]
            rank += 1
    return rank


def _det(rows):
    n = len(rows)
    a = [list(map(Fraction, r)) for r in rows]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            if a[r][col]:
                f = a[r][col] * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det


# -- half-spaces ----------------------------------------------------------------

class HalfSpace:
    """normal . x <= offset with a primitive integer normal."""

    __slots__ = ("normal", "offset")

    def __init__(self, normal, offset):
        normal = [Fraction(x) for x in normal]
        if all(x == 0 for x in normal):
            raise ValueError("half-space normal must be nonzero")
        mult = 1
        for x in normal:
            mult = mult * x.denominator // gcd(mult, x.denominator)
        ints = [int(x * mult) for x in normal]
        g = 0
        for x in ints:
            g = gcd(g, abs(x))
        object.__setattr__(self, "normal", tuple(x // g for x in ints))
        object.__setattr__(self, "offset", Fraction(offset) * mult / g)

    def __setattr__(self, name, value):
        raise AttributeError("HalfSpace is immutable")

    def evaluate(self, point):
        return sum(n * x for n, x in zip(self.normal, point)) - self.offset

    def key(self):
        return (self.normal, self.offset)

    def hyperplane_key(self):
        for x in self.normal:
            if x:
                if x < 0:
                    return (tuple(-v for v in self.normal), -self.offset)
                return (self.normal, self.offset)
        raise AssertionError("zero normal")

    def flipped(self):
        return HalfSpace(tuple(-v for v in self.normal), -self.offset)

    def __eq__(self, other):
        return isinstance(other, HalfSpace) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "HalfSpace(%s . x <= %s)" % (list(self.normal), self.offset)


# -- convex polytopes -------------------------------------------------------------

class ConvexPoly:
    """Bounded intersection of half-spaces with enumerated vertices."""

    def __init__(self, dim, halfspaces):
        self.dim = dim
        seen = {}
        for hs in halfspaces:
            k = hs.key()
            if k not in seen:
                seen[k] = hs
        self.halfspaces = list(seen.values())
        self.vertices = self._enumerate_vertices()
        self._reduce()

    def _enumerate_vertices(self):
        n = self.dim
        pts = set()
        for combo in combinations(self.halfspaces, n):
            rows = [hs.normal for hs in combo]
            rhs = [hs.offset for hs in combo]
            p = _solve_square(rows, rhs)
            if p is None:
                continue
            if all(hs.evaluate(p) <= 0 for hs in self.halfspaces):
                pts.add(p)
        return tuple(sorted(pts))

    def _reduce(self):
        if not self.vertices:
            self.halfspaces = list(self.halfspaces)
            return
        if self.affine_dim() < self.dim:
            return
        kept = []
        for hs in self.halfspaces:
            tight = [v for v in self.vertices if hs.evaluate(v) == 0]
            if _affine_rank(tight) == self.dim - 1:
                kept.append(hs)
        self.halfspaces = kept

    def is_empty(self):
        return not self.vertices

    def affine_dim(self):
        return _affine_rank(list(self.vertices))

    def is_full_dim(self):
        return self.affine_dim() == self.dim

    def interior_point(self):
        k = len(self.vertices)
        return tuple(sum(v[i] for v in self.vertices) / k for i in range(self.dim))

    def contains_point(self, p):
        return all(hs.evaluate(p) <= 0 for hs in self.halfspaces)

    def intersect(self, other):
        return ConvexPoly(self.dim, self.halfspaces + other.halfspaces)

    def split(self, hyperplane):
        """(piece below, piece above); either may be empty or lower-dim."""
        below = ConvexPoly(self.dim, self.halfspaces + [hyperplane])
        above = ConvexPoly(self.dim, self.halfspaces + [hyperplane.flipped()])
        return below, above

    def properly_cut_by(self, hyperplane):
        vals = [hyperplane.evaluate(v) for v in self.vertices]
        return any(v < 0 for v in vals) and any(v > 0 for v in vals)

    def bbox(self):
        return tuple((min(v[i] for v in self.vertices), max(v[i] for v in self.vertices))
                     for i in range(self.dim))

    # -- measures -------------------------------------------------------------

    def volume(self):
        if not self.is_full_dim():
            return Fraction(0)
        n = self.dim
        if n == 1:
            lo, hi = self.bbox()[0]
            return hi - lo
        c = self.interior_point()
        total = Fraction(0)
        for facet in self.facet_vertex_sets():
            for tri in _fan(facet):
                rows = [[p[i] - c[i] for i in range(n)] for p in tri]
                total += abs(_det(rows))
        return total / _factorial(n)

    def centroid(self):
        """Exact mass center of the polytope (or of a lower-dim face)."""
        return polytope_centroid(list(self.vertices))

    def facet_vertex_sets(self):
        """Vertex tuples of the facets, ordered cyclically for dim 3."""
        out = []
        if self.dim == 1:
            return [(v,) for v in self.vertices]
        for hs in self.halfspaces:
            tight = [v for v in self.vertices if hs.evaluate(v) == 0]
            if _affine_rank(tight) == self.dim - 1:
                if self.dim == 3:
                    tight = _order_polygon(tight)
                out.append(tuple(tight))
        return out

    def faces(self):
        """faces[k] = list of vertex tuples of the k-faces."""
        n = self.dim
        by_dim = [[] for _ in range(n + 1)]
        by_dim[0] = [(v,) for v in self.vertices]
        by_dim[n] = [tuple(self.vertices)]
        if n >= 2:
            facets = []
            seen = set()
            for hs in self.halfspaces:
                tight = tuple(sorted(v for v in self.vertices if hs.evaluate(v) == 0))
                if _affine_rank(list(tight)) == n - 1 and tight not in seen:
                    seen.add(tight)
                    facets.append(tight)
            by_dim[n - 1] = facets
        if n == 3:
            edges = set()
            for fa, fb in combinations(by_dim[2], 2):
                common = tuple(sorted(set(fa) & set(fb)))
                if len(common) >= 2 and _affine_rank(list(common)) == 1:
                    edges.add(common)
            by_dim[1] = sorted(edges)
        return by_dim

    def __repr__(self):
        return "ConvexPoly(dim=%d, %d facets, %d vertices)" % (
            self.dim, len(self.halfspaces), len(self.vertices))


def _factorial(n):
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def _fan(ordered_vertices):
    """Cone bases of a fan: segments stay whole, polygons split from v0."""
    vs = list(ordered_vertices)
    if len(vs) < 2:
        return []
    if len(vs) == 2:
        return [tuple(vs)]
    return [(vs[0], vs[i], vs[i + 1]) for i in range(1, len(vs) - 1)]


def _order_polygon(points):
    """Cyclic order of coplanar points around their average, exactly."""
    k = len(points)
    c = tuple(sum(p[i] for p in points) / k for i in range(len(points[0])))
    base = points[0]
    u = tuple(base[i] - c[i] for i in range(len(c)))
    # second in-plane direction: any point not collinear with u
    w = None
    for p in points[1:]:
        cand = tuple(p[i] - c[i] for i in range(len(c)))
        if _affine_rank([tuple(0 for _ in c), u, cand]) == 2:
            w = cand
            break
    if w is None:
        return sorted(points)

    def coords(p):
        # coordinates of p - c in the (u, w) frame via exact solves
        rows = []
        rhs = []
        for i in range(len(c)):
            rows.append([u[i], w[i]])
            rhs.append(p[i] - c[i])
        # pick two independent rows
        for i, j in combinations(range(len(rows)), 2):
            sol = _solve_square([rows[i], rows[j]], [rhs[i], rhs[j]])
            if sol is not None:
                if all(rows[k2][0] * sol[0] + rows[k2][1] * sol[1] == rhs[k2]
                       for k2 in range(len(rows))):
                    return sol
        raise AssertionError("point not in the plane of the polygon")

    def half(xy):
        x, y = xy
        if y > 0 or (y == 0 and x > 0):
            return 0
        return 1

    pts = [(p, coords(p)) for p in points]

    import functools

    def cmp(a, b):
        (pa, ca), (pb, cb) = a, b
        ha, hb = half(ca), half(cb)
        if ha != hb:
            return -1 if ha < hb else 1
        cross = ca[0] * cb[1] - ca[1] * cb[0]
        if cross > 0:
            return -1
        if cross < 0:
            return 1
        return 0

    pts.sort(key=functools.cmp_to_key(cmp))
    return [p for p, _ in pts]


def polytope_centroid(points):
    """Mass center of conv(points), exact, any affine dimension <= 3."""
    k = _affine_rank(points)
    if k <= 0:
        return points[0]
    if k == 1:
        lo = min(points)
        hi = max(points)
        return tuple((a + b) / 2 for a, b in zip(lo, hi))
    base = points[0]
    # coordinates in an exact affine frame of the span
    basis = []
    for p in points[1:]:
        cand = tuple(p[i] - base[i] for i in range(len(base)))
        if _affine_rank([tuple(0 for _ in base)] + [tuple(b) for b in basis] + [cand]) > len(basis):
            basis.append(cand)
    coords = []
    for p in points:
        rhs = [p[i] - base[i] for i in range(len(base))]
        rows = [[b[i] for b in basis] for i in range(len(base))]
        sol = None
        for idxs in combinations(range(len(base)), len(basis)):
            sub_rows = [rows[i] for i in idxs]
            sub_rhs = [rhs[i] for i in idxs]
            cand = _solve_square(sub_rows, sub_rhs)
            if cand is not None and all(
                    sum(rows[i][j] * cand[j] for j in range(len(basis))) == rhs[i]
                    for i in range(len(base))):
                sol = cand
                break
        coords.append(sol)
    if k == 2:
        ordered = _order_polygon(points)
        cmap = {p: c for p, c in zip(points, coords)}
        ordered_coords = [cmap[p] for p in ordered]
        total_w = Fraction(0)
        acc = [Fraction(0)] * len(base)
        for tri in _fan(ordered):
            tc = [cmap[p] for p in tri]
            w = abs(_det([[tc[1][0] - tc[0][0], tc[1][1] - tc[0][1]],
                          [tc[2][0] - tc[0][0], tc[2][1] - tc[0][1]]]))
            if w:
                total_w += w
                for i in range(len(base)):
                    acc[i] += w * sum(p[i] for p in tri) / 3
        _ = ordered_coords
        return tuple(a / total_w for a in acc)
    # k == 3: fan of tetrahedra from the first vertex over facet fans
    poly = ConvexPoly(3, _hull_halfspaces(points))
    c = poly.interior_point()
    total_w = Fraction(0)
    acc = [Fraction(0)] * 3
    for facet in poly.facet_vertex_sets():
        for tri in _fan(facet):
            rows = [[p[i] - c[i] for i in range(3)] for p in tri]
            w = abs(_det(rows))
            if w:
                total_w += w
                for i in range(3):
                    acc[i] += w * (c[i] + sum(p[i] for p in tri)) / 4
    return tuple(a / total_w for a in acc)


def _hull_halfspaces(points):
    """H-rep of the hull of full-dimensional points in R^3 (brute force)."""
    out = []
    for tri in combinations(points, 3):
        base = tri[0]
        u = [tri[1][i] - base[i] for i in range(3)]
        w = [tri[2][i] - base[i] for i in range(3)]
        normal = (u[1] * w[2] - u[2] * w[1],
                  u[2] * w[0] - u[0] * w[2],
                  u[0] * w[1] - u[1] * w[0])
        if all(x == 0 for x in normal):
            continue
        offset = sum(n * x for n, x in zip(normal, base))
        vals = [sum(n * x for n, x in zip(normal, p)) - offset for p in points]
        if all(v <= 0 for v in vals):
            out.append(HalfSpace(normal, offset))
        elif all(v >= 0 for v in vals):
            out.append(HalfSpace([-n for n in normal], -offset))
    return out


# -- simplices ---------------------------------------------------------------------

class Simplex:
    """Affinely independent rational vertices with an orientation sign."""

    def __init__(self, vertices, region_index=None):
        self.vertices = tuple(tuple(Fraction(x) for x in v) for v in vertices)
        n = len(self.vertices) - 1
        base = self.vertices[0]
        rows = [[v[i] - base[i] for i in range(len(base))] for v in self.vertices[1:]]
        if len(base) == n:
            d = _det(rows)
        else:
            d = None
        if _affine_rank(list(self.vertices)) != n:
            raise ValueError("simplex vertices must be affinely independent")
        self.orientation = 0 if d is None else (1 if d > 0 else -1)
        self._det = d
        self.region_index = region_index

    @property
    def dim(self):
        return len(self.vertices) - 1

    def volume(self):
        if self._det is None:
            raise ValueError("volume needs a full-dimensional simplex")
        return abs(self._det) / _factorial(self.dim)

    def as_poly(self):
        n = len(self.vertices[0])
        return ConvexPoly(n, _simplex_halfspaces(self.vertices))

    def centroid(self):
        k = len(self.vertices)
        return tuple(sum(v[i] for v in self.vertices) / k
                     for i in range(len(self.vertices[0])))

    def __repr__(self):
        return "Simplex(dim=%d, orientation=%+d)" % (self.dim, self.orientation or 0)


def _simplex_halfspaces(vertices):
    n = len(vertices[0])
    out = []
    for i in range(len(vertices)):
        rest = [v for j, v in enumerate(vertices) if j != i]
        base = rest[0]
        rows = [[v[k] - base[k] for k in range(n)] for v in rest[1:]]
        normal = _null_direction(rows, n)
        offset = sum(a * b for a, b in zip(normal, base))
        inside = sum(a * b for a, b in zip(normal, vertices[i])) - offset
        if inside > 0:
            normal = [-x for x in normal]
            offset = -offset
        out.append(HalfSpace(normal, offset))
    return out


def _null_direction(rows, n):
    """A nonzero vector orthogonal to the span of the given rows."""
    pivots = {}
    for row in rows:
        row = list(map(Fraction, row))
        for pc, prow in pivots.items():
            if row[pc]:
                f = row[pc]
                row = [x - f * y for x, y in zip(row, prow)]
        lead = next((i for i in range(n) if row[i]), None)
        if lead is not None:
            inv = 1 / row[lead]
            pivots[lead] = [x * inv for x in row]
    free = next(i for i in range(n) if i not in pivots)
    vec = [Fraction(0)] * n
    vec[free] = Fraction(1)
    for pc, prow in pivots.items():
        vec[pc] = -prow[free]
    return vec


def simplices_interiors_disjoint(s1, s2):
    """Exact test that two full-dimensional simplices have disjoint interiors."""
    b1, b2 = s1.as_poly().bbox(), s2.as_poly().bbox()
    for (lo1, hi1), (lo2, hi2) in zip(b1, b2):
        if hi1 <= lo2 or hi2 <= lo1:
            return True
    inter = s1.as_poly().intersect(s2.as_poly())
    return not inter.is_full_dim()


# -- linear regions -----------------------------------------------------------------

class LinearRegion:
    """Compact connected union of convex rational polytopes.

    Construct from union-of-intersections half-space data or from convex
    pieces; boundedness and connectedness are verified.
    """

    def __init__(self, ambient_dim, pieces, check=True):
        self.ambient_dim = ambient_dim
        self.pieces = [p for p in pieces if not p.is_empty()]
        if check:
            if not self.pieces:
                raise ValueError("a linear region must be nonempty")
            for p in self.pieces:
                if not _poly_bounded(p):
                    raise UnboundedRegionError("region piece is unbounded")
            if not _pieces_connected(self.pieces):
                raise ValueError("a linear region must be connected")

    @classmethod
    def from_halfspace_lists(cls, ambient_dim, lists):
        return cls(ambient_dim, [ConvexPoly(ambient_dim, hs) for hs in lists])

    @classmethod
    def box(cls, bounds):
        n = len(bounds)
        hs = []
        for i, (lo, hi) in enumerate(bounds):
            e = [0] * n
            e[i] = 1
            hs.append(HalfSpace([-x for x in e], -Fraction(lo)))
            hs.append(HalfSpace(e, Fraction(hi)))
        return cls(n, [ConvexPoly(n, hs)])

    def is_maximal(self):
        return any(p.is_full_dim() for p in self.pieces)

    def contains_point(self, p):
        return any(piece.contains_point(p) for piece in self.pieces)

    def volume(self):
        return union_volume(self.pieces)

    def contains_poly(self, poly):
        """Exact containment of a convex polytope in this region."""
        return not _poly_minus_cells(poly, self.pieces)

    def interior_overlaps(self, other):
        for a in self.pieces:
            for b in other.pieces:
                if _bbox_overlap(a, b) and a.intersect(b).is_full_dim():
                    return True
        return False

    def touches(self, other):
        for a in self.pieces:
            for b in other.pieces:
                if _bbox_touch(a, b) and not a.intersect(b).is_empty():
                    return True
        return False

    def attached_or_disjoint(self, other):
        """Attached = touching with disjoint interiors (face-lattice sense):
        the intersection then lies inside both boundaries and is a finite
        union of lower-dimensional linear regions, i.e. a union of faces."""
        return not self.interior_overlaps(other)

    def __repr__(self):
        return "LinearRegion(dim=%d, %d pieces)" % (self.ambient_dim, len(self.pieces))


def _bbox_overlap(a, b):
    for (lo1, hi1), (lo2, hi2) in zip(a.bbox(), b.bbox()):
        if hi1 <= lo2 or hi2 <= lo1:
            return False
    return True


def _bbox_touch(a, b):
    for (lo1, hi1), (lo2, hi2) in zip(a.bbox(), b.bbox()):
        if hi1 < lo2 or hi2 < lo1:
            return False
    return True


def _poly_bounded(poly):
    n = poly.dim
    normals = [hs.normal for hs in poly.halfspaces]
    if _affine_rank([tuple([0] * n)] + [tuple(r) for r in normals]) < n:
        return False
    if n == 1:
        dirs = [(1,), (-1,)]
    else:
        dirs = []
        for combo in combinations(normals, n - 1):
            if _affine_rank([tuple([0] * n)] + [tuple(r) for r in combo]) == n - 1:
                d = _null_direction([list(r) for r in combo], n)
                dirs.extend([tuple(d), tuple(-x for x in d)])
    for d in dirs:
        if all(sum(a * b for a, b in zip(hs.normal, d)) <= 0 for hs in poly.halfspaces):
            return False
    return True


def _pieces_connected(pieces):
    k = len(pieces)
    if k <= 1:
        return True
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(k):
            if j not in seen and _bbox_touch(pieces[i], pieces[j]) \
                    and not pieces[i].intersect(pieces[j]).is_empty():
                seen.add(j)
                stack.append(j)
    return len(seen) == k


# -- boolean decompositions ------------------------------------------------------

def _split_by_cells(poly, cells):
    """Refine poly by every facet hyperplane of the given cells."""
    parts = [poly]
    for cell in cells:
        for hs in cell.halfspaces:
            new = []
            for p in parts:
                if p.properly_cut_by(hs):
                    below, above = p.split(hs)
                    for q in (below, above):
                        if q.is_full_dim():
                            new.append(q)
                else:
                    new.append(p)
            parts = new
    return parts


def _poly_minus_cells(poly, cells):
    """Full-dim parts of the closure of poly minus the union of cells."""
    relevant = [c for c in cells if _bbox_overlap(poly, c)
                and poly.intersect(c).is_full_dim()]
    if not relevant:
        return [poly] if poly.is_full_dim() else []
    parts = _split_by_cells(poly, relevant)
    out = []
    for p in parts:
        ip = p.interior_point()
        if not any(c.contains_point(ip) for c in relevant):
            out.append(p)
    return out


def union_volume(cells):
    """Exact volume of a union of convex polytopes."""
    total = Fraction(0)
    placed = []
    for c in cells:
        for p in _poly_minus_cells(c, placed):
            total += p.volume()
        placed.append(c)
    return total


def _group_components(cells):
    k = len(cells)
    parent = list(range(k))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(k):
        for j in range(i + 1, k):
            if _bbox_touch(cells[i], cells[j]) and not cells[i].intersect(cells[j]).is_empty():
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[rj] = ri
    groups = {}
    for i in range(k):
        groups.setdefault(find(i), []).append(cells[i])
    return [groups[r] for r in sorted(groups)]


def convex_decompose(region):
    """Interior-disjoint convex pieces whose union is the region.

    Follows the sign-pattern refinement: each piece is split by the
    defining hyperplanes of the other pieces, and duplicated cells in the
    overlaps are kept once.
    """
    pieces = [p for p in region.pieces if p.is_full_dim()]
    disjoint = True
    for a, b in combinations(pieces, 2):
        if _bbox_overlap(a, b) and a.intersect(b).is_full_dim():
            disjoint = False
            break
    if disjoint:
        return list(pieces)
    cells = []
    for i, p in enumerate(pieces):
        others = [q for j, q in enumerate(pieces) if j != i]
        for part in _split_by_cells(p, others):
            ip = part.interior_point()
            # drop duplicates: keep a shared cell only for its first owner
            owners = [j for j, q in enumerate(pieces) if q.contains_point(ip)]
            if owners[0] == i:
                cells.append(part)
    return cells


def attach_decompose(regions):
    """Refine regions until they are pairwise attached or disjoint.

    Repeatedly replaces an interior-overlapping pair by the maximal
    connected components of the intersection and of the two closed
    differences.  The union, the containment in the inputs, and the union
    of boundaries are preserved.
    """
    if not regions:
        return []
    dim = regions[0].ambient_dim
    for r in regions:
        if r.ambient_dim != dim:
            raise ValueError("mixed ambient dimensions")
        if not r.is_maximal():
            raise ValueError("attach_decompose needs maximal regions")
        for p in r.pieces:
            if not _poly_bounded(p):
                raise UnboundedRegionError("unbounded region")

    work = [convex_decompose(r) for r in regions]
    while True:
        pair = None
        for i in range(len(work)):
            for j in range(i + 1, len(work)):
                for a in work[i]:
                    for b in work[j]:
                        if _bbox_overlap(a, b) and a.intersect(b).is_full_dim():
                            pair = (i, j)
                            break
                    if pair:
                        break
                if pair:
                    break
            if pair:
                break
        if pair is None:
            break
        i, j = pair
        ri, rj = work[i], work[j]
        inter = []
        for a in ri:
            for b in rj:
                if _bbox_overlap(a, b):
                    c = a.intersect(b)
                    if c.is_full_dim():
                        inter.append(c)
        di = []
        for a in ri:
            di.extend(_poly_minus_cells(a, rj))
        dj = []
        for b in rj:
            dj.extend(_poly_minus_cells(b, ri))
        new_groups = []
        for cells in (inter, di, dj):
            if cells:
                new_groups.extend(_group_components(cells))
        work = [w for k, w in enumerate(work) if k not in (i, j)] + new_groups
    return [LinearRegion(dim, cells, check=False) for cells in work]


# -- triangulation ------------------------------------------------------------------

def _is_common_face(P, C):
    """Is the polytope P a face of the polytope C?  (P must be inside C.)"""
    tight = [hs for hs in C.halfspaces
             if all(hs.evaluate(v) == 0 for v in P.vertices)]
    if not tight:
        return set(P.vertices) >= set(C.vertices)
    fverts = [v for v in C.vertices if all(hs.evaluate(v) == 0 for hs in tight)]
    return all(P.contains_point(v) for v in fverts)


def _strictly_compatible(cells):
    """Split cells until any two meet in a common face of both."""
    cells = list(cells)
    changed = True
    while changed:
        changed = False
        k = len(cells)
        for i in range(k):
            for j in range(i + 1, k):
                (ri, a), (rj, b) = cells[i], cells[j]
                if not _bbox_touch(a, b):
                    continue
                inter = a.intersect(b)
                if inter.is_empty():
                    continue
                if inter.is_full_dim():
                    raise NotAttachedError("regions overlap in the interior")
                if _is_common_face(inter, a) and _is_common_face(inter, b):
                    continue
                na = _split_by_cells(a, [b])
                nb = _split_by_cells(b, [a])
                cells = (cells[:i] + cells[i + 1:j] + cells[j + 1:]
                         + [(ri, p) for p in na] + [(rj, p) for p in nb])
                changed = True
                break
            if changed:
                break
    return cells


def _flag_simplices(cell, region_index):
    """Barycentric flag triangulation of one convex cell."""
    faces = cell.faces()
    n = cell.dim
    centroids = {}
    for k in range(n + 1):
        for f in faces[k]:
            centroids[f] = polytope_centroid(list(f))
    chains = [[f] for f in faces[0]]
    for k in range(1, n + 1):
        new = []
        for chain in chains:
            tail = set(chain[-1])
            for f in faces[k]:
                if tail <= set(f):
                    new.append(chain + [f])
        chains = new
    out = []
    for chain in chains:
        out.append(Simplex([centroids[f] for f in chain], region_index))
    return out


def triangulate(regions):
    """Barycentric triangulation of pairwise attached-or-disjoint regions.

    Simplices have disjoint interiors, cover the union exactly, and each
    lies in a single region; barycenters are exact mass centers.
    """
    for a, b in combinations(regions, 2):
        if not a.attached_or_disjoint(b):
            raise NotAttachedError("regions must be pairwise attached or disjoint")
    cells = []
    for ri, region in enumerate(regions):
        for c in convex_decompose(region):
            cells.append((ri, c))
    cells = _strictly_compatible(cells)
    out = []
    for ri, c in cells:
        out.extend(_flag_simplices(c, ri))
    return out


# -- prism decomposition -------------------------------------------------------------

def standard_simplex_vertices(n):
    """The canonical n-simplex conv(0, e_1, ..., e_n) in R^n."""
    vs = [tuple(Fraction(0) for _ in range(n))]
    for i in range(n):
        v = [Fraction(0)] * n
        v[i] = Fraction(1)
        vs.append(tuple(v))
    return vs


def prism_decompose(n):
    """The shuffle decomposition of (n-simplex) x [0,1].

    Returns the n+1 signed (n+1)-simplices [a_0..a_i, b_i..b_n] with
    I_i = (-1)^i; the signed boundary telescopes to
    (top) - (bottom) - (prism over the boundary).
    """
    base = standard_simplex_vertices(n)
    a = [v + (Fraction(0),) for v in base]
    b = [v + (Fraction(1),) for v in base]
    out = []
    for i in range(n + 1):
        verts = a[:i + 1] + b[i:]
        out.append((Simplex(verts), (-1) ** i))
    return out


# -- adapted subdivisions of measurable prisms -----------------------------------------

class Box:
    """Axis-aligned box with per-end open/closed flags."""

    def __init__(self, intervals):
        self.intervals = []
        for iv in intervals:
            lo, hi, lo_closed, hi_closed = iv
            self.intervals.append((Fraction(lo), Fraction(hi),
                                   bool(lo_closed), bool(hi_closed)))

    @classmethod
    def half_open(cls, bounds):
        """[lo, hi) on every axis."""
        return cls([(lo, hi, True, False) for lo, hi in bounds])

    @property
    def dim(self):
        return len(self.intervals)

    def contains_point(self, p):
        for x, (lo, hi, lc, hc) in zip(p, self.intervals):
            if x < lo or (x == lo and not lc):
                return False
            if x > hi or (x == hi and not hc):
                return False
        return True

    def contains_closed_ranges(self, ranges):
        """Does the box contain the closed product of [a, b] ranges?"""
        for (a, b), (lo, hi, lc, hc) in zip(ranges, self.intervals):
            if a < lo or (a == lo and not lc):
                return False
            if b > hi or (b == hi and not hc):
                return False
        return True

    def __repr__(self):
        parts = []
        for lo, hi, lc, hc in self.intervals:
            parts.append("%s%s, %s%s" % ("[" if lc else "(", lo, hi, "]" if hc else ")"))
        return "Box(%s)" % " x ".join(parts)


class AdaptedBlock:
    def __init__(self, atoms, trace, cells, simplices):
        self.atoms = tuple(sorted(atoms))
        self.trace = tuple(sorted(trace))
        self.cells = cells          # list of (ConvexPoly, covering box index)
        self.simplices = simplices  # list of (Simplex, covering box index)

    def __repr__(self):
        return "AdaptedBlock(atoms=%s, %d cells)" % (list(self.atoms), len(self.cells))


def _simplex_domain(n):
    hs = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        hs.append(HalfSpace([-x for x in e], 0))
    hs.append(HalfSpace([1] * n, 1))
    return ConvexPoly(n, hs)


def _check_block_coverage(n, boxes):
    """Exact coverage of the closed simplex by a family of boxes.

    Stratify by all box walls per axis; every stratum meeting the simplex
    must lie in one box.  Returns a witness point on failure.
    """
    values = []
    for k in range(n):
        vals = {Fraction(0), Fraction(1)}
        for box in boxes:
            lo, hi, _, _ = box.intervals[k]
            for v in (lo, hi):
                if 0 <= v <= 1:
                    vals.add(v)
        values.append(sorted(vals))
    elements = []
    for k in range(n):
        elems = [("pt", v) for v in values[k]]
        elems += [("iv", a, b) for a, b in zip(values[k], values[k][1:])]
        elements.append(elems)

    def rec(k, chosen):
        if k == n:
            lows = [c[1] for c in chosen]
            n_iv = sum(1 for c in chosen if c[0] == "iv")
            s = sum(lows)
            if s > 1 or (s == 1 and n_iv > 0):
                return None
            # candidate point: lo + eps on interval axes
            if n_iv:
                slack = Fraction(1) - s
                caps = [c[2] - c[1] for c in chosen if c[0] == "iv"]
                eps = min([slack / (2 * n_iv)] + [c / 2 for c in caps])
                if eps <= 0:
                    return None
            else:
                eps = Fraction(0)
            point = tuple(c[1] + (eps if c[0] == "iv" else 0) for c in chosen)
            for box in boxes:
                ok = True
                for (lo, hi, lc, hc), c in zip(box.intervals, chosen):
                    if c[0] == "pt":
                        x = c[1]
                        if x < lo or (x == lo and not lc) or x > hi or (x == hi and not hc):
                            ok = False
                            break
                    else:
                        a, b = c[1], c[2]
                        if a < lo or (a == lo and not lc) or b > hi:
                            ok = False
                            break
                if ok:
                    return None
            return point
        for elem in elements[k]:
            w = rec(k + 1, chosen + [elem])
            if w is not None:
                return w
        return None

    return rec(0, [])


def adapted_subdivision(cover, atoms, dim=1):
    """Blocks of atoms with identical cover traces plus per-block
    triangulations of the simplex refining the trace.

    cover is a list of (Box, atom collection) pairs over the product of
    the standard dim-simplex with the atoms; every fiber must be covered
    (CoverageError with a witness point otherwise).
    """
    atoms = list(atoms)
    for box, _ in cover:
        if box.dim != dim:
            raise ValueError("box dimension does not match the simplex")
    trace_of = {}
    for t in atoms:
        trace_of[t] = frozenset(i for i, (_, s) in enumerate(cover) if t in set(s))
    blocks = {}
    for t in atoms:
        blocks.setdefault(trace_of[t], []).append(t)

    domain = _simplex_domain(dim)
    out = []
    for trace in sorted(blocks, key=lambda tr: min(blocks[tr])):
        batoms = blocks[trace]
        boxes = [cover[i][0] for i in sorted(trace)]
        box_ids = sorted(trace)
        witness = _check_block_coverage(dim, boxes)
        if witness is not None:
            raise CoverageError(
                "cover misses the fiber of atom %s at %s"
                % (min(batoms), [str(x) for x in witness]), witness)
        cells = _block_cells(dim, domain, boxes, box_ids)
        if dim == 1:
            cells = _merge_1d(cells, boxes, box_ids)
        simplices = []
        for poly, bid in cells:
            if dim == 1:
                lo, hi = poly.bbox()[0]
                simplices.append((Simplex([(lo,), (hi,)]), bid))
            else:
                for s in _flag_simplices(poly, None):
                    simplices.append((s, bid))
        out.append(AdaptedBlock(batoms, trace, cells, simplices))
    return out


def _block_cells(n, domain, boxes, box_ids):
    values = []
    for k in range(n):
        vals = {Fraction(0), Fraction(1)}
        for box in boxes:
            lo, hi, _, _ = box.intervals[k]
            for v in (lo, hi):
                if 0 < v < 1:
                    vals.add(v)
        vals = sorted(vals)
        mids = [(a + b) / 2 for a, b in zip(vals, vals[1:])]
        values.append(sorted(set(vals) | set(mids)))

    def cells_rec(k, ranges):
        if k == n:
            yield list(ranges)
            return
        for a, b in zip(values[k], values[k][1:]):
            yield from cells_rec(k + 1, ranges + [(a, b)])

    out = []
    for ranges in cells_rec(0, []):
        hs = []
        for i, (a, b) in enumerate(ranges):
            e = [0] * n
            e[i] = 1
            hs.append(HalfSpace([-x for x in e], -a))
            hs.append(HalfSpace(e, b))
        poly = ConvexPoly(n, hs + list(domain.halfspaces))
        if not poly.is_full_dim():
            continue
        actual = poly.bbox()
        owner = None
        for bid, box in zip(box_ids, boxes):
            if box.contains_closed_ranges(actual):
                owner = bid
                break
        if owner is None:
            raise CoverageError(
                "no closed refinement: cell at %s fits no cover box"
                % ([ (str(a), str(b)) for a, b in actual],),
                poly.interior_point())
        out.append((poly, owner))
    return out


def _merge_1d(cells, boxes, box_ids):
    """Greedy merge of adjacent 1D cells that still fit one box."""
    cells = sorted(cells, key=lambda c: c[0].bbox()[0][0])
    merged = []
    for poly, bid in cells:
        lo, hi = poly.bbox()[0]
        if merged:
            plo, phi, pbid = merged[-1]
            if phi == lo:
                joined = None
                for cid, box in zip(box_ids, boxes):
                    if box.contains_closed_ranges([(plo, hi)]):
                        joined = cid
                        break
                if joined is not None:
                    merged[-1] = (plo, hi, joined)
                    continue
        merged.append((lo, hi, bid))
    out = []
    for lo, hi, bid in merged:
        hs = [HalfSpace([-1], -lo), HalfSpace([1], hi)]
        out.append((ConvexPoly(1, hs), bid))
    return out
