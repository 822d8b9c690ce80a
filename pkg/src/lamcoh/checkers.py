"""Covering-based theorem checkers: Mayer-Vietoris and excision.

Open covers are modeled by face-closed subcomplex covers; both checkers
work by exact rank bookkeeping over Q and Z2.
"""

from .cohomology import (CohomologyGroup, ExactnessReport, SequenceNode,
                         _compose_zero, _matrix_rank, _transfer)
from .complexes import (Cochain, EXACT_KINDS, apply_coboundary,
                        subcomplex_as_complex)


class CoverError(ValueError):
    pass


def mayer_vietoris_check(X, U, V, kinds=EXACT_KINDS):
    """Exactness of ... -> Hn(X) -> Hn(U) + Hn(V) -> Hn(U int V) -> ...

    U and V must be face-closed and cover X instance-wise.
    """
    if not U.is_face_closed() or not V.is_face_closed():
        raise CoverError("cover pieces must be face-closed")
    if not U.union(V).covers():
        raise CoverError("U and V must cover the complex")
    I = U.intersection(V)
    XU = subcomplex_as_complex(U)
    XV = subcomplex_as_complex(V)
    XI = subcomplex_as_complex(I)

    nodes = []
    for kind in kinds:
        D = X.top_dim + 2
        H_X = [CohomologyGroup(X, n, kind) for n in range(D + 1)]
        H_U = [CohomologyGroup(XU, n, kind) for n in range(D + 1)]
        H_V = [CohomologyGroup(XV, n, kind) for n in range(D + 1)]
        H_I = [CohomologyGroup(XI, n, kind) for n in range(D + 1)]

        phi_mats, psi_mats, d_mats = [], [], []
        for n in range(D + 1):
            # phi: restriction to U and to V, into the direct-sum basis
            phi_cols = []
            for vec in H_X[n].basis:
                coch = H_X[n].cochain_from_vector(vec)
                cu = H_U[n].coords([coch.get(*inst) for inst in H_U[n].cols])
                cv = H_V[n].coords([coch.get(*inst) for inst in H_V[n].cols])
                phi_cols.append(list(cu) + list(cv))
            phi_mats.append(phi_cols)

            # psi: difference of restrictions to the intersection
            psi_cols = []
            for vec in H_U[n].basis:
                coch = H_U[n].cochain_from_vector(vec)
                psi_cols.append(H_I[n].coords(
                    [coch.get(*inst) for inst in H_I[n].cols]))
            for vec in H_V[n].basis:
                coch = H_V[n].cochain_from_vector(vec)
                r = H_I[n].coords([coch.get(*inst) for inst in H_I[n].cols])
                if kind == "z2":
                    psi_cols.append([x % 2 for x in r])
                else:
                    psi_cols.append([-x for x in r])
            psi_mats.append(psi_cols)

            # connecting map: extend a cocycle on the intersection by zero
            # into U, take the coboundary in X, read it on X (it vanishes
            # on the intersection, and is zero outside U by construction)
            d_cols = []
            if n < D:
                for vec in H_I[n].basis:
                    on_u = _transfer(X, H_I[n].cochain_from_vector(vec))
                    da = apply_coboundary(X, on_u)
                    glued = _restrict_support(X, da, U)
                    d_cols.append(H_X[n + 1].coords(
                        H_X[n + 1].vector_from_cochain(glued)))
            d_mats.append(d_cols)

        for n in range(D + 1):
            incoming = d_mats[n - 1] if n > 0 else []
            sum_dim = H_U[n].dim + H_V[n].dim
            nodes.append(_mv_node(kind, n, "H(X)", incoming, phi_mats[n], H_X[n].dim))
            nodes.append(_mv_node(kind, n, "H(U)+H(V)", phi_mats[n], psi_mats[n], sum_dim))
            nodes.append(_mv_node(kind, n, "H(UintV)", psi_mats[n], d_mats[n], H_I[n].dim))
    return ExactnessReport(nodes)


def _restrict_support(X, cochain, sub):
    vals = []
    for fi, d in enumerate(cochain.values):
        vals.append({t: v for t, v in d.items()
                     if sub.contains(cochain.degree, fi, t)})
    return Cochain(X, cochain.degree, cochain.kind, vals)


def _mv_node(kind, degree, name, incoming_cols, outgoing_cols, dim):
    rank_in = _matrix_rank(incoming_cols, kind)
    rank_out = _matrix_rank(outgoing_cols, kind)
    ker_out = dim - rank_out
    composite_ok = True
    if incoming_cols and outgoing_cols:
        composite_ok = _compose_zero(outgoing_cols, incoming_cols, kind)
    ok = (rank_in == ker_out) and composite_ok
    detail = "%s: im=%d ker=%d dim=%d" % (kind, rank_in, ker_out, dim)
    return SequenceNode(degree, name, ok, detail)


class ExcisionResult:
    def __init__(self, dims_pair, dims_excised, kind):
        self.dims_pair = list(dims_pair)
        self.dims_excised = list(dims_excised)
        self.kind = kind

    @property
    def equal(self):
        return self.dims_pair == self.dims_excised

    def __repr__(self):
        return "ExcisionResult(%s: %s vs %s, %s)" % (
            self.kind, self.dims_pair, self.dims_excised,
            "equal" if self.equal else "DIFFER")


def excision_check(X, U, Z, kinds=EXACT_KINDS):
    """Compare H*(X, U) with H*(X-Z, U-Z) computed on the excised complex.

    Z must sit inside U and its removal must leave a face-closed complex.
    """
    if not U.is_face_closed():
        raise ValueError("U must be face-closed")
    if not U.covers(Z):
        raise ValueError("Z must be contained in U")
    from .complexes import Subcomplex
    full = Subcomplex.full(X)
    remaining = full.difference(Z)
    if not remaining.is_face_closed():
        raise ValueError("removing Z breaks face-closure")
    XZ = subcomplex_as_complex(remaining)
    UZ = Subcomplex(XZ, [[set(a) for a in row]
                         for row in U.difference(Z).selection])
    results = []
    for kind in kinds:
        D = X.top_dim + 1
        dims_pair = [CohomologyGroup(X, n, kind, U).dim for n in range(D + 1)]
        dims_exc = [CohomologyGroup(XZ, n, kind, UZ).dim for n in range(D + 1)]
        results.append(ExcisionResult(dims_pair, dims_exc, kind))
    return results
