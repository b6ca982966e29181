"""The stable category of a self-injective algebra.

Projective covers come from top generators. Injective envelopes and
cosyzygies are computed through the duality D = Hom(-, F_p), which turns
right modules over A into right modules over the opposite algebra:
Omega^{-1} M = D Omega(D M) and tau^{-1} M = D tau(D M).

Ext^1(N, X) is Hom(Omega N, X) modulo the maps that extend along the
inclusion Omega N -> P(N). A class phi is realised by the pushout
(P(N) + X) / {(i x, -phi x)}, which sits in 0 -> X -> E -> N -> 0.
"""

from dataclasses import dataclass, field

import numpy as np

from . import fp
from .algebra import selfinjectivity_report
from .decompose import (end_with_radical, indecomposable_summands, is_isomorphic,
                        is_projective_indec, strip_projectives)
from .errors import NotSelfInjective, ProjectiveInput, NonSplitResidue
from .rep import (Rep, cokernel, compose, direct_sum, extend_from_generators, flatten,
                  generators, hom_space, is_injective_map, is_surjective_map, kernel,
                  radical_spaces, sum_injections, unflatten)


def dual(M):
    """D M as a module over the opposite algebra."""
    Aop = M.A.opposite
    return Rep(Aop, M.dims, [m.T.copy() for m in M.mats], check=False)


def dual_map(f):
    return [fv.T.copy() for fv in f]


def _require_selfinjective(A):
    if not selfinjectivity_report(A).is_self_injective:
        raise NotSelfInjective("algebra %s is not self-injective" % A.name)


@dataclass
class CoverData:
    module: Rep
    cover: Rep
    map: list
    kernel_or_cokernel: Rep
    side: str
    inclusion: list = None      # Omega M -> cover (projective side)
    summand_vertices: list = field(default_factory=list)


def projective_cover(M):
    if "pcover" in M._cache:
        return M._cache["pcover"]
    A, p = M.A, M.p
    gens = generators(M)
    parts = [A.projective(v) for v, _ in gens]
    if not parts:
        P0 = Rep.zero_maps(A, [0] * A.n_vertices)
        pi = [fp.zeros(M.dims[w], 0) for w in range(A.n_vertices)]
    else:
        P0 = direct_sum(parts)
        pi = []
        for w in range(A.n_vertices):
            cols = []
            for (v, m), P in zip(gens, parts):
                for i in P._cache["path_labels"][w]:
                    cols.append(fp.mul(M.path_matrix(i), m.reshape(-1, 1), p)[:, 0])
            pi.append(np.column_stack(cols) % p if cols else fp.zeros(M.dims[w], 0))
    K, incl = kernel(P0, pi)
    cd = CoverData(M, P0, pi, K, "projective", incl, [v for v, _ in gens])
    M._cache["pcover"] = cd
    return cd


def injective_envelope(M):
    _require_selfinjective(M.A)
    cd = projective_cover(dual(M))
    I = dual(cd.cover)
    iota = dual_map(cd.map)
    C, proj = cokernel(I, iota)
    return CoverData(M, I, iota, C, "injective")


def cover(M, side="projective"):
    if side == "projective":
        return projective_cover(M)
    if side == "injective":
        return injective_envelope(M)
    raise ValueError("side must be projective or injective")


def cover_is_minimal(cd):
    """Projective side: kernel inside rad(cover). Injective side: the
    embedding is injective and essential (socle of the cover is hit)."""
    p = cd.module.p
    if cd.side == "projective":
        rad = radical_spaces(cd.cover)
        return (is_surjective_map(cd.map, p) and
                all(fp.rank(np.hstack([r, k]), p) == r.shape[1]
                    for r, k in zip(rad, cd.inclusion)))
    from .rep import socle_spaces
    soc = socle_spaces(cd.cover)
    if not is_injective_map(cd.map, p):
        return False
    # essential: every socle vector of the cover lies in the image
    return all(fp.rank(np.hstack([f, s]), p) == fp.rank(f, p) if f.size else s.shape[1] == 0
               for f, s in zip(cd.map, soc))


def omega(M):
    """Omega M with projective summands removed."""
    if "omega" not in M._cache:
        _require_selfinjective(M.A)
        M._cache["omega"] = strip_projectives(projective_cover(M).kernel_or_cokernel)
    return M._cache["omega"]


def omega_inv(M):
    if "omega_inv" not in M._cache:
        _require_selfinjective(M.A)
        M._cache["omega_inv"] = dual(omega(dual(M)))
    return M._cache["omega_inv"]


def syzygy(M, k=1):
    if k == 0:
        raise ValueError("k must be nonzero")
    X = strip_projectives(M)
    for _ in range(abs(k)):
        X = omega(X) if k > 0 else omega_inv(X)
    return X


def left_mult(A, a, s, t):
    """Left multiplication by the arrow a: s -> t as a map P(t) -> P(s)."""
    Pt, Ps = A.projective(t), A.projective(s)
    lt, ls = Pt._cache["path_labels"], Ps._cache["path_labels"]
    f = []
    for w in range(A.n_vertices):
        m = fp.zeros(len(ls[w]), len(lt[w]))
        pos = {i: k for k, i in enumerate(ls[w])}
        for col, i in enumerate(lt[w]):
            r = A.reduce_word((a,) + A.basis[i].word)
            if r is not None:
                c, word = r
                m[pos[A.index[(s, word)]], col] = c
        f.append(m)
    return f


def nakayama_functor(M):
    """nu M = D Hom_A(M, A) with A decomposed as the sum of the P(v)."""
    if "nu" in M._cache:
        return M._cache["nu"]
    A, p = M.A, M.p
    q = A.quiver
    homs = [hom_space(M, A.projective(v)) for v in range(A.n_vertices)]
    dims = [h.dim for h in homs]
    mats = []
    for a in range(len(q.arrows)):
        s, t = q.src[a], q.tgt[a]
        lam = left_mult(A, a, s, t)
        L = fp.zeros(dims[s], dims[t])
        for k in range(dims[t]):
            L[:, k] = homs[s].coords(compose(homs[t].map(k), lam, p))
        mats.append(L.T.copy())
    N = Rep(A, dims, mats, check=False)
    M._cache["nu"] = N
    return N


def nakayama_inverse(M):
    """nu^{-1} M = D nu_{A^op}(D M)."""
    return dual(nakayama_functor(dual(M)))


def tau(M, sign=1):
    _require_selfinjective(M.A)
    X = strip_projectives(M)
    if X.dim == 0:
        raise ProjectiveInput("tau of a projective module")
    key = "tau" if sign > 0 else "tau_inv"
    if key not in X._cache:
        if sign > 0:
            X._cache[key] = strip_projectives(nakayama_functor(omega(omega(X))))
        else:
            X._cache[key] = dual(tau(dual(X), 1))
    return X._cache[key]


class QuotientSpace:
    """A Hom space modulo a subspace, with coset coordinates."""

    def __init__(self, H, sub_coords):
        p = H.source.p
        self.H = H
        self.p = p
        d = H.dim
        sub = fp.colspace(sub_coords, p) if sub_coords.shape[1] else fp.zeros(d, 0)
        comp = fp.complement(sub, d, p) if d else fp.zeros(0, 0)
        self.sub = sub
        self.comp = comp
        self._inv = fp.inverse(np.hstack([sub, comp]), p) if d else fp.zeros(0, 0)

    @property
    def full_dim(self):
        return self.H.dim

    @property
    def sub_dim(self):
        return self.sub.shape[1]

    @property
    def dim(self):
        return self.comp.shape[1]

    def rep(self, coeffs):
        """A map representing the class with the given quotient coordinates."""
        x = fp.mul(self.comp, np.asarray(coeffs, dtype=fp.DTYPE).reshape(-1, 1), self.p)[:, 0]
        return self.H.combine(x)

    def basis(self):
        return [self.H.combine(self.comp[:, k]) for k in range(self.dim)]

    def class_of(self, f):
        x = self.H.coords(f)
        y = fp.mul(self._inv, x.reshape(-1, 1), self.p)[:, 0]
        return y[self.sub_dim:]


@dataclass
class StableHom:
    source: Rep
    target: Rep
    full_dim: int
    proj_factor_dim: int
    space: QuotientSpace

    @property
    def stable_dim(self):
        return self.full_dim - self.proj_factor_dim

    @property
    def stable_basis(self):
        return self.space.basis()

    def to_json(self):
        return {"full_dim": self.full_dim, "proj_factor_dim": self.proj_factor_dim,
                "stable_dim": self.stable_dim}


def sthom(M, N):
    cache = M._cache.setdefault("sthom", {})
    if id(N) in cache and cache[id(N)][0] is N:
        return cache[id(N)][1]
    p = M.p
    H = hom_space(M, N)
    if H.dim == 0:
        sh = StableHom(M, N, 0, 0, QuotientSpace(H, fp.zeros(0, 0)))
    else:
        cd = projective_cover(N)
        HP = hom_space(M, cd.cover)
        cols = [H.coords(compose(HP.map(k), cd.map, p)) for k in range(HP.dim)]
        sub = np.column_stack(cols) if cols else fp.zeros(H.dim, 0)
        q = QuotientSpace(H, sub)
        sh = StableHom(M, N, H.dim, q.sub_dim, q)
    cache[id(N)] = (N, sh)
    return sh


def stable_dim(M, N):
    return sthom(M, N).stable_dim


class Ext1:
    """Ext^1(N, X) as Hom(Omega N, X) modulo restrictions of Hom(P(N), X).

    Here Omega N is the full kernel of the projective cover (not stripped),
    so the inclusion into the cover is available."""

    def __init__(self, N, X):
        _require_selfinjective(N.A)
        p = N.p
        self.N, self.X, self.p = N, X, p
        cd = projective_cover(N)
        self.cd = cd
        self.K = cd.kernel_or_cokernel
        H = hom_space(self.K, X)
        HP = hom_space(cd.cover, X)
        cols = [H.coords(compose(cd.inclusion, HP.map(k), p)) for k in range(HP.dim)]
        sub = np.column_stack(cols) if cols else fp.zeros(H.dim, 0)
        self.space = QuotientSpace(H, sub)

    @property
    def dim(self):
        return self.space.dim

    def cocycle(self, coeffs):
        return self.space.rep(coeffs)

    def middle(self, coeffs):
        """(E, X -> E, E -> N) for the class with quotient coordinates coeffs."""
        return extension_module(self.cd, self.X, self.cocycle(coeffs))

    def lift_endomorphism(self, r):
        """For r in End(N), a map K -> K induced by lifting r along the cover."""
        p, cd, N = self.p, self.cd, self.N
        P0 = cd.cover
        images = []
        for (v, m) in generators(N):
            target = fp.mul(r[v], m.reshape(-1, 1), p)[:, 0]
            y = fp.solve(cd.map[v], target, p)
            images.append(y)
        # P0 is the direct sum of P(v) over the generators of N, so the lift
        # is assembled summand by summand
        blocks = [extend_from_generators(N.A.projective(v), P0, [y])
                  for v, y in zip(cd.summand_vertices, images)]
        lift = [np.hstack([b[w] for b in blocks]) if blocks else fp.zeros(0, 0)
                for w in range(N.A.n_vertices)]
        res = []
        for w in range(N.A.n_vertices):
            inc = cd.inclusion[w]
            if inc.shape[1] == 0:
                res.append(fp.zeros(0, 0))
                continue
            res.append(fp.solve(inc, fp.mul(lift[w], inc, p), p))
        return res

    def act(self, coeffs, r_lift):
        """Right action of an endomorphism of N on a class."""
        phi = self.cocycle(coeffs)
        return self.space.class_of(compose(r_lift, phi, self.p))


def extension_module(cd, X, phi):
    """Pushout of 0 -> K -> P0 -> N -> 0 along phi: K -> X."""
    p = X.p
    P0, inc = cd.cover, cd.inclusion
    S = direct_sum([P0, X])
    emb = [np.vstack([inc[w], (-phi[w]) % p]) for w in range(X.A.n_vertices)]
    E, proj = cokernel(S, emb)
    injP, injX = sum_injections([P0, X])
    n = X.A.n_vertices
    x_to_e = [fp.mul(proj[w], injX[w], p) for w in range(n)]
    sec = E._cache["section"]
    e_to_n = [fp.mul(np.hstack([cd.map[w], fp.zeros(cd.map[w].shape[0], X.dims[w])]), sec[w], p)
              for w in range(n)]
    return E, x_to_e, e_to_n


def ext1(N, M):
    return Ext1(strip_projectives(N), M)


def stable_brick_residue(X):
    """Raise NonSplitResidue when End(X)/rad is not F_p."""
    ed = end_with_radical(X)
    if ed.residue_dim != 1:
        raise NonSplitResidue("End/rad of a %d-dimensional module has dim %d"
                              % (X.dim, ed.residue_dim))
    return ed


@dataclass
class SemibrickVerdict:
    matrix: list
    bricks: list
    is_semibrick: bool
    suspended: bool = False

    def to_json(self):
        return {"matrix": self.matrix, "bricks": self.bricks,
                "is_semibrick": self.is_semibrick, "suspended": self.suspended}


def semibrick_check(S):
    S = list(S)
    for X in S:
        if X.dim == 0 or len(indecomposable_summands(X)) != 1 or is_projective_indec(X):
            raise ProjectiveInput("semibrick members must be non-projective indecomposables")
    mat = [[stable_dim(X, Y) for Y in S] for X in S]
    bricks = [mat[i][i] == 1 for i in range(len(S))]
    ok = all(bricks) and all(mat[i][j] == 0 for i in range(len(S))
                             for j in range(len(S)) if i != j)
    suspended = False
    for X in S:
        try:
            stable_brick_residue(X)
        except NonSplitResidue:
            suspended = True
    return SemibrickVerdict(mat, bricks, ok and not suspended, suspended)
