"""Endomorphism rings, Krull-Schmidt decomposition and isomorphism tests.

The radical of End(M) is the radical of the trace form (x, y) -> tr(xy)
on M. This is exact once p > dim M: an element whose powers all have
trace zero is then nilpotent. Below that bound FieldTooSmall is raised.

Splitting uses the Fitting decomposition of a random endomorphism: if its
characteristic polynomial has two coprime factors, M splits into the
corresponding generalised kernels. Random draws are seeded from the module
data so every run makes the same choices.
"""

import hashlib
from dataclasses import dataclass

import numpy as np
import sympy

from . import fp
from .errors import FieldTooSmall, NonSplitResidue
from .rep import (Rep, compose, direct_sum, extend_from_generators, flatten, hom_space,
                  kernel, socle_spaces)

MAX_DRAWS = 64


def module_rng(*mods, salt=b""):
    h = hashlib.sha256(salt)
    for m in mods:
        h.update(m.canonical_bytes())
    return np.random.default_rng(int.from_bytes(h.digest()[:8], "little"))


@dataclass
class EndData:
    module: object
    basis: object          # HomBasis with source = target = module
    pivots: list
    radical: np.ndarray    # columns: coordinates of a basis of rad End
    residue_dim: int

    @property
    def dim(self):
        return self.basis.dim

    @property
    def local(self):
        return self.residue_dim == 1

    def coords(self, f):
        vec = flatten(f)
        return np.array([vec[c] for c in self.pivots], dtype=fp.DTYPE)

    def element(self, coeffs):
        return self.basis.combine(coeffs)

    def mult(self, i, j):
        """Coordinates of basis_i after basis_j."""
        p = self.module.p
        return self.coords(compose(self.basis.map(j), self.basis.map(i), p))

    def in_radical(self, f):
        x = self.coords(f)
        return fp.in_span(self.radical, x, self.module.p)


def _trace_form(H, M):
    p = M.p
    d = H.dim
    if d == 0:
        return fp.zeros(0, 0)
    maps = H.basis
    left = np.array([flatten(f) for f in maps], dtype=fp.DTYPE)
    right = np.array([flatten([fv.T for fv in f]) for f in maps], dtype=fp.DTYPE)
    return fp.mul(left, right.T, p)


def end_with_radical(M):
    if "end" in M._cache:
        return M._cache["end"]
    if M.dim >= M.p:
        raise FieldTooSmall("trace-form radical needs p > dim M (dim %d, p %d)"
                            % (M.dim, M.p))
    H = hom_space(M, M)
    _, piv = fp.rref(H.vecs, M.p) if H.dim else (None, [])
    T = _trace_form(H, M)
    rad = fp.nullspace(T, M.p) if H.dim else fp.zeros(0, 0)
    ed = EndData(M, H, list(piv), rad, H.dim - rad.shape[1])
    M._cache["end"] = ed
    return ed


def socle_element(A, v):
    """Coefficients on basis paths from v spanning soc P(v), if it is simple."""
    key = ("socle_elt", v)
    if key not in A._cache:
        P = A.projective(v)
        soc = socle_spaces(P)
        labels = P._cache["path_labels"]
        vecs = [(labels[w], soc[w]) for w in range(A.n_vertices) if soc[w].shape[1]]
        if sum(s.shape[1] for _, s in vecs) != 1:
            A._cache[key] = None
        else:
            lab, s = vecs[0]
            A._cache[key] = [(i, int(c)) for i, c in zip(lab, s[:, 0]) if c]
    return A._cache[key]


def _action(M, terms):
    out = None
    for i, c in terms:
        m = (c * M.path_matrix(i)) % M.p
        out = m if out is None else (out + m) % M.p
    return out


def split_projective(M):
    """If some P(v) is a summand of M (self-injective case), return
    (v, complement) else None."""
    from .algebra import selfinjectivity_report
    A = M.A
    if not selfinjectivity_report(A).is_self_injective:
        return None
    for v in range(A.n_vertices):
        if M.dims[v] == 0:
            continue
        terms = socle_element(A, v)
        S = _action(M, terms)
        if not np.any(S):
            continue
        col = int(np.nonzero(S.any(axis=0))[0][0])
        m = fp.eye(M.dims[v])[:, col]
        P = A.projective(v)
        iota = extend_from_generators(P, M, [m])
        # P is injective, so iota splits; solve for a retraction
        H = hom_space(M, P)
        target = flatten([fp.eye(d) for d in P.dims])
        comps = np.array([flatten(compose(iota, H.map(k), M.p)) for k in range(H.dim)],
                         dtype=fp.DTYPE).reshape(H.dim, -1)
        c = fp.solve(comps.T, target, M.p)
        if c is None:
            continue
        r = H.combine(c)
        K, spaces = kernel(M, r)
        return v, K
    return None


def _poly_factors(coeffs, p):
    x = sympy.Symbol("x")
    poly = sympy.Poly(list(reversed([int(c) for c in coeffs])), x, modulus=p)
    _, facs = poly.factor_list()
    out = []
    for f, e in facs:
        cs = [int(c) % p for c in reversed(f.all_coeffs())]
        out.append((cs, e))
    return out


def _poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return out


def _poly_pow(a, e, p):
    out = [1]
    for _ in range(e):
        out = _poly_mul(out, a, p)
    return out


def _eval_map(poly, f, p):
    return [fp.matpow_poly(poly, fv, p) if fv.size else fv for fv in f]


def _fitting_split(M, f, facs):
    p = M.p
    first = _poly_pow(facs[0][0], facs[0][1], p)
    rest = [1]
    for c, e in facs[1:]:
        rest = _poly_mul(rest, _poly_pow(c, e, p), p)
    parts = []
    for poly in (first, rest):
        g = _eval_map(poly, f, p)
        K, _ = kernel(M, g)
        parts.append(K)
    return parts


def _split_once(M, ed):
    """Two complementary proper summands of a decomposable M."""
    p = M.p
    rng = module_rng(M, salt=b"split")
    for _ in range(MAX_DRAWS):
        coeffs = rng.integers(0, p, size=ed.dim)
        f = ed.element(coeffs)
        cp = [1]
        for fv in f:
            if fv.size:
                cp = _poly_mul(cp, fp.charpoly(fv, p), p)
        facs = _poly_factors(cp, p)
        if len(facs) >= 2:
            return _fitting_split(M, f, facs)
        (g, e), = facs
        if len(g) - 1 == ed.residue_dim and ed.in_radical(_eval_map(g, f, p)):
            # F_p[f] maps onto all of End/rad, which is then a proper field extension
            raise NonSplitResidue("End/rad is a field of degree %d over F_%d"
                                  % (ed.residue_dim, p))
    raise NonSplitResidue("no splitting endomorphism found in %d draws" % MAX_DRAWS)


def indecomposable_summands(M):
    """List of indecomposable summands (with repetition) of M."""
    if M.dim == 0:
        return []
    if "summands" in M._cache:
        return M._cache["summands"]
    out = []
    work = [M]
    while work:
        X = work.pop()
        if X.dim == 0:
            continue
        sp = split_projective(X)
        if sp is not None:
            v, K = sp
            out.append(X.A.projective(v))
            work.append(K)
            continue
        ed = end_with_radical(X)
        if ed.local:
            out.append(X)
            continue
        work.extend(_split_once(X, ed))
    out.sort(key=lambda X: (X.dim, X.dims, X.fingerprint()))
    M._cache["summands"] = out
    return out


@dataclass
class Decomposition:
    summands: list   # list of (Rep, multiplicity)

    def flat(self):
        return [X for X, k in self.summands for _ in range(k)]

    def nonprojective(self):
        return [(X, k) for X, k in self.summands if not is_projective_indec(X)]

    def projective(self):
        return [(X, k) for X, k in self.summands if is_projective_indec(X)]

    @property
    def total_dim(self):
        return sum(X.dim * k for X, k in self.summands)


def is_projective_indec(X):
    """True when the indecomposable X is projective (P(v) for some v)."""
    v = X._cache.get("projective_vertex")
    if v is not None:
        return True
    A = X.A
    for v in range(A.n_vertices):
        P = A.projective(v)
        if P.dims == X.dims and P.invariant() == X.invariant() and is_isomorphic(P, X):
            X._cache["projective_vertex"] = v
            return True
    return False


def decompose(M):
    groups = []
    for X in indecomposable_summands(M):
        for g in groups:
            if is_isomorphic(g[0], X):
                g[1] += 1
                break
        else:
            groups.append([X, 1])
    return Decomposition([(X, k) for X, k in groups])


def strip_projectives(M):
    """Direct sum of the non-projective indecomposable summands of M."""
    parts = [X for X in indecomposable_summands(M) if not is_projective_indec(X)]
    if not parts:
        return Rep.zero_maps(M.A, [0] * M.A.n_vertices)
    return parts[0] if len(parts) == 1 else direct_sum(parts)


def _invertible_map(f, p):
    return all(fp.is_invertible(fv, p) for fv in f)


def _indec_iso(M, N):
    """Exact test for indecomposable M: some psi*phi lies outside rad End(M)."""
    p = M.p
    H1, H2 = hom_space(M, N), hom_space(N, M)
    for a in range(H1.dim):
        phi = H1.map(a)
        for b in range(H2.dim):
            if _invertible_map(compose(phi, H2.map(b), p), p):
                return True
    return False


def is_isomorphic(M, N):
    if M.dims != N.dims:
        return False
    if M.dim == 0:
        return True
    if M.invariant() != N.invariant():
        return False
    p = M.p
    H = hom_space(M, N)
    if H.dim == 0:
        return False
    rng = module_rng(M, N, salt=b"iso")
    for _ in range(8):
        f = H.combine(rng.integers(0, p, size=H.dim))
        if _invertible_map(f, p):
            return True
    sm, sn = indecomposable_summands(M), indecomposable_summands(N)
    if len(sm) != len(sn):
        return False
    if len(sm) == 1:
        return _indec_iso(M, N)
    left = list(sn)
    for X in sm:
        for k, Y in enumerate(left):
            if X.dims == Y.dims and X.invariant() == Y.invariant() and _indec_iso(X, Y):
                left.pop(k)
                break
        else:
            return False
    return True


def find_iso(M, candidates):
    """Index of the first candidate isomorphic to M, or None."""
    for k, X in enumerate(candidates):
        if is_isomorphic(M, X):
            return k
    return None
