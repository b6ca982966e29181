"""Representations of a bound quiver and exact linear algebra on them.

A Rep stores one dimension per vertex and, for every arrow a: s -> t, a
matrix of shape dims[t] x dims[s]. A path a1*a2*...*ak acts as the
product M_ak ... M_a1.

Module maps are lists of per-vertex matrices phi[v] of shape
dimN[v] x dimM[v]. Hom spaces are computed from a presentation of the
source by generators, which keeps the linear systems small.
"""

import hashlib
import json

import numpy as np

from . import fp
from .errors import AlgebraMismatch, InvalidRep


class Rep:
    def __init__(self, A, dims, mats, check=True):
        self.A = A
        p = A.p
        q = A.quiver
        if isinstance(dims, dict):
            dims = [int(dims.get(v, 0)) for v in q.vertices]
        self.dims = tuple(int(d) for d in dims)
        if len(self.dims) != A.n_vertices or min(self.dims, default=0) < 0:
            raise InvalidRep("dimension vector does not match the quiver")
        if isinstance(mats, dict):
            mats = [mats.get(a.name) for a in q.arrows]
        out = []
        for k, m in enumerate(mats):
            shape = (self.dims[q.tgt[k]], self.dims[q.src[k]])
            if m is None:
                m = fp.zeros(*shape)
            m = np.array(m, dtype=fp.DTYPE).reshape(shape) % p
            out.append(m)
        if len(out) != len(q.arrows):
            raise InvalidRep("need one matrix per arrow")
        self.mats = out
        self._cache = {}
        if check:
            self.check_relations()

    @classmethod
    def zero_maps(cls, A, dims):
        return cls(A, dims, [None] * len(A.quiver.arrows), check=False)

    @property
    def p(self):
        return self.A.p

    @property
    def dim(self):
        return sum(self.dims)

    def dimvec(self):
        return self.dims

    def is_zero(self):
        return self.dim == 0

    def __repr__(self):
        return "<Rep %s dims=%s>" % (self.A.name, list(self.dims))

    def word_matrix(self, word, source=None):
        """Matrix of a word of arrow indices (identity at source for the empty word)."""
        if not word:
            return fp.eye(self.dims[source])
        m = self.mats[word[0]]
        for a in word[1:]:
            m = fp.mul(self.mats[a], m, self.p)
        return m

    def path_matrix(self, i):
        """Matrix of basis path i of the algebra."""
        pm = self._cache.setdefault("paths", {})
        if i not in pm:
            b = self.A.basis[i]
            if len(b.word) <= 1:
                pm[i] = self.word_matrix(b.word, b.source)
            else:
                # reuse the prefix
                pre = self.A.index.get((b.source, b.word[:-1]))
                if pre is not None:
                    pm[i] = fp.mul(self.mats[b.word[-1]], self.path_matrix(pre), self.p)
                else:
                    pm[i] = self.word_matrix(b.word, b.source)
        return pm[i]

    def check_relations(self):
        A, p = self.A, self.p
        q = A.quiver
        for w in A.relations.monomials:
            if np.any(self.word_matrix([q.aindex[a] for a in w])):
                raise InvalidRep("relation %s does not vanish" % "*".join(w))
        for w1, c1, w2, c2 in A.relations.binomials:
            m = (c1 * self.word_matrix([q.aindex[a] for a in w1])
                 + c2 * self.word_matrix([q.aindex[a] for a in w2])) % p
            if np.any(m):
                raise InvalidRep("binomial relation on %s, %s fails" % ("*".join(w1), "*".join(w2)))
        # words longer than the nilpotency bound must act as zero
        return True

    # -- serialisation -------------------------------------------------

    def to_json(self):
        q = self.A.quiver
        return {
            "dims": {v: self.dims[i] for i, v in enumerate(q.vertices)},
            "mats": {a.name: self.mats[k].tolist() for k, a in enumerate(q.arrows)},
            "field": self.p,
        }

    @classmethod
    def from_json(cls, A, data):
        if isinstance(data, str):
            data = json.loads(data)
        if int(data.get("field", A.p)) != A.p:
            raise AlgebraMismatch("module is over F_%s, algebra over F_%d"
                                  % (data.get("field"), A.p))
        q = A.quiver
        dims = [int(data["dims"].get(v, 0)) for v in q.vertices]
        mats = []
        for k, a in enumerate(q.arrows):
            rows = data["mats"].get(a.name)
            shape = (dims[q.tgt[k]], dims[q.src[k]])
            if rows is None:
                mats.append(fp.zeros(*shape))
                continue
            m = np.array(rows, dtype=fp.DTYPE)
            if m.size == 0:
                m = m.reshape(shape)
            if m.shape != shape:
                raise InvalidRep("matrix for %s has shape %s, expected %s"
                                 % (a.name, m.shape, shape))
            if np.any((m < 0) | (m >= A.p)):
                raise InvalidRep("entries of %s outside [0, p)" % a.name)
            mats.append(m)
        return cls(A, dims, mats)

    def canonical_bytes(self):
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":")).encode()

    def digest(self):
        return hashlib.sha256(self.canonical_bytes()).hexdigest()

    # -- invariants ------------------------------------------------------

    def invariant(self):
        """Isomorphism invariant: dims, top, socle and ranks of all path matrices."""
        if "inv" not in self._cache:
            ranks = tuple(fp.rank(self.path_matrix(i), self.p)
                          for i in range(self.A.dim) if self.A.basis[i].word)
            self._cache["inv"] = (self.dims, top_dims(self), socle_dims(self), ranks)
        return self._cache["inv"]

    def fingerprint(self):
        return hashlib.sha256(repr(self.invariant()).encode()).hexdigest()[:16]


# -- subspaces, sub- and quotient modules --------------------------------

def _mats_check(M, N):
    if M.A is not N.A and M.A != N.A:
        raise AlgebraMismatch("modules over different algebras")


def radical_spaces(M):
    """Per-vertex column bases of rad M = sum of images of arrows."""
    q, p = M.A.quiver, M.p
    out = []
    for v in range(M.A.n_vertices):
        cols = [M.mats[a] for a in range(len(q.arrows)) if q.tgt[a] == v]
        if cols and M.dims[v]:
            out.append(fp.colspace(np.hstack(cols), p))
        else:
            out.append(fp.zeros(M.dims[v], 0))
    return out


def socle_spaces(M):
    """Per-vertex column bases of soc M = joint kernel of outgoing arrows."""
    q, p = M.A.quiver, M.p
    out = []
    for v in range(M.A.n_vertices):
        rows = [M.mats[a] for a in range(len(q.arrows)) if q.src[a] == v]
        rows = [r for r in rows if r.shape[0]]
        if rows:
            out.append(fp.nullspace(np.vstack(rows), p))
        else:
            out.append(fp.eye(M.dims[v]))
    return out


def socle_dims(M):
    return tuple(s.shape[1] for s in socle_spaces(M))


def top_dims(M):
    return tuple(M.dims[v] - r.shape[1] for v, r in enumerate(radical_spaces(M)))


def submodule(M, spaces):
    """Subrepresentation on invariant per-vertex column bases."""
    q, p = M.A.quiver, M.p
    mats = []
    for a in range(len(q.arrows)):
        s, t = q.src[a], q.tgt[a]
        img = fp.mul(M.mats[a], spaces[s], p)
        if spaces[t].shape[1] == 0:
            if np.any(img):
                raise InvalidRep("subspace is not invariant")
            mats.append(fp.zeros(0, spaces[s].shape[1]))
            continue
        x = fp.solve(spaces[t], img, p)
        if x is None:
            raise InvalidRep("subspace is not invariant")
        mats.append(x)
    return Rep(M.A, [s.shape[1] for s in spaces], mats, check=False)


def quotient(M, spaces):
    """M / U for invariant per-vertex subspaces U. Returns (Q, proj) where
    proj[v] is the projection matrix M_v -> Q_v."""
    q, p = M.A.quiver, M.p
    comps, projs = [], []
    for v in range(M.A.n_vertices):
        u = fp.colspace(spaces[v], p) if spaces[v].shape[1] else spaces[v]
        c = fp.complement(u, M.dims[v], p)
        full = np.hstack([u, c])
        inv = fp.inverse(full, p) if M.dims[v] else fp.zeros(0, 0)
        comps.append(c)
        projs.append(inv[u.shape[1]:])
    mats = []
    for a in range(len(q.arrows)):
        s, t = q.src[a], q.tgt[a]
        mats.append(fp.mul(projs[t], fp.mul(M.mats[a], comps[s], p), p))
    Q = Rep(M.A, [c.shape[1] for c in comps], mats, check=False)
    Q._cache["section"] = comps
    return Q, projs


def kernel(M, f):
    """(ker f, inclusion) for a module map f: M -> N."""
    spaces = [fp.nullspace(f[v], M.p) if M.dims[v] else fp.zeros(0, 0)
              for v in range(M.A.n_vertices)]
    spaces = [s if s.shape[0] == M.dims[v] else fp.zeros(M.dims[v], 0)
              for v, s in enumerate(spaces)]
    return submodule(M, spaces), spaces


def image_spaces(N, f):
    return [fp.colspace(f[v], N.p) if f[v].size else fp.zeros(N.dims[v], 0)
            for v in range(N.A.n_vertices)]


def cokernel(N, f):
    """(coker f, projection) for a module map f: M -> N."""
    return quotient(N, image_spaces(N, f))


def direct_sum(mods):
    mods = list(mods)
    A = mods[0].A
    q = A.quiver
    dims = [sum(m.dims[v] for m in mods) for v in range(A.n_vertices)]
    mats = []
    for a in range(len(q.arrows)):
        blocks = [m.mats[a] for m in mods]
        out = fp.zeros(dims[q.tgt[a]], dims[q.src[a]])
        r = c = 0
        for b in blocks:
            out[r:r + b.shape[0], c:c + b.shape[1]] = b
            r += b.shape[0]
            c += b.shape[1]
        mats.append(out)
    return Rep(A, dims, mats, check=False)


def sum_injections(mods):
    """Per-summand inclusion maps into direct_sum(mods)."""
    A = mods[0].A
    n = A.n_vertices
    tot = [sum(m.dims[v] for m in mods) for v in range(n)]
    offs = [0] * n
    out = []
    for m in mods:
        inc = []
        for v in range(n):
            e = fp.zeros(tot[v], m.dims[v])
            e[offs[v]:offs[v] + m.dims[v], :] = fp.eye(m.dims[v])
            inc.append(e)
            offs[v] += m.dims[v]
        out.append(inc)
    return out


def layers(M):
    """(top, radical, socle) as Reps."""
    rad = radical_spaces(M)
    top, _ = quotient(M, rad)
    return top, submodule(M, rad), submodule(M, socle_spaces(M))


# -- maps ------------------------------------------------------------------

def compose(f, g, p):
    """g after f."""
    return [fp.mul(gv, fv, p) for fv, gv in zip(f, g)]


def zero_map(M, N):
    return [fp.zeros(N.dims[v], M.dims[v]) for v in range(M.A.n_vertices)]


def identity_map(M):
    return [fp.eye(d) for d in M.dims]


def is_module_map(M, N, f):
    q, p = M.A.quiver, M.p
    for a in range(len(q.arrows)):
        s, t = q.src[a], q.tgt[a]
        if np.any((fp.mul(f[t], M.mats[a], p) - fp.mul(N.mats[a], f[s], p)) % p):
            return False
    return True


def flatten(f):
    return np.concatenate([x.ravel() for x in f]) if f else np.zeros(0, dtype=fp.DTYPE)


def unflatten(vec, M, N):
    out, k = [], 0
    for v in range(M.A.n_vertices):
        size = N.dims[v] * M.dims[v]
        out.append(np.asarray(vec[k:k + size], dtype=fp.DTYPE).reshape(N.dims[v], M.dims[v]))
        k += size
    return out


def is_injective_map(f, p):
    return all(fp.rank(fv, p) == fv.shape[1] for fv in f if fv.shape[1])


def is_surjective_map(f, p):
    return all(fp.rank(fv, p) == fv.shape[0] for fv in f if fv.shape[0])


class HomBasis:
    """Basis of Hom(M, N); vecs holds one flattened map per row."""

    def __init__(self, source, target, vecs):
        self.source = source
        self.target = target
        self.vecs = vecs

    @property
    def dim(self):
        return self.vecs.shape[0]

    def __len__(self):
        return self.dim

    def map(self, k):
        return unflatten(self.vecs[k], self.source, self.target)

    @property
    def basis(self):
        return [self.map(k) for k in range(self.dim)]

    def combine(self, coeffs):
        p = self.source.p
        c = np.asarray(coeffs, dtype=fp.DTYPE).reshape(1, -1) % p
        vec = fp.mul(c, self.vecs, p)[0] if self.dim else np.zeros(self.vecs.shape[1], fp.DTYPE)
        return unflatten(vec, self.source, self.target)

    @property
    def pivots(self):
        if not hasattr(self, "_piv"):
            self._piv = fp.rref(self.vecs, self.source.p)[1] if self.dim else []
        return self._piv

    def coords(self, f):
        """Coordinates of a map known to lie in the span (vecs is in
        reduced echelon form, so they sit at the pivot columns)."""
        vec = flatten(f)
        return np.array([vec[c] for c in self.pivots], dtype=fp.DTYPE)

    def contains(self, f):
        x = self.coords(f)
        back = fp.mul(x.reshape(1, -1), self.vecs, self.source.p)[0] if self.dim else 0
        return not np.any((back - flatten(f)) % self.source.p)


def generators(M):
    """Top generators of M: list of (vertex, vector) with vectors completing rad M."""
    if "gens" not in M._cache:
        gens = []
        for v, r in enumerate(radical_spaces(M)):
            c = fp.complement(r, M.dims[v], M.p)
            for k in range(c.shape[1]):
                gens.append((v, c[:, k]))
        M._cache["gens"] = gens
    return M._cache["gens"]


def presentation(M):
    """Data for computing Hom(M, -): generators, per-vertex spanning columns
    M_p m_g, their relations and a pivot basis."""
    if "pres" in M._cache:
        return M._cache["pres"]
    A, p = M.A, M.p
    gens = generators(M)
    cols = [[] for _ in range(A.n_vertices)]
    labels = [[] for _ in range(A.n_vertices)]
    for g, (v, m) in enumerate(gens):
        for i in A.paths_from(v):
            w = A.basis[i].target
            cols[w].append(fp.mul(M.path_matrix(i), m.reshape(-1, 1), p)[:, 0])
            labels[w].append((g, i))
    data = []
    for w in range(A.n_vertices):
        if M.dims[w] == 0:
            # every column lives in a zero space, so each is a relation
            data.append((labels[w], fp.eye(len(labels[w])), [], fp.zeros(0, 0)))
            continue
        G = np.column_stack(cols[w]) % p
        _, piv = fp.rref(G, p)
        if len(piv) != M.dims[w]:
            raise InvalidRep("generators do not span the module")
        K = fp.nullspace(G, p)
        binv = fp.inverse(G[:, piv], p)
        data.append((labels[w], K, piv, binv))
    M._cache["pres"] = (gens, data)
    return M._cache["pres"]


def hom_space(M, N):
    """Basis of Hom(M, N) in deterministic reduced echelon form."""
    _mats_check(M, N)
    key = ("hom", id(N))
    hc = M._cache.setdefault("homs", {})
    if key in hc and hc[key][0] is N:
        return hc[key][1]
    A, p = M.A, M.p
    gens, data = presentation(M)
    offs, tot = [], 0
    for v, _ in gens:
        offs.append(tot)
        tot += N.dims[v]
    rows = []
    for w in range(A.n_vertices):
        labels, K, piv, binv = data[w]
        if K.shape[1] == 0 or N.dims[w] == 0:
            continue
        for k in range(K.shape[1]):
            block = fp.zeros(N.dims[w], tot)
            for (g, i), c in zip(labels, K[:, k]):
                if c:
                    v = gens[g][0]
                    block[:, offs[g]:offs[g] + N.dims[v]] += c * N.path_matrix(i)
            rows.append(block % p)
    if tot == 0:
        ys = fp.zeros(0, 0)
    elif rows:
        ys = fp.nullspace(np.vstack(rows), p)
    else:
        ys = fp.eye(tot)
    maps = []
    for k in range(ys.shape[1]):
        y = ys[:, k]
        f = []
        for w in range(A.n_vertices):
            labels, K, piv, binv = data[w]
            if M.dims[w] == 0 or N.dims[w] == 0:
                f.append(fp.zeros(N.dims[w], M.dims[w]))
                continue
            Y = fp.zeros(N.dims[w], len(piv))
            for col, j in enumerate(piv):
                g, i = labels[j]
                v = gens[g][0]
                Y[:, col] = fp.mul(N.path_matrix(i), y[offs[g]:offs[g] + N.dims[v]].reshape(-1, 1), p)[:, 0]
            f.append(fp.mul(Y, binv, p))
        maps.append(flatten(f))
    size = sum(N.dims[v] * M.dims[v] for v in range(A.n_vertices))
    vecs = np.array(maps, dtype=fp.DTYPE).reshape(len(maps), size)
    if len(maps):
        vecs = fp.row_basis(vecs, p)
    H = HomBasis(M, N, vecs)
    hc[key] = (N, H)
    return H


def extend_from_generators(M, N, images):
    """The map M -> N sending generator g to images[g] (vectors in N), or
    None when no such map exists."""
    A, p = M.A, M.p
    gens, data = presentation(M)
    f = []
    for w in range(A.n_vertices):
        labels, K, piv, binv = data[w]
        Y = fp.zeros(N.dims[w], len(labels))
        for col, (g, i) in enumerate(labels):
            Y[:, col] = fp.mul(N.path_matrix(i), np.asarray(images[g]).reshape(-1, 1), p)[:, 0]
        if K.shape[1] and np.any(fp.mul(Y, K, p)):
            return None
        if M.dims[w] == 0:
            f.append(fp.zeros(N.dims[w], 0))
        else:
            f.append(fp.mul(Y[:, piv], binv, p))
    return f
