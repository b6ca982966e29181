"""Bound quiver algebras kQ/I with monomial and binomial relations.

Paths are composed left to right internally: the word (a, b) means "a then
b" and requires target(a) == source(b). Relations declared with
``composition right_to_left`` are reversed on input.

The normal-form basis comes from a rewriting system: monomial relations
kill a word, binomial relations rewrite the larger word (length, then
declaration order of arrows) to a scalar multiple of the smaller one. The
system is completed Knuth-Bendix style; because every rule has at most one
term on the right, reductions of a single word stay single words, so the
multiplication table maps pairs of basis paths to scalar multiples of
basis paths.
"""

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import fp
from .errors import (BoundExceeded, NonAdmissible, NonComposable,
                     NonConfluent, UnknownVertex, BadParameter)


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


class Quiver:
    def __init__(self, vertices, arrows):
        self.vertices = tuple(str(v) for v in vertices)
        self.arrows = tuple(a if isinstance(a, Arrow) else Arrow(*map(str, a))
                            for a in arrows)
        if len(set(self.vertices)) != len(self.vertices):
            raise BadParameter("duplicate vertex id")
        if len({a.name for a in self.arrows}) != len(self.arrows):
            raise BadParameter("duplicate arrow id")
        self.vindex = {v: i for i, v in enumerate(self.vertices)}
        self.aindex = {a.name: i for i, a in enumerate(self.arrows)}
        for a in self.arrows:
            if a.source not in self.vindex or a.target not in self.vindex:
                raise UnknownVertex("arrow %s has an undeclared endpoint" % a.name)
        self.src = tuple(self.vindex[a.source] for a in self.arrows)
        self.tgt = tuple(self.vindex[a.target] for a in self.arrows)

    def __eq__(self, other):
        return (isinstance(other, Quiver) and self.vertices == other.vertices
                and self.arrows == other.arrows)

    def __hash__(self):
        return hash((self.vertices, self.arrows))

    def opposite(self):
        return Quiver(self.vertices,
                      [Arrow(a.name, a.target, a.source) for a in self.arrows])

    def word_endpoints(self, word):
        """(source, target) vertex indices of a composable word of arrow indices."""
        for x, y in zip(word, word[1:]):
            if self.tgt[x] != self.src[y]:
                raise NonComposable("path %s is not composable"
                                    % "*".join(self.arrows[i].name for i in word))
        return self.src[word[0]], self.tgt[word[-1]]


@dataclass(frozen=True)
class RelationSet:
    """Relations as left-to-right words of arrow names.

    binomials hold (word1, c1, word2, c2) meaning c1*word1 + c2*word2 = 0.
    """
    monomials: tuple = ()
    binomials: tuple = ()


@dataclass(frozen=True)
class Path:
    source: int
    target: int
    word: tuple = ()

    def __len__(self):
        return len(self.word)


def _order_key(word):
    return (len(word), word)


def _contains(big, small):
    n, k = len(big), len(small)
    return any(big[i:i + k] == small for i in range(n - k + 1))


class Rewriter:
    """Completed monomial/binomial rewriting system on words of arrow indices."""

    def __init__(self, quiver, p, equations, max_len, max_steps=20000):
        self.quiver = quiver
        self.p = p
        self.rules = {}
        self.max_len = max_len
        self._complete(equations, max_steps)
        self.lengths = sorted({len(l) for l in self.rules})

    def reduce(self, word):
        """Normal form of a word as (coef, word), or None when it is zero."""
        p = self.p
        coef = 1
        word = tuple(word)
        while True:
            hit = None
            for k in self.lengths:
                if k > len(word):
                    break
                for i in range(len(word) - k + 1):
                    if word[i:i + k] in self.rules:
                        hit = (i, k)
                        break
                if hit:
                    break
            if hit is None:
                return coef, word
            i, k = hit
            rule = self.rules[word[i:i + k]]
            if rule is None:
                return None
            c, rhs = rule
            coef = (coef * c) % p
            word = word[:i] + rhs + word[i + k:]

    def _reduce_terms(self, terms):
        out = {}
        for c, w in terms:
            r = self.reduce(w)
            if r is None:
                continue
            cc, ww = r
            out[ww] = (out.get(ww, 0) + c * cc) % self.p
        return {w: c for w, c in out.items() if c}

    def _complete(self, equations, max_steps):
        p = self.p
        pending = deque(equations)
        steps = 0
        while pending:
            steps += 1
            if steps > max_steps:
                raise NonConfluent("completion did not terminate within %d steps"
                                   % max_steps)
            eq = pending.popleft()
            self.lengths = sorted({len(l) for l in self.rules})
            terms = self._reduce_terms(eq)
            if not terms:
                continue
            lead = max(terms, key=_order_key)
            cl = terms.pop(lead)
            if terms:
                (other, co), = terms.items()
                rule = ((-co * fp.inv(cl, p)) % p, other)
            else:
                rule = None
            if len(lead) < 2:
                raise NonAdmissible("relations force the arrow %s to vanish"
                                    % "*".join(self.quiver.arrows[i].name for i in lead))
            if len(lead) > self.max_len:
                raise NonConfluent("completion produced a rule of length %d "
                                   "beyond the bound %d" % (len(lead), self.max_len))
            for lhs in list(self.rules):
                if lhs != lead and _contains(lhs, lead):
                    old = self.rules.pop(lhs)
                    pending.append(self._as_equation(lhs, old))
            self.rules[lead] = rule
            for lhs in list(self.rules):
                for a, b in ((lead, lhs), (lhs, lead)):
                    for k in range(1, min(len(a), len(b))):
                        if a[-k:] == b[:k]:
                            pending.append(self._overlap(a, b, k))
        self.lengths = sorted({len(l) for l in self.rules})

    def _as_equation(self, lhs, rule):
        if rule is None:
            return [(1, lhs)]
        c, rhs = rule
        return [(1, lhs), ((-c) % self.p, rhs)]

    def _overlap(self, a, b, k):
        terms = []
        ra, rb = self.rules[a], self.rules[b]
        if ra is not None:
            terms.append((ra[0], ra[1] + b[k:]))
        if rb is not None:
            terms.append(((-rb[0]) % self.p, a[:len(a) - k] + rb[1]))
        return terms


class BoundQuiverAlgebra:
    """kQ/I over F_p with a normal-form path basis and multiplication table."""

    def __init__(self, name, quiver, relations, p=101, nilpotency=None,
                 composition="left_to_right", declared_relations=None):
        if not fp.is_prime(p):
            raise BadParameter("field characteristic %r is not prime" % p)
        self.name = name
        self.quiver = quiver
        self.relations = relations
        self.p = p
        self.composition = composition
        self.nilpotency_declared = nilpotency
        self.nilpotency = nilpotency or 2 * (len(quiver.vertices) + len(quiver.arrows)) + 2
        # relations exactly as written, for the pretty printer
        self.declared_relations = declared_relations
        self._validate_relations()
        self.basis, self.mult_table, self.rewriter = build_basis(
            quiver, relations, self.nilpotency, p)
        self.index = {(b.source, b.word): i for i, b in enumerate(self.basis)}
        self._cache = {}

    def __eq__(self, other):
        return (isinstance(other, BoundQuiverAlgebra) and self.name == other.name
                and self.quiver == other.quiver and self.relations == other.relations
                and self.p == other.p and self.composition == other.composition
                and self.nilpotency_declared == other.nilpotency_declared)

    def __hash__(self):
        return hash((self.name, self.quiver, self.relations, self.p))

    def __repr__(self):
        return "<BoundQuiverAlgebra %s dim=%d over F_%d>" % (self.name, self.dim, self.p)

    def _validate_relations(self):
        q = self.quiver
        words = [w for w in self.relations.monomials]
        for w1, c1, w2, c2 in self.relations.binomials:
            words += [w1, w2]
        for w in words:
            if len(w) < 2:
                raise NonAdmissible("relation %s has length < 2" % "*".join(w))
            for a in w:
                if a not in q.aindex:
                    raise NonComposable("unknown arrow %s in relation" % a)
            q.word_endpoints([q.aindex[a] for a in w])
        for w1, c1, w2, c2 in self.relations.binomials:
            e1 = q.word_endpoints([q.aindex[a] for a in w1])
            e2 = q.word_endpoints([q.aindex[a] for a in w2])
            if e1 != e2:
                raise NonComposable("binomial paths %s and %s are not parallel"
                                    % ("*".join(w1), "*".join(w2)))

    @property
    def n_vertices(self):
        return len(self.quiver.vertices)

    @property
    def dim(self):
        return len(self.basis)

    def vertex(self, v):
        """Vertex index from a name or an index."""
        if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
            if 0 <= v < self.n_vertices:
                return int(v)
        v = str(v)
        if v not in self.quiver.vindex:
            raise UnknownVertex("no vertex %r" % v)
        return self.quiver.vindex[v]

    def idempotent(self, v):
        return self.index[(v, ())]

    def mult(self, i, j):
        """Product of basis elements i and j as (coef, k) or None."""
        return self.mult_table.get((i, j))

    def paths_from(self, v):
        return [i for i, b in enumerate(self.basis) if b.source == v]

    def word_names(self, word):
        return "*".join(self.quiver.arrows[i].name for i in word) if word else ""

    def path_name(self, i):
        b = self.basis[i]
        if not b.word:
            return "e" + self.quiver.vertices[b.source]
        return self.word_names(b.word)

    def reduce_word(self, word):
        return self.rewriter.reduce(tuple(word))

    @cached_property
    def opposite(self):
        """The opposite algebra: arrows and relation words reversed."""
        rel = RelationSet(
            tuple(tuple(reversed(w)) for w in self.relations.monomials),
            tuple((tuple(reversed(w1)), c1, tuple(reversed(w2)), c2)
                  for w1, c1, w2, c2 in self.relations.binomials))
        op = BoundQuiverAlgebra(self.name + "^op", self.quiver.opposite(), rel,
                                self.p, self.nilpotency_declared)
        op.__dict__["opposite"] = self
        return op

    def projective(self, v):
        key = ("proj", v)
        if key not in self._cache:
            self._cache[key] = projective_module(self, v)
        return self._cache[key]

    def simple(self, v):
        from .rep import Rep
        v = self.vertex(v)
        dims = [0] * self.n_vertices
        dims[v] = 1
        return Rep.zero_maps(self, dims)

    def check_associativity(self, limit=200):
        """Exhaustive associativity check on basis triples (dim <= limit)."""
        if self.dim > limit:
            raise BoundExceeded("dimension %d above %d" % (self.dim, limit))
        for i in range(self.dim):
            for j in range(self.dim):
                ij = self.mult(i, j)
                for k in range(self.dim):
                    jk = self.mult(j, k)
                    left = None if ij is None else self.mult(ij[1], k)
                    right = None if jk is None else self.mult(i, jk[1])
                    lv = None if left is None else (ij[0] * left[0] % self.p, left[1])
                    rv = None if right is None else (jk[0] * right[0] % self.p, right[1])
                    if lv != rv:
                        return False
        return True


def build_basis(quiver, relations, bound, p):
    """Complete the rewriting system, enumerate irreducible paths, build mult.

    Returns (basis, mult, rewriter). Raises BoundExceeded when an
    irreducible path of length >= bound exists.
    """
    ai = quiver.aindex
    eqs = [[(1, tuple(ai[a] for a in w))] for w in relations.monomials]
    for w1, c1, w2, c2 in relations.binomials:
        terms = []
        if c1 % p:
            terms.append((c1 % p, tuple(ai[a] for a in w1)))
        if c2 % p:
            terms.append((c2 % p, tuple(ai[a] for a in w2)))
        if terms:
            eqs.append(terms)
    rw = Rewriter(quiver, p, eqs, max_len=4 * bound)
    suffix_rules = set(rw.rules)
    basis = []
    frontier = [Path(v, v, ()) for v in range(len(quiver.vertices))]
    basis.extend(frontier)
    while frontier:
        nxt = []
        for path in frontier:
            for a in range(len(quiver.arrows)):
                if quiver.src[a] != path.target:
                    continue
                w = path.word + (a,)
                if any(w[len(w) - k:] in suffix_rules for k in rw.lengths if k <= len(w)):
                    continue
                if len(w) >= bound:
                    raise BoundExceeded("irreducible path %s of length %d reaches the "
                                        "nilpotency bound %d"
                                        % ("*".join(quiver.arrows[i].name for i in w),
                                           len(w), bound))
                nxt.append(Path(path.source, quiver.tgt[a], w))
        basis.extend(nxt)
        frontier = nxt
    basis.sort(key=lambda b: (b.source, len(b.word), b.word))
    index = {(b.source, b.word): i for i, b in enumerate(basis)}
    mult = {}
    for i, u in enumerate(basis):
        for j, v in enumerate(basis):
            if u.target != v.source:
                continue
            if not u.word:
                mult[(i, j)] = (1, j)
                continue
            if not v.word:
                mult[(i, j)] = (1, i)
                continue
            r = rw.reduce(u.word + v.word)
            if r is not None:
                c, w = r
                mult[(i, j)] = (c, index[(u.source, w)])
    return basis, mult, rw


def projective_module(A, v):
    """P(v): basis paths starting at v; an arrow acts by appending itself."""
    from .rep import Rep
    v = A.vertex(v)
    q = A.quiver
    paths = A.paths_from(v)
    by_vertex = [[i for i in paths if A.basis[i].target == w] for w in range(A.n_vertices)]
    pos = {}
    for w, lst in enumerate(by_vertex):
        for k, i in enumerate(lst):
            pos[i] = k
    dims = [len(l) for l in by_vertex]
    mats = []
    for a in range(len(q.arrows)):
        s, t = q.src[a], q.tgt[a]
        m = fp.zeros(dims[t], dims[s])
        for i in by_vertex[s]:
            r = A.reduce_word(A.basis[i].word + (a,))
            if r is not None:
                c, w = r
                m[pos[A.index[(v, w)]], pos[i]] = c
        mats.append(m)
    rep = Rep(A, dims, mats, check=False)
    rep._cache["path_labels"] = by_vertex
    rep._cache["projective_vertex"] = v
    return rep


@dataclass
class SelfInjectivityReport:
    is_self_injective: bool
    nakayama_perm: dict = None
    symmetric_form: object = None
    socle_vertices: dict = field(default_factory=dict)

    @property
    def is_symmetric(self):
        return self.symmetric_form is not None

    @property
    def is_weakly_symmetric(self):
        return bool(self.nakayama_perm) and all(k == v for k, v in self.nakayama_perm.items())

    def to_json(self):
        return {
            "is_self_injective": self.is_self_injective,
            "nakayama_perm": self.nakayama_perm,
            "symmetric": self.is_symmetric,
            "socle_vertices": self.socle_vertices,
        }


def _socle_vertices(A):
    from .rep import socle_dims
    out = []
    for v in range(A.n_vertices):
        d = socle_dims(A.projective(v))
        out.append([w for w in range(A.n_vertices) if d[w]] if sum(d) == 1 else None)
    return out


def selfinjectivity_report(A, seed=0):
    if "selfinj" in A._cache:
        return A._cache["selfinj"]
    names = A.quiver.vertices
    right = _socle_vertices(A)
    left = _socle_vertices(A.opposite)
    soc = {names[v]: [names[w] for w in s] if s else None for v, s in enumerate(right)}
    ok = all(s is not None for s in right) and all(s is not None for s in left)
    perm = None
    if ok:
        targets = [s[0] for s in right]
        ltargets = [s[0] for s in left]
        ok = len(set(targets)) == len(targets) and len(set(ltargets)) == len(ltargets)
        if ok:
            perm = {names[v]: names[targets[v]] for v in range(A.n_vertices)}
    form = find_symmetric_form(A, seed) if ok else None
    rep = SelfInjectivityReport(ok, perm, form, soc)
    A._cache["selfinj"] = rep
    return rep


def find_symmetric_form(A, seed=0, tries=16):
    """A functional lam with lam(ab) = lam(ba) whose Gram matrix is invertible.

    Returns the Gram matrix (basis-indexed) or None.
    """
    p, n = A.p, A.dim
    rows = []
    for i in range(n):
        for j in range(i + 1, n):
            r = np.zeros(n, dtype=fp.DTYPE)
            a, b = A.mult(i, j), A.mult(j, i)
            if a:
                r[a[1]] = (r[a[1]] + a[0]) % p
            if b:
                r[b[1]] = (r[b[1]] - b[0]) % p
            if r.any():
                rows.append(r)
    sol = fp.nullspace(np.array(rows, dtype=fp.DTYPE).reshape(-1, n), p)
    if sol.shape[1] == 0:
        return None
    rng = np.random.default_rng(seed)
    for _ in range(tries):
        lam = fp.mul(sol, rng.integers(0, p, size=(sol.shape[1], 1)), p)[:, 0]
        gram = np.zeros((n, n), dtype=fp.DTYPE)
        for (i, j), (c, k) in A.mult_table.items():
            gram[i, j] = (c * lam[k]) % p
        if fp.is_invertible(gram, p):
            return gram
    return None
