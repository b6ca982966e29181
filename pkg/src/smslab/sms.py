"""Extension closures, filtration lengths, system classification and the
ladder certificates showing that a stable semibrick is not simple-minded.

The closure follows the triangle filtration (S)_0 = {0},
(S)_n = (S)_{n-1} * (S + {0}): Y is added when there is a triangle
X -> Y -> Z -> with X in the previous level and Z in S. Triangles come from
short exact sequences 0 -> X -> Y + P -> Z -> 0, so the middles are the
projective-free parts of the extension modules of Ext^1(Z, X).
"""

import hashlib
import itertools
import json
from dataclasses import dataclass, field

import numpy as np

from . import fp
from .algebra import selfinjectivity_report
from .arknit import SWEEP_CAP, class_representatives, knit_component
from .decompose import (indecomposable_summands, is_isomorphic, is_projective_indec,
                        strip_projectives)
from .dsl import parse_algebra, print_algebra
from .errors import (CapExceeded, ConditionFailed, DepthExceeded, HypothesisUnmet,
                     NonSplitResidue, NotFound, SmsLabError, UniverseIncomplete)
from .rep import Rep, direct_sum
from .stable import Ext1, extension_module, omega, semibrick_check, stable_brick_residue, stable_dim, tau


# -- iso-class registry --------------------------------------------------------

class ClassTable:
    """Indecomposable modules up to isomorphism, numbered in insertion order."""

    def __init__(self, mods=()):
        self.reps = []
        self.by_inv = {}
        for M in mods:
            self.add(M)

    def find(self, M):
        for k in self.by_inv.get(M.invariant(), []):
            if is_isomorphic(self.reps[k], M):
                return k
        return None

    def add(self, M):
        k = self.find(M)
        if k is None:
            k = len(self.reps)
            self.reps.append(M)
            self.by_inv.setdefault(M.invariant(), []).append(k)
        return k

    def __len__(self):
        return len(self.reps)

    def obj(self, ids):
        """The direct sum of the classes in ids (zero module when empty)."""
        if not ids:
            return None
        mods = [self.reps[k] for k in ids]
        return mods[0] if len(mods) == 1 else direct_sum(mods)


def stable_parts(M):
    """Non-projective indecomposable summands of M."""
    if M is None or M.dim == 0:
        return []
    return [X for X in indecomposable_summands(M) if not is_projective_indec(X)]


# -- cone middles --------------------------------------------------------------

@dataclass
class Middle:
    summands: list
    cls: list = None          # None for the split middle

    @property
    def dims(self):
        return sorted(tuple(X.dims) for X in self.summands)


def _block_options(d, p, cap):
    """Zero or a class up to scalar, for one summand's Ext block."""
    return [None] + list(class_representatives(d, p, cap))


def cone_middles(Z, X, cap=SWEEP_CAP):
    """Projective-free middles Y of all triangles X -> Y -> Z ->, up to iso.

    X may be None (the zero object), a module or a list of indecomposables.
    Rescaling one summand of X is an automorphism of X, so classes are swept
    up to a scalar on each summand's block of Ext^1(Z, X)."""
    parts = X if isinstance(X, list) else stable_parts(X)
    if not parts:
        return [Middle([Z])]
    out = [Middle(list(parts) + [Z])]
    p = Z.p
    exts = [Ext1(Z, Y) for Y in parts]
    count = 1
    for e in exts:
        count *= 1 + (p ** e.dim - 1) // (p - 1)
        if count > cap:
            raise CapExceeded("sweep of %d extension classes exceeds cap %d" % (count, cap))
    Xs = parts[0] if len(parts) == 1 else direct_sum(parts)
    cd = exts[0].cd
    for choice in itertools.product(*[_block_options(e.dim, p, cap) for e in exts]):
        if all(c is None for c in choice):
            continue
        phis = []
        for e, Y, c in zip(exts, parts, choice):
            if c is None:
                phis.append([fp.zeros(Y.dims[w], e.K.dims[w]) for w in range(Z.A.n_vertices)])
            else:
                phis.append(e.cocycle(c))
        phi = [np.vstack([f[w] for f in phis]) for w in range(Z.A.n_vertices)]
        E, _, _ = extension_module(cd, Xs, phi)
        cls = [[int(x) for x in c] if c is not None else None for c in choice]
        cand = Middle(stable_parts(E), cls)
        if not any(_same_summands(cand.summands, m.summands) for m in out):
            out.append(cand)
    return out


def _same_summands(xs, ys):
    if sorted(tuple(x.dims) for x in xs) != sorted(tuple(y.dims) for y in ys):
        return False
    left = list(ys)
    for x in xs:
        for k, y in enumerate(left):
            if is_isomorphic(x, y):
                left.pop(k)
                break
        else:
            return False
    return True


# -- closure -------------------------------------------------------------------

@dataclass
class DivergesBeyondCap:
    cap: int
    max_dim: int

    def to_json(self):
        return {"diverges_beyond_cap": self.cap, "max_dim": self.max_dim}


@dataclass
class ClosureState:
    generators: list                 # class ids of S
    table: ClassTable
    levels: list                     # list of sets of sorted id tuples; levels[0] = {()}
    cap: int
    max_dim: int
    saturated: bool = False
    dropped: int = 0                 # objects discarded by the dimension bound
    outside_universe: int = 0
    method: str = "triangle filtration (S)_n"
    _done: dict = field(default_factory=dict, repr=False)

    def level_of(self, M):
        """Least n with every summand of M in (S)_n, or None."""
        ids = []
        for X in stable_parts(M):
            k = self.table.find(X)
            if k is None:
                return None
            ids.append(k)
        key = tuple(sorted(ids))
        for n, lev in enumerate(self.levels):
            if key in lev:
                return n
        return None

    def indecomposables(self, n=None):
        lev = self.levels[-1 if n is None else n]
        return sorted({o[0] for o in lev if len(o) == 1})

    def covers(self, universe):
        return all(self.level_of(X) is not None for X in universe)

    def to_json(self):
        return {"method": self.method, "cap": self.cap, "max_dim": self.max_dim,
                "saturated": self.saturated, "dropped": self.dropped,
                "levels": [len(l) for l in self.levels],
                "classes": [list(self.table.reps[k].dims) for k in range(len(self.table))]}


def _sub_multisets(key):
    out = set()
    for r in range(1, len(key) + 1):
        for c in itertools.combinations(key, r):
            out.add(tuple(sorted(c)))
    return out


def closure(S, cap=8, universe=None, max_dim=None, max_objects=5000, sweep_cap=SWEEP_CAP,
            state=None):
    """Levels (S)_1 .. (S)_cap, or fewer when saturated.

    Objects are kept as multisets of indecomposable classes with total
    dimension at most max_dim; each level is closed under direct summands.
    Passing a previous state continues it up to the new cap."""
    S = list(S)
    if state is None:
        table = ClassTable(universe or [])
        gens = [table.add(X) for X in S]
        if max_dim is None:
            pool = list(universe or []) + S
            max_dim = 2 * max(X.dim for X in pool)
        state = ClosureState(gens, table, [{()}], cap, max_dim)
    st = state
    st.cap = max(st.cap, cap)
    univ_size = len(universe) if universe is not None else None
    while len(st.levels) <= cap and not st.saturated:
        prev = st.levels[-1]
        new = set(prev)
        fresh = prev - (st.levels[-2] if len(st.levels) > 1 else set())
        for key in sorted(fresh):
            X = [st.table.reps[k] for k in key]
            for g in st.generators:
                memo = (g, key)
                if memo not in st._done:
                    res = []
                    for mid in cone_middles(st.table.reps[g], X, sweep_cap):
                        if sum(Y.dim for Y in mid.summands) > st.max_dim:
                            st.dropped += 1
                            continue
                        ids = []
                        for Y in mid.summands:
                            k = st.table.add(Y)
                            if univ_size is not None and k >= univ_size:
                                st.outside_universe += 1
                            ids.append(k)
                        res.append(tuple(sorted(ids)))
                    st._done[memo] = res
                for obj in st._done[memo]:
                    new |= _sub_multisets(obj) | {obj}
            if len(new) > max_objects:
                raise CapExceeded("closure level %d exceeds %d objects" % (len(st.levels), max_objects))
        if new == prev:
            st.saturated = True
            break
        st.levels.append(new)
    return st


def ell(S, X, cap=8, universe=None, max_dim=None, state=None):
    """Least n with X in (S)_n, else DivergesBeyondCap."""
    if max_dim is None:
        max_dim = 2 * max([X.dim] + [Y.dim for Y in S])
    st = state
    for n in range(1, cap + 1):
        st = closure(S, n, universe=universe, max_dim=max_dim, state=st)
        lev = st.level_of(X)
        if lev is not None:
            return lev
        if st.saturated:
            break
    return DivergesBeyondCap(cap, st.max_dim)


# -- universes and classification ------------------------------------------------

@dataclass
class Universe:
    """Non-projective indecomposables from knitting every simple's component."""
    algebra: object
    modules: list
    complete: bool
    components: list

    def __iter__(self):
        return iter(self.modules)

    def __len__(self):
        return len(self.modules)


def stable_universe(A, max_dim=None, max_nodes=400):
    """Knit the components of all simples (and projectives) of A.

    Complete when every knitted component closes up; a finite component of
    a connected algebra is then its whole AR quiver."""
    max_dim = max_dim or 4 * A.dim
    table = ClassTable()
    comps, complete = [], True
    for v in range(A.n_vertices):
        S = A.simple(v)
        if any(is_isomorphic(S, X) for X in table.reps) or is_projective_indec(S):
            continue
        C = knit_component(S, max_dim=max_dim, max_nodes=max_nodes)
        comps.append(C)
        complete = complete and C.complete
        for k in C.stable_ids():
            table.add(C.nodes[k].rep)
    mods = sorted(table.reps, key=lambda X: (X.dim, X.dims, X.fingerprint()))
    return Universe(A, mods, complete, comps)


@dataclass
class SystemFlags:
    semibrick: bool
    wsms: object
    sms: object
    maximal_orthogonal: object
    matrix: list
    notes: list = field(default_factory=list)

    def to_json(self):
        return {"semibrick": self.semibrick, "wsms": self.wsms, "sms": self.sms,
                "maximal_orthogonal": self.maximal_orthogonal, "matrix": self.matrix,
                "notes": self.notes}


WSMS_NOTE = ("spans: every X in the universe has some T in S with nonzero stable Hom X -> T")


def classify_system(S, universe=None, cap=12, strict=False):
    S = list(S)
    verdict = semibrick_check(S)
    notes = []
    if verdict.suspended:
        notes.append("End/rad not split for some member; brick verdicts suspended")
    wsms = sms = maxo = None
    if universe is not None:
        mods = list(universe)
        wsms = all(any(stable_dim(X, T) > 0 for T in S) for X in mods)
        notes.append(WSMS_NOTE)
        if not getattr(universe, "complete", False):
            notes.append("universe not certified complete; wsms is relative to it")
        maxo = bool(wsms) and all(not is_isomorphic(tau(T), T) for T in S)
    complete = universe is not None and getattr(universe, "complete", False)
    if complete and verdict.is_semibrick:
        st = closure(S, cap, universe=list(universe))
        sms = st.covers(list(universe))
        if not sms and not st.saturated:
            notes.append("closure not saturated at cap %d" % cap)
    elif complete:
        sms = False
    else:
        notes.append("sms flag refused: representation-finiteness not certified")
        if strict:
            raise UniverseIncomplete("sms verdicts need a complete universe")
    return SystemFlags(verdict.is_semibrick, wsms, sms, maxo, verdict.matrix, notes)


def stable_bricks(mods):
    out = []
    for X in mods:
        if stable_dim(X, X) != 1:
            continue
        try:
            stable_brick_residue(X)
        except NonSplitResidue:
            continue
        out.append(X)
    return out


def semibricks(bricks, must=()):
    """All nonempty sets of pairwise orthogonal bricks (index tuples)."""
    n = len(bricks)
    orth = [[i == j or (stable_dim(bricks[i], bricks[j]) == 0 and
                        stable_dim(bricks[j], bricks[i]) == 0) for j in range(n)]
            for i in range(n)]
    out = []

    def grow(chosen, start):
        if chosen and all(m in chosen for m in must):
            out.append(tuple(chosen))
        for k in range(start, n):
            if all(orth[k][c] for c in chosen):
                grow(chosen + [k], k + 1)

    grow([], 0)
    return out


def enumerate_sms(A, universe=None, cap=12):
    """Every sms of a representation-finite self-injective algebra."""
    if universe is None:
        universe = stable_universe(A)
    if not universe.complete:
        raise UniverseIncomplete("knitting did not close up; representation-finiteness not certified")
    mods = list(universe)
    bricks = stable_bricks(mods)
    out = []
    for sel in semibricks(bricks):
        S = [bricks[k] for k in sel]
        st = closure(S, cap, universe=mods)
        if st.covers(mods):
            out.append(S)
    return out


# -- ladders -------------------------------------------------------------------

@dataclass
class StratLadder:
    tube: object
    i: int
    mode: str                        # "theorem1" or "theorem2"
    descent: tuple = None            # (j_0 = n, j_1, ..., j_a) for theorem2

    @property
    def start(self):
        return 1 if self.mode == "theorem1" else 0

    def coords(self, l):
        """Tube coordinates (i', r) with M_l = Omega(X_i'(r))."""
        T, n = self.tube, self.tube.rank
        if self.mode == "theorem1":
            if l < 1:
                raise ValueError("theorem1 ladders start at 1")
            return (T.bar(self.i - l), l + 1)
        a = len(self.descent) - 1
        m, t = divmod(l, a + 1)
        return (T.bar(self.i), m * n + self.descent[t])

    def lookahead(self):
        return 1 if self.mode == "theorem1" else len(self.descent)

    def member(self, l):
        i, r = self.coords(l)
        return omega(self.tube.module(i, r))

    def label(self, l):
        i, r = self.coords(l)
        return "Omega X_%d(%d)" % (i, r)

    def system_members(self):
        """The modules the ladder is built against (quasi-simples or X_i(n) and S_t)."""
        T, n = self.tube, self.tube.rank
        if self.mode == "theorem1":
            return [T.module(k, 1) for k in range(1, n + 1)]
        out = [T.module(self.i, n)]
        for t in range(1, len(self.descent)):
            jt, jp = self.descent[t], self.descent[t - 1]
            out.append(omega(T.module(self.i + jt, jp - jt)))
        return out


def descent_from_system(T, i, S):
    """Recover n = j_0 > j_1 > ... > j_a >= 1 from S by scanning wings."""
    n = T.rank
    js = [n]
    while True:
        prev = js[-1]
        hits = []
        for j in range(1, prev):
            cand = omega(T.module(i + j, prev - j))
            if any(is_isomorphic(cand, X) for X in S):
                hits.append(j)
        if not hits:
            return tuple(js)
        if len(hits) > 1:
            raise HypothesisUnmet("several S_t candidates %s: S is not a semibrick" % hits)
        js.append(hits[0])


def triangle_cone(M, T):
    """N in the non-split triangle N -> M -> T -> when stHom(M, T) is a line.

    Returns (class vector, projective-free summands of N)."""
    U = omega(T)
    ext = Ext1(M, U)
    if ext.dim != 1:
        raise ConditionFailed("Ext^1(M, Omega T) has dim %d" % ext.dim, None, None)
    v = np.array([1], dtype=fp.DTYPE)
    E, _, _ = ext.middle(v)
    return [1], stable_parts(E)


def _match_ladder(parts, members, l):
    out = []
    for Y in parts:
        hit = None
        for k in sorted(members):
            if k > l and members[k].dims == Y.dims and is_isomorphic(members[k], Y):
                hit = k
                break
        if hit is None:
            return None
        out.append(hit)
    return out


def _canonical(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _digest(body):
    return hashlib.sha256(_canonical(body).encode()).hexdigest()


def main_strat_certify(L, S, depth=6):
    """Check both conditions of the ladder criterion for l = start .. start+depth-1."""
    S = list(S)
    T = L.tube
    last = L.start + depth - 1 + L.lookahead()
    if last > 64 * max(T.rank, 1):
        raise DepthExceeded("ladder depth too large")
    members = {l: L.member(l) for l in range(L.start, last + 1)}
    for l, M in members.items():
        if len(indecomposable_summands(M)) != 1 or is_projective_indec(M):
            raise ConditionFailed("ladder member %d is not a non-projective indecomposable" % l,
                                  l, None)
    keys = sorted(members)
    for a, b in itertools.combinations(keys, 2):
        if is_isomorphic(members[a], members[b]):
            raise ConditionFailed("ladder members %d and %d are isomorphic" % (a, b), a, None)
    checks = []
    for l in range(L.start, L.start + depth):
        M = members[l]
        for k, X in enumerate(S):
            if is_isomorphic(M, X):
                raise ConditionFailed("M_%d is isomorphic to system member %d" % (l, k), l, k)
        homs = []
        for k, X in enumerate(S):
            d = stable_dim(M, X)
            entry = {"target": k, "stable_dim": d}
            if d > 1:
                raise ConditionFailed("stHom(M_%d, S_%d) has dim %d" % (l, k, d), l, k)
            if d == 1:
                cls, parts = triangle_cone(M, X)
                idx = _match_ladder(parts, members, l)
                if idx is None or not idx:
                    raise ConditionFailed("cone of M_%d -> S_%d is not a later ladder member"
                                          % (l, k), l, k)
                entry["class"] = cls
                entry["cone"] = idx
            homs.append(entry)
        checks.append({"l": l, "homs": homs})
    body = {
        "kind": "main_strat",
        "mode": L.mode,
        "algebra": print_algebra(T.component.A),
        "tube": {"rank": T.rank, "i": L.i, "descent": list(L.descent) if L.descent else None},
        "system": [X.to_json() for X in S],
        "ladder": [{"l": l, "label": L.label(l), "module": members[l].to_json()} for l in keys],
        "checks": checks,
        "depth": depth,
    }
    return Certificate(body, _digest(body))


@dataclass
class Certificate:
    body: dict
    digest: str

    def to_json(self):
        out = dict(self.body)
        out["digest"] = self.digest
        return out

    def dumps(self):
        return _canonical(self.to_json())


@dataclass
class ReplayReport:
    ok: bool
    errors: list

    def to_json(self):
        return {"ok": self.ok, "errors": self.errors}


def replay(data):
    """Re-verify a certificate from its JSON alone (text, bytes or dict)."""
    errors = []
    try:
        if isinstance(data, bytes):
            data = data.decode("utf-8")
        if isinstance(data, str):
            data = json.loads(data)
        body = {k: v for k, v in data.items() if k != "digest"}
        if data.get("digest") != _digest(body):
            return ReplayReport(False, ["digest mismatch"])
        if body.get("kind") != "main_strat":
            return ReplayReport(False, ["unknown certificate kind"])
        A = parse_algebra(body["algebra"])
        S = [Rep.from_json(A, x) for x in body["system"]]
        ladder = {int(e["l"]): Rep.from_json(A, e["module"]) for e in body["ladder"]}
        for l, M in ladder.items():
            if len(indecomposable_summands(M)) != 1 or is_projective_indec(M):
                errors.append("member %d not a non-projective indecomposable" % l)
        for a, b in itertools.combinations(sorted(ladder), 2):
            if is_isomorphic(ladder[a], ladder[b]):
                errors.append("members %d and %d isomorphic" % (a, b))
        if len(body["checks"]) != body["depth"]:
            errors.append("check count does not match depth")
        for chk in body["checks"]:
            l = int(chk["l"])
            M = ladder[l]
            for k, X in enumerate(S):
                if is_isomorphic(M, X):
                    errors.append("M_%d isomorphic to system member %d" % (l, k))
            if sorted(h["target"] for h in chk["homs"]) != list(range(len(S))):
                errors.append("M_%d: targets incomplete" % l)
                continue
            for h in chk["homs"]:
                X = S[h["target"]]
                d = stable_dim(M, X)
                if d != h["stable_dim"] or d > 1:
                    errors.append("M_%d -> S_%d: stable dim %d, recorded %s"
                                  % (l, h["target"], d, h["stable_dim"]))
                    continue
                if d == 1:
                    ext = Ext1(M, omega(X))
                    v = np.array(h["class"], dtype=fp.DTYPE) % A.p
                    if ext.dim != 1 or v.shape != (1,) or not v.any():
                        errors.append("M_%d -> S_%d: bad class" % (l, h["target"]))
                        continue
                    E, _, _ = ext.middle(v)
                    idx = _match_ladder(stable_parts(E), ladder, l)
                    if idx is None or sorted(idx) != sorted(h["cone"]) or not idx:
                        errors.append("M_%d -> S_%d: cone mismatch" % (l, h["target"]))
    except (SmsLabError, KeyError, TypeError, ValueError, IndexError, AttributeError) as e:
        errors.append("malformed certificate: %s" % e)
    return ReplayReport(not errors, errors)


# -- theorem checks --------------------------------------------------------------

@dataclass
class TheoremReport:
    rank: int
    members_in_tube: list            # (index in S, (i, r))
    quasi_lengths: list
    branch: str
    holds: object
    certificate: object = None
    notes: list = field(default_factory=list)

    def to_json(self):
        out = {"rank": self.rank, "members_in_tube": [[k, list(c)] for k, c in self.members_in_tube],
               "quasi_lengths": self.quasi_lengths, "branch": self.branch, "holds": self.holds,
               "notes": self.notes}
        if self.certificate is not None:
            out["certificate_digest"] = self.certificate.digest
        return out


def theorem_check(S, T, depth=6, universe=None):
    S = list(S)
    n = T.rank
    T.ensure_depth(n + 1)
    inside = []
    for k, X in enumerate(S):
        c = T.locate(X, max_r=n + 1)
        if c is not None:
            inside.append((k, c))
    qls = [c[1] for _, c in inside]
    count = len(inside)
    if universe is not None and getattr(universe, "complete", False):
        flags = classify_system(S, universe)
        if flags.sms:
            holds = count < n and all(q < n for q in qls)
            return TheoremReport(n, inside, qls, "sms certified", holds)
    long_ones = [(k, c) for k, c in inside if c[1] >= n]
    if count >= n and all(c[1] == 1 for _, c in inside) and \
            {T.bar(c[0]) for _, c in inside} == set(range(1, n + 1)):
        L = StratLadder(T, 1, "theorem1")
        cert = main_strat_certify(L, S, depth)
        return TheoremReport(n, inside, qls, "theorem1 ladder", True, cert,
                             ["not an sms (certified to depth %d)" % depth])
    for k, (i, r) in long_ones:
        if r > n:
            if stable_dim(S[k], S[k]) >= 2:
                return TheoremReport(n, inside, qls, "not a stable brick", True,
                                     notes=["member %d of quasi-length %d is not a stable brick" % (k, r)])
        if r == n:
            L = StratLadder(T, i, "theorem2", descent_from_system(T, i, S))
            cert = main_strat_certify(L, S, depth)
            return TheoremReport(n, inside, qls, "theorem2 ladder", True, cert,
                                 ["not an sms (certified to depth %d)" % depth])
    if count >= n:
        verdict = semibrick_check(S)
        return TheoremReport(n, inside, qls, "not a semibrick", not verdict.is_semibrick)
    return TheoremReport(n, inside, qls, "bounds hold", True)
