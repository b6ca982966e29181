"""Numeric checks of the stable Hom identities for modules in a tube.

Each check evaluates both sides of an identity with stable_dim over a
bounded parameter range and returns a LemmaReport. Notation as in arknit:
X_i(r) starts at the quasi-simple X_i, [r]X_i = X_{i-r+1}(r) ends at it,
tau X_i(r) = X_{i-1}(r).
"""

import itertools
from dataclasses import dataclass, field

from .arknit import wing_coords
from .decompose import is_isomorphic, is_projective_indec
from .errors import DepthExceeded, HypothesisUnmet
from .sms import descent_from_system, semibricks, stable_bricks
from .stable import omega, omega_inv, semibrick_check, stable_dim

MAX_DEPTH = 24


@dataclass
class LemmaReport:
    lemma_id: str
    depth: int
    verdict: str                 # pass | fail | inconclusive | hypothesis_unmet
    rows: list = field(default_factory=list)
    counterexample: dict = None
    notes: list = field(default_factory=list)

    @property
    def passed(self):
        return self.verdict == "pass"

    def to_json(self):
        return {"lemma": self.lemma_id, "depth": self.depth, "verdict": self.verdict,
                "checked": sum(1 for r in self.rows if not r.get("skipped")),
                "skipped": sum(1 for r in self.rows if r.get("skipped")),
                "rows": self.rows, "counterexample": self.counterexample, "notes": self.notes}


class _Ctx:
    """Tube access with cached Omega images and tube locations."""

    def __init__(self, T, depth):
        self.T, self.n, self.depth = T, T.rank, depth
        self.A = T.component.A
        T.ensure_depth(depth + 1)
        self._loc = {}

    def X(self, i, r):
        return self.T.module(i, r)

    def R(self, r, i):
        """[r]X_i."""
        return self.T.module(i - r + 1, r)

    def bar(self, i):
        return self.T.bar(i)

    def locate(self, M):
        key = id(M)
        if key not in self._loc:
            self._loc[key] = (M, self.T.locate(M))
        return self._loc[key][1]

    def in_wing(self, M, j, l):
        c = self.locate(M)
        return c is not None and c in wing_coords(self.n, self.bar(j), l)

    def quasi_simples(self):
        return [self.X(i, 1) for i in range(1, self.n + 1)]

    def probes(self):
        """Non-projective indecomposables inside and outside the tube."""
        out = []
        for v in range(self.A.n_vertices):
            S = self.A.simple(v)
            if not is_projective_indec(S):
                out.append(S)
        for i in range(1, self.n + 1):
            for r in range(1, self.n + 2):
                out.append(self.X(i, r))
            for r in range(1, self.n + 1):
                out.append(omega(self.X(i, r)))
            out.append(omega_inv(self.X(i, 1)))
        uniq = []
        for M in out:
            if not any(M.dims == U.dims and is_isomorphic(M, U) for U in uniq):
                uniq.append(M)
        return uniq

    def brick(self, M):
        return stable_dim(M, M) == 1

    def xn_brick(self, i):
        return self.brick(self.X(i, self.n))


def _report(lemma_id, depth, rows, notes=None):
    bad = [r for r in rows if not r.get("skipped") and not r["ok"]]
    checked = [r for r in rows if not r.get("skipped")]
    if bad:
        verdict = "fail"
    elif not checked:
        verdict = "hypothesis_unmet"
    else:
        verdict = "pass"
    return LemmaReport(lemma_id, depth, verdict, rows, bad[0] if bad else None, notes or [])


def _row(params, lhs, rhs, ok, **extra):
    out = {"params": params, "lhs": lhs, "rhs": rhs, "ok": bool(ok)}
    out.update(extra)
    return out


def _skip(params, reason):
    return {"params": params, "skipped": True, "reason": reason, "ok": True}


def _delta(a, b):
    return 1 if a == b else 0


# -- section 3 ---------------------------------------------------------------

def check_sectional_path_mor(c):
    rows = []
    for i in range(1, c.n + 1):
        for r in range(2, c.depth + 1):
            for s in range(1, r):
                d1 = stable_dim(c.R(r, i), c.R(s, i))
                # tau^{r-s} [s]X_i = X_{i-r+1}(s)
                d2 = stable_dim(c.X(i - r + 1, s), c.R(r, i))
                rows.append(_row({"i": i, "r": r, "s": s}, [d1, d2], ">0", d1 > 0 and d2 > 0))
    return rows, ["nonvanishing of the stable Hom space is checked, not the composite map itself"]


def check_stbrick_induces_hom(c):
    rows = []
    for i in range(1, c.n + 1):
        for r in range(2, c.depth + 1):
            if not c.brick(c.X(i, r)):
                rows.append(_skip({"i": i, "r": r}, "X_i(r) not a stable brick"))
                continue
            for l in range(1, r):
                for j in range(1, c.depth - (r - l) + 1):
                    d = stable_dim(c.X(i, r), c.X(i + l, r - l + j))
                    rows.append(_row({"i": i, "r": r, "l": l, "j": j}, d, ">0", d > 0))
    return rows, ["nonvanishing of the stable Hom space is checked, not the composite map itself"]


# -- section 4 ---------------------------------------------------------------

def check_r_lt_n(c):
    rows = []
    for i in range(1, c.n + 1):
        for r in range(c.n + 1, c.depth + 1):
            d = stable_dim(c.X(i, r), c.X(i, r))
            rows.append(_row({"i": i, "r": r}, d, ">=2", d >= 2))
    return rows, []


def _tube_bricks(c):
    out = []
    for r in range(1, c.n + 1):
        for i in range(1, c.n + 1):
            M = c.X(i, r)
            if c.brick(M):
                out.append(((i, r), M))
    return out


def check_card_lt_n(c):
    bricks = _tube_bricks(c)
    mods = [M for _, M in bricks]
    rows = []
    for k, ((i, r), M) in enumerate(bricks):
        if r == 1:
            continue
        sets = semibricks(mods, must=(k,))
        size = max(len(s) for s in sets)
        rows.append(_row({"i": i, "r": r}, size, "<%d" % c.n, size < c.n))
    if not rows:
        rows.append(_skip({}, "no stable brick of quasi-length > 1 in the tube"))
    return rows, ["tube bricks searched up to quasi-length n; longer ones are covered by r<n"]


def check_orthogonality(c):
    rows = []
    qs = c.quasi_simples()
    for k, S in enumerate(c.probes()):
        if all(stable_dim(X, S) == 0 for X in qs):
            vals = [stable_dim(c.X(i, r), S) + stable_dim(c.R(r, i), S)
                    for i in range(1, c.n + 1) for r in range(1, c.depth + 1)]
            rows.append(_row({"probe": k, "part": "a", "dims": list(S.dims)}, max(vals), 0,
                             max(vals) == 0))
        else:
            rows.append(_skip({"probe": k, "part": "a"}, "Hom from quasi-simples nonzero"))
        if all(stable_dim(S, X) == 0 for X in qs):
            vals = [stable_dim(S, c.X(i, r)) + stable_dim(S, c.R(r, i))
                    for i in range(1, c.n + 1) for r in range(1, c.depth + 1)]
            rows.append(_row({"probe": k, "part": "b", "dims": list(S.dims)}, max(vals), 0,
                             max(vals) == 0))
        else:
            rows.append(_skip({"probe": k, "part": "b"}, "Hom to quasi-simples nonzero"))
    return rows, []


def check_omega_orthogonality(c):
    rows = []
    qs = c.quasi_simples()
    for k, S in enumerate(c.probes()):
        if any(stable_dim(S, X) for X in qs):
            rows.append(_skip({"probe": k}, "Hom to quasi-simples nonzero"))
            continue
        vals = [stable_dim(omega(c.X(i, r)), S)
                for i in range(1, c.n + 1) for r in range(1, c.depth + 1)]
        rows.append(_row({"probe": k, "dims": list(S.dims)}, max(vals), 0, max(vals) == 0))
    return rows, []


def _qs_semibrick(c):
    return semibrick_check(c.quasi_simples()).is_semibrick


def check_dimensionformula2(c):
    if not _qs_semibrick(c):
        return [_skip({}, "quasi-simples do not form a stable semibrick")], []
    rows = []
    for i in range(1, c.n + 1):
        for j in range(1, c.n + 1):
            for r in range(1, c.depth + 1):
                e = _delta(i, j)
                a = stable_dim(c.X(j, 1), c.X(i, r))
                b = stable_dim(c.R(r, i), c.X(j, 1))
                d = stable_dim(omega(c.X(i + 1, r)), c.X(j, 1))
                rows.append(_row({"i": i, "j": j, "r": r}, [a, b, d], [e, e, e],
                                 a == e and b == e and d == e))
    return rows, []


def check_dimsum(c):
    rows = []
    probes = c.probes()
    for k, M in enumerate(probes):
        Mi, Mo = omega_inv(M), omega(M)
        for i in range(1, c.n + 1):
            for r in range(2, c.depth + 1):
                p = {"probe": k, "i": i, "r": r}
                if c.in_wing(M, i + 1, r - 1) or c.in_wing(Mi, i + 1, r - 1):
                    rows.append(_skip(dict(p, part="i"), "wing hypothesis"))
                else:
                    lhs = stable_dim(M, c.X(i, r))
                    rhs = sum(stable_dim(M, c.X(i + j, 1)) for j in range(r))
                    rows.append(_row(dict(p, part="i"), lhs, rhs, lhs == rhs))
                if c.in_wing(M, i, r - 1) or c.in_wing(Mo, i, r - 1):
                    rows.append(_skip(dict(p, part="ii"), "wing hypothesis"))
                else:
                    lhs = stable_dim(c.X(i, r), M)
                    rhs = sum(stable_dim(c.X(i + j, 1), M) for j in range(r))
                    rows.append(_row(dict(p, part="ii"), lhs, rhs, lhs == rhs))
    return rows, []


# -- section 5 ---------------------------------------------------------------

def _xn_conditions(c, extended):
    n = c.n
    rng = range(1, n + 1)
    bricks = [c.xn_brick(j) for j in rng]
    conds = {
        "i": any(bricks),
        "ii": all(bricks),
        "iii": all(stable_dim(c.X(l, 1), c.X(j, n)) == _delta(j, l) for j in rng for l in rng),
        "iii'": all(stable_dim(c.R(n, l), c.X(j, 1)) == _delta(j, l) for j in rng for l in rng),
    }
    if extended:
        conds["iv"] = all(stable_dim(c.X(l, 1), c.X(j, r)) == _delta(j, l)
                          for j in rng for l in rng for r in range(1, c.depth + 1))
        conds["iv'"] = all(stable_dim(c.R(r, l), c.X(j, 1)) == _delta(j, l)
                           for j in rng for l in rng for r in range(1, c.depth + 1))
        conds["v"] = _qs_semibrick(c)
    return conds


def check_xl_xj_n(c):
    conds = _xn_conditions(c, False)
    vals = set(conds.values())
    return [_row({}, conds, "all equal", len(vals) == 1)], []


def check_xi_n_stbrick(c):
    conds = _xn_conditions(c, True)
    vals = set(conds.values())
    return [_row({}, conds, "all equal", len(vals) == 1)], []


def check_omega_fix_c(c):
    rows = []
    qs = c.quasi_simples()
    for i in range(1, c.n + 1):
        if not c.xn_brick(i):
            rows.append(_skip({"i": i}, "X_i(n) not a stable brick"))
            continue
        hits = []
        for name, f in (("omega^-1", omega_inv), ("omega", omega)):
            Y = f(c.X(i, 1))
            hits += [(name, j + 1) for j, X in enumerate(qs) if is_isomorphic(Y, X)]
        rows.append(_row({"i": i}, hits, [], not hits))
    return rows, []


def _wing_in(n, i):
    """Coordinates (j, s) with X_{i+j}(s) in the wing W_{i+1, n-1}."""
    return [(j, s) for j in range(1, n) for s in range(1, n - j + 1)]


def _bar0(n, x):
    return (x - 1) % n + 1


def check_hi_hom(c):
    rows = []
    n = c.n
    for i in range(1, n + 1):
        if not c.xn_brick(i):
            rows.append(_skip({"i": i}, "X_i(n) not a stable brick"))
            continue
        for r in range(1, c.depth + 1):
            for j, s in _wing_in(n, i):
                e = 1 if j <= _bar0(n, r - 1) < j + s else 0
                d = stable_dim(c.X(i, r), c.X(i + j, s))
                rows.append(_row({"i": i, "r": r, "j": j, "s": s}, d, e, d == e))
    return rows, []


def all_descents(n):
    out = []
    for k in range(0, n):
        for js in itertools.combinations(range(n - 1, 0, -1), k):
            out.append((n,) + js)
    return out


def check_s_t_hom(c, literal=False):
    """Rows with j <= j_t follow the delta pattern. For j > j_t the target
    leaves the wing used by the argument, and dimsum (ii) predicts 0 there;
    literal=True applies the delta pattern to every row instead."""
    rows = []
    n = c.n
    for i in range(1, n + 1):
        if not c.xn_brick(i):
            rows.append(_skip({"i": i}, "X_i(n) not a stable brick"))
            continue
        for js in all_descents(n):
            a = len(js) - 1
            for t in range(1, a + 1):
                target = c.X(i + js[t], js[t - 1] - js[t])
                for j, s in _wing_in(n, i):
                    hit = [b for b in range(1, a + 1) if js[b] < s + j <= js[b - 1]]
                    e = _delta(t, hit[0]) if hit else 0
                    inside = j <= js[t]
                    if not inside and not literal:
                        e = 0
                    d = stable_dim(c.X(i + j, s), target)
                    rows.append(_row({"i": i, "descent": list(js), "t": t, "j": j, "s": s},
                                     d, e, d == e, domain="delta" if inside else "beyond j_t"))
    notes = [] if literal else [
        "delta pattern checked for j <= j_t; rows with j > j_t are checked against 0"]
    return rows, notes


def _omega_pool(c, i):
    """Stable bricks Omega(X_a(b)), b <= n, orthogonal to X_i(n), with coords."""
    Xn = c.X(i, c.n)
    out = []
    for b in range(1, c.n + 1):
        for a in range(1, c.n + 1):
            M = omega(c.X(a, b))
            if c.brick(M) and stable_dim(M, Xn) == 0 and stable_dim(Xn, M) == 0:
                out.append(((a, b), M))
    return out


def _systems_with_xn(c, i, limit=256):
    pool = _omega_pool(c, i)
    mods = [c.X(i, c.n)] + [M for _, M in pool]
    coords = [None] + [ab for ab, _ in pool]
    sets = semibricks(mods, must=(0,))
    return [([mods[k] for k in s], [coords[k] for k in s]) for s in sets[:limit]], len(sets)


def check_omega_config(c):
    rows = []
    n = c.n
    for i in range(1, n + 1):
        if not c.xn_brick(i):
            rows.append(_skip({"i": i}, "X_i(n) not a stable brick"))
            continue
        systems, total = _systems_with_xn(c, i)
        for S, coords in systems:
            js = descent_from_system(c.T, i, S)
            a = len(js) - 1
            for ab in coords[1:]:
                cases = []
                st = [c.bar(i + js[t]) == ab[0] and js[t - 1] - js[t] == ab[1]
                      for t in range(1, a + 1)]
                if any(st):
                    cases.append("i")
                if any(tuple(ab) in wing_coords(n, c.bar(i + js[t] + 1), js[t - 1] - js[t] - 2)
                       for t in range(1, a + 1)):
                    cases.append("ii")
                if tuple(ab) in wing_coords(n, c.bar(i + 1), js[a] - 2):
                    cases.append("iii")
                rows.append(_row({"i": i, "descent": list(js), "member": list(ab)}, cases,
                                 "exactly one", len(cases) == 1))
            if len(coords) == 1:
                rows.append(_row({"i": i, "descent": list(js), "member": None}, [], "vacuous", True))
    return rows, ["semibricks drawn from X_i(n) and the stable bricks Omega(X_a(b)), b <= n"]


def check_omega_hom(c):
    rows = []
    n = c.n
    for i in range(1, n + 1):
        if not c.xn_brick(i):
            rows.append(_skip({"i": i}, "X_i(n) not a stable brick"))
            continue
        Xn = c.X(i, n)
        systems, total = _systems_with_xn(c, i)
        for S, coords in systems:
            js = descent_from_system(c.T, i, S)
            a = len(js) - 1
            St = [None] + [omega(c.X(i + js[t], js[t - 1] - js[t])) for t in range(1, a + 1)]
            for t in range(a + 1):
                for m in range(0, c.depth):
                    r = m * n + js[t]
                    if r > c.depth:
                        break
                    M = omega(c.X(i, r))
                    d = stable_dim(M, Xn)
                    rows.append(_row({"i": i, "descent": list(js), "t": t, "m": m, "part": "i"},
                                     d, 1, d == 1))
                    for k, Y in enumerate(S[1:], start=1):
                        e = 1 if (t < a and is_isomorphic(Y, St[t + 1])) else 0
                        d = stable_dim(M, Y)
                        rows.append(_row({"i": i, "descent": list(js), "t": t, "m": m,
                                          "part": "ii", "member": list(coords[k])}, d, e, d == e))
    return rows, []


REGISTRY = {
    "sectional-path-mor": check_sectional_path_mor,
    "stbrick-induces-hom": check_stbrick_induces_hom,
    "r<n": check_r_lt_n,
    "|S|<n": check_card_lt_n,
    "orthogonality": check_orthogonality,
    "omega-orthogonality": check_omega_orthogonality,
    "dimensionformula2": check_dimensionformula2,
    "dimsum": check_dimsum,
    "Xl-Xj(n)": check_xl_xj_n,
    "Xi(n)-stbrick": check_xi_n_stbrick,
    "omega-fix-C": check_omega_fix_c,
    "hi-hom": check_hi_hom,
    "S_t-hom": check_s_t_hom,
    "OmegaConfig": check_omega_config,
    "OmegaHom": check_omega_hom,
}


def verify_lemma(T, lemma_id, depth=None, literal=False):
    """Run one registry check on the tube T up to quasi-length depth (default 2n+2).

    literal only affects S_t-hom (see check_s_t_hom)."""
    if lemma_id not in REGISTRY:
        raise KeyError("unknown lemma %r; known: %s" % (lemma_id, ", ".join(sorted(REGISTRY))))
    depth = depth or 2 * T.rank + 2
    if depth > MAX_DEPTH:
        raise DepthExceeded("depth %d above %d" % (depth, MAX_DEPTH))
    c = _Ctx(T, depth)
    try:
        if lemma_id == "S_t-hom":
            rows, notes = check_s_t_hom(c, literal)
        else:
            rows, notes = REGISTRY[lemma_id](c)
    except HypothesisUnmet as e:
        return LemmaReport(lemma_id, depth, "hypothesis_unmet", notes=[str(e)])
    return _report(lemma_id, depth, rows, notes)
