"""Almost split sequences, knitting of AR components and tube coordinates.

Tube conventions: quasi-simples X_1..X_n with tau X_i = X_{i-1}; X_i(r) is
the module of quasi-length r on the sectional path starting at X_i, and the
mesh ending at X_{i+1}(r) reads

    0 -> X_i(r) -> X_i(r+1) + X_{i+1}(r-1) (+ projectives) -> X_{i+1}(r) -> 0.

[r]X_i, the module of quasi-length r on the sectional path ending at X_i,
is X_{i-r+1}(r).
"""

import itertools
import json
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from . import fp
from .decompose import (Decomposition, decompose, end_with_radical, indecomposable_summands,
                        is_isomorphic, is_projective_indec, strip_projectives)
from .errors import (BoundExceeded, CapExceeded, NonSplitResidue, NotFound,
                     NotQuasiSerial, ProjectiveInput, SocleNotLine)
from .rep import compose, hom_space, layers, socle_spaces, radical_spaces, submodule, quotient
from .stable import Ext1, tau

SWEEP_CAP = 10 ** 6


@dataclass
class ARSequence:
    left: object
    middle: Decomposition
    right: object
    cls: np.ndarray
    ext: Ext1
    module: object          # the middle term E itself
    x_to_e: list
    e_to_n: list

    def check_exact(self):
        """Injective, surjective, composite zero and dims add up."""
        from .rep import is_injective_map, is_surjective_map
        p = self.right.p
        comp = compose(self.x_to_e, self.e_to_n, p)
        ok = (is_injective_map(self.x_to_e, p) and is_surjective_map(self.e_to_n, p)
              and not any(np.any(c) for c in comp)
              and self.left.dim + self.right.dim == self.module.dim)
        return ok

    def is_split(self):
        """True when E -> N admits a section."""
        p = self.right.p
        N, E = self.right, self.module
        H = hom_space(N, E)
        target = np.concatenate([fp.eye(d).ravel() for d in N.dims])
        cols = [np.concatenate([m.ravel() for m in compose(H.map(k), self.e_to_n, p)])
                for k in range(H.dim)]
        if not cols:
            return not target.any()
        return fp.solve(np.column_stack(cols), target, p) is not None

    def lifting_defect(self, Y):
        """dim of rad(Y, N) minus the dim of maps Y -> N factoring through E.

        Zero exactly when every non-isomorphism Y -> N factors through E -> N
        (Y indecomposable)."""
        p = self.right.p
        N, E = self.right, self.module
        HN = hom_space(Y, N)
        if HN.dim == 0:
            return 0
        HE = hom_space(Y, E)
        imgs = [HN.coords(compose(HE.map(k), self.e_to_n, p)) for k in range(HE.dim)]
        rank = fp.rank(np.array(imgs, dtype=fp.DTYPE), p) if imgs else 0
        if is_isomorphic(Y, N):
            rad_dim = HN.dim - 1
        else:
            rad_dim = HN.dim
        return rad_dim - rank

    def stable_middle(self):
        return self.middle.nonprojective()


def ar_sequence(N):
    if "ar" in N._cache:
        return N._cache["ar"]
    if len(indecomposable_summands(N)) != 1:
        raise ValueError("ar_sequence needs an indecomposable module")
    if is_projective_indec(N):
        raise ProjectiveInput("no almost split sequence ends at a projective")
    p = N.p
    X = tau(N)
    ext = Ext1(N, X)
    ed = end_with_radical(N)
    if ed.residue_dim != 1:
        raise NonSplitResidue("End(N)/rad has dimension %d" % ed.residue_dim)
    d = ext.dim
    blocks = []
    for k in range(ed.radical.shape[1]):
        r = ed.element(ed.radical[:, k])
        lift = ext.lift_endomorphism(r)
        cols = [ext.act(np.eye(d, dtype=fp.DTYPE)[:, c], lift) for c in range(d)]
        blocks.append(np.column_stack(cols) if cols else fp.zeros(0, 0))
    soc = fp.nullspace(np.vstack(blocks), p) if blocks and d else fp.eye(d)
    if soc.shape[1] != 1:
        raise SocleNotLine("socle of Ext^1(N, tau N) over End(N) has dim %d" % soc.shape[1])
    cls = soc[:, 0]
    cls = (cls * fp.inv(cls[np.nonzero(cls)[0][0]], p)) % p
    E, x_to_e, e_to_n = ext.middle(cls)
    seq = ARSequence(X, decompose(E), N, cls, ext, E, x_to_e, e_to_n)
    N._cache["ar"] = seq
    return seq


# -- knitting ---------------------------------------------------------------

@dataclass
class Node:
    id: int
    rep: object
    projective: bool
    tau: int = None
    tau_inv: int = None
    middle: list = None       # [(node id, multiplicity)] of the AR sequence ending here
    expanded: bool = False

    @property
    def dims(self):
        return self.rep.dims


class Component:
    """Knitted part of an AR component: nodes, irreducible maps and tau."""

    def __init__(self, A):
        self.A = A
        self.nodes = []
        self.by_inv = {}
        self.arrows = {}          # (i, j) -> multiplicity
        self.max_dim = 0

    def find(self, M):
        for k in self.by_inv.get(M.invariant(), []):
            if is_isomorphic(self.nodes[k].rep, M):
                return k
        return None

    def add(self, M):
        k = self.find(M)
        if k is not None:
            return k
        k = len(self.nodes)
        self.nodes.append(Node(k, M, is_projective_indec(M)))
        self.by_inv.setdefault(M.invariant(), []).append(k)
        return k

    def frontier(self):
        return [n.id for n in self.nodes if not n.expanded]

    def stable_ids(self):
        return [n.id for n in self.nodes if not n.projective]

    def expand(self, k):
        node = self.nodes[k]
        if node.expanded:
            return
        M = node.rep
        if node.projective:
            top, rad, soc = layers(M)
            if rad.dim:
                r = self.add(rad)
                self._arrow(r, k, 1)
            socsp = socle_spaces(M)
            Q, _ = quotient(M, socsp)
            if Q.dim:
                q = self.add(Q)
                self._arrow(k, q, 1)
            node.expanded = True
            return
        seq = ar_sequence(M)
        t = self.add(seq.left)
        node.tau = t
        self.nodes[t].tau_inv = k
        node.middle = []
        for Y, mult in seq.middle.summands:
            y = self.add(Y)
            node.middle.append((y, mult))
            self._arrow(y, k, mult)
            self._arrow(t, y, mult)
        ti = self.add(tau(M, -1))
        node.tau_inv = ti
        self.nodes[ti].tau = k
        node.expanded = True

    def _arrow(self, i, j, m):
        self.arrows[(i, j)] = max(self.arrows.get((i, j), 0), m)

    def knit(self, max_dim, max_nodes=400):
        self.max_dim = max(self.max_dim, max_dim)
        queue = deque(n.id for n in self.nodes if not n.expanded)
        while queue:
            k = queue.popleft()
            node = self.nodes[k]
            if node.expanded or node.rep.dim > max_dim:
                continue
            before = len(self.nodes)
            self.expand(k)
            queue.extend(range(before, len(self.nodes)))
            if len(self.nodes) > max_nodes:
                break
        return self

    @property
    def complete(self):
        """True when every node has been expanded (the component is finite)."""
        return all(n.expanded for n in self.nodes)

    def stable_predecessors(self, k):
        node = self.nodes[k]
        if node.middle is None:
            return None
        return [(y, m) for y, m in node.middle if not self.nodes[y].projective]

    def successors(self, k):
        return sorted((j, m) for (i, j), m in self.arrows.items() if i == k)

    def tau_period(self, k, limit=64):
        seen = k
        for step in range(1, limit + 1):
            node = self.nodes[seen]
            if node.tau is None:
                return None
            seen = node.tau
            if seen == k:
                return step
        return None

    def to_json(self, coords=None, only=None):
        coords = coords or {}
        keep = range(len(self.nodes)) if only is None else only
        order = sorted(keep,
                       key=lambda k: (self.nodes[k].rep.dim, self.nodes[k].dims,
                                      self.nodes[k].rep.fingerprint()))
        pos = {k: r for r, k in enumerate(order)}
        nodes = []
        for k in order:
            n = self.nodes[k]
            entry = {"id": pos[k], "dims": list(n.dims), "fingerprint": n.rep.fingerprint(),
                     "projective": n.projective, "expanded": n.expanded}
            if n.tau is not None and n.tau in pos:
                entry["tau"] = pos[n.tau]
            if k in coords:
                entry["coords"] = list(coords[k])
            nodes.append(entry)
        arrows = sorted([pos[i], pos[j], m] for (i, j), m in self.arrows.items()
                        if i in pos and j in pos)
        return {"algebra": self.A.name, "nodes": nodes, "arrows": arrows}

    def to_dot(self, coords=None, only=None):
        data = self.to_json(coords, only)
        lines = ["digraph AR {", "  rankdir=LR;"]
        for n in data["nodes"]:
            label = "".join(str(d) for d in n["dims"])
            if "coords" in n:
                label += "\\nX%d(%d)" % tuple(n["coords"])
            shape = ' peripheries=2' if n["projective"] else ""
            lines.append('  n%d [label="%s"%s];' % (n["id"], label, shape))
        for i, j, m in data["arrows"]:
            for _ in range(m):
                lines.append("  n%d -> n%d;" % (i, j))
        for n in data["nodes"]:
            if "tau" in n:
                lines.append("  n%d -> n%d [style=dashed];" % (n["id"], n["tau"]))
        lines.append("}")
        return "\n".join(lines) + "\n"


def knit_component(seed, max_dim=None, max_nodes=400):
    seed = strip_projectives(seed) if not is_projective_indec(seed) else seed
    if len(indecomposable_summands(seed)) != 1:
        raise ValueError("seed must be indecomposable")
    C = Component(seed.A)
    C.add(seed)
    C.knit(max_dim or 4 * seed.dim + 4, max_nodes)
    return C


# -- tubes -------------------------------------------------------------------

@dataclass
class TubeInfo:
    component: Component
    rank: int
    quasi_simples: list              # node ids of X_1..X_n (0-based list)
    coords: dict = field(default_factory=dict)   # node id -> (i, r), i in 1..n
    verified_depth: int = 0
    grid: dict = field(default_factory=dict)     # (i, r) -> node id

    def node(self, i, r):
        return self.grid[(self.bar(i), r)]

    def bar(self, i):
        return (i - 1) % self.rank + 1

    def module(self, i, r):
        self.ensure_depth(r - 1)
        return self.component.nodes[self.node(i, r)].rep

    def ensure_depth(self, depth):
        while self.verified_depth < depth:
            self._extend()

    def _extend(self):
        """Verify the meshes ending at X_{i+1}(r) for r = verified_depth + 1."""
        C, n = self.component, self.rank
        r = self.verified_depth + 1
        new = {}
        for i in range(1, n + 1):
            src = self.grid[(i, r)]
            C.expand(src)
            right = C.nodes[src].tau_inv
            if right != self.grid.get((self.bar(i + 1), r)):
                raise NotQuasiSerial("tau^-1 X_%d(%d) is not X_%d(%d)" % (i, r, self.bar(i + 1), r))
            C.expand(right)
            preds = C.stable_predecessors(right)
            below = self.grid.get((self.bar(i + 1), r - 1)) if r > 1 else None
            rest = []
            for y, m in preds:
                if y == below:
                    if m != 1:
                        raise NotQuasiSerial("mesh multiplicity %d" % m)
                    below = "seen"
                else:
                    rest += [y] * m
            if (r > 1 and below != "seen") or len(rest) != 1:
                raise NotQuasiSerial("mesh ending at X_%d(%d) does not match the tube pattern"
                                     % (self.bar(i + 1), r))
            new[(i, r + 1)] = rest[0]
        for key, y in new.items():
            if y in self.coords and self.coords[y] != key:
                raise NotQuasiSerial("node reached at two tube coordinates")
            self.grid[key] = y
            self.coords[y] = key
        self.verified_depth = r

    def quasi_length(self, M):
        k = self.locate(M)
        return None if k is None else k[1]

    def locate(self, M, max_r=None):
        """Tube coordinates (i, r) of M among the known nodes, else None."""
        inv = M.invariant()
        for (i, r), k in sorted(self.grid.items(), key=lambda x: (x[0][1], x[0][0])):
            if max_r is not None and r > max_r:
                continue
            X = self.component.nodes[k].rep
            if X.invariant() == inv and is_isomorphic(X, M):
                return (i, r)
        return None

    def _upto(self, depth):
        depth = depth or self.verified_depth
        self.ensure_depth(depth)
        return [k for (i, r), k in self.grid.items() if r <= depth]

    def to_json(self, depth=None):
        """Stable tube nodes X_i(r), r <= depth (default: verified depth)."""
        data = self.component.to_json(self.coords, self._upto(depth))
        data.update({"rank": self.rank, "verified_depth": self.verified_depth})
        return data

    def to_dot(self, depth=None):
        return self.component.to_dot(self.coords, self._upto(depth))


def tube_info(C, depth=2):
    complete = [n.id for n in C.nodes if n.expanded and not n.projective]
    mouth = []
    for k in complete:
        preds = C.stable_predecessors(k)
        if sum(m for _, m in preds) == 1:
            mouth.append(k)
    if not mouth:
        raise NotQuasiSerial("no node with a single stable predecessor among %d knitted nodes"
                             % len(complete))
    start = mouth[0]
    orbit = [start]
    k = start
    while True:
        C.expand(k)
        k = C.nodes[k].tau_inv
        if k == start:
            break
        if len(orbit) > 64:
            raise NotQuasiSerial("mouth is not tau-periodic within 64 steps")
        C.expand(k)
        if sum(m for _, m in C.stable_predecessors(k)) != 1:
            raise NotQuasiSerial("tau-orbit of the mouth leaves the mouth")
        orbit.append(k)
    stray = [k for k in mouth if k not in orbit]
    if stray:
        raise NotQuasiSerial("more than one tau-orbit of mouth nodes")
    n = len(orbit)
    first = min(range(n), key=lambda j: C.nodes[orbit[j]].rep.fingerprint())
    orbit = orbit[first:] + orbit[:first]
    T = TubeInfo(C, n, orbit)
    for i, k in enumerate(orbit, start=1):
        T.grid[(i, 1)] = k
        T.coords[k] = (i, 1)
    T.ensure_depth(depth)
    return T


def tube_from_seed(seed, depth=2, max_dim=None):
    """Knit the component of seed and classify it as a tube verified to depth."""
    C = knit_component(seed, max_dim=max_dim or 3 * seed.dim + 3)
    T = tube_info(C, depth)
    while T.locate(seed) is None and T.verified_depth < 64:
        T.ensure_depth(T.verified_depth + 1)
    return T


def tube_module(T, i, r, style="X"):
    """X_i(r) (style "X") or [r]X_i (style "[r]")."""
    if r < 1:
        raise BoundExceeded("quasi-length must be positive")
    if style in ("X", "X_i(r)"):
        return T.module(i, r)
    return T.module(i - r + 1, r)


@dataclass
class Wing:
    tube: TubeInfo
    j: int
    l: int
    members: list

    def __contains__(self, coord):
        return tuple(coord) in self.members


def wing_coords(n, j, l):
    out = []
    for d in range(0, max(l, 0)):
        for h in range(1, l - d + 1):
            out.append(((j + d - 1) % n + 1, h))
    return sorted(set(out), key=lambda c: (c[1], c[0]))


def wing_members(T, j, l):
    if l > T.rank + max(T.verified_depth, 1) + 64:
        raise BoundExceeded("wing too large")
    return Wing(T, j, l, wing_coords(T.rank, j, l))


# -- triangles along sectional paths ---------------------------------------------

def class_representatives(d, p, cap=SWEEP_CAP):
    """Nonzero vectors of F_p^d up to scalars (first nonzero entry 1)."""
    if d == 0:
        return
    if p ** d > cap:
        raise CapExceeded("sweep of %d^%d classes exceeds cap" % (p, d))
    for lead in range(d):
        for tail in itertools.product(range(p), repeat=d - lead - 1):
            v = np.zeros(d, dtype=fp.DTYPE)
            v[lead] = 1
            v[lead + 1:] = tail
            yield v


def match_summands(found, expected):
    """True when the lists of indecomposables agree up to isomorphism."""
    if len(found) != len(expected):
        return False
    left = list(expected)
    for X in found:
        for k, Y in enumerate(left):
            if is_isomorphic(X, Y):
                left.pop(k)
                break
        else:
            return False
    return True


def find_extension(Z, X, expected, cap=SWEEP_CAP):
    """A class in Ext^1(Z, X) whose middle term has stable part = expected."""
    ext = Ext1(Z, X)
    basis_first = [np.eye(ext.dim, dtype=fp.DTYPE)[:, k] for k in range(ext.dim)]
    tried = set()
    for v in itertools.chain(basis_first, class_representatives(ext.dim, Z.p, cap)):
        key = tuple(int(x) for x in v)
        if key in tried:
            continue
        tried.add(key)
        E, _, _ = ext.middle(v)
        found = [Y for Y in indecomposable_summands(E) if not is_projective_indec(Y)]
        if match_summands(found, expected):
            return v, E
    return None


@dataclass
class TriangleWitness:
    i: int
    l: int
    j: int
    r: int
    cls: list
    middle_dims: list

    def to_json(self):
        return {"i": self.i, "l": self.l, "j": self.j, "r": self.r, "class": self.cls,
                "middle_dims": self.middle_dims}


def sectional_triangle_check(T, i, l, j, r=None):
    """0 -> X_i(r) -> X_i(r+j) + X_{i+l}(r-l) + P -> X_{i+l}(r-l+j) -> 0, r = l by default."""
    r = l if r is None else r
    if not (1 <= l <= r and j >= 1):
        raise ValueError("need 1 <= l <= r and j >= 1")
    X = T.module(i, r)
    Z = T.module(i + l, r - l + j)
    expected = [T.module(i, r + j)]
    if l < r:
        expected.append(T.module(i + l, r - l))
    hit = find_extension(Z, X, expected)
    if hit is None:
        raise NotFound("no class realises the sectional triangle (i, l, j, r) = (%d, %d, %d, %d)"
                       % (i, l, j, r))
    v, E = hit
    return TriangleWitness(i, l, j, r, [int(x) for x in v], list(E.dims))
