import json

import pytest
from hypothesis import given, settings, strategies as st

from conftest import kronecker_tube, tube
from smslab import (A, B, ar_sequence, is_isomorphic, knit_component, local, nakayama,
                    sectional_triangle_check, tau, tube_info, tube_module, wing_members)
from smslab.arknit import wing_coords
from smslab.errors import NotQuasiSerial, ProjectiveInput
from smslab.stable import stable_dim

# [DERIVED] oracle = mesh additivity + tau (independent of knitting) on A(2)
# from the simple S1, frozen
A2_X1 = [(1, 0, 0), (1, 1, 1), (2, 1, 1), (2, 2, 2)]
A2_X2 = [(0, 1, 1), (1, 1, 1), (1, 2, 2), (2, 2, 2)]


def test_a2_tube_frozen():
    T = tube("A2")
    assert T.rank == 2
    T.ensure_depth(4)
    assert [T.module(1, r).dims for r in range(1, 5)] == A2_X1
    assert [T.module(2, r).dims for r in range(1, 5)] == A2_X2
    assert T.locate(A(2).simple(0)) == (1, 1)


@pytest.mark.parametrize("name", ["A2", "A3", "B3", "B4"])
def test_tube_tau_and_mesh(name):
    T = tube(name)
    n = T.rank
    T.ensure_depth(4)
    for i in range(1, n + 1):
        for r in range(1, 4):
            assert is_isomorphic(tau(T.module(i, r)), T.module(i - 1, r))
            lhs = [a + b for a, b in zip(T.module(i, r).dims, T.module(i + 1, r).dims)]
            below = T.module(i + 1, r - 1).dims if r > 1 else (0,) * len(lhs)
            rhs = [a + b for a, b in zip(T.module(i, r + 1).dims, below)]
            # stable meshes are additive once no projective sits in the middle
            seq = ar_sequence(T.module(i + 1, r))
            proj = sum(X.dim * k for X, k in seq.middle.projective())
            assert sum(lhs) == sum(rhs) + proj


def test_a_family_simples():
    for n in (2, 3):
        alg = A(n)
        T = tube("A%d" % n)
        assert T.rank == n
        coords = [T.locate(alg.simple(v)) for v in range(n - 1)]
        assert all(c is not None and c[1] == 1 for c in coords)
        for v in (n - 1, n):
            C = knit_component(alg.simple(v), max_dim=12)
            with pytest.raises(NotQuasiSerial):
                tube_info(C)


def test_b_family_positions():
    # quasi-lengths of S1, S2 (and S3 for n = 4) and the tau-shift pattern
    T1 = tube("B4")
    x = T1.locate(B(4).simple(0))
    assert x[1] == 1 and T1.rank == 4
    s3 = T1.locate(B(4).simple(2))
    assert s3 == (T1.bar(x[0] - 1), 3)
    T2 = tube("B4", 1)
    assert T2.locate(B(4).simple(1))[1] == 2
    assert T1.locate(B(4).simple(1)) is None
    T3 = tube("B3")
    assert T3.rank == 3 and T3.locate(B(3).simple(0))[1] == 1
    assert tube("B3", 1).locate(B(3).simple(1))[1] == 2


def test_local2_component():
    C = knit_component(local(2).simple(0))
    assert C.complete
    assert len(C.stable_ids()) == 1
    k = C.stable_ids()[0]
    assert C.tau_period(k) == 1
    with pytest.raises(NotQuasiSerial):
        tube_info(C)
    dot = C.to_dot()
    assert "style=dashed" in dot


def test_homogeneous_tube():
    T = kronecker_tube(1)
    assert T.rank == 1
    data = T.to_json(4)
    assert len(data["nodes"]) == 4
    assert all(n.get("tau") == n["id"] for n in data["nodes"])


def test_export_deterministic():
    T = tube("A2")
    a = json.dumps(T.to_json(4), sort_keys=True)
    b = json.dumps(tube_from_fresh().to_json(4), sort_keys=True)
    assert a == b
    assert sum("coords" in n for n in T.to_json(4)["nodes"]) == 8


def tube_from_fresh():
    from smslab import tube_from_seed
    return tube_from_seed(A(2).simple(0), depth=4)


def test_seed_independence():
    # knitting from another member of the same tube gives the same shape
    T = tube("A2")
    from smslab import tube_from_seed
    T2 = tube_from_seed(T.module(2, 2), depth=3)
    assert T2.rank == T.rank
    assert {T2.module(i, 1).fingerprint() for i in (1, 2)} == \
        {T.module(i, 1).fingerprint() for i in (1, 2)}


def test_tube_module_styles():
    T = tube("A2")
    assert is_isomorphic(tube_module(T, 2, 3, style="[r]"), T.module(0, 3))
    assert tube_module(T, 1, 2).dims == T.module(1, 2).dims


def test_wings():
    assert wing_coords(3, 1, 2) == [(1, 1), (2, 1), (1, 2)]
    assert len(wing_coords(4, 2, 3)) == 6
    W = wing_members(tube("A2"), 1, 2)
    assert (2, 1) in W and (1, 2) in W and (2, 2) not in W


@pytest.mark.parametrize("i,l,j", [(1, 1, 1), (2, 1, 1), (1, 1, 2), (1, 2, 1)])
def test_sectional_triangles(i, l, j):
    w = sectional_triangle_check(tube("A2"), i, l, j)
    assert len(w.cls) >= 1 and any(w.cls)


@given(st.sampled_from(["local2", "nak22", "nak32", "A2"]), st.data())
@settings(max_examples=20, deadline=None)
def test_ar_sequence_properties(name, data):
    alg = {"local2": lambda: local(2), "nak22": lambda: nakayama(2, 2),
           "nak32": lambda: nakayama(3, 2), "A2": lambda: A(2)}[name]()
    C = knit_component(alg.simple(0), max_dim=8)
    ids = [k for k in C.stable_ids() if C.nodes[k].rep.dim <= 6]
    N = C.nodes[data.draw(st.sampled_from(ids))].rep
    seq = ar_sequence(N)
    assert seq.check_exact()
    assert not seq.is_split()
    for k in ids[:6]:
        assert seq.lifting_defect(C.nodes[k].rep) == 0
    assert stable_dim(N, N) >= 1


def test_ar_sequence_projective_rejected():
    with pytest.raises(ProjectiveInput):
        ar_sequence(A(2).projective(0))
