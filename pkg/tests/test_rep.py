import functools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import hom_dim, is_iso_bruteforce
from smslab import A, Rep, decompose, direct_sum, hom_space, is_isomorphic, knit_component, nakayama
from smslab import fp
from smslab.decompose import indecomposable_summands, is_projective_indec, strip_projectives
from smslab.errors import AlgebraMismatch, FieldTooSmall, InvalidRep
from smslab.rep import generators, kernel, cokernel, layers, socle_dims, top_dims


@functools.lru_cache(maxsize=None)
def pool():
    """Knitted indecomposables of A(2) up to dimension 6."""
    C = knit_component(A(2).simple(0), max_dim=10)
    return tuple(n.rep for n in C.nodes if n.rep.dim <= 6)


def conjugate(M, seed):
    """An isomorphic copy of M under a random change of basis at each vertex."""
    rng = np.random.default_rng(seed)
    p = M.p
    gs = []
    for d in M.dims:
        while True:
            g = rng.integers(0, p, size=(d, d)).astype(fp.DTYPE)
            if d == 0 or fp.is_invertible(g, p):
                break
        gs.append(g)
    q = M.A.quiver
    mats = [fp.mul(fp.mul(gs[q.tgt[a]], M.mats[a], p), fp.inverse(gs[q.src[a]], p), p)
            if M.mats[a].size else M.mats[a] for a in range(len(q.arrows))]
    return Rep(M.A, M.dims, mats), gs


@given(st.data())
@settings(max_examples=40, deadline=None)
def test_hom_matches_oracle(data):
    mods = pool()
    M = data.draw(st.sampled_from(mods))
    N = data.draw(st.sampled_from(mods))
    H = hom_space(M, N)
    assert H.dim == hom_dim(M, N)
    for f in H.basis:
        for a in range(len(M.A.quiver.arrows)):
            s, t = M.A.quiver.src[a], M.A.quiver.tgt[a]
            lhs = fp.mul(f[t], M.mats[a], M.p)
            rhs = fp.mul(N.mats[a], f[s], M.p)
            assert np.array_equal(lhs, rhs)


@given(st.data())
@settings(max_examples=25, deadline=None)
def test_hom_additive(data):
    mods = pool()
    M, N, L = (data.draw(st.sampled_from(mods)) for _ in range(3))
    assert hom_space(direct_sum([M, N]), L).dim == hom_space(M, L).dim + hom_space(N, L).dim
    assert hom_space(L, direct_sum([M, N])).dim == hom_space(L, M).dim + hom_space(L, N).dim


@given(st.integers(0, 10 ** 6), st.data())
@settings(max_examples=25, deadline=None)
def test_isomorphism_under_base_change(seed, data):
    M = data.draw(st.sampled_from(pool()))
    N, _ = conjugate(M, seed)
    assert is_isomorphic(M, N)
    assert M.invariant() == N.invariant()


@given(st.data())
@settings(max_examples=25, deadline=None)
def test_isomorphism_matches_bruteforce(data):
    mods = pool()
    M = data.draw(st.sampled_from(mods))
    N = data.draw(st.sampled_from(mods))
    assert is_isomorphic(M, N) == is_iso_bruteforce(M, N)


@given(st.data())
@settings(max_examples=15, deadline=None)
def test_decompose_recovers_summands(data):
    mods = pool()
    parts = data.draw(st.lists(st.sampled_from(mods), min_size=1, max_size=3))
    M, _ = conjugate(direct_sum(parts), 7)
    found = indecomposable_summands(M)
    assert len(found) == len(parts)
    left = list(parts)
    for X in found:
        k = next(i for i, Y in enumerate(left) if is_isomorphic(X, Y))
        left.pop(k)
    assert not left


def test_decompose_multiplicities():
    alg = A(2)
    S = alg.simple(0)
    D = decompose(direct_sum([S, S, alg.projective(1)]))
    assert sorted(k for _, k in D.summands) == [1, 2]
    assert D.total_dim == 2 + 5
    assert len(D.projective()) == 1
    assert strip_projectives(direct_sum([S, alg.projective(1)])).dims == S.dims


def test_projectives():
    alg = A(2)
    for v in range(alg.n_vertices):
        P = alg.projective(v)
        assert is_projective_indec(P)
        assert len(indecomposable_summands(P)) == 1
        assert top_dims(P) == tuple(int(w == v) for w in range(3))
        assert sum(socle_dims(P)) == 1
    assert not is_projective_indec(alg.simple(0))


def test_json_round_trip():
    for M in pool():
        again = Rep.from_json(M.A, M.to_json())
        assert again.dims == M.dims
        assert all(np.array_equal(x, y) for x, y in zip(again.mats, M.mats))
        assert again.digest() == M.digest()


def test_json_errors():
    alg = A(2)
    data = alg.simple(0).to_json()
    data["field"] = 7
    with pytest.raises(AlgebraMismatch):
        Rep.from_json(alg, data)
    data = alg.projective(0).to_json()
    data["mats"]["a1"] = [[1, 2]]
    with pytest.raises(InvalidRep):
        Rep.from_json(alg, data)


def test_relations_enforced():
    alg = nakayama(2, 2)
    with pytest.raises(InvalidRep):
        Rep(alg, [1, 1], [[[1]], [[1]]])
    assert Rep(alg, [1, 1], [[[1]], [[0]]]).dim == 2


def test_kernel_cokernel_layers():
    alg = A(2)
    P = alg.projective(0)
    top, rad, soc = layers(P)
    assert top.dim == 1 and rad.dim == P.dim - 1
    assert soc.dims == top.dims
    gens = generators(P)
    assert len(gens) == 1
    H = hom_space(P, P)
    f = H.combine(list(range(1, H.dim + 1)))
    assert kernel(P, f)[0].dim == cokernel(P, f)[0].dim


def test_field_too_small():
    alg = A(2, p=3)
    with pytest.raises(FieldTooSmall):
        decompose(direct_sum([alg.simple(0)] * 3 + [alg.simple(1)]))
