import hashlib
import json
import random

import pytest

from conftest import kronecker_tube, tube
from smslab import (A, StratLadder, classify_system, closure, ell, enumerate_sms, is_isomorphic,
                    kronecker_trivext, local, main_strat_certify, nakayama, omega, replay,
                    stable_universe, theorem_check)
from smslab.errors import CapExceeded, ConditionFailed, UniverseIncomplete
from smslab.sms import DivergesBeyondCap, cone_middles, descent_from_system, triangle_cone


def _dims(S):
    return sorted(tuple(X.dims) for X in S)


def test_enumerate_local2():
    alg = local(2)
    found = enumerate_sms(alg)
    assert len(found) == 1 and len(found[0]) == 1
    assert is_isomorphic(found[0][0], alg.simple(0))


def test_enumerate_nakayama22():
    alg = nakayama(2, 2)
    found = enumerate_sms(alg)
    assert [_dims(S) for S in found] == [[(0, 1), (1, 0)]]


def test_enumerate_nakayama32_contains_simples():
    alg = nakayama(3, 2)
    found = enumerate_sms(alg)
    simples = _dims([alg.simple(v) for v in range(3)])
    assert simples in [_dims(S) for S in found]


@pytest.mark.parametrize("m,l,size", [(3, 2, 3), (3, 3, 6)])
def test_simples_are_sms(m, l, size):
    alg = nakayama(m, l)
    U = stable_universe(alg)
    assert U.complete and len(U) == size
    flags = classify_system([alg.simple(v) for v in range(m)], U)
    assert flags.semibrick and flags.sms and flags.wsms


def test_non_semibrick_is_not_sms():
    alg = nakayama(3, 3)
    U = stable_universe(alg)
    flags = classify_system([alg.simple(0), alg.simple(0)], U)
    assert not flags.semibrick and flags.sms is False
    # orthogonal but not spanning: a semibrick that is not an sms
    flags = classify_system([alg.simple(0), omega(alg.simple(0))], U)
    assert flags.semibrick and flags.wsms is False and flags.sms is False


def test_ell_uniserial():
    # [DERIVED] oracle = composition length of rad P(1) over nakayama(2, 3)
    alg = nakayama(2, 3)
    S = [alg.simple(v) for v in range(2)]
    X = omega(alg.simple(0))
    assert X.dim == 2
    assert ell(S, X) == 2
    assert ell(S, alg.simple(1)) == 1


def test_closure_levels_monotone():
    alg = nakayama(3, 3)
    st = closure([alg.simple(v) for v in range(3)], cap=4)
    sizes = [len(l) for l in st.levels]
    assert sizes == sorted(sizes)
    for a, b in zip(st.levels, st.levels[1:]):
        assert a <= b
    assert st.to_json()["method"].startswith("triangle")


def test_diverges_beyond_cap():
    alg = A(2)
    res = ell([alg.simple(0)], alg.simple(1), cap=2, max_dim=6)
    assert isinstance(res, DivergesBeyondCap)


def test_cone_middles_split_and_nonsplit():
    alg = nakayama(3, 3)
    S1, S2 = alg.simple(0), alg.simple(1)
    # [DERIVED] Ext^1(S1, S2) is a line (arrow 1 -> 2), Ext^1(S2, S1) = 0
    assert sorted(m.dims for m in cone_middles(S1, S2)) == [[(0, 1, 0), (1, 0, 0)], [(1, 1, 0)]]
    assert sorted(m.dims for m in cone_middles(S2, S1)) == [[(0, 1, 0), (1, 0, 0)]]
    with pytest.raises(CapExceeded):
        cone_middles(S1, [S2] * 4, cap=10)


def test_universe_incomplete():
    K = kronecker_trivext()
    U = stable_universe(K, max_dim=4, max_nodes=20)
    assert not U.complete
    with pytest.raises(UniverseIncomplete):
        enumerate_sms(K, U)
    with pytest.raises(UniverseIncomplete):
        classify_system([K.simple(0)], U, strict=True)
    flags = classify_system([K.simple(0)], U)
    assert flags.sms is None and any("refused" in n for n in flags.notes)


# -- certificates ------------------------------------------------------------------

def _theorem1_a2():
    T = tube("A2")
    S = [T.module(1, 1), T.module(2, 1)]
    return main_strat_certify(StratLadder(T, 1, "theorem1"), S, depth=6)


def test_theorem1_certificate_replays():
    cert = _theorem1_a2()
    assert replay(cert.dumps()).ok
    assert cert.digest == hashlib.sha256(
        json.dumps(cert.body, sort_keys=True, separators=(",", ":")).encode()).hexdigest()


def test_certificate_deterministic():
    assert _theorem1_a2().dumps() == _theorem1_a2().dumps()


def test_bit_flips_rejected():
    raw = bytearray(_theorem1_a2().dumps().encode())
    rng = random.Random(1)
    for _ in range(30):
        b = bytearray(raw)
        k = rng.randrange(len(b))
        b[k] ^= 1 << rng.randrange(8)
        assert not replay(bytes(b)).ok


def test_tampered_body_rejected_even_with_fresh_digest():
    cert = _theorem1_a2()
    body = json.loads(cert.dumps())
    body.pop("digest")
    body["checks"][0]["homs"][0]["stable_dim"] = 1 - body["checks"][0]["homs"][0]["stable_dim"]
    canon = json.dumps(body, sort_keys=True, separators=(",", ":"))
    body["digest"] = hashlib.sha256(canon.encode()).hexdigest()
    rep = replay(json.dumps(body))
    assert not rep.ok and rep.errors


def test_kronecker_theorem1():
    T = kronecker_tube(1)
    cert = main_strat_certify(StratLadder(T, 1, "theorem1"), [T.module(1, 1)], depth=6)
    assert replay(cert.dumps()).ok


def test_theorem2_certificates():
    T = tube("A2")
    for i in (1, 2):
        S = [T.module(i, 2)]
        assert descent_from_system(T, i, S) == (2,)
        cert = main_strat_certify(StratLadder(T, i, "theorem2", (2,)), S, depth=6)
        assert replay(cert.dumps()).ok
        S2 = [T.module(i, 2), omega(T.module(i + 1, 1))]
        assert descent_from_system(T, i, S2) == (2, 1)
        cert = main_strat_certify(StratLadder(T, i, "theorem2", (2, 1)), S2, depth=6)
        assert replay(cert.dumps()).ok


def test_ladder_conditions_fail_when_wrong():
    T = tube("A2")
    # the ladder's first member is itself in the system
    L = StratLadder(T, 1, "theorem1")
    with pytest.raises(ConditionFailed):
        main_strat_certify(L, [T.module(1, 1), L.member(1)], depth=2)


def test_triangle_cone_is_ladder_step():
    T = tube("A2")
    L = StratLadder(T, 1, "theorem1")
    M, X = L.member(1), T.module(1, 1)
    from smslab.stable import stable_dim
    targets = [Y for Y in (T.module(1, 1), T.module(2, 1)) if stable_dim(M, Y) == 1]
    assert targets
    cls, parts = triangle_cone(M, targets[0])
    assert any(is_isomorphic(P, L.member(2)) for P in parts)
    assert X.dim == 1


def test_theorem_check_branches():
    T = tube("A2")
    rep = theorem_check([T.module(1, 1), T.module(2, 1)], T)
    assert rep.branch == "theorem1 ladder" and rep.holds and rep.certificate
    rep = theorem_check([T.module(1, 2)], T)
    assert rep.branch == "theorem2 ladder" and rep.holds
    rep = theorem_check([T.module(1, 1)], T)
    assert rep.branch == "bounds hold" and rep.holds
    rep = theorem_check([T.module(1, 3)], T)
    assert rep.branch == "not a stable brick"
