"""Emit the JSON artifacts of the shipped fixtures as one canonical document.

Run twice in fresh interpreters and compare the bytes."""

import json
import sys

from smslab import (A, StratLadder, enumerate_sms, kronecker_trivext, local, main_strat_certify,
                    nakayama, omega, tube_from_seed, verify_lemma)
from smslab.strings import band_module


def artifacts():
    out = {}
    T = tube_from_seed(A(2).simple(0), depth=4)
    out["tube_A2"] = T.to_json(4)
    K = tube_from_seed(band_module(kronecker_trivext(), "a b^-1", 1), depth=4)
    out["tube_kronecker"] = K.to_json(4)
    qs = [T.module(1, 1), T.module(2, 1)]
    out["cert_theorem1_A2"] = main_strat_certify(StratLadder(T, 1, "theorem1"), qs, 6).to_json()
    out["cert_theorem1_kronecker"] = main_strat_certify(
        StratLadder(K, 1, "theorem1"), [K.module(1, 1)], 6).to_json()
    S = [T.module(1, 2), omega(T.module(2, 1))]
    out["cert_theorem2_A2"] = main_strat_certify(
        StratLadder(T, 1, "theorem2", (2, 1)), S, 6).to_json()
    out["lemmas_A2"] = {k: verify_lemma(T, k).to_json()
                        for k in ("r<n", "dimsum", "S_t-hom", "OmegaHom")}
    out["sms"] = {alg.name: [[X.to_json() for X in S] for S in enumerate_sms(alg)]
                  for alg in (local(2), nakayama(2, 2), nakayama(3, 2))}
    return out


def dumps():
    return json.dumps(artifacts(), sort_keys=True, separators=(",", ":"))


if __name__ == "__main__":
    sys.stdout.write(dumps())
