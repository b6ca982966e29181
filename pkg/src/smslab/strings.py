"""String and band modules over special biserial algebras.

A letter is (arrow index, +1) for a direct letter or (arrow index, -1) for
an inverse one. Words are read left to right: letter t joins basis vector
z_{t-1} to z_t, a direct letter a sending z_{t-1} to z_t and an inverse
letter a^-1 meaning a sends z_t to z_{t-1}.

Text form: letters separated by spaces, inverses written "a^-1", e.g.
"a2 g1^-1". The empty word at vertex v is written "" with an explicit vertex.
"""

import numpy as np

from . import fp
from .errors import InvalidRep, InvalidWord, NotSpecialBiserial, ZeroParameter
from .rep import Rep


def parse_word(A, text):
    q = A.quiver
    out = []
    for tok in text.split():
        sign = 1
        if tok.endswith("^-1"):
            tok, sign = tok[:-3], -1
        if tok not in q.aindex:
            raise InvalidWord("unknown arrow %r" % tok)
        out.append((q.aindex[tok], sign))
    return tuple(out)


def format_word(A, word):
    q = A.quiver
    return " ".join(q.arrows[a].name + ("" if s > 0 else "^-1") for a, s in word)


def inverse_word(word):
    return tuple((a, -s) for a, s in reversed(word))


def _start(A, letter):
    a, s = letter
    q = A.quiver
    return q.src[a] if s > 0 else q.tgt[a]


def _end(A, letter):
    a, s = letter
    q = A.quiver
    return q.tgt[a] if s > 0 else q.src[a]


def _nonzero(A, word):
    return A.reduce_word(word) is not None


def check_special_biserial(A):
    """Raise NotSpecialBiserial unless A is special biserial."""
    q = A.quiver
    n, arrows = A.n_vertices, range(len(q.arrows))
    for v in range(n):
        if sum(1 for a in arrows if q.src[a] == v) > 2 or sum(1 for a in arrows if q.tgt[a] == v) > 2:
            raise NotSpecialBiserial("vertex %s has more than two arrows in or out"
                                     % q.vertices[v])
    for b in arrows:
        before = [a for a in arrows if q.tgt[a] == q.src[b] and _nonzero(A, (a, b))]
        after = [c for c in arrows if q.src[c] == q.tgt[b] and _nonzero(A, (b, c))]
        if len(before) > 1 or len(after) > 1:
            raise NotSpecialBiserial("arrow %s extends non-trivially in two ways"
                                     % q.arrows[b].name)
    return True


def _check_chain(A, word, cyclic=False):
    pairs = list(zip(word, word[1:]))
    if cyclic and word:
        pairs.append((word[-1], word[0]))
    for x, y in pairs:
        if _end(A, x) != _start(A, y):
            raise InvalidWord("letters %s and %s do not compose"
                              % (format_word(A, [x]), format_word(A, [y])))
        if x[0] == y[0] and x[1] == -y[1]:
            raise InvalidWord("letter followed by its inverse")


def _direct_runs_ok(A, word, cyclic=False):
    """Maximal direct (and inverse) runs must be nonzero paths."""
    w = list(word) * (2 if cyclic else 1)
    runs, cur, sign = [], [], 0
    for a, s in w:
        if s != sign and cur:
            runs.append((sign, cur))
            cur = []
        sign = s
        cur.append(a)
    if cur:
        runs.append((sign, cur))
    for s, run in runs:
        path = tuple(run) if s > 0 else tuple(reversed(run))
        if len(path) > 1 and not _nonzero(A, path):
            raise InvalidWord("subword %s lies in the ideal" % A.word_names(path))


def _build(A, verts, letters, m=1, closing=None, lam=1):
    """Representation with m-dim spaces at each position in verts; letters
    given as (position from, position to, arrow, matrix kind)."""
    n = A.n_vertices
    dims = [0] * n
    slot = []
    for v in verts:
        slot.append(dims[v])
        dims[v] += m
    mats = [fp.zeros(dims[A.quiver.tgt[a]], dims[A.quiver.src[a]]) for a in range(len(A.quiver.arrows))]
    p = A.p
    for k, (i, j, a) in enumerate(letters):
        block = fp.eye(m)
        if k == closing:
            block = (lam * fp.eye(m) + np.eye(m, k=-1, dtype=fp.DTYPE)) % p
        mats[a][slot[j]:slot[j] + m, slot[i]:slot[i] + m] = block
    try:
        return Rep(A, dims, mats)
    except InvalidRep as e:
        raise InvalidWord(str(e)) from None


def string_module(A, word, vertex=None):
    """The string module of a word (text or tuple of letters)."""
    check_special_biserial(A)
    if isinstance(word, str):
        word = parse_word(A, word)
    if not word:
        if vertex is None:
            raise InvalidWord("the empty word needs a vertex")
        return A.simple(vertex)
    _check_chain(A, word)
    _direct_runs_ok(A, word)
    verts = [_start(A, word[0])] + [_end(A, x) for x in word]
    letters = []
    for t, (a, s) in enumerate(word):
        letters.append((t, t + 1, a) if s > 0 else (t + 1, t, a))
    return _build(A, verts, letters)


def _is_power(word):
    k = len(word)
    return any(k % d == 0 and word == word[:d] * (k // d) for d in range(1, k))


def canonical_rotation(A, word):
    """Rotation (of the word or its inverse) with the smallest text form,
    among those starting with a direct letter."""
    cands = []
    for w in (tuple(word), inverse_word(word)):
        for k in range(len(w)):
            r = w[k:] + w[:k]
            if r[0][1] > 0:
                cands.append((format_word(A, r), r))
    return min(cands)[1]


def band_module(A, word, lam, m=1):
    """Band module with J_m(lam) on the last direct letter of the canonical rotation."""
    check_special_biserial(A)
    if isinstance(word, str):
        word = parse_word(A, word)
    p = A.p
    if lam % p == 0:
        raise ZeroParameter("band parameter must be nonzero")
    if m < 1:
        raise InvalidWord("multiplicity must be positive")
    if not word:
        raise InvalidWord("empty band")
    word = tuple(word)
    if not any(s > 0 for _, s in word) or not any(s < 0 for _, s in word):
        raise InvalidWord("a band needs direct and inverse letters")
    if _is_power(word):
        raise InvalidWord("band is a proper power")
    _check_chain(A, word, cyclic=True)
    _direct_runs_ok(A, word, cyclic=True)
    word = canonical_rotation(A, word)
    k = len(word)
    verts = [_start(A, x) for x in word]
    letters = []
    for t, (a, s) in enumerate(word):
        i, j = t, (t + 1) % k
        letters.append((i, j, a) if s > 0 else (j, i, a))
    closing = max(t for t, (_, s) in enumerate(word) if s > 0)
    return _build(A, verts, letters, m=m, closing=closing, lam=lam % p)
