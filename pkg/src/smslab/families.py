"""Named example algebras, emitted as DSL text and parsed.

Composition is left to right throughout, so "a1*a2" means a1 then a2.
"""

from .dsl import parse_algebra
from .errors import BadParameter


def _dsl(name, p, vertices, arrows, rels, nilpotency=None):
    lines = ["algebra %s {" % name, "  field %d;" % p, "  composition left_to_right;",
             "  vertices %s;" % " ".join(str(v) for v in vertices)]
    lines += ["  arrow %s: %s -> %s;" % a for a in arrows]
    lines += ["  rel %s = 0;" % r for r in rels]
    if nilpotency:
        lines.append("  nilpotency %d;" % nilpotency)
    lines.append("}")
    return "\n".join(lines) + "\n"


def _word(arrows):
    return "*".join(arrows)


def dsl_A(n, p=101):
    """Symmetric special biserial algebra with an alpha-cycle of length n+1
    through 1..n+1 and a gamma 2-cycle between n and n+1.

    Arrows: a_v: v -> v+1 for v <= n, a_{n+1}: n+1 -> 1, g1: n -> n+1,
    g2: n+1 -> n.
    """
    if n < 2:
        raise BadParameter("A(n) needs n >= 2; use kronecker_trivext for n = 1")
    verts = list(range(1, n + 2))
    arrows = [("a%d" % v, v, v % (n + 1) + 1) for v in verts]
    arrows += [("g1", n, n + 1), ("g2", n + 1, n)]

    def alpha_from(v, length):
        out, w = [], v
        for _ in range(length):
            out.append("a%d" % w)
            w = w % (n + 1) + 1
        return out

    rels = [_word(["a%d" % (n - 1), "g1"]), _word(["a%d" % n, "g2"]),
            _word(["g1", "a%d" % (n + 1)]), _word(["g2", "a%d" % n])]
    rels.append("%s - %s" % (_word(alpha_from(n, n + 1)), _word(["g1", "g2"])))
    rels.append("%s - %s" % (_word(alpha_from(n + 1, n + 1)), _word(["g2", "g1"])))
    # away from the gamma cycle alpha^{n+2} must die for the algebra to be
    # symmetric; the relations above only force this at n-1, n, n+1
    for v in range(1, n - 1):
        rels.append(_word(alpha_from(v, n + 2)))
    return _dsl("A%d" % n, p, verts, arrows, rels)


def dsl_B(n, p=101):
    """The algebra derived equivalent to A(n) with alpha/beta double arrows
    along 1..n-1 and a gamma 3-cycle n-1 -> n -> n+1 -> n-1 plus a delta
    2-cycle between n and n+1.
    """
    if n < 3:
        raise BadParameter("B(n) needs n >= 3")
    verts = list(range(1, n + 2))
    arrows = [("a%d" % i, i, i + 1) for i in range(1, n - 1)]
    arrows += [("b%d" % i, i + 1, i) for i in range(1, n - 1)]
    arrows += [("c1", n - 1, n), ("c2", n, n + 1), ("c3", n + 1, n - 1),
               ("d1", n, n + 1), ("d2", n + 1, n)]
    rels = []
    for i in range(1, n - 2):
        rels.append("a%d*a%d" % (i, i + 1))
        rels.append("b%d*b%d" % (i + 1, i))
    rels += ["a%d*c1" % (n - 2), "c3*b%d" % (n - 2),
             "d1*c3", "d2*c2", "c1*d1", "c2*d2"]
    for i in range(2, n - 1):
        rels.append("a%d*b%d - b%d*a%d" % (i, i, i - 1, i - 1))
    rels.append("b%d*a%d - c1*c2*c3" % (n - 2, n - 2))
    rels.append("d1*d2 - c2*c3*c1")
    rels.append("d2*d1 - c3*c1*c2")
    return _dsl("B%d" % n, p, verts, arrows, rels)


def dsl_kronecker_trivext(p=101):
    """Trivial extension of the Kronecker algebra 2 => 1 (arrows a, b) with
    dual arrows c, d: 1 -> 2."""
    arrows = [("a", 2, 1), ("b", 2, 1), ("c", 1, 2), ("d", 1, 2)]
    rels = ["a*c - b*d", "a*d", "b*c", "c*a - d*b", "c*b", "d*a"]
    return _dsl("kronecker_trivext", p, [1, 2], arrows, rels)


def dsl_nakayama(m, l, p=101):
    """Cyclic quiver on m vertices, arrows x_v: v -> v+1, radical^l = 0."""
    if m < 1 or l < 1:
        raise BadParameter("nakayama(m, l) needs m, l >= 1")
    verts = list(range(1, m + 1))
    arrows = [("x%d" % v, v, v % m + 1) for v in verts]
    rels = []
    if l == 1:
        raise BadParameter("nakayama(m, 1) is semisimple; relations would not be admissible")
    for v in verts:
        w, word = v, []
        for _ in range(l):
            word.append("x%d" % w)
            w = w % m + 1
        rels.append(_word(word))
    return _dsl("nakayama_%d_%d" % (m, l), p, verts, arrows, rels)


def dsl_local(t, p=101):
    if t < 2:
        raise BadParameter("local(t) needs t >= 2")
    return _dsl("local_%d" % t, p, [1], [("x", 1, 1)], [_word(["x"] * t)])


def family_dsl(name, n=None, m=None, l=None, t=None, p=101):
    name = name.replace("(", "").replace(")", "")
    if name == "A":
        if n == 1:
            return dsl_kronecker_trivext(p)
        return dsl_A(_need(n, "n"), p)
    if name == "B":
        return dsl_B(_need(n, "n"), p)
    if name in ("kronecker_trivext", "kronecker"):
        return dsl_kronecker_trivext(p)
    if name == "nakayama":
        return dsl_nakayama(_need(m, "m"), _need(l, "l"), p)
    if name == "local":
        return dsl_local(_need(t, "t"), p)
    raise BadParameter("unknown family %r" % name)


def _need(x, what):
    if x is None:
        raise BadParameter("parameter %s is required" % what)
    return int(x)


_CACHE = {}


def example_family(name, n=None, m=None, l=None, t=None, p=101):
    """Build a named example algebra. Results are cached (algebras are immutable)."""
    text = family_dsl(name, n=n, m=m, l=l, t=t, p=p)
    if text not in _CACHE:
        _CACHE[text] = parse_algebra(text)
    return _CACHE[text]


def A(n, p=101):
    return example_family("A", n=n, p=p)


def B(n, p=101):
    return example_family("B", n=n, p=p)


def kronecker_trivext(p=101):
    return example_family("kronecker_trivext", p=p)


def nakayama(m, l, p=101):
    return example_family("nakayama", m=m, l=l, p=p)


def local(t, p=101):
    return example_family("local", t=t, p=p)
