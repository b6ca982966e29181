"""Parser and canonical printer for the quiver-with-relations language.

    algebra A2 {
      field 101;
      composition left_to_right;
      vertices 1 2 3;
      arrow a1: 1 -> 2;
      rel a1*a2 = 0;
      rel 1*a1*a2 + 100*g1*g2 = 0;
      nilpotency 12;
    }

Statements end with ';'. Comments start with '#'. Coefficients are
integers, reduced mod p; a term without a coefficient has coefficient 1 and
a leading '-' negates it.
"""

import re

from .algebra import Arrow, BoundQuiverAlgebra, Quiver, RelationSet
from .errors import DslSyntaxError, BadParameter
from . import fp

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+|\#[^\n]*)
  | (?P<nl>\n)
  | (?P<arrow>->)
  | (?P<num>\d+(?![A-Za-z_]))
  | (?P<ident>[A-Za-z0-9_][A-Za-z0-9_']*)
  | (?P<sym>[{};:*+=\-])
""", re.VERBOSE)


def tokenize(text):
    tokens = []
    line, col0, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise DslSyntaxError("unexpected character %r" % text[pos],
                                 line, pos - col0 + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            col0 = m.end()
        elif kind != "ws":
            tokens.append((kind, m.group(), line, m.start() - col0 + 1))
        pos = m.end()
    tokens.append(("eof", "", line, pos - col0 + 1))
    return tokens


class _Parser:
    def __init__(self, text):
        self.toks = tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, expected, tok=None):
        tok = tok or self.peek()
        what = tok[1] if tok[0] != "eof" else "end of input"
        raise DslSyntaxError("unexpected %r" % what, tok[2], tok[3], expected)

    def expect(self, value=None, kind=None):
        tok = self.peek()
        if value is not None and tok[1] != value:
            self.fail([repr(value)])
        if kind is not None and tok[0] not in kind:
            self.fail(list(kind))
        return self.next()

    def name(self):
        tok = self.peek()
        if tok[0] not in ("ident", "num"):
            self.fail(["identifier"])
        return self.next()[1]

    def integer(self):
        return int(self.expect(kind=("num",))[1])

    def parse(self):
        self.expect("algebra")
        name = self.name()
        self.expect("{")
        p, comp, nil = None, "left_to_right", None
        vertices, arrows, rels = None, [], []
        while self.peek()[1] != "}":
            tok = self.peek()
            key = tok[1]
            if key == "field":
                self.next()
                p = self.integer()
                if not fp.is_prime(p):
                    raise DslSyntaxError("field characteristic %d is not prime" % p,
                                         tok[2], tok[3])
            elif key == "composition":
                self.next()
                t = self.peek()
                comp = self.name()
                if comp not in ("left_to_right", "right_to_left"):
                    self.fail(["left_to_right", "right_to_left"], t)
            elif key == "vertices":
                self.next()
                vertices = []
                while self.peek()[1] != ";":
                    vertices.append(self.name())
            elif key == "arrow":
                self.next()
                a = self.name()
                self.expect(":")
                s = self.name()
                self.expect("->")
                t = self.name()
                arrows.append(Arrow(a, s, t))
            elif key == "rel":
                self.next()
                rels.append(self.relation())
            elif key == "nilpotency":
                self.next()
                nil = self.integer()
                if nil < 1:
                    raise DslSyntaxError("nilpotency bound must be positive", tok[2], tok[3])
            else:
                self.fail(["field", "composition", "vertices", "arrow", "rel",
                           "nilpotency", "}"])
            self.expect(";")
        self.expect("}")
        if self.peek()[0] != "eof":
            self.fail(["end of input"])
        if vertices is None:
            raise DslSyntaxError("missing vertices statement", expected=["vertices"])
        return name, p, comp, vertices, arrows, rels, nil

    def relation(self):
        terms = [self.term(first=True)]
        while self.peek()[1] in ("+", "-"):
            terms.append(self.term())
        self.expect("=")
        tok = self.expect(kind=("num",))
        if tok[1] != "0":
            self.fail(["0"], tok)
        return terms

    def term(self, first=False):
        sign = 1
        tok = self.peek()
        if tok[1] in ("+", "-"):
            if first and tok[1] == "+":
                self.fail(["path", "coefficient"])
            sign = -1 if tok[1] == "-" else 1
            self.next()
        elif not first:
            self.fail(["'+'", "'-'", "'='"])
        coef = 1
        if self.peek()[0] == "num":
            coef = self.integer()
            self.expect("*")
        word = [self.arrow_name()]
        while self.peek()[1] == "*":
            self.next()
            word.append(self.arrow_name())
        return sign * coef, tuple(word)

    def arrow_name(self):
        tok = self.peek()
        if tok[0] != "ident":
            self.fail(["arrow id"])
        return self.next()[1]


def parse_algebra(text, default_p=101):
    name, p, comp, vertices, arrows, rels, nil = _Parser(text).parse()
    p = default_p if p is None else p
    if not fp.is_prime(p):
        raise BadParameter("field characteristic %r is not prime" % p)
    quiver = Quiver(vertices, arrows)
    mono, bino = [], []
    for terms in rels:
        merged = {}
        for c, w in terms:
            if comp == "right_to_left":
                w = tuple(reversed(w))
            merged[w] = (merged.get(w, 0) + c) % p
        live = [(w, c) for w, c in merged.items() if c]
        if len(live) > 2:
            raise DslSyntaxError("relation has more than two terms", expected=["binomial"])
        if len(live) == 1:
            mono.append(live[0][0])
        elif len(live) == 2:
            (w1, c1), (w2, c2) = live
            bino.append((w1, c1, w2, c2))
    return BoundQuiverAlgebra(name, quiver, RelationSet(tuple(mono), tuple(bino)),
                              p, nil, comp)


def print_algebra(A):
    """Canonical DSL text; parse_algebra(print_algebra(A)) == A."""
    q = A.quiver
    rtl = A.composition == "right_to_left"

    def path(w):
        return "*".join(reversed(w) if rtl else w)

    lines = ["algebra %s {" % A.name,
             "  field %d;" % A.p,
             "  composition %s;" % A.composition,
             "  vertices %s;" % " ".join(q.vertices)]
    for a in q.arrows:
        lines.append("  arrow %s: %s -> %s;" % (a.name, a.source, a.target))
    for w in A.relations.monomials:
        lines.append("  rel %s = 0;" % path(w))
    for w1, c1, w2, c2 in A.relations.binomials:
        lines.append("  rel %d*%s + %d*%s = 0;" % (c1 % A.p, path(w1), c2 % A.p, path(w2)))
    if A.nilpotency_declared is not None:
        lines.append("  nilpotency %d;" % A.nilpotency_declared)
    lines.append("}")
    return "\n".join(lines) + "\n"
