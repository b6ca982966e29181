import pytest
from hypothesis import given, settings, strategies as st

from oracles import algebra_dim
from smslab import A, B, kronecker_trivext, local, nakayama, parse_algebra, print_algebra
from smslab.algebra import selfinjectivity_report
from smslab.errors import (BadParameter, DslSyntaxError, NonAdmissible, NonComposable,
                           UnknownVertex)
from smslab.families import family_dsl

# [DERIVED] oracle = algebra_dim (truncated path space modulo the ideal), frozen
DIMS = {
    "A2": (lambda: A(2), 14, [4, 5, 5]),
    "A3": (lambda: A(3), 22, [5, 5, 6, 6]),
    "B3": (lambda: B(3), 18, [3, 5, 5, 5]),
    "B4": (lambda: B(4), 22, [3, 4, 5, 5, 5]),
    "kron": (kronecker_trivext, 8, [4, 4]),
    "nak22": (lambda: nakayama(2, 2), 4, [2, 2]),
    "nak32": (lambda: nakayama(3, 2), 6, [2, 2, 2]),
    "nak33": (lambda: nakayama(3, 3), 9, [3, 3, 3]),
    "local2": (lambda: local(2), 2, [2]),
}


@pytest.mark.parametrize("name", sorted(DIMS))
def test_dimension_frozen_and_oracle(name):
    make, dim, proj = DIMS[name]
    alg = make()
    assert alg.dim == dim
    assert [alg.projective(v).dim for v in range(alg.n_vertices)] == proj
    assert algebra_dim(alg) == dim


@pytest.mark.parametrize("name", sorted(DIMS))
def test_self_injective(name):
    alg = DIMS[name][0]()
    rep = selfinjectivity_report(alg)
    assert rep.is_self_injective
    symmetric = not name.startswith("nak")
    assert rep.is_symmetric == symmetric
    assert rep.is_weakly_symmetric == symmetric


def test_a1_is_kronecker():
    assert family_dsl("A", n=1) == family_dsl("kronecker_trivext")


def test_b_needs_three():
    with pytest.raises(BadParameter):
        B(2)


@pytest.mark.parametrize("name", sorted(DIMS))
def test_round_trip(name):
    alg = DIMS[name][0]()
    text = print_algebra(alg)
    again = parse_algebra(text)
    assert print_algebra(again) == text
    assert again.dim == alg.dim


def test_right_to_left_matches():
    ltr = "algebra t { field 7; composition left_to_right; vertices 1 2 3; " \
          "arrow x: 1 -> 2; arrow y: 2 -> 3; rel x*y = 0; }"
    rtl = "algebra t { field 7; composition right_to_left; vertices 1 2 3; " \
          "arrow x: 1 -> 2; arrow y: 2 -> 3; rel y*x = 0; }"
    assert parse_algebra(ltr).dim == parse_algebra(rtl).dim == 5


@given(st.lists(st.sampled_from([" ", "  ", "\n", " # note\n", "\t"]), min_size=8, max_size=8))
@settings(max_examples=30, deadline=None)
def test_whitespace_and_comments_irrelevant(gaps):
    parts = ["algebra", "t", "{", "field", "5;", "vertices", "1;", "arrow", "x:", "1", "->",
             "1;", "rel", "x*x*x", "=", "0;", "}"]
    text = parts[0]
    for k, tok in enumerate(parts[1:]):
        text += (gaps[k % len(gaps)] or " ") + tok
    alg = parse_algebra(text)
    assert alg.dim == 3
    assert alg.p == 5


def test_coefficients_reduce_mod_p():
    text = "algebra t { field 5; vertices 1 2; arrow x: 1 -> 2; arrow y: 1 -> 2; " \
           "arrow z: 2 -> 1; rel x*z + 4*y*z = 0; rel z*x = 0; rel z*y = 0; }"
    alg = parse_algebra(text)
    text2 = text.replace("+ 4*y*z", "- y*z")
    assert print_algebra(parse_algebra(text2)) == print_algebra(alg)


def test_syntax_error_location():
    with pytest.raises(DslSyntaxError) as e:
        parse_algebra("algebra t {\n  field 5;\n  vertices 1 2\n  arrow x: 1 -> 2;\n}")
    assert e.value.line is not None


@pytest.mark.parametrize("text,err", [
    ("algebra t { field 4; vertices 1; arrow x: 1 -> 1; rel x*x = 0; }", DslSyntaxError),
    ("algebra t { field 5; vertices 1; arrow x: 1 -> 2; rel x*x = 0; }", UnknownVertex),
    ("algebra t { field 5; vertices 1 2; arrow x: 1 -> 2; rel x*x = 0; }", NonComposable),
    ("algebra t { field 5; vertices 1; arrow x: 1 -> 1; rel x = 0; }", NonAdmissible),
])
def test_bad_input(text, err):
    with pytest.raises(err):
        parse_algebra(text)


@pytest.mark.parametrize("name", ["A2", "B3", "kron", "nak33"])
def test_associativity(name):
    assert DIMS[name][0]().check_associativity()


@given(st.sampled_from(sorted(DIMS)), st.data())
@settings(max_examples=40, deadline=None)
def test_multiplication_associative_on_samples(name, data):
    alg = DIMS[name][0]()
    i, j, k = (data.draw(st.integers(0, alg.dim - 1)) for _ in range(3))

    def mul(x, y):
        out = {}
        for a, ca in x.items():
            for b, cb in y.items():
                r = alg.mult(a, b)
                if r:
                    c, m = r
                    out[m] = (out.get(m, 0) + c * ca * cb) % alg.p
        return {m: c for m, c in out.items() if c}

    assert mul(mul({i: 1}, {j: 1}), {k: 1}) == mul({i: 1}, mul({j: 1}, {k: 1}))
