import itertools
import json
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from fcy.algebra import quotient_basis
from fcy.constructions import classical_preprojective, eg_twistorno, preprojective_dynkin
from fcy.errors import (DimensionBoundExceeded, GradingRankMismatch, MalformedInput,
                        NonAdmissibleRelation, NonParallelRelation, UnknownVertex)
from fcy.linalg import PrimeField
from fcy.quiver import Arrow, Path, Presentation, Quiver, Relation, compose_paths, trivial


def linear_a3():
    return Quiver(["1", "2", "3"], [Arrow("a", "1", "2"), Arrow("b", "2", "3")])


def all_paths(q, max_len):
    """Brute-force path enumeration, independent of the rewriting code."""
    out = [trivial(v) for v in q.vertices]
    frontier = [(a.id,) for a in q.arrows]
    while frontier and len(frontier[0]) <= max_len:
        out += [q.path(p) for p in frontier]
        frontier = [p + (b.id,) for p in frontier for b in q.arrows
                    if q.arrow(p[-1]).target == b.source]
    return out


# -- paths ------------------------------------------------------------------

def test_compose_identity_law():
    q = linear_a3()
    p = q.path(["a"])
    assert compose_paths(trivial("2"), p) == p
    assert compose_paths(p, trivial("1")) == p


def test_compose_arrows():
    q = linear_a3()
    ab = compose_paths(q.path(["b"]), q.path(["a"]))
    assert ab == Path("1", "3", ("a", "b"))


def test_compose_mismatch():
    q = Quiver(["1", "2", "3"], [Arrow("a", "1", "2"), Arrow("c", "3", "1")])
    assert compose_paths(q.path(["c"]), q.path(["a"])) is None


def test_quiver_validation():
    with pytest.raises(UnknownVertex):
        Quiver(["1"], [Arrow("a", "1", "2")])
    with pytest.raises(MalformedInput):
        Quiver(["1", "2"], [Arrow("a", "1", "2"), Arrow("a", "2", "1")])
    with pytest.raises(MalformedInput):
        linear_a3().path(["b", "a"])


def test_presentation_validation():
    q = linear_a3()
    with pytest.raises(NonParallelRelation):
        Presentation(q, [Relation([(1, q.path(["a", "b"])), (1, q.path(["a"]))])])
    with pytest.raises(GradingRankMismatch):
        Presentation(q, [], grading_rank=2)
    p = Presentation(q, [Relation([(1, q.path(["a"]))])])
    with pytest.raises(NonAdmissibleRelation):
        quotient_basis(p)


# -- quotients ------------------------------------------------------------------

def test_linear_a3_dimension_matches_enumeration():
    q = linear_a3()
    alg = quotient_basis(Presentation(q, []), max_len=8)
    assert alg.dim == len(all_paths(q, 8)) == 6


def test_preprojective_a2_basis():
    pres, _ = preprojective_dynkin("A", 2)
    alg = quotient_basis(pres)
    assert sorted(str(b) for b in alg.basis) == sorted(["e_1", "e_2", "a1", "a1*"])


def test_free_loop_is_infinite():
    q = Quiver(["1"], [Arrow("t", "1", "1")])
    with pytest.raises(DimensionBoundExceeded):
        quotient_basis(Presentation(q, []), max_len=5)


def test_non_dynkin_preprojective_is_infinite():
    # doubled 3-cycle: affine type, infinite-dimensional preprojective algebra
    q = Quiver(["1", "2", "3"], [Arrow("a", "1", "2"), Arrow("b", "2", "3"), Arrow("c", "1", "3")])
    with pytest.raises(DimensionBoundExceeded):
        quotient_basis(classical_preprojective(q), max_len=16)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_preprojective_type_a_dimension(n):
    # dim Π(A_n) = Σ_i i(n+1-i) = n(n+1)(n+2)/6
    alg = quotient_basis(preprojective_dynkin("A", n)[0])
    assert alg.dim == n * (n + 1) * (n + 2) // 6


def test_relation_reduces_to_normal_words_over_prime_field():
    alg = quotient_basis(preprojective_dynkin("A", 3)[0], field=PrimeField(3))
    assert alg.dim == 10


# -- multiplication -----------------------------------------------------------------

@pytest.fixture(scope="module")
def pa3():
    return quotient_basis(preprojective_dynkin("A", 3)[0])


def test_identity_multiplication(pa3):
    one = pa3.unit()
    for i in range(pa3.dim):
        x = {i: F(1)}
        assert pa3.multiply(one, x) == x
        assert pa3.multiply(x, one) == x


def test_idempotents_orthogonal(pa3):
    for v, w in itertools.product(pa3.vertices, repeat=2):
        prod = pa3.multiply({pa3.idem[v]: F(1)}, {pa3.idem[w]: F(1)})
        assert prod == ({pa3.idem[v]: F(1)} if v == w else {})


def test_relation_kills_product():
    alg = quotient_basis(preprojective_dynkin("A", 2)[0])
    a, astar = alg.arrow_element("a1"), alg.arrow_element("a1*")
    assert alg.multiply(astar, a) == {}   # a then a*: a cycle at vertex 1
    assert alg.multiply(a, astar) == {}


def test_endpoints_identity(pa3):
    for i in range(pa3.dim):
        x = {i: F(1)}
        assert pa3.multiply({pa3.idem[pa3.tgt[i]]: F(1)}, x) == x
        assert pa3.multiply(x, {pa3.idem[pa3.src[i]]: F(1)}) == x


def test_associativity_exhaustive(pa3):
    n = pa3.dim
    for i, j, k in itertools.product(range(n), repeat=3):
        x, y, z = {i: F(1)}, {j: F(1)}, {k: F(1)}
        assert pa3.multiply(pa3.multiply(x, y), z) == pa3.multiply(x, pa3.multiply(y, z))


def test_degree_additivity(pa3):
    for i, j in itertools.product(range(pa3.dim), repeat=2):
        for k in pa3.mult_basis(i, j):
            assert pa3.deg[k] == tuple(a + b for a, b in zip(pa3.deg[i], pa3.deg[j]))


def test_peirce_decomposition_exhausts(pa3):
    total = sum(len(pa3.peirce(i, j)) for i in pa3.vertices for j in pa3.vertices)
    assert total == pa3.dim


def test_commutator_relation_holds(pa3):
    # at vertex 2: a1 a1* = a2* a2
    q = pa3.quiver
    lhs = pa3.path_element(q.path(["a1*", "a1"]))
    rhs = pa3.path_element(q.path(["a2", "a2*"]))
    assert lhs == rhs and lhs


def test_connectedness():
    assert quotient_basis(preprojective_dynkin("A", 3)[0]).is_connected()
    two = Quiver(["1", "2"], [])
    assert not quotient_basis(Presentation(two, [])).is_connected()
    assert quotient_basis(Presentation(Quiver(["1"], []), [])).is_connected()


# -- determinism --------------------------------------------------------------------

@settings(max_examples=25, deadline=None)
@given(st.permutations(range(6)), st.sampled_from([("A", 3), ("D", 4)]))
def test_arrow_order_does_not_change_basis(perm, dyn):
    pres, _ = preprojective_dynkin(*dyn)
    arrows = list(pres.quiver.arrows)
    perm = [p for p in perm if p < len(arrows)] + list(range(6, len(arrows)))
    shuffled = Presentation(Quiver(pres.quiver.vertices, [arrows[p] for p in perm]),
                            pres.relations, pres.grading_rank)
    a = quotient_basis(pres)
    b = quotient_basis(shuffled)
    assert a.basis == b.basis
    for i, j in itertools.product(range(a.dim), repeat=2):
        assert a.mult_basis(i, j) == b.mult_basis(i, j)


# -- JSON ------------------------------------------------------------------------------

def test_presentation_json_roundtrip():
    pres = eg_twistorno()
    text = pres.dumps()
    back = Presentation.loads(text)
    assert back.dumps() == text
    data = json.loads(text)
    assert data["relations"][0] == [{"coeff": "1/1", "path": ["alpha", "beta"]}]


def test_presentation_json_errors():
    with pytest.raises(MalformedInput):
        Presentation.loads("{not json")
    with pytest.raises(MalformedInput):
        Presentation.loads('{"vertices": ["1"], "arrows": [{"id": "a", "from": "1"}]}')
    with pytest.raises(UnknownVertex):
        Presentation.loads('{"vertices": ["1"], "arrows": [{"id": "a", "from": "1", "to": "9", "degree": [0]}]}')


def test_empty_path_encoding():
    data = {"vertices": ["1"], "arrows": [{"id": "t", "from": "1", "to": "1", "degree": [1]}],
            "grading_rank": 1,
            "relations": [[{"coeff": "1/1", "path": ["t", "t"]}]]}
    pres = Presentation.from_json(data)
    alg = quotient_basis(pres)
    assert alg.dim == 2   # k[t]/t^2
    assert alg.path_element(pres.quiver.path([], source="1")) == {0: F(1)}
