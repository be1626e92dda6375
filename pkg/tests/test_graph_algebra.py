import itertools
import random

import pytest

from crown.errors import CapExceeded, NotACover
from crown.fields import GF, QQ
from crown.graph_algebra import (
    ProjPoint,
    annihilator_grading,
    annihilator_grading_data,
    Algebra,
    cover_injectivity,
    minimal_points,
    mult_multiset,
    q_graded,
    q_hom,
    q_ungraded,
    reconstruct_graph,
)
from crown.graphs import (
    act_on_B,
    build_B,
    build_C,
    build_F,
    compose_morphisms,
    graph_new,
    graphs_isomorphic,
    identity_morphism,
    is_admissible,
)
from crown.linalg import Matrix, mat_compose, mat_rank
from crown.monoid import wn_enumerate
from conftest import random_graph


PATH3 = graph_new(["a", "b", "c"], [("a", "b"), ("b", "c")])
SQUARE = graph_new([0, 1, 2, 3], [(0, 1), (1, 2), (2, 3), (3, 0)])


# -- the graded algebra of a graph ------------------------------------------

def test_dimensions_of_the_standard_instances():
    assert q_graded(build_B(2), QQ).dim == 40
    assert q_graded(build_C(2, 1)[0], QQ).dim == 36
    assert q_graded(build_C(2, -1)[0], QQ).dim == 36


def test_dimension_formula_random():
    rng = random.Random(31)
    for _ in range(8):
        g = random_graph(rng)
        ag = q_graded(g, QQ)
        assert ag.dim1 == len(g.vertices)
        assert ag.dim2 == len(g.vertices) + g.edge_count
        assert ag.dim == 2 * len(g.vertices) + g.edge_count


def test_product_rules_on_a_path():
    ag = q_graded(PATH3, QQ)
    ia, ib, ic = 0, 1, 2
    assert ag.product11(ia, ib) != {}
    assert ag.product11(ia, ic) == {}  # not adjacent
    assert ag.product11(ia, ia) == {0: QQ.one}  # diagonal orbit of "a"
    # the edge orbit basis vector carries coefficient one
    assert list(ag.product11(ia, ib).values()) == [QQ.one]


def test_ungraded_products_vanish_in_high_degree():
    alg = q_ungraded(PATH3, QQ)
    assert alg.product_basis(0, 1) != {}
    deg2_index = next(iter(alg.product_basis(0, 1)))
    assert alg.product_basis(deg2_index, 0) == {}
    assert alg.product_basis(deg2_index, deg2_index) == {}


@pytest.mark.parametrize("field", [QQ, GF(2)])
def test_random_graph_algebras_commutative_associative(field):
    rng = random.Random(37)
    for _ in range(3):
        g = random_graph(rng, max_vertices=8)
        alg = q_ungraded(g, field)
        assert alg.is_associative()
        unit = field.one
        for i in range(alg.dim):
            for j in range(alg.dim):
                assert alg.mult({i: unit}, {j: unit}) == alg.mult({j: unit}, {i: unit})


# -- induced maps --------------------------------------------------------------

def test_q_hom_identity_is_identity_matrix():
    g = build_C(2, 1)[0]
    hom = q_hom(identity_morphism(g), QQ)
    assert hom.matrix == Matrix.identity(QQ, q_ungraded(g, QQ).dim)


def test_q_hom_contravariant_on_composites():
    n = 2
    rng = random.Random(41)
    words = wn_enumerate(n)
    b = build_B(n)
    for _ in range(10):
        w = rng.choice(words)
        inner = build_F(n, rng.randint(1, n))[1]   # F_i -> B
        outer = act_on_B(n, w)                     # B -> B
        composite = compose_morphisms(outer, inner)
        lhs = q_hom(composite, QQ).matrix
        rhs = mat_compose(q_hom(inner, QQ).matrix, q_hom(outer, QQ).matrix)
        assert lhs == rhs


def test_q_hom_multiplicative_on_quotients():
    for s in (1, -1):
        hom = q_hom(build_C(2, s)[1], QQ)  # validates multiplicativity
        assert hom.is_multiplicative()


def test_projection_hom_has_full_column_rank():
    hom = q_hom(build_C(2, 1)[1], QQ)
    assert (hom.matrix.nrows, hom.matrix.ncols) == (40, 36)
    assert mat_rank(hom.matrix) == 36


def test_cover_injectivity_identity():
    assert cover_injectivity([identity_morphism(build_B(2))], QQ)


@pytest.mark.parametrize("n", [2, 3])
def test_cover_injectivity_windows_and_projections(n):
    incls = [build_F(n, i)[1] for i in range(1, n + 1)]
    assert cover_injectivity(incls, QQ)
    for s in (1, -1):
        assert cover_injectivity([build_C(n, s)[1]], QQ)


def test_cover_injectivity_rejects_non_covers():
    with pytest.raises(NotACover):
        cover_injectivity([build_F(2, 1)[1]], QQ)


def test_cover_injectivity_on_random_edge_splits():
    # split a random graph's edges into two spanning subgraphs: a cover
    rng = random.Random(43)
    from crown.graphs import is_cover as cover_pred
    from crown.graphs import morphism_new

    for field in (QQ, GF(5)):
        for _ in range(5):
            g = random_graph(rng, max_vertices=6, min_vertices=3)
            edges = g.edges()
            buckets = ([], [])
            for e in edges:
                buckets[rng.randint(0, 1)].append(e)
            parts = [graph_new(g.vertices, b) for b in buckets]
            fs = [morphism_new({v: v for v in g.vertices}, part, g) for part in parts]
            assert cover_pred(fs)
            assert cover_injectivity(fs, field)


# -- products of basis multisets --------------------------------------------------

def test_mult_multiset_cases():
    alg = q_ungraded(PATH3, QQ)
    assert mult_multiset(alg, [2]) == {2: QQ.one}
    edge = mult_multiset(alg, [0, 1])
    assert len(edge) == 1
    assert mult_multiset(alg, [0, 1, 2]) == {}
    with pytest.raises(ValueError):
        mult_multiset(alg, [])


# -- annihilator regrading ----------------------------------------------------------

@pytest.mark.parametrize("field", [QQ, GF(2)])
def test_regrading_recovers_the_graph_grading(field):
    for g in (PATH3, SQUARE, build_C(2, 1)[0]):
        graded, pivots, kernel = annihilator_grading_data(q_ungraded(g, field))
        reference = q_graded(g, field)
        assert graded.degree1 == reference.degree1
        assert tuple(lbl[1] for lbl in graded.degree2) == reference.degree2
        assert graded._prod == reference._prod
        # the kernel is spanned by exactly the degree-2 coordinate vectors
        d1 = reference.dim1
        assert list(kernel) == [{d1 + k: field.one} for k in range(reference.dim2)]


def test_regrading_dims_one_edge():
    g = graph_new(["a", "b"], [("a", "b")])
    graded = annihilator_grading(q_ungraded(g, QQ))
    assert graded.dim1 == 2
    assert graded.dim2 == 3


def test_regrading_zero_algebra():
    zero_alg = Algebra(QQ, ("x", "y", "z"), {})
    graded = annihilator_grading(zero_alg)
    assert graded.dim1 == 0
    assert graded.dim2 == 3


def test_regrading_rejects_unregradable_products():
    # a unital 1-dim algebra: e*e = e never lands in the annihilator
    alg = Algebra(QQ, ("e",), {(0, 0): {0: QQ.one}})
    with pytest.raises(ValueError):
        annihilator_grading(alg)


# -- projective dependence ------------------------------------------------------------

def brute_minimal_points(g, p):
    """Oracle straight from the definitions, independent of the library path.

    Enumerates normalized degree-1 vectors over F_p, decides dependence by
    summing a(x)b(y) over swap orbits of the relation, and keeps the points
    minimal for inclusion of dependence sets.
    """
    verts = list(g.vertices)
    d = len(verts)
    points = []
    for lead in range(d):
        for tail in itertools.product(range(p), repeat=d - lead - 1):
            points.append((0,) * lead + (1,) + tail)

    def dependent(a, b):
        orbits = {}
        for i, x in enumerate(verts):
            for j, y in enumerate(verts):
                if (x, y) in g.relation and a[i] and b[j]:
                    key = frozenset(((x, y), (y, x)))
                    orbits[key] = (orbits.get(key, 0) + a[i] * b[j]) % p
        return any(orbits.values())

    dep = {pt: {q for q in points if dependent(pt, q)} for pt in points}
    return {
        pt
        for pt in points
        if all(not dep[q] <= dep[pt] for q in points if q != pt)
    }


@pytest.mark.parametrize("graph,p", [(PATH3, 2), (SQUARE, 2), (SQUARE, 3)])
def test_minimal_points_match_brute_force(graph, p):
    field = GF(p)
    expected = {ProjPoint(pt) for pt in brute_minimal_points(graph, p)}
    got = minimal_points(q_graded(graph, field))
    assert got == expected
    # the regraded route must agree with the direct grading
    via_annihilator = minimal_points(annihilator_grading(q_ungraded(graph, field)))
    assert via_annihilator == expected


def test_minimal_points_of_crowns_are_vertex_classes():
    for s in (1, -1):
        crown = build_C(2, s)[0]
        ag = q_graded(crown, GF(2))
        pts = minimal_points(ag)
        expected = set()
        for i in range(ag.dim1):
            v = [0] * ag.dim1
            v[i] = 1
            expected.add(ProjPoint(tuple(v)))
        assert pts == frozenset(expected)
        assert len(pts) == 10


def test_minimal_points_single_generator():
    # one vertex: its square is the diagonal orbit, so the only point is minimal
    g = graph_new(["a"], [])
    pts = minimal_points(q_graded(g, GF(2)))
    assert pts == frozenset({ProjPoint((1,))})


def test_minimal_points_requires_prime_field():
    with pytest.raises(ValueError):
        minimal_points(q_graded(PATH3, QQ))


def test_minimal_points_cap():
    with pytest.raises(CapExceeded):
        minimal_points(q_graded(SQUARE, GF(2)), max_points=8)


# -- reconstruction --------------------------------------------------------------------

def test_reconstruct_single_vertex():
    g = graph_new(["a"], [])
    rebuilt = reconstruct_graph(q_ungraded(g, GF(2)))
    assert graphs_isomorphic(g, rebuilt)


def test_reconstruct_square():
    assert is_admissible(SQUARE)
    rebuilt = reconstruct_graph(q_ungraded(SQUARE, GF(2)))
    assert graphs_isomorphic(SQUARE, rebuilt)


def test_reconstruct_crowns_and_separate_them():
    rebuilt = {}
    for s in (1, -1):
        crown = build_C(2, s)[0]
        rebuilt[s] = reconstruct_graph(q_ungraded(crown, GF(2)))
        assert graphs_isomorphic(crown, rebuilt[s])
    assert not graphs_isomorphic(rebuilt[1], rebuilt[-1])


def test_reconstruct_random_admissible_graphs():
    rng = random.Random(53)
    found = 0
    while found < 3:
        g = random_graph(rng, max_vertices=7, min_vertices=4, p_edge=0.45)
        if not is_admissible(g):
            continue
        found += 1
        rebuilt = reconstruct_graph(q_ungraded(g, GF(2)))
        assert graphs_isomorphic(g, rebuilt)


def test_reconstruct_field_mismatch_guard():
    with pytest.raises(ValueError):
        reconstruct_graph(q_ungraded(SQUARE, GF(2)), field=QQ)


# -- serialization -----------------------------------------------------------------------

def test_algebra_json_shape():
    data = q_ungraded(PATH3, GF(2)).to_json()
    assert data["field"] == "fp:2"
    assert len(data["basis"]) == 8
    assert all(len(t) == 4 for t in data["structure_constants"])
