import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from locality.errors import InvalidCertificateError, PreconditionError
from locality.graphs import (
    MultiGraph,
    PathDecomposition,
    cutwidth_exact,
    cutwidth_of_arrangement,
    is_valid_path_decomposition,
    order_to_path_decomposition,
    pathwidth_exact,
    second_order_cutwidth_of_arrangement,
)
from locality.reductions import (
    arrangement_to_marking,
    arrangement_to_pd_Gprime,
    build_G_alpha,
    build_G_prime,
    build_H_alpha,
    build_H_alpha_k,
    cutwidth_via_locality,
    cutwidth_via_pathwidth,
    cycle_from_vertices,
    locality_via_cutwidth,
    locality_via_pathwidth,
    marking_to_arrangement,
    marking_to_path_decomposition,
    path_decomposition_to_marking,
    pd_Gprime_to_arrangement,
    words_from_graph,
)
from locality.words import Word, locality, marking_number, tightness_alpha, tightness_beta

from oracles import (
    atlas,
    cutwidth_perm,
    six_vertex_graph,
    random_condensed,
    random_multigraph,
    valid_decomposition,
)

K2 = MultiGraph(2, ((0, 1),))
SAMPLE_WORD = Word.intern("abcbcdbada")


@st.composite
def condensed(draw, max_sigma=5, max_len=10, min_len=1):
    sigma = draw(st.integers(1 if min_len < 2 else 2, max_sigma))
    first = draw(st.integers(0, sigma - 1))
    out = [first]
    for _ in range(draw(st.integers(min_len, max_len)) - 1):
        if sigma == 1:
            break
        step = draw(st.integers(1, sigma - 1))
        out.append((out[-1] + step) % sigma)
    return Word.intern(str(x) for x in out)


@st.composite
def connected_multigraphs(draw, max_n=6, max_m=9):
    n = draw(st.integers(2, max_n))
    edges = [(draw(st.integers(0, v - 1)), v) for v in range(1, n)]
    pairs = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda e: e[0] != e[1])
    edges += draw(st.lists(pairs, max_size=max(0, max_m - len(edges))))
    return MultiGraph(n, tuple(edges))


def fatten(q: PathDecomposition, n: int, rng: random.Random) -> PathDecomposition:
    """Stretch every vertex interval at random; the result stays a valid decomposition."""
    bags = [set(b) for b in q.bags]
    for v in range(n):
        where = [i for i, b in enumerate(bags) if v in b]
        lo = rng.randint(0, where[0])
        hi = rng.randint(where[-1], len(bags) - 1)
        for i in range(lo, hi + 1):
            bags[i].add(v)
    return PathDecomposition(tuple(bags))


class TestAnchoredAdjacency:
    def test_small_example(self):
        r = build_H_alpha_k("xy", 1)
        assert r.product.labels == ("x", "y", "$", "#")
        assert sorted(r.product.edges) == [(0, 1), (0, 2), (1, 2), (2, 3), (2, 3)]

    def test_sample_word_graph(self):
        r = build_H_alpha_k(SAMPLE_WORD, 2)
        assert r.product.n == 6 and r.product.m == 15
        assert cutwidth_exact(r.product)[0] == 4
        assert r.params == {"k": 2}

    def test_plain_graph(self):
        assert build_H_alpha("xy").product.edges == ((0, 1),)
        r = build_H_alpha(SAMPLE_WORD)
        assert r.product.n == 4 and r.product.m == 9

    def test_preconditions(self):
        with pytest.raises(PreconditionError):
            build_H_alpha_k("xxy", 1)
        with pytest.raises(PreconditionError):
            build_H_alpha_k("xy", 0)
        with pytest.raises(PreconditionError):
            build_H_alpha("")

    def test_sample_word_arrangement(self):
        r = build_H_alpha_k(SAMPLE_WORD, 2)
        order = [r.product.labels.index(c) for c in "cbda$#"]
        s = arrangement_to_marking(SAMPLE_WORD, r, order)
        assert s == tuple(SAMPLE_WORD.index(c) for c in "cbda")
        assert arrangement_to_marking(SAMPLE_WORD, r, order[::-1]) == s
        assert marking_number(SAMPLE_WORD, s).peak == 2

    def test_optimal_arrangement_gives_optimal_marking(self):
        r = build_H_alpha_k(SAMPLE_WORD, 2)
        _, order = cutwidth_exact(r.product)
        assert marking_number(SAMPLE_WORD, arrangement_to_marking(SAMPLE_WORD, r, order)).peak == 2

    @given(condensed(), st.integers(1, 4), st.randoms(use_true_random=False))
    def test_any_arrangement_bound(self, w, k, rnd):
        for r in (build_H_alpha(w), build_H_alpha_k(w, k)):
            order = list(range(r.product.n))
            rnd.shuffle(order)
            s = arrangement_to_marking(w, r, order)
            assert marking_number(w, s).peak <= cutwidth_of_arrangement(r.product, order) / 2 + 1

    @given(condensed(max_sigma=6, max_len=12))
    def test_cutwidth_iff_locality(self, w):
        loc = locality(w)
        for k in (loc - 1, loc, loc + 1):
            if k >= 1:
                assert (cutwidth_exact(build_H_alpha_k(w, k).product)[0] == 2 * k) == (loc <= k)

    @given(condensed(max_sigma=6, max_len=12))
    def test_plain_graph_sandwich(self, w):
        cw = cutwidth_exact(build_H_alpha(w).product)[0]
        assert 2 * locality(w) - 4 <= cw <= 2 * locality(w)


class TestLocalityViaCutwidth:
    def test_examples(self):
        assert locality_via_cutwidth("xyxyzxz")[0] == 2
        assert locality_via_cutwidth(SAMPLE_WORD)[0] == 2
        assert locality_via_cutwidth("") == (0, ())
        assert locality_via_cutwidth("a") == (1, (0,))

    @given(condensed(max_sigma=6, max_len=14))
    def test_agrees_with_subset_dp(self, w):
        k, s = locality_via_cutwidth(w)
        assert k == locality(w) == marking_number(w, s).peak


class TestEulerianWords:
    SAMPLE_WALK = "xwuxwuxvuvyzvyzv"

    def sample_cycle(self):
        g = six_vertex_graph()
        return g, cycle_from_vertices(g, [g.labels.index(c) for c in self.SAMPLE_WALK])

    def test_six_vertex_word(self):
        g, cycle = self.sample_cycle()
        words = {c.anchor: c for c in words_from_graph(g, cycle)}
        v, x = g.labels.index("v"), g.labels.index("x")
        for anchor in (v, x):
            assert words[anchor].word.text() == "xwuxwuxvuvyzvyzv"
            assert {words[anchor].edge.tail, words[anchor].edge.head} == {v, x}
        assert locality(words[v].word) == 3 == cutwidth_exact(g)[0]

    def test_six_vertex_marking(self):
        g, cycle = self.sample_cycle()
        word = words_from_graph(g, cycle)[g.labels.index("v")].word
        s = tuple(word.index(c) for c in "wuxvyz")
        assert marking_number(word, s).peak == 3
        order = marking_to_arrangement(g, word, s)
        assert cutwidth_of_arrangement(g, order) == 3

    def test_default_cycle_window(self):
        g = six_vertex_graph()
        cands = words_from_graph(g)
        assert len(cands) == 6
        assert all(len(c.word) == 16 for c in cands)
        locs = [locality(c.word) for c in cands]
        assert min(locs) == 3 and max(locs) <= 4

    def test_all_edges(self):
        g = six_vertex_graph()
        assert len(words_from_graph(g, all_edges=True)) == 16

    def test_two_vertices(self):
        (a, b) = words_from_graph(K2)
        assert a.word.symbols in ((0, 1), (1, 0))
        assert locality(a.word) == 1 == cutwidth_exact(K2)[0]
        assert marking_to_arrangement(K2, a.word, (0, 1)) == (0, 1)

    def test_preconditions(self):
        with pytest.raises(PreconditionError):
            words_from_graph(MultiGraph(1))
        with pytest.raises(PreconditionError):
            words_from_graph(MultiGraph(3, ((0, 1),)))

    def test_bad_walk(self):
        with pytest.raises(InvalidCertificateError):
            cycle_from_vertices(K2, [0, 1, 0, 1, 0])
        with pytest.raises(InvalidCertificateError):
            cycle_from_vertices(MultiGraph(3, ((0, 1), (1, 2))), [0, 1])

    def test_alphabet_mismatch(self):
        with pytest.raises(InvalidCertificateError):
            marking_to_arrangement(six_vertex_graph(), Word.intern("ab"), (0, 1))

    @given(connected_multigraphs())
    def test_window_and_minimum(self, g):
        cw = cutwidth_exact(g)[0]
        for c in words_from_graph(g, all_edges=True):
            assert locality(c.word) in (cw, cw + 1)
            assert c.word.sigma == g.n and len(c.word) == 2 * g.m
        assert min(locality(c.word) for c in words_from_graph(g)) == cw

    @given(connected_multigraphs(), st.randoms(use_true_random=False))
    def test_marking_translates_to_arrangement(self, g, rnd):
        for c in words_from_graph(g):
            s = list(range(g.n))
            rnd.shuffle(s)
            order = marking_to_arrangement(g, c.word, s)
            assert cutwidth_of_arrangement(g, order) <= marking_number(c.word, s).peak

    @given(connected_multigraphs(max_n=7))
    def test_cutwidth_via_locality(self, g):
        k, order = cutwidth_via_locality(g)
        assert k == cutwidth_exact(g)[0] == cutwidth_of_arrangement(g, order)

    def test_cutwidth_via_locality_examples(self):
        assert cutwidth_via_locality(six_vertex_graph())[0] == 3
        assert cutwidth_via_locality(K2)[0] == 1


class TestPositionGraph:
    def test_position_graph_example(self):
        g = build_G_alpha("cabacabac").product
        assert (g.n, g.m) == (9, 18) and g.simple
        assert g.labels[:3] == ("c@1", "a@2", "b@3")

    def test_two_letters(self):
        g = build_G_alpha("xy").product
        assert g.edges == ((0, 1),)
        assert pathwidth_exact(g)[0] == 1

    def test_preconditions(self):
        with pytest.raises(PreconditionError):
            build_G_alpha("x")
        with pytest.raises(PreconditionError):
            build_G_alpha("xxy")

    def test_tightness(self):
        for n, k in [(3, 2), (3, 3), (4, 2)]:
            assert pathwidth_exact(build_G_alpha(tightness_alpha(n, k)).product)[0] == 2 * k
        for k in range(1, 6):
            assert pathwidth_exact(build_G_alpha(tightness_beta(k)).product)[0] == k

    @given(condensed(max_sigma=6, max_len=12, min_len=2))
    def test_sandwich(self, w):
        pw = pathwidth_exact(build_G_alpha(w).product)[0]
        assert locality(w) <= pw <= 2 * locality(w)


class TestMarkingToDecomposition:
    def test_two_letters(self):
        q = marking_to_path_decomposition("xy", (0, 1))
        assert q.width == 1 and q.is_nice()

    def test_beta(self):
        w = tightness_beta(3)
        for s in [(0, 1), (1, 0)]:
            q = marking_to_path_decomposition(w, s)
            assert is_valid_path_decomposition(build_G_alpha(w).product, q)
            assert q.width <= 6

    @given(condensed(max_sigma=6, max_len=12, min_len=2), st.randoms(use_true_random=False))
    def test_valid_nice_and_within_twice_the_marking_number(self, w, rnd):
        s = list(range(w.sigma))
        rnd.shuffle(s)
        q = marking_to_path_decomposition(w, s)
        g = build_G_alpha(w).product
        assert q.is_nice()
        assert valid_decomposition(g, q.bags)
        assert q.width <= 2 * marking_number(w, s).peak

    def test_rejects_bad_sequence(self):
        with pytest.raises(InvalidCertificateError):
            marking_to_path_decomposition("xyx", (0,))


class TestDecompositionToMarking:
    def test_beta(self):
        w = tightness_beta(3)
        _, q = pathwidth_exact(build_G_alpha(w).product)
        assert q.width == 3
        assert marking_number(w, path_decomposition_to_marking(w, q)).peak == 3

    def test_two_letters(self):
        s = path_decomposition_to_marking("xy", PathDecomposition(({0, 1},)))
        assert marking_number("xy", s).peak == 1

    def test_invalid_decomposition(self):
        with pytest.raises(InvalidCertificateError):
            path_decomposition_to_marking("xyx", PathDecomposition(({0, 1}, {2})))

    def test_random_decompositions(self):
        rng = random.Random(11)
        for _ in range(400):
            w = random_condensed(rng, 6, 12, min_len=2)
            g = build_G_alpha(w).product
            order = list(range(g.n))
            rng.shuffle(order)
            s = list(range(w.sigma))
            rng.shuffle(s)
            sources = [
                pathwidth_exact(g)[1],
                order_to_path_decomposition(g, order),
                marking_to_path_decomposition(w, s),
            ]
            for q in sources + [fatten(q, g.n, rng) for q in sources]:
                assert is_valid_path_decomposition(g, q)
                assert marking_number(w, path_decomposition_to_marking(w, q)).peak <= q.width


class TestLocalityViaPathwidth:
    def test_examples(self):
        k, s = locality_via_pathwidth(tightness_alpha(3, 2))
        assert 2 <= k <= 4 and marking_number(tightness_alpha(3, 2), s).peak == k
        assert locality_via_pathwidth(tightness_beta(3))[0] == 3
        assert locality_via_pathwidth("") == (0, ())
        assert locality_via_pathwidth("aaa") == (1, (0,))

    @given(condensed(max_sigma=6, max_len=12))
    def test_factor_two(self, w):
        k, s = locality_via_pathwidth(w)
        assert marking_number(w, s).peak == k
        assert locality(w) <= k <= 2 * locality(w)


class TestIncidenceGraph:
    def test_six_vertex_incidence_graph(self):
        r = build_G_prime(six_vertex_graph())
        assert (r.product.n, r.product.m) == (16, 23)
        assert r.product.labels[0] == "u_v"
        assert pathwidth_exact(r.product)[0] == 3

    def test_two_vertices(self):
        r = build_G_prime(K2)
        assert r.product.n == 2 and r.product.edges == ((0, 1),)
        assert pathwidth_exact(r.product)[0] == 1

    def test_parallel_edges_get_their_own_copies(self):
        r = build_G_prime(MultiGraph(2, ((0, 1), (0, 1))))
        assert r.product.labels == ("0_1/0", "1_0/0", "0_1/1", "1_0/1")
        assert r.origin == ((0, 1, 0), (1, 0, 0), (0, 1, 1), (1, 0, 1))
        assert sorted(r.product.edges) == [(0, 1), (0, 2), (1, 3), (2, 3)]

    def test_edgeless(self):
        with pytest.raises(PreconditionError):
            build_G_prime(MultiGraph(3))

    @given(connected_multigraphs(max_n=6, max_m=9))
    def test_sandwich(self, g):
        cw = cutwidth_exact(g)[0]
        pw = pathwidth_exact(build_G_prime(g).product)[0]
        assert cw <= pw <= 2 * cw


class TestArrangementToIncidenceDecomposition:
    def test_small(self):
        assert arrangement_to_pd_Gprime(K2, (0, 1)).width == 1
        p3 = MultiGraph(3, ((0, 1), (1, 2)))
        q = arrangement_to_pd_Gprime(p3, (0, 1, 2))
        assert is_valid_path_decomposition(build_G_prime(p3).product, q) and q.width <= 2

    def test_invalid_arrangement(self):
        with pytest.raises(InvalidCertificateError):
            arrangement_to_pd_Gprime(K2, (0, 0))

    @given(connected_multigraphs(max_n=7, max_m=10), st.randoms(use_true_random=False))
    def test_valid_within_second_order_cutwidth(self, g, rnd):
        order = list(range(g.n))
        rnd.shuffle(order)
        q = arrangement_to_pd_Gprime(g, order)
        assert valid_decomposition(build_G_prime(g).product, q.bags)
        assert q.width <= second_order_cutwidth_of_arrangement(g, order)
        assert q.width <= 2 * cutwidth_of_arrangement(g, order)


class TestIncidenceDecompositionToArrangement:
    def test_two_vertices(self):
        _, q = pathwidth_exact(build_G_prime(K2).product)
        assert cutwidth_of_arrangement(K2, pd_Gprime_to_arrangement(K2, q)) == 1

    def test_six_vertex_incidence_graph(self):
        g = six_vertex_graph()
        k, q = pathwidth_exact(build_G_prime(g).product)
        order = pd_Gprime_to_arrangement(g, q)
        assert cutwidth_exact(g)[0] <= cutwidth_of_arrangement(g, order) <= k

    def test_invalid(self):
        with pytest.raises(InvalidCertificateError):
            pd_Gprime_to_arrangement(K2, PathDecomposition(({0},)))

    def test_random_decompositions(self):
        rng = random.Random(5)
        for _ in range(250):
            g = random_multigraph(rng, 7, 9)
            gp = build_G_prime(g).product
            order = list(range(g.n))
            rng.shuffle(order)
            porder = list(range(gp.n))
            rng.shuffle(porder)
            sources = [
                pathwidth_exact(gp)[1],
                arrangement_to_pd_Gprime(g, order),
                order_to_path_decomposition(gp, porder),
            ]
            for q in sources + [fatten(q, gp.n, rng) for q in sources]:
                out = pd_Gprime_to_arrangement(g, q)
                assert cutwidth_of_arrangement(g, out) <= q.width

    def test_graphs_with_isolated_vertices(self):
        g = MultiGraph(4, ((1, 3), (1, 3), (3, 2)))
        k, order = cutwidth_via_pathwidth(g)
        assert cutwidth_exact(g)[0] <= k <= 2 * cutwidth_exact(g)[0]
        assert sorted(order) == [0, 1, 2, 3]


class TestCutwidthViaPathwidth:
    def test_examples(self):
        assert cutwidth_via_pathwidth(K2)[0] == 1
        k, _ = cutwidth_via_pathwidth(six_vertex_graph())
        assert 3 <= k <= 6

    def test_small_simple_graphs(self):
        for g in atlas(6):
            if not 1 <= g.m <= 9:
                continue
            cw = cutwidth_perm(g) if g.n <= 5 else cutwidth_exact(g)[0]
            k, order = cutwidth_via_pathwidth(g)
            assert cutwidth_of_arrangement(g, order) == k
            assert cw <= k <= 2 * cw
