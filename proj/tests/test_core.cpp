#include "oracles.hpp"

#include "kgraph/errors.hpp"
#include "kgraph/generators.hpp"
#include "kgraph/json_io.hpp"
#include "kgraph/path.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace kgraph;

namespace {

std::vector<KGraph> all_fixtures() {
    std::vector<KGraph> out;
    out.push_back(fixtures::b2());
    out.push_back(fixtures::fib());
    out.push_back(fixtures::pullback_b2());
    out.push_back(fixtures::product_b2_c2());
    return out;
}

std::vector<Degree> box(std::size_t k, int n) {
    std::vector<Degree> out{Degree(k)};
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<Degree> next;
        for (const auto& d : out)
            for (int t = 0; t <= n; ++t) {
                Degree e = d;
                e[i] = t;
                next.push_back(e);
            }
        out = next;
    }
    return out;
}

Path p(const KGraph& g, const std::string& s) { return parse_path(g, s); }

}  // namespace

TEST_CASE("validation of the fixtures") {
    for (const auto& g : all_fixtures()) {
        const auto& r = g.validation();
        CHECK(r.valid());
        CHECK(r.strongly_connected);
        CHECK(r.no_sources);
        CHECK(r.colors_nonempty);
    }
}

TEST_CASE("redirecting one square entry breaks bijectivity") {
    auto spec = fixtures::pullback_b2().spec();
    REQUIRE(spec.squares.size() == 4);
    // a1 b1 = b1 a1 and a1 b2 = b1 a2 now share the same right-hand side.
    auto& sq = spec.squares[1];
    sq.red2 = spec.squares[0].red2;
    sq.blue2 = spec.squares[0].blue2;
    KGraph broken(spec);
    CHECK_FALSE(broken.validation().squares_bijective);
    CHECK_FALSE(broken.validation().valid());
    CHECK_FALSE(broken.validation().problems.empty());
    CHECK_THROWS_AS(broken.require_valid(), ValidationError);
}

TEST_CASE("a missing color is reported") {
    GraphSpec spec;
    spec.k = 2;
    spec.vertices = {"v"};
    spec.edges = {{"a", 1, "v", "v"}};
    KGraph g(spec);
    CHECK_FALSE(g.validation().colors_nonempty);
}

TEST_CASE("cubical condition agrees with a brute-force hexagon check") {
    // Three colors with two loops each. With pair (2,3) flipped, pair (1,2)
    // must be twisted too or every choice for (1,3) would be cubical.
    std::vector<int> perm{0, 1, 2, 3};
    int pass = 0, fail = 0;
    do {
        SquarePermutations perms;
        perms[{1, 2}] = {0, 3, 2, 1};
        perms[{1, 3}] = perm;
        auto g = make_single_vertex(3, {2, 2, 2}, perms);
        CHECK(g.validation().squares_bijective);
        CHECK(g.validation().cubical_checked);
        bool expected = oracle::cubical(g);
        CHECK(g.validation().cubical == expected);
        (expected ? pass : fail)++;
    } while (std::next_permutation(perm.begin(), perm.end()));
    // Both outcomes occur, so the comparison is not vacuous.
    MESSAGE("cubical: " << pass << ", not cubical: " << fail);
    CHECK(pass > 0);
    CHECK(fail > 0);
}

TEST_CASE("every reordering of a tricolored path reaches the same normal form") {
    auto g = make_single_vertex(3, {2, 2, 2});
    REQUIRE(g.validation().cubical);
    for (const auto& lambda : paths_of_degree(g, Degree{1, 1, 1})) {
        // Bubble the colors into each of the six orders and rebuild.
        const auto& e = lambda.edges();
        auto [x1, y1] = *g.refactor(e[1], e[2]);  // e0 x1 y1: colors 1 3 2
        auto [x2, y2] = *g.refactor(e[0], e[1]);  // x2 y2 e2: colors 2 1 3
        auto [x3, y3] = *g.refactor(y2, e[2]);    // x2 x3 y3: colors 2 3 1
        auto [x4, y4] = *g.refactor(e[0], x1);    // x4 y4 y1: colors 3 1 2
        auto [x5, y5] = *g.refactor(y4, y1);      // x4 x5 y5: colors 3 2 1
        std::vector<std::vector<int>> orders{{e[0], e[1], e[2]}, {e[0], x1, y1}, {x2, y2, e[2]},
                                             {x2, x3, y3},        {x4, y4, y1}, {x4, x5, y5}};
        for (const auto& seq : orders) CHECK(path_from_edges(g, seq) == lambda);
    }
}

TEST_CASE("paths_of_degree examples") {
    auto b2 = fixtures::b2();
    CHECK(paths_of_degree(b2, Degree{2}).size() == 4);
    auto pb2 = fixtures::pullback_b2();
    CHECK(paths_of_degree(pb2, Degree{1, 1}).size() == 4);
    auto fib = fixtures::fib();
    int u = *fib.vertex_index("u");
    CHECK(paths_of_degree(fib, Degree{3}, u, u).size() == 3);
    CHECK(oracle::power(fib, Degree{3})[u][u] == 3);
}

TEST_CASE("path counts match integer matrix powers") {
    for (const auto& g : all_fixtures()) {
        for (const auto& n : box(g.rank(), g.rank() == 1 ? 5 : 3)) {
            auto a = oracle::power(g, n);
            long total = 0;
            for (int v = 0; v < g.vertex_count(); ++v)
                for (int w = 0; w < g.vertex_count(); ++w) {
                    CHECK(paths_of_degree(g, n, v, w).size() == static_cast<std::size_t>(a[v][w]));
                    total += a[v][w];
                }
            CHECK(count_paths(g, n) == static_cast<std::size_t>(total));
        }
    }
}

TEST_CASE("enumeration is sorted, duplicate free and degree correct") {
    for (const auto& g : all_fixtures()) {
        for (const auto& n : box(g.rank(), 2)) {
            auto ps = paths_of_degree(g, n);
            CHECK(std::is_sorted(ps.begin(), ps.end()));
            CHECK(std::adjacent_find(ps.begin(), ps.end()) == ps.end());
            for (const auto& x : ps) {
                CHECK(x.degree() == n);
                for (std::size_t i = 0; i + 1 < x.edges().size(); ++i) {
                    CHECK(g.edge(x.edges()[i]).source == g.edge(x.edges()[i + 1]).range);
                    CHECK(g.edge(x.edges()[i]).color <= g.edge(x.edges()[i + 1]).color);
                }
            }
        }
    }
}

TEST_CASE("counting identity") {
    for (const auto& g : all_fixtures()) {
        int N = g.rank() == 1 ? 3 : 2;
        for (const auto& m : box(g.rank(), N))
            for (const auto& n : box(g.rank(), N))
                for (int v = 0; v < g.vertex_count(); ++v)
                    for (int w = 0; w < g.vertex_count(); ++w) {
                        std::size_t lhs = paths_of_degree(g, m + n, v, w).size();
                        std::size_t rhs = 0;
                        for (int u = 0; u < g.vertex_count(); ++u)
                            rhs += paths_of_degree(g, m, v, u).size() * paths_of_degree(g, n, u, w).size();
                        CHECK(lhs == rhs);
                    }
    }
}

TEST_CASE("compose examples") {
    auto b2 = fixtures::b2();
    auto c = compose(b2, p(b2, "e1"), p(b2, "e2"));
    CHECK(to_string(b2, c) == "e1.e2");
    CHECK(c.degree() == Degree{2});

    auto pb2 = fixtures::pullback_b2();
    auto d = compose(pb2, p(pb2, "b1"), p(pb2, "a2"));
    // The square a1 b2 = b1 a2 gives the blue-first form a1.b2.
    CHECK(to_string(pb2, d) == "a1.b2");
    CHECK(d.degree() == Degree{1, 1});
    CHECK(oracle::pullback_word(pb2, d) == std::vector<int>{1, 2});

    auto fib = fixtures::fib();
    // e2 has source w while e2 has range u.
    CHECK_THROWS_AS(compose(fib, p(fib, "e2"), p(fib, "e2")), PreconditionError);
}

TEST_CASE("composition in the pullback concatenates E-words") {
    auto g = fixtures::pullback_b2();
    for (const auto& m : box(2, 2))
        for (const auto& n : box(2, 1))
            for (const auto& mu : paths_of_degree(g, m))
                for (const auto& nu : paths_of_degree(g, n)) {
                    auto w = oracle::pullback_word(g, mu);
                    auto w2 = oracle::pullback_word(g, nu);
                    w.insert(w.end(), w2.begin(), w2.end());
                    CHECK(oracle::pullback_word(g, compose(g, mu, nu)) == w);
                }
}

TEST_CASE("compose is associative and units are vertices") {
    for (const auto& g : all_fixtures()) {
        auto ones = Degree::ones(g.rank());
        auto ps = paths_of_degree(g, ones);
        for (const auto& a : ps) {
            CHECK(compose(g, a, Path(g, a.source())) == a);
            CHECK(compose(g, Path(g, a.range()), a) == a);
            for (const auto& b : paths_of_degree(g, ones, a.source()))
                for (const auto& c : paths_of_degree(g, Degree::unit(g.rank(), 0), b.source()))
                    CHECK(compose(g, compose(g, a, b), c) == compose(g, a, compose(g, b, c)));
        }
    }
}

TEST_CASE("segment examples") {
    auto b2 = fixtures::b2();
    CHECK(to_string(b2, segment(b2, p(b2, "e1.e2.e1"), Degree{1}, Degree{2})) == "e2");
    auto pb2 = fixtures::pullback_b2();
    CHECK(to_string(pb2, segment(pb2, p(pb2, "a1.b2"), Degree{0, 0}, Degree{0, 1})) == "b1");
    CHECK_THROWS(segment(b2, p(b2, "e1"), Degree{0}, Degree{2}));
    CHECK_THROWS(segment(b2, p(b2, "e1.e2"), Degree{2}, Degree{1}));
}

TEST_CASE("segments in the pullback are subwords") {
    auto g = fixtures::pullback_b2();
    for (const auto& lambda : paths_of_degree(g, Degree{2, 2})) {
        auto w = oracle::pullback_word(g, lambda);
        for (const auto& m : box(2, 2))
            for (const auto& n : box(2, 2)) {
                if (!m.le(n)) continue;
                std::vector<int> expect(w.begin() + m.total(), w.begin() + n.total());
                auto s = segment(g, lambda, m, n);
                CHECK(s.degree() == n - m);
                CHECK(oracle::pullback_word(g, s) == expect);
            }
    }
}

TEST_CASE("segment and compose round trip at every split point") {
    for (const auto& g : all_fixtures()) {
        for (const auto& lambda : paths_of_degree(g, Degree::ones(g.rank(), 2))) {
            CHECK(segment(g, lambda, Degree(g.rank()), lambda.degree()) == lambda);
            for (const auto& m : box(g.rank(), 2)) {
                auto head = segment(g, lambda, Degree(g.rank()), m);
                auto tail = segment(g, lambda, m, lambda.degree());
                CHECK(compose(g, head, tail) == lambda);
            }
        }
    }
}

TEST_CASE("lambda_min examples") {
    auto b2 = fixtures::b2();
    auto e1 = p(b2, "e1");
    auto same = lambda_min(b2, e1, e1);
    REQUIRE(same.size() == 1);
    CHECK(same[0].first.is_vertex());
    CHECK(same[0].second.is_vertex());
    CHECK(lambda_min(b2, e1, p(b2, "e2")).empty());

    auto pb2 = fixtures::pullback_b2();
    auto pairs = lambda_min(pb2, p(pb2, "b1"), p(pb2, "a1"));
    CHECK(pairs.size() == 2);
    for (const auto& [alpha, beta] : pairs) {
        CHECK(compose(pb2, p(pb2, "b1"), alpha) == compose(pb2, p(pb2, "a1"), beta));
        CHECK(alpha.degree() == Degree{1, 0});
        CHECK(beta.degree() == Degree{0, 1});
    }
}

TEST_CASE("lambda_min matches brute force over common extensions") {
    for (const auto& g : all_fixtures()) {
        std::vector<Path> ps;
        for (const auto& d : box(g.rank(), 1))
            for (const auto& x : paths_of_degree(g, d)) ps.push_back(x);
        for (const auto& mu : ps)
            for (const auto& nu : ps) {
                auto top = join(mu.degree(), nu.degree());
                std::set<std::pair<Path, Path>> expected;
                for (const auto& lambda : paths_of_degree(g, top)) {
                    if (segment(g, lambda, Degree(g.rank()), mu.degree()) == mu &&
                        segment(g, lambda, Degree(g.rank()), nu.degree()) == nu) {
                        expected.insert({segment(g, lambda, mu.degree(), top), segment(g, lambda, nu.degree(), top)});
                    }
                }
                auto got = lambda_min(g, mu, nu);
                CHECK(std::set<std::pair<Path, Path>>(got.begin(), got.end()) == expected);
                CHECK(has_common_extension(g, mu, nu) == !expected.empty());

                std::set<std::pair<Path, Path>> swapped;
                for (const auto& [a, b] : lambda_min(g, nu, mu)) swapped.insert({b, a});
                CHECK(swapped == expected);
            }
    }
}

TEST_CASE("coordinate matrices") {
    auto to_int = [](const RationalMatrix& a) {
        IntMatrix m(a.rows(), std::vector<long>(a.cols()));
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j) m[i][j] = a(i, j).get_num().get_si();
        return m;
    };
    CHECK(to_int(coordinate_matrices(fixtures::b2()).matrices[0]) == IntMatrix{{2}});
    CHECK(to_int(coordinate_matrices(fixtures::fib()).matrices[0]) == IntMatrix{{1, 1}, {1, 0}});
    auto prod = coordinate_matrices(fixtures::product_b2_c2());
    CHECK(to_int(prod.matrices[0]) == IntMatrix{{2, 0}, {0, 2}});
    CHECK(to_int(prod.matrices[1]) == IntMatrix{{0, 1}, {1, 0}});
    for (const auto& g : all_fixtures()) {
        auto fam = coordinate_matrices(g);
        for (int c = 0; c < g.rank(); ++c) CHECK(to_int(fam.matrices[c]) == oracle::edge_count_matrix(g, c));
    }
}

TEST_CASE("generators") {
    auto b2 = make_single_vertex(1, {2});
    CHECK(b2.vertex_count() == 1);
    CHECK(b2.edge_count() == 2);
    CHECK(serialize_graph(b2) == serialize_graph(fixtures::b2()));

    auto pb2 = fixtures::pullback_b2();
    CHECK(pb2.edge_count() == 4);
    CHECK(pb2.spec().squares.size() == 4);
    int blue = 0;
    for (const auto& e : pb2.edges()) blue += e.color == 0;
    CHECK(blue == 2);

    auto prod = fixtures::product_b2_c2();
    CHECK(prod.vertex_count() == 2);
    int pb = 0, pr = 0;
    for (const auto& e : prod.edges()) (e.color == 0 ? pb : pr)++;
    CHECK(pb == 4);
    CHECK(pr == 2);

    SquarePermutations bad;
    bad[{1, 2}] = {0, 0, 1, 2};
    CHECK_THROWS_AS(make_single_vertex(2, {2, 2}, bad), PreconditionError);
    bad[{1, 2}] = {0, 1, 2};
    CHECK_THROWS_AS(make_single_vertex(2, {2, 2}, bad), PreconditionError);
    CHECK_THROWS_AS(make_pullback(pb2), PreconditionError);
}

TEST_CASE("strong connectivity gives no sources and nonempty path sets") {
    for (const auto& g : all_fixtures()) {
        REQUIRE(g.validation().strongly_connected);
        for (const auto& n : box(g.rank(), 3))
            for (int v = 0; v < g.vertex_count(); ++v) {
                CHECK_FALSE(paths_of_degree(g, n, std::nullopt, v).empty());
                CHECK_FALSE(paths_of_degree(g, n, v).empty());
            }
    }
}

TEST_CASE("a graph with a sink vertex is not strongly connected") {
    auto g = make_directed_graph({"u", "w"}, {{"e1", "u", "u"}, {"e2", "u", "w"}});
    CHECK(g.validation().valid());
    CHECK_FALSE(g.validation().strongly_connected);
    CHECK_FALSE(g.validation().no_sources);
    CHECK_THROWS_AS(g.require_strongly_connected(), ValidationError);
}

TEST_CASE("JSON round trip is byte identical") {
    for (const auto& g : all_fixtures()) {
        auto text = serialize_graph(g);
        CHECK(text.back() == '\n');
        CHECK(serialize_graph(parse_graph(text)) == text);
        CHECK(graph_hash(parse_graph(text)) == graph_hash(g));
    }
}

TEST_CASE("malformed graph documents") {
    CHECK_THROWS_AS(parse_graph("{"), InvalidInput);
    CHECK_THROWS_AS(parse_graph(R"({"k":1,"vertices":["v"]})"), InvalidInput);
    CHECK_THROWS_AS(parse_graph(R"({"k":1,"vertices":["v"],"edges":[{"id":"e","color":2,"range":"v","source":"v"}]})"),
                    InvalidInput);
    CHECK_THROWS_AS(parse_graph(R"({"k":1,"vertices":["v"],"edges":[{"id":"e","color":1,"range":"x","source":"v"}]})"),
                    InvalidInput);
    CHECK_THROWS_AS(parse_graph(R"({"k":1,"vertices":["v","v"],"edges":[]})"), InvalidInput);
}

TEST_CASE("path and degree literals") {
    auto pb2 = fixtures::pullback_b2();
    CHECK(parse_path(pb2, "b1.a2") == parse_path(pb2, "a1.b2"));
    CHECK(parse_path(pb2, "v").is_vertex());
    CHECK_THROWS_AS(parse_path(pb2, "a3"), InvalidInput);
    CHECK(parse_degree("1,0", 2) == Degree{1, 0});
    CHECK(parse_group_element("1,-1", 2) == GroupElement{1, -1});
    CHECK_THROWS_AS(parse_degree("1,-1", 2), InvalidInput);
    CHECK_THROWS_AS(parse_degree("1", 2), InvalidInput);
}

TEST_CASE("group element parts") {
    GroupElement g{3, -2, 0};
    CHECK(g.positive_part() == Degree{3, 0, 0});
    CHECK(g.negative_part() == Degree{0, 2, 0});
    CHECK(GroupElement::difference(g.positive_part(), g.negative_part()) == g);
    CHECK(join(Degree{1, 4}, Degree{3, 2}) == Degree{3, 4});
}
