#include "oracles.hpp"

#include "kgraph/errors.hpp"
#include "kgraph/generators.hpp"
#include "kgraph/measure.hpp"
#include "kgraph/path.hpp"

#include <doctest.h>

#include <cmath>
#include <memory>

using namespace kgraph;

namespace {

// Owns a graph together with everything derived from it.
struct Setup {
    KGraph g;
    PerronData pd;
    CylinderMeasure M;
    PeriodicityOracle per;

    explicit Setup(KGraph graph, int bound = 2)
        : g(std::move(graph)),
          pd(perron_data(coordinate_matrices(g))),
          M(g, pd),
          per(g, periodicity_group(g, bound)) {}
};

std::unique_ptr<Setup> make(KGraph g) { return std::make_unique<Setup>(std::move(g)); }

Path p(const KGraph& g, const std::string& s) { return parse_path(g, s); }

Rational exact(const Real& r) {
    REQUIRE(r.is_exact());
    return r.exact();
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

// Bernoulli measure on two symbols: a word of length n has mass 2^-n.
Rational bernoulli(int length) { return Rational(1, 1) / Rational(mpz_class(1) << length); }

}  // namespace

TEST_CASE("cylinder mass examples") {
    auto b2 = make(fixtures::b2());
    CHECK(exact(b2->M.mass(p(b2->g, "e1.e2.e1"))) == Rational(1, 8));
    auto pb2 = make(fixtures::pullback_b2());
    CHECK(exact(pb2->M.mass(p(pb2->g, "a1"))) == Rational(1, 2));
    auto fib = make(fixtures::fib());
    int u = *fib->g.vertex_index("u");
    CHECK(std::abs(fib->M.mass(Path(fib->g, u)).value() - 0.6180339887) < 1e-9);
    CHECK(std::abs(fib->M.vertex_mass(u).value() - 0.6180339887) < 1e-9);
}

TEST_CASE("B2 cylinder masses are the uniform Bernoulli measure") {
    auto s = make(fixtures::b2());
    for (int n = 0; n <= 6; ++n)
        for (const auto& lambda : paths_of_degree(s->g, Degree{n})) CHECK(exact(s->M.mass(lambda)) == bernoulli(n));
}

TEST_CASE("PB2 cylinder masses are Bernoulli in the E-word length") {
    auto s = make(fixtures::pullback_b2());
    for (const auto& n : box(2, 3))
        for (const auto& lambda : paths_of_degree(s->g, n))
            CHECK(exact(s->M.mass(lambda)) == bernoulli(static_cast<int>(oracle::pullback_word(s->g, lambda).size())));
}

TEST_CASE("quasi-invariance on edges") {
    for (auto g : {fixtures::b2(), fixtures::fib(), fixtures::pullback_b2(), fixtures::product_b2_c2()}) {
        auto s = make(std::move(g));
        for (const auto& e : s->g.edges()) {
            Path lambda(s->g, std::vector<int>{*s->g.edge_index(e.id)});
            Real expect = s->pd.rho_at(e.color).pow(-1) * s->M.vertex_mass(e.source);
            CHECK(close(s->M.mass(lambda), expect, 1e-14));
        }
    }
}

TEST_CASE("consistency examples") {
    auto b2 = make(fixtures::b2());
    auto r = consistency_check(b2->M, Degree{0}, Degree{2});
    CHECK(r.passed);
    CHECK(r.exact);
    CHECK(r.cylinders == 1);
    CHECK(exact(r.total) == 1);

    auto prod = make(fixtures::product_b2_c2());
    r = consistency_check(prod->M, Degree{0, 0}, Degree{1, 1});
    CHECK(r.passed);
    CHECK(exact(r.total) == 1);

    auto fib = make(fixtures::fib());
    r = consistency_check(fib->M, Degree{0}, Degree{3});
    CHECK(r.passed);
    CHECK_FALSE(r.exact);
    CHECK(std::abs(r.total.value() - 1) < 1e-10);
}

TEST_CASE("consistency across levels") {
    for (auto g : {fixtures::b2(), fixtures::pullback_b2(), fixtures::product_b2_c2()}) {
        auto s = make(std::move(g));
        for (const auto& n : box(s->g.rank(), 3))
            for (const auto& m : box(s->g.rank(), 3)) {
                if (!m.le(n)) continue;
                auto r = consistency_check(s->M, m, n);
                CHECK(r.passed);
                CHECK(r.exact);
                CHECK(exact(r.total) == 1);
            }
    }
    auto fib = make(fixtures::fib());
    for (int n = 0; n <= 4; ++n)
        for (int m = 0; m <= n; ++m) CHECK(consistency_check(fib->M, Degree{m}, Degree{n}).passed);
}

TEST_CASE("periodicity mass examples") {
    auto pb2 = make(fixtures::pullback_b2());
    for (int L = 0; L <= 3; ++L) CHECK(exact(periodicity_mass(pb2->M, Degree{1, 0}, Degree{0, 1}, L)) == 1);

    auto b2 = make(fixtures::b2());
    CHECK(exact(periodicity_mass(b2->M, Degree{1}, Degree{0}, 3)) == Rational(1, 8));
    // x(1,2) = x(2,3) is the only constraint at level 1.
    CHECK(exact(periodicity_mass(b2->M, Degree{1}, Degree{2}, 1)) == Rational(1, 2));
}

TEST_CASE("B2 periodicity mass against a direct word count") {
    // Words of length max(m,n)+L whose letters at m+l and n+l agree for l < L.
    auto s = make(fixtures::b2());
    for (int m = 0; m <= 2; ++m)
        for (int n = 0; n <= 2; ++n)
            for (int L = 0; L <= 4; ++L) {
                int len = std::max(m, n) + L;
                long good = 0;
                for (long w = 0; w < (1L << len); ++w) {
                    bool ok = true;
                    for (int l = 0; l < L; ++l) ok = ok && (((w >> (m + l)) & 1) == ((w >> (n + l)) & 1));
                    good += ok;
                }
                CHECK(exact(periodicity_mass(s->M, Degree{m}, Degree{n}, L)) == Rational(good) * bernoulli(len));
            }
}

TEST_CASE("periodicity mass dichotomy") {
    for (auto g : {fixtures::pullback_b2(), fixtures::product_b2_c2()}) {
        auto s = make(std::move(g));
        for (const auto& c : s->per.group().confirmed)
            for (int L = 0; L <= 5; ++L) CHECK(exact(periodicity_mass(s->M, c.positive_part(), c.negative_part(), L)) == 1);
    }
    struct Case {
        KGraph g;
        Degree m, n;
    };
    std::vector<Case> cases;
    cases.push_back({fixtures::b2(), Degree{1}, Degree{0}});
    cases.push_back({fixtures::b2(), Degree{1}, Degree{2}});
    cases.push_back({fixtures::pullback_b2(), Degree{1, 0}, Degree{0, 0}});
    cases.push_back({fixtures::pullback_b2(), Degree{2, 0}, Degree{0, 1}});
    cases.push_back({fixtures::product_b2_c2(), Degree{0, 1}, Degree{0, 0}});
    cases.push_back({fixtures::fib(), Degree{1}, Degree{0}});
    for (auto& c : cases) {
        auto s = make(std::move(c.g));
        Real prev = 2;
        bool dropped = false;
        for (int L = 0; L <= 20 && !dropped; ++L) {
            auto mass = periodicity_mass(s->M, c.m, c.n, L, 50'000'000);
            CHECK(leq(mass, prev, 1e-12));
            prev = mass;
            dropped = mass.value() < 0.01;
        }
        CHECK(dropped);
    }
}

TEST_CASE("periodicity mass respects the cap") {
    auto s = make(fixtures::b2());
    CHECK_THROWS_AS(periodicity_mass(s->M, Degree{1}, Degree{0}, 12, 1000), BoundExceeded);
}

TEST_CASE("decay witness examples") {
    auto b2 = make(fixtures::b2());
    auto w = find_decay_witness(b2->M, GroupElement{1}, 6);
    CHECK(w.a.total() <= 3);
    CHECK(witness_separates(b2->g, w));
    CHECK(w.K.value() < 1);
    CHECK(leq(w.max_ratio, w.K, 0));

    auto pb2 = make(fixtures::pullback_b2());
    auto w2 = find_decay_witness(pb2->M, GroupElement{1, 0}, 6);
    CHECK(w2.a.total() <= 4);
    CHECK(witness_separates(pb2->g, w2));
    CHECK_THROWS_AS(find_decay_witness(pb2->M, GroupElement{1, -1}, 6), PreconditionError);
}

TEST_CASE("witness tails separate by brute force") {
    auto s = make(fixtures::pullback_b2());
    for (const GroupElement& g : {GroupElement{1, 0}, GroupElement{2, -1}, GroupElement{0, 1}}) {
        auto w = find_decay_witness(s->M, g, 6);
        for (int v = 0; v < s->g.vertex_count(); ++v) {
            const auto& tail = w.tails[v];
            CHECK(tail.degree() == w.a);
            CHECK(tail.range() == v);
            for (const auto& mu : paths_of_degree(s->g, g.positive_part(), std::nullopt, v))
                for (const auto& nu : paths_of_degree(s->g, g.negative_part(), std::nullopt, v)) {
                    // Disjoint cylinders: the E-words differ somewhere.
                    auto a = oracle::pullback_word(s->g, compose(s->g, mu, tail));
                    auto b = oracle::pullback_word(s->g, compose(s->g, nu, tail));
                    std::size_t n = std::min(a.size(), b.size());
                    CHECK_FALSE(std::equal(a.begin(), a.begin() + n, b.begin()));
                }
        }
    }
}

TEST_CASE("decay check examples") {
    auto b2 = make(fixtures::b2());
    auto w = find_decay_witness(b2->M, GroupElement{1}, 6);
    auto e1 = p(b2->g, "e1");
    auto r = decay_check(b2->M, w, e1, Path(b2->g, 0), 3);
    CHECK(r.passed);
    REQUIRE(r.masses.size() == 4);
    CHECK(exact(r.masses[0]) == exact(b2->M.mass(e1)));
    CHECK(exact(r.bounds[0]) == exact(b2->M.mass(e1)));
    for (std::size_t j = 1; j < r.masses.size(); ++j) CHECK(exact(r.masses[j]) < exact(r.masses[j - 1]));

    auto pb2 = make(fixtures::pullback_b2());
    auto w2 = find_decay_witness(pb2->M, GroupElement{1, 0}, 6);
    auto r2 = decay_check(pb2->M, w2, p(pb2->g, "a1"), Path(pb2->g, 0), 3);
    CHECK(r2.passed);
    for (std::size_t j = 1; j < r2.masses.size(); ++j) CHECK(exact(r2.masses[j]) < exact(r2.masses[j - 1]));
}

TEST_CASE("decay check on all pairs of small paths") {
    for (auto g : {fixtures::b2(), fixtures::pullback_b2(), fixtures::product_b2_c2()}) {
        auto s = make(std::move(g));
        std::size_t k = s->g.rank();
        std::vector<GroupElement> gs;
        if (k == 1) gs = {GroupElement{1}, GroupElement{2}};
        else gs = {GroupElement{1, 0}, GroupElement{0, 1}, GroupElement{1, -2}};
        for (const auto& gg : gs) {
            if (s->per.is_periodic(gg)) continue;
            auto w = find_decay_witness(s->M, gg, 6);
            for (const auto& mu : paths_of_degree(s->g, gg.positive_part()))
                for (const auto& nu : paths_of_degree(s->g, gg.negative_part(), std::nullopt, mu.source()))
                    CHECK(decay_check(s->M, w, mu, nu, 3).passed);
        }
    }
}

TEST_CASE("agreement mass examples") {
    auto pb2 = make(fixtures::pullback_b2());
    auto a = agreement_mass(pb2->M, pb2->per, p(pb2->g, "a1"), p(pb2->g, "b1"), 4);
    CHECK(exact(a.closed_form) == Rational(1, 2));
    for (const auto& b : a.level_bounds) CHECK(exact(b) == Rational(1, 2));

    auto z = agreement_mass(pb2->M, pb2->per, p(pb2->g, "a1"), p(pb2->g, "b2"), 4);
    CHECK(exact(z.closed_form) == 0);
    for (std::size_t L = 1; L < z.level_bounds.size(); ++L) CHECK(exact(z.level_bounds[L]) == 0);

    auto b2 = make(fixtures::b2());
    auto c = agreement_mass(b2->M, b2->per, p(b2->g, "e1"), p(b2->g, "e1.e1"), 5);
    CHECK(exact(c.closed_form) == 0);
    CHECK(exact(c.level_bounds[1]) == Rational(1, 8));
    for (std::size_t L = 1; L < c.level_bounds.size(); ++L) CHECK(exact(c.level_bounds[L]) < exact(c.level_bounds[L - 1]));
}

TEST_CASE("agreement bounds sandwich the closed form") {
    for (auto g : {fixtures::b2(), fixtures::pullback_b2(), fixtures::product_b2_c2()}) {
        auto s = make(std::move(g));
        std::vector<Path> ps;
        for (const auto& d : box(s->g.rank(), 1))
            for (const auto& x : paths_of_degree(s->g, d)) ps.push_back(x);
        for (const auto& mu : ps)
            for (const auto& nu : ps) {
                if (mu.source() != nu.source()) continue;
                auto a = agreement_mass(s->M, s->per, mu, nu, 3);
                bool periodic = s->per.is_periodic(GroupElement::difference(mu.degree(), nu.degree()));
                for (std::size_t L = 0; L < a.level_bounds.size(); ++L) {
                    CHECK(exact(a.level_bounds[L]) >= exact(a.closed_form));
                    if (L > 0) CHECK(exact(a.level_bounds[L]) <= exact(a.level_bounds[L - 1]));
                    if (periodic && L > 0) CHECK(exact(a.level_bounds[L]) == exact(a.closed_form));
                }
            }
    }
}
