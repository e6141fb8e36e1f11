#include "oracles.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace oracle {

using kgraph::Degree;
using kgraph::KGraph;
using kgraph::Path;

kgraph::Matrix<double> to_double(const kgraph::RationalMatrix& a) { return a.cast<double>(); }

namespace {

Eigen::MatrixXd to_eigen(const kgraph::Matrix<double>& a) {
    Eigen::MatrixXd m(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    return m;
}

}  // namespace

double spectral_radius(const kgraph::Matrix<double>& a) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(to_eigen(a), false);
    double best = 0;
    for (const auto& ev : es.eigenvalues()) best = std::max(best, std::abs(ev));
    return best;
}

std::vector<double> perron_vector(const kgraph::Matrix<double>& a) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(to_eigen(a), true);
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < es.eigenvalues().size(); ++i) {
        if (std::abs(es.eigenvalues()[i]) > std::abs(es.eigenvalues()[best])) best = i;
    }
    Eigen::VectorXd v = es.eigenvectors().col(best).real();
    double sum = v.sum();
    std::vector<double> out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = v[i] / sum;
    return out;
}

IntMatrix edge_count_matrix(const KGraph& g, int color) {
    IntMatrix m(g.vertex_count(), std::vector<long>(g.vertex_count(), 0));
    for (const auto& e : g.edges()) {
        if (e.color == color) ++m[e.range][e.source];
    }
    return m;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix c(a.size(), std::vector<long>(b.front().size(), 0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t l = 0; l < b.size(); ++l)
            for (std::size_t j = 0; j < b.front().size(); ++j) c[i][j] += a[i][l] * b[l][j];
    return c;
}

IntMatrix identity(std::size_t n) {
    IntMatrix m(n, std::vector<long>(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

IntMatrix power(const KGraph& g, const Degree& n) {
    IntMatrix out = identity(g.vertex_count());
    for (int c = 0; c < g.rank(); ++c) {
        IntMatrix a = edge_count_matrix(g, c);
        for (int t = 0; t < n[c]; ++t) out = multiply(out, a);
    }
    return out;
}

std::vector<int> pullback_word(const KGraph& g, const Path& p) {
    std::vector<int> word;
    for (int e : p.edges()) word.push_back(std::stoi(g.edge(e).id.substr(1)));
    return word;
}

bool cubical(const KGraph& g) {
    auto swap = [&](int x, int y) {
        auto r = g.refactor(x, y);
        if (!r) throw std::logic_error("missing square");
        return *r;
    };
    for (int c0 = 0; c0 < g.rank(); ++c0)
        for (int c1 = c0 + 1; c1 < g.rank(); ++c1)
            for (int c2 = c1 + 1; c2 < g.rank(); ++c2)
                for (const auto& e : g.edges()) {
                    if (e.color != c0) continue;
                    for (int f : g.edges_with_range(e.source, c1))
                        for (int h : g.edges_with_range(g.edge(f).source, c2)) {
                            int ei = *g.edge_index(e.id);
                            // e f h -> e h' f' -> h'' e' f' -> h'' f'' e''
                            auto [h1, f1] = swap(f, h);
                            auto [h2, e1] = swap(ei, h1);
                            auto [f2, e2] = swap(e1, f1);
                            // e f h -> f3 e3 h -> f3 h3 e4 -> h4 f4 e4
                            auto [f3, e3] = swap(ei, f);
                            auto [h3, e4] = swap(e3, h);
                            auto [h4, f4] = swap(f3, h3);
                            if (h2 != h4 || f2 != f4 || e2 != e4) return false;
                        }
                }
    return true;
}

}  // namespace oracle
