#include "kgraph/path.hpp"

#include "kgraph/errors.hpp"

#include <algorithm>
#include <map>

namespace kgraph {

namespace {

// Rewrites the composable edge word `w` so that its color sequence becomes
// `target`, moving one edge at a time leftwards through adjacent squares.
void reorder(const KGraph& g, std::vector<int>& w, const std::vector<int>& target) {
    for (std::size_t p = 0; p < target.size(); ++p) {
        std::size_t q = p;
        while (q < w.size() && g.edge(w[q]).color != target[p]) ++q;
        if (q == w.size()) throw PreconditionError("color word does not match the path degree");
        for (; q > p; --q) {
            auto r = g.refactor(w[q - 1], w[q]);
            if (!r) throw ValidationError("missing square for " + g.edge(w[q - 1]).id + "." + g.edge(w[q]).id);
            w[q - 1] = r->first;
            w[q] = r->second;
        }
    }
}

std::vector<int> color_word(const Degree& d) {
    std::vector<int> word;
    for (std::size_t c = 0; c < d.size(); ++c) word.insert(word.end(), d[c], static_cast<int>(c));
    return word;
}

void normalize(const KGraph& g, std::vector<int>& w) {
    std::vector<int> colors;
    colors.reserve(w.size());
    for (int e : w) colors.push_back(g.edge(e).color);
    if (std::is_sorted(colors.begin(), colors.end())) return;
    std::sort(colors.begin(), colors.end());
    reorder(g, w, colors);
}

}  // namespace

Path::Path(const KGraph& g, int vertex) : degree_(g.rank()), range_(vertex), source_(vertex) {
    if (vertex < 0 || vertex >= g.vertex_count()) throw PreconditionError("vertex index out of range");
}

Path::Path(const KGraph& g, std::vector<int> edges) : edges_(std::move(edges)), degree_(g.rank()) {
    if (edges_.empty()) throw PreconditionError("an edge path needs at least one edge");
    for (int e : edges_) ++degree_[g.edge(e).color];
    range_ = g.edge(edges_.front()).range;
    source_ = g.edge(edges_.back()).source;
}

Path path_from_edges(const KGraph& g, std::span<const int> edges) {
    if (edges.empty()) throw PreconditionError("empty edge sequence");
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        if (g.edge(edges[i]).source != g.edge(edges[i + 1]).range) {
            throw PreconditionError("edges " + g.edge(edges[i]).id + " and " + g.edge(edges[i + 1]).id +
                                    " are not composable");
        }
    }
    std::vector<int> w(edges.begin(), edges.end());
    normalize(g, w);
    return Path(g, std::move(w));
}

std::vector<Path> paths_of_degree(const KGraph& g, const Degree& n, std::optional<int> range,
                                  std::optional<int> source) {
    g.require_valid();
    if (n.size() != static_cast<std::size_t>(g.rank())) throw PreconditionError("degree has wrong length");

    // Normal forms are exactly the composable words with sorted colors, so
    // extension color by color at the source end never needs a square.
    struct Partial {
        std::vector<int> edges;
        int start;
        int end;
    };
    std::vector<Partial> current;
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (!range || *range == v) current.push_back({{}, v, v});
    }
    for (int c = 0; c < g.rank(); ++c) {
        for (int step = 0; step < n[c]; ++step) {
            std::vector<Partial> next;
            for (const auto& p : current) {
                for (int e : g.edges_with_range(p.end, c)) {
                    Partial q = p;
                    q.edges.push_back(e);
                    q.end = g.edge(e).source;
                    next.push_back(std::move(q));
                }
            }
            current = std::move(next);
        }
    }
    std::vector<Path> out;
    out.reserve(current.size());
    for (auto& p : current) {
        if (source && *source != p.end) continue;
        if (p.edges.empty()) {
            out.emplace_back(g, p.start);
        } else {
            out.emplace_back(g, std::move(p.edges));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Path> extensions(const KGraph& g, const Path& mu, const Degree& p) {
    std::vector<Path> out;
    for (const auto& lambda : paths_of_degree(g, p, mu.source())) out.push_back(compose(g, mu, lambda));
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t count_paths(const KGraph& g, const Degree& n) {
    auto A = coordinate_matrices(g).power(n);
    Rational total = 0;
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) total += A(i, j);
    return total.get_num().get_ui();
}

Path compose(const KGraph& g, const Path& mu, const Path& nu) {
    if (mu.source() != nu.range()) {
        throw PreconditionError("cannot compose " + to_string(g, mu) + " with " + to_string(g, nu) +
                                ": s(mu) != r(nu)");
    }
    if (nu.is_vertex()) return mu;
    if (mu.is_vertex()) return nu;
    std::vector<int> w = mu.edges();
    w.insert(w.end(), nu.edges().begin(), nu.edges().end());
    normalize(g, w);
    return Path(g, std::move(w));
}

Path segment(const KGraph& g, const Path& lambda, const Degree& m, const Degree& n) {
    if (!m.le(n) || !n.le(lambda.degree())) {
        throw PreconditionError("segment bounds " + to_string(m) + ", " + to_string(n) + " outside 0.." +
                                to_string(lambda.degree()));
    }
    std::vector<int> target = color_word(m);
    auto mid = color_word(n - m);
    auto tail = color_word(lambda.degree() - n);
    target.insert(target.end(), mid.begin(), mid.end());
    target.insert(target.end(), tail.begin(), tail.end());

    std::vector<int> w = lambda.edges();
    reorder(g, w, target);

    std::size_t lo = static_cast<std::size_t>(m.total()), hi = static_cast<std::size_t>(n.total());
    if (lo == hi) {
        int v = lo < w.size() ? g.edge(w[lo]).range : lambda.source();
        return Path(g, v);
    }
    std::vector<int> piece(w.begin() + lo, w.begin() + hi);
    normalize(g, piece);
    return Path(g, std::move(piece));
}

std::vector<std::pair<Path, Path>> lambda_min(const KGraph& g, const Path& mu, const Path& nu) {
    std::vector<std::pair<Path, Path>> out;
    if (mu.degree() == nu.degree()) {
        if (mu == nu) out.emplace_back(Path(g, mu.source()), Path(g, mu.source()));
        return out;
    }
    Degree top = join(mu.degree(), nu.degree());
    std::map<Path, Path> right;
    for (const auto& beta : paths_of_degree(g, top - nu.degree(), nu.source())) {
        right.emplace(compose(g, nu, beta), beta);
    }
    for (const auto& alpha : paths_of_degree(g, top - mu.degree(), mu.source())) {
        auto it = right.find(compose(g, mu, alpha));
        if (it != right.end()) out.emplace_back(alpha, it->second);
    }
    return out;
}

bool has_common_extension(const KGraph& g, const Path& mu, const Path& nu) {
    return !lambda_min(g, mu, nu).empty();
}

MatrixFamily coordinate_matrices(const KGraph& g) {
    MatrixFamily fam;
    auto n = static_cast<std::size_t>(g.vertex_count());
    fam.matrices.assign(g.rank(), RationalMatrix(n, n));
    for (const auto& e : g.edges()) fam.matrices[e.color](e.range, e.source) += 1;
    return fam;
}

std::string to_string(const KGraph& g, const Path& p) {
    if (p.is_vertex()) return g.vertex_id(p.range());
    std::string s;
    for (int e : p.edges()) {
        if (!s.empty()) s += ".";
        s += g.edge(e).id;
    }
    return s;
}

Path parse_path(const KGraph& g, std::string_view literal) {
    std::string text(literal);
    if (auto v = g.vertex_index(text)) return Path(g, *v);
    std::vector<int> edges;
    std::size_t pos = 0;
    while (true) {
        std::size_t dot = text.find('.', pos);
        std::string id = text.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
        auto e = g.edge_index(id);
        if (!e) throw InvalidInput("unknown edge or vertex '" + id + "' in path literal '" + text + "'");
        edges.push_back(*e);
        if (dot == std::string::npos) break;
        pos = dot + 1;
    }
    try {
        return path_from_edges(g, edges);
    } catch (const PreconditionError& err) {
        throw InvalidInput(std::string("path literal '") + text + "': " + err.what());
    }
}

RationalMatrix MatrixFamily::power(const Degree& n) const {
    RationalMatrix out = RationalMatrix::identity(dimension());
    for (std::size_t i = 0; i < matrices.size(); ++i)
        for (int e = 0; e < n[i]; ++e) out = out * matrices[i];
    return out;
}

RationalMatrix MatrixFamily::power_sum(const std::vector<Degree>& F) const {
    RationalMatrix out(dimension(), dimension());
    for (const auto& n : F) out = out + power(n);
    return out;
}

}  // namespace kgraph
