#include "kgraph/generators.hpp"

#include "kgraph/errors.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace kgraph {

namespace {

std::string loop_name(int k, int color, int index) {
    std::string prefix = k == 1 ? "e" : std::string(1, static_cast<char>('a' + color));
    return prefix + std::to_string(index + 1);
}

}  // namespace

KGraph make_single_vertex(int k, const std::vector<int>& loop_counts, const SquarePermutations& perms) {
    if (k < 1 || k > 26) throw PreconditionError("single-vertex rank must be in 1..26");
    if (loop_counts.size() != static_cast<std::size_t>(k)) throw PreconditionError("need one loop count per color");
    GraphSpec spec;
    spec.k = k;
    spec.vertices = {"v"};
    for (int c = 0; c < k; ++c) {
        if (loop_counts[c] < 1) throw PreconditionError("every color needs at least one loop");
        for (int a = 0; a < loop_counts[c]; ++a) spec.edges.push_back({loop_name(k, c, a), c + 1, "v", "v"});
    }
    for (const auto& [pair, perm] : perms) {
        auto [i, j] = pair;
        if (i < 1 || j > k || i >= j) throw PreconditionError("permutation color pair must satisfy 1 <= i < j <= k");
    }
    for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) {
            int ni = loop_counts[i], nj = loop_counts[j];
            std::vector<int> perm;
            if (auto it = perms.find({i + 1, j + 1}); it != perms.end()) {
                perm = it->second;
                std::vector<int> sorted = perm;
                std::sort(sorted.begin(), sorted.end());
                bool ok = static_cast<int>(perm.size()) == ni * nj;
                for (int t = 0; ok && t < ni * nj; ++t) ok = sorted[t] == t;
                if (!ok) {
                    throw PreconditionError("square data for colors " + std::to_string(i + 1) + "," +
                                            std::to_string(j + 1) + " is not a permutation of 0.." +
                                            std::to_string(ni * nj - 1));
                }
            } else {
                for (int a = 0; a < ni; ++a)
                    for (int b = 0; b < nj; ++b) perm.push_back(b * ni + a);
            }
            for (int a = 0; a < ni; ++a) {
                for (int b = 0; b < nj; ++b) {
                    int image = perm[a * nj + b];
                    int c = image / ni, d = image % ni;
                    spec.squares.push_back({loop_name(k, i, a), loop_name(k, j, b), loop_name(k, j, c),
                                            loop_name(k, i, d)});
                }
            }
        }
    }
    return KGraph(std::move(spec));
}

KGraph make_product(const KGraph& E, const KGraph& F) {
    E.require_valid();
    F.require_valid();
    int k1 = E.rank(), k2 = F.rank();
    auto vname = [&](int v, int w) { return E.vertex_id(v) + ":" + F.vertex_id(w); };
    auto e_at = [&](int e, int w) { return E.edge(e).id + ":" + F.vertex_id(w); };
    auto f_at = [&](int v, int f) { return E.vertex_id(v) + ":" + F.edge(f).id; };

    GraphSpec spec;
    spec.k = k1 + k2;
    for (int v = 0; v < E.vertex_count(); ++v)
        for (int w = 0; w < F.vertex_count(); ++w) spec.vertices.push_back(vname(v, w));
    for (int e = 0; e < E.edge_count(); ++e) {
        const auto& ed = E.edge(e);
        for (int w = 0; w < F.vertex_count(); ++w)
            spec.edges.push_back({e_at(e, w), ed.color + 1, vname(ed.range, w), vname(ed.source, w)});
    }
    for (int f = 0; f < F.edge_count(); ++f) {
        const auto& fd = F.edge(f);
        for (int v = 0; v < E.vertex_count(); ++v)
            spec.edges.push_back({f_at(v, f), k1 + fd.color + 1, vname(v, fd.range), vname(v, fd.source)});
    }
    for (const auto& sq : E.spec().squares) {
        for (int w = 0; w < F.vertex_count(); ++w) {
            const auto& wn = F.vertex_id(w);
            spec.squares.push_back({sq.blue + ":" + wn, sq.red + ":" + wn, sq.red2 + ":" + wn, sq.blue2 + ":" + wn});
        }
    }
    for (const auto& sq : F.spec().squares) {
        for (int v = 0; v < E.vertex_count(); ++v) {
            const auto& vn = E.vertex_id(v);
            spec.squares.push_back({vn + ":" + sq.blue, vn + ":" + sq.red, vn + ":" + sq.red2, vn + ":" + sq.blue2});
        }
    }
    for (int e = 0; e < E.edge_count(); ++e) {
        const auto& ed = E.edge(e);
        for (int f = 0; f < F.edge_count(); ++f) {
            const auto& fd = F.edge(f);
            spec.squares.push_back({e_at(e, fd.range), f_at(ed.source, f), f_at(ed.range, f), e_at(e, fd.source)});
        }
    }
    return KGraph(std::move(spec));
}

KGraph make_pullback(const KGraph& E) {
    E.require_valid();
    if (E.rank() != 1) throw PreconditionError("pullback construction needs a 1-graph");
    GraphSpec spec;
    spec.k = 2;
    spec.vertices = E.vertex_ids();
    auto blue = [](int i) { return "a" + std::to_string(i + 1); };
    auto red = [](int i) { return "b" + std::to_string(i + 1); };
    for (int i = 0; i < E.edge_count(); ++i) {
        const auto& e = E.edge(i);
        spec.edges.push_back({blue(i), 1, E.vertex_id(e.range), E.vertex_id(e.source)});
        spec.edges.push_back({red(i), 2, E.vertex_id(e.range), E.vertex_id(e.source)});
    }
    for (int i = 0; i < E.edge_count(); ++i)
        for (int j = 0; j < E.edge_count(); ++j)
            if (E.edge(i).source == E.edge(j).range) spec.squares.push_back({blue(i), red(j), red(i), blue(j)});
    return KGraph(std::move(spec));
}

KGraph make_directed_graph(const std::vector<std::string>& vertices,
                           const std::vector<std::tuple<std::string, std::string, std::string>>& edges) {
    GraphSpec spec;
    spec.k = 1;
    spec.vertices = vertices;
    for (const auto& [id, r, s] : edges) spec.edges.push_back({id, 1, r, s});
    return KGraph(std::move(spec));
}

namespace fixtures {

KGraph b2() { return make_single_vertex(1, {2}); }

KGraph fib() { return make_directed_graph({"u", "w"}, {{"e1", "u", "u"}, {"e2", "u", "w"}, {"e3", "w", "u"}}); }

KGraph c2() { return make_directed_graph({"u", "w"}, {{"f1", "u", "w"}, {"f2", "w", "u"}}); }

KGraph pullback_b2() { return make_pullback(b2()); }

KGraph product_b2_c2() { return make_product(b2(), c2()); }

}  // namespace fixtures

}  // namespace kgraph
