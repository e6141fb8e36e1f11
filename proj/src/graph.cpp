#include "kgraph/graph.hpp"

#include "kgraph/errors.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <tuple>

namespace kgraph {

KGraph::KGraph(GraphSpec spec) : k_(spec.k) {
    if (k_ < 1) throw InvalidInput("rank k must be at least 1");

    vertices_ = spec.vertices;
    std::sort(vertices_.begin(), vertices_.end());
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        if (!vertex_lookup_.emplace(vertices_[i], static_cast<int>(i)).second) {
            throw InvalidInput("duplicate vertex id '" + vertices_[i] + "'");
        }
    }
    if (vertices_.empty()) throw InvalidInput("graph has no vertices");

    std::sort(spec.edges.begin(), spec.edges.end(),
              [](const auto& a, const auto& b) { return a.id < b.id; });
    for (const auto& es : spec.edges) {
        if (vertex_lookup_.count(es.id)) throw InvalidInput("edge id '" + es.id + "' clashes with a vertex id");
        if (es.color < 1 || es.color > k_) {
            throw InvalidInput("edge '" + es.id + "' has color " + std::to_string(es.color) + " outside 1.." +
                               std::to_string(k_));
        }
        auto r = vertex_index(es.range);
        auto s = vertex_index(es.source);
        if (!r || !s) throw InvalidInput("edge '" + es.id + "' references an unknown vertex");
        int idx = static_cast<int>(edges_.size());
        if (!edge_lookup_.emplace(es.id, idx).second) throw InvalidInput("duplicate edge id '" + es.id + "'");
        edges_.push_back(Edge{es.id, es.color - 1, *r, *s});
    }

    by_range_.assign(vertices_.size(), std::vector<std::vector<int>>(k_));
    for (int e = 0; e < edge_count(); ++e) by_range_[edges_[e].range][edges_[e].color].push_back(e);

    for (const auto& sq : spec.squares) {
        auto b = edge_index(sq.blue), r = edge_index(sq.red), r2 = edge_index(sq.red2), b2 = edge_index(sq.blue2);
        if (!b || !r || !r2 || !b2) throw InvalidInput("square references an unknown edge");
        squares_.push_back({{*b, *r}, {*r2, *b2}});
    }
    std::sort(squares_.begin(), squares_.end());
    for (const auto& [key, image] : squares_) {
        forward_.emplace(key, image);
        backward_.emplace(image, key);
    }

    report_ = compute_validation(*this);
}

std::optional<int> KGraph::vertex_index(const std::string& id) const {
    auto it = vertex_lookup_.find(id);
    if (it == vertex_lookup_.end()) return std::nullopt;
    return it->second;
}

std::optional<int> KGraph::edge_index(const std::string& id) const {
    auto it = edge_lookup_.find(id);
    if (it == edge_lookup_.end()) return std::nullopt;
    return it->second;
}

const std::vector<int>& KGraph::edges_with_range(int v, int color) const { return by_range_.at(v).at(color); }

std::optional<std::pair<int, int>> KGraph::refactor(int first, int second) const {
    int c1 = edges_[first].color, c2 = edges_[second].color;
    if (c1 == c2) return std::nullopt;
    const auto& table = c1 < c2 ? forward_ : backward_;
    auto it = table.find({first, second});
    if (it == table.end()) return std::nullopt;
    return it->second;
}

void KGraph::require_valid() const {
    if (!report_.valid()) {
        std::string msg = "graph failed validation";
        if (!report_.problems.empty()) msg += ": " + report_.problems.front();
        throw ValidationError(msg);
    }
}

void KGraph::require_strongly_connected() const {
    require_valid();
    if (!report_.strongly_connected) throw ValidationError("graph is not strongly connected");
}

GraphSpec KGraph::spec() const {
    GraphSpec s;
    s.k = k_;
    s.vertices = vertices_;
    for (const auto& e : edges_) s.edges.push_back({e.id, e.color + 1, vertices_[e.range], vertices_[e.source]});
    for (const auto& [key, image] : squares_) {
        s.squares.push_back({edges_[key.first].id, edges_[key.second].id, edges_[image.first].id,
                             edges_[image.second].id});
    }
    return s;
}

ValidationReport compute_validation(const KGraph& g) {
    ValidationReport rep;
    const auto& E = g.edges_;
    auto name = [&](int e) { return E[e].id; };

    // (a) one table per color pair i<j, a bijection between (i,j)- and
    // (j,i)-composable pairs with matching endpoints.
    rep.squares_bijective = true;
    auto fail_a = [&](std::string msg) {
        rep.squares_bijective = false;
        rep.problems.push_back("squares: " + std::move(msg));
    };
    std::set<std::pair<int, int>> keys, images;
    for (const auto& [key, image] : g.squares_) {
        auto [b, r] = key;
        auto [r2, b2] = image;
        std::string label = name(b) + "." + name(r) + " = " + name(r2) + "." + name(b2);
        if (!(E[b].color < E[r].color)) fail_a("'" + label + "': blue must have lower color than red");
        if (E[r2].color != E[r].color || E[b2].color != E[b].color) fail_a("'" + label + "': colors do not match");
        if (E[b].source != E[r].range) fail_a("'" + label + "': blue.red not composable");
        if (E[r2].source != E[b2].range) fail_a("'" + label + "': red2.blue2 not composable");
        if (E[r2].range != E[b].range || E[b2].source != E[r].source) fail_a("'" + label + "': endpoints differ");
        if (!keys.insert(key).second) fail_a("pair " + name(b) + "." + name(r) + " factorized twice");
        if (!images.insert(image).second) fail_a("pair " + name(r2) + "." + name(b2) + " is the image of two squares");
    }
    for (int e = 0; e < g.edge_count(); ++e) {
        for (int f = 0; f < g.edge_count(); ++f) {
            if (E[e].source != E[f].range || E[e].color == E[f].color) continue;
            if (E[e].color < E[f].color) {
                if (!keys.count({e, f})) fail_a("pair " + name(e) + "." + name(f) + " has no square");
            } else if (!images.count({e, f})) {
                fail_a("pair " + name(e) + "." + name(f) + " is not the image of any square");
            }
        }
    }

    // (b) hexagon condition on every tricolored composable triple.
    rep.cubical = true;
    if (g.k_ >= 3 && rep.squares_bijective) {
        rep.cubical_checked = true;
        auto swap_at = [&](std::vector<int>& w, std::size_t i) {
            auto r = g.refactor(w[i], w[i + 1]);
            w[i] = r->first;
            w[i + 1] = r->second;
        };
        for (int e = 0; e < g.edge_count(); ++e) {
            for (int f = 0; f < g.edge_count(); ++f) {
                if (E[e].source != E[f].range || E[e].color >= E[f].color) continue;
                for (int h = 0; h < g.edge_count(); ++h) {
                    if (E[f].source != E[h].range || E[f].color >= E[h].color) continue;
                    std::vector<int> a{e, f, h}, b{e, f, h};
                    swap_at(a, 1), swap_at(a, 0), swap_at(a, 1);
                    swap_at(b, 0), swap_at(b, 1), swap_at(b, 0);
                    if (a != b) {
                        rep.cubical = false;
                        rep.problems.push_back("cubical: " + name(e) + "." + name(f) + "." + name(h) +
                                               " reorders to " + name(a[0]) + "." + name(a[1]) + "." + name(a[2]) +
                                               " and " + name(b[0]) + "." + name(b[1]) + "." + name(b[2]));
                    }
                }
            }
        }
    } else if (g.k_ >= 3) {
        rep.cubical = false;
        rep.problems.push_back("cubical: not checked because the square tables are defective");
    }

    // (c)
    rep.colors_nonempty = true;
    for (int c = 0; c < g.k_; ++c) {
        bool any = std::any_of(E.begin(), E.end(), [c](const Edge& e) { return e.color == c; });
        if (!any) {
            rep.colors_nonempty = false;
            rep.problems.push_back("color " + std::to_string(c + 1) + " has no edges");
        }
    }

    // (d) reachability in the skeleton: v Lambda w nonempty iff w reaches v
    // following edges from source to range.
    int nv = g.vertex_count();
    rep.no_sources = true;
    for (int v = 0; v < nv; ++v) {
        for (int c = 0; c < g.k_; ++c) {
            if (g.by_range_[v][c].empty()) rep.no_sources = false;
        }
    }
    std::vector<std::vector<int>> out(nv);
    for (const auto& e : E) out[e.range].push_back(e.source);
    rep.strongly_connected = true;
    for (int v = 0; v < nv && rep.strongly_connected; ++v) {
        std::vector<bool> seen(nv, false);
        std::deque<int> queue{v};
        seen[v] = true;
        int count = 1;
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            for (int w : out[u]) {
                if (!seen[w]) {
                    seen[w] = true;
                    ++count;
                    queue.push_back(w);
                }
            }
        }
        if (count != nv) rep.strongly_connected = false;
    }
    return rep;
}

ValidationReport validate(const KGraph& g) { return g.validation(); }

}  // namespace kgraph
