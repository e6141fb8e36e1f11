#pragma once

#include "kgraph/degree.hpp"
#include "kgraph/graph.hpp"
#include "kgraph/matrix.hpp"

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace kgraph {

/// A morphism of the k-graph, stored in color-ordered normal form: all
/// color-1 edges, then color-2 edges, and so on. Edge i is followed by edge
/// i+1, so source(edge i) = range(edge i+1).
class Path {
public:
    Path(const KGraph& g, int vertex);
    /// `edges` must already be composable and in normal form.
    Path(const KGraph& g, std::vector<int> edges);

    const Degree& degree() const { return degree_; }
    int range() const { return range_; }
    int source() const { return source_; }
    const std::vector<int>& edges() const { return edges_; }
    bool is_vertex() const { return edges_.empty(); }

    friend bool operator==(const Path& a, const Path& b) {
        return a.edges_ == b.edges_ && a.range_ == b.range_;
    }
    /// Edge-id lexicographic, vertices first.
    friend std::strong_ordering operator<=>(const Path& a, const Path& b) {
        if (auto c = a.edges_ <=> b.edges_; c != 0) return c;
        return a.range_ <=> b.range_;
    }

private:
    std::vector<int> edges_;
    Degree degree_;
    int range_;
    int source_;
};

/// Builds the morphism represented by any composable edge sequence.
Path path_from_edges(const KGraph& g, std::span<const int> edges);

/// Lambda^n, optionally restricted to v Lambda^n w, in canonical order.
std::vector<Path> paths_of_degree(const KGraph& g, const Degree& n, std::optional<int> range = std::nullopt,
                                  std::optional<int> source = std::nullopt);

/// mu Lambda^p = { mu lambda : lambda in s(mu) Lambda^p }, canonical order.
std::vector<Path> extensions(const KGraph& g, const Path& mu, const Degree& p);

/// Number of paths in Lambda^n, from the coordinate matrices.
std::size_t count_paths(const KGraph& g, const Degree& n);

/// Throws PreconditionError unless s(mu) = r(nu).
Path compose(const KGraph& g, const Path& mu, const Path& nu);

/// lambda(m, n) for m <= n <= d(lambda).
Path segment(const KGraph& g, const Path& lambda, const Degree& m, const Degree& n);

/// Lambda^min(mu, nu) = {(alpha, beta) : mu alpha = nu beta of degree d(mu) v d(nu)}.
std::vector<std::pair<Path, Path>> lambda_min(const KGraph& g, const Path& mu, const Path& nu);
bool has_common_extension(const KGraph& g, const Path& mu, const Path& nu);

/// A_i(v, w) = |v Lambda^{e_i} w|, vertices in id order.
MatrixFamily coordinate_matrices(const KGraph& g);

/// Edge ids joined by '.', or the vertex id for a vertex.
std::string to_string(const KGraph& g, const Path& p);
/// Accepts any composable edge sequence "e.f.g" or a vertex id.
Path parse_path(const KGraph& g, std::string_view literal);

}  // namespace kgraph
