#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace kgraph {

/// Input description of a k-graph, mirroring the JSON graph document.
struct GraphSpec {
    struct EdgeSpec {
        std::string id;
        int color = 1;  // 1..k
        std::string range;
        std::string source;
    };
    /// blue . red = red2 . blue2, where blue has the lower color.
    struct SquareSpec {
        std::string blue;
        std::string red;
        std::string red2;
        std::string blue2;
    };

    int k = 1;
    std::vector<std::string> vertices;
    std::vector<EdgeSpec> edges;
    std::vector<SquareSpec> squares;
};

struct Edge {
    std::string id;
    int color = 0;  // 0-based; the JSON document and CLI use 1-based colors
    int range = 0;
    int source = 0;
};

struct ValidationReport {
    bool squares_bijective = false;
    bool cubical = false;
    bool cubical_checked = false;
    bool colors_nonempty = false;
    bool strongly_connected = false;
    bool no_sources = false;
    std::vector<std::string> problems;

    /// The factorization checks (a)-(c). Connectivity is reported separately.
    bool valid() const { return squares_bijective && cubical && colors_nonempty; }
};

/// A finite k-graph given by its colored skeleton and factorization squares.
/// Vertices and edges are indexed in id order; immutable after construction.
class KGraph {
public:
    /// Throws InvalidInput on duplicate or unknown ids and out-of-range colors.
    /// Factorization defects are not errors here; they show up in validation().
    explicit KGraph(GraphSpec spec);

    int rank() const { return k_; }
    int vertex_count() const { return static_cast<int>(vertices_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::string& vertex_id(int v) const { return vertices_.at(v); }
    const std::vector<std::string>& vertex_ids() const { return vertices_; }
    const Edge& edge(int e) const { return edges_.at(e); }
    const std::vector<Edge>& edges() const { return edges_; }
    std::optional<int> vertex_index(const std::string& id) const;
    std::optional<int> edge_index(const std::string& id) const;

    /// Edges of the given (0-based) color with range v, in id order.
    const std::vector<int>& edges_with_range(int v, int color) const;

    /// For composable edges first.second of different colors, the unique
    /// factorization x.y with color(x) = color(second), color(y) = color(first).
    std::optional<std::pair<int, int>> refactor(int first, int second) const;

    const ValidationReport& validation() const { return report_; }
    /// Throws ValidationError unless the factorization checks pass.
    void require_valid() const;
    /// Throws ValidationError unless valid and strongly connected.
    void require_strongly_connected() const;

    /// Canonical description: ids sorted, squares sorted by (blue, red).
    GraphSpec spec() const;

private:
    int k_;
    std::vector<std::string> vertices_;
    std::vector<Edge> edges_;
    std::map<std::string, int> vertex_lookup_;
    std::map<std::string, int> edge_lookup_;
    std::vector<std::vector<std::vector<int>>> by_range_;  // [vertex][color]
    std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> squares_;
    std::map<std::pair<int, int>, std::pair<int, int>> forward_;
    std::map<std::pair<int, int>, std::pair<int, int>> backward_;
    ValidationReport report_;

    friend ValidationReport compute_validation(const KGraph& g);
};

ValidationReport validate(const KGraph& g);

}  // namespace kgraph
