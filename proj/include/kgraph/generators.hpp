#pragma once

#include "kgraph/graph.hpp"

#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace kgraph {

/// Square data for one color pair (i, j), i < j, of a single-vertex graph with
/// n_i edges of color i and n_j of color j: entry a*n_j + b holds c*n_i + d,
/// meaning edge a of color i followed by edge b of color j equals edge c of
/// color j followed by edge d of color i. Must be a permutation.
using SquarePermutations = std::map<std::pair<int, int>, std::vector<int>>;

/// One vertex "v" with loop_counts[i] loops of color i+1. Loops are named
/// e1, e2, ... when k = 1 and a1.., b1.., c1.. by color otherwise. Color pairs
/// missing from `perms` get the flip squares x_a y_b = y_b x_a.
/// Throws PreconditionError on invalid permutation data.
KGraph make_single_vertex(int k, const std::vector<int>& loop_counts, const SquarePermutations& perms = {});

/// Cartesian product of a k1-graph and a k2-graph; vertex (v, w) is named
/// "v:w", edge e of E at w is "e:w" and edge f of F at v is "v:f".
KGraph make_product(const KGraph& E, const KGraph& F);

/// Pullback of a 1-graph along f(m, n) = m + n: edge i of E (in id order)
/// becomes blue a<i> and red b<i>, with squares a_i b_j = b_i a_j.
KGraph make_pullback(const KGraph& E);

/// A 1-graph from a vertex list and (id, range, source) edges.
KGraph make_directed_graph(const std::vector<std::string>& vertices,
                           const std::vector<std::tuple<std::string, std::string, std::string>>& edges);

namespace fixtures {
KGraph b2();            // one vertex, two loops
KGraph fib();           // vertex matrix [[1,1],[1,0]]
KGraph c2();            // directed 2-cycle
KGraph pullback_b2();   // make_pullback(b2())
KGraph product_b2_c2(); // make_product(b2(), c2())
}  // namespace fixtures

}  // namespace kgraph
