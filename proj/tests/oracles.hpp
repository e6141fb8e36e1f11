#pragma once

// Reference computations that share no code with the library beyond its data
// types: a dense eigensolver, plain integer matrix powers, the E-word model of
// the pullback graph, and a brute-force cubical check.

#include "kgraph/graph.hpp"
#include "kgraph/matrix.hpp"
#include "kgraph/path.hpp"

#include <string>
#include <vector>

namespace oracle {

using IntMatrix = std::vector<std::vector<long>>;

kgraph::Matrix<double> to_double(const kgraph::RationalMatrix& a);

/// Largest eigenvalue modulus from Eigen's general eigensolver.
double spectral_radius(const kgraph::Matrix<double>& a);

/// Eigenvector for the eigenvalue of largest modulus, made positive and
/// normalized to 1-norm 1.
std::vector<double> perron_vector(const kgraph::Matrix<double>& a);

/// A_i(v, w) counted straight from the edge list.
IntMatrix edge_count_matrix(const kgraph::KGraph& g, int color);
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
IntMatrix identity(std::size_t n);
/// A_1^{n_1} ... A_k^{n_k} from edge counts.
IntMatrix power(const kgraph::KGraph& g, const kgraph::Degree& n);

/// In the pullback of a one-vertex graph the edges a<i> and b<i> both stand
/// for the E-edge i and squares preserve the E-word, so a path is its word.
std::vector<int> pullback_word(const kgraph::KGraph& g, const kgraph::Path& p);

/// Cubical condition checked edge triple by edge triple with both reorder
/// routes spelled out separately.
bool cubical(const kgraph::KGraph& g);

}  // namespace oracle

using oracle::IntMatrix;
