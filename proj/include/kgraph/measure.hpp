#pragma once

#include "kgraph/graph.hpp"
#include "kgraph/numeric.hpp"
#include "kgraph/path.hpp"
#include "kgraph/perron.hpp"
#include "kgraph/periodicity.hpp"

#include <cstddef>
#include <vector>

namespace kgraph {

/// The quasi-invariant probability measure on infinite paths, given on
/// cylinders by M(Z(lambda)) = rho^{-d(lambda)} x_{s(lambda)}. Masses are
/// exact whenever the Perron data is.
class CylinderMeasure {
public:
    CylinderMeasure(const KGraph& g, const PerronData& pd);

    const KGraph& graph() const { return *graph_; }
    const PerronData& perron() const { return *pd_; }

    Real mass(const Path& lambda) const;
    /// M(Z(v)) = x_v.
    Real vertex_mass(int v) const;
    /// rho^{-n}.
    Real scale(const Degree& n) const;

private:
    const KGraph* graph_;
    const PerronData* pd_;
};

struct ConsistencyReport {
    bool passed = false;
    bool exact = false;
    std::size_t cylinders = 0;  // level-m cylinders checked
    Real total;              // sum of M(Z(lambda)) over Lambda^n
    double max_deviation = 0;
};

/// Checks that each cylinder of level m is the disjoint union of its
/// extensions to level n, and that level n has total mass 1.
ConsistencyReport consistency_check(const CylinderMeasure& M, const Degree& m, const Degree& n, double tol = 1e-10);

/// Mass of S_L, the union of Z(xi) over xi of degree (m v n) + L*1 with
/// xi(m, m + l e_i) = xi(n, n + l e_i) for all colors i and 1 <= l <= L.
Real periodicity_mass(const CylinderMeasure& M, const Degree& m, const Degree& n, int L,
                      std::size_t cap = default_enumeration_cap);

struct DecayWitness {
    GroupElement g;
    Degree a;
    std::vector<Path> tails;  // tails[v] in v Lambda^a
    Real max_ratio;           // max_v M(Z(v) \ Z(tails[v])) / M(Z(v))
    Real K;
};

/// Searches a in increasing |a|_1 up to a_max (then lexicographically) and,
/// per vertex, the least tail separating every mu in Lambda^{g+} v from every
/// nu in Lambda^{g-} v. K sits halfway between max_ratio and 1.
/// Throws PreconditionError if g is periodic, BoundExceeded if no witness
/// exists with |a|_1 <= a_max.
DecayWitness find_decay_witness(const CylinderMeasure& M, const GroupElement& g, int a_max,
                                std::size_t cap = default_enumeration_cap);

/// Whether the witness separates mu lambda_v from nu lambda_v for all
/// source-matched mu of degree g+ and nu of degree g-.
bool witness_separates(const KGraph& g, const DecayWitness& w);

struct DecayReport {
    std::vector<Real> masses;  // m_j, j = 0..j_max
    std::vector<Real> bounds;  // K^j M(Z(mu))
    bool passed = false;
};

DecayReport decay_check(const CylinderMeasure& M, const DecayWitness& w, const Path& mu, const Path& nu, int j_max,
                        std::size_t cap = default_enumeration_cap);

struct AgreementMass {
    Real closed_form;
    /// Level-L outer bounds for L = 0..levels.
    std::vector<Real> level_bounds;
};

/// Mass of {x : x = mu y = nu y} from the closed form, alongside the masses of
/// the outer approximations union over eta in s(mu) Lambda^{L*1} of
/// Z(mu eta) intersect Z(nu eta).
AgreementMass agreement_mass(const CylinderMeasure& M, PeriodicityOracle& per, const Path& mu, const Path& nu,
                             int levels, std::size_t cap = default_enumeration_cap);

}  // namespace kgraph
