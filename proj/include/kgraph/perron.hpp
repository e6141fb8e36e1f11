#pragma once

#include "kgraph/matrix.hpp"
#include "kgraph/numeric.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace kgraph {

/// Exact commutation A_i A_j = A_j A_i for all i < j. Throws PreconditionError
/// on dimension mismatch.
bool check_commuting(const MatrixFamily& fam);
bool check_commuting(const std::vector<Matrix<double>>& fam, double tol);

struct PositiveSet {
    int bound = 0;           // N
    std::vector<Degree> F;   // {n : n <= N*(1,..,1)}
    RationalMatrix sum;      // A_F
};

/// Smallest N <= bound with A_F strictly positive for F the box [0, N]^k.
std::optional<PositiveSet> find_positive_F(const MatrixFamily& fam, int bound);

struct PerronOptions {
    double tol = 1e-12;
    long max_iterations = 1'000'000;
    /// Largest denominator tried when recovering exact rational data.
    long max_denominator = 1'000'000;
    /// Starting vector; uniform when empty.
    std::vector<double> start;
};

/// Spectral-radius vector rho and unimodular common eigenvector x of an
/// irreducible commuting family. The exact fields are set when rationals
/// reconstructed from the floating-point result satisfy A_i x = rho_i x and
/// sum x = 1 exactly, which by uniqueness certifies them.
struct PerronData {
    std::vector<double> rho;
    std::vector<double> x;
    std::optional<std::vector<Rational>> rho_exact;
    std::optional<std::vector<Rational>> x_exact;
    PositiveSet positive;
    long iterations = 0;
    double tol = 1e-12;

    bool is_exact() const { return rho_exact.has_value(); }
    Real rho_at(std::size_t i) const;
    Real x_at(std::size_t v) const;
    /// rho^n as a real; n may have negative entries.
    Real rho_power(const std::vector<int>& n) const;
};

/// Throws ValidationError when the family is not irreducible, ConvergenceError
/// when power iteration stalls or the Rayleigh ratios are not constant.
PerronData perron_data(const MatrixFamily& fam, const PerronOptions& opts = {});

struct SubinvarianceReport {
    bool hypothesis_holds = false;     // A_i y <= lambda_i y for every i
    bool y_positive = false;           // conclusion (a), first half
    bool lambda_dominates = false;     // conclusion (a), lambda_i >= rho_i
    std::optional<bool> equals_perron; // conclusion (b), when lambda = rho and |y|_1 = 1
    std::vector<std::string> violations;

    /// The implication holds: either the hypothesis fails or every
    /// applicable conclusion is confirmed.
    bool consistent() const {
        return !hypothesis_holds || (y_positive && lambda_dominates && equals_perron.value_or(true));
    }
};

SubinvarianceReport verify_subinvariance(const MatrixFamily& fam, const PerronData& pd, const std::vector<double>& y,
                                         const std::vector<double>& lambda, double tol = 1e-9);

/// Spectral radius of an explicit matrix, supplied by an independent solver.
using SpectralRadiusOracle = std::function<double(const Matrix<double>&)>;

struct PowerCheckReport {
    double oracle_power = 0;     // rho(A^n) from the oracle
    double predicted_power = 0;  // prod rho_i^{n_i}
    double oracle_sum = 0;       // rho(A_F) from the oracle
    double predicted_sum = 0;    // sum over F of rho^n
    bool passed(double tol) const;
};

PowerCheckReport spectral_radius_power_check(const MatrixFamily& fam, const PerronData& pd, const Degree& n,
                                             const SpectralRadiusOracle& oracle);

}  // namespace kgraph
