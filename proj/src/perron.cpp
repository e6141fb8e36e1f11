#include "kgraph/perron.hpp"

#include "kgraph/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace kgraph {

namespace {

void require_square_family(const MatrixFamily& fam) {
    if (fam.matrices.empty()) throw PreconditionError("empty matrix family");
    std::size_t n = fam.dimension();
    for (const auto& A : fam.matrices) {
        if (A.rows() != n || A.cols() != n) throw PreconditionError("matrix family has mismatched dimensions");
    }
}

// Enumerates the box {n : n <= N*(1,..,1)} in lexicographic order.
std::vector<Degree> box(std::size_t k, int N) {
    std::vector<Degree> out;
    Degree cur(k);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == k) {
            out.push_back(cur);
            return;
        }
        for (int v = 0; v <= N; ++v) {
            cur[i] = v;
            rec(i + 1);
        }
        cur[i] = 0;
    };
    rec(0);
    return out;
}

bool is_zero_matrix(const RationalMatrix& A) {
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j)
            if (A(i, j) != 0) return false;
    return true;
}

std::optional<std::vector<Rational>> recover_exact(const MatrixFamily& fam, const std::vector<double>& x,
                                                   long max_denominator, std::vector<Rational>& rho) {
    std::size_t n = x.size();
    std::vector<Rational> q(n);
    Rational total = 0;
    for (std::size_t v = 0; v < n; ++v) {
        q[v] = rationalize(x[v], max_denominator);
        if (sgn(q[v]) <= 0) return std::nullopt;
        total += q[v];
    }
    for (auto& c : q) c /= total;
    rho.clear();
    for (const auto& A : fam.matrices) {
        auto Ax = A.apply(q);
        Rational r = Ax[0] / q[0];
        for (std::size_t v = 0; v < n; ++v) {
            if (Ax[v] != r * q[v]) return std::nullopt;
        }
        rho.push_back(r);
    }
    return q;
}

}  // namespace

bool check_commuting(const MatrixFamily& fam) {
    require_square_family(fam);
    for (std::size_t i = 0; i < fam.rank(); ++i)
        for (std::size_t j = i + 1; j < fam.rank(); ++j)
            if (!(fam.matrices[i] * fam.matrices[j] == fam.matrices[j] * fam.matrices[i])) return false;
    return true;
}

bool check_commuting(const std::vector<Matrix<double>>& fam, double tol) {
    if (fam.empty()) throw PreconditionError("empty matrix family");
    std::size_t n = fam.front().rows();
    for (const auto& A : fam) {
        if (A.rows() != n || A.cols() != n) throw PreconditionError("matrix family has mismatched dimensions");
    }
    for (std::size_t i = 0; i < fam.size(); ++i) {
        for (std::size_t j = i + 1; j < fam.size(); ++j) {
            auto ab = fam[i] * fam[j];
            auto ba = fam[j] * fam[i];
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < n; ++c)
                    if (std::abs(ab(r, c) - ba(r, c)) > tol) return false;
        }
    }
    return true;
}

std::optional<PositiveSet> find_positive_F(const MatrixFamily& fam, int bound) {
    require_square_family(fam);
    for (int N = 0; N <= bound; ++N) {
        auto F = box(fam.rank(), N);
        auto sum = fam.power_sum(F);
        bool positive = true;
        for (std::size_t i = 0; i < sum.rows() && positive; ++i)
            for (std::size_t j = 0; j < sum.cols() && positive; ++j) positive = sgn(sum(i, j)) > 0;
        if (positive) return PositiveSet{N, std::move(F), std::move(sum)};
    }
    return std::nullopt;
}

Real PerronData::rho_at(std::size_t i) const {
    if (rho_exact) return Real((*rho_exact)[i]);
    return Real::approximate(rho[i]);
}

Real PerronData::x_at(std::size_t v) const {
    if (x_exact) return Real((*x_exact)[v]);
    return Real::approximate(x[v]);
}

Real PerronData::rho_power(const std::vector<int>& n) const {
    Real out(1);
    for (std::size_t i = 0; i < n.size(); ++i) {
        if (n[i] != 0) out *= rho_at(i).pow(n[i]);
    }
    return out;
}

PerronData perron_data(const MatrixFamily& fam, const PerronOptions& opts) {
    require_square_family(fam);
    for (const auto& A : fam.matrices) {
        if (is_zero_matrix(A)) throw ValidationError("matrix family contains a zero matrix");
    }
    if (!check_commuting(fam)) throw ValidationError("matrix family does not commute");

    std::size_t n = fam.dimension();
    auto positive = find_positive_F(fam, static_cast<int>(std::max<std::size_t>(n, 1)));
    if (!positive) throw ValidationError("matrix family is not irreducible");

    auto AF = positive->sum.cast<double>();
    std::vector<double> x = opts.start.empty() ? std::vector<double>(n, 1.0 / static_cast<double>(n)) : opts.start;
    if (x.size() != n) throw PreconditionError("start vector has wrong length");

    long iter = 0;
    for (;; ++iter) {
        if (iter >= opts.max_iterations) throw ConvergenceError("power iteration did not converge");
        auto y = AF.apply(x);
        double norm = 0;
        for (double v : y) norm += v;
        double diff = 0;
        for (std::size_t i = 0; i < n; ++i) {
            y[i] /= norm;
            diff = std::max(diff, std::abs(y[i] - x[i]));
        }
        x = std::move(y);
        if (diff < opts.tol) break;
    }

    PerronData pd;
    pd.x = x;
    pd.iterations = iter + 1;
    pd.tol = opts.tol;
    for (const auto& Ar : fam.matrices) {
        auto A = Ar.cast<double>();
        auto Ax = A.apply(x);
        double r = 0;
        for (double v : Ax) r += v;
        for (std::size_t s = 0; s < n; ++s) {
            if (std::abs(Ax[s] / x[s] - r) > 1e-8 * r) {
                throw ConvergenceError("Rayleigh ratios are not constant; input is not a valid commuting family");
            }
        }
        pd.rho.push_back(r);
    }

    std::vector<Rational> rho_q;
    if (auto xq = recover_exact(fam, x, opts.max_denominator, rho_q)) {
        pd.x_exact = std::move(*xq);
        pd.rho_exact = std::move(rho_q);
        for (std::size_t v = 0; v < n; ++v) pd.x[v] = to_double((*pd.x_exact)[v]);
        for (std::size_t i = 0; i < pd.rho.size(); ++i) pd.rho[i] = to_double((*pd.rho_exact)[i]);
    }
    pd.positive = std::move(*positive);
    return pd;
}

SubinvarianceReport verify_subinvariance(const MatrixFamily& fam, const PerronData& pd, const std::vector<double>& y,
                                         const std::vector<double>& lambda, double tol) {
    require_square_family(fam);
    std::size_t n = fam.dimension();
    if (y.size() != n || lambda.size() != fam.rank()) throw PreconditionError("shape mismatch in subinvariance check");

    SubinvarianceReport rep;
    rep.hypothesis_holds = true;
    for (std::size_t i = 0; i < fam.rank(); ++i) {
        auto Ay = fam.matrices[i].cast<double>().apply(y);
        for (std::size_t s = 0; s < n; ++s) {
            if (Ay[s] > lambda[i] * y[s] + tol) {
                rep.hypothesis_holds = false;
                rep.violations.push_back("(A_" + std::to_string(i + 1) + " y)_" + std::to_string(s) + " = " +
                                         std::to_string(Ay[s]) + " > " + std::to_string(lambda[i] * y[s]));
            }
        }
    }
    rep.y_positive = std::all_of(y.begin(), y.end(), [](double v) { return v > 0; });
    rep.lambda_dominates = true;
    bool lambda_is_rho = true;
    for (std::size_t i = 0; i < fam.rank(); ++i) {
        if (lambda[i] < pd.rho[i] - tol) rep.lambda_dominates = false;
        if (std::abs(lambda[i] - pd.rho[i]) > tol) lambda_is_rho = false;
    }
    double norm = 0;
    for (double v : y) norm += std::abs(v);
    if (rep.hypothesis_holds && lambda_is_rho && std::abs(norm - 1.0) <= tol) {
        bool same = true;
        for (std::size_t s = 0; s < n; ++s) same = same && std::abs(y[s] - pd.x[s]) <= tol;
        rep.equals_perron = same;
    }
    return rep;
}

bool PowerCheckReport::passed(double tol) const {
    return std::abs(oracle_power - predicted_power) <= tol * std::max(1.0, std::abs(predicted_power)) &&
           std::abs(oracle_sum - predicted_sum) <= tol * std::max(1.0, std::abs(predicted_sum));
}

PowerCheckReport spectral_radius_power_check(const MatrixFamily& fam, const PerronData& pd, const Degree& n,
                                             const SpectralRadiusOracle& oracle) {
    PowerCheckReport rep;
    rep.oracle_power = oracle(fam.power(n).cast<double>());
    rep.predicted_power = 1.0;
    for (std::size_t i = 0; i < fam.rank(); ++i) rep.predicted_power *= std::pow(pd.rho[i], n[i]);
    rep.oracle_sum = oracle(pd.positive.sum.cast<double>());
    rep.predicted_sum = 0.0;
    for (const auto& m : pd.positive.F) {
        double term = 1.0;
        for (std::size_t i = 0; i < fam.rank(); ++i) term *= std::pow(pd.rho[i], m[i]);
        rep.predicted_sum += term;
    }
    return rep;
}

}  // namespace kgraph
