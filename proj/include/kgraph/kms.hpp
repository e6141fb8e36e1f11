#pragma once

#include "kgraph/algebra.hpp"
#include "kgraph/graph.hpp"
#include "kgraph/numeric.hpp"
#include "kgraph/path.hpp"
#include "kgraph/perron.hpp"
#include "kgraph/periodicity.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace kgraph {

/// z in T^k given by angles in turns, z_i = exp(2 pi i turns_i). Values are
/// exact (powers of i) when every angle is a multiple of a quarter turn.
struct Character {
    std::vector<double> turns;

    bool is_exact() const;
    /// z^g.
    Complex value(const GroupElement& g) const;
    friend Character operator*(const Character& a, const Character& b);
    Character inverse() const;
};

/// A state of C*(Per Lambda): the trace (haar, psi(g) = delta_{g,0}), a
/// character, or a finite convex combination of characters.
struct StateSpec {
    enum class Kind { haar, character, mixture };

    Kind kind = Kind::haar;
    std::size_t k = 0;
    std::vector<std::pair<Real, Character>> components;  // character: one component of weight 1
    /// Negative control only: evaluate without the theta(mu) = nu condition.
    bool ignore_theta = false;

    static StateSpec haar(std::size_t k);
    static StateSpec character(Character z);
    /// Throws PreconditionError unless the weights are positive and sum to 1.
    static StateSpec mixture(std::vector<std::pair<Real, Character>> components);

    Complex psi(const GroupElement& g) const;
    bool is_exact() const;
    std::string describe() const;
};

/// Parses "haar", "z=t1,...,tk" (angles in turns) or
/// "mix=w1:t1,..,tk;w2:..." with rational or decimal weights.
StateSpec parse_state(const std::string& literal, std::size_t k);

/// Evaluation of the KMS_1 states of C*(Lambda) for the preferred dynamics:
/// phi(s_mu s*_nu) = rho^{-d(mu)} x_{s(mu)} psi(d(mu) - d(nu)) when
/// d(mu) - d(nu) is periodic and theta(mu) = nu, and 0 otherwise.
/// Holds caches; not safe for concurrent use.
class KmsContext {
public:
    KmsContext(const KGraph& g, const PerronData& pd, PeriodicityOracle& per);

    const KGraph& graph() const { return *graph_; }
    const PerronData& perron() const { return *pd_; }
    PeriodicityOracle& periodicity() { return *per_; }

    /// rho^{-d(mu)} x_{s(mu)} when the term survives, else 0.
    Real weight(const Path& mu, const Path& nu, bool ignore_theta = false);
    Complex phi_eval(const StateSpec& state, const Path& mu, const Path& nu);
    Complex phi_apply(const StateSpec& state, const AlgebraElement& a);
    /// rho^{n} for n in Z^k, cached.
    const Real& rho_power(const GroupElement& n);

private:
    const KGraph* graph_;
    const PerronData* pd_;
    PeriodicityOracle* per_;
    std::map<GroupElement, Real> rho_cache_;
};

struct KmsStateReport {
    std::string state;
    std::size_t failures = 0;
    std::size_t ck_bound_violations = 0;
    std::string first_failure;
    bool passed() const { return failures == 0 && ck_bound_violations == 0; }
};

struct KmsReport {
    std::size_t paths = 0;
    std::size_t pairs = 0;
    std::size_t quadruples = 0;
    bool exact = false;
    std::vector<KmsStateReport> states;
    bool passed() const;
};

struct KmsOptions {
    double tol = 1e-12;
    std::size_t cap = 50'000'000;  // quadruples
    /// Evaluate both sides literally with multiply and phi_apply instead of
    /// the factored fast path. Slow; used to cross-check.
    bool direct = false;
};

/// For all (mu, nu, eta, zeta) with degrees <= D, s(mu) = s(nu) and
/// s(eta) = s(zeta), checks
///   phi(s_mu s*_nu s_eta s*_zeta) = rho^{-(d(mu) - d(nu))} phi(s_eta s*_zeta s_mu s*_nu)
/// for every state, plus the screen
///   |phi(s_mu s*_nu)| <= sum over lambda in s(mu) Lambda^{1..1} with
///   Lambda^min(mu lambda, nu lambda) nonempty of phi(s_{mu lambda} s*_{mu lambda}).
KmsReport kms_check(KmsContext& ctx, const std::vector<StateSpec>& states, const Degree& D,
                    const KmsOptions& opts = {});

struct SimplexDescriptor {
    std::size_t rank = 0;
    std::string parameterization;
    bool unique = false;
    int bound = 0;
};

SimplexDescriptor simplex_descriptor(const PeriodicityGroup& group);

struct ToeplitzVerdict {
    bool exists = false;
    bool factors_through_ck = false;
};

/// beta r_i >= ln rho_i for all i; factors when equality holds within tol.
ToeplitzVerdict toeplitz_kms_exists(const PerronData& pd, double beta, const std::vector<double>& r,
                                    double tol = 1e-12);

struct PhaseResult {
    bool applicable = false;
    std::string reason;
    bool infinite = false;
    std::size_t count = 0;

    /// "infinite", the count, or "not applicable".
    std::string token() const;
};

/// Number of extreme KMS_beta states of the Toeplitz algebra under the
/// preferred dynamics; needs every rho_i > 1.
PhaseResult phase_diagram(const KGraph& g, const PerronData& pd, const PeriodicityGroup& group, double beta,
                          double tol = 1e-12);

/// Pointwise product with chi; fixes haar.
StateSpec act_character(const Character& chi, const StateSpec& state);

/// Whether z w^-1 annihilates every basis element of the detected group.
bool in_annihilator(const PeriodicityGroup& group, const Character& z, double tol = 1e-12);

/// Equality of states of C*(Per Lambda). Characters are compared modulo the
/// annihilator of Per; mixtures by total weight per annihilator class.
bool states_equal(const PeriodicityGroup& group, const StateSpec& a, const StateSpec& b, double tol = 1e-12);

}  // namespace kgraph
