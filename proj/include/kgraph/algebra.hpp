#pragma once

#include "kgraph/graph.hpp"
#include "kgraph/numeric.hpp"
#include "kgraph/path.hpp"
#include "kgraph/periodicity.hpp"

#include <compare>
#include <map>
#include <string>
#include <vector>

namespace kgraph {

/// s_mu s*_nu with s(mu) = s(nu).
struct SpanTerm {
    Path mu;
    Path nu;

    friend bool operator==(const SpanTerm&, const SpanTerm&) = default;
    friend std::strong_ordering operator<=>(const SpanTerm& a, const SpanTerm& b) {
        if (auto c = a.mu <=> b.mu; c != 0) return c;
        return a.nu <=> b.nu;
    }
};

/// A finite linear combination of span terms in C*(Lambda). Terms with zero
/// coefficient are dropped on insertion (exactly, or below 1e-14 when the
/// coefficient is a float).
class AlgebraElement {
public:
    explicit AlgebraElement(const KGraph& g) : graph_(&g) {}

    /// Throws PreconditionError unless s(mu) = s(nu).
    static AlgebraElement span(const KGraph& g, const Path& mu, const Path& nu, const Complex& c = Complex(1));
    /// s_lambda = s_lambda s*_{s(lambda)}.
    static AlgebraElement generator(const KGraph& g, const Path& lambda);
    static AlgebraElement projection(const KGraph& g, int v);
    /// The unit, sum of all vertex projections.
    static AlgebraElement identity(const KGraph& g);

    const KGraph& graph() const { return *graph_; }
    const std::map<SpanTerm, Complex>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_exact() const;

    void add(const SpanTerm& t, const Complex& c);

    friend AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b);
    friend AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b);
    friend AlgebraElement operator*(const Complex& c, const AlgebraElement& a);
    /// Same as multiply.
    friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);

private:
    void require_same_graph(const AlgebraElement& other) const;

    const KGraph* graph_;
    std::map<SpanTerm, Complex> terms_;
};

/// (s_mu s*_nu)(s_eta s*_zeta) = sum over (alpha, beta) in Lambda^min(nu, eta)
/// of s_{mu alpha} s*_{zeta beta}, extended bilinearly. Throws
/// PreconditionError for elements of different graphs.
AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement adjoint(const AlgebraElement& a);

/// Rewrites a with (CK4) so that, within each gauge degree d(mu) - d(nu),
/// every term has the same d(nu) (the join over that group). Two elements are
/// equal in C*(Lambda) exactly when the canonical form of their difference
/// is zero.
AlgebraElement canonical_form(const AlgebraElement& a);
bool equivalent(const AlgebraElement& a, const AlgebraElement& b, double tol = 1e-12);

/// U_g = sum over mu in Lambda^{g+} of s_mu s*_{theta(mu)}. Throws
/// PreconditionError when g is not periodic.
AlgebraElement unitary(PeriodicityOracle& per, const GroupElement& g);

std::string to_string(const AlgebraElement& a);

struct UnitaryIdentityReport {
    std::size_t elements = 0;  // periodic g in the box
    std::size_t identities = 0;
    std::vector<std::string> failures;
    bool passed() const { return failures.empty(); }
};

/// For all g, h in [-box, box]^k that are periodic: U_g U_h = U_{g+h},
/// U_g U_{-g} = 1, U_g s_e = s_e U_g for every edge e, and
/// s_mu s*_mu = s_theta(mu) s*_theta(mu) for mu in Lambda^{g+}.
UnitaryIdentityReport unitary_identities(PeriodicityOracle& per, int box);

}  // namespace kgraph
