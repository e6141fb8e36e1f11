#pragma once

#include "kgraph/degree.hpp"
#include "kgraph/graph.hpp"
#include "kgraph/path.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace kgraph {

inline constexpr std::size_t default_enumeration_cap = 1'000'000;

/// Decides sigma^m = sigma^n on all infinite paths by comparing, for every
/// color i and every lambda of degree (m v n) + e_i, the edge segments
/// lambda(m, m + e_i) and lambda(n, n + e_i). Throws ValidationError for
/// graphs that are not strongly connected and BoundExceeded when the number
/// of paths to inspect exceeds `cap`.
bool check_pair(const KGraph& g, const Degree& m, const Degree& n, std::size_t cap = default_enumeration_cap);

/// theta_{m,n}(mu) = (alpha mu)(m, m + n) for alpha in Lambda^n r(mu). The
/// `choice`-th alpha in canonical order is used (wrapping around), so callers
/// can confirm independence of the choice. No periodicity check is made.
Path theta_of(const KGraph& g, const Path& mu, const Degree& n, std::size_t choice = 0);

struct ThetaMap {
    Degree m;
    Degree n;
    std::map<Path, Path> table;

    const Path& operator()(const Path& mu) const;
    bool is_bijective() const;
    bool preserves_endpoints() const;
};

/// Throws PreconditionError unless check_pair(m, n) holds.
ThetaMap theta(const KGraph& g, const Degree& m, const Degree& n, std::size_t choice = 0,
               std::size_t cap = default_enumeration_cap);

/// Row-style Hermite normal form basis of the subgroup of Z^k generated by
/// `elems`: pivots positive and strictly increasing, entries above a pivot
/// reduced into [0, pivot).
std::vector<GroupElement> group_from_elements(const std::vector<GroupElement>& elems, std::size_t k);

/// Membership of g in the lattice spanned by an HNF basis.
bool in_lattice(const std::vector<GroupElement>& hnf_basis, const GroupElement& g);

struct PeriodicityGroup {
    std::size_t k = 0;
    std::vector<GroupElement> basis;
    int search_bound = 0;
    bool complete_up_to_bound = true;
    /// Every nonzero element of the box confirmed by check_pair, up to sign.
    std::vector<GroupElement> confirmed;

    std::size_t rank() const { return basis.size(); }
    bool contains(const GroupElement& g) const { return in_lattice(basis, g); }
    bool in_box(const GroupElement& g) const { return g.max_abs() <= search_bound; }
};

/// Searches [-bound, bound]^k up to sign. Candidates must first satisfy the
/// exact matrix identity A^{g+} = A^{g-} and are then confirmed by check_pair.
PeriodicityGroup periodicity_group(const KGraph& g, int bound = 4, std::size_t cap = default_enumeration_cap);

struct AperiodicityVerdict {
    bool periodic = false;
    int bound = 0;
};

AperiodicityVerdict is_aperiodic(const KGraph& g, int bound = 4, std::size_t cap = default_enumeration_cap);

/// Answers "is g in Per Lambda" for arbitrary g. Inside the search box the
/// detected group is authoritative; outside it, lattice members are periodic
/// and anything else is decided directly by check_pair when that fits under
/// the cap, otherwise UnknownPeriodicity is thrown. Caches theta values.
/// Not safe for concurrent use.
class PeriodicityOracle {
public:
    PeriodicityOracle(const KGraph& g, PeriodicityGroup group, std::size_t cap = default_enumeration_cap);

    const KGraph& graph() const { return *graph_; }
    const PeriodicityGroup& group() const { return group_; }

    bool is_periodic(const GroupElement& g);
    /// theta_{d(mu), n}(mu); requires d(mu) - n periodic (not rechecked).
    const Path& theta(const Path& mu, const Degree& n);

private:
    const KGraph* graph_;
    PeriodicityGroup group_;
    std::size_t cap_;
    std::map<GroupElement, bool> outside_box_;
    std::map<std::pair<Path, Degree>, Path> theta_cache_;
};

}  // namespace kgraph
