#include "kgraph/periodicity.hpp"

#include "kgraph/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <set>

namespace kgraph {

namespace {

void require_cap(const KGraph& g, const Degree& d, std::size_t cap) {
    std::size_t count = count_paths(g, d);
    if (count > cap) {
        throw BoundExceeded("enumerating " + std::to_string(count) + " paths of degree " + to_string(d) +
                            " exceeds the cap of " + std::to_string(cap));
    }
}

// Canonical representative of {g, -g}: first nonzero entry positive.
bool is_canonical_sign(const GroupElement& g) {
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g[i] != 0) return g[i] > 0;
    }
    return false;
}

}  // namespace

bool check_pair(const KGraph& g, const Degree& m, const Degree& n, std::size_t cap) {
    g.require_strongly_connected();
    if (m.size() != static_cast<std::size_t>(g.rank()) || n.size() != m.size()) {
        throw PreconditionError("degree has wrong length");
    }
    if (m == n) return true;
    Degree top = join(m, n);
    for (int c = 0; c < g.rank(); ++c) {
        Degree e = Degree::unit(g.rank(), c);
        require_cap(g, top + e, cap);
        for (const auto& lambda : paths_of_degree(g, top + e)) {
            if (!(segment(g, lambda, m, m + e) == segment(g, lambda, n, n + e))) return false;
        }
    }
    return true;
}

Path theta_of(const KGraph& g, const Path& mu, const Degree& n, std::size_t choice) {
    auto alphas = paths_of_degree(g, n, std::nullopt, mu.range());
    if (alphas.empty()) throw ValidationError("vertex " + g.vertex_id(mu.range()) + " receives no path of degree " +
                                              to_string(n));
    const Path& alpha = alphas[choice % alphas.size()];
    const Degree& m = mu.degree();
    return segment(g, compose(g, alpha, mu), m, m + n);
}

const Path& ThetaMap::operator()(const Path& mu) const {
    auto it = table.find(mu);
    if (it == table.end()) throw PreconditionError("path is not in the domain of theta");
    return it->second;
}

bool ThetaMap::is_bijective() const {
    std::set<Path> image;
    for (const auto& [mu, nu] : table) {
        if (!(nu.degree() == n)) return false;
        image.insert(nu);
    }
    return image.size() == table.size();
}

bool ThetaMap::preserves_endpoints() const {
    return std::all_of(table.begin(), table.end(), [](const auto& kv) {
        return kv.first.range() == kv.second.range() && kv.first.source() == kv.second.source();
    });
}

ThetaMap theta(const KGraph& g, const Degree& m, const Degree& n, std::size_t choice, std::size_t cap) {
    if (!check_pair(g, m, n, cap)) {
        throw PreconditionError("theta needs a periodic pair, but " + to_string(GroupElement::difference(m, n)) +
                                " is not in Per");
    }
    ThetaMap out{m, n, {}};
    for (const auto& mu : paths_of_degree(g, m)) out.table.emplace(mu, theta_of(g, mu, n, choice));
    return out;
}

std::vector<GroupElement> group_from_elements(const std::vector<GroupElement>& elems, std::size_t k) {
    std::vector<std::vector<long long>> rows;
    for (const auto& e : elems) {
        if (e.size() != k) throw PreconditionError("group element has wrong length");
        if (!e.is_zero()) rows.emplace_back(e.entries().begin(), e.entries().end());
    }
    std::size_t pivot_row = 0;
    std::vector<std::size_t> pivot_cols;
    for (std::size_t c = 0; c < k && pivot_row < rows.size(); ++c) {
        // Euclid on column c among rows pivot_row..end.
        while (true) {
            std::size_t best = rows.size();
            for (std::size_t r = pivot_row; r < rows.size(); ++r) {
                if (rows[r][c] != 0 && (best == rows.size() || std::llabs(rows[r][c]) < std::llabs(rows[best][c]))) {
                    best = r;
                }
            }
            if (best == rows.size()) break;
            std::swap(rows[pivot_row], rows[best]);
            bool done = true;
            for (std::size_t r = pivot_row + 1; r < rows.size(); ++r) {
                long long q = rows[r][c] / rows[pivot_row][c];
                if (q != 0) {
                    for (std::size_t j = 0; j < k; ++j) rows[r][j] -= q * rows[pivot_row][j];
                }
                if (rows[r][c] != 0) done = false;
            }
            if (done) break;
        }
        if (rows[pivot_row][c] == 0) continue;
        if (rows[pivot_row][c] < 0) {
            for (auto& v : rows[pivot_row]) v = -v;
        }
        long long p = rows[pivot_row][c];
        for (std::size_t r = 0; r < pivot_row; ++r) {
            long long q = rows[r][c] / p;
            if (rows[r][c] - q * p < 0) --q;
            if (q != 0) {
                for (std::size_t j = 0; j < k; ++j) rows[r][j] -= q * rows[pivot_row][j];
            }
        }
        pivot_cols.push_back(c);
        ++pivot_row;
    }
    std::vector<GroupElement> basis;
    for (std::size_t r = 0; r < pivot_row; ++r) {
        std::vector<int> entries(rows[r].begin(), rows[r].end());
        basis.emplace_back(std::move(entries));
    }
    return basis;
}

bool in_lattice(const std::vector<GroupElement>& hnf_basis, const GroupElement& g) {
    std::vector<long long> rest(g.entries().begin(), g.entries().end());
    for (const auto& b : hnf_basis) {
        std::size_t c = 0;
        while (c < b.size() && b[c] == 0) ++c;
        for (std::size_t j = 0; j < c; ++j) {
            if (rest[j] != 0) return false;
        }
        if (rest[c] % b[c] != 0) return false;
        long long q = rest[c] / b[c];
        for (std::size_t j = 0; j < b.size(); ++j) rest[j] -= q * b[j];
    }
    return std::all_of(rest.begin(), rest.end(), [](long long v) { return v == 0; });
}

PeriodicityGroup periodicity_group(const KGraph& g, int bound, std::size_t cap) {
    g.require_strongly_connected();
    if (bound < 0) throw PreconditionError("search bound must be non-negative");
    auto fam = coordinate_matrices(g);
    std::size_t k = static_cast<std::size_t>(g.rank());

    PeriodicityGroup out;
    out.k = k;
    out.search_bound = bound;

    GroupElement cur(k);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == k) {
            if (!is_canonical_sign(cur)) return;
            Degree m = cur.positive_part(), n = cur.negative_part();
            if (!(fam.power(m) == fam.power(n))) return;
            if (check_pair(g, m, n, cap)) out.confirmed.push_back(cur);
            return;
        }
        for (int v = -bound; v <= bound; ++v) {
            cur[i] = v;
            rec(i + 1);
        }
    };
    rec(0);
    std::sort(out.confirmed.begin(), out.confirmed.end());
    out.basis = group_from_elements(out.confirmed, k);
    return out;
}

AperiodicityVerdict is_aperiodic(const KGraph& g, int bound, std::size_t cap) {
    return {periodicity_group(g, bound, cap).rank() > 0, bound};
}

PeriodicityOracle::PeriodicityOracle(const KGraph& g, PeriodicityGroup group, std::size_t cap)
    : graph_(&g), group_(std::move(group)), cap_(cap) {}

bool PeriodicityOracle::is_periodic(const GroupElement& g) {
    if (g.size() != group_.k) throw PreconditionError("group element has wrong length");
    if (group_.contains(g)) return true;
    if (group_.in_box(g)) return false;
    if (auto it = outside_box_.find(g); it != outside_box_.end()) return it->second;
    bool periodic;
    try {
        periodic = check_pair(*graph_, g.positive_part(), g.negative_part(), cap_);
    } catch (const BoundExceeded&) {
        throw UnknownPeriodicity("periodicity of " + to_string(g) + " lies outside the search box [-" +
                                 std::to_string(group_.search_bound) + "," + std::to_string(group_.search_bound) +
                                 "] and is too large to check directly");
    }
    outside_box_.emplace(g, periodic);
    return periodic;
}

const Path& PeriodicityOracle::theta(const Path& mu, const Degree& n) {
    auto key = std::make_pair(mu, n);
    auto it = theta_cache_.find(key);
    if (it == theta_cache_.end()) it = theta_cache_.emplace(key, theta_of(*graph_, mu, n)).first;
    return it->second;
}

}  // namespace kgraph
