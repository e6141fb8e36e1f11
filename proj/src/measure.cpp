#include "kgraph/measure.hpp"

#include "kgraph/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace kgraph {

namespace {

void require_cap(const KGraph& g, const Degree& d, std::size_t cap) {
    std::size_t count = count_paths(g, d);
    if (count > cap) {
        throw BoundExceeded("measure computation needs " + std::to_string(count) + " cylinders of degree " +
                            to_string(d) + ", cap is " + std::to_string(cap));
    }
}

Real sum_of(const std::vector<Real>& terms) {
    RealSum s;
    for (const auto& t : terms) s.add(t);
    return s.result();
}

// All a in N^k with |a|_1 = t, lexicographically increasing.
std::vector<Degree> degrees_of_total(std::size_t k, int t) {
    std::vector<Degree> out;
    Degree cur(k);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
        if (i + 1 == k) {
            cur[i] = left;
            out.push_back(cur);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            cur[i] = v;
            rec(i + 1, left - v);
        }
    };
    rec(0, t);
    return out;
}

}  // namespace

CylinderMeasure::CylinderMeasure(const KGraph& g, const PerronData& pd) : graph_(&g), pd_(&pd) {
    if (pd.x.size() != static_cast<std::size_t>(g.vertex_count()) || pd.rho.size() != static_cast<std::size_t>(g.rank())) {
        throw PreconditionError("Perron data does not belong to this graph");
    }
}

Real CylinderMeasure::scale(const Degree& n) const {
    std::vector<int> neg(n.entries());
    for (int& e : neg) e = -e;
    return pd_->rho_power(neg);
}

Real CylinderMeasure::vertex_mass(int v) const { return pd_->x_at(static_cast<std::size_t>(v)); }

Real CylinderMeasure::mass(const Path& lambda) const { return scale(lambda.degree()) * vertex_mass(lambda.source()); }

ConsistencyReport consistency_check(const CylinderMeasure& M, const Degree& m, const Degree& n, double tol) {
    const KGraph& g = M.graph();
    if (!m.le(n)) throw PreconditionError("consistency check needs m <= n");
    ConsistencyReport rep;
    rep.exact = M.perron().is_exact();
    rep.passed = true;
    for (const auto& lambda : paths_of_degree(g, m)) {
        RealSum s;
        for (const auto& ext : extensions(g, lambda, n - m)) s.add(M.mass(ext));
        Real lhs = s.result(), rhs = M.mass(lambda);
        rep.max_deviation = std::max(rep.max_deviation, std::abs(lhs.value() - rhs.value()));
        if (!close(lhs, rhs, tol)) rep.passed = false;
        ++rep.cylinders;
    }
    RealSum total;
    for (const auto& lambda : paths_of_degree(g, n)) total.add(M.mass(lambda));
    rep.total = total.result();
    rep.max_deviation = std::max(rep.max_deviation, std::abs(rep.total.value() - 1.0));
    if (!close(rep.total, Real(1), tol)) rep.passed = false;
    return rep;
}

Real periodicity_mass(const CylinderMeasure& M, const Degree& m, const Degree& n, int L, std::size_t cap) {
    const KGraph& g = M.graph();
    g.require_strongly_connected();
    if (L < 0) throw PreconditionError("level must be non-negative");
    Degree top = join(m, n) + Degree::ones(g.rank(), L);
    require_cap(g, top, cap);
    std::vector<Real> kept;
    for (const auto& xi : paths_of_degree(g, top)) {
        bool agree = true;
        for (int c = 0; c < g.rank() && agree; ++c) {
            for (int l = 1; l <= L && agree; ++l) {
                Degree step = l * Degree::unit(g.rank(), c);
                agree = segment(g, xi, m, m + step) == segment(g, xi, n, n + step);
            }
        }
        if (agree) kept.push_back(M.mass(xi));
    }
    return sum_of(kept);
}

bool witness_separates(const KGraph& g, const DecayWitness& w) {
    Degree m = w.g.positive_part(), n = w.g.negative_part();
    for (int v = 0; v < g.vertex_count(); ++v) {
        const Path& tail = w.tails.at(v);
        for (const auto& mu : paths_of_degree(g, m, std::nullopt, v)) {
            for (const auto& nu : paths_of_degree(g, n, std::nullopt, v)) {
                if (has_common_extension(g, compose(g, mu, tail), compose(g, nu, tail))) return false;
            }
        }
    }
    return true;
}

DecayWitness find_decay_witness(const CylinderMeasure& M, const GroupElement& gel, int a_max, std::size_t cap) {
    const KGraph& g = M.graph();
    Degree m = gel.positive_part(), n = gel.negative_part();
    if (check_pair(g, m, n, cap)) {
        throw PreconditionError("no decay witness exists for " + to_string(gel) + ": it is in Per");
    }
    std::size_t k = static_cast<std::size_t>(g.rank());
    for (int t = 1; t <= a_max; ++t) {
        for (const auto& a : degrees_of_total(k, t)) {
            require_cap(g, a, cap);
            DecayWitness w{gel, a, {}, Real(0), Real(0)};
            bool all = true;
            for (int v = 0; v < g.vertex_count() && all; ++v) {
                auto mus = paths_of_degree(g, m, std::nullopt, v);
                auto nus = paths_of_degree(g, n, std::nullopt, v);
                bool found = false;
                for (const auto& tail : paths_of_degree(g, a, v)) {
                    bool separates = true;
                    for (const auto& mu : mus) {
                        auto mt = compose(g, mu, tail);
                        for (const auto& nu : nus) {
                            if (has_common_extension(g, mt, compose(g, nu, tail))) {
                                separates = false;
                                break;
                            }
                        }
                        if (!separates) break;
                    }
                    if (separates) {
                        w.tails.push_back(tail);
                        found = true;
                        break;
                    }
                }
                all = found;
            }
            if (!all) continue;
            bool first = true;
            for (int v = 0; v < g.vertex_count(); ++v) {
                Real ratio = Real(1) - M.mass(w.tails[v]) / M.vertex_mass(v);
                if (first || ratio.value() > w.max_ratio.value()) w.max_ratio = ratio;
                first = false;
            }
            w.K = w.max_ratio + (Real(1) - w.max_ratio) / Real(2);
            return w;
        }
    }
    throw BoundExceeded("no decay witness for " + to_string(gel) + " with |a|_1 <= " + std::to_string(a_max));
}

DecayReport decay_check(const CylinderMeasure& M, const DecayWitness& w, const Path& mu, const Path& nu, int j_max,
                        std::size_t cap) {
    const KGraph& g = M.graph();
    if (mu.source() != nu.source()) throw PreconditionError("decay check needs s(mu) = s(nu)");
    if (!(GroupElement::difference(mu.degree(), nu.degree()) == w.g)) {
        throw PreconditionError("decay check needs d(mu) - d(nu) to equal the witness element");
    }
    DecayReport rep;
    rep.passed = true;
    Real base = M.mass(mu);
    for (int j = 0; j <= j_max; ++j) {
        Degree level = j * w.a;
        require_cap(g, level, cap);
        std::vector<Real> kept;
        for (const auto& lambda : paths_of_degree(g, level, mu.source())) {
            auto ml = compose(g, mu, lambda);
            if (has_common_extension(g, ml, compose(g, nu, lambda))) kept.push_back(M.mass(ml));
        }
        Real mj = sum_of(kept);
        Real bound = w.K.pow(j) * base;
        if (!leq(mj, bound, 1e-12)) rep.passed = false;
        rep.masses.push_back(mj);
        rep.bounds.push_back(bound);
    }
    return rep;
}

AgreementMass agreement_mass(const CylinderMeasure& M, PeriodicityOracle& per, const Path& mu, const Path& nu,
                             int levels, std::size_t cap) {
    const KGraph& g = M.graph();
    if (mu.source() != nu.source()) throw PreconditionError("agreement mass needs s(mu) = s(nu)");
    AgreementMass out;
    GroupElement diff = GroupElement::difference(mu.degree(), nu.degree());
    if (per.is_periodic(diff) && per.theta(mu, nu.degree()) == nu) {
        out.closed_form = M.mass(mu);
    } else {
        out.closed_form = M.perron().is_exact() ? Real(0) : Real::approximate(0.0);
    }
    for (int L = 0; L <= levels; ++L) {
        Degree level = Degree::ones(g.rank(), L);
        require_cap(g, level, cap);
        std::vector<Real> kept;
        for (const auto& eta : paths_of_degree(g, level, mu.source())) {
            auto me = compose(g, mu, eta);
            for (const auto& [alpha, beta] : lambda_min(g, me, compose(g, nu, eta))) {
                kept.push_back(M.mass(compose(g, me, alpha)));
            }
        }
        Real total = sum_of(kept);
        if (kept.empty() && !M.perron().is_exact()) total = Real::approximate(0.0);
        out.level_bounds.push_back(total);
    }
    return out;
}

}  // namespace kgraph
