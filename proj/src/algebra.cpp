#include "kgraph/algebra.hpp"

#include "kgraph/errors.hpp"

#include <functional>

namespace kgraph {

namespace {

constexpr double prune_tol = 1e-14;

GroupElement gauge_degree(const SpanTerm& t) { return GroupElement::difference(t.mu.degree(), t.nu.degree()); }

}  // namespace

AlgebraElement AlgebraElement::span(const KGraph& g, const Path& mu, const Path& nu, const Complex& c) {
    if (mu.source() != nu.source()) {
        throw PreconditionError("span term needs s(mu) = s(nu), got " + to_string(g, mu) + " and " + to_string(g, nu));
    }
    AlgebraElement a(g);
    a.add({mu, nu}, c);
    return a;
}

AlgebraElement AlgebraElement::generator(const KGraph& g, const Path& lambda) {
    return span(g, lambda, Path(g, lambda.source()));
}

AlgebraElement AlgebraElement::projection(const KGraph& g, int v) { return span(g, Path(g, v), Path(g, v)); }

AlgebraElement AlgebraElement::identity(const KGraph& g) {
    AlgebraElement a(g);
    for (int v = 0; v < g.vertex_count(); ++v) a.add({Path(g, v), Path(g, v)}, Complex(1));
    return a;
}

bool AlgebraElement::is_exact() const {
    for (const auto& [t, c] : terms_) {
        if (!c.is_exact()) return false;
    }
    return true;
}

void AlgebraElement::add(const SpanTerm& t, const Complex& c) {
    auto it = terms_.find(t);
    if (it == terms_.end()) {
        if (!c.is_zero(prune_tol)) terms_.emplace(t, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero(prune_tol)) terms_.erase(it);
}

void AlgebraElement::require_same_graph(const AlgebraElement& other) const {
    if (graph_ != other.graph_) throw PreconditionError("algebra elements belong to different graphs");
}

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
    a.require_same_graph(b);
    AlgebraElement out = a;
    for (const auto& [t, c] : b.terms_) out.add(t, c);
    return out;
}

AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
    a.require_same_graph(b);
    AlgebraElement out = a;
    for (const auto& [t, c] : b.terms_) out.add(t, -c);
    return out;
}

AlgebraElement operator*(const Complex& c, const AlgebraElement& a) {
    AlgebraElement out(*a.graph_);
    for (const auto& [t, coeff] : a.terms_) out.add(t, c * coeff);
    return out;
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) { return multiply(a, b); }

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) {
    if (&a.graph() != &b.graph()) throw PreconditionError("algebra elements belong to different graphs");
    const KGraph& g = a.graph();
    AlgebraElement out(g);
    for (const auto& [t1, c1] : a.terms()) {
        for (const auto& [t2, c2] : b.terms()) {
            auto pairs = lambda_min(g, t1.nu, t2.mu);
            if (pairs.empty()) continue;
            Complex c = c1 * c2;
            for (const auto& [alpha, beta] : pairs) out.add({compose(g, t1.mu, alpha), compose(g, t2.nu, beta)}, c);
        }
    }
    return out;
}

AlgebraElement adjoint(const AlgebraElement& a) {
    AlgebraElement out(a.graph());
    for (const auto& [t, c] : a.terms()) out.add({t.nu, t.mu}, c.conj());
    return out;
}

AlgebraElement canonical_form(const AlgebraElement& a) {
    const KGraph& g = a.graph();
    std::map<GroupElement, Degree> level;
    for (const auto& [t, c] : a.terms()) {
        auto gd = gauge_degree(t);
        auto it = level.find(gd);
        if (it == level.end()) {
            level.emplace(gd, t.nu.degree());
        } else {
            it->second = join(it->second, t.nu.degree());
        }
    }
    AlgebraElement out(g);
    for (const auto& [t, c] : a.terms()) {
        Degree p = level.at(gauge_degree(t)) - t.nu.degree();
        if (p.is_zero()) {
            out.add(t, c);
            continue;
        }
        for (const auto& lambda : paths_of_degree(g, p, t.mu.source())) {
            out.add({compose(g, t.mu, lambda), compose(g, t.nu, lambda)}, c);
        }
    }
    return out;
}

bool equivalent(const AlgebraElement& a, const AlgebraElement& b, double tol) {
    auto diff = canonical_form(a - b);
    for (const auto& [t, c] : diff.terms()) {
        if (!c.is_zero(tol)) return false;
    }
    return true;
}

AlgebraElement unitary(PeriodicityOracle& per, const GroupElement& g) {
    if (!per.is_periodic(g)) throw PreconditionError("U_g needs g in Per, but " + to_string(g) + " is not");
    const KGraph& graph = per.graph();
    Degree m = g.positive_part(), n = g.negative_part();
    AlgebraElement out(graph);
    for (const auto& mu : paths_of_degree(graph, m)) out.add({mu, per.theta(mu, n)}, Complex(1));
    return out;
}

std::string to_string(const AlgebraElement& a) {
    if (a.is_zero()) return "0";
    const KGraph& g = a.graph();
    std::string s;
    for (const auto& [t, c] : a.terms()) {
        if (!s.empty()) s += " + ";
        s += "(" + to_string(c) + ") s[" + to_string(g, t.mu) + "] s*[" + to_string(g, t.nu) + "]";
    }
    return s;
}

UnitaryIdentityReport unitary_identities(PeriodicityOracle& per, int box) {
    const KGraph& graph = per.graph();
    std::size_t k = static_cast<std::size_t>(graph.rank());
    UnitaryIdentityReport rep;

    std::vector<GroupElement> elems;
    GroupElement cur(k);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == k) {
            if (per.is_periodic(cur)) elems.push_back(cur);
            return;
        }
        for (int v = -box; v <= box; ++v) {
            cur[i] = v;
            rec(i + 1);
        }
    };
    rec(0);
    rep.elements = elems.size();

    auto expect = [&](bool ok, const std::string& what) {
        ++rep.identities;
        if (!ok) rep.failures.push_back(what);
    };

    std::map<GroupElement, AlgebraElement> U;
    auto get = [&](const GroupElement& g) -> const AlgebraElement& {
        auto it = U.find(g);
        if (it == U.end()) it = U.emplace(g, unitary(per, g)).first;
        return it->second;
    };

    auto one = AlgebraElement::identity(graph);
    expect(equivalent(get(GroupElement(k)), one), "U_0 = 1");
    for (const auto& g : elems) {
        const auto& Ug = get(g);
        expect(equivalent(Ug * get(-g), one), "U_g U_-g = 1 for g = " + to_string(g));
        for (const auto& h : elems) {
            expect(equivalent(Ug * get(h), get(g + h)),
                   "U_g U_h = U_{g+h} for g = " + to_string(g) + ", h = " + to_string(h));
        }
        for (int e = 0; e < graph.edge_count(); ++e) {
            auto se = AlgebraElement::generator(graph, Path(graph, std::vector<int>{e}));
            expect(equivalent(Ug * se, se * Ug), "U_g s_e = s_e U_g for g = " + to_string(g) + ", e = " +
                                                     graph.edge(e).id);
        }
        Degree m = g.positive_part(), n = g.negative_part();
        for (const auto& mu : paths_of_degree(graph, m)) {
            const Path& th = per.theta(mu, n);
            expect(equivalent(AlgebraElement::span(graph, mu, mu), AlgebraElement::span(graph, th, th)),
                   "s_mu s*_mu = s_theta(mu) s*_theta(mu) for mu = " + to_string(graph, mu));
        }
    }
    return rep;
}

}  // namespace kgraph
