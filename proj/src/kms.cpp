#include "kgraph/kms.hpp"

#include "kgraph/errors.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <sstream>
#include <unordered_map>

namespace kgraph {

namespace {

bool quarter_turn(double t) {
    double q = 4.0 * t;
    return std::isfinite(q) && q == std::round(q);
}

double reduce_turn(double t) { return t - std::floor(t); }

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

std::string describe_character(const Character& z) {
    std::string s = "(";
    for (std::size_t i = 0; i < z.turns.size(); ++i) {
        if (i) s += ",";
        s += format_double(z.turns[i]);
    }
    return s + ")";
}

// Decimal literals such as "0.25" become exact rationals; anything else that
// parses as a double (e.g. scientific notation) stays approximate.
Real parse_real(const std::string& text) {
    if (text.empty()) throw InvalidInput("empty number");
    if (text.find('/') != std::string::npos) {
        Rational q;
        if (q.set_str(text, 10) != 0 || q.get_den() == 0) throw InvalidInput("malformed fraction '" + text + "'");
        q.canonicalize();
        return Real(q);
    }
    std::size_t pos = 0;
    bool negative = false;
    if (text[0] == '-' || text[0] == '+') {
        negative = text[0] == '-';
        pos = 1;
    }
    std::string digits;
    int frac_digits = 0;
    bool seen_dot = false, plain = pos < text.size();
    for (std::size_t i = pos; i < text.size() && plain; ++i) {
        char c = text[i];
        if (c >= '0' && c <= '9') {
            digits += c;
            if (seen_dot) ++frac_digits;
        } else if (c == '.' && !seen_dot) {
            seen_dot = true;
        } else {
            plain = false;
        }
    }
    if (plain && !digits.empty()) {
        mpz_class num(digits, 10), den = 1;
        for (int i = 0; i < frac_digits; ++i) den *= 10;
        Rational q(num, den);
        q.canonicalize();
        return Real(negative ? Rational(-q) : q);
    }
    try {
        std::size_t used = 0;
        double v = std::stod(text, &used);
        if (used != text.size()) throw InvalidInput("malformed number '" + text + "'");
        return Real::approximate(v);
    } catch (const std::logic_error&) {
        throw InvalidInput("malformed number '" + text + "'");
    }
}

std::vector<double> parse_turns(const std::string& text, std::size_t k) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (true) {
        std::size_t comma = text.find(',', pos);
        std::string tok = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        out.push_back(parse_real(tok).value());
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.size() != k) {
        throw InvalidInput("character needs " + std::to_string(k) + " angles, got '" + text + "'");
    }
    return out;
}

std::uint64_t key(std::size_t a, std::size_t b) { return (static_cast<std::uint64_t>(a) << 32) | b; }

Real zero_like(bool exact) { return exact ? Real(0) : Real::approximate(0.0); }

std::vector<Degree> degrees_below(const Degree& D) {
    std::vector<Degree> out;
    Degree cur(D.size());
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == D.size()) {
            out.push_back(cur);
            return;
        }
        for (int v = 0; v <= D[i]; ++v) {
            cur[i] = v;
            rec(i + 1);
        }
    };
    rec(0);
    return out;
}

// |c|^2 <= bound^2, exactly when possible.
bool modulus_at_most(const Complex& c, const Real& bound, double tol) {
    if (c.is_exact() && bound.is_exact()) {
        Rational lhs = c.exact().re * c.exact().re + c.exact().im * c.exact().im;
        return sgn(bound.exact()) >= 0 && lhs <= bound.exact() * bound.exact();
    }
    return std::abs(c.value()) <= bound.value() + tol;
}

}  // namespace

bool Character::is_exact() const {
    for (double t : turns) {
        if (!quarter_turn(t)) return false;
    }
    return true;
}

Complex Character::value(const GroupElement& g) const {
    if (g.size() != turns.size()) throw PreconditionError("character and group element differ in rank");
    if (is_exact()) {
        long long q = 0;
        for (std::size_t i = 0; i < turns.size(); ++i) q += std::llround(4.0 * turns[i]) * g[i];
        q = ((q % 4) + 4) % 4;
        static const GaussRational powers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        return Complex(powers[q]);
    }
    long double s = 0;
    for (std::size_t i = 0; i < turns.size(); ++i) s += static_cast<long double>(turns[i]) * g[i];
    s -= std::floor(s);
    return Complex::approximate(std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(s)));
}

Character operator*(const Character& a, const Character& b) {
    if (a.turns.size() != b.turns.size()) throw PreconditionError("characters differ in rank");
    Character c;
    for (std::size_t i = 0; i < a.turns.size(); ++i) c.turns.push_back(reduce_turn(a.turns[i] + b.turns[i]));
    return c;
}

Character Character::inverse() const {
    Character c;
    for (double t : turns) c.turns.push_back(reduce_turn(-t));
    return c;
}

StateSpec StateSpec::haar(std::size_t k) {
    StateSpec s;
    s.kind = Kind::haar;
    s.k = k;
    return s;
}

StateSpec StateSpec::character(Character z) {
    StateSpec s;
    s.kind = Kind::character;
    s.k = z.turns.size();
    s.components.emplace_back(Real(1), std::move(z));
    return s;
}

StateSpec StateSpec::mixture(std::vector<std::pair<Real, Character>> components) {
    if (components.empty()) throw PreconditionError("a mixture needs at least one character");
    StateSpec s;
    s.kind = Kind::mixture;
    s.k = components.front().second.turns.size();
    RealSum total;
    for (const auto& [w, z] : components) {
        if (z.turns.size() != s.k) throw PreconditionError("mixture characters differ in rank");
        if (w.value() <= 0) throw PreconditionError("mixture weights must be positive");
        total.add(w);
    }
    if (!close(total.result(), Real(1), 1e-12)) throw PreconditionError("mixture weights must sum to 1");
    s.components = std::move(components);
    return s;
}

Complex StateSpec::psi(const GroupElement& g) const {
    if (kind == Kind::haar) return Complex(g.is_zero() ? 1 : 0);
    Complex out(0);
    for (const auto& [w, z] : components) out += Complex(w) * z.value(g);
    return out;
}

bool StateSpec::is_exact() const {
    for (const auto& [w, z] : components) {
        if (!w.is_exact() || !z.is_exact()) return false;
    }
    return true;
}

std::string StateSpec::describe() const {
    std::string s;
    switch (kind) {
        case Kind::haar:
            s = "haar";
            break;
        case Kind::character:
            s = "z=" + describe_character(components.front().second);
            break;
        case Kind::mixture:
            s = "mix[";
            for (std::size_t i = 0; i < components.size(); ++i) {
                if (i) s += ";";
                s += to_string(components[i].first) + ":" + describe_character(components[i].second);
            }
            s += "]";
            break;
    }
    if (ignore_theta) s += " (theta ignored)";
    return s;
}

StateSpec parse_state(const std::string& literal, std::size_t k) {
    if (literal == "haar") return StateSpec::haar(k);
    if (literal.rfind("z=", 0) == 0) return StateSpec::character(Character{parse_turns(literal.substr(2), k)});
    if (literal.rfind("mix=", 0) == 0) {
        std::vector<std::pair<Real, Character>> comps;
        std::string body = literal.substr(4);
        std::size_t pos = 0;
        while (true) {
            std::size_t semi = body.find(';', pos);
            std::string part = body.substr(pos, semi == std::string::npos ? std::string::npos : semi - pos);
            std::size_t colon = part.find(':');
            if (colon == std::string::npos) throw InvalidInput("mixture component '" + part + "' needs weight:angles");
            comps.emplace_back(parse_real(part.substr(0, colon)), Character{parse_turns(part.substr(colon + 1), k)});
            if (semi == std::string::npos) break;
            pos = semi + 1;
        }
        try {
            return StateSpec::mixture(std::move(comps));
        } catch (const PreconditionError& err) {
            throw InvalidInput(err.what());
        }
    }
    throw InvalidInput("unknown state '" + literal + "'; expected haar, z=<turns> or mix=<w:turns;...>");
}

KmsContext::KmsContext(const KGraph& g, const PerronData& pd, PeriodicityOracle& per)
    : graph_(&g), pd_(&pd), per_(&per) {
    if (&per.graph() != &g) throw PreconditionError("periodicity data belongs to a different graph");
}

const Real& KmsContext::rho_power(const GroupElement& n) {
    auto it = rho_cache_.find(n);
    if (it == rho_cache_.end()) it = rho_cache_.emplace(n, pd_->rho_power(n.entries())).first;
    return it->second;
}

Real KmsContext::weight(const Path& mu, const Path& nu, bool ignore_theta) {
    bool exact = pd_->is_exact();
    if (mu.source() != nu.source()) return zero_like(exact);
    if (!per_->is_periodic(GroupElement::difference(mu.degree(), nu.degree()))) return zero_like(exact);
    if (!ignore_theta && !(per_->theta(mu, nu.degree()) == nu)) return zero_like(exact);
    return rho_power(-GroupElement::difference(mu.degree(), Degree(mu.degree().size()))) * pd_->x_at(mu.source());
}

Complex KmsContext::phi_eval(const StateSpec& state, const Path& mu, const Path& nu) {
    Real w = weight(mu, nu, state.ignore_theta);
    if (w.is_exact() && sgn(w.exact()) == 0) return Complex(w);
    return Complex(w) * state.psi(GroupElement::difference(mu.degree(), nu.degree()));
}

Complex KmsContext::phi_apply(const StateSpec& state, const AlgebraElement& a) {
    if (&a.graph() != graph_) throw PreconditionError("element belongs to a different graph");
    Complex out = Complex(zero_like(pd_->is_exact() && state.is_exact()));
    for (const auto& [t, c] : a.terms()) out += c * phi_eval(state, t.mu, t.nu);
    return out;
}

bool KmsReport::passed() const {
    for (const auto& s : states) {
        if (!s.passed()) return false;
    }
    return true;
}

KmsReport kms_check(KmsContext& ctx, const std::vector<StateSpec>& states, const Degree& D, const KmsOptions& opts) {
    const KGraph& g = ctx.graph();
    if (D.size() != static_cast<std::size_t>(g.rank())) throw PreconditionError("degree bound has wrong length");

    KmsReport rep;
    rep.exact = ctx.perron().is_exact();
    for (const auto& s : states) {
        if (s.k != D.size()) throw PreconditionError("state rank does not match the graph");
        rep.exact = rep.exact && s.is_exact();
        rep.states.push_back({s.describe(), 0, 0, {}});
    }

    // Interned paths: ids 0..base-1 are the paths of degree <= D.
    std::vector<Path> by_id;
    std::map<Path, std::size_t> ids;
    auto intern = [&](const Path& p) {
        auto [it, inserted] = ids.emplace(p, by_id.size());
        if (inserted) by_id.push_back(p);
        return it->second;
    };
    for (const auto& d : degrees_below(D))
        for (const auto& p : paths_of_degree(g, d)) intern(p);
    const std::size_t base = by_id.size();
    rep.paths = base;

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < base; ++a)
        for (std::size_t b = 0; b < base; ++b)
            if (by_id[a].source() == by_id[b].source()) pairs.emplace_back(a, b);
    rep.pairs = pairs.size();
    rep.quadruples = pairs.size() * pairs.size();
    if (rep.quadruples > opts.cap) {
        throw BoundExceeded("kms check needs " + std::to_string(rep.quadruples) + " quadruples, cap is " +
                            std::to_string(opts.cap));
    }

    auto describe_quad = [&](std::size_t mu, std::size_t nu, std::size_t eta, std::size_t zeta) {
        return "(" + to_string(g, by_id[mu]) + ", " + to_string(g, by_id[nu]) + ", " + to_string(g, by_id[eta]) +
               ", " + to_string(g, by_id[zeta]) + ")";
    };
    auto record = [&](std::size_t s, const std::string& what) {
        if (rep.states[s].failures++ == 0) rep.states[s].first_failure = what;
    };

    if (opts.direct) {
        for (std::size_t s = 0; s < states.size(); ++s) {
            for (const auto& [mu, nu] : pairs) {
                auto left = AlgebraElement::span(g, by_id[mu], by_id[nu]);
                GroupElement gd = GroupElement::difference(by_id[mu].degree(), by_id[nu].degree());
                const Real& c = ctx.rho_power(-gd);
                for (const auto& [eta, zeta] : pairs) {
                    auto right = AlgebraElement::span(g, by_id[eta], by_id[zeta]);
                    Complex lhs = ctx.phi_apply(states[s], left * right);
                    Complex rhs = Complex(c) * ctx.phi_apply(states[s], right * left);
                    if (!close(lhs, rhs, opts.tol)) record(s, describe_quad(mu, nu, eta, zeta));
                }
            }
        }
    } else {
        std::vector<std::vector<std::pair<std::size_t, std::size_t>>> lmin(base * base);
        for (std::size_t a = 0; a < base; ++a) {
            for (std::size_t b = 0; b < base; ++b) {
                for (const auto& [alpha, beta] : lambda_min(g, by_id[a], by_id[b])) {
                    lmin[a * base + b].emplace_back(intern(alpha), intern(beta));
                }
            }
        }
        std::unordered_map<std::uint64_t, std::size_t> composed;
        auto compose_id = [&](std::size_t a, std::size_t b) {
            auto k = key(a, b);
            auto it = composed.find(k);
            if (it != composed.end()) return it->second;
            std::size_t id = intern(compose(g, by_id[a], by_id[b]));
            composed.emplace(k, id);
            return id;
        };
        std::vector<GroupElement> gauge(pairs.size());
        std::vector<Real> scale(pairs.size());
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            gauge[i] = GroupElement::difference(by_id[pairs[i].first].degree(), by_id[pairs[i].second].degree());
            scale[i] = ctx.rho_power(-gauge[i]);
        }

        for (bool mode : {false, true}) {
            std::vector<std::size_t> active;
            for (std::size_t s = 0; s < states.size(); ++s)
                if (states[s].ignore_theta == mode) active.push_back(s);
            if (active.empty()) continue;

            std::vector<Real> weights;
            std::unordered_map<std::uint64_t, std::size_t> weight_index;
            auto weight_of = [&](std::size_t a, std::size_t b) -> const Real& {
                auto k = key(a, b);
                auto it = weight_index.find(k);
                if (it == weight_index.end()) {
                    weights.push_back(ctx.weight(by_id[a], by_id[b], mode));
                    it = weight_index.emplace(k, weights.size() - 1).first;
                }
                return weights[it->second];
            };
            // The terms of (s_mu s*_nu)(s_eta s*_zeta) all share one gauge
            // degree, so psi factors out of both sides.
            auto side = [&](std::size_t mu, std::size_t nu, std::size_t eta, std::size_t zeta, Real& out) {
                const auto& terms = lmin[nu * base + eta];
                bool any = false;
                for (const auto& [alpha, beta] : terms) {
                    const Real& w = weight_of(compose_id(mu, alpha), compose_id(zeta, beta));
                    if (w.is_exact() && sgn(w.exact()) == 0) continue;
                    out = any ? out + w : w;
                    any = true;
                }
                return any;
            };

            for (std::size_t i = 0; i < pairs.size(); ++i) {
                auto [mu, nu] = pairs[i];
                for (std::size_t j = 0; j < pairs.size(); ++j) {
                    auto [eta, zeta] = pairs[j];
                    Real lhs, rhs;
                    bool has_l = side(mu, nu, eta, zeta, lhs);
                    bool has_r = side(eta, zeta, mu, nu, rhs);
                    if (!has_l && !has_r) continue;
                    Real diff = zero_like(rep.exact);
                    if (has_l) diff = lhs;
                    if (has_r) diff = diff - scale[i] * rhs;
                    if (diff.is_exact() ? sgn(diff.exact()) == 0 : std::abs(diff.value()) <= opts.tol) continue;
                    GroupElement gd = gauge[i] + gauge[j];
                    for (std::size_t s : active) {
                        Complex err = Complex(diff) * states[s].psi(gd);
                        if (!err.is_zero(opts.tol)) record(s, describe_quad(mu, nu, eta, zeta));
                    }
                }
            }
        }
    }

    // Screen: |phi(s_mu s*_nu)| against the diagonal masses of separated tails.
    Degree ones = Degree::ones(D.size());
    for (const auto& [mu, nu] : pairs) {
        const Path& pm = by_id[mu];
        const Path& pn = by_id[nu];
        RealSum bound;
        bound.add(zero_like(ctx.perron().is_exact()));
        for (const auto& lambda : paths_of_degree(g, ones, pm.source())) {
            Path ml = compose(g, pm, lambda);
            if (has_common_extension(g, ml, compose(g, pn, lambda))) bound.add(ctx.weight(ml, ml));
        }
        Real b = bound.result();
        for (std::size_t s = 0; s < states.size(); ++s) {
            if (!modulus_at_most(ctx.phi_eval(states[s], pm, pn), b, opts.tol)) ++rep.states[s].ck_bound_violations;
        }
    }
    return rep;
}

SimplexDescriptor simplex_descriptor(const PeriodicityGroup& group) {
    SimplexDescriptor d;
    d.rank = group.rank();
    d.unique = d.rank == 0;
    d.bound = group.search_bound;
    d.parameterization = d.unique ? "single point (the state omega)"
                                  : "characters of Per, a torus of dimension " + std::to_string(d.rank);
    return d;
}

ToeplitzVerdict toeplitz_kms_exists(const PerronData& pd, double beta, const std::vector<double>& r, double tol) {
    if (r.size() != pd.rho.size()) throw PreconditionError("r must have one entry per color");
    ToeplitzVerdict v{true, true};
    for (std::size_t i = 0; i < r.size(); ++i) {
        double lhs = beta * r[i], rhs = std::log(pd.rho[i]);
        if (lhs < rhs - tol) v.exists = false;
        if (std::abs(lhs - rhs) > tol) v.factors_through_ck = false;
    }
    v.factors_through_ck = v.exists && v.factors_through_ck;
    return v;
}

std::string PhaseResult::token() const {
    if (!applicable) return "not applicable";
    if (infinite) return "infinite";
    return std::to_string(count);
}

PhaseResult phase_diagram(const KGraph& g, const PerronData& pd, const PeriodicityGroup& group, double beta,
                          double tol) {
    PhaseResult out;
    for (std::size_t i = 0; i < pd.rho.size(); ++i) {
        Real rho = pd.rho_at(i);
        bool above = rho.is_exact() ? rho.exact() > 1 : rho.value() > 1.0 + tol;
        if (!above) {
            out.reason = "hypothesis not satisfied: rho_" + std::to_string(i + 1) + " = " + to_string(rho) + " <= 1";
            return out;
        }
    }
    out.applicable = true;
    if (beta > 1.0 + tol) {
        out.count = static_cast<std::size_t>(g.vertex_count());
    } else if (beta >= 1.0 - tol) {
        out.infinite = group.rank() > 0;
        out.count = out.infinite ? 0 : 1;
    } else {
        out.count = 0;
    }
    return out;
}

StateSpec act_character(const Character& chi, const StateSpec& state) {
    StateSpec out = state;
    for (auto& [w, z] : out.components) z = chi * z;
    return out;
}

bool in_annihilator(const PeriodicityGroup& group, const Character& z, double tol) {
    for (const auto& b : group.basis) {
        if (!close(z.value(b), Complex(1), tol)) return false;
    }
    return true;
}

bool states_equal(const PeriodicityGroup& group, const StateSpec& a, const StateSpec& b, double tol) {
    using Kind = StateSpec::Kind;
    if (group.rank() == 0) return true;  // C*(Per) is the scalars
    if (a.kind == Kind::haar || b.kind == Kind::haar) return a.kind == b.kind;

    auto classes = [&](const StateSpec& s) {
        std::vector<std::pair<Character, RealSum>> out;
        for (const auto& [w, z] : s.components) {
            bool placed = false;
            for (auto& [rep, total] : out) {
                if (in_annihilator(group, z * rep.inverse(), tol)) {
                    total.add(w);
                    placed = true;
                    break;
                }
            }
            if (!placed) {
                RealSum total;
                total.add(w);
                out.emplace_back(z, total);
            }
        }
        return out;
    };
    auto ca = classes(a), cb = classes(b);
    if (ca.size() != cb.size()) return false;
    for (auto& [za, wa] : ca) {
        bool matched = false;
        for (auto& [zb, wb] : cb) {
            if (in_annihilator(group, za * zb.inverse(), tol)) {
                matched = close(wa.result(), wb.result(), tol);
                break;
            }
        }
        if (!matched) return false;
    }
    return true;
}

}  // namespace kgraph
