#include "kgraph/cli.hpp"

#include "kgraph/errors.hpp"
#include "kgraph/generators.hpp"
#include "kgraph/json_io.hpp"
#include "kgraph/kms.hpp"
#include "kgraph/measure.hpp"
#include "kgraph/perron.hpp"
#include "kgraph/periodicity.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

namespace kgraph::cli {

namespace {

using nlohmann::json;

struct Settings {
    double tol = 1e-12;
    int bound = 4;
    std::size_t cap = default_enumeration_cap;
    long max_iterations = 1'000'000;
};

json real_json(const Real& r) {
    if (r.is_exact()) return to_string(r.exact());
    return r.value();
}

json number_json(const Real& r) {
    if (r.is_exact() && r.exact().get_den() == 1 && r.exact().get_num().fits_slong_p()) {
        return r.exact().get_num().get_si();
    }
    return r.value();
}

json complex_json(const Complex& c) {
    json j;
    j["exact"] = c.is_exact();
    if (c.is_exact()) {
        j["re"] = to_string(c.exact().re);
        j["im"] = to_string(c.exact().im);
        j["value"] = to_string(c.exact());
    } else {
        j["re"] = c.value().real();
        j["im"] = c.value().imag();
    }
    return j;
}

json group_json(const GroupElement& g) { return g.entries(); }

json basis_json(const std::vector<GroupElement>& basis) {
    json out = json::array();
    for (const auto& b : basis) out.push_back(group_json(b));
    return out;
}

std::string read_text(const std::string& name, std::istream& in) {
    std::ostringstream buf;
    if (name == "-") {
        buf << in.rdbuf();
        return buf.str();
    }
    std::ifstream file(name);
    if (!file) throw InvalidInput("cannot open graph file '" + name + "'");
    buf << file.rdbuf();
    return buf.str();
}

// Accepts a decimal, "ln<x>" or "ln(<x>)".
double parse_scalar(const std::string& text) {
    std::string body = text;
    bool log = false;
    if (body.rfind("ln", 0) == 0) {
        log = true;
        body = body.substr(2);
        if (!body.empty() && body.front() == '(' && body.back() == ')') body = body.substr(1, body.size() - 2);
    }
    double v;
    try {
        std::size_t used = 0;
        v = std::stod(body, &used);
        if (used != body.size()) throw InvalidInput("malformed number '" + text + "'");
    } catch (const std::logic_error&) {
        throw InvalidInput("malformed number '" + text + "'");
    }
    if (log) {
        if (v <= 0) throw InvalidInput("logarithm of a non-positive number in '" + text + "'");
        return std::log(v);
    }
    return v;
}

std::vector<double> parse_scalars(const std::string& text, std::size_t k) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (true) {
        std::size_t comma = text.find(',', pos);
        out.push_back(parse_scalar(text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos)));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.size() != k) throw InvalidInput("expected " + std::to_string(k) + " entries in '" + text + "'");
    return out;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (true) {
        std::size_t comma = text.find(',', pos);
        std::string tok = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(tok, &used));
            if (used != tok.size()) throw InvalidInput("malformed integer list '" + text + "'");
        } catch (const std::logic_error&) {
            throw InvalidInput("malformed integer list '" + text + "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

KGraph generate(const std::string& name, const std::string& loops, const std::vector<std::string>& perms) {
    if (name == "b2") return fixtures::b2();
    if (name == "fib") return fixtures::fib();
    if (name == "c2") return fixtures::c2();
    if (name == "pullback-b2") return fixtures::pullback_b2();
    if (name == "product-b2-c2") return fixtures::product_b2_c2();
    if (name == "single-vertex") {
        if (loops.empty()) throw InvalidInput("single-vertex needs --loops n1,...,nk");
        auto counts = parse_int_list(loops);
        SquarePermutations sp;
        for (const auto& p : perms) {
            std::size_t colon = p.find(':');
            if (colon == std::string::npos) throw InvalidInput("--perm expects i,j:p0,p1,...");
            auto pair = parse_int_list(p.substr(0, colon));
            if (pair.size() != 2) throw InvalidInput("--perm expects a color pair before ':'");
            sp[{pair[0], pair[1]}] = parse_int_list(p.substr(colon + 1));
        }
        try {
            return make_single_vertex(static_cast<int>(counts.size()), counts, sp);
        } catch (const PreconditionError& e) {
            throw InvalidInput(e.what());
        }
    }
    throw InvalidInput("unknown fixture '" + name +
                       "'; known: b2, fib, c2, pullback-b2, product-b2-c2, single-vertex");
}

// Everything an analysis needs, built lazily from one graph document.
class Session {
public:
    Session(KGraph g, const Settings& s) : graph_(std::move(g)), settings_(s) {}

    const KGraph& graph() const { return graph_; }

    const PerronData& perron() {
        if (!perron_) {
            graph_.require_strongly_connected();
            PerronOptions opts;
            opts.max_iterations = settings_.max_iterations;
            perron_ = perron_data(coordinate_matrices(graph_), opts);
        }
        return *perron_;
    }

    PeriodicityOracle& periodicity() {
        if (!oracle_) {
            graph_.require_strongly_connected();
            oracle_ = std::make_unique<PeriodicityOracle>(
                graph_, periodicity_group(graph_, settings_.bound, settings_.cap), settings_.cap);
        }
        return *oracle_;
    }

    CylinderMeasure measure() { return CylinderMeasure(graph_, perron()); }

    json provenance() const {
        return {{"graph_hash", graph_hash(graph_)},
                {"bound", settings_.bound},
                {"tol", settings_.tol},
                {"cap", settings_.cap}};
    }

private:
    KGraph graph_;
    Settings settings_;
    std::optional<PerronData> perron_;
    std::unique_ptr<PeriodicityOracle> oracle_;
};

json validation_json(const ValidationReport& r) {
    return {{"valid", r.valid()},
            {"squares_bijective", r.squares_bijective},
            {"cubical", r.cubical},
            {"cubical_checked", r.cubical_checked},
            {"colors_nonempty", r.colors_nonempty},
            {"strongly_connected", r.strongly_connected},
            {"no_sources", r.no_sources},
            {"problems", r.problems}};
}

json perron_json(const KGraph& g, const PerronData& pd) {
    json j;
    j["rho"] = json::array();
    for (std::size_t i = 0; i < pd.rho.size(); ++i) j["rho"].push_back(number_json(pd.rho_at(i)));
    if (pd.is_exact()) {
        j["rho_exact"] = json::array();
        for (const auto& r : *pd.rho_exact) j["rho_exact"].push_back(to_string(r));
    } else {
        j["rho_exact"] = nullptr;
    }
    j["x"] = json::object();
    for (int v = 0; v < g.vertex_count(); ++v) j["x"][g.vertex_id(v)] = real_json(pd.x_at(v));
    j["exact"] = pd.is_exact();
    j["F_bound"] = pd.positive.bound;
    j["iterations"] = pd.iterations;
    return j;
}

json periodicity_json(const PeriodicityGroup& pg) {
    return {{"basis", basis_json(pg.basis)},
            {"rank", pg.rank()},
            {"bound", pg.search_bound},
            {"aperiodic", pg.rank() == 0},
            {"complete_up_to_bound", pg.complete_up_to_bound}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Perron-Frobenius data, periodicity, path measure and KMS states of finite k-graphs", "kgraph"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "key=value file setting tol, bound, cap, max-iterations");

    Settings settings;
    app.add_option("--tol", settings.tol, "numeric tolerance for float comparisons");
    app.add_option("--bound", settings.bound, "periodicity search box [-B,B]^k")->check(CLI::NonNegativeNumber);
    app.add_option("--cap", settings.cap, "enumeration cap");
    app.add_option("--max-iterations", settings.max_iterations, "power iteration limit")->check(CLI::PositiveNumber);

    std::string graph_file;
    auto add_graph = [&](CLI::App* sub) { sub->add_option("graph", graph_file, "graph JSON file, or - for stdin")->required(); };

    auto* gen = app.add_subcommand("gen", "emit a fixture graph as JSON");
    std::string gen_name, gen_loops;
    std::vector<std::string> gen_perms;
    gen->add_option("name", gen_name, "b2, fib, c2, pullback-b2, product-b2-c2, single-vertex")->required();
    gen->add_option("--loops", gen_loops, "loop count per color for single-vertex, e.g. 2,3");
    gen->add_option("--perm", gen_perms, "square permutation i,j:p0,p1,... for single-vertex");

    auto* validate_cmd = app.add_subcommand("validate", "check the factorization property and connectivity");
    add_graph(validate_cmd);

    auto* info = app.add_subcommand("info", "Perron data and periodicity group");
    add_graph(info);

    auto* periodicity = app.add_subcommand("periodicity", "periodicity group up to the search bound");
    add_graph(periodicity);

    auto* measure = app.add_subcommand("measure", "masses of the path-space measure");
    measure->require_subcommand(1);
    std::string m_path, m_mu, m_nu, m_m, m_n, m_g;
    int m_level = 1, m_a_max = 6, m_j_max = 3;
    auto* m_cyl = measure->add_subcommand("cylinder", "M(Z(lambda))");
    add_graph(m_cyl);
    m_cyl->add_option("--path", m_path, "path literal")->required();
    auto* m_cons = measure->add_subcommand("consistency", "Kolmogorov consistency between levels m <= n");
    add_graph(m_cons);
    m_cons->add_option("--m", m_m)->required();
    m_cons->add_option("--n", m_n)->required();
    auto* m_per = measure->add_subcommand("periodicity", "outer bound on the mass where two shifts agree");
    add_graph(m_per);
    m_per->add_option("--m", m_m)->required();
    m_per->add_option("--n", m_n)->required();
    m_per->add_option("--level", m_level)->check(CLI::NonNegativeNumber);
    auto* m_agree = measure->add_subcommand("agreement", "mass of {x : x = mu y = nu y}");
    add_graph(m_agree);
    m_agree->add_option("--mu", m_mu)->required();
    m_agree->add_option("--nu", m_nu)->required();
    m_agree->add_option("--level", m_level)->check(CLI::NonNegativeNumber);
    auto* m_decay = measure->add_subcommand("decay", "separating-tail witness and geometric decay");
    add_graph(m_decay);
    m_decay->add_option("--g", m_g, "non-periodic group element")->required();
    m_decay->add_option("--a-max", m_a_max)->check(CLI::PositiveNumber);
    m_decay->add_option("--mu", m_mu);
    m_decay->add_option("--nu", m_nu);
    m_decay->add_option("--j-max", m_j_max)->check(CLI::NonNegativeNumber);

    auto* kms = app.add_subcommand("kms", "KMS states of the Cuntz-Krieger algebra");
    kms->require_subcommand(1);
    std::string k_state = "haar", k_mu, k_nu, k_degree;
    std::vector<std::string> k_states;
    bool k_ignore_theta = false, k_direct = false;
    auto* k_eval = kms->add_subcommand("eval", "phi(s_mu s*_nu)");
    add_graph(k_eval);
    k_eval->add_option("--state", k_state, "haar, z=t1,..,tk (turns) or mix=w:t1,..;w:...");
    k_eval->add_option("--mu", k_mu)->required();
    k_eval->add_option("--nu", k_nu)->required();
    auto* k_check = kms->add_subcommand("check", "exhaustive KMS condition up to a degree bound");
    add_graph(k_check);
    k_check->add_option("--max-degree", k_degree, "degree bound d1,...,dk")->required();
    k_check->add_option("--state", k_states, "state to check (repeatable; default haar)");
    k_check->add_flag("--ignore-theta", k_ignore_theta, "negative control: drop the theta condition");
    k_check->add_flag("--direct", k_direct, "evaluate products literally (slow)");
    auto* k_simplex = kms->add_subcommand("simplex", "shape of the KMS_1 simplex");
    add_graph(k_simplex);

    auto* phase = app.add_subcommand("phase", "extreme KMS_beta states of the Toeplitz algebra");
    add_graph(phase);
    std::string beta_text;
    phase->add_option("--beta", beta_text)->required();

    auto* toeplitz = app.add_subcommand("toeplitz", "existence of Toeplitz KMS_beta states for dynamics r");
    add_graph(toeplitz);
    std::string r_text;
    toeplitz->add_option("--beta", beta_text)->required();
    toeplitz->add_option("--r", r_text, "r1,...,rk; entries may be ln<x>")->required();

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_malformed;
    }

    auto emit = [&](const json& j) { out << j.dump(2) << "\n"; };

    try {
        if (gen->parsed()) {
            out << serialize_graph(generate(gen_name, gen_loops, gen_perms));
            return exit_ok;
        }

        Session session(parse_graph(read_text(graph_file, in)), settings);
        const KGraph& g = session.graph();
        std::size_t k = static_cast<std::size_t>(g.rank());

        if (validate_cmd->parsed()) {
            json j = validation_json(g.validation());
            j["provenance"] = session.provenance();
            emit(j);
            return g.validation().valid() ? exit_ok : exit_validation;
        }
        if (info->parsed()) {
            g.require_strongly_connected();
            json j = perron_json(g, session.perron());
            const auto& pg = session.periodicity().group();
            j["per_basis"] = basis_json(pg.basis);
            j["per_rank"] = pg.rank();
            j["aperiodic"] = pg.rank() == 0;
            j["k"] = g.rank();
            j["vertices"] = g.vertex_ids();
            j["edge_count"] = g.edge_count();
            j["provenance"] = session.provenance();
            emit(j);
            return exit_ok;
        }
        if (periodicity->parsed()) {
            json j = periodicity_json(session.periodicity().group());
            j["provenance"] = session.provenance();
            emit(j);
            return exit_ok;
        }
        if (measure->parsed()) {
            auto M = session.measure();
            json j;
            if (m_cyl->parsed()) {
                auto lambda = parse_path(g, m_path);
                j = {{"path", to_string(g, lambda)}, {"mass", real_json(M.mass(lambda))},
                     {"exact", M.mass(lambda).is_exact()}};
            } else if (m_cons->parsed()) {
                auto rep = consistency_check(M, parse_degree(m_m, k), parse_degree(m_n, k), settings.tol);
                j = {{"passed", rep.passed}, {"exact", rep.exact}, {"cylinders", rep.cylinders},
                     {"total", real_json(rep.total)}, {"max_deviation", rep.max_deviation}};
            } else if (m_per->parsed()) {
                Real mass = periodicity_mass(M, parse_degree(m_m, k), parse_degree(m_n, k), m_level, settings.cap);
                j = {{"level", m_level}, {"mass", real_json(mass)}, {"exact", mass.is_exact()}};
            } else if (m_agree->parsed()) {
                auto am = agreement_mass(M, session.periodicity(), parse_path(g, m_mu), parse_path(g, m_nu), m_level,
                                         settings.cap);
                j["closed_form"] = real_json(am.closed_form);
                j["level_bounds"] = json::array();
                for (const auto& b : am.level_bounds) j["level_bounds"].push_back(real_json(b));
            } else if (m_decay->parsed()) {
                auto w = find_decay_witness(M, parse_group_element(m_g, k), m_a_max, settings.cap);
                j["g"] = group_json(w.g);
                j["a"] = w.a.entries();
                j["tails"] = json::object();
                for (int v = 0; v < g.vertex_count(); ++v) j["tails"][g.vertex_id(v)] = to_string(g, w.tails[v]);
                j["K"] = real_json(w.K);
                if (!m_mu.empty() || !m_nu.empty()) {
                    if (m_mu.empty() || m_nu.empty()) throw InvalidInput("decay check needs both --mu and --nu");
                    auto rep = decay_check(M, w, parse_path(g, m_mu), parse_path(g, m_nu), m_j_max, settings.cap);
                    j["passed"] = rep.passed;
                    j["masses"] = json::array();
                    j["bounds"] = json::array();
                    for (std::size_t i = 0; i < rep.masses.size(); ++i) {
                        j["masses"].push_back(real_json(rep.masses[i]));
                        j["bounds"].push_back(real_json(rep.bounds[i]));
                    }
                }
            }
            j["provenance"] = session.provenance();
            emit(j);
            return exit_ok;
        }
        if (kms->parsed()) {
            KmsContext ctx(g, session.perron(), session.periodicity());
            json j;
            int code = exit_ok;
            if (k_eval->parsed()) {
                auto state = parse_state(k_state, k);
                auto mu = parse_path(g, k_mu), nu = parse_path(g, k_nu);
                j = {{"state", state.describe()}, {"mu", to_string(g, mu)}, {"nu", to_string(g, nu)},
                     {"value", complex_json(ctx.phi_eval(state, mu, nu))}};
            } else if (k_check->parsed()) {
                std::vector<StateSpec> states;
                if (k_states.empty()) k_states.push_back("haar");
                for (const auto& s : k_states) {
                    states.push_back(parse_state(s, k));
                    states.back().ignore_theta = k_ignore_theta;
                }
                KmsOptions opts;
                opts.tol = settings.tol;
                opts.direct = k_direct;
                auto rep = kms_check(ctx, states, parse_degree(k_degree, k), opts);
                j = {{"passed", rep.passed()}, {"exact", rep.exact}, {"paths", rep.paths}, {"pairs", rep.pairs},
                     {"quadruples", rep.quadruples}};
                j["states"] = json::array();
                for (const auto& s : rep.states) {
                    j["states"].push_back({{"state", s.state}, {"failures", s.failures},
                                           {"ck_bound_violations", s.ck_bound_violations},
                                           {"first_failure", s.first_failure}, {"passed", s.passed()}});
                }
                if (!rep.passed()) code = exit_validation;
            } else if (k_simplex->parsed()) {
                auto d = simplex_descriptor(session.periodicity().group());
                j = {{"rank", d.rank}, {"unique", d.unique}, {"extreme_points", d.parameterization},
                     {"bound", d.bound}};
            }
            j["provenance"] = session.provenance();
            emit(j);
            return code;
        }
        if (phase->parsed()) {
            double beta = parse_scalar(beta_text);
            auto res = phase_diagram(g, session.perron(), session.periodicity().group(), beta, settings.tol);
            json j;
            j["beta"] = beta;
            j["applicable"] = res.applicable;
            if (res.applicable && !res.infinite) {
                j["extreme_points"] = res.count;
            } else {
                j["extreme_points"] = res.token();
            }
            if (!res.reason.empty()) j["reason"] = res.reason;
            j["provenance"] = session.provenance();
            emit(j);
            return exit_ok;
        }
        if (toeplitz->parsed()) {
            double beta = parse_scalar(beta_text);
            auto v = toeplitz_kms_exists(session.perron(), beta, parse_scalars(r_text, k), settings.tol);
            json j = {{"beta", beta}, {"exists", v.exists}, {"factors_through_ck", v.factors_through_ck}};
            j["provenance"] = session.provenance();
            emit(j);
            return exit_ok;
        }
    } catch (const ValidationError& e) {
        err << "validation failure: " << e.what() << "\n";
        return exit_validation;
    } catch (const BoundExceeded& e) {
        err << "bound exceeded: " << e.what() << "\n";
        return exit_bound;
    } catch (const ConvergenceError& e) {
        err << "no convergence: " << e.what() << "\n";
        return exit_bound;
    } catch (const Error& e) {
        err << "malformed input: " << e.what() << "\n";
        return exit_malformed;
    }
    return exit_malformed;
}

}  // namespace kgraph::cli
