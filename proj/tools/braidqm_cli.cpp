#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "braidqm/braidqm.hpp"

using namespace braidqm;
using nlohmann::json;

namespace {

constexpr std::uint64_t fallback_seed = 20240601;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("BRAIDQM_SEED")) {
        try {
            std::size_t used = 0;
            const unsigned long long v = std::stoull(env, &used);
            if (used == std::string(env).size()) return v;
        } catch (const std::exception&) {
        }
        throw InvalidInput(std::string("BRAIDQM_SEED is not an unsigned integer: '") + env + "'");
    }
    return fallback_seed;
}

CompletionOrder parse_order(const std::string& s) {
    if (s == "asc") return CompletionOrder::ascending;
    if (s == "desc") return CompletionOrder::descending;
    throw InvalidInput("order must be asc or desc, got '" + s + "'");
}

QuasiMorphism make_phi(const std::string& name, int n, const std::string& theta, CompletionOrder order) {
    if (name == "lk") return lk_quasimorphism();
    if (name == "sign") return sign_hat(n, order);
    if (name == "omega") return omega_sign_hat(n, Angle(parse_rational(theta)), order);
    if (name == "s") return s_hat(n, order);
    if (name == "tau") return tau_hat(n, order);
    throw InvalidInput("unknown quasi-morphism '" + name + "' (lk, sign, omega, s, tau)");
}

MeasureSpec make_measure(const std::string& name, int n, const std::string& theta) {
    if (name == "lk" || name == "s") return lk_measure(n);
    if (name == "sign") return sign_measure(n);
    if (name == "omega") return omega_measure(n, Angle(parse_rational(theta)).theta());
    if (name == "tau") return tau_measure(n);
    throw InvalidInput("unknown measure '" + name + "' (lk, sign, omega, s, tau)");
}

json big_int(const boost::multiprecision::cpp_int& v) {
    if (abs(v) < boost::multiprecision::cpp_int(1) << 53) return v.convert_to<long long>();
    return v.str();
}

std::string fmt(double v) {
    std::ostringstream o;
    o << std::setprecision(17) << v;
    return o.str();
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

// Subcommands

struct InvariantArgs {
    std::string braid;
    int n = 0;
    std::string theta = "1/2";
    double pivot_tol = 1e-9;
};

void run_invariant(const InvariantArgs& a) {
    const BraidWord b = parse_braid(a.braid, a.n);
    const Angle theta(parse_rational(a.theta));
    const SeifertData sd = seifert_matrix(b);
    const SignatureResult raw = signature_symmetric(sd.symmetrized());
    const SignatureResult om = omega_signature(sd, theta, a.pivot_tol);
    const int comps = cycle_count(b);

    json out;
    out["braid"] = to_string(b);
    out["strands"] = b.strands();
    out["components"] = comps;
    out["kappa"] = kappa;
    out["signature"] = kappa * raw.signature;
    out["raw_signature"] = raw.signature;
    out["omega_signature"] = {{"theta", to_string(theta.theta())},
                              {"value", kappa * om.signature},
                              {"raw", om.signature},
                              {"nullity", om.nullity},
                              {"degenerate", om.degenerate},
                              {"exact", theta.is_half()},
                              {"pivot_tol", a.pivot_tol}};
    out["determinant"] = big_int(link_determinant(b));
    out["lk"] = lk(b);
    if (comps == 1) {
        const auto sb = s_bounds(b);
        const auto tb = tau_bounds(b);
        json s{{"lower", sb.lo}, {"upper", sb.hi}, {"exact", nullptr}};
        json t{{"lower", to_string(tb.lo)}, {"upper", to_string(tb.hi)}, {"exact", nullptr}};
        if (is_positive(b)) {
            s["exact"] = s_positive(b);
            t["exact"] = to_string(tau_positive(b));
        }
        out["s"] = s;
        out["tau"] = t;
    } else {
        out["s"] = nullptr;
        out["tau"] = nullptr;
    }
    emit(out);
}

struct HomogenizeArgs {
    std::string braid;
    int n = 0;
    std::string phi = "sign";
    std::string theta = "1/2";
    long p = 20;
    std::string order = "asc";
};

void run_homogenize(const HomogenizeArgs& a) {
    const BraidWord b = parse_braid(a.braid, a.n);
    const QuasiMorphism phi = make_phi(a.phi, b.strands(), a.theta, parse_order(a.order));
    const HomogenizationEstimate e = homogenize(phi, b, a.p);
    json out{{"braid", to_string(b)},
             {"strands", b.strands()},
             {"phi", phi.name},
             {"p", e.p_used},
             {"value", e.value},
             {"bracket", std::isfinite(e.bracket) ? json(e.bracket) : json(nullptr)},
             {"heuristic", e.heuristic},
             {"defect_bound", phi.defect_bound ? json(*phi.defect_bound) : json(nullptr)},
             {"kappa", kappa},
             {"order", a.order}};
    emit(out);
}

struct DefectArgs {
    std::string phi = "sign";
    int n = 3;
    std::string theta = "1/2";
    std::size_t trials = 500;
    std::size_t min_length = 1;
    std::size_t max_length = 12;
    bool positive = false;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    std::string order = "asc";
};

void run_defect(const DefectArgs& a) {
    if (a.n < 2) throw InvalidInput("defect needs n >= 2");
    if (a.min_length > a.max_length) throw InvalidInput("min-length exceeds max-length");
    const QuasiMorphism phi = make_phi(a.phi, a.n, a.theta, parse_order(a.order));
    const BraidSampler sampler{a.n, a.min_length, a.max_length, a.positive};
    const DefectReport r = defect_scan(phi, sampler, a.trials, a.seed, a.threads);
    json out{{"phi", phi.name},
             {"n", a.n},
             {"trials", r.trials},
             {"seed", r.seed},
             {"max_defect", r.max_defect},
             {"defect_bound", phi.defect_bound ? json(*phi.defect_bound) : json(nullptr)},
             {"within_bound", phi.defect_bound ? json(r.max_defect <= *phi.defect_bound) : json(nullptr)},
             {"worst_a", to_string(r.worst_a)},
             {"worst_b", to_string(r.worst_b)},
             {"kappa", kappa}};
    emit(out);
}

struct EtaTableArgs {
    std::optional<int> i;
    std::optional<std::string> theta;
    bool torus = false;
    int imax = 6;
    int den = 12;
};

void run_eta_table(const EtaTableArgs& a) {
    const auto value = [&](int i, const Rational& t) {
        return a.torus ? torus_omega_tilde(i, t) : eta_omega_tilde(i, t);
    };
    if (a.i && a.theta) {
        std::cout << to_string(value(*a.i, parse_rational(*a.theta))) << '\n';
        return;
    }
    if (a.den < 1) throw InvalidInput("den must be positive");
    std::vector<int> is;
    if (a.i) {
        is.push_back(*a.i);
    } else {
        for (int i = a.torus ? 1 : 2; i <= a.imax; ++i) is.push_back(i);
    }
    std::vector<Rational> thetas;
    if (a.theta) {
        thetas.push_back(parse_rational(*a.theta));
    } else {
        for (int k = 0; k <= a.den; ++k) thetas.emplace_back(k, a.den);
    }
    if (a.torus) {
        std::cout << "n,theta,torus_omega_tilde,cycle_omega_tilde\n";
        for (int i : is)
            for (const auto& t : thetas)
                std::cout << i << ',' << to_string(t) << ',' << to_string(torus_omega_tilde(i, t)) << ','
                          << to_string(cycle_omega_tilde(i, t)) << '\n';
    } else {
        std::cout << "i,theta,eta_omega_tilde,eta_sign_tilde\n";
        for (int i : is)
            for (const auto& t : thetas)
                std::cout << i << ',' << to_string(t) << ',' << to_string(eta_omega_tilde(i, t)) << ','
                          << eta_sign_tilde(i) << '\n';
    }
}

void run_basis(int n) {
    const Matrix<Rational> m = basis_matrix(n);
    json rows = json::array(), names = json::array(), cols = json::array(), diag = json::array();
    bool lower = true;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) {
            row.push_back(to_string(m(r, c)));
            if (c > r && m(r, c) != Rational(0)) lower = false;
        }
        rows.push_back(row);
        names.push_back("eta_{" + std::to_string(r + 2) + "," + std::to_string(n) + "}");
        diag.push_back(to_string(m(r, r)));
    }
    for (std::size_t c = 0; c < m.cols(); ++c) cols.push_back(basis_element_name(c));
    emit({{"n", n}, {"rows", names}, {"columns", cols}, {"matrix", rows}, {"diagonal", diag}, {"lower_triangular", lower}});
}

struct GGArgs {
    std::string tree;
    int n = 2;
    std::string phi = "sign";
    std::string theta = "1/2";
};

void run_gg_integrate(const GGArgs& a) {
    const ReebTree t = load_reeb_tree(a.tree);
    const MeasureSpec m = make_measure(a.phi, a.n, a.theta);
    const double c = calabi(t);
    json out{{"n", a.n},
             {"phi", a.phi},
             {"kappa", kappa},
             {"gg_integral", gg_integral(t, m)},
             {"calabi", c},
             {"lk_prediction", 2.0 * a.n * (a.n - 1) * std::pow(std::numbers::pi, a.n - 1) * c},
             {"edges", t.size()},
             {"glued", is_glued(t)},
             {"tolerances", {{"quadrature", "exact for polynomial and pchip pieces"}, {"glue", 1e-9}}}};
    if (a.phi == "omega") out["theta"] = to_string(parse_rational(a.theta));
    if (a.phi == "sign") out["sign_gg_closed"] = sign_gg_closed(t, a.n);
    out["asym_ratio"] = asym_ratio(t, a.n);
    out["asym_bound"] = asym_bound(t, a.n);
    emit(out);
}

void run_asymptotics(const std::string& tree, int nmin, int nmax) {
    if (nmin < 2 || nmax < nmin) throw InvalidInput("asymptotics needs 2 <= nmin <= nmax");
    const ReebTree t = load_reeb_tree(tree);
    const double c = calabi(t);
    std::cout << "n,ratio,calabi,bound\n";
    for (int n = nmin; n <= nmax; ++n)
        std::cout << n << ',' << fmt(asym_ratio(t, n)) << ',' << fmt(c) << ',' << fmt(asym_bound(t, n)) << '\n';
}

struct SimulateArgs {
    std::vector<double> radial;
    double cutoff = 0.81;
    double bump_a = 1.0;
    double bump_r = 0.9;
    std::string grid;
    int n = 2;
    std::size_t samples = 1000;
    long p = 1;
    double dt = 1e-3;
    std::uint64_t seed = 0;
    std::string phi = "lk";
    std::string theta = "1/2";
    std::string order = "asc";
    std::string csv;
    unsigned threads = 1;
};

void run_simulate(const SimulateArgs& a) {
    FlowSpec spec;
    spec.dt = a.dt;
    spec.p = a.p;
    std::optional<ReebTree> tree;
    std::string source;
    if (!a.grid.empty()) {
        const Grid g = load_grid(a.grid);
        spec.hamiltonian = grid_hamiltonian(g);
        tree = reeb_from_grid(g);
        source = "grid";
    } else {
        const RadialProfile prof = a.radial.empty() ? RadialProfile::bump(a.bump_a, a.bump_r)
                                                    : RadialProfile{Polynomial(a.radial), a.cutoff};
        if (!a.radial.empty() && std::abs(prof.f(prof.cutoff)) > 1e-12)
            throw InvalidInput("radial profile must vanish at the cutoff");
        spec.hamiltonian = radial_hamiltonian(prof);
        tree = radial_tree(prof);
        source = "radial";
    }
    const QuasiMorphism phi = make_phi(a.phi, a.n, a.theta, parse_order(a.order));
    MonteCarloOptions opt;
    opt.threads = a.threads;
    std::vector<SampleRecord> records;
    const GGEstimate e = monte_carlo_phi(spec, phi, a.n, a.samples, a.seed, opt, a.csv.empty() ? nullptr : &records);
    if (!a.csv.empty()) {
        std::ofstream f(a.csv);
        if (!f) throw InvalidInput("cannot write '" + a.csv + "'");
        write_samples_csv(f, records);
    }
    json out{{"mean", e.mean},
             {"stderr", e.stderr_},
             {"N", e.samples_used},
             {"rejected", e.rejected},
             {"seed", e.seed},
             {"n", a.n},
             {"p", a.p},
             {"dt", a.dt},
             {"phi", phi.name},
             {"source", source},
             {"kappa", kappa},
             {"sign_convention", sign_convention()}};
    if (tree && a.n >= 2) {
        out["reference"] = {{"calabi", calabi(*tree)},
                            {"gg_integral", gg_integral(*tree, make_measure(a.phi, a.n, a.theta))}};
    }
    emit(out);
}

int fail(const char* kind, const std::string& msg, int code) {
    std::cerr << json{{"error", kind}, {"message", msg}}.dump() << '\n';
    return code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Braid quasi-morphisms, link signatures and Gambaudo-Ghys integrals"};
    app.require_subcommand(1);

    InvariantArgs inv;
    auto* c_inv = app.add_subcommand("invariant", "signatures, determinant, s and tau of a braid closure");
    c_inv->add_option("--braid", inv.braid, "braid word, e.g. \"1 -2 1\"")->required();
    c_inv->add_option("--n", inv.n, "strand count (default: inferred)");
    c_inv->add_option("--theta", inv.theta, "omega = exp(2 pi i theta), as p/q");
    c_inv->add_option("--pivot-tol", inv.pivot_tol, "relative pivot tolerance of the Hermitian path");

    HomogenizeArgs hom;
    auto* c_hom = app.add_subcommand("homogenize", "phi(beta^p)/p with its bracket");
    c_hom->add_option("--braid", hom.braid)->required();
    c_hom->add_option("--n", hom.n);
    c_hom->add_option("--phi", hom.phi, "lk, sign, omega, s, tau");
    c_hom->add_option("--theta", hom.theta);
    c_hom->add_option("--p", hom.p);
    c_hom->add_option("--order", hom.order, "completion order: asc or desc");

    DefectArgs def;
    def.seed = 0;
    auto* c_def = app.add_subcommand("defect", "sampled defect of a quasi-morphism");
    c_def->add_option("--phi", def.phi);
    c_def->add_option("--n", def.n);
    c_def->add_option("--theta", def.theta);
    c_def->add_option("--trials", def.trials);
    c_def->add_option("--min-length", def.min_length);
    c_def->add_option("--max-length", def.max_length);
    c_def->add_flag("--positive", def.positive, "sample positive words only");
    auto* def_seed = c_def->add_option("--seed", def.seed);
    c_def->add_option("--threads", def.threads);
    c_def->add_option("--order", def.order);

    EtaTableArgs eta;
    auto* c_eta = app.add_subcommand("eta-table", "homogenized omega-signatures of eta_i or of full twists");
    c_eta->add_option("--i", eta.i, "index i (or n with --torus)");
    c_eta->add_option("--theta", eta.theta);
    c_eta->add_flag("--torus", eta.torus, "full twist table instead of eta");
    c_eta->add_option("--imax", eta.imax);
    c_eta->add_option("--den", eta.den, "theta grid k/den");

    int basis_n = 6;
    auto* c_basis = app.add_subcommand("basis", "evaluation matrix of the omega-signature basis");
    c_basis->add_option("--n", basis_n);

    GGArgs gg;
    auto* c_gg = app.add_subcommand("gg-integrate", "integrals over a Reeb tree");
    c_gg->add_option("--tree", gg.tree)->required();
    c_gg->add_option("--n", gg.n);
    c_gg->add_option("--phi", gg.phi, "lk, sign, omega, s, tau");
    c_gg->add_option("--theta", gg.theta);

    std::string asym_tree;
    int asym_nmin = 2, asym_nmax = 60;
    auto* c_asym = app.add_subcommand("asymptotics", "ratio sweep against the Calabi invariant");
    c_asym->add_option("--tree", asym_tree)->required();
    c_asym->add_option("--nmin", asym_nmin);
    c_asym->add_option("--nmax", asym_nmax);

    SimulateArgs sim;
    auto* c_sim = app.add_subcommand("simulate", "Monte-Carlo estimate along a Hamiltonian flow");
    c_sim->add_option("--radial", sim.radial, "coefficients of H as a polynomial in r^2")->delimiter(',');
    c_sim->add_option("--cutoff", sim.cutoff, "support r^2 < cutoff of the radial profile");
    c_sim->add_option("--bump-a", sim.bump_a, "default profile a (R^2 - r^2)^2");
    c_sim->add_option("--bump-r", sim.bump_r);
    c_sim->add_option("--grid", sim.grid, "grid file instead of a radial profile");
    c_sim->add_option("--n", sim.n);
    c_sim->add_option("--N", sim.samples);
    c_sim->add_option("--p", sim.p);
    c_sim->add_option("--dt", sim.dt);
    auto* sim_seed = c_sim->add_option("--seed", sim.seed);
    c_sim->add_option("--phi", sim.phi);
    c_sim->add_option("--theta", sim.theta);
    c_sim->add_option("--order", sim.order);
    c_sim->add_option("--csv", sim.csv, "per-sample CSV output path");
    c_sim->add_option("--threads", sim.threads);

    std::string grid_path;
    ReebExtractOptions rx;
    auto* c_rx = app.add_subcommand("reeb-extract", "Reeb tree JSON from a grid file");
    c_rx->add_option("--grid", grid_path)->required();
    c_rx->add_option("--zero-tol", rx.zero_tol);
    c_rx->add_option("--max-interior-zero", rx.max_interior_zero);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail("invalid_input", e.what(), 2);
    }

    try {
        if (c_def->parsed() && def_seed->count() == 0) def.seed = default_seed();
        if (c_sim->parsed() && sim_seed->count() == 0) sim.seed = default_seed();

        if (c_inv->parsed()) run_invariant(inv);
        else if (c_hom->parsed()) run_homogenize(hom);
        else if (c_def->parsed()) run_defect(def);
        else if (c_eta->parsed()) run_eta_table(eta);
        else if (c_basis->parsed()) run_basis(basis_n);
        else if (c_gg->parsed()) run_gg_integrate(gg);
        else if (c_asym->parsed()) run_asymptotics(asym_tree, asym_nmin, asym_nmax);
        else if (c_sim->parsed()) run_simulate(sim);
        else if (c_rx->parsed()) emit(to_json(reeb_from_grid(load_grid(grid_path), rx)));
    } catch (const InvalidInput& e) {
        return fail("invalid_input", e.what(), 2);
    } catch (const NumericalFault& e) {
        return fail("numerical_fault", e.what(), 3);
    } catch (const std::exception& e) {
        return fail("internal", e.what(), 1);
    }
    return 0;
}
