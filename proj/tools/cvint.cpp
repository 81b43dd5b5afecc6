#include "CLI11.hpp"
#include "json.hpp"
#include "cvint/csv.hpp"
#include "cvint/estimation.hpp"
#include "cvint/fock.hpp"
#include "cvint/link_budget.hpp"
#include "cvint/mzi.hpp"
#include "cvint/teleport.hpp"
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace {

constexpr const char* kArtifactVersion = "1.0.0";
constexpr std::uint64_t kDefaultSeed = 20240815;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::string out;
    std::uint64_t seed = kDefaultSeed;
    std::vector<std::string> sets;
};

void add_common(CLI::App* cmd, Common& c) {
    const char* env = std::getenv("CVINT_OUT_DIR");
    c.out = env ? env : ".";
    cmd->add_option("--out", c.out, "output directory");
    cmd->add_option("--seed", c.seed, "random stream seed");
    cmd->add_option("--set", c.sets, "override a parameter, key=value (repeatable)");
}

// resolves --set overrides against a fixed default map; unknown keys are a usage error
std::map<std::string, double> resolve(const std::map<std::string, double>& defaults,
                                      const std::vector<std::string>& sets) {
    std::map<std::string, double> out = defaults;
    for (const std::string& kv : sets) {
        auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw UsageError("--set expects key=value, got '" + kv + "'");
        std::string key = kv.substr(0, eq);
        if (!out.count(key)) throw UsageError("unknown parameter '" + key + "'");
        try {
            out[key] = std::stod(kv.substr(eq + 1));
        } catch (const std::exception&) {
            throw UsageError("cannot parse value in '" + kv + "'");
        }
    }
    return out;
}

void write_meta(const std::string& csv_path, const std::string& command,
                std::uint64_t seed, const std::map<std::string, double>& params) {
    nlohmann::json meta;
    meta["command"] = command;
    meta["artifact_version"] = kArtifactVersion;
    meta["seed"] = seed;
    meta["output"] = csv_path;
    nlohmann::json jp = nlohmann::json::object();
    for (const auto& [k, v] : params) jp[k] = v;
    meta["params"] = jp;
    std::ofstream out(csv_path + ".meta.json", std::ios::binary);
    if (!out) throw std::runtime_error("cannot write metadata next to " + csv_path);
    out << meta.dump(2) << "\n";
}

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> g;
    g.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        g.push_back(lo * std::pow(hi / lo, n == 1 ? 0.0 : double(i) / (n - 1)));
    return g;
}

std::vector<double> lin_grid(double lo, double hi, int n) {
    std::vector<double> g;
    g.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        g.push_back(lo + (hi - lo) * (n == 1 ? 0.0 : double(i) / (n - 1)));
    return g;
}

struct CheckRow {
    std::string name;
    double value;
    double bound;
    bool pass;
};

int emit_checks(const std::string& path, const std::string& command, std::uint64_t seed,
                const std::map<std::string, double>& params,
                const std::vector<CheckRow>& rows) {
    cvint::CsvWriter w(path);
    w.header({"check", "value", "bound", "pass"});
    bool all_ok = true;
    for (const auto& r : rows) {
        w.row_strings({r.name, cvint::format_double(r.value), cvint::format_double(r.bound),
                       r.pass ? "1" : "0"});
        if (!r.pass) {
            all_ok = false;
            std::cerr << command << ": FAILED " << r.name << " value=" << r.value
                      << " bound=" << r.bound << "\n";
        }
    }
    write_meta(path, command, seed, params);
    std::cout << command << ": " << rows.size() << " checks, "
              << (all_ok ? "all passed" : "FAILURES above") << "\n";
    return all_ok ? 0 : 1;
}

int run_fig2(const Common& c) {
    auto prm = resolve({{"eps", 1e-5}, {"g", 0.7}, {"theta", 0.0},
                        {"y_min", 1e-8}, {"y_max", 1.0}, {"points", 200}},
                       c.sets);
    cvint::CoherenceParams p{prm["eps"], prm["g"], prm["theta"]};
    cvint::validate(p);
    std::string path = c.out + "/fig2.csv";
    cvint::CsvWriter w(path);
    w.header({"y", "F_thth", "F_gg"});
    for (double y : log_grid(prm["y_min"], prm["y_max"], int(prm["points"]))) {
        cvint::FisherMatrix f = cvint::qfi_closed_form(p, y);
        w.row({y, f.f_theta_theta, f.f_g_g});
    }
    write_meta(path, "fig2", c.seed, prm);
    return 0;
}

int run_fig3(const Common& c) {
    auto prm = resolve({{"g", 0.7}, {"theta", 0.0}, {"y", 0.0},
                        {"eps_min", 1e-6}, {"eps_max", 1.0}, {"points", 121}},
                       c.sets);
    std::string path = c.out + "/fig3.csv";
    cvint::CsvWriter w(path);
    w.header({"epsilon", "F_cv", "F_dv", "F_het"});
    for (double eps : log_grid(prm["eps_min"], prm["eps_max"], int(prm["points"]))) {
        cvint::CoherenceParams p{eps, prm["g"], prm["theta"]};
        w.row({eps, cvint::qfi_closed_form(p, prm["y"]).f_theta_theta,
               cvint::dv_scheme_fi(p).f_theta_theta,
               cvint::heterodyne_fi(p).f_theta_theta});
    }
    write_meta(path, "fig3", c.seed, prm);
    return 0;
}

int run_fig4(const Common& c) {
    auto prm = resolve({{"g", 0.7}, {"theta", 0.0}, {"r", 5.0},
                        {"loss_db_per_km", 0.2}, {"l_max_km", 50.0}, {"points", 101}},
                       c.sets);
    cvint::NetworkParams net;
    net.loss_db_per_km = prm["loss_db_per_km"];
    std::vector<double> grid = lin_grid(0.0, prm["l_max_km"], int(prm["points"]));
    std::string path = c.out + "/fig4.csv";
    cvint::CsvWriter w(path);
    w.header({"epsilon", "L_km", "F_cv", "F_dv"});
    for (double eps : {0.5, 0.05, 0.005}) {
        cvint::CoherenceParams p{eps, prm["g"], prm["theta"]};
        auto cv = cvint::fi_vs_baseline_curve(p, prm["r"], net,
                                              cvint::BaselineScheme::cv_no_repeater, grid);
        auto dv = cvint::fi_vs_baseline_curve(p, prm["r"], net,
                                              cvint::BaselineScheme::dv_no_repeater, grid);
        for (std::size_t i = 0; i < grid.size(); ++i)
            w.row({eps, grid[i], cv[i].value, dv[i].value});
    }
    write_meta(path, "fig4", c.seed, prm);
    return 0;
}

int run_fig6(const Common& c) {
    auto prm = resolve({{"eps", 0.4}, {"g", 0.7}, {"theta", 0.0}, {"r_eff", 0.8},
                        {"loss_db_per_km", 1.0}, {"base_rate_ghz", 150.0},
                        {"reference_km", 10.0}, {"poly_order", 2.0},
                        {"mode_rate_ghz", 150.0}, {"l_min_km", 0.25},
                        {"l_max_km", 80.0}, {"points", 320}},
                       c.sets);
    cvint::CoherenceParams p{prm["eps"], prm["g"], prm["theta"]};
    cvint::NetworkParams net;
    net.loss_db_per_km = prm["loss_db_per_km"];
    net.base_rate_hz = prm["base_rate_ghz"] * 1e9;
    net.reference_km = prm["reference_km"];
    net.poly_order = prm["poly_order"];
    auto pts = cvint::fi_ratio_vs_distance(p, prm["r_eff"], net, prm["mode_rate_ghz"] * 1e9,
                                           lin_grid(prm["l_min_km"], prm["l_max_km"],
                                                    int(prm["points"])));
    std::string path = c.out + "/fig6.csv";
    cvint::CsvWriter w(path);
    w.header({"L_km", "ratio_direct", "ratio_cv"});
    for (const auto& pt : pts) w.row({pt.baseline_km, pt.ratio_direct, pt.ratio_cv});
    write_meta(path, "fig6", c.seed, prm);
    return 0;
}

int run_table1(const Common& c) {
    auto prm = resolve({}, c.sets);
    std::string path = c.out + "/table1.csv";
    cvint::CsvWriter w(path);
    w.header({"magnitude", "epsilon", "squeezing_db", "r_eff"});
    for (const auto& row : cvint::squeezing_threshold_table())
        w.row({row.magnitude, row.epsilon, row.squeezing_db, row.r_eff});
    write_meta(path, "table1", c.seed, prm);
    return 0;
}

int run_validate_teleport(const Common& c) {
    auto prm = resolve({{"eps", 0.4}, {"g", 0.7}, {"theta", 0.3}, {"r", 2.0},
                        {"T", 0.95}, {"n_samples", 1e6}},
                       c.sets);
    cvint::CoherenceParams p{prm["eps"], prm["g"], prm["theta"]};
    std::vector<CheckRow> rows;

    cvint::LinkParams noiseless{};
    noiseless.y = 0.0;
    double ident = (cvint::teleported_state(p, noiseless).cov - cvint::stellar_state(p).cov)
                       .norm();
    rows.push_back({"noiseless_identity", ident, 0.0, ident == 0.0});

    double worst_pipe = 0.0;
    for (double r : {0.0, 0.5, 2.0, 5.0})
        for (double T : {0.3, 0.7, 0.95, 1.0}) {
            double dev = (cvint::pipeline_output_cov(p, r, T) -
                          cvint::teleported_state(p, cvint::effective_squeezing(r, T)).cov)
                             .cwiseAbs()
                             .maxCoeff();
            worst_pipe = std::max(worst_pipe, dev);
        }
    rows.push_back({"pipeline_vs_closed_form", worst_pipe, 1e-12, worst_pipe <= 1e-12});

    auto rep = cvint::simulate_teleportation(p, prm["r"], prm["T"],
                                             std::uint64_t(prm["n_samples"]), c.seed);
    double worst_se = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            worst_se = std::max(worst_se,
                                std::abs(rep.empirical_cov(i, j) - rep.target_cov(i, j)) /
                                    rep.stderr_cov(i, j));
    rows.push_back({"mc_cov_standard_errors", worst_se, 5.0, worst_se <= 5.0});

    double worst_mean = 0.0;
    for (int i = 0; i < 4; ++i)
        worst_mean = std::max(worst_mean, std::abs(rep.empirical_mean(i)) / rep.stderr_mean(i));
    rows.push_back({"mc_mean_standard_errors", worst_mean, 5.0, worst_mean <= 5.0});

    auto ser = cvint::simulate_teleportation(p, prm["r"], prm["T"],
                                             std::uint64_t(prm["n_samples"]), c.seed,
                                             cvint::Execution::serial);
    double stream_dev = (ser.empirical_cov - rep.empirical_cov).cwiseAbs().maxCoeff();
    rows.push_back({"serial_parallel_identical", stream_dev, 0.0, stream_dev == 0.0});

    bool phys = true;
    for (double r : {0.0, 1.0, 3.0})
        for (double T : {0.2, 0.8, 1.0})
            phys = phys && cvint::is_physical(
                               cvint::teleported_state(p, cvint::effective_squeezing(r, T)));
    rows.push_back({"teleported_states_physical", phys ? 1.0 : 0.0, 1.0, phys});

    return emit_checks(c.out + "/validate_teleport.csv", "validate-teleport", c.seed, prm,
                       rows);
}

int run_validate_fock(const Common& c) {
    auto prm = resolve({{"eps", 1e-3}, {"g", 0.5}, {"theta", 0.2}, {"y", 1e-6},
                        {"cutoff", 6}},
                       c.sets);
    cvint::CoherenceParams p{prm["eps"], prm["g"], prm["theta"]};
    int cutoff = int(prm["cutoff"]);
    std::vector<CheckRow> rows;

    cvint::GaussianState th = cvint::vacuum_state(2);
    th.cov(0, 0) = th.cov(1, 1) = 1.1; // nbar 0.6
    th.cov(2, 2) = th.cov(3, 3) = 0.75;
    cvint::FockOperator rho = cvint::gaussian_to_fock(th, 7);
    double worst = 0.0;
    for (int m = 0; m <= 7; ++m)
        for (int n = 0; n <= 7; ++n) {
            double pm = std::pow(0.6 / 1.6, m) / 1.6 * std::pow(0.25 / 1.25, n) / 1.25;
            worst = std::max(worst, std::abs(rho.matrix(m * 8 + n, m * 8 + n).real() - pm));
        }
    rows.push_back({"thermal_diagonal_exact", worst, 1e-13, worst <= 1e-13});

    double tail_ok = 1.0;
    double worst_sum = 0.0;
    for (double delta : {prm["theta"], prm["theta"] + 1.2}) {
        cvint::PnrDistribution d = cvint::pnr_distribution(p, prm["y"], delta, cutoff);
        double deficit = 1.0 - d.probs.sum();
        worst_sum = std::max(worst_sum, deficit - d.tail_mass);
        if (d.probs.minCoeff() < -1e-15) tail_ok = 0.0;
    }
    rows.push_back({"pnr_sums_within_tail", worst_sum, 1e-12, worst_sum <= 1e-12});
    rows.push_back({"pnr_nonnegative", tail_ok, 1.0, tail_ok == 1.0});

    cvint::FisherMatrix fi =
        cvint::classical_fi_pnr(p, prm["y"], prm["theta"] + M_PI / 2, cutoff);
    double target = prm["eps"] * prm["g"] * prm["g"];
    double rel = std::abs(fi.f_theta_theta - target) / target;
    rows.push_back({"counting_fi_vs_weak_limit", rel, 0.05, rel <= 0.05});

    bool bound_ok = true;
    double worst_ratio = 0.0;
    for (double delta : {prm["theta"], prm["theta"] + 0.7, prm["theta"] + M_PI / 2}) {
        cvint::FisherMatrix f = cvint::classical_fi_pnr(p, prm["y"], delta, cutoff);
        cvint::FisherMatrix q = cvint::qfi_closed_form(p, prm["y"]);
        worst_ratio = std::max({worst_ratio, f.f_theta_theta / q.f_theta_theta,
                                f.f_g_g / q.f_g_g});
        bound_ok = bound_ok && f.f_theta_theta <= q.f_theta_theta * (1 + 1e-6) &&
                   f.f_g_g <= q.f_g_g * (1 + 1e-6);
    }
    rows.push_back({"counting_fi_below_quantum_bound", worst_ratio, 1.0 + 1e-6, bound_ok});

    return emit_checks(c.out + "/validate_fock.csv", "validate-fock", c.seed, prm, rows);
}

int run_validate_sld(const Common& c) {
    auto prm = resolve({{"eps", 0.05}, {"g", 0.6}, {"theta", 0.7}, {"y", 1e-3},
                        {"cutoff", 8}},
                       c.sets);
    cvint::CoherenceParams p{prm["eps"], prm["g"], prm["theta"]};
    int cutoff = int(prm["cutoff"]);
    std::vector<CheckRow> rows;
    for (auto which : {cvint::SldWhich::theta, cvint::SldWhich::g}) {
        const char* tag = which == cvint::SldWhich::theta ? "theta" : "g";
        cvint::SldReport rep = cvint::verify_sld(p, prm["y"], cutoff, which);
        rows.push_back({std::string("residual_") + tag, rep.residual, 1e-4,
                        rep.residual <= 1e-4});
        rows.push_back({std::string("zero_mean_") + tag, std::abs(rep.tr_rho_l), 1e-8,
                        std::abs(rep.tr_rho_l) <= 1e-8});
        double rel = std::abs(rep.tr_rho_l2 - rep.qfi_diagonal) / rep.qfi_diagonal;
        rows.push_back({std::string("second_moment_vs_information_") + tag, rel, 0.01,
                        rel <= 0.01});
    }
    return emit_checks(c.out + "/validate_sld.csv", "validate-sld", c.seed, prm, rows);
}

int run_mzi(const Common& c) {
    auto prm = resolve({{"alpha", 1.0}, {"r", 0.5}, {"cutoff", 30}, {"points", 41},
                        {"phi_max", M_PI}},
                       c.sets);
    std::string path = c.out + "/mzi.csv";
    cvint::CsvWriter w(path);
    w.header({"phi", "mean_n", "var_n", "fock_mean_dev", "fock_var_dev"});
    for (double phi : lin_grid(0.0, prm["phi_max"], int(prm["points"]))) {
        cvint::MziConfig cfg{prm["alpha"], prm["r"], phi};
        cvint::MziStats st = cvint::mzi_stats(cfg);
        cvint::MziFockReport rep = cvint::mzi_fock_check(cfg, int(prm["cutoff"]));
        w.row({phi, st.mean_n, st.var_n, rep.mean_abs_dev, rep.var_abs_dev});
    }
    write_meta(path, "mzi", c.seed, prm);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"simulation and estimation toolkit for teleportation-based interferometry"};
    app.require_subcommand(1);

    std::map<std::string, Common> commons;
    std::map<std::string, int (*)(const Common&)> runners = {
        {"fig2", run_fig2},
        {"fig3", run_fig3},
        {"fig4", run_fig4},
        {"fig6", run_fig6},
        {"table1", run_table1},
        {"validate-teleport", run_validate_teleport},
        {"validate-fock", run_validate_fock},
        {"validate-sld", run_validate_sld},
        {"mzi", run_mzi}};
    const std::map<std::string, std::string> blurbs = {
        {"fig2", "information versus teleportation noise, CSV"},
        {"fig3", "scheme comparison versus source strength, CSV"},
        {"fig4", "information versus baseline under fiber loss, CSV"},
        {"fig6", "repeater-assisted information ratio versus distance, CSV"},
        {"table1", "threshold squeezing per stellar magnitude, CSV"},
        {"validate-teleport", "sampling checks of the teleportation pipeline"},
        {"validate-fock", "number-basis oracle checks"},
        {"validate-sld", "optimal-measurement operator checks"},
        {"mzi", "squeezed-input interferometer sweep, CSV"}};
    for (const auto& [name, blurb] : blurbs)
        add_common(app.add_subcommand(name, blurb), commons[name]);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        for (auto& [name, fn] : runners)
            if (app.get_subcommand(name)->parsed()) return fn(commons[name]);
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
