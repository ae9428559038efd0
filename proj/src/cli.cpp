#include "brusselab/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "brusselab/acceptance.hpp"
#include "brusselab/bloch.hpp"
#include "brusselab/errors.hpp"
#include "brusselab/reduced.hpp"
#include "brusselab/simulate.hpp"

namespace brusselab {

using ojson = nlohmann::ordered_json;

std::vector<double> Grid::values() const {
    std::vector<double> v(count);
    for (int i = 0; i < count; ++i) v[i] = count == 1 ? start : start + (stop - start) * i / (count - 1);
    return v;
}

Grid parse_grid(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    if (parts.size() != 3) throw std::invalid_argument("grid must be start:stop:count, got '" + text + "'");
    Grid g;
    std::size_t used = 0;
    try {
        g.start = std::stod(parts[0], &used);
        if (used != parts[0].size()) throw std::invalid_argument("");
        g.stop = std::stod(parts[1], &used);
        if (used != parts[1].size()) throw std::invalid_argument("");
        g.count = std::stoi(parts[2], &used);
        if (used != parts[2].size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed grid '" + text + "'");
    }
    if (!std::isfinite(g.start) || !std::isfinite(g.stop))
        throw std::invalid_argument("grid bounds must be finite");
    if (g.count < 1) throw std::invalid_argument("grid count must be positive");
    if (g.count > 1 && !(g.stop > g.start)) throw std::invalid_argument("grid must be increasing");
    return g;
}

namespace {

struct ArgumentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    std::string subcommand;
    std::string model_path;
    std::string out_dir;
    std::optional<double> eps, omega, tend, dt;
    std::optional<std::string> eps_grid, omega_grid, sigma_grid;
    std::optional<int> trunc, bloch_trunc, cells;
    std::uint64_t seed = 1;
    bool quick = false;
    std::string invocation;
};

std::string num(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", x);
    return buf;
}

class Csv {
public:
    Csv(const Config& cfg, const std::vector<std::string>& columns) {
        os_ << "# brusselab " << kVersion << ": " << cfg.invocation << "\n";
        for (std::size_t i = 0; i < columns.size(); ++i) os_ << (i ? "," : "") << columns[i];
        os_ << "\n";
    }
    void row(const std::vector<double>& v) {
        for (std::size_t i = 0; i < v.size(); ++i) os_ << (i ? "," : "") << num(v[i]);
        os_ << "\n";
    }
    std::string str() const { return os_.str(); }

private:
    std::ostringstream os_;
};

ojson json_header(const Config& cfg) {
    ojson j;
    j["invocation"] = cfg.invocation;
    j["version"] = std::string("brusselab ") + kVersion;
    return j;
}

double jnum(double x) { return std::isfinite(x) ? x : std::numeric_limits<double>::quiet_NaN(); }

class Sink {
public:
    Sink(const Config& cfg, std::ostream& out) : cfg_(cfg), out_(out) {
        if (!cfg.out_dir.empty()) std::filesystem::create_directories(cfg.out_dir);
    }
    void emit(const std::string& name, const std::string& body) {
        if (cfg_.out_dir.empty()) {
            out_ << body;
            if (!body.empty() && body.back() != '\n') out_ << "\n";
            return;
        }
        const auto path = std::filesystem::path(cfg_.out_dir) / name;
        std::ofstream f(path, std::ios::binary);
        if (!f) throw Error("cannot write " + path.string());
        f << body;
        if (!body.empty() && body.back() != '\n') f << "\n";
        out_ << "wrote " << path.string() << "\n";
    }
    void emit_json(const std::string& name, const ojson& j) { emit(name, j.dump(2)); }
    void emit_binary(const std::string& name, const SimState& s) {
        if (cfg_.out_dir.empty()) return;
        const auto path = std::filesystem::path(cfg_.out_dir) / name;
        std::ofstream f(path, std::ios::binary);
        if (!f) throw Error("cannot write " + path.string());
        auto put = [&](double v) {
            unsigned char b[8];
            std::uint64_t bits;
            std::memcpy(&bits, &v, 8);
            for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(bits >> (8 * i));
            f.write(reinterpret_cast<const char*>(b), 8);
        };
        put(s.P);
        put(s.L);
        put(s.t);
        for (int j = 0; j < s.P; ++j) put(s.u1(j));
        for (int j = 0; j < s.P; ++j) put(s.u2(j));
        out_ << "wrote " << path.string() << "\n";
    }

private:
    const Config& cfg_;
    std::ostream& out_;
};

RDModel load_model(const Config& cfg) {
    if (cfg.model_path.empty()) return brusselator();
    std::ifstream f(cfg.model_path);
    if (!f) throw ArgumentError("cannot open model file " + cfg.model_path);
    ModelParams p;
    try {
        const auto j = nlohmann::json::parse(f);
        if (!j.is_object()) throw ArgumentError("model descriptor must be a JSON object");
        p.a = j.value("a", p.a);
        p.d1 = j.value("d1", p.d1);
        p.d2 = j.value("d2", p.d2);
    } catch (const nlohmann::json::exception& e) {
        throw ArgumentError(std::string("invalid model descriptor: ") + e.what());
    }
    try {
        return RDModel(p);
    } catch (const ParameterError& e) {
        throw ArgumentError(e.what());
    }
}

std::vector<double> grid_or(const std::optional<std::string>& g, const std::string& fallback) {
    try {
        return parse_grid(g.value_or(fallback)).values();
    } catch (const std::invalid_argument& e) {
        throw ArgumentError(e.what());
    }
}

int cmd_onset(const Config& cfg, Sink& sink) {
    const TuringOnset on = find_turing_onset(load_model(cfg));
    ojson j = json_header(cfg);
    j["mu0"] = on.mu0;
    j["k0"] = on.k0;
    j["r0"] = {on.r0(0), on.r0(1)};
    j["l0"] = {on.l0(0), on.l0(1)};
    j["lam_mu"] = on.lam_mu;
    j["lam_kk"] = on.lam_kk;
    sink.emit_json("onset.json", j);
    return 0;
}

int cmd_glcoeff(const Config& cfg, Sink& sink) {
    const GLData gl = gl_coefficients(load_model(cfg));
    ojson j = json_header(cfg);
    j["d"] = gl.d;
    j["e"] = gl.e;
    j["f"] = gl.f;
    j["I_E"] = {gl.i_e.lo, gl.i_e.hi};
    j["I_S"] = {gl.i_s.lo, gl.i_s.hi};
    j["psi0"] = {gl.psi0(0), gl.psi0(1)};
    j["psi2"] = {gl.psi2(0), gl.psi2(1)};
    sink.emit_json("glcoeff.json", j);
    return 0;
}

int cmd_gldisp(const Config& cfg, Sink& sink) {
    const GLData gl = gl_coefficients(load_model(cfg));
    const double w = cfg.omega.value_or(0.0);
    if (!gl.i_e.contains(w, 1e-14)) throw ArgumentError("omega outside the existence interval");
    Csv csv(cfg, {"sigma_hat", "lam1", "lam2"});
    for (double s : grid_or(cfg.sigma_grid, "0:2:201")) {
        const auto l = gl_eigen(gl, w, s);
        csv.row({s, l[0], l[1]});
    }
    sink.emit("gldisp.csv", csv.str());
    return 0;
}

int cmd_branch(const Config& cfg, Sink& sink) {
    const RDModel model = load_model(cfg);
    const GLData gl = gl_coefficients(model);
    const double w = cfg.omega.value_or(0.0);
    const ExpansionReport rep =
        validate_expansion(model, gl, w, grid_or(cfg.eps_grid, "0.01:0.08:8"), cfg.trunc.value_or(32));
    Csv csv(cfg, {"eps", "alpha", "alpha_predicted", "residual"});
    ojson j = json_header(cfg);
    j["omega"] = w;
    j["alpha1"] = rep.alpha1;
    j["slope"] = jnum(rep.slope);
    j["points"] = ojson::array();
    for (const auto& p : rep.points) {
        csv.row({p.eps, p.alpha, p.alpha_predicted, p.residual});
        j["points"].push_back({{"eps", p.eps},
                               {"error", p.error},
                               {"mode_error", {p.mode_error[0], p.mode_error[1], p.mode_error[2]}}});
    }
    sink.emit("branch.csv", csv.str());
    sink.emit_json("branch.json", j);
    return 0;
}

int cmd_spectrum(const Config& cfg, Sink& sink) {
    const RDModel model = load_model(cfg);
    const GLData gl = gl_coefficients(model);
    const PeriodicProfile p =
        solve_profile(model, gl, cfg.eps.value_or(0.02), cfg.omega.value_or(0.0), cfg.trunc.value_or(32));
    const auto slices = track_spectrum(model, p, grid_or(cfg.sigma_grid, "0:0.1:51"), cfg.bloch_trunc.value_or(0));
    Csv csv(cfg, {"sigma", "re_l1", "im_l1", "re_l2", "im_l2", "gap"});
    for (const auto& s : slices)
        csv.row({s.sigma, s.critical[0].real(), s.critical[0].imag(), s.critical[1].real(),
                 s.critical[1].imag(), s.gap});
    sink.emit("spectrum.csv", csv.str());
    return 0;
}

int cmd_predict(const Config& cfg, Sink& sink) {
    const double eps = cfg.eps.value_or(0.02), w = cfg.omega.value_or(0.0);
    Csv csv(cfg, {"sigma", "re_l1", "im_l1", "re_l2", "im_l2", "gap"});
    for (double s : grid_or(cfg.sigma_grid, "0:0.1:51")) {
        const ReducedPrediction r = predicted_roots(eps, w, s);
        csv.row({s, r.lam1.real(), r.lam1.imag(), r.lam2.real(), r.lam2.imag(),
                 std::numeric_limits<double>::quiet_NaN()});
    }
    sink.emit("predict.csv", csv.str());
    return 0;
}

int cmd_eckhaus(const Config& cfg, Sink& sink) {
    const RDModel model = load_model(cfg);
    const GLData gl = gl_coefficients(model);
    EckhausOptions opt;
    opt.trunc = cfg.trunc.value_or(16);
    opt.M = cfg.bloch_trunc.value_or(0);
    const StabilityMap map = eckhaus_classify(model, gl, cfg.eps.value_or(0.02), grid_or(cfg.omega_grid, "0:0.25:51"),
                                              grid_or(cfg.sigma_grid, "0:0.1:51"), opt);
    Csv csv(cfg, {"omega", "stable", "max_re_critical", "max_excess", "gap"});
    for (const auto& e : map.entries) csv.row({e.omega, e.stable ? 1.0 : 0.0, e.max_re_critical, e.max_excess, e.gap});
    ojson j = json_header(cfg);
    j["eps"] = map.eps;
    j["eta"] = opt.eta;
    j["delta"] = opt.delta;
    j["boundary"] = jnum(map.boundary);
    j["gl_boundary"] = map.gl_boundary;
    j["distance"] = jnum(map.distance);
    sink.emit("eckhaus-map.csv", csv.str());
    sink.emit_json("eckhaus-map.json", j);
    return 0;
}

int cmd_reality(const Config& cfg, Sink& sink) {
    const RDModel model = load_model(cfg);
    const GLData gl = gl_coefficients(model);
    const double eps = cfg.eps.value_or(0.02);
    const std::vector<double> omegas =
        cfg.omega_grid ? grid_or(cfg.omega_grid, "") : std::vector<double>{cfg.omega.value_or(0.2)};
    const auto sigmas = grid_or(cfg.sigma_grid, "0:0.2:41");
    Csv csv(cfg, {"omega", "sigma", "re_l1", "im_l1", "re_l2", "im_l2"});
    ojson j = json_header(cfg);
    j["eps"] = eps;
    j["reality_boundary"] = reality_boundary();
    j["scans"] = ojson::array();
    for (double w : omegas) {
        const PeriodicProfile p = solve_profile(model, gl, eps, w, cfg.trunc.value_or(32));
        const RealityReport rep = reality_scan(model, p, sigmas, cfg.bloch_trunc.value_or(0));
        for (const auto& s : rep.slices)
            csv.row({w, s.sigma, s.critical[0].real(), s.critical[0].imag(), s.critical[1].real(),
                     s.critical[1].imag()});
        ojson e;
        e["omega"] = w;
        e["gl_zone_max_im"] = rep.gl_zone_max_im;
        e["gl_zone_real"] = rep.gl_zone_real;
        e["ansatz_sigma"] = jnum(rep.ansatz_sigma);
        e["ansatz_min_im"] = jnum(rep.ansatz_min_im);
        e["ansatz_complex"] = rep.ansatz_complex;
        if (w > 0.0) {
            const double d = reality_discriminant(eps, w, rep.ansatz_sigma);
            e["reduced_discriminant"] = d;
            e["reduced_real"] = d >= 0.0;
        }
        j["scans"].push_back(e);
    }
    sink.emit("reality-scan.csv", csv.str());
    sink.emit_json("reality-scan.json", j);
    return 0;
}

int cmd_simulate(const Config& cfg, Sink& sink) {
    const RDModel model = load_model(cfg);
    const GLData gl = gl_coefficients(model);
    const PeriodicProfile p =
        solve_profile(model, gl, cfg.eps.value_or(0.05), cfg.omega.value_or(0.0), cfg.trunc.value_or(32));
    const int Q = cfg.cells.value_or(16);
    if (Q < 1) throw ArgumentError("--cells must be positive");
    const double dt = cfg.dt.value_or(0.05);
    const PatternRun run = simulate_pattern(model, p, Q, cfg.tend.value_or(500.0), dt, 1e-4, cfg.seed);
    Csv csv(cfg, {"t", "distance", "max_field"});
    for (const auto& s : run.trajectory.samples) csv.row({s.t, s.distance, s.max_field});
    sink.emit("simulate.csv", csv.str());
    sink.emit_binary("simulate_final.bin", run.trajectory.final_state);
    if (run.trajectory.diverged)
        throw NumericError("simulation diverged at t=" + num(run.trajectory.divergence_time));
    return 0;
}

int cmd_verify(const Config& cfg, Sink& sink, std::ostream& out) {
    const auto results = run_acceptance(cfg.quick, &out);
    bool ok = true;
    ojson j = json_header(cfg);
    j["criteria"] = ojson::array();
    for (const auto& r : results) {
        ok = ok && (r.passed || r.skipped);
        j["criteria"].push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed},
                                 {"skipped", r.skipped}, {"detail", r.detail}});
    }
    out << (ok ? "all criteria passed" : "some criteria FAILED") << "\n";
    if (!cfg.out_dir.empty()) sink.emit_json("verify.json", j);
    return ok ? 0 : 1;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Config cfg;
    for (std::size_t i = 0; i < args.size(); ++i) cfg.invocation += (i ? " " : "") + args[i];

    CLI::App app{"Turing patterns of the Brusselator: profiles, Bloch spectra, amplitude equations"};
    app.require_subcommand(1);
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"onset", "Turing onset (JSON)"},
        {"glcoeff", "Ginzburg-Landau coefficients and bands (JSON)"},
        {"gldisp", "linearized Ginzburg-Landau eigenvalues (CSV)"},
        {"branch", "bifurcating profiles vs the existence expansion (CSV + JSON)"},
        {"spectrum", "Bloch critical pair along a sigma grid (CSV)"},
        {"predict", "reduced quadratic predictions, spectrum schema (CSV)"},
        {"eckhaus-map", "Eckhaus stability classification (CSV + JSON)"},
        {"reality-scan", "reality of the critical pair (CSV + JSON)"},
        {"simulate", "nonlinear simulation of a perturbed pattern (CSV)"},
        {"verify", "run the acceptance criteria"},
    };
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        sub->fallthrough();
        sub->callback([&cfg, name = name] { cfg.subcommand = name; });
    }
    auto opt_double = [&](const std::string& flag, std::optional<double>& dst, const std::string& help) {
        app.add_option_function<double>(flag, [&dst](const double& v) { dst = v; }, help);
    };
    auto opt_int = [&](const std::string& flag, std::optional<int>& dst, const std::string& help) {
        app.add_option_function<int>(flag, [&dst](const int& v) { dst = v; }, help);
    };
    auto opt_str = [&](const std::string& flag, std::optional<std::string>& dst, const std::string& help) {
        app.add_option_function<std::string>(flag, [&dst](const std::string& v) { dst = v; }, help);
    };
    app.add_option("--model", cfg.model_path, "JSON model descriptor {\"a\", \"d1\", \"d2\"}");
    app.add_option("--out", cfg.out_dir, "output directory (default: stdout)");
    opt_double("--eps", cfg.eps, "amplitude parameter eps (b = eps^2)");
    opt_double("--omega", cfg.omega, "wavenumber offset omega");
    opt_str("--eps-grid", cfg.eps_grid, "eps grid a:b:n");
    opt_str("--omega-grid", cfg.omega_grid, "omega grid a:b:n");
    opt_str("--sigma-grid", cfg.sigma_grid, "Bloch number grid a:b:n");
    opt_int("--trunc", cfg.trunc, "profile truncation N");
    opt_int("--bloch-trunc", cfg.bloch_trunc, "Bloch truncation M (default N + 8)");
    opt_int("--cells", cfg.cells, "pattern cells Q in the simulation domain");
    opt_double("--tend", cfg.tend, "simulation end time");
    opt_double("--dt", cfg.dt, "simulation time step");
    app.add_option("--seed", cfg.seed, "perturbation seed");
    app.add_flag("--quick", cfg.quick, "skip the long acceptance criteria");

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (cfg.trunc && *cfg.trunc < 16) throw ArgumentError("--trunc must be at least 16");
        if (cfg.dt && !(*cfg.dt > 0.0 && *cfg.dt <= 0.1)) throw ArgumentError("--dt must lie in (0, 0.1]");
        Sink sink(cfg, out);
        const std::string& c = cfg.subcommand;
        if (c == "onset") return cmd_onset(cfg, sink);
        if (c == "glcoeff") return cmd_glcoeff(cfg, sink);
        if (c == "gldisp") return cmd_gldisp(cfg, sink);
        if (c == "branch") return cmd_branch(cfg, sink);
        if (c == "spectrum") return cmd_spectrum(cfg, sink);
        if (c == "predict") return cmd_predict(cfg, sink);
        if (c == "eckhaus-map") return cmd_eckhaus(cfg, sink);
        if (c == "reality-scan") return cmd_reality(cfg, sink);
        if (c == "simulate") return cmd_simulate(cfg, sink);
        if (c == "verify") return cmd_verify(cfg, sink, out);
        err << "error: unknown subcommand\n";
        return 2;
    } catch (const ArgumentError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "numeric failure: " << e.what() << "\n";
        return 1;
    }
}

} // namespace brusselab
