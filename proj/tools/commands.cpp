#include "commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>

#include "json.hpp"
#include "rotabouss/config.hpp"
#include "rotabouss/critical.hpp"
#include "rotabouss/errors.hpp"
#include "rotabouss/parallel.hpp"
#include "rotabouss/reduction.hpp"
#include "rotabouss/simulator.hpp"
#include "rotabouss/spectrum.hpp"
#include "verify/acceptance.hpp"

namespace rotabouss::cli {
namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr const char* kParamKeys[] = {"sigma", "ro", "rayleigh", "alpha1", "alpha2"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

bool has_flag(const std::vector<std::string>& args, const std::string& key) {
    const std::string flag = "--" + key;
    return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
        return a == flag || a.rfind(flag + "=", 0) == 0;
    });
}

void append_flag(std::vector<std::string>& args, const std::string& key, const json& v) {
    if (has_flag(args, key)) return;
    if (v.is_boolean()) {
        if (v.get<bool>()) args.push_back("--" + key);
    } else if (v.is_number()) {
        args.push_back("--" + key);
        args.push_back(num(v.get<double>()));
    } else if (v.is_string()) {
        args.push_back("--" + key);
        args.push_back(v.get<std::string>());
    }
}

struct Range {
    double lo = 0.0, hi = 0.0;
    int n = 0;
};

Range parse_range(const std::string& s, const char* what) {
    Range r;
    const auto a = s.find(':'), b = s.rfind(':');
    auto bad = [&] { return UsageError(std::string(what) + " must look like lo:hi:n, got '" + s + "'"); };
    if (a == std::string::npos || a == b) throw bad();
    try {
        r.lo = std::stod(s.substr(0, a));
        r.hi = std::stod(s.substr(a + 1, b - a - 1));
        r.n = std::stoi(s.substr(b + 1));
    } catch (const std::exception&) {
        throw bad();
    }
    if (r.n < 1 || !(r.hi >= r.lo)) throw bad();
    return r;
}

std::vector<double> samples(const Range& r) {
    std::vector<double> v(r.n);
    for (int i = 0; i < r.n; ++i) v[i] = r.n == 1 ? r.lo : r.lo + (r.hi - r.lo) * i / (r.n - 1);
    return v;
}

// Options every subcommand shares: parameters, config, threads, output.
struct Common {
    std::string config;
    PhysicalParams params;
    int threads = 0;
    std::string out;

    void attach(CLI::App* sub, bool with_out = true) {
        sub->add_option("--config", config, "JSON parameters or a run manifest");
        sub->add_option("--sigma", params.sigma, "Prandtl number")->capture_default_str();
        sub->add_option("--ro", params.ro, "Rossby number")->capture_default_str();
        sub->add_option("--rayleigh", params.rayleigh, "Rayleigh number")->capture_default_str();
        sub->add_option("--alpha1", params.alpha1, "base x-wavenumber")->capture_default_str();
        sub->add_option("--alpha2", params.alpha2, "base y-wavenumber")->capture_default_str();
        sub->add_option("--threads", threads, "worker threads (default: ROTABOUSS_THREADS or 1)");
        if (with_out) sub->add_option("--out", out, "CSV output path (stdout when omitted)");
    }
};

// CSV sink with a header row and 17 significant digits.
class Csv {
public:
    Csv(const std::string& path, std::initializer_list<const char*> header) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw UsageError("cannot write '" + path + "'");
            os_ = &file_;
        }
        *os_ << std::setprecision(17);
        bool first = true;
        for (const char* h : header) *os_ << (first ? "" : ",") << h, first = false;
        *os_ << '\n';
    }
    template <class... T>
    void row(const T&... v) {
        bool first = true;
        ((*os_ << (first ? "" : ",") << v, first = false), ...);
        *os_ << '\n';
    }

private:
    std::ofstream file_;
    std::ostream* os_ = &std::cout;
};

class Run {
public:
    Run(std::string name, const Common& c) : name_(std::move(name)), common_(c) {
        common_.params.validate();
        if (common_.threads < 0) throw UsageError("--threads must be >= 0");
        if (common_.threads > 0) set_thread_count(common_.threads);
    }
    json settings = json::object();
    std::vector<std::string> extra_outputs;

    // Manifest next to the CSV; nothing when the CSV went to stdout.
    void finish() const {
        if (common_.out.empty()) return;
        json outputs = json::array({common_.out});
        for (const auto& o : extra_outputs) outputs.push_back(o);
        const json m = {
            {"subcommand", name_},
            {"params", params_to_json(common_.params)},
            {"settings", settings},
            {"version", ROTABOUSS_VERSION},
            {"outputs", outputs},
            {"threads", thread_count()},
            {"duration_s", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count()},
        };
        std::ofstream f(common_.out + ".manifest.json");
        if (!f) throw UsageError("cannot write manifest for '" + common_.out + "'");
        f << m.dump(2) << '\n';
    }

private:
    std::string name_;
    Common common_;
    std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

std::string index_str(const WaveIndex& i) {
    return "(" + std::to_string(i.j) + "," + std::to_string(i.k) + "," + std::to_string(i.l) + ")";
}

// --- spectrum ---------------------------------------------------------------

struct SpectrumCmd {
    Common c;
    Truncation t{8, 8, 4, 1};
    std::string space = "full";

    void attach(CLI::App* s) {
        c.attach(s);
        s->add_option("--jmax", t.jmax)->capture_default_str();
        s->add_option("--kmax", t.kmax)->capture_default_str();
        s->add_option("--lmax", t.lmax)->capture_default_str();
        s->add_option("--space", space, "full | sym")->capture_default_str();
    }
    int run() {
        Run r("spectrum", c);
        const SpaceFlag sp = parse_space(space);
        r.settings = {{"jmax", t.jmax}, {"kmax", t.kmax}, {"lmax", t.lmax}, {"space", space}};
        Csv csv(c.out, {"j", "k", "l", "class", "branch", "re_beta", "im_beta"});
        for (const WaveIndex& idx : lattice(c.params, t))
            for (const SpectrumEntry& e : spectrum_at(c.params, idx, sp))
                csv.row(idx.j, idx.k, idx.l, to_string(idx.cls), e.branch, e.beta.real(), e.beta.imag());
        r.finish();
        return kExitOk;
    }
};

// --- critical ---------------------------------------------------------------

struct CriticalCmd {
    Common c;
    std::string mode = "steady";
    int jmax = 8, kmax = 8, lmax = 4, j_step = 1;
    std::string scan, neutral, space = "full";

    void attach(CLI::App* s) {
        c.attach(s);
        s->add_option("--mode", mode, "steady | hopf | both")->capture_default_str();
        s->add_option("--jmax", jmax)->capture_default_str();
        s->add_option("--kmax", kmax)->capture_default_str();
        s->add_option("--lmax", lmax, "vertical truncation of --scan")->capture_default_str();
        s->add_option("--j-step", j_step, "keep x-modes that are multiples of this")->capture_default_str();
        s->add_option("--space", space, "full | sym (for --scan)")->capture_default_str();
        auto* sc = s->add_option("--scan", scan, "leading growth rate over R = lo:hi:n");
        s->add_option("--neutral", neutral, "l = 1 neutral curves over alpha^2 = lo:hi:n")->excludes(sc);
    }
    static void report(const char* what, const CriticalResult& r) {
        std::cerr << std::setprecision(17) << what << " onset R = " << r.r_crit << " at " << index_str(r.argmin)
                  << (r.unique ? "" : " (not unique)");
        if (r.onset == Onset::Hopf) std::cerr << ", frequency " << r.hopf_freq;
        std::cerr << '\n';
    }
    int run() {
        if (mode != "steady" && mode != "hopf" && mode != "both")
            throw UsageError("--mode must be steady, hopf or both");
        Run r("critical", c);
        r.settings = {{"mode", mode}, {"jmax", jmax}, {"kmax", kmax}, {"lmax", lmax}, {"j-step", j_step},
                      {"space", space}};
        if (!scan.empty()) r.settings["scan"] = scan;
        if (!neutral.empty()) r.settings["neutral"] = neutral;
        std::vector<std::pair<std::string, CriticalResult>> found;
        if (mode != "hopf") found.emplace_back("steady", rc1(c.params, jmax, kmax, j_step));
        if (mode != "steady") {
            if (mode == "hopf" || c.params.sigma < 1.0)
                found.emplace_back("hopf", rc2(c.params, jmax, kmax, j_step));
        }
        for (const auto& [name, res] : found) report(name.c_str(), res);
        if (!scan.empty()) {
            const Range rg = parse_range(scan, "--scan");
            const PesScan s = pes_scan(c.params, rg.lo, rg.hi, rg.n, parse_space(space),
                                       Truncation{jmax, kmax, lmax, j_step});
            Csv csv(c.out, {"R", "re_beta_max", "im_beta_at_max", "j", "k", "l"});
            for (const PesRow& row : s.rows)
                csv.row(row.r, row.re_max, row.im_at_max, row.index.j, row.index.k, row.index.l);
            if (s.bracketed) std::cerr << "sign change between R = " << s.r_below << " and " << s.r_above << '\n';
        } else if (!neutral.empty()) {
            const Range rg = parse_range(neutral, "--neutral");
            if (!(rg.lo > 0.0)) throw UsageError("--neutral needs alpha^2 > 0");
            const double bs = steady_offset(c.params), bh = hopf_offset(c.params);
            const double scale = 2.0 * (c.params.sigma + 1.0);
            Csv csv(c.out, {"alpha_sq", "r_steady", "r_hopf"});
            for (double x : samples(rg)) csv.row(x, neutral_value(x, bs), scale * neutral_value(x, bh));
        } else {
            Csv csv(c.out, {"mode", "R", "j", "k", "l", "unique", "hopf_admissible", "frequency"});
            for (const auto& [name, res] : found)
                csv.row(name, res.r_crit, res.argmin.j, res.argmin.k, res.argmin.l, res.unique ? 1 : 0,
                        res.hopf_admissible ? 1 : 0, res.hopf_freq);
        }
        r.finish();
        return kExitOk;
    }
};

// --- asymptotics ------------------------------------------------------------

struct AsymptoticsCmd {
    Common c;
    std::vector<double> ro_list{1e-2, 3e-3, 1e-3, 3e-4, 1e-4};

    void attach(CLI::App* s) {
        c.attach(s);
        s->add_option("--ro-list", ro_list, "comma-separated Rossby numbers")->delimiter(',');
    }
    int run() {
        Run r("asymptotics", c);
        std::string joined;
        for (double v : ro_list) joined += (joined.empty() ? "" : ",") + num(v);
        r.settings = {{"ro-list", joined}};
        const Asymptotics a = ro_asymptotics(c.params.sigma, c.params.alpha1, c.params.alpha2, ro_list);
        Csv csv(c.out, {"ro", "b1", "x_b1", "rc1_continuous", "rc1_lattice", "j", "k", "l"});
        for (const AsymptoticsRow& row : a.rows)
            csv.row(row.ro, row.b1, row.x_b1, row.rc1_continuous, row.rc1_lattice, row.lattice_argmin.j,
                    row.lattice_argmin.k, row.lattice_argmin.l);
        std::cerr << std::setprecision(6) << "log-log slope " << a.slope << " (continuous), " << a.lattice_slope
                  << " (lattice)\n";
        r.finish();
        return kExitOk;
    }
};

// --- reduce -----------------------------------------------------------------

struct ReduceCmd {
    Common c;
    std::optional<double> r_value;
    std::string r_scan;

    void attach(CLI::App* s) {
        c.attach(s);
        auto* a = s->add_option("--r", r_value, "Rayleigh number");
        auto* b = s->add_option("--r-scan", r_scan, "R = lo:hi:n");
        a->excludes(b);
    }
    int run() {
        Run run("reduce", c);
        std::vector<double> rs;
        if (!r_scan.empty()) {
            rs = samples(parse_range(r_scan, "--r-scan"));
            run.settings["r-scan"] = r_scan;
        } else {
            rs = {r_value.value_or(c.params.rayleigh)};
            run.settings["r"] = rs.front();
        }
        const AmplitudeModel m = build_amplitude_model(c.params);
        std::cerr << std::setprecision(17) << "critical mode j = " << m.j1 << ", R_c1 = " << m.r_c1
                  << ", delta = " << m.delta << '\n';
        Csv csv(c.out, {"R", "beta", "delta", "radius_pred"});
        // below onset the only attracting state is the conduction state
        for (double r : rs) csv.row(r, m.beta_of_r(r), m.delta, r >= m.r_c1 ? predicted_radius(m, r) : 0.0);
        run.finish();
        return kExitOk;
    }
};

// --- simulate ---------------------------------------------------------------

struct SimulateCmd {
    Common c;
    SimConfig cfg;
    std::optional<double> r_value;
    std::string symmetry = "full", scheme = "etd2", checkpoint, restart;
    int seed_j = 1, seed_l = 1;

    void attach(CLI::App* s) {
        c.attach(s);
        s->add_option("--nx", cfg.nx, "collocation points in x")->capture_default_str();
        s->add_option("--nz", cfg.nz, "retained vertical modes")->capture_default_str();
        s->add_option("--dt", cfg.dt)->capture_default_str();
        s->add_option("--t-end", cfg.t_end)->capture_default_str();
        s->add_option("--r", r_value, "Rayleigh number (overrides --rayleigh)");
        s->add_option("--seed-amp", cfg.seed_amp)->capture_default_str();
        s->add_option("--seed-j", seed_j, "x-mode of the seed eigenvector")->capture_default_str();
        s->add_option("--seed-l", seed_l, "z-mode of the seed eigenvector")->capture_default_str();
        s->add_option("--symmetry", symmetry, "full | sym")->capture_default_str();
        s->add_option("--diag-every", cfg.diag_every)->capture_default_str();
        s->add_option("--scheme", scheme, "etd2 | imex-cnab2 | imex-euler")->capture_default_str();
        s->add_option("--harmonic", cfg.harmonic, "keep x-modes that are multiples of this")->capture_default_str();
        s->add_flag("--stop-when-steady", cfg.stop_when_steady);
        s->add_option("--checkpoint", checkpoint, "write the final state here");
        s->add_option("--restart", restart, "start from this checkpoint");
    }
    int run() {
        if (r_value) c.params.rayleigh = *r_value;
        Run run("simulate", c);
        cfg.params = c.params;
        cfg.symmetry = parse_space(symmetry);
        cfg.scheme = parse_scheme(scheme);
        cfg.seed_mode = make_index(seed_j, 0, seed_l, c.params);
        run.settings = {{"nx", cfg.nx},           {"nz", cfg.nz},
                        {"dt", cfg.dt},           {"t-end", cfg.t_end},
                        {"seed-amp", cfg.seed_amp}, {"seed-j", seed_j},
                        {"seed-l", seed_l},       {"symmetry", symmetry},
                        {"diag-every", cfg.diag_every}, {"scheme", scheme},
                        {"harmonic", cfg.harmonic}, {"stop-when-steady", cfg.stop_when_steady}};
        if (!restart.empty()) run.settings["restart"] = restart;
        Simulator sim(cfg);
        const Diagnostics d = restart.empty() ? sim.run() : sim.run(load_checkpoint(restart, sim));
        Csv csv(c.out, {"t", "ke", "te", "re_wmode", "im_wmode", "growth_rate", "div_max"});
        for (const DiagnosticSample& s : d.samples)
            csv.row(s.t, s.ke, s.te, s.wmode.real(), s.wmode.imag(), s.growth_rate, s.div_max);
        for (const std::string& w : d.warnings) std::cerr << "warning: " << w << '\n';
        std::cerr << std::setprecision(10) << "final |mode| " << std::abs(d.samples.back().wmode);
        if (d.steady) std::cerr << ", steady from t = " << d.steady_time;
        if (d.oscillating) std::cerr << ", oscillating";
        std::cerr << '\n';
        if (!checkpoint.empty()) {
            save_checkpoint(checkpoint, d.final_state, cfg);
            run.extra_outputs.push_back(checkpoint);
        }
        run.finish();
        return kExitOk;
    }
};

// --- verify -----------------------------------------------------------------

struct VerifyCmd {
    bool quick = false;
    std::vector<int> only;
    int threads = 0;

    void attach(CLI::App* s) {
        s->add_flag("--quick", quick, "skip the two long simulations");
        s->add_option("--only", only, "criterion numbers to run")->delimiter(',');
        s->add_option("--threads", threads, "worker threads");
    }
    int run() const {
        if (threads > 0) set_thread_count(threads);
        // lines appear as each criterion finishes; the long simulations take minutes
        const auto results = verify::run_acceptance({quick, only, &std::cout});
        std::cout << verify::summary_line(results) << '\n';
        return verify::all_passed(results) ? kExitOk : kExitNumerical;
    }
};

}  // namespace

std::vector<std::string> expand_config(std::vector<std::string> args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
        if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    }
    if (path.empty()) return args;
    const json doc = read_json_file(path);
    const json& params = doc.contains("params") ? doc.at("params") : doc;
    if (!params.is_object()) throw PreconditionError("config '" + path + "' is not a JSON object");
    for (const char* key : kParamKeys)
        if (params.contains(key)) append_flag(args, key, params.at(key));
    const bool same_command = args.size() > 1 && doc.value("subcommand", std::string()) == args[1];
    if (same_command && doc.contains("settings"))
        for (const auto& [key, v] : doc.at("settings").items()) append_flag(args, key, v);
    return args;
}

int dispatch(std::vector<std::string> args) {
    CLI::App app{"Linear stability, critical thresholds, weakly nonlinear reduction and 2-D simulation "
                 "of rotating Boussinesq convection between free-slip plates"};
    app.name("rotabouss");
    app.set_version_flag("--version", ROTABOUSS_VERSION);
    app.require_subcommand(1);

    SpectrumCmd spectrum;
    CriticalCmd critical;
    AsymptoticsCmd asymptotics;
    ReduceCmd reduce;
    SimulateCmd simulate;
    VerifyCmd verify;
    auto* s_spec = app.add_subcommand("spectrum", "eigenvalues over a truncated lattice");
    auto* s_crit = app.add_subcommand("critical", "onset thresholds and growth-rate scans");
    auto* s_asym = app.add_subcommand("asymptotics", "critical Rayleigh number against the Rossby number");
    auto* s_red = app.add_subcommand("reduce", "cubic amplitude model near the steady onset");
    auto* s_sim = app.add_subcommand("simulate", "2-D pseudo-spectral simulation");
    auto* s_ver = app.add_subcommand("verify", "acceptance suite; exit 0 iff every check passes");
    spectrum.attach(s_spec);
    critical.attach(s_crit);
    asymptotics.attach(s_asym);
    reduce.attach(s_red);
    simulate.attach(s_sim);
    verify.attach(s_ver);

    try {
        args = expand_config(std::move(args));
        std::vector<std::string> rev(args.rbegin(), args.rend() - 1);  // CLI11 wants reversed, no argv[0]
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        if (app.exit(e) == 0) return kExitOk;
        const auto chosen = app.get_subcommands();
        std::cerr << '\n' << (chosen.empty() ? app.help() : chosen.front()->help());
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (s_spec->parsed()) return spectrum.run();
        if (s_crit->parsed()) return critical.run();
        if (s_asym->parsed()) return asymptotics.run();
        if (s_red->parsed()) return reduce.run();
        if (s_sim->parsed()) return simulate.run();
        return verify.run();
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const SigmaOutOfRange& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
}

}  // namespace rotabouss::cli
