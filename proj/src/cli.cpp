#include "abcone/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "abcone/acceptance.hpp"
#include "abcone/bound.hpp"
#include "abcone/oscillator.hpp"
#include "abcone/scatter.hpp"

namespace abcone::cli {

namespace {

std::string fmt17(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

const char* error_name(const Error& e) {
    if (dynamic_cast<const PoleAtK*>(&e)) return "PoleAtK";
    if (dynamic_cast<const SingularCoupling*>(&e)) return "SingularCoupling";
    if (dynamic_cast<const NoBoundState*>(&e)) return "NoBoundState";
    if (dynamic_cast<const BracketError*>(&e)) return "BracketError";
    if (dynamic_cast<const ConvergenceError*>(&e)) return "ConvergenceError";
    if (dynamic_cast<const PoleError*>(&e)) return "PoleError";
    if (dynamic_cast<const DomainError*>(&e)) return "DomainError";
    return "Error";
}

// One flat output record: ordered key -> (kind, token) pairs.
struct Record {
    enum class Kind { Num, Str, Null, List };
    struct Field {
        std::string key;
        Kind kind;
        std::string token;               // Num: formatted; Str: raw text
        std::vector<std::string> items;  // List
    };
    std::vector<Field> fields;

    void num(const std::string& key, double v) {
        if (!std::isfinite(v)) {
            fields.push_back({key, Kind::Null, "", {}});
        } else {
            fields.push_back({key, Kind::Num, fmt17(v), {}});
        }
    }
    void integer(const std::string& key, long v) {
        fields.push_back({key, Kind::Num, std::to_string(v), {}});
    }
    void str(const std::string& key, const std::string& v) {
        fields.push_back({key, Kind::Str, v, {}});
    }
    void null(const std::string& key) {
        fields.push_back({key, Kind::Null, "", {}});
    }
    void warnings(const std::vector<std::string>& w) {
        fields.push_back({"warnings", Kind::List, "", w});
    }
};

class RecordWriter {
  public:
    RecordWriter(RunConfig::Output mode, std::ostream& out)
        : mode_(mode), out_(out) {}

    void write(const Record& rec) {
        if (mode_ == RunConfig::Output::Json) {
            out_ << '{';
            for (size_t i = 0; i < rec.fields.size(); ++i) {
                const auto& f = rec.fields[i];
                if (i) out_ << ',';
                out_ << '"' << f.key << "\":";
                switch (f.kind) {
                    case Record::Kind::Num: out_ << f.token; break;
                    case Record::Kind::Str: out_ << '"' << f.token << '"'; break;
                    case Record::Kind::Null: out_ << "null"; break;
                    case Record::Kind::List: {
                        out_ << '[';
                        for (size_t j = 0; j < f.items.size(); ++j) {
                            if (j) out_ << ',';
                            out_ << '"' << f.items[j] << '"';
                        }
                        out_ << ']';
                        break;
                    }
                }
            }
            out_ << "}\n";
            return;
        }
        if (!header_done_) {
            for (size_t i = 0; i < rec.fields.size(); ++i) {
                if (i) out_ << ',';
                out_ << rec.fields[i].key;
            }
            out_ << '\n';
            header_done_ = true;
        }
        for (size_t i = 0; i < rec.fields.size(); ++i) {
            const auto& f = rec.fields[i];
            if (i) out_ << ',';
            switch (f.kind) {
                case Record::Kind::Num:
                case Record::Kind::Str: out_ << f.token; break;
                case Record::Kind::Null: out_ << "null"; break;
                case Record::Kind::List: {
                    for (size_t j = 0; j < f.items.size(); ++j) {
                        if (j) out_ << ';';
                        out_ << f.items[j];
                    }
                    break;
                }
            }
        }
        out_ << '\n';
    }

  private:
    RunConfig::Output mode_;
    std::ostream& out_;
    bool header_done_ = false;
};

const char* scenario_name(Scenario s) {
    switch (s) {
        case Scenario::ScatteringOnly: return "scattering";
        case Scenario::BoundAndScattering: return "bound-and-scattering";
        default: return "degenerate";
    }
}

const char* branch_name(HoBranch b) {
    switch (b) {
        case HoBranch::Regular: return "regular";
        case HoBranch::Irregular: return "irregular";
        default: return "mixed";
    }
}

const char* lambda_mode_name(RunConfig::LambdaMode m) {
    switch (m) {
        case RunConfig::LambdaMode::Physical: return "physical";
        case RunConfig::LambdaMode::Manual: return "manual";
        case RunConfig::LambdaMode::Dirichlet: return "dirichlet";
        default: return "infinite";
    }
}

ExtensionParam lambda_for(const RunConfig& cfg, const ChannelParams& p) {
    const double nu = effective_channel(p).nu;
    switch (cfg.lambda_mode) {
        case RunConfig::LambdaMode::Physical: return extension_param(cfg.r0, p);
        case RunConfig::LambdaMode::Manual:
            return ExtensionParam::user(cfg.lambda_manual, nu);
        case RunConfig::LambdaMode::Dirichlet: return ExtensionParam::dirichlet(nu);
        default: return ExtensionParam::infinite_flag(nu);
    }
}

void echo_common(Record& rec, const RunConfig& cfg, const char* command) {
    rec.str("command", command);
    rec.num("alpha", cfg.params.alpha);
    rec.num("phi", cfg.params.phi);
    rec.integer("spin", cfg.params.s);
}

std::vector<Record> eval_channels(const RunConfig& cfg) {
    std::vector<Record> out;
    for (int m : modified_channels(cfg.params.alpha, cfg.params.phi)) {
        ChannelParams p = cfg.params;
        p.m = m;
        const auto ch = effective_channel(p);
        Record rec;
        echo_common(rec, cfg, "channels");
        rec.integer("m", m);
        rec.num("j", ch.j);
        rec.num("nu", ch.nu);
        rec.num("g", ch.g);
        rec.str("scenario", scenario_name(classify(p)));
        rec.warnings({});
        out.push_back(std::move(rec));
    }
    return out;
}

std::vector<Record> eval_bound(const RunConfig& cfg) {
    const ChannelParams& p = cfg.params;
    std::vector<std::string> warn;
    if (classify(p) == Scenario::Degenerate) warn.push_back("degenerate-channel");

    // energy_ks first: its no-bound gate subsumes the singular-coupling case
    const BoundState ks = energy_ks(cfg.mass, cfg.r0, p);
    const BoundState oracle = energy_ks_oracle(cfg.mass, cfg.r0, p);
    const ExtensionParam lam = lambda_for(cfg, p);
    double e_bg = std::numeric_limits<double>::quiet_NaN();
    try {
        e_bg = energy_bg(cfg.mass, lam).energy;
    } catch (const NoBoundState&) {
        warn.push_back("bg-no-bound-state");
    }

    Record rec;
    echo_common(rec, cfg, "bound");
    rec.integer("m", p.m);
    rec.num("mass", cfg.mass);
    rec.num("r0", cfg.r0);
    rec.str("lambda_mode", lambda_mode_name(cfg.lambda_mode));
    if (lam.infinite)
        rec.str("lambda", "infinite");
    else
        rec.num("lambda", lam.lambda);
    rec.num("nu", ks.channel.nu);
    rec.num("energy_ks", ks.energy);
    rec.num("energy_bg", e_bg);
    rec.num("energy_oracle", oracle.energy);
    rec.num("oracle_agreement",
            std::abs(oracle.energy - ks.energy) / std::abs(ks.energy));
    rec.warnings(warn);
    return {std::move(rec)};
}

std::vector<Record> eval_scatter(const RunConfig& cfg) {
    const ChannelParams& p = cfg.params;
    const ExtensionParam lam = lambda_for(cfg, p);
    const ScatterRecord sr = scatter_record(lam, p, cfg.k);

    std::vector<std::string> warn;
    if (sr.at_pole) warn.push_back("pole-at-k");

    Record rec;
    echo_common(rec, cfg, "scatter");
    rec.integer("m", p.m);
    rec.num("r0", cfg.r0);
    rec.str("lambda_mode", lambda_mode_name(cfg.lambda_mode));
    if (lam.infinite)
        rec.str("lambda", "infinite");
    else
        rec.num("lambda", lam.lambda);
    rec.num("nu", sr.channel.nu);
    rec.num("k", cfg.k);
    rec.num("mu", sr.mu);
    rec.num("delta", sr.delta);
    rec.num("s_re", sr.s_element.real());
    rec.num("s_im", sr.s_element.imag());
    rec.warnings(warn);
    return {std::move(rec)};
}

std::vector<Record> eval_amplitude(const RunConfig& cfg) {
    const ChannelParams& p = cfg.params;
    std::map<int, ExtensionParam> ext_map;
    for (int m : modified_channels(p.alpha, p.phi)) {
        ChannelParams q = p;
        q.m = m;
        ext_map.emplace(m, lambda_for(cfg, q));
    }
    const AmplitudeRequest req{cfg.k, cfg.theta, cfg.m_max, cfg.smoothing};
    const AmplitudeResult res = amplitude(req, p.alpha, p.phi, p.s, ext_map);

    std::vector<std::string> warn;
    if (res.truncation_warning) warn.push_back("truncation");
    if (res.forward_unreliable) warn.push_back("forward-unreliable");

    Record rec;
    echo_common(rec, cfg, "amplitude");
    rec.num("r0", cfg.r0);
    rec.str("lambda_mode", lambda_mode_name(cfg.lambda_mode));
    rec.num("k", cfg.k);
    rec.num("theta_sc", cfg.theta);
    rec.num("re_f", res.f.real());
    rec.num("im_f", res.f.imag());
    rec.num("dcs", std::norm(res.f));
    rec.warnings(warn);
    return {std::move(rec)};
}

std::vector<Record> eval_ho(const RunConfig& cfg) {
    const ChannelParams& p = cfg.params;
    const HoParams h{cfg.omega, cfg.mass, cfg.r0, p};
    const double nu = effective_channel(p).nu;

    std::vector<HoLevel> levels;
    if (cfg.lambda_mode == RunConfig::LambdaMode::Physical)
        levels = solve_ho_ks(h, cfg.levels);
    else
        levels = solve_ho_bg(h, lambda_for(cfg, p), cfg.levels);

    // the two printed boundary-parameter conventions and their ratio
    const ExtensionParam lam_ho = extension_param_ho(cfg.r0, p);
    const ExtensionParam lam_ab = extension_param(cfg.r0, p);
    const double ratio = (lam_ho.infinite || lam_ab.infinite)
                             ? std::numeric_limits<double>::quiet_NaN()
                             : lam_ab.lambda / lam_ho.lambda;

    std::vector<Record> out;
    for (const auto& level : levels) {
        Record rec;
        echo_common(rec, cfg, "ho");
        rec.integer("m", p.m);
        rec.num("mass", cfg.mass);
        rec.num("r0", cfg.r0);
        rec.num("omega", cfg.omega);
        rec.str("lambda_mode", lambda_mode_name(cfg.lambda_mode));
        rec.integer("n", level.n);
        rec.num("energy", level.energy);
        rec.num("energy_over_omega", level.energy / cfg.omega);
        rec.str("branch", branch_name(level.branch));
        rec.num("limit_regular", (2.0 * level.n + 1.0 + nu) * cfg.omega);
        rec.num("limit_irregular", (2.0 * level.n + 1.0 - nu) * cfg.omega);
        rec.num("lambda_ho", lam_ho.infinite
                                 ? std::numeric_limits<double>::quiet_NaN()
                                 : lam_ho.lambda);
        rec.num("lambda_ab", lam_ab.infinite
                                 ? std::numeric_limits<double>::quiet_NaN()
                                 : lam_ab.lambda);
        rec.num("lambda_ratio", ratio);
        rec.warnings({});
        out.push_back(std::move(rec));
    }
    return out;
}

std::vector<Record> eval_point(const RunConfig& cfg) {
    switch (cfg.command) {
        case RunConfig::Command::Channels: return eval_channels(cfg);
        case RunConfig::Command::Bound: return eval_bound(cfg);
        case RunConfig::Command::Scatter: return eval_scatter(cfg);
        case RunConfig::Command::Amplitude: return eval_amplitude(cfg);
        case RunConfig::Command::Ho: return eval_ho(cfg);
        default: return {};
    }
}

// Error placeholder with the same column layout as a good record.
std::vector<Record> error_point(const RunConfig& cfg, const Error& e) {
    std::vector<Record> good;
    // build the column layout from a template evaluation that cannot fail
    Record rec;
    switch (cfg.command) {
        case RunConfig::Command::Bound: {
            echo_common(rec, cfg, "bound");
            rec.integer("m", cfg.params.m);
            rec.num("mass", cfg.mass);
            rec.num("r0", cfg.r0);
            rec.str("lambda_mode", lambda_mode_name(cfg.lambda_mode));
            for (const char* key : {"lambda", "nu", "energy_ks", "energy_bg",
                                    "energy_oracle", "oracle_agreement"})
                rec.null(key);
            break;
        }
        case RunConfig::Command::Scatter: {
            echo_common(rec, cfg, "scatter");
            rec.integer("m", cfg.params.m);
            rec.num("r0", cfg.r0);
            rec.str("lambda_mode", lambda_mode_name(cfg.lambda_mode));
            for (const char* key : {"lambda", "nu"}) rec.null(key);
            rec.num("k", cfg.k);
            for (const char* key : {"mu", "delta", "s_re", "s_im"}) rec.null(key);
            break;
        }
        case RunConfig::Command::Amplitude: {
            echo_common(rec, cfg, "amplitude");
            rec.num("r0", cfg.r0);
            rec.str("lambda_mode", lambda_mode_name(cfg.lambda_mode));
            rec.num("k", cfg.k);
            rec.num("theta_sc", cfg.theta);
            for (const char* key : {"re_f", "im_f", "dcs"}) rec.null(key);
            break;
        }
        case RunConfig::Command::Ho: {
            echo_common(rec, cfg, "ho");
            rec.integer("m", cfg.params.m);
            rec.num("mass", cfg.mass);
            rec.num("r0", cfg.r0);
            rec.num("omega", cfg.omega);
            rec.str("lambda_mode", lambda_mode_name(cfg.lambda_mode));
            for (const char* key :
                 {"n", "energy", "energy_over_omega", "branch", "limit_regular",
                  "limit_irregular", "lambda_ho", "lambda_ab", "lambda_ratio"})
                rec.null(key);
            break;
        }
        default: {
            echo_common(rec, cfg, "channels");
            for (const char* key : {"m", "j", "nu", "g", "scenario"})
                rec.null(key);
            break;
        }
    }
    rec.warnings({std::string("error:") + error_name(e)});
    good.push_back(std::move(rec));
    return good;
}

size_t thread_budget() {
    size_t n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("ABCONE_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) n = static_cast<size_t>(v);
    }
    return n;
}

double sweep_value(const SweepSpec& sw, int i) {
    const double t = (sw.points == 1) ? 0.0
                                      : static_cast<double>(i) / (sw.points - 1);
    if (sw.log)
        return sw.min * std::pow(sw.max / sw.min, t);
    return sw.min + (sw.max - sw.min) * t;
}

void apply_sweep_var(RunConfig& cfg, const std::string& var, double value) {
    if (var == "k") cfg.k = value;
    else if (var == "theta") cfg.theta = value;
    else if (var == "r0") cfg.r0 = value;
    else if (var == "mass") cfg.mass = value;
    else if (var == "omega") cfg.omega = value;
    else if (var == "phi") cfg.params.phi = value;
    else if (var == "alpha") cfg.params.alpha = value;
}

int run_sweep(const RunConfig& cfg, RecordWriter& writer) {
    const SweepSpec& sw = *cfg.sweep;
    std::vector<std::vector<Record>> results(sw.points);
    std::atomic<int> next{0};
    const size_t workers =
        std::min(thread_budget(), static_cast<size_t>(sw.points));
    auto work = [&]() {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= sw.points) return;
            RunConfig point = cfg;
            apply_sweep_var(point, sw.var, sweep_value(sw, i));
            try {
                results[i] = eval_point(point);
            } catch (const Error& e) {
                results[i] = error_point(point, e);
            }
        }
    };
    std::vector<std::thread> pool;
    for (size_t t = 1; t < workers; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    for (const auto& point : results)
        for (const auto& rec : point) writer.write(rec);
    return 0;
}

}  // namespace

RunConfig parse_args(const std::vector<std::string>& args) {
    RunConfig cfg;
    std::string sweep_text;
    std::string output_text = "json";
    std::string lambda_text = "physical";

    CLI::App app{
        "abcone: bound states, phase shifts, S matrices and oscillator\n"
        "spectra for a spin-1/2 charged particle with an Aharonov-Bohm flux\n"
        "tube on a cone, with the contact spin-flux term handled through\n"
        "self-adjoint boundary conditions."};
    app.name("abcone");
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub, bool wants_channel_index) {
        sub->add_option("--alpha", cfg.params.alpha, "deficit parameter, in (0,1]")
            ->capture_default_str();
        sub->add_option("--phi", cfg.params.phi, "flux in units of the flux quantum")
            ->capture_default_str();
        sub->add_option("--spin", cfg.params.s, "twice the spin, +1 or -1")
            ->capture_default_str();
        if (wants_channel_index)
            sub->add_option("--m", cfg.params.m, "orbital index")
                ->capture_default_str();
        sub->add_option("--sweep", sweep_text,
                        "axis sweep var:min:max:points:linear|log over one of "
                        "k, theta, r0, mass, omega, phi, alpha");
        sub->add_option("--output", output_text, "json (newline-delimited) or csv")
            ->capture_default_str();
        sub->add_option("--out", cfg.out_path, "write records to this file");
        sub->add_option("--lambda-mode", lambda_text,
                        "physical | manual:<value> | dirichlet | infinite")
            ->capture_default_str();
    };

    auto* c_channels = app.add_subcommand(
        "channels", "list the channels requiring a boundary condition\n"
                    "columns: command,alpha,phi,spin,m,j,nu,g,scenario,warnings");
    add_common(c_channels, false);

    auto* c_bound = app.add_subcommand(
        "bound", "bound-state energy of one channel on all three routes\n"
                 "columns: command,alpha,phi,spin,m,mass,r0,lambda_mode,lambda,"
                 "nu,energy_ks,energy_bg,energy_oracle,oracle_agreement,warnings");
    add_common(c_bound, true);
    c_bound->add_option("--mass", cfg.mass, "particle mass")->capture_default_str();
    c_bound->add_option("--r0", cfg.r0, "flux-tube radius")->capture_default_str();

    auto* c_scatter = app.add_subcommand(
        "scatter", "phase shift and S-matrix element of one channel\n"
                   "columns: command,alpha,phi,spin,m,r0,lambda_mode,lambda,nu,"
                   "k,mu,delta,s_re,s_im,warnings");
    add_common(c_scatter, true);
    c_scatter->add_option("--r0", cfg.r0, "flux-tube radius")->capture_default_str();
    c_scatter->add_option("--k", cfg.k, "wavenumber")->capture_default_str();

    auto* c_amp = app.add_subcommand(
        "amplitude", "partial-wave scattering amplitude rows\n"
                     "columns: command,alpha,phi,spin,r0,lambda_mode,k,theta_sc,"
                     "re_f,im_f,dcs,warnings");
    add_common(c_amp, false);
    c_amp->add_option("--r0", cfg.r0, "flux-tube radius")->capture_default_str();
    c_amp->add_option("--k", cfg.k, "wavenumber")->capture_default_str();
    c_amp->add_option("--theta", cfg.theta, "scattering angle (radians)")
        ->capture_default_str();
    c_amp->add_option("--mmax", cfg.m_max, "partial-wave truncation")
        ->capture_default_str();
    c_amp->add_option("--smoothing", cfg.smoothing, "Abel factor t in (0,1]")
        ->capture_default_str();

    auto* c_ho = app.add_subcommand(
        "ho", "oscillator levels of one channel with limit diagnostics\n"
              "columns: command,alpha,phi,spin,m,mass,r0,omega,lambda_mode,n,"
              "energy,energy_over_omega,branch,limit_regular,limit_irregular,"
              "lambda_ho,lambda_ab,lambda_ratio,warnings");
    add_common(c_ho, true);
    c_ho->add_option("--mass", cfg.mass, "particle mass")->capture_default_str();
    c_ho->add_option("--r0", cfg.r0, "flux-tube radius")->capture_default_str();
    c_ho->add_option("--omega", cfg.omega, "oscillator frequency")
        ->capture_default_str();
    c_ho->add_option("--levels", cfg.levels, "number of levels")
        ->capture_default_str();

    app.add_subcommand("verify", "run the built-in verification suite");

    std::vector<const char*> argv;
    argv.push_back("abcone");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        std::ostringstream os;
        app.exit(e, os, os);
        throw UsageError{0, os.str()};
    } catch (const CLI::ParseError& e) {
        throw UsageError{2, std::string("argument error: ") + e.what() + "\n"};
    }

    if (c_channels->parsed()) cfg.command = RunConfig::Command::Channels;
    else if (c_bound->parsed()) cfg.command = RunConfig::Command::Bound;
    else if (c_scatter->parsed()) cfg.command = RunConfig::Command::Scatter;
    else if (c_amp->parsed()) cfg.command = RunConfig::Command::Amplitude;
    else if (c_ho->parsed()) cfg.command = RunConfig::Command::Ho;
    else cfg.command = RunConfig::Command::Verify;

    if (output_text == "json") cfg.output = RunConfig::Output::Json;
    else if (output_text == "csv") cfg.output = RunConfig::Output::Csv;
    else throw UsageError{2, "argument error: --output must be json or csv\n"};

    if (lambda_text == "physical") cfg.lambda_mode = RunConfig::LambdaMode::Physical;
    else if (lambda_text == "dirichlet") cfg.lambda_mode = RunConfig::LambdaMode::Dirichlet;
    else if (lambda_text == "infinite") cfg.lambda_mode = RunConfig::LambdaMode::Infinite;
    else if (lambda_text.rfind("manual:", 0) == 0) {
        cfg.lambda_mode = RunConfig::LambdaMode::Manual;
        char* end = nullptr;
        const std::string v = lambda_text.substr(7);
        cfg.lambda_manual = std::strtod(v.c_str(), &end);
        if (v.empty() || end != v.c_str() + v.size())
            throw UsageError{2, "argument error: bad manual lambda value\n"};
    } else {
        throw UsageError{2, "argument error: unknown --lambda-mode\n"};
    }

    if (!sweep_text.empty()) {
        SweepSpec sw;
        std::istringstream ss(sweep_text);
        std::string tok;
        std::vector<std::string> parts;
        while (std::getline(ss, tok, ':')) parts.push_back(tok);
        if (parts.size() != 5)
            throw UsageError{2, "argument error: sweep must be var:min:max:points:linear|log\n"};
        sw.var = parts[0];
        char* end = nullptr;
        sw.min = std::strtod(parts[1].c_str(), &end);
        if (end != parts[1].c_str() + parts[1].size())
            throw UsageError{2, "argument error: bad sweep min\n"};
        sw.max = std::strtod(parts[2].c_str(), &end);
        if (end != parts[2].c_str() + parts[2].size())
            throw UsageError{2, "argument error: bad sweep max\n"};
        sw.points = static_cast<int>(std::strtol(parts[3].c_str(), &end, 10));
        if (end != parts[3].c_str() + parts[3].size())
            throw UsageError{2, "argument error: bad sweep point count\n"};
        if (parts[4] == "linear") sw.log = false;
        else if (parts[4] == "log") sw.log = true;
        else throw UsageError{2, "argument error: sweep scale must be linear or log\n"};
        cfg.sweep = sw;
    }

    // physical validation (exit code 3)
    auto invalid = [](const std::string& why) {
        return UsageError{3, "invalid value: " + why + "\n"};
    };
    if (!(cfg.params.alpha > 0.0 && cfg.params.alpha <= 1.0))
        throw invalid("alpha must lie in (0,1]");
    if (cfg.params.s != 1 && cfg.params.s != -1)
        throw invalid("spin must be +1 or -1");
    if (!(cfg.r0 > 0.0)) throw invalid("r0 must be positive");
    if (!(cfg.mass > 0.0)) throw invalid("mass must be positive");
    if (!(cfg.omega > 0.0)) throw invalid("omega must be positive");
    if (!(cfg.k > 0.0)) throw invalid("k must be positive");
    if (cfg.levels < 1) throw invalid("levels must be >= 1");
    if (!(cfg.smoothing > 0.0 && cfg.smoothing <= 1.0))
        throw invalid("smoothing must lie in (0,1]");
    if (cfg.sweep) {
        const SweepSpec& sw = *cfg.sweep;
        if (sw.points < 2) throw invalid("sweep needs at least 2 points");
        if (sw.log && !(sw.min > 0.0)) throw invalid("log sweep needs min > 0");
        if (!(sw.min < sw.max)) throw invalid("sweep needs min < max");
        static const std::map<RunConfig::Command, std::vector<std::string>>
            allowed = {
                {RunConfig::Command::Channels, {"alpha", "phi"}},
                {RunConfig::Command::Bound, {"alpha", "phi", "r0", "mass"}},
                {RunConfig::Command::Scatter, {"alpha", "phi", "r0", "k"}},
                {RunConfig::Command::Amplitude,
                 {"alpha", "phi", "r0", "k", "theta"}},
                {RunConfig::Command::Ho,
                 {"alpha", "phi", "r0", "mass", "omega"}},
            };
        const auto it = allowed.find(cfg.command);
        if (it == allowed.end() ||
            std::find(it->second.begin(), it->second.end(), sw.var) ==
                it->second.end())
            throw invalid("sweep variable '" + sw.var +
                          "' not supported by this command");
    }

    // amplitude defaults to an angle sweep so that it emits rows
    if (cfg.command == RunConfig::Command::Amplitude && !cfg.sweep)
        cfg.sweep = SweepSpec{"theta", -3.0, 3.0, 25, false};

    return cfg;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.command == RunConfig::Command::Verify) {
        const int failures = acceptance::run_and_report(out);
        if (failures > 0) {
            err << failures << " criterion(s) failed\n";
            return 1;
        }
        return 0;
    }

    RecordWriter writer(cfg.output, out);
    if (cfg.sweep) return run_sweep(cfg, writer);

    try {
        for (const auto& rec : eval_point(cfg)) writer.write(rec);
    } catch (const Error& e) {
        for (const auto& rec : error_point(cfg, e)) writer.write(rec);
        err << "computation error: " << error_name(e) << ": " << e.what()
            << "\n";
        return 1;
    }
    return 0;
}

}  // namespace abcone::cli
