#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qnd/bell_operator.hpp"
#include "qnd/bell_qnd.hpp"
#include "qnd/ghz_qnd.hpp"
#include "qnd/qsatm.hpp"
#include "qnd/random.hpp"
#include "qnd/state_io.hpp"

namespace qnd::cli {
namespace {

using nlohmann::json;

// Bad flag values found after CLI11 accepted the syntax.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct BellOptions {
    std::string input;
    std::string convention = "paper";
    std::uint64_t seed = 0;
    std::string out = "json";
};

struct GhzOptions {
    int n = 0;
    std::string label;
    std::string convention = "paper";
    std::uint64_t seed = 0;
    bool random_input = false;
    std::string out = "json";
};

struct BellopOptions {
    int n = 0;
    std::string spec_file;
    bool eigen = false;
    std::string out = "json";
};

struct AuthOptions {
    int pairs = 0;
    std::uint64_t trials = 1000;
    std::string attacker = "legitimate";
    std::string noise = "none";
    double p = 0.0;
    double threshold = 1.0;
    std::uint64_t seed = 0;
    std::string out = "json";
    bool sweep = false;
};

HadamardConvention parse_convention(const std::string &text) {
    return text == "standard" ? HadamardConvention::Standard : HadamardConvention::Paper;
}

// Shortest text that round-trips.
std::string format_double(double v) {
    char buf[32];
    const auto result = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, result.ptr);
}

// Solver noise below this prints as zero.
double clean(double v) { return std::abs(v) < 1e-12 ? 0.0 : v; }

void emit_json(std::ostream &out, const json &doc, const std::string &format) {
    if (format == "pretty") {
        out << doc.dump(2) << "\n";
    } else {
        out << doc.dump() << "\n";
    }
}

// --- bell -----------------------------------------------------------------

void check_bell_input(const std::string &input) {
    try {
        parse_bell_label(input);
        return;
    } catch (const std::invalid_argument &) {
    }
    if (!std::filesystem::is_regular_file(input)) {
        throw UsageError("--input must be phi+, phi-, psi+, psi- or an existing state file, got '" + input + "'");
    }
}

int run_bell(const BellOptions &o, std::ostream &out) {
    StateVector input = [&] {
        try {
            return bell_state(parse_bell_label(o.input));
        } catch (const std::invalid_argument &) {
            return load_state_file(o.input);
        }
    }();
    Rng rng(o.seed);
    const std::array<double, 2> draws{uniform_draw(rng), uniform_draw(rng)};
    const auto r = run_bell_qnd(input, parse_convention(o.convention), draws);
    json doc{{"parity", r.parity_bit}, {"phase", r.phase_bit}, {"label", to_string(r.label)},
             {"probability", r.probability}};
    emit_json(out, doc, o.out);
    return kExitOk;
}

// --- ghz ------------------------------------------------------------------

void check_ghz(const GhzOptions &o) {
    if (o.n < 2 || o.n > kMaxGhzParties) {
        throw UsageError("--n must be in [2, 8]");
    }
    if (!o.random_input) {
        if (o.label.empty()) {
            throw UsageError("--label is required unless --random-input is given");
        }
        GhzLabel label;
        try {
            label = parse_ghz_label(o.label);
        } catch (const std::invalid_argument &e) {
            throw UsageError(e.what());
        }
        if (label.num_qubits() != o.n) {
            throw UsageError("--label has " + std::to_string(label.num_qubits()) + " bits but --n is " +
                             std::to_string(o.n));
        }
        if (!label.is_canonical()) {
            throw UsageError("--label must be canonical (first bit 1), e.g. " + to_string(canonicalize(label)));
        }
    }
}

int run_ghz(const GhzOptions &o, std::ostream &out) {
    Rng rng(o.seed);
    const StateVector input = o.random_input ? random_state(o.n, rng) : ghz_state(parse_ghz_label(o.label));
    std::vector<double> draws;
    for (int i = 0; i < o.n; ++i) {
        draws.push_back(uniform_draw(rng));
    }
    const auto r = run_ghz_qnd(input, parse_convention(o.convention), draws);
    std::vector<int> parity(r.part_parity_bits.begin(), r.part_parity_bits.end());
    json doc{{"part_parity", parity},
             {"global_parity", r.global_parity_bit},
             {"label", to_string(r.label)},
             {"probability", r.probability}};
    emit_json(out, doc, o.out);
    return kExitOk;
}

// --- bellop ---------------------------------------------------------------

Vec3 read_vec3(const json &j) {
    if (!j.is_array() || j.size() != 3) {
        throw std::invalid_argument("direction must be a 3-element array");
    }
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

BellOperatorSpec load_spec(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open spec file " + path);
    }
    json doc;
    in >> doc;
    BellOperatorSpec spec;
    for (const auto &entry : doc.at("directions")) {
        spec.particles.push_back({read_vec3(entry.at("a")), read_vec3(entry.at("a_prime"))});
    }
    return spec;
}

int run_bellop(const BellopOptions &o, std::ostream &out) {
    const BellOperatorSpec spec = o.spec_file.empty() ? canonical_bell_spec(o.n) : load_spec(o.spec_file);
    if (spec.num_particles() != o.n) {
        throw std::invalid_argument("spec has " + std::to_string(spec.num_particles()) + " direction pairs, --n is " +
                                    std::to_string(o.n));
    }
    const auto observable = bell_operator(spec);
    json doc{{"n", o.n},
             {"dimension", observable.dimension()},
             {"hermiticity_error", observable.hermiticity_error()},
             {"spectral_radius", spectral_radius(observable)}};
    if (o.eigen) {
        const auto s = spectrum(observable);
        json values = json::array();
        for (Eigen::Index i = s.eigenvalues.size() - 1; i >= 0; --i) {
            values.push_back(clean(s.eigenvalues[i]));
        }
        const auto top = eigenvector_state(s, s.eigenvalues.size() - 1);
        json overlaps = json::array();
        for (const auto &label : all_canonical_ghz_labels(o.n)) {
            overlaps.push_back({{"label", to_string(label)},
                                {"fidelity", clean(fidelity_up_to_global_phase(ghz_state(label), top))}});
        }
        doc["eigenvalues"] = std::move(values);
        doc["top_eigenvalue"] = clean(s.eigenvalues[s.eigenvalues.size() - 1]);
        doc["top_eigenvector_ghz_overlaps"] = std::move(overlaps);
    }
    emit_json(out, doc, o.out);
    return kExitOk;
}

// --- auth simulate --------------------------------------------------------

void check_auth(const AuthOptions &o) {
    if (o.pairs < 1) {
        throw UsageError("--pairs must be >= 1");
    }
    if (o.trials < 1) {
        throw UsageError("--trials must be >= 1");
    }
    if (!(o.p >= 0.0 && o.p <= 1.0)) {
        throw UsageError("--p must lie in [0, 1]");
    }
    if (!(o.threshold >= 0.0 && o.threshold <= 1.0)) {
        throw UsageError("--threshold must lie in [0, 1]");
    }
}

int run_auth(const AuthOptions &o, std::ostream &out) {
    SweepConfig config;
    config.attacker = parse_attacker(o.attacker);
    config.noise = {parse_noise_model(o.noise), o.p};
    config.threshold = o.threshold;
    config.trials = o.trials;
    config.seed = o.seed;

    std::vector<int> ns;
    for (int n = o.sweep ? 1 : o.pairs; n <= o.pairs; ++n) {
        ns.push_back(n);
    }
    const auto rows = security_sweep(ns, config);

    if (o.out == "csv") {
        out << "n,attacker,noise,p,trials,accept_rate,analytic_rate,wilson_low,wilson_high\n";
        for (const auto &r : rows) {
            out << r.n << ',' << o.attacker << ',' << o.noise << ',' << format_double(o.p) << ',' << r.trials << ','
                << format_double(r.empirical_accept_rate) << ',' << format_double(r.analytic_rate) << ','
                << format_double(r.wilson.low) << ',' << format_double(r.wilson.high) << "\n";
        }
        return kExitOk;
    }
    if (o.out == "pretty") {
        out << std::left << std::setw(4) << "n" << std::setw(14) << "accept_rate" << std::setw(16) << "analytic_rate"
            << "wilson_99.7%\n";
        for (const auto &r : rows) {
            out << std::setw(4) << r.n << std::setw(14) << r.empirical_accept_rate << std::setw(16) << r.analytic_rate
                << "[" << r.wilson.low << ", " << r.wilson.high << "]\n";
        }
        return kExitOk;
    }
    auto row_json = [&](const SweepRow &r) {
        return json{{"n", r.n},
                    {"attacker", o.attacker},
                    {"noise", o.noise},
                    {"p", o.p},
                    {"trials", r.trials},
                    {"accept_rate", r.empirical_accept_rate},
                    {"analytic_rate", r.analytic_rate},
                    {"wilson_low", r.wilson.low},
                    {"wilson_high", r.wilson.high}};
    };
    if (o.sweep) {
        json list = json::array();
        for (const auto &r : rows) {
            list.push_back(row_json(r));
        }
        out << json{{"rows", std::move(list)}}.dump() << "\n";
    } else {
        out << row_json(rows.front()).dump() << "\n";
    }
    return kExitOk;
}

}  // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Quantum non-demolition measurement networks for Bell and GHZ states, and a simulated "
                 "entanglement-based ATM authentication protocol.",
                 "qnd"};
    app.require_subcommand(1);

    BellOptions bell_opts;
    auto *bell = app.add_subcommand("bell", "Run the Bell-state QND network on one input and decode the ancillas");
    bell->add_option("--input", bell_opts.input, "phi+, phi-, psi+, psi- or a JSON state file")->required();
    bell->add_option("--convention", bell_opts.convention, "Hadamard convention")
        ->check(CLI::IsMember({"paper", "standard"}))
        ->capture_default_str();
    bell->add_option("--seed", bell_opts.seed, "Seed for the ancilla readout draws")->capture_default_str();
    bell->add_option("--out", bell_opts.out, "Output format")
        ->check(CLI::IsMember({"json", "pretty"}))
        ->capture_default_str();

    GhzOptions ghz_opts;
    auto *ghz = app.add_subcommand("ghz", "Run the n-partite GHZ QND network");
    ghz->add_option("--n", ghz_opts.n, "Number of parties (2..8)")->required();
    ghz->add_option("--label", ghz_opts.label, "Canonical GHZ label such as +:10110");
    ghz->add_flag("--random-input", ghz_opts.random_input, "Use a seeded random n-qubit state instead of --label");
    ghz->add_option("--convention", ghz_opts.convention, "Hadamard convention")
        ->check(CLI::IsMember({"paper", "standard"}))
        ->capture_default_str();
    ghz->add_option("--seed", ghz_opts.seed, "Seed for the random input and readout draws")->capture_default_str();
    ghz->add_option("--out", ghz_opts.out, "Output format")
        ->check(CLI::IsMember({"json", "pretty"}))
        ->capture_default_str();

    BellopOptions bellop_opts;
    auto *bellop = app.add_subcommand("bellop", "Build the Bell operator B_n and report its spectrum");
    bellop->add_option("--n", bellop_opts.n, "Number of particles (2..8)")
        ->required()
        ->check(CLI::Range(2, 8));
    bellop->add_option("--spec", bellop_opts.spec_file,
                       "JSON file {\"directions\": [{\"a\": [x,y,z], \"a_prime\": [x,y,z]}, ...]}; "
                       "canonical setting when omitted");
    bellop->add_flag("--eigen", bellop_opts.eigen, "Report eigenvalues and top-eigenvector GHZ overlaps");
    bellop->add_option("--out", bellop_opts.out, "Output format")
        ->check(CLI::IsMember({"json", "pretty"}))
        ->capture_default_str();

    AuthOptions auth_opts;
    auto *auth = app.add_subcommand("auth", "Quantum ATM authentication simulations");
    auth->require_subcommand(1);
    auto *simulate = auth->add_subcommand("simulate", "Monte-Carlo acceptance rate of verification sessions");
    simulate->add_option("--pairs", auth_opts.pairs, "Bell pairs per account")->required();
    simulate->add_option("--trials", auth_opts.trials, "Sessions to simulate")->capture_default_str();
    simulate->add_option("--attacker", auth_opts.attacker, "Who presents the card")
        ->check(CLI::IsMember({"legitimate", "fresh-zero", "fresh-haar", "decoy", "guess"}))
        ->capture_default_str();
    simulate->add_option("--noise", auth_opts.noise, "Noise channel on both qubits of each pair")
        ->check(CLI::IsMember({"none", "depolarizing", "dephasing"}))
        ->capture_default_str();
    simulate->add_option("--p", auth_opts.p, "Per-qubit noise probability")->capture_default_str();
    simulate->add_option("--threshold", auth_opts.threshold, "Minimum matching fraction to accept")
        ->capture_default_str();
    simulate->add_option("--seed", auth_opts.seed, "Root seed; trial t uses seed + t")->capture_default_str();
    simulate->add_option("--out", auth_opts.out, "Output format")
        ->check(CLI::IsMember({"json", "csv", "pretty"}))
        ->capture_default_str();
    simulate->add_flag("--sweep", auth_opts.sweep, "Report every n from 1 to --pairs");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        if (*bell) {
            check_bell_input(bell_opts.input);
        } else if (*ghz) {
            check_ghz(ghz_opts);
        } else if (*simulate) {
            check_auth(auth_opts);
        }
    } catch (const UsageError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (*bell) {
            return run_bell(bell_opts, out);
        }
        if (*ghz) {
            return run_ghz(ghz_opts, out);
        }
        if (*bellop) {
            return run_bellop(bellop_opts, out);
        }
        return run_auth(auth_opts, out);
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}

}  // namespace qnd::cli
