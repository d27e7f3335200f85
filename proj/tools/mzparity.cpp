// Command-line front end: builds benchmark states (or loads them from JSON),
// runs sensitivity scans, symmetry checks, bias-phase reports, and the full
// verification suite. Exit codes: 0 success, 1 verification failure, 2 usage
// or domain errors.

#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mzparity/io.hpp"
#include "mzparity/states.hpp"
#include "mzparity/verify.hpp"

namespace {

using namespace mzparity;

std::string normalize_name(std::string s) {
    std::string out;
    for (char c : s)
        if (c != '-' && c != '_') out.push_back(char(std::tolower(static_cast<unsigned char>(c))));
    return out;
}

struct SpecParams {
    std::optional<std::string> bare;
    std::map<std::string, std::string> named;

    double number(const std::string& key, std::optional<double> fallback = std::nullopt) const {
        auto it = named.find(key);
        if (it == named.end()) {
            if (fallback) return *fallback;
            throw std::invalid_argument("state spec is missing parameter \"" + key + "\"");
        }
        size_t used = 0;
        const double v = std::stod(it->second, &used);
        if (used != it->second.size())
            throw std::invalid_argument("state spec parameter \"" + key + "\" is not a number");
        return v;
    }

    int integer(const std::string& key, std::optional<int> fallback = std::nullopt) const {
        const double v = number(key, fallback ? std::optional<double>(*fallback) : std::nullopt);
        if (v != int(v))
            throw std::invalid_argument("state spec parameter \"" + key + "\" must be an integer");
        return int(v);
    }
};

SpecParams parse_params(const std::string& text) {
    SpecParams p;
    size_t pos = 0;
    while (pos < text.size()) {
        size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        const std::string piece = text.substr(pos, comma - pos);
        const size_t eq = piece.find('=');
        if (eq == std::string::npos) {
            if (p.bare || !p.named.empty())
                throw std::invalid_argument("state spec has a stray bare parameter \"" + piece + "\"");
            p.bare = piece;
        } else {
            p.named[piece.substr(0, eq)] = piece.substr(eq + 1);
        }
        pos = comma + 1;
    }
    return p;
}

// State mini-language, documented in --help:
//   noon:N                                  N-photon path-entangled state
//   twinfock:N                              |N,N> input
//   tmsv:r=R[,max_n=M]                      two-mode squeezed vacuum
//   pair:zeta=Z[,zeta_arg=T][,max_n=M]      pair-coherent state
//   cohsq:alpha=A,zeta=Z[,alpha_arg=T][,zeta_arg=T][,max_n=M]
// Bare single values are allowed where unambiguous (noon:3, tmsv:0.5).
TwoModeState build_from_spec(const std::string& spec) {
    const size_t colon = spec.find(':');
    const std::string name = normalize_name(spec.substr(0, colon));
    SpecParams params =
        colon == std::string::npos ? SpecParams{} : parse_params(spec.substr(colon + 1));

    if (name == "noon") {
        if (!params.bare) throw std::invalid_argument("usage: noon:N");
        return noon(std::stoi(*params.bare));
    }
    if (name == "twinfock") {
        if (!params.bare) throw std::invalid_argument("usage: twinfock:N");
        return twin_fock(std::stoi(*params.bare));
    }
    if (name == "tmsv") {
        if (params.bare) params.named["r"] = *params.bare;
        Truncation tr{params.integer("max_n", 60), 1e-12, 0.0};
        return two_mode_squeezed_vacuum(params.number("r"), tr);
    }
    if (name == "pair" || name == "paircoherent") {
        if (params.bare) params.named["zeta"] = *params.bare;
        Truncation tr{params.integer("max_n", 40), 1e-12, 0.0};
        const Complex zeta = std::polar(params.number("zeta"), params.number("zeta_arg", 0.0));
        return pair_coherent(zeta, tr);
    }
    if (name == "cohsq" || name == "coherentsqueezed") {
        Truncation tr{params.integer("max_n", 60), 1e-12, 0.0};
        const Complex alpha = std::polar(params.number("alpha"), params.number("alpha_arg", 0.0));
        const Complex zeta = std::polar(params.number("zeta"), params.number("zeta_arg", 0.0));
        return coherent_times_squeezed_vacuum(alpha, zeta, tr);
    }
    throw std::invalid_argument("unknown state \"" + spec +
                                "\"; known: noon, twinfock, tmsv, pair, cohsq");
}

struct StateArgs {
    std::string spec;
    std::string file;

    TwoModeState load() const {
        if (spec.empty() == file.empty())
            throw std::invalid_argument("provide exactly one of --state or --state-file");
        TwoModeState state = spec.empty() ? state_from_json(read_text_file(file)) : build_from_spec(spec);
        // metrology and symmetry operate between the splitters; inputs are
        // sent through the first type I splitter here
        if (state.stage == Stage::Input) state = to_internal(state, MziKind::TypeI);
        return state;
    }
};

std::string resolve_output_path(const std::string& path) {
    namespace fs = std::filesystem;
    const char* dir = std::getenv("MZPARITY_OUTPUT_DIR");
    if (dir && *dir && fs::path(path).is_relative()) return (fs::path(dir) / path).string();
    return path;
}

void emit(const std::string& output_path, const std::string& text) {
    if (output_path.empty())
        std::cout << text;
    else
        write_text_file(resolve_output_path(output_path), text);
}

struct PhiRange {
    double lo = 0.0;
    double hi = 2.0 * pi;
    int points = 721;
};

PhiRange parse_phi_range(const std::string& text) {
    PhiRange r;
    const size_t c1 = text.find(':');
    const size_t c2 = text.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw std::invalid_argument("--phi expects MIN:MAX:POINTS, e.g. 0:6.2832:721");
    try {
        r.lo = std::stod(text.substr(0, c1));
        r.hi = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
        r.points = std::stoi(text.substr(c2 + 1));
    } catch (const std::exception&) {
        throw std::invalid_argument("--phi expects numeric MIN:MAX:POINTS");
    }
    if (r.points < 1) throw std::invalid_argument("--phi needs at least one point");
    if (r.points > 1 && !(r.lo < r.hi))
        throw std::invalid_argument("--phi needs MIN < MAX when POINTS > 1");
    return r;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Mach-Zehnder parity phase estimation toolkit.\n"
        "States are given either as --state-file JSON or with --state specs:\n"
        "  noon:N | twinfock:N | tmsv:r=R[,max_n=M] | pair:zeta=Z[,zeta_arg=T][,max_n=M]\n"
        "  cohsq:alpha=A,zeta=Z[,alpha_arg=T][,zeta_arg=T][,max_n=M]\n"
        "Angles are radians. Input-stage states pass through the first 50:50\n"
        "splitter (type I) before any analysis. Relative --output paths are\n"
        "resolved against $MZPARITY_OUTPUT_DIR when it is set."};
    app.require_subcommand(1);

    StateArgs state_args;
    std::string output_path;
    std::string format = "csv";
    std::string phi_text;
    double sym_tol = kDefaultSymmetryTol;
    double claim_tol = kDefaultClaimTol;
    int max_n = 8;

    auto add_state_options = [&](CLI::App* cmd) {
        cmd->add_option("--state", state_args.spec, "state spec in the mini-language");
        cmd->add_option("--state-file", state_args.file, "path to a state JSON document");
        cmd->add_option("--output", output_path, "write the result to this file instead of stdout");
    };

    CLI::App* scan_cmd = app.add_subcommand("scan", "parity signal and sensitivity over a phase grid");
    add_state_options(scan_cmd);
    scan_cmd->add_option("--phi", phi_text, "phase grid MIN:MAX:POINTS (default 0:2pi:721)");
    scan_cmd->add_option("--format", format, "csv or json (default csv)")
        ->check(CLI::IsMember({"csv", "json"}));

    CLI::App* qcrb_cmd = app.add_subcommand("qcrb", "print the quantum Cramer-Rao bound 1/(2 dJz)");
    add_state_options(qcrb_cmd);

    CLI::App* sym_cmd = app.add_subcommand("check-symmetry", "path-symmetry report as JSON");
    add_state_options(sym_cmd);
    sym_cmd->add_option("--tol", sym_tol, "residual tolerance (default 1e-9)");

    CLI::App* bias_cmd = app.add_subcommand("bias", "closed-form bias phase and sweet spot as JSON");
    add_state_options(bias_cmd);
    bias_cmd->add_option("--tol", claim_tol, "claim tolerance at the sweet spot (default 1e-8)");

    CLI::App* verify_cmd =
        app.add_subcommand("verify", "run the built-in theorem suite; nonzero exit on failure");
    verify_cmd->add_option("--max-n", max_n,
                           "largest sector fed to the occupation-basis oracle (default 8)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (scan_cmd->parsed()) {
            const PhiRange r = phi_text.empty() ? PhiRange{} : parse_phi_range(phi_text);
            const SensitivityScan scan =
                sensitivity_scan(state_args.load(), linspace(r.lo, r.hi, r.points));
            emit(output_path, format == "csv" ? scan_to_csv(scan) : scan_to_json(scan));
        } else if (qcrb_cmd->parsed()) {
            emit(output_path, format17(qcrb(state_args.load())) + "\n");
        } else if (sym_cmd->parsed()) {
            emit(output_path, symmetry_report_to_json(check(state_args.load(), sym_tol)) + "\n");
        } else if (bias_cmd->parsed()) {
            emit(output_path, bias_report_to_json(bias_phase(state_args.load(), claim_tol)) + "\n");
        } else if (verify_cmd->parsed()) {
            return run_verification(std::cout, max_n) ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
