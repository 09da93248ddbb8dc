// Command-line front end: parameter sweeps written as CSV.

#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "quenchfloq/cli/commands.hpp"
#include "quenchfloq/linalg.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

using Command = quenchfloq::cli::CommandResult (*)(const quenchfloq::cli::SweepConfig&);

struct Flags {
    std::optional<std::string> config_path;
    std::map<std::string, std::optional<std::string>> overrides;  // flag name -> value
};

// Flag name, config key, help text.
const struct {
    const char* flag;
    const char* key;
    const char* help;
} kFlagKeys[] = {
    {"--model", "model.name", "lmg | atom-diatom"},
    {"--n", "model.n", "LMG particle number N (even)"},
    {"--m", "model.m", "atom-diatom atom number M (even)"},
    {"--period", "sweep.period", "driving period T in units of 1/Omega"},
    {"--points", "sweep.points", "samples of xi or t0/T over [0, 1]"},
    {"--slices", "sweep.slices", "comma-separated t0/T values for correlator slices"},
    {"--zone", "sweep.zone", "restricted | extended"},
    {"--threads", "run.threads", "worker threads"},
    {"--out", "output.dir", "output directory"},
    {"--seed", "run.seed", "seed for randomized utilities"},
};

void add_flags(CLI::App* sub, Flags& flags) {
    sub->add_option("--config", flags.config_path, "config file with section.key = value lines");
    for (const auto& f : kFlagKeys) sub->add_option(f.flag, flags.overrides[f.flag], f.help);
}

int run(Command command, const Flags& flags) {
    using namespace quenchfloq::cli;
    try {
        KeyValues kv = flags.config_path ? load_config_file(*flags.config_path) : KeyValues{};
        for (const auto& f : kFlagKeys) {
            const auto& v = flags.overrides.at(f.flag);
            if (v) kv.set(f.key, *v, f.flag);
        }
        const auto config = build_config(kv);
        const auto result = command(config);
        write_outputs(config.output_dir, result.files);
        std::cout << result.report;
        for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
        return 0;
    } catch (const quenchfloq::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
}

}  // namespace

int main(int argc, char** argv) {
    using namespace quenchfloq::cli;
    CLI::App app{"Floquet spectra and phase-transition markers for periodically quenched Hamiltonians"};
    app.require_subcommand(1);

    const std::pair<const char*, const char*> descriptions[] = {
        {"static", "excitation energies of xi*H2 + (1-xi)*H1 over xi in [0, 1]"},
        {"floquet", "quasienergies, mean energies and geometric phases over t0/T"},
        {"correlator", "two-time correlator over t0/T plus fixed-t0 slices"},
        {"deviation", "maximum deviation from the static spectrum over a range of periods"},
        {"info", "characteristic times and first-zone condition"},
    };
    const Command commands[] = {cmd_static, cmd_floquet, cmd_correlator, cmd_deviation, cmd_info};

    Flags flags;
    std::vector<CLI::App*> subs;
    for (const auto& [name, help] : descriptions) {
        subs.push_back(app.add_subcommand(name, help));
        add_flags(subs.back(), flags);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }
    for (std::size_t k = 0; k < subs.size(); ++k) {
        if (subs[k]->parsed()) return run(commands[k], flags);
    }
    return kExitConfig;
}
