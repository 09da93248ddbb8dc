#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "quenchfloq/analysis.hpp"
#include "quenchfloq/models.hpp"

namespace quenchfloq::cli {

/// Invalid or unreadable configuration. The message names the offending key.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ModelKind { lmg, atom_diatom };

/// Raw `section.key = value` assignments with where each one came from
/// ("file.cfg:12" or "--period").
struct KeyValues {
    struct Entry {
        std::string value;
        std::string origin;
    };
    std::map<std::string, Entry> entries;

    void set(const std::string& key, std::string value, std::string origin);
};

/// Keys accepted in config files, in documentation order.
const std::vector<std::string_view>& known_keys();

/// Parses `section.key = value` lines; `#` starts a comment.
KeyValues parse_config_text(std::string_view text, std::string_view source);
KeyValues load_config_file(const std::filesystem::path& path);

struct SweepConfig {
    ModelKind model = ModelKind::lmg;
    LmgParams lmg;
    AtomDiatomParams atom_diatom;

    double period = 1.0;                       // T in 1/Omega
    int points = 201;                          // xi or t0/T samples over [0, 1]
    std::vector<double> slices = {0.1, 0.4, 0.6};
    ZonePolicy zone = ZonePolicy::restricted;

    double t_min = 0.1;                        // deviation sweep range, 1/Omega
    double t_max = 4.5;
    int t_points = 60;
    bool log_spacing = false;
    int t0_points = 201;                       // t0 grid per deviation sample

    int threads = 1;
    std::uint64_t seed = 0;
    std::filesystem::path output_dir = ".";

    ModelPair build_pair() const;
    std::string model_name() const;
};

/// Applies defaults, converts and validates. Throws ConfigError.
SweepConfig build_config(const KeyValues& kv);

}  // namespace quenchfloq::cli
