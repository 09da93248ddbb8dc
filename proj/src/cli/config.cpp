#include "quenchfloq/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace quenchfloq::cli {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(const std::string& key, const KeyValues::Entry& e, const std::string& why) {
    throw ConfigError(e.origin + ": " + key + " = '" + e.value + "': " + why);
}

class Reader {
public:
    explicit Reader(const KeyValues& kv) : kv_(kv) {}

    const KeyValues::Entry* find(const std::string& key) const {
        const auto it = kv_.entries.find(key);
        return it == kv_.entries.end() ? nullptr : &it->second;
    }

    double real(const std::string& key, double fallback) const {
        const auto* e = find(key);
        if (!e) return fallback;
        double v = 0.0;
        const auto& s = e->value;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size()) fail(key, *e, "expected a number");
        if (!std::isfinite(v)) fail(key, *e, "expected a finite number");
        return v;
    }

    long long integer(const std::string& key, long long fallback) const {
        const auto* e = find(key);
        if (!e) return fallback;
        long long v = 0;
        const auto& s = e->value;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size()) fail(key, *e, "expected an integer");
        return v;
    }

    std::string text(const std::string& key, std::string fallback) const {
        const auto* e = find(key);
        return e ? e->value : fallback;
    }

private:
    const KeyValues& kv_;
};

void require(bool ok, const Reader& r, const std::string& key, const std::string& why) {
    if (ok) return;
    if (const auto* e = r.find(key)) fail(key, *e, why);
    throw ConfigError("default " + key + ": " + why);
}

}  // namespace

void KeyValues::set(const std::string& key, std::string value, std::string origin) {
    entries[key] = Entry{std::move(value), std::move(origin)};
}

const std::vector<std::string_view>& known_keys() {
    static const std::vector<std::string_view> keys = {
        "model.name",      "model.n",          "model.omega",     "model.m",
        "model.omega0",    "model.omega_diatom", "model.coupling",
        "sweep.period",    "sweep.points",     "sweep.slices",    "sweep.zone",
        "deviation.t_min", "deviation.t_max",  "deviation.t_points", "deviation.spacing",
        "deviation.t0_points",
        "run.threads",     "run.seed",         "output.dir",
    };
    return keys;
}

KeyValues parse_config_text(std::string_view text, std::string_view source) {
    KeyValues kv;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto end = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const std::string where = std::string(source) + ":" + std::to_string(line_no);
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError(where + ": expected 'section.key = value'");
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (key.find('.') == std::string::npos) throw ConfigError(where + ": key '" + key + "' has no section");
        const auto& known = known_keys();
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw ConfigError(where + ": unknown key '" + key + "'");
        }
        if (value.empty()) throw ConfigError(where + ": " + key + " has no value");
        if (kv.entries.count(key)) {
            throw ConfigError(where + ": " + key + " already set at " + kv.entries[key].origin);
        }
        kv.set(key, value, where);
        if (end == text.size()) break;
    }
    return kv;
}

KeyValues load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path.string() + ": cannot open config file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path.string());
}

ModelPair SweepConfig::build_pair() const {
    return model == ModelKind::lmg ? lmg_pair(lmg) : atom_diatom_pair(atom_diatom);
}

std::string SweepConfig::model_name() const { return model == ModelKind::lmg ? "lmg" : "atom-diatom"; }

SweepConfig build_config(const KeyValues& kv) {
    const Reader r(kv);
    SweepConfig c;

    const auto name = r.text("model.name", "lmg");
    if (name == "lmg") {
        c.model = ModelKind::lmg;
    } else if (name == "atom-diatom" || name == "atom_diatom") {
        c.model = ModelKind::atom_diatom;
    } else {
        fail("model.name", *r.find("model.name"), "expected lmg or atom-diatom");
    }

    c.lmg.n = static_cast<int>(r.integer("model.n", c.lmg.n));
    c.lmg.omega = r.real("model.omega", c.lmg.omega);
    require(c.lmg.n >= 2 && c.lmg.n % 2 == 0 && c.lmg.n <= 4000, r, "model.n", "must be even, in [2, 4000]");
    require(c.lmg.omega > 0.0, r, "model.omega", "must be positive");

    c.atom_diatom.m = static_cast<int>(r.integer("model.m", c.atom_diatom.m));
    c.atom_diatom.omega0 = r.real("model.omega0", c.atom_diatom.omega0);
    c.atom_diatom.omega = r.real("model.omega_diatom", c.atom_diatom.omega);
    c.atom_diatom.coupling = r.real("model.coupling", c.atom_diatom.coupling);
    require(c.atom_diatom.m >= 2 && c.atom_diatom.m % 2 == 0 && c.atom_diatom.m <= 8000, r, "model.m",
            "must be even, in [2, 8000]");
    require(c.atom_diatom.coupling > 0.0, r, "model.coupling", "must be positive");

    c.period = r.real("sweep.period", c.period);
    require(c.period > 0.0, r, "sweep.period", "must be positive");
    c.points = static_cast<int>(r.integer("sweep.points", c.points));
    require(c.points >= 2 && c.points <= 1000000, r, "sweep.points", "must be in [2, 1000000]");

    if (const auto* e = r.find("sweep.slices")) {
        c.slices.clear();
        std::string_view rest = e->value;
        while (true) {
            const auto comma = rest.find(',');
            const auto item = trim(rest.substr(0, comma));
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
            if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
                fail("sweep.slices", *e, "expected comma-separated numbers");
            }
            if (!(v >= 0.0 && v <= 1.0)) fail("sweep.slices", *e, "each slice must lie in [0, 1]");
            c.slices.push_back(v);
            if (comma == std::string_view::npos) break;
            rest = rest.substr(comma + 1);
        }
    }

    const auto zone = r.text("sweep.zone", "restricted");
    if (zone == "restricted") {
        c.zone = ZonePolicy::restricted;
    } else if (zone == "extended") {
        c.zone = ZonePolicy::extended;
    } else {
        fail("sweep.zone", *r.find("sweep.zone"), "expected restricted or extended");
    }

    c.t_min = r.real("deviation.t_min", c.t_min);
    c.t_max = r.real("deviation.t_max", c.t_max);
    require(c.t_min > 0.0, r, "deviation.t_min", "must be positive");
    require(c.t_max > c.t_min, r, "deviation.t_max", "must exceed deviation.t_min");
    c.t_points = static_cast<int>(r.integer("deviation.t_points", c.t_points));
    require(c.t_points >= 2 && c.t_points <= 100000, r, "deviation.t_points", "must be in [2, 100000]");
    const auto spacing = r.text("deviation.spacing", "linear");
    if (spacing == "linear" || spacing == "log") {
        c.log_spacing = spacing == "log";
    } else {
        fail("deviation.spacing", *r.find("deviation.spacing"), "expected linear or log");
    }
    c.t0_points = static_cast<int>(r.integer("deviation.t0_points", c.t0_points));
    require(c.t0_points >= 2 && c.t0_points <= 1000000, r, "deviation.t0_points", "must be in [2, 1000000]");

    c.threads = static_cast<int>(r.integer("run.threads", c.threads));
    require(c.threads >= 1 && c.threads <= 1024, r, "run.threads", "must be in [1, 1024]");
    const auto seed = r.integer("run.seed", 0);
    require(seed >= 0, r, "run.seed", "must be non-negative");
    c.seed = static_cast<std::uint64_t>(seed);
    c.output_dir = r.text("output.dir", ".");
    return c;
}

}  // namespace quenchfloq::cli
