#include "searoute/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <optional>
#include <string_view>

namespace searoute {

ConfigError::ConfigError(const std::string& source, std::size_t line, const std::string& what)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), source_(source), line_(line) {}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

// Thrown by the value parsers; converted to ConfigError with a position.
struct BadValue {
    std::string message;
};

template <typename T>
T parse_number(std::string_view text) {
    T value{};
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) throw BadValue{"invalid number '" + std::string(text) + "'"};
    return value;
}

std::size_t parse_count(std::string_view text) { return parse_number<std::size_t>(text); }

double parse_real(std::string_view text) {
    const double v = parse_number<double>(text);
    if (!std::isfinite(v)) throw BadValue{"value must be finite"};
    return v;
}

std::vector<DomainKind> parse_policies(std::string_view text) {
    std::vector<DomainKind> out;
    while (!text.empty()) {
        const auto comma = text.find(',');
        const auto item = trim(text.substr(0, comma));
        try {
            out.push_back(parse_domain_kind(item));
        } catch (const std::invalid_argument& e) {
            throw BadValue{e.what()};
        }
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    if (out.empty()) throw BadValue{"empty policy list"};
    return out;
}

// Keys shared by the whole set and by per-island overrides. Returns false
// for an unknown key.
bool apply_ga_key(GaConfig& c, std::string_view key, std::string_view value) {
    auto& p = c.planner;
    if (key == "generations") c.generations = parse_count(value);
    else if (key == "population") c.population_size = parse_count(value);
    else if (key == "elites") c.elite_count = parse_count(value);
    else if (key == "mutation") c.mutation_prob = parse_real(value);
    else if (key == "crossover") c.crossover_prob = parse_real(value);
    else if (key == "crossover_op") {
        try {
            c.crossover = parse_crossover_kind(value);
        } catch (const std::invalid_argument& e) {
            throw BadValue{e.what()};
        }
    }
    else if (key == "replenish_threshold") c.replenish_threshold = parse_count(value);
    else if (key == "planner_retries") c.planner_retries = parse_count(value);
    else if (key == "sectors") p.sectors = parse_count(value);
    else if (key == "points_per_sector") p.points_per_sector = parse_count(value);
    else if (key == "max_points") p.max_points = parse_count(value);
    else if (key == "xi") p.xi = parse_real(value);
    else if (key == "psi") p.psi = parse_real(value);
    else if (key == "base_radius") p.policy.base_radius = parse_real(value);
    else if (key == "growth_rate") p.policy.growth_rate = parse_real(value);
    else if (key == "radius_lo" || key == "radius_hi") {
        // Both bounds must be given; a lone one fails validation as unordered.
        constexpr double unset = std::numeric_limits<double>::quiet_NaN();
        auto bounds = p.policy.radius_bounds.value_or(std::pair{unset, unset});
        (key == "radius_lo" ? bounds.first : bounds.second) = parse_real(value);
        p.policy.radius_bounds = bounds;
    }
    else if (key == "min_radius") p.policy.min_radius = parse_real(value);
    else return false;
    return true;
}

bool apply_ship_key(ShipSpec& s, std::string_view key, std::string_view value) {
    if (key == "ship.length") s.length = parse_real(value);
    else if (key == "ship.beam") s.beam = parse_real(value);
    else if (key == "ship.draught") s.draught = parse_real(value);
    else if (key == "ship.speed") s.service_speed = parse_real(value);
    else if (key == "ship.footprint_factor") s.footprint_factor = parse_real(value);
    else if (key == "ship.depth_clearance") s.depth_clearance = parse_real(value);
    else if (key == "ship.domain_radius_factor") s.domain_radius_factor = parse_real(value);
    else return false;
    return true;
}

// island.N.key -> (N, key)
std::optional<std::pair<std::size_t, std::string>> split_island_key(std::string_view key) {
    constexpr std::string_view prefix = "island.";
    if (!key.starts_with(prefix)) return std::nullopt;
    key.remove_prefix(prefix.size());
    const auto dot = key.find('.');
    if (dot == std::string_view::npos || dot + 1 == key.size()) throw BadValue{"expected island.<index>.<key>"};
    return std::pair{parse_count(key.substr(0, dot)), std::string(key.substr(dot + 1))};
}

void apply_island_key(GaConfig& c, std::string_view key, std::string_view value) {
    if (key == "policy") {
        try {
            c.planner.policy.kind = parse_domain_kind(value);
        } catch (const std::invalid_argument& e) {
            throw BadValue{e.what()};
        }
    } else if (key == "seed") {
        c.seed = parse_number<std::uint64_t>(value);
        c.planner.seed = c.seed;
    } else if (!apply_ga_key(c, key, value)) {
        throw BadValue{"unknown island key '" + std::string(key) + "'"};
    }
}

void apply_key(RunConfig& cfg, std::string_view key, std::string_view value, std::size_t line) {
    if (key == "start" || key == "dest") {
        try {
            (key == "start" ? cfg.start : cfg.dest) = parse_point(value);
        } catch (const std::invalid_argument& e) {
            throw BadValue{e.what()};
        }
    }
    else if (key == "seed") cfg.seed = parse_number<std::uint64_t>(value);
    else if (key == "islands") cfg.islands = value == "auto" ? 0 : parse_count(value);
    else if (key == "threads") cfg.threads = parse_count(value);
    else if (key == "epoch") cfg.epoch = parse_count(value);
    else if (key == "migration_pairs") cfg.migration_pairs = parse_count(value);
    else if (key == "policies") cfg.policies = parse_policies(value);
    else if (apply_ga_key(cfg.base, key, value)) {}
    else if (apply_ship_key(cfg.ship, key, value)) {}
    else if (auto island = split_island_key(key)) {
        // Check the value now so the diagnostic points at this line.
        GaConfig probe = cfg.base;
        apply_island_key(probe, island->second, value);
        cfg.overrides.push_back({island->first, island->second, std::string(value), line});
    } else {
        throw BadValue{"unknown key '" + std::string(key) + "'"};
    }
}

}  // namespace

Point parse_point(std::string_view text) {
    const auto comma = text.find(',');
    if (comma == std::string_view::npos) {
        throw std::invalid_argument("expected 'x,y', got '" + std::string(text) + "'");
    }
    try {
        return {parse_real(trim(text.substr(0, comma))), parse_real(trim(text.substr(comma + 1)))};
    } catch (const BadValue&) {
        throw std::invalid_argument("expected 'x,y', got '" + std::string(text) + "'");
    }
}

IslandSetConfig RunConfig::island_set() const {
    IslandSetConfig set = make_island_set(base, islands, seed);
    set.threads = threads;
    set.migration_epoch = epoch;
    if (migration_pairs > 0) set.migration_pairs_per_island = migration_pairs;
    if (!policies.empty()) {
        for (std::size_t k = 0; k < set.islands.size(); ++k) {
            set.islands[k].planner.policy.kind = policies[k % policies.size()];
        }
    }
    for (const auto& o : overrides) {
        if (o.island >= set.islands.size()) {
            throw ConfigError(source, o.line,
                              "island index " + std::to_string(o.island) + " out of range (" +
                                  std::to_string(set.islands.size()) + " islands)");
        }
        try {
            apply_island_key(set.islands[o.island], o.key, o.value);
        } catch (const BadValue& e) {
            throw ConfigError(source, o.line, e.message);
        }
    }
    try {
        set.validate();
        ship.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(source, 0, e.what());
    }
    return set;
}

RunConfig parse_config(std::istream& in, const std::string& source) {
    RunConfig cfg;
    cfg.source = source;
    std::string raw;
    for (std::size_t line = 1; std::getline(in, raw); ++line) {
        std::string_view text = raw;
        if (const auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
        text = trim(text);
        if (text.empty()) continue;
        const auto eq = text.find('=');
        if (eq == std::string_view::npos) throw ConfigError(source, line, "expected 'key = value'");
        const auto key = trim(text.substr(0, eq));
        const auto value = trim(text.substr(eq + 1));
        if (key.empty()) throw ConfigError(source, line, "missing key");
        if (value.empty()) throw ConfigError(source, line, "missing value for '" + std::string(key) + "'");
        try {
            apply_key(cfg, key, value, line);
        } catch (const BadValue& e) {
            throw ConfigError(source, line, e.message);
        }
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path.string(), 0, "cannot open config file");
    return parse_config(in, path.string());
}

}  // namespace searoute
