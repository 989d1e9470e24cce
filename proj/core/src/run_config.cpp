#include "dtr/run_config.hpp"

#include "dtr/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace dtr {
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

[[noreturn]] void bad(std::string_view key, std::string_view value, std::string_view want) {
    throw Error(ErrorKind::InvalidConfig,
                std::string(key) + " = '" + std::string(value) + "': expected " + std::string(want));
}

double to_double(std::string_view key, std::string_view value) {
    const std::string s(trim(value));
    char* end = nullptr;
    const double x = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(x)) bad(key, value, "a number");
    return x;
}

std::uint64_t to_u64(std::string_view key, std::string_view value) {
    value = trim(value);
    std::uint64_t x = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), x);
    if (value.empty() || ec != std::errc{} || ptr != value.data() + value.size()) {
        bad(key, value, "a non-negative integer");
    }
    return x;
}

bool to_bool(std::string_view key, std::string_view value) {
    value = trim(value);
    if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
    if (value == "false" || value == "0" || value == "no" || value == "off") return false;
    bad(key, value, "true or false");
}

std::vector<std::string_view> split_list(std::string_view value) {
    std::vector<std::string_view> items;
    while (true) {
        const auto comma = value.find(',');
        const auto item = trim(value.substr(0, comma));
        if (!item.empty()) items.push_back(item);
        if (comma == std::string_view::npos) break;
        value.remove_prefix(comma + 1);
    }
    return items;
}

template <class F>
auto wrap(std::string_view key, F&& f) {
    try {
        return f();
    } catch (const Error& e) {
        throw Error(ErrorKind::InvalidConfig, std::string(key) + ": " + e.what());
    }
}

// Shortest text that round-trips.
std::string num(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

} // namespace

const std::vector<std::string_view>& RunConfig::keys() {
    static const std::vector<std::string_view> k{
        "data_path",  "date_column", "value_column",    "train_range",       "test_range",
        "forecaster", "seasonal_period", "external_forecast_path", "tolerance", "adjustment_unit",
        "epsilon",    "step_size",   "discount",        "episodes",          "seed",
        "online_updates", "clamp_nonnegative", "grid_tolerances", "grid_epsilons", "parallel_grid",
        "output_dir", "qtable_path",
    };
    return k;
}

void RunConfig::set(std::string_view key, std::string_view value) {
    const std::string v(trim(value));
    AgentConfig& a = protocol.agent;
    if (key == "data_path") {
        data_path = v;
    } else if (key == "date_column") {
        date_column = v;
    } else if (key == "value_column") {
        value_column = v;
    } else if (key == "train_range") {
        if (v.empty()) train_range.reset();
        else train_range = wrap(key, [&] { return MonthRange::parse(v); });
    } else if (key == "test_range") {
        test_range = wrap(key, [&] { return MonthRange::parse(v); });
    } else if (key == "forecaster") {
        forecaster = wrap(key, [&] { return parse_forecaster(v); });
    } else if (key == "seasonal_period") {
        seasonal_period = static_cast<std::size_t>(to_u64(key, v));
    } else if (key == "external_forecast_path") {
        if (v.empty()) external_forecast_path.reset();
        else external_forecast_path = v;
    } else if (key == "tolerance") {
        protocol.tolerance = wrap(key, [&] { return Tolerance::parse(v); });
    } else if (key == "adjustment_unit") {
        if (v.empty()) a.adjustment_unit.reset();
        else a.adjustment_unit = to_double(key, v);
    } else if (key == "epsilon") {
        a.exploration = to_double(key, v);
    } else if (key == "step_size") {
        a.step_size = to_double(key, v);
    } else if (key == "discount") {
        a.discount = to_double(key, v);
    } else if (key == "episodes") {
        a.episodes = static_cast<std::size_t>(to_u64(key, v));
    } else if (key == "seed") {
        a.seed = to_u64(key, v);
    } else if (key == "online_updates") {
        a.online_updates = to_bool(key, v);
    } else if (key == "clamp_nonnegative") {
        a.clamp_nonnegative = to_bool(key, v);
    } else if (key == "grid_tolerances") {
        grid_tolerances.clear();
        for (auto item : split_list(v)) grid_tolerances.push_back(wrap(key, [&] { return Tolerance::parse(item); }));
    } else if (key == "grid_epsilons") {
        grid_epsilons.clear();
        for (auto item : split_list(v)) grid_epsilons.push_back(to_double(key, item));
    } else if (key == "parallel_grid") {
        parallel_grid = to_bool(key, v);
    } else if (key == "output_dir") {
        output_dir = v;
    } else if (key == "qtable_path") {
        if (v.empty()) qtable_path.reset();
        else qtable_path = v;
    } else {
        throw Error(ErrorKind::InvalidConfig, "unknown config key '" + std::string(key) + "'");
    }
}

RunConfig RunConfig::from_pairs(const std::vector<std::pair<std::string, std::string>>& pairs) {
    RunConfig cfg;
    for (const auto& [k, v] : pairs) cfg.set(k, v);
    return cfg;
}

void RunConfig::validate_data_fields() const {
    if (data_path.empty()) throw Error(ErrorKind::InvalidConfig, "data_path is required");
    if (!test_range) throw Error(ErrorKind::InvalidConfig, "test_range is required");
    if (train_range && !(train_range->last < test_range->first)) {
        throw Error(ErrorKind::InvalidConfig, "train_range " + train_range->str() +
                                                  " must end before test_range " + test_range->str() + " starts");
    }
}

void RunConfig::validate() const {
    validate_data_fields();
    if (forecaster == Forecaster::external && !external_forecast_path) {
        throw Error(ErrorKind::InvalidConfig, "forecaster = external needs external_forecast_path");
    }
    if (forecaster != Forecaster::external && external_forecast_path) {
        throw Error(ErrorKind::InvalidConfig, "external_forecast_path is set but forecaster = " +
                                                  std::string(to_string(forecaster)) +
                                                  "; set forecaster = external or drop the path");
    }
    if (forecaster == Forecaster::seasonal_naive && seasonal_period == 0) {
        throw Error(ErrorKind::InvalidConfig, "seasonal_period must be positive");
    }
    // The tolerance is resolved per run; validate with a placeholder band.
    AgentConfig probe = protocol.agent;
    probe.tolerance = 1.0;
    probe.validate();
    if (grid_tolerances.empty() != grid_epsilons.empty()) {
        throw Error(ErrorKind::InvalidConfig, "grid_tolerances and grid_epsilons must be given together");
    }
    for (double e : grid_epsilons) {
        if (!(e >= 0.0 && e <= 1.0)) throw Error(ErrorKind::InvalidConfig, "grid epsilon " + num(e) + " outside [0, 1]");
    }
}

std::string RunConfig::canonical() const {
    const AgentConfig& a = protocol.agent;
    auto join_tol = [&] {
        std::string s;
        for (const auto& t : grid_tolerances) s += (s.empty() ? "" : ",") + t.str();
        return s;
    };
    auto join_eps = [&] {
        std::string s;
        for (double e : grid_epsilons) s += (s.empty() ? "" : ",") + num(e);
        return s;
    };
    std::ostringstream os;
    os << "data_path=" << data_path.generic_string() << '\n'
       << "date_column=" << date_column << '\n'
       << "value_column=" << value_column << '\n'
       << "train_range=" << (train_range ? train_range->str() : "") << '\n'
       << "test_range=" << (test_range ? test_range->str() : "") << '\n'
       << "forecaster=" << to_string(forecaster) << '\n'
       << "seasonal_period=" << seasonal_period << '\n'
       << "external_forecast_path=" << (external_forecast_path ? external_forecast_path->generic_string() : "") << '\n'
       << "tolerance=" << protocol.tolerance.str() << '\n'
       << "adjustment_unit=" << (a.adjustment_unit ? num(*a.adjustment_unit) : "") << '\n'
       << "epsilon=" << num(a.exploration) << '\n'
       << "step_size=" << num(a.step_size) << '\n'
       << "discount=" << num(a.discount) << '\n'
       << "episodes=" << a.episodes << '\n'
       << "seed=" << a.seed << '\n'
       << "online_updates=" << (a.online_updates ? "true" : "false") << '\n'
       << "clamp_nonnegative=" << (a.clamp_nonnegative ? "true" : "false") << '\n'
       << "grid_tolerances=" << join_tol() << '\n'
       << "grid_epsilons=" << join_eps() << '\n'
       << "parallel_grid=" << (parallel_grid ? "true" : "false") << '\n'
       << "output_dir=" << output_dir.generic_string() << '\n'
       << "qtable_path=" << (qtable_path ? qtable_path->generic_string() : "") << '\n';
    return os.str();
}

} // namespace dtr
