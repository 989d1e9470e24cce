#include "dtr/qtable_io.hpp"

#include "dtr/error.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace dtr {
namespace {

constexpr std::string_view kMagic = "# dtr-qtable v1";
constexpr std::string_view kColumns = "day_index,action_index,q_value";

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::string header_value(std::string_view header, std::string_view key) {
    const std::string needle = std::string(key) + "=";
    const auto pos = header.find(needle);
    if (pos == std::string_view::npos) {
        throw Error(ErrorKind::Parse, "q-table header lacks '" + std::string(key) + "'");
    }
    auto rest = header.substr(pos + needle.size());
    return std::string(rest.substr(0, rest.find(' ')));
}

} // namespace

std::string canonical_config(const AgentConfig& cfg) {
    std::ostringstream out;
    out << "tolerance=" << format_double(cfg.tolerance) << '\n'
        << "adjustment_unit=" << format_double(cfg.unit()) << '\n'
        << "exploration=" << format_double(cfg.exploration) << '\n'
        << "step_size=" << format_double(cfg.step_size) << '\n'
        << "discount=" << format_double(cfg.discount) << '\n'
        << "episodes=" << cfg.episodes << '\n'
        << "seed=" << cfg.seed << '\n'
        << "online_updates=" << (cfg.online_updates ? "true" : "false") << '\n'
        << "clamp_nonnegative=" << (cfg.clamp_nonnegative ? "true" : "false") << '\n';
    return out.str();
}

std::string config_hash(const AgentConfig& cfg) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(canonical_config(cfg))));
    return buf;
}

void write_qtable(std::ostream& out, const QTableSnapshot& snapshot) {
    out << kMagic << " config_hash=" << snapshot.config_hash << " seed=" << snapshot.seed << '\n';
    out << kColumns << '\n';
    for (std::size_t day = 1; day <= kMaxCycleDays; ++day) {
        for (Action a : kActions) {
            out << day << ',' << index_of(a) << ',' << format_double(snapshot.table.q(day, a)) << '\n';
        }
    }
}

void save_qtable(const std::filesystem::path& path, const QTableSnapshot& snapshot) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
    write_qtable(out, snapshot);
    if (!out) throw Error(ErrorKind::Io, "failed writing " + path.string());
}

QTableSnapshot read_qtable(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || trim(line).substr(0, kMagic.size()) != kMagic) {
        throw Error(ErrorKind::Parse, "line 1: not a q-table snapshot");
    }
    QTableSnapshot snapshot;
    snapshot.config_hash = header_value(line, "config_hash");
    const std::string seed_text = header_value(line, "seed");
    auto [sp, sec] = std::from_chars(seed_text.data(), seed_text.data() + seed_text.size(), snapshot.seed);
    if (sec != std::errc{} || sp != seed_text.data() + seed_text.size()) {
        throw Error(ErrorKind::Parse, "line 1: bad seed '" + seed_text + "'");
    }
    if (!std::getline(in, line) || trim(line) != kColumns) {
        throw Error(ErrorKind::Parse, "line 2: expected '" + std::string(kColumns) + "'");
    }

    std::array<std::array<bool, kActionCount>, kMaxCycleDays> seen{};
    std::size_t line_no = 2;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view row = trim(line);
        if (row.empty()) continue;
        const auto c1 = row.find(',');
        const auto c2 = row.find(',', c1 == std::string_view::npos ? c1 : c1 + 1);
        if (c1 == std::string_view::npos || c2 == std::string_view::npos) {
            throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": expected three fields");
        }
        std::size_t day = 0, action = 0;
        const auto f1 = row.substr(0, c1);
        const auto f2 = row.substr(c1 + 1, c2 - c1 - 1);
        const std::string f3(row.substr(c2 + 1));
        auto r1 = std::from_chars(f1.data(), f1.data() + f1.size(), day);
        auto r2 = std::from_chars(f2.data(), f2.data() + f2.size(), action);
        char* end = nullptr;
        const double value = std::strtod(f3.c_str(), &end);
        if (r1.ec != std::errc{} || r2.ec != std::errc{} || end != f3.c_str() + f3.size() || f3.empty() ||
            day < 1 || day > kMaxCycleDays || action >= kActionCount || !std::isfinite(value)) {
            throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": bad entry '" + std::string(row) + "'");
        }
        if (seen[day - 1][action]) {
            throw Error(ErrorKind::DuplicateKey, "line " + std::to_string(line_no) + ": duplicate entry for day " +
                                                     std::to_string(day) + " action " + std::to_string(action));
        }
        seen[day - 1][action] = true;
        snapshot.table.set_q(day, action_at(action), value);
    }
    for (std::size_t day = 1; day <= kMaxCycleDays; ++day) {
        for (std::size_t a = 0; a < kActionCount; ++a) {
            if (!seen[day - 1][a]) {
                throw Error(ErrorKind::Parse, "q-table misses day " + std::to_string(day) + " action " + std::to_string(a));
            }
        }
        snapshot.table.set_v(day, snapshot.table.q(day, Action::keep));
    }
    return snapshot;
}

QTableSnapshot load_qtable(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot open q-table " + path.string());
    return read_qtable(in);
}

} // namespace dtr
