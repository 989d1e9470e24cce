#pragma once

#include "dtr/agent.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

namespace dtr {

/// Q-table snapshot: a header line with the config hash and seed, a column
/// line, then one `day_index,action_index,q_value` row per entry:
///
///     # dtr-qtable v1 config_hash=9f2c...e1 seed=42
///     day_index,action_index,q_value
///     1,0,356352.00000000000
///
/// Values are written with 17 significant digits so they round-trip exactly.
struct QTableSnapshot {
    ValueTable table;
    std::string config_hash;
    std::uint64_t seed = 0;
};

void write_qtable(std::ostream& out, const QTableSnapshot& snapshot);
void save_qtable(const std::filesystem::path& path, const QTableSnapshot& snapshot);

/// V is not stored; loaded tables get V(t) = Q(t, keep).
QTableSnapshot read_qtable(std::istream& in);
QTableSnapshot load_qtable(const std::filesystem::path& path);

/// Canonical text of the learning-relevant config fields.
std::string canonical_config(const AgentConfig& cfg);
/// Hex FNV-1a of canonical_config().
std::string config_hash(const AgentConfig& cfg);

} // namespace dtr
