#pragma once

#include "dtr/random.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dtr {

/// Adjustments available on each day, in this order.
enum class Action : std::uint8_t { increase = 0, keep = 1, decrease = 2 };

inline constexpr std::size_t kActionCount = 3;
inline constexpr std::size_t kMaxCycleDays = 31;
inline constexpr std::array<Action, kActionCount> kActions{Action::increase, Action::keep, Action::decrease};

constexpr std::size_t index_of(Action a) noexcept { return static_cast<std::size_t>(a); }
Action action_at(std::size_t index);
std::string_view to_string(Action a) noexcept;

using ActionValues = std::array<double, kActionCount>;

struct AgentConfig {
    /// Tolerance band, in forecast units.
    double tolerance = 1.0;
    /// Exploration probability of the epsilon-greedy policy.
    double exploration = 0.05;
    double step_size = 0.1;
    double discount = 1.0;
    std::size_t episodes = 1;
    std::uint64_t seed = 0;
    bool online_updates = true;
    /// Size of one up/down move of a daily forecast. Defaults to `tolerance`.
    std::optional<double> adjustment_unit;
    /// Floor adjusted daily forecasts at zero.
    bool clamp_nonnegative = false;

    /// Throws InvalidConfig on any out-of-range field.
    void validate() const;
    double unit() const noexcept { return adjustment_unit.value_or(tolerance); }
};

/// Day of the cycle (1-based) plus the forecast total still to come after it.
struct EpisodeState {
    std::size_t day = 1;
    double remaining_total = 0.0;
};

/// Candidate adjusted forecasts for one day: (increase, keep, decrease).
class ActionSet {
public:
    ActionSet(double base, double unit, bool clamp_nonnegative = false);

    double operator[](Action a) const noexcept { return candidates_[index_of(a)]; }
    const ActionValues& candidates() const noexcept { return candidates_; }

private:
    ActionValues candidates_;
};

ActionSet build_action_set(double y_hat, const AgentConfig& cfg);

/// Tabular Q(day, action) and V(day) for days 1..31. V mirrors the state-value
/// recursion for diagnostics; the policy reads Q only.
class ValueTable {
public:
    ValueTable() = default;

    double q(std::size_t day, Action a) const { return q_[slot(day)][index_of(a)]; }
    void set_q(std::size_t day, Action a, double value) { q_[slot(day)][index_of(a)] = value; }
    const ActionValues& row(std::size_t day) const { return q_[slot(day)]; }

    double v(std::size_t day) const { return v_[slot(day)]; }
    void set_v(std::size_t day, double value) { v_[slot(day)] = value; }

    bool all_finite() const noexcept;
    double max_abs_q() const noexcept;

    friend bool operator==(const ValueTable&, const ValueTable&) = default;

private:
    static std::size_t slot(std::size_t day);

    std::array<ActionValues, kMaxCycleDays> q_{};
    std::array<double, kMaxCycleDays> v_{};
};

/// V(S_t) = M - sum_{i<=t} y^_i, and Q(S_t, a) = V(S_t) for all three actions.
/// Rows past the cycle length continue the same formula with no further
/// forecasts.
ValueTable init_state_values(double monthly_total, std::span<const double> daily_forecasts);

/// Index of max Q. Ties go to keep, then to the lowest index.
Action greedy_action(const ActionValues& q_row);

/// 1 - eps + eps/3 on the greedy action, eps/3 on the others.
ActionValues egreedy_probabilities(const ActionValues& q_row, double epsilon);

/// One categorical draw; consumes exactly one uniform from `rng`.
Action select_action(const ActionValues& probs, Rng& rng);

struct Transition {
    EpisodeState state;
    Action action = Action::keep;
    double reward = 0.0;
    /// Empty at the end of the cycle; the successor value is then zero.
    std::optional<EpisodeState> next;
    Action next_action = Action::keep;
};

/// Q(s,a) += alpha (r + gamma Q(s',a') - Q(s,a)) and
/// V(s)   += alpha (r + gamma V(s')    - V(s)).
void sarsa_step(ValueTable& table, const Transition& t, const AgentConfig& cfg);

/// How much closer `adjusted` lands to `actual` than `base` does, floored at 0.
double adjustment_credit(double actual, double base, double adjusted) noexcept;

/// Reward of each action on a day: the observed actual plus that action's
/// adjustment credit. "keep" always earns exactly the actual.
ActionValues action_rewards(double actual, const ActionSet& candidates) noexcept;

struct TraceEntry {
    std::size_t day = 0;
    Action action = Action::keep;
    double adjusted_forecast = 0.0;
    double actual = 0.0;
    /// Revised monthly forecast after this day's update.
    double rmf = 0.0;
};

using ReconciliationTrace = std::vector<TraceEntry>;

/// One cycle of training data. Cycles of 1..31 days are accepted.
struct MonthlyEpisode {
    std::vector<double> forecasts;
    std::vector<double> actuals;
    double monthly_total = 0.0;

    /// Monthly total taken as the sum of the daily forecasts.
    static MonthlyEpisode coherent(std::vector<double> forecasts, std::vector<double> actuals);
};

/// Streams one cycle's actuals day by day through the agent.
///
/// After each observed day t the agent (optionally) backs up row t against
/// the successor chosen by the epsilon-greedy policy, re-derives the greedy
/// action of every day and emits RMF_t = M + sum_i (f_i - y^_i), where f_i is
/// day i's forecast adjusted by its greedy action. Observed actuals reach the
/// RMF only through the table.
class OnlineReconciler {
public:
    OnlineReconciler(ValueTable table, std::vector<double> forecasts, double monthly_total, AgentConfig cfg,
                     Rng& rng, bool learn);

    /// `day` is 1-based and must be the next unobserved day.
    const TraceEntry& observe(std::size_t day, double actual);

    /// RMF under the current table, without observing anything.
    double current_rmf() const;
    std::size_t cycle_length() const noexcept { return forecasts_.size(); }
    std::size_t days_observed() const noexcept { return trace_.size(); }
    bool complete() const noexcept { return days_observed() == cycle_length(); }

    const ReconciliationTrace& trace() const noexcept { return trace_; }
    const ValueTable& table() const noexcept { return table_; }
    ValueTable& table() noexcept { return table_; }

private:
    Action draw_action(std::size_t day);
    void backup(std::size_t day, double actual, std::optional<Action> next_action);

    ValueTable table_;
    std::vector<double> forecasts_;
    std::vector<double> remaining_;
    double monthly_total_;
    AgentConfig cfg_;
    double unit_;
    Rng& rng_;
    bool learn_;
    Action pending_;
    ReconciliationTrace trace_;
};

/// One learning pass over a cycle; `table` is updated in place.
ReconciliationTrace run_episode(const MonthlyEpisode& month, ValueTable& table, const AgentConfig& cfg, Rng& rng);

/// The table is initialised from the first month, then `cfg.episodes` passes
/// run over the months in order. Randomness comes from
/// derive_seed(cfg.seed, "train").
ValueTable train(std::span<const MonthlyEpisode> history, const AgentConfig& cfg);

/// Streams `actuals` (a prefix of the cycle is fine) through an
/// OnlineReconciler. Learning follows cfg.online_updates; `table` receives the
/// updated values.
ReconciliationTrace reconcile_online(ValueTable& table, std::span<const double> forecasts, double monthly_total,
                                     std::span<const double> actuals, const AgentConfig& cfg, Rng& rng);

} // namespace dtr
