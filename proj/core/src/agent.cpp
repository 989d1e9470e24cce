#include "dtr/agent.hpp"

#include "dtr/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dtr {
namespace {

void require_finite_config(double x, const char* name) {
    if (!std::isfinite(x)) throw Error(ErrorKind::InvalidConfig, std::string(name) + " must be finite");
}

// Q(s,a) <- Q(s,a) + alpha * (target - Q(s,a))
void move_toward(double& value, double target, double alpha) { value += alpha * (target - value); }

} // namespace

Action action_at(std::size_t index) {
    if (index >= kActionCount) throw Error(ErrorKind::Shape, "action index " + std::to_string(index) + " out of range");
    return static_cast<Action>(index);
}

std::string_view to_string(Action a) noexcept {
    switch (a) {
    case Action::increase: return "increase";
    case Action::keep: return "keep";
    case Action::decrease: return "decrease";
    }
    return "unknown";
}

void AgentConfig::validate() const {
    require_finite_config(tolerance, "tolerance");
    require_finite_config(exploration, "exploration");
    require_finite_config(step_size, "step_size");
    require_finite_config(discount, "discount");
    if (!(tolerance > 0.0)) throw Error(ErrorKind::InvalidConfig, "tolerance must be positive");
    if (exploration < 0.0 || exploration > 1.0) throw Error(ErrorKind::InvalidConfig, "exploration must lie in [0, 1]");
    if (!(step_size > 0.0) || step_size > 1.0) throw Error(ErrorKind::InvalidConfig, "step_size must lie in (0, 1]");
    if (discount < 0.0 || discount > 1.0) throw Error(ErrorKind::InvalidConfig, "discount must lie in [0, 1]");
    if (adjustment_unit) {
        require_finite_config(*adjustment_unit, "adjustment_unit");
        if (!(*adjustment_unit > 0.0)) throw Error(ErrorKind::InvalidConfig, "adjustment_unit must be positive");
    }
}

ActionSet::ActionSet(double base, double unit, bool clamp_nonnegative)
    : candidates_{base + unit, base, base - unit} {
    if (clamp_nonnegative) {
        for (double& c : candidates_) c = std::max(c, 0.0);
    }
}

ActionSet build_action_set(double y_hat, const AgentConfig& cfg) {
    cfg.validate();
    return ActionSet(y_hat, cfg.unit(), cfg.clamp_nonnegative);
}

std::size_t ValueTable::slot(std::size_t day) {
    if (day < 1 || day > kMaxCycleDays) {
        throw Error(ErrorKind::Shape, "day index " + std::to_string(day) + " outside 1.." + std::to_string(kMaxCycleDays));
    }
    return day - 1;
}

bool ValueTable::all_finite() const noexcept {
    for (const auto& row : q_)
        for (double x : row)
            if (!std::isfinite(x)) return false;
    return std::all_of(v_.begin(), v_.end(), [](double x) { return std::isfinite(x); });
}

double ValueTable::max_abs_q() const noexcept {
    double m = 0.0;
    for (const auto& row : q_)
        for (double x : row) m = std::max(m, std::abs(x));
    return m;
}

ValueTable init_state_values(double monthly_total, std::span<const double> daily_forecasts) {
    if (daily_forecasts.empty()) throw Error(ErrorKind::EmptyCycle, "cannot initialise state values for an empty cycle");
    if (daily_forecasts.size() > kMaxCycleDays) {
        throw Error(ErrorKind::Shape, "cycle of " + std::to_string(daily_forecasts.size()) + " days exceeds " +
                                          std::to_string(kMaxCycleDays));
    }
    ValueTable table;
    double cumulative = 0.0;
    for (std::size_t day = 1; day <= kMaxCycleDays; ++day) {
        if (day <= daily_forecasts.size()) cumulative += daily_forecasts[day - 1];
        const double remaining = monthly_total - cumulative;
        table.set_v(day, remaining);
        for (Action a : kActions) table.set_q(day, a, remaining);
    }
    return table;
}

Action greedy_action(const ActionValues& q_row) {
    for (double x : q_row) {
        if (!std::isfinite(x)) throw Error(ErrorKind::Numeric, "non-finite action value");
    }
    const double best = *std::max_element(q_row.begin(), q_row.end());
    if (q_row[index_of(Action::keep)] == best) return Action::keep;
    for (std::size_t i = 0; i < kActionCount; ++i) {
        if (q_row[i] == best) return action_at(i);
    }
    return Action::keep;
}

ActionValues egreedy_probabilities(const ActionValues& q_row, double epsilon) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw Error(ErrorKind::InvalidConfig, "exploration must lie in [0, 1]");
    const Action greedy = greedy_action(q_row);
    const double share = epsilon / static_cast<double>(kActionCount);
    ActionValues probs;
    probs.fill(share);
    probs[index_of(greedy)] = 1.0 - epsilon + share;
    return probs;
}

Action select_action(const ActionValues& probs, Rng& rng) {
    double sum = 0.0;
    for (double p : probs) {
        if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
            throw Error(ErrorKind::InvalidDistribution, "probabilities must lie in [0, 1]");
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw Error(ErrorKind::InvalidDistribution, "probabilities sum to " + std::to_string(sum));
    }
    const double u = rng.uniform();
    double cumulative = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < kActionCount; ++i) {
        if (probs[i] > 0.0) last_positive = i;
        cumulative += probs[i];
        if (u < cumulative) return action_at(i);
    }
    // Rounding left the cumulative sum a hair below u.
    return action_at(last_positive);
}

void sarsa_step(ValueTable& table, const Transition& t, const AgentConfig& cfg) {
    const double alpha = cfg.step_size;
    const double gamma = cfg.discount;
    const std::size_t day = t.state.day;
    const double q_next = t.next ? table.q(t.next->day, t.next_action) : 0.0;
    const double v_next = t.next ? table.v(t.next->day) : 0.0;

    double q = table.q(day, t.action);
    move_toward(q, t.reward + gamma * q_next, alpha);
    table.set_q(day, t.action, q);

    double v = table.v(day);
    move_toward(v, t.reward + gamma * v_next, alpha);
    table.set_v(day, v);
}

double adjustment_credit(double actual, double base, double adjusted) noexcept {
    return std::max(0.0, std::abs(actual - base) - std::abs(actual - adjusted));
}

ActionValues action_rewards(double actual, const ActionSet& candidates) noexcept {
    const double base = candidates[Action::keep];
    ActionValues rewards;
    for (Action a : kActions) rewards[index_of(a)] = actual + adjustment_credit(actual, base, candidates[a]);
    return rewards;
}

MonthlyEpisode MonthlyEpisode::coherent(std::vector<double> forecasts, std::vector<double> actuals) {
    MonthlyEpisode ep;
    ep.monthly_total = std::accumulate(forecasts.begin(), forecasts.end(), 0.0);
    ep.forecasts = std::move(forecasts);
    ep.actuals = std::move(actuals);
    return ep;
}

OnlineReconciler::OnlineReconciler(ValueTable table, std::vector<double> forecasts, double monthly_total,
                                   AgentConfig cfg, Rng& rng, bool learn)
    : table_(std::move(table)),
      forecasts_(std::move(forecasts)),
      monthly_total_(monthly_total),
      cfg_(cfg),
      unit_(cfg.unit()),
      rng_(rng),
      learn_(learn),
      pending_(Action::keep) {
    cfg_.validate();
    if (forecasts_.empty()) throw Error(ErrorKind::EmptyCycle, "cycle has no days");
    if (forecasts_.size() > kMaxCycleDays) {
        throw Error(ErrorKind::Shape, "cycle of " + std::to_string(forecasts_.size()) + " days exceeds " +
                                          std::to_string(kMaxCycleDays));
    }
    if (!std::isfinite(monthly_total_)) throw Error(ErrorKind::Numeric, "non-finite monthly total");
    remaining_.resize(forecasts_.size());
    double cumulative = 0.0;
    for (std::size_t i = 0; i < forecasts_.size(); ++i) {
        if (!std::isfinite(forecasts_[i])) throw Error(ErrorKind::Numeric, "non-finite daily forecast");
        cumulative += forecasts_[i];
        remaining_[i] = monthly_total_ - cumulative;
    }
    trace_.reserve(forecasts_.size());
    pending_ = draw_action(1);
}

Action OnlineReconciler::draw_action(std::size_t day) {
    return select_action(egreedy_probabilities(table_.row(day), cfg_.exploration), rng_);
}

void OnlineReconciler::backup(std::size_t day, double actual, std::optional<Action> next_action) {
    const ActionSet candidates(forecasts_[day - 1], unit_, cfg_.clamp_nonnegative);
    const ActionValues rewards = action_rewards(actual, candidates);

    const EpisodeState state{day, remaining_[day - 1]};
    std::optional<EpisodeState> next;
    if (next_action) next = EpisodeState{day + 1, remaining_[day]};
    const double q_next = next ? table_.q(day + 1, *next_action) : 0.0;

    // Every candidate's reward is known once the actual is in, so the untaken
    // actions are backed up against the same on-policy successor.
    for (Action a : kActions) {
        if (a == pending_) continue;
        double q = table_.q(day, a);
        move_toward(q, rewards[index_of(a)] + cfg_.discount * q_next, cfg_.step_size);
        table_.set_q(day, a, q);
    }
    sarsa_step(table_,
               Transition{state, pending_, rewards[index_of(pending_)], next, next_action.value_or(Action::keep)},
               cfg_);
}

const TraceEntry& OnlineReconciler::observe(std::size_t day, double actual) {
    if (complete()) throw Error(ErrorKind::StreamOrder, "cycle already complete");
    const std::size_t expected = days_observed() + 1;
    if (day != expected) {
        throw Error(ErrorKind::StreamOrder, "expected day " + std::to_string(expected) + ", got day " + std::to_string(day));
    }
    if (!std::isfinite(actual)) throw Error(ErrorKind::Numeric, "non-finite actual on day " + std::to_string(day));

    const Action taken = pending_;
    std::optional<Action> next_action;
    if (day < cycle_length()) next_action = draw_action(day + 1);
    if (learn_) backup(day, actual, next_action);
    if (next_action) pending_ = *next_action;

    const ActionSet candidates(forecasts_[day - 1], unit_, cfg_.clamp_nonnegative);
    trace_.push_back(TraceEntry{day, taken, candidates[taken], actual, current_rmf()});
    return trace_.back();
}

double OnlineReconciler::current_rmf() const {
    double shift = 0.0;
    for (std::size_t day = 1; day <= forecasts_.size(); ++day) {
        const ActionSet candidates(forecasts_[day - 1], unit_, cfg_.clamp_nonnegative);
        shift += candidates[greedy_action(table_.row(day))] - forecasts_[day - 1];
    }
    return monthly_total_ + shift;
}

ReconciliationTrace run_episode(const MonthlyEpisode& month, ValueTable& table, const AgentConfig& cfg, Rng& rng) {
    if (month.forecasts.size() != month.actuals.size()) {
        throw Error(ErrorKind::Shape, "episode has " + std::to_string(month.forecasts.size()) + " forecasts and " +
                                          std::to_string(month.actuals.size()) + " actuals");
    }
    OnlineReconciler agent(table, month.forecasts, month.monthly_total, cfg, rng, true);
    for (std::size_t day = 1; day <= month.actuals.size(); ++day) agent.observe(day, month.actuals[day - 1]);
    table = agent.table();
    return agent.trace();
}

ValueTable train(std::span<const MonthlyEpisode> history, const AgentConfig& cfg) {
    cfg.validate();
    if (history.empty()) {
        if (cfg.episodes > 0) throw Error(ErrorKind::InsufficientData, "training needs at least one month");
        return ValueTable{};
    }
    ValueTable table = init_state_values(history.front().monthly_total, history.front().forecasts);
    Rng rng(derive_seed(cfg.seed, "train"));
    for (std::size_t pass = 0; pass < cfg.episodes; ++pass) {
        for (const auto& month : history) run_episode(month, table, cfg, rng);
    }
    return table;
}

ReconciliationTrace reconcile_online(ValueTable& table, std::span<const double> forecasts, double monthly_total,
                                     std::span<const double> actuals, const AgentConfig& cfg, Rng& rng) {
    if (actuals.size() > forecasts.size()) {
        throw Error(ErrorKind::Shape, "more actuals (" + std::to_string(actuals.size()) + ") than days in the cycle (" +
                                          std::to_string(forecasts.size()) + ")");
    }
    OnlineReconciler agent(table, std::vector<double>(forecasts.begin(), forecasts.end()), monthly_total, cfg, rng,
                           cfg.online_updates);
    for (std::size_t day = 1; day <= actuals.size(); ++day) agent.observe(day, actuals[day - 1]);
    table = agent.table();
    return agent.trace();
}

} // namespace dtr
