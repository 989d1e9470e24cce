#include "dtr/error.hpp"
#include "dtr/run_config.hpp"

#include <gtest/gtest.h>

using namespace dtr;

namespace {

RunConfig base() {
    return RunConfig::from_pairs({{"data_path", "prices.csv"},
                                  {"train_range", "2019-01..2020-02"},
                                  {"test_range", "2020-03"}});
}

} // namespace

TEST(RunConfig, Defaults) {
    const RunConfig cfg;
    EXPECT_EQ(cfg.date_column, "Date");
    EXPECT_EQ(cfg.value_column, "Open");
    EXPECT_TRUE(cfg.protocol.tolerance.percent);
    EXPECT_EQ(cfg.protocol.tolerance.value, 20.0);
    EXPECT_EQ(cfg.protocol.agent.exploration, 0.05);
    EXPECT_EQ(cfg.forecaster, Forecaster::naive);
}

TEST(RunConfig, SetsEveryKey) {
    RunConfig cfg = base();
    cfg.set("tolerance", "30%");
    cfg.set("epsilon", "0.2");
    cfg.set("step_size", "0.3");
    cfg.set("discount", "0.9");
    cfg.set("episodes", "4");
    cfg.set("seed", "123");
    cfg.set("online_updates", "false");
    cfg.set("clamp_nonnegative", "yes");
    cfg.set("adjustment_unit", "12.5");
    cfg.set("grid_tolerances", "10%, 20%,30%");
    cfg.set("grid_epsilons", "0.05,0.1");
    cfg.set("forecaster", "seasonal_naive");
    cfg.set("seasonal_period", "5");
    EXPECT_EQ(cfg.protocol.tolerance.str(), "30%");
    EXPECT_EQ(cfg.protocol.agent.exploration, 0.2);
    EXPECT_EQ(cfg.protocol.agent.episodes, 4u);
    EXPECT_EQ(cfg.protocol.agent.seed, 123u);
    EXPECT_FALSE(cfg.protocol.agent.online_updates);
    EXPECT_TRUE(cfg.protocol.agent.clamp_nonnegative);
    EXPECT_EQ(cfg.protocol.agent.adjustment_unit, 12.5);
    EXPECT_EQ(cfg.grid_tolerances.size(), 3u);
    EXPECT_EQ(cfg.grid_epsilons, (std::vector<double>{0.05, 0.1}));
    EXPECT_EQ(cfg.seasonal_period, 5u);
    EXPECT_NO_THROW(cfg.validate());
    for (auto key : RunConfig::keys()) EXPECT_NE(cfg.canonical().find(std::string(key) + "="), std::string::npos);
}

TEST(RunConfig, MalformedValuesAreConfigErrors) {
    RunConfig cfg;
    for (auto [k, v] : std::vector<std::pair<const char*, const char*>>{{"seed", "-1"},
                                                                        {"epsilon", "lots"},
                                                                        {"online_updates", "maybe"},
                                                                        {"test_range", "March"},
                                                                        {"forecaster", "arima"},
                                                                        {"tolerance", "0"},
                                                                        {"colour", "blue"}}) {
        try {
            cfg.set(k, v);
            ADD_FAILURE() << k;
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::InvalidConfig) << k;
        }
    }
}

TEST(RunConfig, RangesMustNotOverlap) {
    RunConfig cfg = base();
    EXPECT_NO_THROW(cfg.validate());
    cfg.set("train_range", "2019-01..2020-03");
    EXPECT_THROW(cfg.validate(), Error);
    cfg.set("train_range", "2020-04..2020-05");
    EXPECT_THROW(cfg.validate(), Error);
}

TEST(RunConfig, ExactlyOneForecastSource) {
    RunConfig cfg = base();
    cfg.set("forecaster", "external");
    EXPECT_THROW(cfg.validate(), Error);
    cfg.set("external_forecast_path", "fc.csv");
    EXPECT_NO_THROW(cfg.validate());
    cfg.set("forecaster", "drift");
    EXPECT_THROW(cfg.validate(), Error);
}

TEST(RunConfig, RequiredFieldsAndGridPairs) {
    RunConfig cfg;
    EXPECT_THROW(cfg.validate(), Error);
    cfg = base();
    cfg.set("grid_tolerances", "10%");
    EXPECT_THROW(cfg.validate(), Error);
    cfg.set("grid_epsilons", "1.5");
    EXPECT_THROW(cfg.validate(), Error);
    cfg.set("grid_epsilons", "0.5");
    EXPECT_NO_THROW(cfg.validate());
}
