#include "dtr/error.hpp"
#include "dtr/forecasting.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace dtr;
using V = std::vector<double>;

TEST(Naive, RepeatsLastValue) {
    EXPECT_EQ(naive(V{7, 3, 10}, 3), (V{10, 10, 10}));
    EXPECT_EQ(naive(V{5}, 1), (V{5}));
    EXPECT_EQ(naive(V{1, 2, 3}, 2), (V{3, 3}));
    EXPECT_THROW(naive(V{}, 1), Error);
}

TEST(SeasonalNaive, RepeatsLastPeriod) {
    const V week{1, 2, 3, 4, 5, 6, 7};
    EXPECT_EQ(seasonal_naive(week, 7, 7), week);
    EXPECT_EQ(seasonal_naive(week, 7, 9), (V{1, 2, 3, 4, 5, 6, 7, 1, 2}));
    EXPECT_THROW(seasonal_naive(V{1, 2}, 7, 3), Error);
    EXPECT_THROW(seasonal_naive(week, 0, 3), Error);
}

TEST(Drift, ExtendsTheLine) {
    EXPECT_EQ(drift(V{10, 16}, 2), (V{22, 28}));
    EXPECT_EQ(drift(V{4, 4, 4}, 5), (V(5, 4.0)));
    EXPECT_EQ(drift(V{0, 1, 2, 3}, 1), (V{4}));
    EXPECT_THROW(drift(V{1}, 1), Error);
}

TEST(ForecasterProperties, OutputsAreFiniteAndOfLengthH) {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> value(0, 1000);
    for (int trial = 0; trial < 50; ++trial) {
        V hist(30);
        for (double& x : hist) x = value(gen);
        const std::size_t h = 1 + static_cast<std::size_t>(trial % 40);
        for (auto f : {Forecaster::naive, Forecaster::seasonal_naive, Forecaster::drift}) {
            const auto out = base_forecast(f, hist, h, 7);
            ASSERT_EQ(out.size(), h);
            for (double x : out) EXPECT_TRUE(std::isfinite(x));
            if (f != Forecaster::drift) {
                for (double x : out) EXPECT_NE(std::find(hist.begin(), hist.end(), x), hist.end());
            }
        }
    }
}

TEST(ForecasterProperties, DriftOnArithmeticProgressionIsExact) {
    for (double start : {-50.0, 0.0, 12.5}) {
        for (double step : {-3.0, 0.25, 7.0}) {
            V hist;
            for (int i = 0; i < 10; ++i) hist.push_back(start + step * i);
            const auto out = drift(hist, 5);
            for (int k = 0; k < 5; ++k) {
                const double expected = start + step * (10 + k);
                EXPECT_NEAR(out[static_cast<std::size_t>(k)], expected, 1e-12 * std::max(1.0, std::abs(expected)));
            }
        }
    }
}

TEST(Forecaster, ParseRoundTrip) {
    for (auto f : {Forecaster::naive, Forecaster::seasonal_naive, Forecaster::drift, Forecaster::external}) {
        EXPECT_EQ(parse_forecaster(to_string(f)), f);
    }
    EXPECT_THROW(parse_forecaster("arima"), Error);
    EXPECT_THROW(base_forecast(Forecaster::external, V{1}, 1), Error);
}

TEST(ForecastSet, MonthlyTotalDefaultsToDailySum) {
    const ForecastSet fs(YearMonth(2019, 2), V(28, 10.0));
    EXPECT_EQ(fs.monthly_total(), 280.0);
    EXPECT_FALSE(fs.incoherent());
    EXPECT_THROW(ForecastSet(YearMonth(2019, 2), V(29, 1.0)), Error);
}

TEST(ForecastSet, ExternalTotalIsCheckedForCoherence) {
    const ForecastSet close(YearMonth(2020, 3), V(31, 100.0), 3101.0);
    EXPECT_FALSE(close.incoherent());
    const ForecastSet far(YearMonth(2020, 3), V(31, 100.0), 3200.0);
    EXPECT_TRUE(far.incoherent());
    EXPECT_NEAR(far.coherence_gap(), 100.0 / 3100.0, 1e-15);
}
