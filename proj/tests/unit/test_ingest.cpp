#include "dtr/error.hpp"
#include "dtr/ingest.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace dtr;

namespace {

TimeSeries parse(const std::string& text, std::string_view value = "Open") {
    std::istringstream in(text);
    return read_ohlcv_csv(in, "Date", value);
}

ErrorKind kind_of(const std::string& text) {
    try {
        parse(text);
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error for:\n" << text;
    return ErrorKind::Io;
}

const std::string kData = DTR_TEST_DATA_DIR;

} // namespace

TEST(LoadOhlcv, DayFirstDateRow) {
    const auto ts = parse("Date,Open,High,Low,Close,Volume\n01/03/20,11386,11400,11300,11350,1000\n");
    ASSERT_EQ(ts.size(), 1u);
    EXPECT_EQ(ts.date(0), Date(2020, 3, 1));
    EXPECT_EQ(ts.value(0), 11386.0);
}

TEST(LoadOhlcv, PicksTheRequestedColumn) {
    const auto ts = parse("Date,Open,High,Low,Close,Volume\n2020-03-02,1,2,3,4,5\n", "Close");
    EXPECT_EQ(ts.value(0), 4.0);
}

TEST(LoadOhlcv, ShuffledRowsComeOutSorted) {
    const auto ts = parse("Date,Open\n2020-01-03,3\n2020-01-01,1\n2020-01-02,2\n");
    ASSERT_EQ(ts.size(), 3u);
    EXPECT_EQ(ts.date(0), Date(2020, 1, 1));
    EXPECT_EQ(ts.value(2), 3.0);
}

TEST(LoadOhlcv, QuotedFieldsAndThousandsSeparators) {
    const auto ts = parse("\"Date\",\"Open\"\n\"2020-01-01\",\"11,386.5\"\n");
    EXPECT_EQ(ts.value(0), 11386.5);
}

TEST(LoadOhlcv, ErrorKinds) {
    EXPECT_EQ(kind_of(""), ErrorKind::Schema);
    EXPECT_EQ(kind_of("Date,Close\n2020-01-01,1\n"), ErrorKind::Schema);
    EXPECT_EQ(kind_of("Date,Open\n"), ErrorKind::Schema);
    EXPECT_EQ(kind_of("Date,Open\n2020-01-01,1\n2020-01-01,2\n"), ErrorKind::DuplicateKey);
    EXPECT_EQ(kind_of("Date,Open\n2020-01-01,abc\n"), ErrorKind::Parse);
    EXPECT_EQ(kind_of("Date,Open\n2020-01-01,1\n2020-02-30,1\n"), ErrorKind::Parse);
}

TEST(LoadOhlcv, ParseErrorsNameTheLine) {
    try {
        parse("Date,Open\n2020-01-01,1\n2020-01-02,1\nnot-a-date,1\n");
        FAIL();
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
    }
}

TEST(LoadOhlcv, MissingFileNamesThePath) {
    try {
        load_ohlcv_csv("/no/such/dir/prices.csv");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Io);
        EXPECT_NE(std::string(e.what()).find("/no/such/dir/prices.csv"), std::string::npos);
    }
}

TEST(FillCalendar, WeekendInterpolation) {
    // 2020-03-06 is a Friday.
    const TimeSeries ts({Date(2020, 3, 6), Date(2020, 3, 9)}, {100, 106});
    const auto filled = fill_calendar(ts);
    ASSERT_EQ(filled.size(), 4u);
    EXPECT_EQ(filled.value(1), 102.0);
    EXPECT_EQ(filled.value(2), 104.0);
    EXPECT_TRUE(filled.calendar_complete());
}

TEST(FillCalendar, IdentityAndMidpoint) {
    const TimeSeries full({Date(2020, 1, 1), Date(2020, 1, 2)}, {5, 6});
    EXPECT_EQ(fill_calendar(full), full);
    const auto mid = fill_calendar(TimeSeries({Date(2020, 1, 1), Date(2020, 1, 3)}, {10, 20}));
    EXPECT_EQ(mid.value(1), 15.0);
    EXPECT_THROW(fill_calendar(TimeSeries{}), Error);
}

TEST(MonthPartition, Counts) {
    std::vector<Date> dates;
    std::vector<double> values;
    for (Date d(2019, 1, 1); d <= Date(2020, 3, 31); d = d.plus_days(1)) {
        dates.push_back(d);
        values.push_back(static_cast<double>(values.size()));
    }
    const TimeSeries ts(dates, values);
    const auto train = month_partition(ts, MonthRange::parse("2019-01..2020-02"));
    EXPECT_EQ(train.size(), 14u);
    EXPECT_EQ(train.back().values.size(), 29u);
    const auto test = month_partition(ts, MonthRange::parse("2020-03"));
    ASSERT_EQ(test.size(), 1u);
    EXPECT_EQ(test.front().values.size(), 31u);

    std::vector<double> joined;
    for (const auto& m : month_partition(ts, MonthRange::parse("2019-01..2020-03"))) {
        joined.insert(joined.end(), m.values.begin(), m.values.end());
    }
    EXPECT_EQ(joined, values);
}

TEST(MonthPartition, IncompleteBoundaryMonthIsNamed) {
    const auto ts = fill_calendar(TimeSeries({Date(2020, 1, 5), Date(2020, 3, 31)}, {1, 2}));
    try {
        month_partition(ts, MonthRange::parse("2020-01..2020-03"));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Boundary);
        EXPECT_NE(std::string(e.what()).find("2020-01"), std::string::npos);
    }
    EXPECT_THROW(month_partition(TimeSeries({Date(2020, 1, 1), Date(2020, 1, 3)}, {1, 2}), MonthRange::parse("2020-01")),
                 Error);
}

TEST(RoundTrip, LoadFillPartitionReproducesFilledSeries) {
    const auto filled = fill_calendar(load_ohlcv_csv(kData + "/ohlcv_sample.csv"));
    const auto months = month_partition(filled, MonthRange::parse("2019-01..2020-03"));
    std::vector<double> joined;
    for (const auto& m : months) joined.insert(joined.end(), m.values.begin(), m.values.end());
    const auto start = filled.values_before(Date(2019, 1, 1)).size();
    const auto tail = filled.values().subspan(start);
    EXPECT_EQ(joined, std::vector<double>(tail.begin(), tail.end()));
}

TEST(ExternalForecast, MarchColumn) {
    const auto fc = load_external_forecast(kData + "/march2020_forecast.csv");
    EXPECT_TRUE(fc.covers(YearMonth(2020, 3)));
    EXPECT_FALSE(fc.covers(YearMonth(2020, 2)));
    const auto cycle = fc.cycle(YearMonth(2020, 3));
    EXPECT_EQ(cycle.size(), 31u);
    EXPECT_EQ(cycle.daily_sum(), 367704.0);
    EXPECT_EQ(cycle.daily()[0], 11354.0);
}

TEST(ExternalForecast, MonthlyTotalOverride) {
    std::istringstream in("date,forecast\n2021-02-01,10\n2021-02-02,10\nmonthly_total,300\n");
    auto fc = read_external_forecast(in);
    for (int d = 3; d <= 28; ++d) fc.daily[Date(2021, 2, static_cast<unsigned>(d))] = 10;
    const auto cycle = fc.cycle(YearMonth(2021, 2));
    EXPECT_EQ(cycle.monthly_total(), 300.0);
    EXPECT_EQ(cycle.daily_sum(), 280.0);
    EXPECT_TRUE(cycle.incoherent());
    EXPECT_THROW(fc.cycle(YearMonth(2021, 3)), Error);
}

TEST(ExternalForecast, Errors) {
    std::istringstream dup("date,forecast\n2021-02-01,10\n2021-02-01,11\n");
    EXPECT_THROW(read_external_forecast(dup), Error);
    std::istringstream no_col("date,value\n2021-02-01,10\n");
    EXPECT_THROW(read_external_forecast(no_col), Error);
    EXPECT_THROW(load_external_forecast("/missing.csv"), Error);
}
