#include "dtr/error.hpp"
#include "dtr/qtable_io.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace dtr;

namespace {

QTableSnapshot sample() {
    QTableSnapshot snap;
    snap.table = init_state_values(367706.5, std::vector<double>(31, 11861.5));
    snap.table.set_q(4, Action::decrease, 1.0 / 3.0);
    snap.table.set_q(31, Action::increase, -2.5e-7);
    AgentConfig cfg;
    cfg.tolerance = 73473;
    snap.config_hash = config_hash(cfg);
    snap.seed = 42;
    return snap;
}

std::string dump(const QTableSnapshot& snap) {
    std::ostringstream os;
    write_qtable(os, snap);
    return os.str();
}

} // namespace

TEST(QTableIo, LayoutHasHeaderColumnsAndAllEntries) {
    const std::string text = dump(sample());
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line.rfind("# dtr-qtable v1 config_hash=", 0), 0u);
    EXPECT_NE(line.find(" seed=42"), std::string::npos);
    std::getline(in, line);
    EXPECT_EQ(line, "day_index,action_index,q_value");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    EXPECT_EQ(rows, 31 * 3);
}

TEST(QTableIo, RoundTripIsExact) {
    const auto snap = sample();
    std::istringstream in(dump(snap));
    const auto back = read_qtable(in);
    EXPECT_EQ(back.config_hash, snap.config_hash);
    EXPECT_EQ(back.seed, 42u);
    for (std::size_t t = 1; t <= 31; ++t) {
        for (Action a : kActions) EXPECT_EQ(back.table.q(t, a), snap.table.q(t, a));
        EXPECT_EQ(back.table.v(t), snap.table.q(t, Action::keep));
    }
    EXPECT_EQ(dump(back), dump(snap));
}

TEST(QTableIo, RejectsDuplicateAndMissingEntries) {
    std::string text = dump(sample());
    const auto first_row = text.find("1,0,");
    std::string dup = text + text.substr(first_row, text.find('\n', first_row) - first_row + 1);
    std::istringstream dup_in(dup);
    try {
        read_qtable(dup_in);
        FAIL() << "duplicate accepted";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::DuplicateKey);
    }
    std::string missing = text.substr(0, text.rfind("31,2,"));
    std::istringstream missing_in(missing);
    EXPECT_THROW(read_qtable(missing_in), Error);
}

TEST(QTableIo, RejectsMalformedInput) {
    std::istringstream not_snapshot("day_index,action_index,q_value\n");
    EXPECT_THROW(read_qtable(not_snapshot), Error);
    std::string text = dump(sample());
    text.replace(text.find("5,1,"), 4, "5,7,");
    std::istringstream bad_action(text);
    EXPECT_THROW(read_qtable(bad_action), Error);
    EXPECT_THROW(load_qtable("/nonexistent/qtable.txt"), Error);
}

TEST(ConfigHash, TracksLearningFields) {
    AgentConfig a;
    AgentConfig b = a;
    EXPECT_EQ(config_hash(a), config_hash(b));
    EXPECT_EQ(config_hash(a).size(), 16u);
    b.exploration = 0.1;
    EXPECT_NE(config_hash(a), config_hash(b));
    b = a;
    b.seed = 9;
    EXPECT_NE(canonical_config(a), canonical_config(b));
}
