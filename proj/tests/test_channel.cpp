#include <gtest/gtest.h>

#include <cmath>

#include <subnyq/channel.hpp>
#include <subnyq/io.hpp>

using namespace subnyq;

namespace {

std::vector<std::string> names(const StateSet& s) {
    std::vector<std::string> out;
    for (const auto& st : s.states) out.push_back(st.to_string());
    return out;
}

}  // namespace

TEST(ChannelState, OneBasedRoundTrip) {
    const std::vector<int> one{1, 3, 4};
    const auto s = ChannelState::from_one_based(one);
    EXPECT_EQ(s.to_string(), "{1,3,4}");
    EXPECT_EQ(s[0], 0);
    EXPECT_TRUE(s.contains(2));
    EXPECT_FALSE(s.contains(1));
    EXPECT_THROW(ChannelState(std::vector<int>{2, 1}), argument_error);
    EXPECT_THROW(ChannelState(std::vector<int>{1, 1}), argument_error);
    EXPECT_THROW(ChannelState(std::vector<int>{-1, 1}), argument_error);
    EXPECT_THROW(s.validate_for(4, 2), argument_error);
    EXPECT_THROW(s.validate_for(3, 3), argument_error);
    EXPECT_NO_THROW(s.validate_for(4, 3));
}

TEST(ChannelState, ColexOrdering) {
    const ChannelState a(std::vector<int>{1, 2});
    const ChannelState b(std::vector<int>{0, 3});
    EXPECT_TRUE(a < b);
    EXPECT_FALSE(b < a);
}

TEST(EnumerateStates, SmallExhaustive) {
    auto s = enumerate_states(3, 2, 10);
    EXPECT_FALSE(s.sampled);
    EXPECT_EQ(names(s), (std::vector<std::string>{"{1,2}", "{1,3}", "{2,3}"}));
    s = enumerate_states(2, 1, 10);
    EXPECT_EQ(names(s), (std::vector<std::string>{"{1}", "{2}"}));
}

TEST(EnumerateStates, CountMatchesBinomial) {
    const auto s = enumerate_states(16, 4, 5000);
    EXPECT_FALSE(s.sampled);
    EXPECT_EQ(s.states.size(), 1820u);
    for (std::size_t i = 1; i < s.states.size(); ++i) ASSERT_TRUE(s.states[i - 1] < s.states[i]);
}

TEST(EnumerateStates, SampledIsDeterministicAndDistinct) {
    const auto a = enumerate_states(30, 5, 200);
    const auto b = enumerate_states(30, 5, 200);
    EXPECT_TRUE(a.sampled);
    ASSERT_EQ(a.states.size(), 200u);
    EXPECT_EQ(a.states, b.states);
    for (std::size_t i = 1; i < a.states.size(); ++i) ASSERT_TRUE(a.states[i - 1] < a.states[i]);
}

TEST(EnumerateStates, RejectsBadArguments) {
    EXPECT_THROW(enumerate_states(3, 3, 10), argument_error);
    EXPECT_THROW(enumerate_states(3, 0, 10), argument_error);
    EXPECT_THROW(enumerate_states(3, 1, 0), argument_error);
}

TEST(CompoundChannel, Validation) {
    EXPECT_THROW(CompoundChannel::flat(0.0, 4, 1, 1.0), argument_error);
    EXPECT_THROW(CompoundChannel::flat(1.0, 1, 1, 1.0), argument_error);
    EXPECT_THROW(CompoundChannel::flat(1.0, 4, 4, 1.0), argument_error);
    EXPECT_THROW(CompoundChannel::flat(1.0, 4, 1, -1.0), argument_error);
    EXPECT_THROW(CompoundChannel(1.0, 2, 1, 1.0, GainGrid{{1.0, 1.0}, {1.0}}), argument_error);
    EXPECT_THROW(CompoundChannel(1.0, 2, 1, 1.0, GainGrid{{1.0}}), argument_error);
    const auto ch = CompoundChannel::flat(8.0, 4, 1, 2.0, 1.0, 3);
    EXPECT_DOUBLE_EQ(ch.beta(), 0.25);
    EXPECT_DOUBLE_EQ(ch.cell_width(), 8.0 / 12.0);
    EXPECT_DOUBLE_EQ(ch.snr_scale(), 1.0);
}

TEST(SnrSummary, FlatUnitSnr) {
    const double w = 4.0, beta = 0.5;
    const auto ch = CompoundChannel::flat(w, 4, 2, beta * w);
    const auto s = snr_summary(ch);
    EXPECT_DOUBLE_EQ(s.snr_min, 1.0);
    EXPECT_DOUBLE_EQ(s.snr_max, 1.0);
    EXPECT_NEAR(s.a_bar, 1.0, 1e-15);
}

TEST(SnrSummary, TwoGains) {
    const double w = 2.0;
    const CompoundChannel ch(w, 2, 1, 0.5 * w, GainGrid{{1.0}, {2.0}});
    const auto s = snr_summary(ch);
    EXPECT_DOUBLE_EQ(s.snr_min, 1.0);
    EXPECT_DOUBLE_EQ(s.snr_max, 4.0);
    // Heaviest single subband carries |H|^2 = 4 over width 1; beta W = 1.
    EXPECT_DOUBLE_EQ(s.a_bar, 4.0);
}

TEST(SnrSummary, AverageFormCanBeSmaller) {
    // Subband 1 has a narrow peak: peak ratio 9, average ratio (9 + 1)/2 = 5.
    const CompoundChannel ch(2.0, 2, 1, 1.0, GainGrid{{3.0, 1.0}, {1.0, 1.0}});
    const auto s = snr_summary(ch);
    EXPECT_DOUBLE_EQ(s.a_bar, 5.0);
    EXPECT_LE(s.snr_min, s.snr_max);
}

TEST(SnrSummary, ZeroGainOrPowerIsDomainError) {
    const CompoundChannel zero(1.0, 2, 1, 1.0, GainGrid{{0.0}, {1.0}});
    EXPECT_THROW(snr_summary(zero), domain_error);
    EXPECT_THROW(snr_summary(CompoundChannel::flat(1.0, 2, 1, 0.0)), domain_error);
}

TEST(SnrSummary, PerStateGainsCount) {
    std::map<ChannelState, GainGrid> per;
    per.emplace(ChannelState(std::vector<int>{1}), GainGrid{{1.0}, {3.0}});
    const CompoundChannel ch(2.0, 2, 1, 1.0, GainGrid{{1.0}, {1.0}}, per);
    EXPECT_DOUBLE_EQ(snr_summary(ch).snr_max, 9.0);
    EXPECT_DOUBLE_EQ(ch.active_gain(ChannelState(std::vector<int>{1}), 0, 0), 3.0);
    EXPECT_DOUBLE_EQ(ch.active_gain(ChannelState(std::vector<int>{0}), 0, 0), 1.0);
}

TEST(ChannelJson, RoundTrip) {
    const auto j = json::parse(R"({"W": 8, "n": 4, "k": 2, "P": 3, "q": 2,
        "gains": [[1, 2], [3, 4], [5, 6], [7, 8]],
        "state_gains": [{"state": [1, 4], "gains": [[1, 1], [1, 1], [1, 1], [2, 2]]}]})");
    const auto ch = channel_from_json(j);
    EXPECT_EQ(ch.grid_points(), 2);
    EXPECT_DOUBLE_EQ(ch.gains()[2][1], 6.0);
    const ChannelState s(std::vector<int>{0, 3});
    EXPECT_DOUBLE_EQ(ch.active_gain(s, 1, 0), 2.0);
    const auto back = channel_from_json(channel_to_json(ch));
    EXPECT_EQ(channel_to_json(back), channel_to_json(ch));
}

TEST(ChannelJson, BadDocumentsAreArgumentErrors) {
    EXPECT_THROW(channel_from_json(json::parse(R"({"W": 1})")), argument_error);
    EXPECT_THROW(channel_from_json(json::parse(R"({"W": 1, "n": 2, "k": 1, "P": 1, "q": 2, "gains": [[1], [1]]})")),
                 argument_error);
}

TEST(ChannelJson, BundledExampleLoads) {
    const auto ch = load_channel(std::string(SUBNYQ_DATA_DIR) + "/example_channel.json");
    EXPECT_EQ(ch.n_subbands(), 8);
    EXPECT_EQ(ch.k_active(), 2);
    EXPECT_EQ(ch.grid_points(), 4);
    EXPECT_EQ(ch.state_gains().size(), 1u);
    EXPECT_GT(snr_summary(ch).snr_min, 0.0);
}
