#include <gtest/gtest.h>

#include "ppspec/errors.hpp"
#include "ppspec/events.hpp"

using namespace ppspec;

TEST(EventData, EmptyHasNoEvents) {
    const EventData d = EventData::empty(3, 4, 20.0);
    EXPECT_EQ(d.total_events(), 0u);
    EXPECT_EQ(d.channels(), 3u);
    EXPECT_EQ(d.trials(), 4u);
    EXPECT_DOUBLE_EQ(d.segment_length(), 5.0);
    EXPECT_TRUE(d.events(3, 2).empty());
}

TEST(EventData, TrialsOccupyConsecutiveSegments) {
    std::vector<EventData::Trial> trials(2, EventData::Trial(1));
    trials[0][0] = {0.5, 4.9};
    trials[1][0] = {5.1, 10.0};
    const EventData d(1, 2, 10.0, trials);
    EXPECT_EQ(d.channel_count(0), 4u);
    EXPECT_DOUBLE_EQ(d.segment_start(1), 5.0);

    trials[1][0] = {4.0};
    EXPECT_THROW(EventData(1, 2, 10.0, trials), ValidationError);
}

TEST(EventData, RejectsUnsortedAndDuplicateTimes) {
    std::vector<EventData::Trial> trials(1, EventData::Trial(1));
    trials[0][0] = {2.0, 1.0};
    EXPECT_THROW(EventData(1, 1, 10.0, trials), ValidationError);
    trials[0][0] = {1.0, 1.0};
    EXPECT_THROW(EventData(1, 1, 10.0, trials), ValidationError);
}

TEST(EventData, RejectsTimesOutsideHorizon) {
    std::vector<EventData::Trial> trials(1, EventData::Trial(1));
    trials[0][0] = {0.0};
    EXPECT_THROW(EventData(1, 1, 10.0, trials), ValidationError);
    trials[0][0] = {10.5};
    EXPECT_THROW(EventData(1, 1, 10.0, trials), ValidationError);
    trials[0][0] = {10.0};
    EXPECT_NO_THROW(EventData(1, 1, 10.0, trials));
}

TEST(EventData, RejectsBadShapes) {
    EXPECT_THROW(EventData::empty(0, 1, 1.0), ValidationError);
    EXPECT_THROW(EventData::empty(1, 0, 1.0), ValidationError);
    EXPECT_THROW(EventData::empty(1, 1, -1.0), ValidationError);
    EXPECT_THROW(EventData(2, 1, 1.0, std::vector<EventData::Trial>(1, EventData::Trial(1))), ValidationError);
}

TEST(EventData, LocalTimesAreOffsetOntoTheGlobalAxis) {
    std::vector<EventData::Trial> trials(3, EventData::Trial(1));
    trials[0][0] = {1.0};
    trials[1][0] = {1.0};
    trials[2][0] = {2.0};
    const EventData d = EventData::from_local_times(1, 3, 6.0, trials);
    EXPECT_DOUBLE_EQ(d.events(0, 0)[0], 1.0);
    EXPECT_DOUBLE_EQ(d.events(1, 0)[0], 3.0);
    EXPECT_DOUBLE_EQ(d.events(2, 0)[0], 6.0);

    trials[1][0] = {2.5};
    EXPECT_THROW((void)EventData::from_local_times(1, 3, 6.0, trials), ValidationError);
}

TEST(EventData, LeadingChannelsKeepsPrefix) {
    std::vector<EventData::Trial> trials(1, EventData::Trial(3));
    trials[0][0] = {1.0};
    trials[0][2] = {2.0, 3.0};
    const EventData d(3, 1, 5.0, trials);
    const EventData two = d.leading_channels(2);
    EXPECT_EQ(two.channels(), 2u);
    EXPECT_EQ(two.total_events(), 1u);
    EXPECT_THROW((void)d.leading_channels(4), ValidationError);
    EXPECT_EQ(d.leading_channels(3), d);
}
