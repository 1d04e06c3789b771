#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ppspec {

/// Multivariate event streams recorded over m trials laid end to end on (0, T].
///
/// Trial k (0-based) occupies the segment (k T', (k+1) T'] with T' = T/m, so
/// trials and non-overlapping tapers coincide. Times are stored on the global
/// axis and are strictly increasing within each (trial, channel).
class EventData {
public:
    using Stream = std::vector<double>;
    using Trial = std::vector<Stream>; // one stream per channel

    EventData() = default;

    /// Validates ordering and segment membership; throws ValidationError.
    EventData(std::size_t p, std::size_t m, double horizon, std::vector<Trial> trials);

    static EventData empty(std::size_t p, std::size_t m, double horizon);

    /// Builds from trial-local times in (0, T'] by offsetting trial k by k T'.
    static EventData from_local_times(std::size_t p, std::size_t m, double horizon,
                                      std::vector<Trial> local);

    [[nodiscard]] std::size_t channels() const noexcept { return p_; }
    [[nodiscard]] std::size_t trials() const noexcept { return m_; }
    [[nodiscard]] double horizon() const noexcept { return horizon_; }
    [[nodiscard]] double segment_length() const noexcept { return horizon_ / static_cast<double>(m_); }
    [[nodiscard]] double segment_start(std::size_t k) const noexcept {
        return static_cast<double>(k) * segment_length();
    }

    [[nodiscard]] std::span<const double> events(std::size_t trial, std::size_t channel) const;

    [[nodiscard]] std::size_t channel_count(std::size_t channel) const;
    [[nodiscard]] std::size_t total_events() const;

    /// Copy restricted to the first `p` channels.
    [[nodiscard]] EventData leading_channels(std::size_t p) const;

    friend bool operator==(const EventData&, const EventData&) = default;

private:
    std::size_t p_ = 0;
    std::size_t m_ = 0;
    double horizon_ = 0.0;
    std::vector<Trial> trials_;
};

} // namespace ppspec
