#include "ppspec/events.hpp"

#include <cmath>
#include <string>

#include "ppspec/errors.hpp"

namespace ppspec {

namespace {

void require_shape(std::size_t p, std::size_t m, double horizon) {
    if (p == 0) {
        throw ValidationError("EventData: channel count must be positive");
    }
    if (m == 0) {
        throw ValidationError("EventData: trial count must be positive");
    }
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
        throw ValidationError("EventData: horizon must be positive and finite");
    }
}

} // namespace

EventData::EventData(std::size_t p, std::size_t m, double horizon, std::vector<Trial> trials)
    : p_(p), m_(m), horizon_(horizon), trials_(std::move(trials)) {
    require_shape(p, m, horizon);
    if (trials_.size() != m_) {
        throw ValidationError("EventData: expected " + std::to_string(m_) + " trials, got " +
                              std::to_string(trials_.size()));
    }
    const double seg = segment_length();
    const double slack = 1e-9 * seg;
    for (std::size_t k = 0; k < m_; ++k) {
        if (trials_[k].size() != p_) {
            throw ValidationError("EventData: trial " + std::to_string(k) + " has " +
                                  std::to_string(trials_[k].size()) + " channels, expected " +
                                  std::to_string(p_));
        }
        const double lo = segment_start(k) - slack;
        const double hi = segment_start(k) + seg + slack;
        for (std::size_t q = 0; q < p_; ++q) {
            const Stream& s = trials_[k][q];
            for (std::size_t i = 0; i < s.size(); ++i) {
                const double t = s[i];
                if (!std::isfinite(t) || t <= lo || t > hi || t <= 0.0 || t > horizon_ + slack) {
                    throw ValidationError("EventData: time " + std::to_string(t) + " of trial " +
                                          std::to_string(k) + " channel " + std::to_string(q) +
                                          " lies outside its segment");
                }
                if (i > 0 && !(t > s[i - 1])) {
                    throw ValidationError("EventData: times of trial " + std::to_string(k) +
                                          " channel " + std::to_string(q) +
                                          " are not strictly increasing");
                }
            }
        }
    }
}

EventData EventData::empty(std::size_t p, std::size_t m, double horizon) {
    return EventData(p, m, horizon, std::vector<Trial>(m, Trial(p)));
}

EventData EventData::from_local_times(std::size_t p, std::size_t m, double horizon,
                                      std::vector<Trial> local) {
    require_shape(p, m, horizon);
    const double seg = horizon / static_cast<double>(m);
    for (std::size_t k = 0; k < local.size(); ++k) {
        const double offset = static_cast<double>(k) * seg;
        for (auto& stream : local[k]) {
            for (double& t : stream) {
                if (t <= 0.0 || t > seg * (1.0 + 1e-12)) {
                    throw ValidationError("EventData: local time " + std::to_string(t) +
                                          " of trial " + std::to_string(k) +
                                          " outside (0, T/m]");
                }
                t += offset;
            }
        }
    }
    return EventData(p, m, horizon, std::move(local));
}

std::span<const double> EventData::events(std::size_t trial, std::size_t channel) const {
    return trials_.at(trial).at(channel);
}

std::size_t EventData::channel_count(std::size_t channel) const {
    std::size_t n = 0;
    for (const auto& trial : trials_) {
        n += trial.at(channel).size();
    }
    return n;
}

std::size_t EventData::total_events() const {
    std::size_t n = 0;
    for (const auto& trial : trials_) {
        for (const auto& s : trial) {
            n += s.size();
        }
    }
    return n;
}

EventData EventData::leading_channels(std::size_t p) const {
    if (p == 0 || p > p_) {
        throw ValidationError("EventData::leading_channels: invalid channel count");
    }
    std::vector<Trial> out(m_);
    for (std::size_t k = 0; k < m_; ++k) {
        out[k].assign(trials_[k].begin(), trials_[k].begin() + static_cast<std::ptrdiff_t>(p));
    }
    EventData d;
    d.p_ = p;
    d.m_ = m_;
    d.horizon_ = horizon_;
    d.trials_ = std::move(out);
    return d;
}

} // namespace ppspec
