#include "ppspec/taper.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ppspec/errors.hpp"

namespace ppspec {

TaperSet::TaperSet(std::size_t m, double horizon) : m_(m), horizon_(horizon) {
    if (m == 0) {
        throw InvalidArgument("TaperSet: at least one taper is required");
    }
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
        throw InvalidArgument("TaperSet: horizon must be positive and finite");
    }
    height_ = 1.0 / std::sqrt(2.0 * std::numbers::pi * segment_length());
}

std::vector<double> fourier_frequencies(double horizon, std::size_t m, std::size_t f_max) {
    if (!(horizon > 0.0) || m == 0 || f_max == 0) {
        throw InvalidArgument("fourier_frequencies: need T > 0, m >= 1, f_max >= 1");
    }
    const double seg = horizon / static_cast<double>(m);
    std::vector<double> grid(f_max);
    for (std::size_t f = 1; f <= f_max; ++f) {
        grid[f - 1] = 2.0 * std::numbers::pi * static_cast<double>(f) / seg;
    }
    return grid;
}

std::size_t nearest_fourier_index(double horizon, std::size_t m, double omega) {
    if (!(horizon > 0.0) || m == 0 || !std::isfinite(omega)) {
        throw InvalidArgument("nearest_fourier_index: need T > 0, m >= 1 and finite omega");
    }
    const double seg = horizon / static_cast<double>(m);
    const double f = std::round(std::abs(omega) * seg / (2.0 * std::numbers::pi));
    return f < 1.0 ? 1 : static_cast<std::size_t>(f);
}

double sinc(double x) {
    return x == 0.0 ? 1.0 : std::sin(x) / x;
}

double sinc_pi(double u) {
    if (u == 0.0) {
        return 1.0;
    }
    const double n = std::round(u);
    const double r = u - n;
    if (n != 0.0 && std::abs(r) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(u)) {
        return 0.0;
    }
    const bool odd = std::fmod(std::abs(n), 2.0) == 1.0;
    const double s = std::sin(std::numbers::pi * r);
    return (odd ? -s : s) / (std::numbers::pi * u);
}

namespace {

// H_k(T omega) / H_k(0).
Complex taper_ratio(const TaperSet& taper, std::size_t k, double omega) {
    const double seg = taper.segment_length();
    const double amplitude = sinc_pi(omega * seg / (2.0 * std::numbers::pi));
    if (amplitude == 0.0) {
        return Complex{};
    }
    const double phase = -omega * seg * (static_cast<double>(k) + 0.5);
    return std::polar(amplitude, phase);
}

void require_compatible(const EventData& data, const TaperSet& taper) {
    if (data.trials() != taper.count()) {
        throw ShapeMismatch("tapered_ft: data has " + std::to_string(data.trials()) +
                            " trials but the taper set has " + std::to_string(taper.count()));
    }
    if (std::abs(data.horizon() - taper.horizon()) > 1e-12 * taper.horizon()) {
        throw ShapeMismatch("tapered_ft: data horizon differs from the taper horizon");
    }
}

} // namespace

Complex taper_transform(const TaperSet& taper, std::size_t k, double omega) {
    if (k >= taper.count()) {
        throw InvalidArgument("taper_transform: taper index out of range");
    }
    return taper.height() / static_cast<double>(taper.count()) * taper_ratio(taper, k, omega);
}

FourierCoeffs tapered_ft(const EventData& data, const TaperSet& taper, double omega) {
    require_compatible(data, taper);
    const std::size_t m = data.trials();
    const std::size_t p = data.channels();
    FourierCoeffs out{omega, ComplexMatrix::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(p))};
    for (std::size_t k = 0; k < m; ++k) {
        for (std::size_t q = 0; q < p; ++q) {
            Complex sum{};
            for (double t : data.events(k, q)) {
                sum += std::polar(1.0, -omega * t);
            }
            out.values(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(q)) = taper.height() * sum;
        }
    }
    return out;
}

FourierCoeffs mean_corrected_ft(const EventData& data, const TaperSet& taper, double omega) {
    FourierCoeffs out = tapered_ft(data, taper, omega);
    for (std::size_t k = 0; k < data.trials(); ++k) {
        const Complex ratio = taper_ratio(taper, k, omega);
        for (std::size_t q = 0; q < data.channels(); ++q) {
            const double d0 = taper.height() * static_cast<double>(data.events(k, q).size());
            out.values(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(q)) -= d0 * ratio;
        }
    }
    return out;
}

} // namespace ppspec
