#pragma once

#include <cstddef>
#include <vector>

#include "ppspec/events.hpp"
#include "ppspec/hermitian.hpp"

namespace ppspec {

/// m non-overlapping indicator tapers of equal length T' = T/m on (0, T],
/// each of height (2 pi T')^{-1/2}.
class TaperSet {
public:
    TaperSet(std::size_t m, double horizon);

    static TaperSet for_data(const EventData& data) { return {data.trials(), data.horizon()}; }

    [[nodiscard]] std::size_t count() const noexcept { return m_; }
    [[nodiscard]] double horizon() const noexcept { return horizon_; }
    [[nodiscard]] double segment_length() const noexcept { return horizon_ / static_cast<double>(m_); }
    [[nodiscard]] double height() const noexcept { return height_; }

private:
    std::size_t m_;
    double horizon_;
    double height_;
};

/// Angular Fourier frequencies 2 pi f / T' for f = 1..f_max.
[[nodiscard]] std::vector<double> fourier_frequencies(double horizon, std::size_t m, std::size_t f_max);

/// Index f >= 1 of the Fourier frequency of T' closest to omega.
[[nodiscard]] std::size_t nearest_fourier_index(double horizon, std::size_t m, double omega);

/// sin(x)/x with the x = 0 limit.
[[nodiscard]] double sinc(double x);

/// sin(pi u)/(pi u). Exactly zero when u is a nonzero integer up to the
/// rounding of the product that produced it (a few ulp), so Fourier
/// frequencies computed as 2 pi f / T' map onto exact zeros.
[[nodiscard]] double sinc_pi(double u);

/// Scaled Fourier transform of taper k (0-based) evaluated at T omega:
///   ((2 pi T')^{-1/2} / m) sinc(omega T'/2) exp(-i omega T' (k + 1/2)).
[[nodiscard]] Complex taper_transform(const TaperSet& taper, std::size_t k, double omega);

/// Tapered Fourier coefficients: values(k, q) for taper k and channel q
/// (units events s^{1/2}).
struct FourierCoeffs {
    double omega = 0.0;
    ComplexMatrix values; // m x p

    [[nodiscard]] std::size_t tapers() const noexcept { return static_cast<std::size_t>(values.rows()); }
    [[nodiscard]] std::size_t channels() const noexcept { return static_cast<std::size_t>(values.cols()); }
};

[[nodiscard]] FourierCoeffs tapered_ft(const EventData& data, const TaperSet& taper, double omega);

/// d(omega) - d(0) H_k(T omega) / H_k(0), removing the contribution of the mean rate.
[[nodiscard]] FourierCoeffs mean_corrected_ft(const EventData& data, const TaperSet& taper,
                                              double omega);

} // namespace ppspec
