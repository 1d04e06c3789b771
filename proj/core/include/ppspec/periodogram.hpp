#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ppspec/events.hpp"
#include "ppspec/spectral_matrix.hpp"
#include "ppspec/taper.hpp"

namespace ppspec {

/// (1/m) sum_k dbar_k dbar_k^H over the rows of `coeffs`; m_eff = m.
[[nodiscard]] SpectralMatrix multitaper(const FourierCoeffs& coeffs);

/// Multi-taper periodogram of mean-corrected coefficients at omega.
[[nodiscard]] SpectralMatrix periodogram(const EventData& data, const TaperSet& taper, double omega);

/// Fourier frequencies of T' inside the band (2 pi lo, 2 pi hi]; frequency 0
/// is never included. Bounds in Hz.
[[nodiscard]] Band band_frequencies(const TaperSet& taper, double lo_hz, double hi_hz);

/// Trial-frequency smoothed estimator: mean of the per-frequency multi-taper
/// periodograms over the band, m_eff = m * |band|.
[[nodiscard]] SpectralMatrix smoothed_periodogram(const EventData& data, const TaperSet& taper,
                                                  const Band& band);

/// Projects tiny negative eigenvalues (>= -1e-10 relative) to zero.
/// Throws NumericalError for larger negativity.
[[nodiscard]] HermitianMatrix clip_psd(const HermitianMatrix& h);

/// |S_qr|^2 / (S_qq S_rr), clipped to [0, 1].
[[nodiscard]] double coherence(const SpectralMatrix& s, std::size_t q, std::size_t r);
[[nodiscard]] double coherence(const HermitianMatrix& s, std::size_t q, std::size_t r);

/// Gauss hypergeometric 2F1(a, b; c; z) by power series, |z| < 1.
[[nodiscard]] double hypergeometric_2f1(double a, double b, double c, double z);

enum class GoodmanForm {
    /// (m-1) (1-R2)^m (1-x)^(m-2) 2F1(m, m; 1; R2 x): a proper density on [0, 1].
    classical,
    /// (m-1) (1-R2) (1-x^2)^(m-2) 2F1(m, m; 1; R2 x), kept for comparison;
    /// it does not integrate to one.
    as_printed,
};

/// Density of the sample coherence from m tapers when the true coherence is R2.
[[nodiscard]] double goodman_density(double x, std::size_t m, double r2,
                                     GoodmanForm form = GoodmanForm::classical);

/// Tail bound 8 exp(-m delta^2 / (2^9 5^2 s_max^2)) on |S_hat_qr - S_qr| >= delta,
/// valid for 0 < delta < 80 s_max. Values above one are returned unchanged.
[[nodiscard]] double deviation_bound(std::size_t m, double delta, double s_max);

} // namespace ppspec
