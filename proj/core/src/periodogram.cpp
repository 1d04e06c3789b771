#include "ppspec/periodogram.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "ppspec/errors.hpp"

namespace ppspec {

HermitianMatrix clip_psd(const HermitianMatrix& h) {
    if (h.dim() == 0) {
        return h;
    }
    const EigenDecomposition eig = eig_hermitian(h);
    const double largest = std::max(0.0, eig.values[eig.values.size() - 1]);
    const double floor = -1e-10 * largest;
    if (eig.values[0] >= 0.0) {
        return h;
    }
    if (eig.values[0] < floor) {
        throw NumericalError("clip_psd: eigenvalue " + std::to_string(eig.values[0]) +
                             " is too negative for an outer-product average");
    }
    return spectral_map(eig, [](double c) { return c < 0.0 ? 0.0 : c; });
}

SpectralMatrix multitaper(const FourierCoeffs& coeffs) {
    const std::size_t m = coeffs.tapers();
    if (m == 0) {
        throw EmptyInput("multitaper: no tapers");
    }
    // Rows of `values` are dbar_k^T, so sum_k dbar_k dbar_k^H = V^T conj(V).
    const ComplexMatrix s = coeffs.values.transpose() * coeffs.values.conjugate() / static_cast<double>(m);
    return SpectralMatrix{coeffs.omega, std::nullopt, clip_psd(HermitianMatrix::hermitian_part(s)), m};
}

SpectralMatrix periodogram(const EventData& data, const TaperSet& taper, double omega) {
    return multitaper(mean_corrected_ft(data, taper, omega));
}

Band band_frequencies(const TaperSet& taper, double lo_hz, double hi_hz) {
    if (!(lo_hz >= 0.0) || !(hi_hz > lo_hz)) {
        throw InvalidArgument("band_frequencies: need 0 <= lo < hi");
    }
    Band band{lo_hz, hi_hz, {}};
    const double seg = taper.segment_length();
    // f / T' in (lo, hi]  <=>  omega = 2 pi f / T' in (2 pi lo, 2 pi hi].
    const auto f_hi = static_cast<std::size_t>(std::floor(hi_hz * seg * (1.0 + 1e-12)));
    for (std::size_t f = 1; f <= f_hi; ++f) {
        const double hz = static_cast<double>(f) / seg;
        if (hz > lo_hz * (1.0 + 1e-12)) {
            band.frequencies.push_back(2.0 * std::numbers::pi * hz);
        }
    }
    return band;
}

SpectralMatrix smoothed_periodogram(const EventData& data, const TaperSet& taper, const Band& band) {
    if (band.frequencies.empty()) {
        throw EmptyInput("smoothed_periodogram: band contains no Fourier frequencies");
    }
    const auto p = static_cast<Eigen::Index>(data.channels());
    ComplexMatrix acc = ComplexMatrix::Zero(p, p);
    for (double omega : band.frequencies) {
        if (omega == 0.0) {
            throw InvalidArgument("smoothed_periodogram: frequency 0 is excluded from bands");
        }
        const FourierCoeffs d = mean_corrected_ft(data, taper, omega);
        acc += d.values.transpose() * d.values.conjugate();
    }
    const std::size_t m_eff = data.trials() * band.frequencies.size();
    acc /= static_cast<double>(m_eff);
    const double mean_omega = std::accumulate(band.frequencies.begin(), band.frequencies.end(), 0.0) /
                              static_cast<double>(band.frequencies.size());
    return SpectralMatrix{mean_omega, band, clip_psd(HermitianMatrix::hermitian_part(acc)), m_eff};
}

double coherence(const HermitianMatrix& s, std::size_t q, std::size_t r) {
    const double sqq = s.diag(q);
    const double srr = s.diag(r);
    if (!(sqq > 0.0) || !(srr > 0.0)) {
        throw DegenerateChannel("coherence: channel with zero auto-spectrum");
    }
    const double value = std::norm(s(q, r)) / (sqq * srr);
    return std::clamp(value, 0.0, 1.0);
}

double coherence(const SpectralMatrix& s, std::size_t q, std::size_t r) {
    return coherence(s.matrix, q, r);
}

double hypergeometric_2f1(double a, double b, double c, double z) {
    if (!(std::abs(z) < 1.0)) {
        throw OutOfDomain("hypergeometric_2f1: series requires |z| < 1");
    }
    double term = 1.0;
    double sum = 1.0;
    for (int n = 0; n < 10'000'000; ++n) {
        const double dn = n;
        term *= (a + dn) * (b + dn) / ((c + dn) * (dn + 1.0)) * z;
        sum += term;
        if (std::abs(term) < 1e-14 * std::abs(sum)) {
            return sum;
        }
    }
    throw NonConvergence("hypergeometric_2f1: series did not converge");
}

double goodman_density(double x, std::size_t m, double r2, GoodmanForm form) {
    if (m < 2) {
        throw InvalidArgument("goodman_density: requires m >= 2");
    }
    if (!(x >= 0.0 && x <= 1.0) || !(r2 >= 0.0 && r2 < 1.0)) {
        throw OutOfDomain("goodman_density: requires x in [0, 1] and R2 in [0, 1)");
    }
    if (r2 * x >= 1.0) {
        throw OutOfDomain("goodman_density: R2 * x must be below 1");
    }
    const double md = static_cast<double>(m);
    const double f21 = r2 == 0.0 ? 1.0 : hypergeometric_2f1(md, md, 1.0, r2 * x);
    if (form == GoodmanForm::as_printed) {
        return (md - 1.0) * (1.0 - r2) * std::pow(1.0 - x * x, md - 2.0) * f21;
    }
    return (md - 1.0) * std::pow(1.0 - r2, md) * std::pow(1.0 - x, md - 2.0) * f21;
}

double deviation_bound(std::size_t m, double delta, double s_max) {
    if (!(s_max > 0.0)) {
        throw OutOfDomain("deviation_bound: s_max must be positive");
    }
    if (!(delta > 0.0 && delta < 80.0 * s_max)) {
        throw OutOfDomain("deviation_bound: delta must lie in (0, 80 s_max)");
    }
    constexpr double denom_scale = 512.0 * 25.0; // 2^9 5^2
    return 8.0 * std::exp(-static_cast<double>(m) * delta * delta / (denom_scale * s_max * s_max));
}

} // namespace ppspec
