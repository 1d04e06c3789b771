#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "ppspec/hermitian.hpp"

namespace ppspec {

/// Frequency band (Hz bounds) and the angular Fourier frequencies it selects.
struct Band {
    double lo_hz = 0.0;
    double hi_hz = 0.0;
    std::vector<double> frequencies; // rad/s
};

/// Spectral density (or inverse) estimate tagged with its frequency.
///
/// For band-smoothed estimates `band` is set and `omega` holds the band's
/// mean frequency. Units are events^2 s/rad for spectra.
struct SpectralMatrix {
    double omega = 0.0;
    std::optional<Band> band;
    HermitianMatrix matrix;
    std::size_t m_eff = 0;

    [[nodiscard]] std::size_t dim() const noexcept { return matrix.dim(); }
};

/// Undirected edge set over node pairs (q, r) with q < r.
using EdgeSet = std::set<std::pair<std::size_t, std::size_t>>;

} // namespace ppspec
