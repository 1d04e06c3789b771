#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "ppspec/events.hpp"
#include "ppspec/hermitian.hpp"
#include "ppspec/spectral_matrix.hpp"

namespace ppspec {

/// Multivariate Hawkes process with exponential kernels
///   Lambda_q(t) = nu_q + sum_r sum_{t_i^r < t} alpha_qr exp(-beta_qr (t - t_i^r)).
/// alpha(q, r) is the jump in the intensity of q caused by an event in r.
class HawkesModel {
public:
    HawkesModel() = default;
    HawkesModel(RealVector nu, RealMatrix alpha, RealMatrix beta);

    /// Independent homogeneous Poisson processes with a common rate.
    static HawkesModel poisson(std::size_t p, double rate);

    [[nodiscard]] std::size_t dim() const noexcept { return static_cast<std::size_t>(nu_.size()); }
    [[nodiscard]] const RealVector& nu() const noexcept { return nu_; }
    [[nodiscard]] const RealMatrix& alpha() const noexcept { return alpha_; }
    [[nodiscard]] const RealMatrix& beta() const noexcept { return beta_; }

    /// Branching matrix G(0) = alpha / beta elementwise (zero where alpha is zero).
    [[nodiscard]] RealMatrix branching_matrix() const;

private:
    RealVector nu_;
    RealMatrix alpha_;
    RealMatrix beta_;
};

[[nodiscard]] double spectral_radius_G0(const HawkesModel& model);

/// Lambda = (I - G(0))^{-1} nu. Throws NotStationary or InvalidModel.
[[nodiscard]] RealVector stationary_intensity(const HawkesModel& model);

/// G(omega) = alpha / (beta + i omega) elementwise.
[[nodiscard]] ComplexMatrix transfer(const HawkesModel& model, double omega);

/// S(omega) = (1/2pi) (I - G(omega))^{-1} diag(Lambda) (I - G(omega))^{-H}.
[[nodiscard]] SpectralMatrix true_spectrum(const HawkesModel& model, double omega);

struct GroundTruth {
    HermitianMatrix theta; // S(omega)^{-1}
    EdgeSet edges;
    double tolerance = 0.0;
};

/// Inverse spectrum in closed form, 2pi (I - G)^H diag(Lambda)^{-1} (I - G),
/// and its support. A negative `tol` selects the default 1e-8 * max diagonal.
[[nodiscard]] GroundTruth true_inverse_and_edges(const HawkesModel& model, double omega,
                                                 double tol = -1.0);

struct SimulationOptions {
    double event_budget = 1e8; // cap on Lambda_total * T
};

/// Ogata thinning of m independent trials, each of length T/m, placed end
/// to end on (0, T]. Deterministic in (model, T, m, seed).
[[nodiscard]] EventData simulate(const HawkesModel& model, double horizon, std::size_t m,
                                 std::uint64_t seed, const SimulationOptions& options = {});

enum class Scenario { a, b, c };

[[nodiscard]] Scenario parse_scenario(std::string_view id);
[[nodiscard]] char scenario_name(Scenario s);

/// Size of the repeating block of the scenario's excitation matrix.
[[nodiscard]] std::size_t preset_block_size(Scenario s);

/// Benchmark parameterisations: block-diagonal alpha, nu = 0.2.
/// p must be a positive multiple of preset_block_size(s).
[[nodiscard]] HawkesModel preset(Scenario s, std::size_t p);

} // namespace ppspec
