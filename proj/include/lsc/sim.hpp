/*
 * SPDX-License-Identifier: Apache-2.0
 *
 * This file is part of lsc, a power-trace leakage evaluation toolkit.
 */

#pragma once

#include "lsc/rng.hpp"
#include "lsc/trace.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace lsc {

enum class WindowShape { rect, gaussian };

/// One leakage site: around sample `center`, the trace gains
/// alpha * HW(secret_byte & bit_mask) * shape(t).
///
/// bit_mask defaults to 0xFF (the whole byte's Hamming weight). Masking a
/// single bit makes the window leak just that bit, which is how per-bit
/// leakage is expressed: 8 windows over the same byte with masks 1<<i.
struct LeakWindow {
    std::uint32_t byte_index = 0;  ///< offset from the END of the secret
    std::uint32_t center = 0;
    std::uint32_t width = 1;
    double alpha = 0.0;  ///< volts per unit Hamming weight
    WindowShape shape = WindowShape::rect;
    std::uint8_t bit_mask = 0xFF;

    bool operator==(const LeakWindow&) const = default;
};

/// Parametric stand-in for the capture chain: a baseline supply level,
/// additive leakage windows, i.i.d. Gaussian sampling noise, and an
/// optional slow sinusoidal baseline wander with a random phase per trace.
struct LeakageModel {
    std::uint32_t samples_per_trace = 1500;
    double baseline = 1.0;
    std::vector<LeakWindow> windows;
    double noise_sigma = 0.0;
    double drift_amplitude = 0.0;
    std::uint32_t secret_len = 32;
    std::uint64_t seed = 1;

    /// Throws ConfigError when any field is out of range (zero-length
    /// traces, negative sigma, window centers beyond the trace, window
    /// byte_index beyond the secret).
    void validate() const;

    bool operator==(const LeakageModel&) const = default;
};

/// Uniformly random secret bytes, deterministic given the generator state.
std::vector<std::uint8_t> generate_secret(Rng& rng, std::size_t length);

/// Synthesizes one trace:
///   v[t] = baseline + drift(t)
///        + sum_w alpha_w * HW(secret[end - byte_index_w] & mask_w) * shape_w(t)
///        + N(0, noise_sigma^2)
///
/// rect windows are 1 on [center - width/2, center + width/2), gaussian
/// windows are exp(-(t-center)^2 / (2*(width/2)^2)) truncated to zero
/// outside center +- 3*(width/2). drift(t) is one sine cycle across the
/// trace, drift_amplitude * sin(2*pi*t/samples + phase), with the phase
/// drawn per trace.
///
/// Stream consumption order is fixed: one uniform for the drift phase,
/// then (only when noise_sigma > 0) one normal per sample.
Trace simulate_trace(const std::vector<std::uint8_t>& secret, const LeakageModel& model, Rng& rng,
                     std::uint32_t trace_id = 0);

/// Runs n_traces independent (secret, trace) pairs with ids 0..n-1 and a
/// populated sidecar. Each trace uses its own stream derived from
/// (model.seed, trace_id), so results are byte-identical regardless of
/// evaluation order. The per-trace stream yields the secret bytes first,
/// then feeds simulate_trace.
TraceSet simulate_campaign(std::size_t n_traces, const LeakageModel& model);

/// Named model presets:
///  - "noiseless":  leakage windows with zero noise; correlation against
///                  Hamming-weight labels peaks at exactly 1.
///  - "pure_noise": no windows, sigma 0.002; the null model.
///  - "paper_like": the noiseless windows plus sigma 0.03, calibrated so
///                  the peak |rho| over 250 traces lands in [0.2, 0.6].
/// Throws ConfigError for unknown names.
LeakageModel preset(const std::string& name);

/// JSON round-trip of the model configuration, field names matching the
/// struct. Unknown keys are rejected.
LeakageModel model_from_json(const std::string& text);
std::string model_to_json(const LeakageModel& model);

} // namespace lsc
