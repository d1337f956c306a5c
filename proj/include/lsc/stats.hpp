/*
 * SPDX-License-Identifier: Apache-2.0
 *
 * This file is part of lsc, a power-trace leakage evaluation toolkit.
 */

#pragma once

#include "lsc/sim.hpp"
#include "lsc/trace.hpp"

#include <bit>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lsc {

/// Count of set bits in one byte.
inline int hamming_weight(std::uint8_t b) { return std::popcount(b); }

/// Pearson correlation coefficient between two equal-length sequences,
/// rho = sum((x-xm)(y-ym)) / (sqrt(sum((x-xm)^2)) * sqrt(sum((y-ym)^2))).
///
/// Two-pass evaluation: means first, then centered sums. Returns nullopt
/// when either sequence has zero variance (the coefficient is undefined
/// there). Throws InputError on length mismatch or length < 2. Finite
/// results are clamped into [-1, 1] against last-ulp excursions.
std::optional<double> pearson(std::span<const double> x, std::span<const double> y);

/// Per-sample-index correlation across a trace set. Entries are absent
/// where the sample column (or the label vector) has zero variance.
struct CorrelationSeries {
    std::vector<std::optional<double>> rho;
    std::size_t n_traces = 0;
    std::string label_kind;
};

/// correlation_series computes rho[t] = pearson(column t, labels) for
/// every sample index t. Labels are given per trace, aligned with the
/// set's trace order.
CorrelationSeries correlation_series(const TraceSet& set, std::span<const double> labels);

/// Convenience: labels derived from the sidecar via extract_label.
CorrelationSeries correlation_series(const TraceSet& set, const LabelSpec& spec);

/// Null-hypothesis decision over a correlation series. A sample index
/// leaks when |rho| exceeds the threshold; the 0.1 default follows the
/// leakage-assessment literature. Two-sided by choice: both polarities
/// count as leakage.
struct LeakageReport {
    double threshold = 0.1;
    std::vector<std::size_t> exceed_indices;
    double peak_rho = 0.0;                  ///< signed rho at the peak |rho|
    std::optional<std::size_t> peak_index;  ///< absent when every entry is absent
    bool verdict = false;

    std::string verdict_line() const;
};

/// Applies the threshold rule. Threshold must lie in (0, 1); absent
/// entries never exceed. verdict <=> exceed_indices non-empty.
LeakageReport leakage_verdict(const CorrelationSeries& series, double threshold = 0.1);

/// Monte Carlo estimate of the decision rule's flag rate under the null:
/// runs one campaign per seed on a zero-leakage model, correlates against
/// the Hamming weight of the last secret byte, and returns the fraction
/// of (seed, sample index) pairs with |rho| > threshold among the
/// non-degenerate ones. Throws InputError when the model has any window
/// with nonzero amplitude.
double false_positive_rate(const LeakageModel& null_model, std::span<const std::uint64_t> seeds,
                           std::size_t n_traces, double threshold);

/// Convenience overload deriving n_seeds stream seeds from the model's
/// own seed.
double false_positive_rate(const LeakageModel& null_model, std::size_t n_seeds, double threshold,
                           std::size_t n_traces = 250);

/// CSV export: `sample_index,rho`, absent entries as an empty field.
void write_correlation_csv(const CorrelationSeries& series, std::ostream& out);

} // namespace lsc
