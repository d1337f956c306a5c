/*
 * SPDX-License-Identifier: Apache-2.0
 *
 * This file is part of lsc, a power-trace leakage evaluation toolkit.
 */

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lsc {

/// One decapsulation's voltage samples plus capture metadata.
///
/// Samples are stored as 64-bit floats (volts, or converted ADC counts);
/// when raw counts are converted on ingestion the calibration is recorded
/// in `meta`. All samples must be finite and the vector non-empty;
/// construction enforces both.
struct Trace {
    Trace(std::uint32_t id, std::vector<double> samples,
          std::map<std::string, std::string> meta = {});

    std::uint32_t trace_id;
    std::vector<double> samples;
    std::map<std::string, std::string> meta;

    bool operator==(const Trace&) const = default;
};

/// The shared-secret bytes associated with one trace; source of labels.
struct SecretRecord {
    SecretRecord(std::uint32_t id, std::vector<std::uint8_t> secret);

    std::uint32_t trace_id;
    std::vector<std::uint8_t> secret;

    bool operator==(const SecretRecord&) const = default;
};

/// Aligned collection of traces with a uniform sample count and an
/// optional secret sidecar joined by trace_id.
///
/// Invariants, enforced at every construction site:
///  - every trace holds exactly samples_per_trace finite samples,
///  - trace ids are unique,
///  - sidecar ids (when present) are a permutation of trace ids.
class TraceSet {
  public:
    TraceSet(std::vector<Trace> traces, std::vector<SecretRecord> sidecar = {},
             std::optional<std::size_t> samples_per_trace = std::nullopt);

    const std::vector<Trace>& traces() const { return traces_; }
    const std::vector<SecretRecord>& sidecar() const { return sidecar_; }
    std::size_t samples_per_trace() const { return samples_per_trace_; }
    std::size_t size() const { return traces_.size(); }
    bool has_sidecar() const { return !sidecar_.empty(); }

    /// The secret paired with a trace id; InputError when the sidecar is
    /// missing or the id is unknown.
    const SecretRecord& secret_for(std::uint32_t trace_id) const;

    /// Field-for-field equality including per-trace metadata.
    bool operator==(const TraceSet&) const = default;

    /// Equality over ids, samples and secrets only, ignoring metadata.
    /// The container format does not carry metadata, so round-trip
    /// comparisons go through here.
    bool equal_data(const TraceSet& other) const;

  private:
    std::vector<Trace> traces_;
    std::vector<SecretRecord> sidecar_;
    std::size_t samples_per_trace_ = 0;
};

enum class LabelKind { single_bit, bit_pair, hamming_weight };

/// Selects which label to derive from a secret. byte_index counts from the
/// END of the secret: 0 is the last byte, matching the convention that the
/// leakage target is the tail of the shared secret.
struct LabelSpec {
    LabelKind kind = LabelKind::single_bit;
    std::uint32_t byte_index = 0;
    std::uint32_t bit_index = 0;

    /// Validates bit_index against the kind (0..7 for single_bit,
    /// 0..6 for bit_pair). Throws ConfigError.
    void validate() const;

    /// Number of distinct labels this spec can produce.
    std::size_t n_classes() const;

    std::string describe() const;
};

/// Extracts the class label selected by `spec` from one secret record.
///  - single_bit     -> {0, 1}
///  - bit_pair       -> {0..3}, encoded (bit at bit_index+1)*2 + (bit at bit_index)
///  - hamming_weight -> {0..8}
/// Throws InputError when byte_index is out of range for the secret.
int extract_label(const SecretRecord& record, const LabelSpec& spec);

/// Labels for every trace of a set, in trace order, joined by trace_id.
/// Throws InputError when the sidecar is missing.
std::vector<int> extract_labels(const TraceSet& set, const LabelSpec& spec);

} // namespace lsc
