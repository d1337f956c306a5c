/*
 * SPDX-License-Identifier: Apache-2.0
 *
 * This file is part of lsc, a power-trace leakage evaluation toolkit.
 */

#include "lsc/trace.hpp"

#include "lsc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

namespace lsc {

Trace::Trace(std::uint32_t id, std::vector<double> s, std::map<std::string, std::string> m)
    : trace_id(id), samples(std::move(s)), meta(std::move(m)) {
    if (samples.empty()) {
        throw ValidationError("trace " + std::to_string(trace_id) + ": samples must be non-empty");
    }
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!std::isfinite(samples[i])) {
            throw ValidationError("trace " + std::to_string(trace_id) + ": non-finite sample at index " +
                                  std::to_string(i));
        }
    }
}

SecretRecord::SecretRecord(std::uint32_t id, std::vector<std::uint8_t> s)
    : trace_id(id), secret(std::move(s)) {
    if (secret.empty()) {
        throw ValidationError("secret record " + std::to_string(trace_id) + ": secret must be non-empty");
    }
}

TraceSet::TraceSet(std::vector<Trace> traces, std::vector<SecretRecord> sidecar,
                   std::optional<std::size_t> samples_per_trace)
    : traces_(std::move(traces)), sidecar_(std::move(sidecar)) {
    if (samples_per_trace) {
        samples_per_trace_ = *samples_per_trace;
    } else if (!traces_.empty()) {
        samples_per_trace_ = traces_.front().samples.size();
    } else {
        throw ValidationError("empty trace set requires an explicit samples_per_trace");
    }
    if (samples_per_trace_ == 0) {
        throw ValidationError("samples_per_trace must be positive");
    }

    std::unordered_set<std::uint32_t> ids;
    ids.reserve(traces_.size());
    for (const Trace& t : traces_) {
        if (t.samples.size() != samples_per_trace_) {
            throw ValidationError("trace " + std::to_string(t.trace_id) + ": length " +
                                  std::to_string(t.samples.size()) + " != samples_per_trace " +
                                  std::to_string(samples_per_trace_));
        }
        if (!ids.insert(t.trace_id).second) {
            throw ValidationError("duplicate trace id " + std::to_string(t.trace_id));
        }
    }

    if (!sidecar_.empty()) {
        if (sidecar_.size() != traces_.size()) {
            throw ValidationError("sidecar holds " + std::to_string(sidecar_.size()) + " records for " +
                                  std::to_string(traces_.size()) + " traces");
        }
        std::unordered_set<std::uint32_t> sidecar_ids;
        sidecar_ids.reserve(sidecar_.size());
        for (const SecretRecord& r : sidecar_) {
            if (!ids.contains(r.trace_id)) {
                throw ValidationError("sidecar id " + std::to_string(r.trace_id) + " matches no trace");
            }
            if (!sidecar_ids.insert(r.trace_id).second) {
                throw ValidationError("duplicate sidecar id " + std::to_string(r.trace_id));
            }
        }
    }
}

const SecretRecord& TraceSet::secret_for(std::uint32_t trace_id) const {
    if (sidecar_.empty()) {
        throw InputError("trace set has no secret sidecar");
    }
    auto it = std::find_if(sidecar_.begin(), sidecar_.end(),
                           [&](const SecretRecord& r) { return r.trace_id == trace_id; });
    if (it == sidecar_.end()) {
        throw InputError("no secret record for trace id " + std::to_string(trace_id));
    }
    return *it;
}

bool TraceSet::equal_data(const TraceSet& other) const {
    if (samples_per_trace_ != other.samples_per_trace_ || traces_.size() != other.traces_.size()) {
        return false;
    }
    for (std::size_t i = 0; i < traces_.size(); ++i) {
        if (traces_[i].trace_id != other.traces_[i].trace_id ||
            traces_[i].samples != other.traces_[i].samples) {
            return false;
        }
    }
    return sidecar_ == other.sidecar_;
}

void LabelSpec::validate() const {
    switch (kind) {
    case LabelKind::single_bit:
    case LabelKind::hamming_weight:
        if (bit_index > 7) {
            throw ConfigError("bit_index must be in 0..7");
        }
        break;
    case LabelKind::bit_pair:
        if (bit_index > 6) {
            throw ConfigError("bit_pair bit_index must be in 0..6");
        }
        break;
    }
}

std::size_t LabelSpec::n_classes() const {
    switch (kind) {
    case LabelKind::single_bit:
        return 2;
    case LabelKind::bit_pair:
        return 4;
    case LabelKind::hamming_weight:
        return 9;
    }
    return 0;
}

std::string LabelSpec::describe() const {
    const std::string byte = "byte -" + std::to_string(byte_index);
    switch (kind) {
    case LabelKind::single_bit:
        return "single_bit(" + byte + ", bit " + std::to_string(bit_index) + ")";
    case LabelKind::bit_pair:
        return "bit_pair(" + byte + ", bits " + std::to_string(bit_index) + "," +
               std::to_string(bit_index + 1) + ")";
    case LabelKind::hamming_weight:
        return "hamming_weight(" + byte + ")";
    }
    return "?";
}

int extract_label(const SecretRecord& record, const LabelSpec& spec) {
    spec.validate();
    if (spec.byte_index >= record.secret.size()) {
        throw InputError("byte_index " + std::to_string(spec.byte_index) + " out of range for secret of " +
                         std::to_string(record.secret.size()) + " bytes");
    }
    const std::uint8_t byte = record.secret[record.secret.size() - 1 - spec.byte_index];
    switch (spec.kind) {
    case LabelKind::single_bit:
        return (byte >> spec.bit_index) & 1;
    case LabelKind::bit_pair: {
        const int low = (byte >> spec.bit_index) & 1;
        const int high = (byte >> (spec.bit_index + 1)) & 1;
        return high * 2 + low;
    }
    case LabelKind::hamming_weight: {
        int w = 0;
        for (int b = 0; b < 8; ++b) {
            w += (byte >> b) & 1;
        }
        return w;
    }
    }
    throw ConfigError("unknown label kind");
}

std::vector<int> extract_labels(const TraceSet& set, const LabelSpec& spec) {
    if (!set.has_sidecar()) {
        throw InputError("label extraction requires a secret sidecar");
    }
    std::unordered_map<std::uint32_t, const SecretRecord*> by_id;
    by_id.reserve(set.sidecar().size());
    for (const SecretRecord& r : set.sidecar()) {
        by_id.emplace(r.trace_id, &r);
    }
    std::vector<int> labels;
    labels.reserve(set.size());
    for (const Trace& t : set.traces()) {
        labels.push_back(extract_label(*by_id.at(t.trace_id), spec));
    }
    return labels;
}

} // namespace lsc
