/*
 * SPDX-License-Identifier: Apache-2.0
 *
 * This file is part of lsc, a power-trace leakage evaluation toolkit.
 */

#include "lsc/sim.hpp"

#include "lsc/errors.hpp"
#include "lsc/stats.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <numbers>

namespace lsc {

namespace {

/// Window activation at sample t. Gaussian support is truncated at three
/// sigmas (sigma = width/2) so samples far from any window stay exactly at
/// the baseline and show up as zero-variance columns in noiseless runs.
double window_shape(const LeakWindow& w, std::uint32_t t) {
    const double dt = static_cast<double>(t) - static_cast<double>(w.center);
    const double half = static_cast<double>(w.width) / 2.0;
    switch (w.shape) {
    case WindowShape::rect:
        return (dt >= -half && dt < half) ? 1.0 : 0.0;
    case WindowShape::gaussian:
        if (std::abs(dt) > 3.0 * half) {
            return 0.0;
        }
        return std::exp(-(dt * dt) / (2.0 * half * half));
    }
    return 0.0;
}

} // namespace

void LeakageModel::validate() const {
    if (samples_per_trace == 0) {
        throw ConfigError("samples_per_trace must be >= 1");
    }
    if (secret_len == 0) {
        throw ConfigError("secret_len must be >= 1");
    }
    if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) {
        throw ConfigError("noise_sigma must be finite and >= 0");
    }
    if (!std::isfinite(baseline) || !std::isfinite(drift_amplitude)) {
        throw ConfigError("baseline and drift_amplitude must be finite");
    }
    for (const LeakWindow& w : windows) {
        if (w.center >= samples_per_trace) {
            throw ConfigError("window center " + std::to_string(w.center) + " outside trace of " +
                              std::to_string(samples_per_trace) + " samples");
        }
        if (w.width == 0) {
            throw ConfigError("window width must be >= 1");
        }
        if (!std::isfinite(w.alpha)) {
            throw ConfigError("window alpha must be finite");
        }
        if (w.byte_index >= secret_len) {
            throw ConfigError("window byte_index " + std::to_string(w.byte_index) +
                              " beyond secret of " + std::to_string(secret_len) + " bytes");
        }
    }
}

std::vector<std::uint8_t> generate_secret(Rng& rng, std::size_t length) {
    if (length == 0) {
        throw ConfigError("secret length must be >= 1");
    }
    std::vector<std::uint8_t> secret(length);
    for (std::uint8_t& b : secret) {
        b = rng.next_byte();
    }
    return secret;
}

Trace simulate_trace(const std::vector<std::uint8_t>& secret, const LeakageModel& model, Rng& rng,
                     std::uint32_t trace_id) {
    model.validate();
    for (const LeakWindow& w : model.windows) {
        if (w.byte_index >= secret.size()) {
            throw ConfigError("window byte_index " + std::to_string(w.byte_index) +
                              " beyond secret of " + std::to_string(secret.size()) + " bytes");
        }
    }

    // Per-window leak level for this secret.
    std::vector<double> levels(model.windows.size());
    for (std::size_t i = 0; i < model.windows.size(); ++i) {
        const LeakWindow& w = model.windows[i];
        const std::uint8_t byte = secret[secret.size() - 1 - w.byte_index];
        levels[i] = w.alpha * hamming_weight(static_cast<std::uint8_t>(byte & w.bit_mask));
    }

    const double phase = rng.uniform() * 2.0 * std::numbers::pi;
    std::vector<double> samples(model.samples_per_trace);
    for (std::uint32_t t = 0; t < model.samples_per_trace; ++t) {
        double v = model.baseline;
        if (model.drift_amplitude != 0.0) {
            v += model.drift_amplitude *
                 std::sin(2.0 * std::numbers::pi * static_cast<double>(t) /
                              static_cast<double>(model.samples_per_trace) +
                          phase);
        }
        for (std::size_t i = 0; i < model.windows.size(); ++i) {
            const double s = window_shape(model.windows[i], t);
            if (s != 0.0) {
                v += levels[i] * s;
            }
        }
        if (model.noise_sigma > 0.0) {
            v += rng.normal(0.0, model.noise_sigma);
        }
        samples[t] = v;
    }
    return Trace(trace_id, std::move(samples));
}

TraceSet simulate_campaign(std::size_t n_traces, const LeakageModel& model) {
    if (n_traces == 0) {
        throw ConfigError("campaign needs n_traces >= 1");
    }
    model.validate();

    std::vector<Trace> traces;
    std::vector<SecretRecord> sidecar;
    traces.reserve(n_traces);
    sidecar.reserve(n_traces);
    for (std::size_t i = 0; i < n_traces; ++i) {
        const auto id = static_cast<std::uint32_t>(i);
        Rng rng(derive_seed(model.seed, id));
        std::vector<std::uint8_t> secret = generate_secret(rng, model.secret_len);
        traces.push_back(simulate_trace(secret, model, rng, id));
        sidecar.emplace_back(id, std::move(secret));
    }
    return TraceSet(std::move(traces), std::move(sidecar), model.samples_per_trace);
}

LeakageModel preset(const std::string& name) {
    // The shared leakage layout: one full-byte Hamming-weight window in
    // mid-trace, plus a dominant single-bit window earlier, both over the
    // last secret byte. The bit window carries enough energy that nearest
    // neighbors agree on bit 0, which keeps the bit recoverable by all
    // classifiers when noise is off.
    const LeakWindow hw_window{.byte_index = 0,
                               .center = 750,
                               .width = 40,
                               .alpha = 0.01,
                               .shape = WindowShape::gaussian,
                               .bit_mask = 0xFF};
    const LeakWindow bit_window{.byte_index = 0,
                                .center = 300,
                                .width = 40,
                                .alpha = 0.1,
                                .shape = WindowShape::gaussian,
                                .bit_mask = 0x01};

    LeakageModel m;
    if (name == "noiseless") {
        m.windows = {hw_window, bit_window};
        m.noise_sigma = 0.0;
    } else if (name == "pure_noise") {
        m.windows = {};
        m.noise_sigma = 0.002;
    } else if (name == "paper_like") {
        // Calibrated by sweep: sigma 0.03 puts the peak |rho| at 250
        // traces near 0.43, inside the [0.2, 0.6] target band. The bit
        // window is scaled down so the statistical picture stays
        // dominated by the Hamming-weight site.
        LeakWindow bit = bit_window;
        bit.alpha = 0.02;
        m.windows = {hw_window, bit};
        m.noise_sigma = 0.03;
    } else {
        throw ConfigError("unknown preset '" + name + "'");
    }
    return m;
}

namespace {

WindowShape shape_from_string(const std::string& s) {
    if (s == "rect") {
        return WindowShape::rect;
    }
    if (s == "gaussian") {
        return WindowShape::gaussian;
    }
    throw ConfigError("unknown window shape '" + s + "'");
}

std::string shape_to_string(WindowShape s) {
    return s == WindowShape::rect ? "rect" : "gaussian";
}

template <typename T>
T take(nlohmann::json& obj, const char* key, T fallback) {
    if (!obj.contains(key)) {
        return fallback;
    }
    T value = obj.at(key).get<T>();
    obj.erase(key);
    return value;
}

} // namespace

LeakageModel model_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("model JSON parse failure: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ConfigError("model JSON must be an object");
    }

    LeakageModel defaults;
    LeakageModel m;
    try {
        m.samples_per_trace = take<std::uint32_t>(doc, "samples_per_trace", defaults.samples_per_trace);
        m.baseline = take<double>(doc, "baseline", defaults.baseline);
        m.noise_sigma = take<double>(doc, "noise_sigma", defaults.noise_sigma);
        m.drift_amplitude = take<double>(doc, "drift_amplitude", defaults.drift_amplitude);
        m.secret_len = take<std::uint32_t>(doc, "secret_len", defaults.secret_len);
        m.seed = take<std::uint64_t>(doc, "seed", defaults.seed);
        if (doc.contains("windows")) {
            for (nlohmann::json w : doc.at("windows")) {
                LeakWindow win;
                win.byte_index = take<std::uint32_t>(w, "byte_index", 0);
                win.center = take<std::uint32_t>(w, "center", 0);
                win.width = take<std::uint32_t>(w, "width", 1);
                win.alpha = take<double>(w, "alpha", 0.0);
                win.shape = shape_from_string(take<std::string>(w, "shape", "rect"));
                win.bit_mask = static_cast<std::uint8_t>(take<std::uint32_t>(w, "bit_mask", 0xFF));
                if (!w.empty()) {
                    throw ConfigError("unknown window key '" + w.begin().key() + "'");
                }
                m.windows.push_back(win);
            }
            doc.erase("windows");
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("model JSON field error: ") + e.what());
    }
    if (!doc.empty()) {
        throw ConfigError("unknown model key '" + doc.begin().key() + "'");
    }
    m.validate();
    return m;
}

std::string model_to_json(const LeakageModel& model) {
    nlohmann::json doc;
    doc["samples_per_trace"] = model.samples_per_trace;
    doc["baseline"] = model.baseline;
    doc["noise_sigma"] = model.noise_sigma;
    doc["drift_amplitude"] = model.drift_amplitude;
    doc["secret_len"] = model.secret_len;
    doc["seed"] = model.seed;
    doc["windows"] = nlohmann::json::array();
    for (const LeakWindow& w : model.windows) {
        doc["windows"].push_back({{"byte_index", w.byte_index},
                                  {"center", w.center},
                                  {"width", w.width},
                                  {"alpha", w.alpha},
                                  {"shape", shape_to_string(w.shape)},
                                  {"bit_mask", w.bit_mask}});
    }
    return doc.dump(2);
}

} // namespace lsc
