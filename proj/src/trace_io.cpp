/*
 * SPDX-License-Identifier: Apache-2.0
 *
 * This file is part of lsc, a power-trace leakage evaluation toolkit.
 */

#include "lsc/trace_io.hpp"

#include "lsc/errors.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

namespace lsc {

namespace {

void put_u32(std::string& out, std::uint32_t v) {
    out.push_back(static_cast<char>(v & 0xFF));
    out.push_back(static_cast<char>((v >> 8) & 0xFF));
    out.push_back(static_cast<char>((v >> 16) & 0xFF));
    out.push_back(static_cast<char>((v >> 24) & 0xFF));
}

void put_f64(std::string& out, double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) {
        out.push_back(static_cast<char>((bits >> (8 * i)) & 0xFF));
    }
}

/// Sequential little-endian reader tracking its offset for error reports.
class ByteReader {
  public:
    explicit ByteReader(const std::string& bytes) : bytes_(bytes) {}

    std::size_t offset() const { return pos_; }
    std::size_t remaining() const { return bytes_.size() - pos_; }

    std::uint32_t u32(const char* what) {
        need(4, what);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) {
            v |= static_cast<std::uint32_t>(static_cast<std::uint8_t>(bytes_[pos_ + i])) << (8 * i);
        }
        pos_ += 4;
        return v;
    }

    double f64(const char* what) {
        need(8, what);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) {
            v |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(bytes_[pos_ + i])) << (8 * i);
        }
        pos_ += 8;
        return std::bit_cast<double>(v);
    }

    std::vector<std::uint8_t> raw(std::size_t n, const char* what) {
        need(n, what);
        std::vector<std::uint8_t> out(bytes_.begin() + static_cast<std::ptrdiff_t>(pos_),
                                      bytes_.begin() + static_cast<std::ptrdiff_t>(pos_ + n));
        pos_ += n;
        return out;
    }

  private:
    void need(std::size_t n, const char* what) const {
        if (remaining() < n) {
            throw CorruptionError(std::string("truncated container: needed ") + std::to_string(n) +
                                  " bytes for " + what + " at byte offset " + std::to_string(pos_));
        }
    }

    const std::string& bytes_;
    std::size_t pos_ = 0;
};

std::string slurp(std::istream& in) {
    std::string bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>{});
    if (in.bad()) {
        throw IoError("failed reading input stream");
    }
    return bytes;
}

std::string format_double(double v) {
    char buf[32];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    if (ec != std::errc{}) {
        throw IoError("double formatting failed");
    }
    return std::string(buf, end);
}

double parse_double(std::string_view text, const std::string& where) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw FormatError("bad numeric field '" + std::string(text) + "' in " + where);
    }
    return v;
}

std::uint32_t parse_u32(std::string_view text, const std::string& where) {
    std::uint32_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw FormatError("bad integer field '" + std::string(text) + "' in " + where);
    }
    return v;
}

std::vector<std::string_view> split_csv_line(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

TraceSet container_from_bytes(const std::string& bytes) {
    ByteReader r(bytes);
    (void)r.raw(4, "magic");
    const std::uint32_t n_traces = r.u32("trace count");
    const std::uint32_t samples_per_trace = r.u32("samples_per_trace");
    const std::uint32_t secret_len = r.u32("secret length");
    if (samples_per_trace == 0) {
        throw CorruptionError("container declares samples_per_trace 0");
    }

    std::vector<Trace> traces;
    traces.reserve(n_traces);
    for (std::uint32_t i = 0; i < n_traces; ++i) {
        const std::uint32_t id = r.u32("trace id");
        std::vector<double> samples(samples_per_trace);
        for (std::uint32_t s = 0; s < samples_per_trace; ++s) {
            samples[s] = r.f64("sample");
            if (!std::isfinite(samples[s])) {
                throw ValidationError("non-finite sample in trace " + std::to_string(id) +
                                      " at sample index " + std::to_string(s));
            }
        }
        traces.emplace_back(id, std::move(samples));
    }

    std::vector<SecretRecord> sidecar;
    if (secret_len > 0) {
        sidecar.reserve(n_traces);
        for (std::uint32_t i = 0; i < n_traces; ++i) {
            const std::uint32_t id = r.u32("sidecar trace id");
            sidecar.emplace_back(id, r.raw(secret_len, "secret bytes"));
        }
    }
    if (r.remaining() != 0) {
        throw CorruptionError("container holds " + std::to_string(r.remaining()) +
                              " unexpected trailing bytes at byte offset " + std::to_string(r.offset()));
    }
    return TraceSet(std::move(traces), std::move(sidecar), samples_per_trace);
}

} // namespace

std::vector<std::uint8_t> trace_set_bytes(const TraceSet& set) {
    std::uint32_t secret_len = 0;
    if (set.has_sidecar()) {
        secret_len = static_cast<std::uint32_t>(set.sidecar().front().secret.size());
        for (const SecretRecord& r : set.sidecar()) {
            if (r.secret.size() != secret_len) {
                throw ValidationError("container requires a uniform secret length; record " +
                                      std::to_string(r.trace_id) + " differs");
            }
        }
    }

    std::string out;
    out.reserve(16 + set.size() * (4 + 8 * set.samples_per_trace()) +
                set.sidecar().size() * (4 + secret_len));
    out.append(kContainerMagic, 4);
    put_u32(out, static_cast<std::uint32_t>(set.size()));
    put_u32(out, static_cast<std::uint32_t>(set.samples_per_trace()));
    put_u32(out, secret_len);
    for (const Trace& t : set.traces()) {
        put_u32(out, t.trace_id);
        for (double v : t.samples) {
            put_f64(out, v);
        }
    }
    for (const SecretRecord& r : set.sidecar()) {
        put_u32(out, r.trace_id);
        out.append(r.secret.begin(), r.secret.end());
    }
    return {out.begin(), out.end()};
}

std::size_t trace_set_write(const TraceSet& set, std::ostream& out) {
    const std::vector<std::uint8_t> bytes = trace_set_bytes(set);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw IoError("sink failure after writing " + std::to_string(bytes.size()) + " bytes");
    }
    return bytes.size();
}

TraceSet trace_set_read(std::istream& in) {
    const std::string bytes = slurp(in);
    if (bytes.size() >= 4 && std::memcmp(bytes.data(), kContainerMagic, 4) == 0) {
        return container_from_bytes(bytes);
    }
    if (bytes.rfind("trace_id,", 0) == 0) {
        std::istringstream csv(bytes);
        return read_traces_csv(csv);
    }
    throw FormatError("unrecognized input: neither LSC1 magic nor CSV header found");
}

TraceSet trace_set_read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    return trace_set_read(in);
}

std::size_t trace_set_write_file(const TraceSet& set, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    return trace_set_write(set, out);
}

void write_traces_csv(const TraceSet& set, std::ostream& out) {
    out << "trace_id";
    for (std::size_t s = 0; s < set.samples_per_trace(); ++s) {
        out << ",s" << s;
    }
    out << "\n";
    for (const Trace& t : set.traces()) {
        out << t.trace_id;
        for (double v : t.samples) {
            out << ',' << format_double(v);
        }
        out << "\n";
    }
    if (!out) {
        throw IoError("sink failure while writing trace CSV");
    }
}

TraceSet read_traces_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw FormatError("empty CSV input");
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    const auto header = split_csv_line(line);
    if (header.empty() || header[0] != "trace_id") {
        throw FormatError("trace CSV must start with a trace_id header column");
    }
    const std::size_t n_samples = header.size() - 1;
    if (n_samples == 0) {
        throw FormatError("trace CSV declares no sample columns");
    }

    std::vector<Trace> traces;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        const auto fields = split_csv_line(line);
        const std::string where = "trace CSV line " + std::to_string(line_no);
        if (fields.size() != n_samples + 1) {
            throw FormatError(where + ": expected " + std::to_string(n_samples + 1) + " fields, got " +
                              std::to_string(fields.size()));
        }
        const std::uint32_t id = parse_u32(fields[0], where);
        std::vector<double> samples;
        samples.reserve(n_samples);
        for (std::size_t i = 1; i < fields.size(); ++i) {
            samples.push_back(parse_double(fields[i], where));
        }
        traces.emplace_back(id, std::move(samples));
    }
    return TraceSet(std::move(traces), {}, n_samples);
}

void write_secrets_csv(const std::vector<SecretRecord>& records, std::ostream& out) {
    static constexpr char hex[] = "0123456789abcdef";
    out << "trace_id,secret_hex\n";
    for (const SecretRecord& r : records) {
        out << r.trace_id << ',';
        for (std::uint8_t b : r.secret) {
            out << hex[b >> 4] << hex[b & 0xF];
        }
        out << "\n";
    }
    if (!out) {
        throw IoError("sink failure while writing secret CSV");
    }
}

std::vector<SecretRecord> read_secrets_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw FormatError("empty secret CSV input");
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line != "trace_id,secret_hex") {
        throw FormatError("secret CSV must start with header 'trace_id,secret_hex'");
    }

    auto nibble = [](char c, const std::string& where) -> std::uint8_t {
        if (c >= '0' && c <= '9') return static_cast<std::uint8_t>(c - '0');
        if (c >= 'a' && c <= 'f') return static_cast<std::uint8_t>(c - 'a' + 10);
        if (c >= 'A' && c <= 'F') return static_cast<std::uint8_t>(c - 'A' + 10);
        throw FormatError(where + ": bad hex digit '" + std::string(1, c) + "'");
    };

    std::vector<SecretRecord> records;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        const std::string where = "secret CSV line " + std::to_string(line_no);
        const auto fields = split_csv_line(line);
        if (fields.size() != 2) {
            throw FormatError(where + ": expected 2 fields");
        }
        if (fields[1].size() % 2 != 0) {
            throw FormatError(where + ": odd-length hex string");
        }
        std::vector<std::uint8_t> secret;
        secret.reserve(fields[1].size() / 2);
        for (std::size_t i = 0; i < fields[1].size(); i += 2) {
            secret.push_back(static_cast<std::uint8_t>((nibble(fields[1][i], where) << 4) |
                                                       nibble(fields[1][i + 1], where)));
        }
        records.emplace_back(parse_u32(fields[0], where), std::move(secret));
    }
    return records;
}

std::vector<SecretRecord> read_secrets_csv_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    return read_secrets_csv(in);
}

} // namespace lsc
