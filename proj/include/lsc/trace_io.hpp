/*
 * SPDX-License-Identifier: Apache-2.0
 *
 * This file is part of lsc, a power-trace leakage evaluation toolkit.
 */

#pragma once

#include "lsc/trace.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace lsc {

/// "LSC1" trace container. Layout, all integers little-endian:
///   magic 4C 53 43 31
///   u32 trace count
///   u32 samples_per_trace
///   u32 secret length in bytes (0 = no sidecar)
///   per trace:          u32 trace_id, then samples_per_trace x f64
///   per sidecar record: u32 trace_id, then secret bytes
/// Per-trace metadata is not part of the container and does not survive a
/// round trip.
inline constexpr char kContainerMagic[4] = {'L', 'S', 'C', '1'};

/// Serializes a set to the container format. All secrets must share one
/// length (the format stores a single length field); ragged sidecars are
/// rejected before any byte is written. Returns the byte count written.
std::size_t trace_set_write(const TraceSet& set, std::ostream& out);

/// Container bytes for a set, for callers that want a buffer.
std::vector<std::uint8_t> trace_set_bytes(const TraceSet& set);

/// Reads a trace set back, auto-detecting the container format or the CSV
/// interchange format by leading bytes. Throws FormatError on unknown
/// magic, CorruptionError (with byte offset) on truncation, and
/// ValidationError naming trace_id and sample index on non-finite values.
TraceSet trace_set_read(std::istream& in);

TraceSet trace_set_read_file(const std::filesystem::path& path);
std::size_t trace_set_write_file(const TraceSet& set, const std::filesystem::path& path);

/// CSV interchange: header `trace_id,s0,s1,...,s{N-1}`, one row per trace.
/// Doubles are printed with 17 significant digits so values round-trip
/// exactly.
void write_traces_csv(const TraceSet& set, std::ostream& out);
TraceSet read_traces_csv(std::istream& in);

/// Sidecar CSV: header `trace_id,secret_hex`.
void write_secrets_csv(const std::vector<SecretRecord>& records, std::ostream& out);
std::vector<SecretRecord> read_secrets_csv(std::istream& in);
std::vector<SecretRecord> read_secrets_csv_file(const std::filesystem::path& path);

} // namespace lsc
