/*
 * SPDX-License-Identifier: Apache-2.0
 *
 * This file is part of lsc, a power-trace leakage evaluation toolkit.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace lsc {

/// Base class for all toolkit errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bad parameters, unknown presets, out-of-range hyperparameters.
/// CLI maps these to exit code 2.
struct ConfigError : Error {
    using Error::Error;
};

/// An operation was handed inputs that violate its preconditions
/// (cardinality mismatch, missing sidecar, degenerate split sizes).
/// CLI maps these to exit code 2.
struct InputError : Error {
    using Error::Error;
};

/// Data fails a domain invariant (non-finite sample, ragged trace set,
/// duplicate trace ids). CLI maps these to exit code 2.
struct ValidationError : Error {
    using Error::Error;
};

/// A byte stream is not in any recognized format (bad magic).
/// CLI maps these to exit code 3.
struct FormatError : Error {
    using Error::Error;
};

/// A recognized stream is damaged: truncation, CRC failure. The message
/// carries the byte offset or trace id. CLI maps these to exit code 3.
struct CorruptionError : Error {
    using Error::Error;
};

/// Underlying source/sink failure. CLI maps these to exit code 3.
struct IoError : Error {
    using Error::Error;
};

} // namespace lsc
