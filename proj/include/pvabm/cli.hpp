#pragma once

#include <iosfwd>

namespace pvabm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;  // usage, parse or validation error
inline constexpr int kExitFailed = 2;   // runtime or calibration failure

/// Entry point behind the `pvabm` executable. Results go to `out` unless
/// --out names a file; diagnostics always go to `err`.
///
///   pvabm run --config <path> [--out <path>] [--format csv|json]
///             [--mode deterministic|stochastic] [--seed <u64>]
///             [--semantics hazard|literal] [--alpha <x>] [--beta <x>]
///   pvabm calibrate --config <path> --target <path> [--budget <n>]
///             [--out <path>] [--format csv|json]
///   pvabm monte-carlo --config <path> --replications <n> --seed <u64>
///             [--out <path>] [--format csv|json] [--threads <n>]
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pvabm::cli
