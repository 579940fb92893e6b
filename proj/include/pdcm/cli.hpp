#pragma once

#include <iosfwd>

namespace pdcm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;  // domain, validation, parse or I/O failure
inline constexpr int kExitUsage = 2;

/// Entry point of the pdc-match executable. Data goes to out, diagnostics to err.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pdcm::cli
