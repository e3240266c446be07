#pragma once

#include <iosfwd>

namespace hairsynth::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitInternal = 3;

/// Entry point for the `hairsynth` tool: render, kernel, validate, serve.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace hairsynth::cli
