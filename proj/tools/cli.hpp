#pragma once

#include <ostream>

namespace fknne::cli {

/// Exit codes: 0 success, 1 internal error, 2 invalid input or partial failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInput = 2;

/// Environment variable naming the default output directory.
inline constexpr const char* kOutDirEnv = "FKNNE_OUT_DIR";

/// Entry point shared by the fknne executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fknne::cli
