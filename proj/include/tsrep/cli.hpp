#pragma once

namespace tsrep {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Entry point of the `tsrep` tool: gen-toy, gen-blobs, embed, train-eval,
/// benchmark, ablate, analyze, pca, report.
int cli_main(int argc, const char* const* argv);

}  // namespace tsrep
