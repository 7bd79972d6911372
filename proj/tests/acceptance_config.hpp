#pragma once

// Frozen desk-scale calibration constants. kScalingC was determined once from
// the first full scaling run over n in {64, 256, 1024} (3 seeds each of
// mwc-directed and mssp; observed max total/(n * ceil(log2 n)^3) = 1.55 at
// n=64, decreasing to 1.33 at n=1024) and is a regression guard from then on,
// not a tunable. The observed per-doubling growth maxes out at 2.94.
inline constexpr double kScalingC = 2.0;

// Same role for the blocker-sequence construction on its own
// (observed max ~= 1.3).
inline constexpr double kBlockerSeqC = 2.0;

// Per-doubling growth allowance for total rounds: total(2n) <= 3.0 * total(n).
inline constexpr double kDoublingRatio = 3.0;
