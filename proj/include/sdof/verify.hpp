#pragma once

#include <ostream>

namespace sdof::verify {

/// Property suites shared by `sdof verify` and the acceptance runner. Each
/// prints its detail lines to `out` and returns pass/fail.

/// build_mds_generator passes verify_mds for all 1 <= j <= k <= 12.
bool suite_mds(std::ostream& out);

/// Beamforming residuals (every F and every beamformed U at Y1) stay below
/// 1e-9 relative over `draws` random channel draws, M in {2,3,4}, all
/// applicable schemes.
bool suite_cancellation(std::ostream& out, long long draws = 10000);

/// Exact link-leakage oracle: the frozen M=2 values, I <= mask bound, and the
/// identity I = H(S_T) - H(F) for every |T| = W at Q = 1, M <= 3.
bool suite_mi(std::ostream& out);

/// Noiseless encode -> decode recovers V exactly, 10^3 trials per scheme,
/// M in {2,3}.
bool suite_roundtrip(std::ostream& out, long long trials = 1000);

}  // namespace sdof::verify
