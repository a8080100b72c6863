// Cross-check suite: compares the production path (one-body spectrum, Wick
// correlators, closed-form concurrence) against the independent brute-force
// engines on randomized instances, and checks the structural symmetries the
// physics guarantees. Used by tests and exposed through the `verify`
// subcommand.

#pragma once

#include <cstdint>
#include <iosfwd>

namespace concordia {

enum class VerifyScale { Quick, Full };

struct VerifyOptions {
    std::uint64_t seed = 0x51c0ffee0221ull;
    // Test fixture: flips the sign of the brute-force hopping correlator so
    // mutation-testing can confirm the suite actually bites.
    bool inject_sign_bug = false;
    // Scales every sample count; unit tests shrink the suite with this.
    double sample_scale = 1.0;
};

// Runs every check, prints one pass/fail line per check group to `out`, and
// returns the number of failed groups (0 = all passed).
int run_verify(VerifyScale scale, std::ostream& out, const VerifyOptions& options = {});

}  // namespace concordia
