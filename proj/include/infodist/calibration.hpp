#pragma once

// Frozen calibration constants. Each value was measured once with
// `infodist-calibrate tests/fixtures/texts` (fixture corpus plus seeded random,
// DNA-alphabet and single-run inputs of 1 B to 100 KB) and is kept here as a
// regression bound; the comment records the measured figure.

namespace infodist::calibration {

// In-repo LZ: Z(x‖x) − Z(x) ≤ kLzIdentityBeta + kLzIdentityGamma·log2(8ℓ(x)).
// The second copy costs one match token, about 4·log2(8ℓ) bits; the worst
// residual over 4·log2(8ℓ) measured 21.5 bits (license-LGPL-2.txt).
inline constexpr double kLzIdentityBeta = 64.0;
inline constexpr double kLzIdentityGamma = 4.0;

// Identity deviation per log2 n (n = 8ℓ(xx)) on the 20-file text fixture
// corpus; measured 4.94.
inline constexpr double kLzIdentityPerLogN = 6.0;

// Byte codecs: Z(x‖x) − Z(x) ≤ bits + rate·8ℓ(x) while x‖x fits inside the
// window. Worst measured: gzip 1312 bits at 8ℓ = 101056; bzip2 (block sorting,
// no copy detection) 195840 at 8ℓ = 800000; xz 5088 at 8ℓ = 800000.
inline constexpr double kGzipIdentityBits = 512.0;
inline constexpr double kGzipIdentityRate = 0.02;
inline constexpr double kBzip2IdentityBits = 512.0;
inline constexpr double kBzip2IdentityRate = 0.3;
inline constexpr double kXzIdentityBits = 1024.0;
inline constexpr double kXzIdentityRate = 0.01;

// Z(ε) in bits, measured exactly.
inline constexpr double kLzEmptyBits = 1.0;
inline constexpr double kGzipEmptyBits = 160.0;
inline constexpr double kBzip2EmptyBits = 112.0;
inline constexpr double kXzEmptyBits = 256.0;

// Expansion ceiling Z(x) − (8ℓ + 2 log2 8ℓ) accepted by expansion_audit.
// Measured for LZ: 75.8 bits (100 KB random).
inline constexpr double kExpansionCeilingBits = 1024.0;

}  // namespace infodist::calibration
