#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "adceq/common.hpp"

namespace adceq {

/// Symmetric uniform mid-rise quantizer with step 2 and odd-integer output
/// levels {-(R-1), ..., -3, -1, +1, +3, ..., R-1}, R = 2^bits.
struct QuantizerSpec {
    int bits = 0;
    int level_count = 0;  // R = 2^bits
    double delta = 2.0;   // output level spacing, fixed
    std::vector<double> levels;  // strictly increasing, odd symmetric

    /// Largest output level, (R-1).
    double top_level() const { return static_cast<double>(level_count - 1); }

    /// Inputs at or above this value saturate to the top level; inputs
    /// strictly below its negative saturate to the bottom level.
    double saturation_input() const { return static_cast<double>(level_count - 2); }

    /// Decision boundary between levels i and i+1, for i in [1, R-1].
    /// Boundaries are the even integers 2*i - R.
    double threshold(int i) const { return static_cast<double>(2 * i - level_count); }
};

/// Build the quantizer description for a resolution of `bits` in [1, 16].
inline QuantizerSpec make_quantizer(int bits) {
    require(bits >= 1 && bits <= 16, "quantizer bits must be in [1, 16]");
    QuantizerSpec q;
    q.bits = bits;
    q.level_count = 1 << bits;
    q.delta = 2.0;
    q.levels.resize(q.level_count);
    for (int r = 1; r <= q.level_count; ++r)
        q.levels[r - 1] = static_cast<double>(2 * r - q.level_count - 1);
    return q;
}

/// Map a real sample to its quantizer output level. Ties on a decision
/// boundary round toward +infinity, so quantize(q, 0) == +1 at every
/// resolution. For bits == 1 this degenerates to a sign slicer.
inline double quantize(const QuantizerSpec& q, double s) {
    require_finite(s, "quantizer input");
    const double sat = q.saturation_input();
    if (s >= sat) return q.top_level();
    if (s < -sat) return -q.top_level();
    return 2.0 * std::floor(0.5 * s + 1.0) - 1.0;
}

/// Quantize real and imaginary parts independently.
inline std::complex<double> quantize_complex(const QuantizerSpec& q,
                                             std::complex<double> s) {
    return {quantize(q, s.real()), quantize(q, s.imag())};
}

}  // namespace adceq
