#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "adceq/common.hpp"
#include "adceq/equiv_model.hpp"
#include "adceq/quantizer.hpp"
#include "adceq/random.hpp"

namespace adceq {

/// Normalized cross-moments of the sampled decomposition components. Under a
/// correct model all four vanish in expectation.
struct McDiagnostics {
    double corr_noise_signal = 0.0;  // noise component vs signal
    double corr_nld_signal = 0.0;    // distortion component vs signal
    double corr_noise_nld = 0.0;     // noise vs distortion
    double lag1_noise = 0.0;         // serial correlation of the noise component
};

/// Monte-Carlo estimate of the equivalent model plus whiteness diagnostics.
struct McStats {
    EquivalentStats estimate;  // sampled gain / variances / output power
    McDiagnostics diag;
    double gain_se = 0.0;       // batch-mean standard errors
    double noise_var_se = 0.0;
    double nld_var_se = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

/// Sample the quantizer at an operating point and estimate the equivalent
/// model directly from definitions: gain = E[signal*output]/E[signal^2],
/// noise = output minus conditional mean, distortion = conditional mean minus
/// gain*signal (gain taken from the deterministic decomposition, so the
/// signal-distortion correlation also probes the gain's accuracy).
///
/// Sampling is split into fixed-size chunks with one counter-derived RNG
/// stream per chunk and an ordered reduction, so results depend only on
/// (seed, n), never on scheduling.
inline McStats monte_carlo_stats(const QuantizerSpec& q, const OperatingPoint& pt,
                                 std::uint64_t n, std::uint64_t seed) {
    require(n >= 1000, "monte_carlo_stats needs at least 1000 samples");
    const EquivalentStats model = decompose(q, pt, QuadratureGrid::for_point(pt));
    const double g = model.gain;

    constexpr std::uint64_t chunk = 1 << 16;
    const std::uint64_t n_chunks = (n + chunk - 1) / chunk;

    double s_ss = 0, s_sy = 0, s_yy = 0;           // signal/output moments
    double s_nn = 0, s_ww = 0, s_ns = 0, s_ws = 0; // component moments
    double s_nw = 0, s_lag = 0;
    std::vector<double> chunk_gain, chunk_nv, chunk_wv;
    chunk_gain.reserve(n_chunks);
    chunk_nv.reserve(n_chunks);
    chunk_wv.reserve(n_chunks);

    for (std::uint64_t c = 0; c < n_chunks; ++c) {
        Rng rng(seed, c);
        const std::uint64_t count = std::min(chunk, n - c * chunk);
        double c_ss = 0, c_sy = 0, c_yy = 0, c_nn = 0, c_ww = 0;
        double c_ns = 0, c_ws = 0, c_nw = 0, c_lag = 0;
        double prev_noise = 0.0;
        for (std::uint64_t i = 0; i < count; ++i) {
            const double s = pt.sigma_s * rng.normal();
            const double y = quantize(q, s + pt.sigma_n * rng.normal());
            const double f = transfer_function(q, pt.sigma_n, s);
            const double noise = y - f;
            const double nld = f - g * s;
            c_ss += s * s;
            c_sy += s * y;
            c_yy += y * y;
            c_nn += noise * noise;
            c_ww += nld * nld;
            c_ns += noise * s;
            c_ws += nld * s;
            c_nw += noise * nld;
            if (i > 0) c_lag += prev_noise * noise;
            prev_noise = noise;
        }
        s_ss += c_ss;
        s_sy += c_sy;
        s_yy += c_yy;
        s_nn += c_nn;
        s_ww += c_ww;
        s_ns += c_ns;
        s_ws += c_ws;
        s_nw += c_nw;
        s_lag += c_lag;
        const double cnt = static_cast<double>(count);
        chunk_gain.push_back(c_sy / c_ss);
        chunk_nv.push_back(c_nn / cnt);
        chunk_wv.push_back(c_ww / cnt);
    }

    const double nd = static_cast<double>(n);
    McStats out;
    out.samples = n;
    out.seed = seed;
    out.estimate.gain = s_sy / s_ss;
    out.estimate.noise_var = s_nn / nd;
    out.estimate.nld_var = s_ww / nd;
    out.estimate.total_output_power = s_yy / nd;
    out.diag.corr_noise_signal = s_ns / std::sqrt(s_nn * s_ss);
    out.diag.corr_nld_signal = s_ws / std::sqrt(s_ww * s_ss);
    out.diag.corr_noise_nld = s_nw / std::sqrt(s_nn * s_ww);
    out.diag.lag1_noise = s_lag / s_nn;

    auto batch_se = [&](const std::vector<double>& v) {
        const std::size_t k = v.size();
        if (k < 2) return 0.0;
        double mean = 0;
        for (double x : v) mean += x;
        mean /= static_cast<double>(k);
        double var = 0;
        for (double x : v) var += (x - mean) * (x - mean);
        var /= static_cast<double>(k - 1);
        return std::sqrt(var / static_cast<double>(k));
    };
    out.gain_se = batch_se(chunk_gain);
    out.noise_var_se = batch_se(chunk_nv);
    out.nld_var_se = batch_se(chunk_wv);
    return out;
}

}  // namespace adceq
