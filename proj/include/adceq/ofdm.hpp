#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "adceq/common.hpp"
#include "adceq/equiv_model.hpp"
#include "adceq/metrics.hpp"
#include "adceq/mimo.hpp"
#include "adceq/quantizer.hpp"
#include "adceq/random.hpp"

namespace adceq {

namespace detail {

inline bool is_pow2(int n) { return n >= 2 && (n & (n - 1)) == 0; }

/// In-place iterative radix-2 transform, unscaled.
inline void fft_radix2(std::vector<cplx>& a, bool inverse) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * pi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
        const cplx wlen = std::polar(1.0, ang);
        for (std::size_t i = 0; i < n; i += len) {
            cplx w = 1.0;
            for (std::size_t j = 0; j < len / 2; ++j) {
                const cplx u = a[i + j];
                const cplx v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

inline void fft_unitary(std::vector<cplx>& a) {
    fft_radix2(a, false);
    const double s = 1.0 / std::sqrt(static_cast<double>(a.size()));
    for (cplx& v : a) v *= s;
}

inline void ifft_unitary(std::vector<cplx>& a) {
    fft_radix2(a, true);
    const double s = 1.0 / std::sqrt(static_cast<double>(a.size()));
    for (cplx& v : a) v *= s;
}

}  // namespace detail

/// Gray-coded square 64-QAM with unit average symbol energy: 3 bits per axis,
/// amplitude levels (2*l - 7)/sqrt(42), adjacent levels differing in one bit.
struct Qam64 {
    static constexpr double scale = 0.15430334996209191;  // 1/sqrt(42)

    static int gray(int v) { return v ^ (v >> 1); }
    static int gray_inverse(int g) { return g ^ (g >> 1) ^ (g >> 2); }

    /// 6 bits -> symbol; high 3 bits drive the real axis.
    static cplx map(int bits6) {
        const int li = gray_inverse((bits6 >> 3) & 7);
        const int lq = gray_inverse(bits6 & 7);
        return {static_cast<double>(2 * li - 7) * scale,
                static_cast<double>(2 * lq - 7) * scale};
    }

    /// Hard decision back to 6 bits.
    static int demap(cplx y) {
        auto slice = [](double v) {
            const long l = std::lround((v / scale + 7.0) / 2.0);
            return static_cast<int>(std::clamp(l, 0L, 7L));
        };
        return (gray(slice(y.real())) << 3) | gray(slice(y.imag()));
    }
};

struct OfdmSpec {
    int n_fft = 256;  // all subcarriers carry data; no cyclic prefix
};

enum class ChannelScenario {
    worst_case,  // broadside arrival: fully coherent distortion
    average      // arrival angle drawn uniform over [0, pi) per trial
};

struct BerOptions {
    long long min_bit_errors = 100;
    long long max_symbols = 5000;  // per sweep point
    std::uint64_t seed = 1;
};

struct BerPoint {
    double snr_cum_in_db = 0.0;
    double sf_db = 0.0;  // NF-optimal scale factor used at this point
    long long bits_sent = 0;
    long long bit_errors = 0;
    double ber = 0.0;
    double wilson_low = 0.0;   // 95% score interval
    double wilson_high = 0.0;
};

namespace detail {

inline void wilson_bounds(long long errors, long long total, double& lo, double& hi) {
    const double z = 1.959963984540054;  // 97.5% normal quantile
    const double n = static_cast<double>(total);
    const double p = static_cast<double>(errors) / n;
    const double z2n = z * z / n;
    const double denom = 1.0 + z2n;
    const double center = (p + 0.5 * z2n) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + 0.25 * z2n / n) / denom;
    lo = std::max(center - half, 0.0);
    hi = std::min(center + half, 1.0);
}

}  // namespace detail

/// Uncoded 64-QAM OFDM link-level bit error rate for a single user received
/// by an m-branch array through identical quantizers. Per sweep point the
/// scale factor minimizing the worst-case noise figure is applied, the
/// time-domain branch samples are quantized, and per-subcarrier MRC with the
/// model gain recovers the symbols. Trials stop once min_bit_errors have been
/// counted or max_symbols OFDM symbols have been sent.
inline std::vector<BerPoint> ber_sim(const QuantizerSpec& q, int m,
                                     ChannelScenario scenario, const OfdmSpec& ofdm,
                                     std::span<const double> sweep_db,
                                     const BerOptions& opt) {
    require(m >= 1, "antenna count must be >= 1");
    require(detail::is_pow2(ofdm.n_fft), "n_fft must be a power of two >= 2");
    require(!sweep_db.empty(), "sweep must be nonempty");
    require(opt.min_bit_errors >= 1, "min_bit_errors must be >= 1");
    require(opt.max_symbols >= 1, "max_symbols must be >= 1");

    const int nfft = ofdm.n_fft;
    std::vector<BerPoint> out;
    out.reserve(sweep_db.size());

    std::vector<int> sent(nfft);
    std::vector<cplx> freq(nfft), time(nfft), branch(nfft), acc(nfft);

    for (std::size_t p = 0; p < sweep_db.size(); ++p) {
        require_finite(sweep_db[p], "sweep value");
        const double snr_cum = from_db(sweep_db[p]);
        const double snr_adc = snr_cum / static_cast<double>(m);
        const double sf = optimal_sf(q, snr_adc, SfObjective::minimize_nf, m);
        const OperatingPoint pt = to_operating_point(q, {sf, snr_adc, m});
        require(pt.sigma_s > 0.0, "sweep SNR too low: zero signal power");
        const double g_o = decompose(q, pt, QuadratureGrid::for_point(pt)).gain;
        const double amp = sqrt2 * pt.sigma_s;  // unit-energy symbols -> sigma_s per dim

        BerPoint bp;
        bp.snr_cum_in_db = sweep_db[p];
        bp.sf_db = to_db(sf);

        for (long long trial = 0; trial < opt.max_symbols; ++trial) {
            if (bp.bit_errors >= opt.min_bit_errors) break;
            Rng rng(opt.seed, (static_cast<std::uint64_t>(p) << 40) |
                                  static_cast<std::uint64_t>(trial));
            const double alpha =
                scenario == ChannelScenario::worst_case ? 0.0 : rng.uniform() * pi;
            const double phase_step = pi * std::sin(alpha);

            for (int sc = 0; sc < nfft; ++sc) {
                sent[sc] = static_cast<int>(rng.next_u64() >> 58);
                freq[sc] = Qam64::map(sent[sc]) * amp;
            }
            time = freq;
            detail::ifft_unitary(time);

            std::fill(acc.begin(), acc.end(), cplx{0.0, 0.0});
            for (int ant = 1; ant <= m; ++ant) {
                const cplx steer = std::polar(1.0, phase_step * static_cast<double>(ant));
                for (int t = 0; t < nfft; ++t)
                    branch[t] = quantize_complex(q, steer * time[t] +
                                                        rng.complex_normal(pt.sigma_n));
                detail::fft_unitary(branch);
                const cplx back = std::conj(steer);
                for (int sc = 0; sc < nfft; ++sc) acc[sc] += back * branch[sc];
            }

            const double norm = 1.0 / (g_o * static_cast<double>(m) * amp);
            for (int sc = 0; sc < nfft; ++sc) {
                const int got = Qam64::demap(acc[sc] * norm);
                bp.bit_errors += std::popcount(static_cast<unsigned>(got ^ sent[sc]));
            }
            bp.bits_sent += 6LL * nfft;
        }

        bp.ber = static_cast<double>(bp.bit_errors) / static_cast<double>(bp.bits_sent);
        detail::wilson_bounds(bp.bit_errors, bp.bits_sent, bp.wilson_low, bp.wilson_high);
        out.push_back(bp);
    }
    return out;
}

}  // namespace adceq
