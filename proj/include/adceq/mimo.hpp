#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "adceq/common.hpp"
#include "adceq/equiv_model.hpp"
#include "adceq/metrics.hpp"
#include "adceq/quantizer.hpp"
#include "adceq/random.hpp"

namespace adceq {

using cplx = std::complex<double>;

/// Unit-magnitude line-of-sight steering vectors for a uniform linear array
/// with half-wavelength spacing: entry for branch m (1-based) at arrival
/// angle alpha is exp(j*pi*m*sin(alpha)).
inline std::vector<std::vector<cplx>> los_steering(int m, std::span<const double> aoas) {
    require(m >= 1, "antenna count must be >= 1");
    require(!aoas.empty(), "need at least one arrival angle");
    std::vector<std::vector<cplx>> c(aoas.size());
    for (std::size_t k = 0; k < aoas.size(); ++k) {
        require_finite(aoas[k], "arrival angle");
        c[k].resize(m);
        const double phase_step = pi * std::sin(aoas[k]);
        for (int ant = 1; ant <= m; ++ant)
            c[k][ant - 1] = std::polar(1.0, phase_step * static_cast<double>(ant));
    }
    return c;
}

/// Uplink array snapshot description: k users with complex channel gains and
/// unit-magnitude steering vectors into m branches, per-dimension user-symbol
/// deviation sigma_x and thermal-noise deviation sigma_n, one shared ADC
/// description and scale factor. The per-branch signal deviation seen by each
/// ADC is sigma_x * sqrt(sum_k |gain_k|^2).
struct ArrayConfig {
    int m = 0;
    int k = 0;
    std::vector<cplx> gains;
    std::vector<std::vector<cplx>> steering;  // [k][m]
    double sigma_x = 0.0;
    double sigma_n = 0.0;
    QuantizerSpec quant;
    double sf = 1.0;

    double signal_sigma() const {
        double p = 0.0;
        for (const cplx& g : gains) p += std::norm(g);
        return sigma_x * std::sqrt(p);
    }

    OperatingPoint operating_point() const { return {sigma_n, signal_sigma()}; }

    cplx channel(int user, int ant) const { return gains[user] * steering[user][ant]; }

    void validate() const {
        require(m >= 1, "antenna count must be >= 1");
        require(k >= 1 && k <= m, "user count must be in [1, antenna count]");
        require(gains.size() == static_cast<std::size_t>(k), "one gain per user");
        require(steering.size() == static_cast<std::size_t>(k), "one steering vector per user");
        for (const auto& row : steering)
            require(row.size() == static_cast<std::size_t>(m),
                    "steering length must equal antenna count");
        require(std::isfinite(sigma_x) && sigma_x > 0.0, "sigma_x must be > 0");
        require(std::isfinite(sigma_n) && sigma_n > 0.0, "sigma_n must be > 0");
        require(quant.level_count >= 2, "quantizer not initialized");
    }
};

/// Build a line-of-sight config whose absolute scale is anchored to the
/// quantizer range: given the cumulative input SNR (dB) across m branches and
/// a scale factor, derive sigma_n and sigma_x so that
/// sf * (signal_sigma^2 + sigma_n^2) == R^2.
inline ArrayConfig make_los_config(const QuantizerSpec& q, int m,
                                   std::span<const cplx> gains,
                                   std::span<const double> aoas,
                                   double snr_cum_db, double sf) {
    require(m >= 1, "antenna count must be >= 1");
    require(!gains.empty() && gains.size() == aoas.size(),
            "need matching nonempty gain and angle lists");
    require_finite(snr_cum_db, "snr_cum_db");
    require(std::isfinite(sf) && sf > 0.0, "sf must be finite and > 0");

    ArrayConfig cfg;
    cfg.m = m;
    cfg.k = static_cast<int>(gains.size());
    cfg.gains.assign(gains.begin(), gains.end());
    cfg.steering = los_steering(m, aoas);
    cfg.quant = q;
    cfg.sf = sf;

    const double snr_adc = from_db(snr_cum_db) / static_cast<double>(m);
    const OperatingPoint pt = to_operating_point(q, {sf, snr_adc, m});
    require(pt.sigma_s > 0.0, "cumulative SNR too low: zero signal power");
    double gain_power = 0.0;
    for (const cplx& g : cfg.gains) gain_power += std::norm(g);
    require(gain_power > 0.0, "at least one user gain must be nonzero");
    cfg.sigma_n = pt.sigma_n;
    cfg.sigma_x = pt.sigma_s / std::sqrt(gain_power);
    cfg.validate();
    return cfg;
}

/// One time instant: user symbols, pre-quantizer branch samples (signal plus
/// thermal noise), and the quantized branch samples.
struct Snapshot {
    std::vector<cplx> x;      // [k]
    std::vector<cplx> s_in;   // [m]
    std::vector<cplx> s_out;  // [m]
};

/// Draw order is fixed (users first, then per-branch noise) so a seeded Rng
/// reproduces the snapshot exactly.
inline Snapshot simulate_snapshot(const ArrayConfig& cfg, Rng& rng) {
    cfg.validate();
    Snapshot snap;
    snap.x.resize(cfg.k);
    for (int u = 0; u < cfg.k; ++u) snap.x[u] = rng.complex_normal(cfg.sigma_x);
    snap.s_in.resize(cfg.m);
    snap.s_out.resize(cfg.m);
    for (int ant = 0; ant < cfg.m; ++ant) {
        cplx v = rng.complex_normal(cfg.sigma_n);
        for (int u = 0; u < cfg.k; ++u) v += cfg.channel(u, ant) * snap.x[u];
        snap.s_in[ant] = v;
        snap.s_out[ant] = quantize_complex(cfg.quant, v);
    }
    return snap;
}

/// Per-user maximum-ratio combining normalized to unit signal gain, then
/// divided by the equivalent-model gain g_o to undo the quantizer's linear
/// action. Pass g_o = 1 for an unquantized input.
inline std::vector<cplx> mrc_estimate(const ArrayConfig& cfg, std::span<const cplx> s,
                                      double g_o) {
    cfg.validate();
    require(s.size() == static_cast<std::size_t>(cfg.m),
            "sample vector length must equal antenna count");
    require(std::isfinite(g_o) && g_o != 0.0, "g_o must be finite and nonzero");
    std::vector<cplx> xhat(cfg.k);
    for (int u = 0; u < cfg.k; ++u) {
        require(std::norm(cfg.gains[u]) > 0.0, "MRC needs nonzero user gains");
        cplx acc = 0.0;
        for (int ant = 0; ant < cfg.m; ++ant)
            acc += std::conj(cfg.channel(u, ant)) * s[ant];
        xhat[u] = acc / (g_o * static_cast<double>(cfg.m) * std::norm(cfg.gains[u]));
    }
    return xhat;
}

namespace detail {

/// Solve A x = b for Hermitian positive-(semi)definite A via Gauss
/// elimination with partial pivoting; k is tiny here.
inline std::vector<cplx> solve_dense(std::vector<std::vector<cplx>> a,
                                     std::vector<cplx> b) {
    const std::size_t n = b.size();
    double scale = 0.0;
    for (const auto& row : a)
        for (const cplx& v : row) scale = std::max(scale, std::abs(v));
    const double tol = scale * 1e-13;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        if (!(std::abs(a[pivot][col]) > tol))
            throw rank_deficient("steering matrix is numerically rank-deficient");
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const cplx f = a[r][col] / a[col][col];
            for (std::size_t c2 = col; c2 < n; ++c2) a[r][c2] -= f * a[col][c2];
            b[r] -= f * b[col];
        }
    }
    std::vector<cplx> x(n);
    for (std::size_t ri = n; ri-- > 0;) {
        cplx acc = b[ri];
        for (std::size_t c2 = ri + 1; c2 < n; ++c2) acc -= a[ri][c2] * x[c2];
        x[ri] = acc / a[ri][ri];
    }
    return x;
}

/// Gram matrix H^H H and matched-filter front end H^H s for the config's
/// channel matrix H (m x k).
inline void gram_and_front(const ArrayConfig& cfg, std::span<const cplx> s,
                           std::vector<std::vector<cplx>>& gram,
                           std::vector<cplx>& front) {
    gram.assign(cfg.k, std::vector<cplx>(cfg.k, 0.0));
    front.assign(cfg.k, 0.0);
    for (int ant = 0; ant < cfg.m; ++ant) {
        for (int u = 0; u < cfg.k; ++u) {
            const cplx hu = cfg.channel(u, ant);
            front[u] += std::conj(hu) * s[ant];
            for (int v = u; v < cfg.k; ++v)
                gram[u][v] += std::conj(hu) * cfg.channel(v, ant);
        }
    }
    for (int u = 0; u < cfg.k; ++u)
        for (int v = 0; v < u; ++v) gram[u][v] = std::conj(gram[v][u]);
}

}  // namespace detail

/// Zero-forcing estimate: (H^H H)^-1 H^H s. No equivalent-gain normalization.
inline std::vector<cplx> zf_estimate(const ArrayConfig& cfg, std::span<const cplx> s) {
    cfg.validate();
    require(s.size() == static_cast<std::size_t>(cfg.m),
            "sample vector length must equal antenna count");
    std::vector<std::vector<cplx>> gram;
    std::vector<cplx> front;
    detail::gram_and_front(cfg, s, gram, front);
    return detail::solve_dense(std::move(gram), std::move(front));
}

/// Linear MMSE estimate: (H^H H + noise_to_signal * I)^-1 H^H s, with
/// noise_to_signal = sigma_n^2 / sigma_x^2 in matching per-dimension units.
inline std::vector<cplx> mmse_estimate(const ArrayConfig& cfg, std::span<const cplx> s,
                                       double noise_to_signal) {
    cfg.validate();
    require(s.size() == static_cast<std::size_t>(cfg.m),
            "sample vector length must equal antenna count");
    require(std::isfinite(noise_to_signal) && noise_to_signal >= 0.0,
            "noise_to_signal must be finite and >= 0");
    std::vector<std::vector<cplx>> gram;
    std::vector<cplx> front;
    detail::gram_and_front(cfg, s, gram, front);
    for (int u = 0; u < cfg.k; ++u) gram[u][u] += noise_to_signal;
    return detail::solve_dense(std::move(gram), std::move(front));
}

/// Paired-trial Monte-Carlo estimate of the receiver noise figure.
struct SimReport {
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::vector<double> nf_per_user;     // linear; quantized over ideal error power
    std::vector<double> nf_se_per_user;  // delta-method standard error (linear)
    double worst_nf = 0.0;               // max over users
    std::vector<double> sinad_per_user;  // empirical post-combining SINAD (linear)
    double corr_err_signal = 0.0;        // |corr(residual, symbol)| pooled
    double analytic_nf = 0.0;            // worst-case model prediction (linear)
};

/// Runs `trials` paired snapshots: the quantized path combines the ADC
/// outputs with MRC normalized by the model gain; the ideal path combines the
/// same pre-quantizer samples. The per-user noise figure is the ratio of the
/// two error powers (identical symbols and noise cancel in the pairing).
inline SimReport empirical_nf(const ArrayConfig& cfg, std::uint64_t trials,
                              std::uint64_t seed) {
    cfg.validate();
    require(trials >= 100, "empirical_nf needs at least 100 trials");
    const OperatingPoint pt = cfg.operating_point();
    const EquivalentStats st = decompose(cfg.quant, pt, QuadratureGrid::for_point(pt));

    const std::size_t k = static_cast<std::size_t>(cfg.k);
    std::vector<double> sum_eq(k, 0.0), sum_ei(k, 0.0), sum_xx(k, 0.0);
    std::vector<double> sum_eq2(k, 0.0), sum_ei2(k, 0.0), sum_cross(k, 0.0);
    std::vector<cplx> sum_err_x(k, 0.0);
    const double nd = static_cast<double>(trials);

    for (std::uint64_t t = 0; t < trials; ++t) {
        Rng rng(seed, t);
        const Snapshot snap = simulate_snapshot(cfg, rng);
        const std::vector<cplx> xq = mrc_estimate(cfg, snap.s_out, st.gain);
        const std::vector<cplx> xi = mrc_estimate(cfg, snap.s_in, 1.0);
        for (std::size_t u = 0; u < k; ++u) {
            const cplx eq = xq[u] - snap.x[u];
            const cplx ei = xi[u] - snap.x[u];
            const double aq = std::norm(eq), ai = std::norm(ei);
            sum_eq[u] += aq;
            sum_ei[u] += ai;
            sum_eq2[u] += aq * aq;
            sum_ei2[u] += ai * ai;
            sum_cross[u] += aq * ai;
            sum_xx[u] += std::norm(snap.x[u]);
            sum_err_x[u] += eq * std::conj(snap.x[u]);
        }
    }

    SimReport rep;
    rep.trials = trials;
    rep.seed = seed;
    rep.nf_per_user.resize(k);
    rep.nf_se_per_user.resize(k);
    rep.sinad_per_user.resize(k);
    double pool_err = 0.0, pool_sig = 0.0;
    cplx pool_cross = 0.0;
    for (std::size_t u = 0; u < k; ++u) {
        const double mq = sum_eq[u] / nd, mi = sum_ei[u] / nd;
        const double vq = sum_eq2[u] / nd - mq * mq;
        const double vi = sum_ei2[u] / nd - mi * mi;
        const double cv = sum_cross[u] / nd - mq * mi;
        const double nf = mq / mi;
        rep.nf_per_user[u] = nf;
        // delta method for the ratio of correlated means
        const double rel_var =
            (vq / (mq * mq) + vi / (mi * mi) - 2.0 * cv / (mq * mi)) / nd;
        rep.nf_se_per_user[u] = nf * std::sqrt(std::max(rel_var, 0.0));
        rep.sinad_per_user[u] = sum_xx[u] / sum_eq[u];
        pool_err += sum_eq[u];
        pool_sig += sum_xx[u];
        pool_cross += sum_err_x[u];
    }
    rep.worst_nf = *std::max_element(rep.nf_per_user.begin(), rep.nf_per_user.end());
    rep.corr_err_signal = std::abs(pool_cross) / std::sqrt(pool_err * pool_sig);
    const double m = static_cast<double>(cfg.m);
    rep.analytic_nf =
        (st.noise_var + m * st.nld_var) / (st.gain * st.gain * pt.sigma_n * pt.sigma_n);
    return rep;
}

/// Cross-branch correlation of the model-based distortion component.
struct CoherenceProbe {
    std::vector<double> corr_mag;  // |corr| of branch i's distortion vs branch 0's
    double mean_corr_offdiag = 0.0;
    double se = 0.0;  // ~1/sqrt(trials), for judging closeness to 0 or 1
};

/// Draws noiseless branch signals, maps each through the equivalent model's
/// distortion component per real dimension, back-rotates every branch by its
/// conjugate channel phase, and correlates branches against the first one.
/// Broadside or endfire arrival makes the rotated branch distortions equal,
/// so every correlation is 1; a generic angle spreads the phases and the
/// distortion decorrelates across the array. Single-user configs only.
inline CoherenceProbe nld_coherence_probe(const ArrayConfig& cfg, std::uint64_t trials,
                                          std::uint64_t seed) {
    cfg.validate();
    require(cfg.k == 1, "nld_coherence_probe expects a single-user config");
    require(trials >= 100, "nld_coherence_probe needs at least 100 trials");
    const OperatingPoint pt = cfg.operating_point();
    const double g = decompose(cfg.quant, pt, QuadratureGrid::for_point(pt)).gain;

    const std::size_t m = static_cast<std::size_t>(cfg.m);
    std::vector<cplx> cross(m, 0.0);
    std::vector<double> power(m, 0.0);
    std::vector<cplx> w(m);
    for (std::uint64_t t = 0; t < trials; ++t) {
        Rng rng(seed, t);
        std::vector<cplx> x(cfg.k);
        for (int u = 0; u < cfg.k; ++u) x[u] = rng.complex_normal(cfg.sigma_x);
        for (std::size_t ant = 0; ant < m; ++ant) {
            cplx s = 0.0;
            for (int u = 0; u < cfg.k; ++u)
                s += cfg.channel(u, static_cast<int>(ant)) * x[u];
            const cplx f{transfer_function(cfg.quant, pt.sigma_n, s.real()),
                         transfer_function(cfg.quant, pt.sigma_n, s.imag())};
            w[ant] = std::conj(cfg.channel(0, static_cast<int>(ant))) * (f - g * s);
        }
        for (std::size_t ant = 0; ant < m; ++ant) {
            cross[ant] += w[ant] * std::conj(w[0]);
            power[ant] += std::norm(w[ant]);
        }
    }

    CoherenceProbe probe;
    probe.corr_mag.resize(m);
    double acc = 0.0;
    for (std::size_t ant = 0; ant < m; ++ant) {
        probe.corr_mag[ant] = std::abs(cross[ant]) / std::sqrt(power[ant] * power[0]);
        if (ant > 0) acc += probe.corr_mag[ant];
    }
    probe.mean_corr_offdiag = m > 1 ? acc / static_cast<double>(m - 1) : 1.0;
    probe.se = 1.0 / std::sqrt(static_cast<double>(trials));
    return probe;
}

}  // namespace adceq
