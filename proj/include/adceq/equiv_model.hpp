#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "adceq/common.hpp"
#include "adceq/quantizer.hpp"

namespace adceq {

/// Per-real-dimension standard deviations of the additive Gaussian noise and
/// the zero-mean Gaussian signal at the quantizer input.
struct OperatingPoint {
    double sigma_n = 0.0;
    double sigma_s = 0.0;
};

/// Statistical equivalent of the quantizer at one operating point: output =
/// gain * signal + nld + noise, with nld and noise zero-mean, mutually
/// uncorrelated, and uncorrelated with the signal. Variances are
/// per-real-dimension; complex (I/Q) variances are twice as large.
struct EquivalentStats {
    double gain = 0.0;       // linear input-to-output signal gain
    double noise_var = 0.0;  // variance of the amplified-noise component
    double nld_var = 0.0;    // variance of the distortion component
    double total_output_power = 0.0;  // mean squared quantizer output

    double noise_var_complex() const { return 2.0 * noise_var; }
    double nld_var_complex() const { return 2.0 * nld_var; }
};

/// Node layout for integrals against the signal density: +-half_width range,
/// nominal spacing `step`. The defaults resolve both the signal and the
/// noise-smoothed quantizer transitions at every tested operating point.
struct QuadratureGrid {
    double half_width = 0.0;
    double step = 0.0;

    bool valid() const {
        return std::isfinite(half_width) && std::isfinite(step) &&
               half_width > 0.0 && step > 0.0;
    }

    static QuadratureGrid for_point(double sigma_n, double sigma_s) {
        require(std::isfinite(sigma_n) && sigma_n > 0.0,
                "grid: sigma_n must be finite and > 0");
        require(std::isfinite(sigma_s) && sigma_s >= 0.0,
                "grid: sigma_s must be finite and >= 0");
        QuadratureGrid g;
        g.half_width = 5.0 * std::sqrt(sigma_n * sigma_n + sigma_s * sigma_s);
        g.step = 0.01 * (sigma_s > 0.0 ? std::min(sigma_n, sigma_s) : sigma_n);
        return g;
    }

    static QuadratureGrid for_point(const OperatingPoint& pt) {
        return for_point(pt.sigma_n, pt.sigma_s);
    }
};

namespace detail {

inline double gauss_pdf(double x, double sigma) {
    const double z = x / sigma;
    return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * pi));
}

/// erfc arguments beyond this are saturated to 0/2 (erfc(7.5) ~ 3e-26,
/// far below double resolution against O(1) sums).
inline constexpr double erfc_cut = 7.5;

/// Sum of decision boundaries 1..n: each boundary is 2*i - R.
inline double boundary_prefix_sum(double n, double R) {
    return n * (n + 1.0 - R);
}

struct TransferPair {
    double f;  // conditional mean of the output
    double v;  // conditional mean square of the output
};

/// Conditional output mean and mean square for input mean `s` under Gaussian
/// noise sigma_n, via erfc sums over the decision boundaries. Boundaries
/// outside the +-7.5-sigma erfc window contribute their saturated values in
/// closed form, so cost scales with sigma_n, not with the level count.
inline TransferPair transfer_pair(const QuantizerSpec& q, double sigma_n, double s) {
    const double R = static_cast<double>(q.level_count);
    const double inv = 1.0 / (sqrt2 * sigma_n);
    const double w = erfc_cut * sqrt2 * sigma_n;

    // Boundary index range intersecting [s - w, s + w]; T_i = 2*i - R.
    double lo = std::ceil(0.5 * (s - w + R));
    double hi = std::floor(0.5 * (s + w + R));
    lo = std::min(std::max(lo, 1.0), R);  // lo == R means every boundary saturated
    hi = std::min(std::max(hi, 0.0), R - 1.0);

    const double below = std::max(lo - 1.0, 0.0);  // boundaries left of the window
    double sum_e = 2.0 * below;
    double sum_te = 2.0 * boundary_prefix_sum(below, R);
    for (double i = lo; i <= hi; ++i) {
        const double t = 2.0 * i - R;
        const double e = std::erfc((t - s) * inv);
        sum_e += e;
        sum_te += t * e;
    }

    TransferPair out;
    out.f = -(R - 1.0) + sum_e;
    out.v = (R - 1.0) * (R - 1.0) + 2.0 * sum_te;
    return out;
}

inline void check_model_inputs(double sigma_n, double s_i) {
    require(std::isfinite(sigma_n) && sigma_n > 0.0, "sigma_n must be finite and > 0");
    require_finite(s_i, "s_i");
}

}  // namespace detail

/// Probability of each output level when the input is `s_i` plus Gaussian
/// noise with per-dimension deviation sigma_n. Entries are nonnegative and
/// sum to 1 (telescoping erfc differences).
inline std::vector<double> level_probabilities(const QuantizerSpec& q,
                                               double sigma_n, double s_i) {
    detail::check_model_inputs(sigma_n, s_i);
    const int R = q.level_count;
    const double inv = 1.0 / (sqrt2 * sigma_n);
    std::vector<double> p(R);
    double upper_tail_prev = 1.0;  // P(input above boundary 0) = 1
    for (int i = 1; i < R; ++i) {
        const double t = q.threshold(i);
        const double upper_tail = 0.5 * std::erfc((t - s_i) * inv);
        p[i - 1] = std::max(upper_tail_prev - upper_tail, 0.0);
        upper_tail_prev = upper_tail;
    }
    p[R - 1] = upper_tail_prev;
    return p;
}

/// Expected quantizer output given input mean s_i (noise-smoothed transfer
/// function). Odd in s_i, bounded by the top level, and monotone in s_i.
inline double transfer_function(const QuantizerSpec& q, double sigma_n, double s_i) {
    detail::check_model_inputs(sigma_n, s_i);
    return detail::transfer_pair(q, sigma_n, s_i).f;
}

/// Expected squared quantizer output given input mean s_i. Even in s_i; for
/// bits == 1 it is identically 1.
inline double energy_function(const QuantizerSpec& q, double sigma_n, double s_i) {
    detail::check_model_inputs(sigma_n, s_i);
    return detail::transfer_pair(q, sigma_n, s_i).v;
}

namespace detail {

/// Numeric convolution of level^power against the noise density, integrated
/// piecewise between decision boundaries (the integrand is smooth inside each
/// piece) with composite Simpson. Uses only quantize() and exp(), so it is an
/// oracle independent of the erfc closed forms.
inline double convolve_levels(const QuantizerSpec& q, double sigma_n, double s_i,
                              const QuadratureGrid& grid, int power) {
    check_model_inputs(sigma_n, s_i);
    require(grid.valid(), "quadrature grid must be valid");

    const double W = std::max(grid.half_width, 8.5 * sigma_n);
    std::vector<double> cuts;
    cuts.push_back(-W);
    for (int i = 1; i < q.level_count; ++i) {
        const double u = q.threshold(i) - s_i;
        if (u > -W && u < W) cuts.push_back(u);
    }
    cuts.push_back(W);

    const double h_target = std::clamp(grid.step, 1e-3 * sigma_n, sigma_n / 20.0);
    double total = 0.0;
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
        const double a = cuts[c], b = cuts[c + 1];
        if (!(b > a)) continue;
        double level = quantize(q, s_i + 0.5 * (a + b));
        if (power == 2) level *= level;
        long long n = static_cast<long long>(std::ceil((b - a) / h_target));
        n += n & 1;  // Simpson needs an even panel count
        n = std::max<long long>(n, 2);
        const double h = (b - a) / static_cast<double>(n);
        double acc = gauss_pdf(a, sigma_n) + gauss_pdf(b, sigma_n);
        for (long long k = 1; k < n; ++k)
            acc += (k & 1 ? 4.0 : 2.0) * gauss_pdf(a + h * static_cast<double>(k), sigma_n);
        total += level * acc * h / 3.0;
    }
    return total;
}

}  // namespace detail

/// Numeric cross-check of transfer_function (independent integration path).
inline double transfer_function_quadrature(const QuantizerSpec& q, double sigma_n,
                                           double s_i, const QuadratureGrid& grid) {
    return detail::convolve_levels(q, sigma_n, s_i, grid, 1);
}

/// Numeric cross-check of energy_function (independent integration path).
inline double energy_function_quadrature(const QuantizerSpec& q, double sigma_n,
                                         double s_i, const QuadratureGrid& grid) {
    return detail::convolve_levels(q, sigma_n, s_i, grid, 2);
}

namespace detail {

/// Quadrature nodes for integrals against the signal density. The range is
/// the grid half-width capped at 8.5 sigma_s (the weight beyond is < 1e-15
/// relative); the spacing floor keeps the node count bounded. When the
/// resulting spacing is too coarse to resolve the noise-smoothed transitions
/// (only possible for sigma_s >> sigma_n), refinement nodes are inserted
/// around each decision boundary to avoid aliasing against the uniformly
/// spaced boundaries.
inline std::vector<double> signal_nodes(const QuantizerSpec& q, double sigma_n,
                                        double sigma_s, const QuadratureGrid& grid) {
    const double L = std::min(grid.half_width, 8.5 * sigma_s);
    const double h = std::max(grid.step, 1e-4 * L);
    const long long half = std::max<long long>(1, static_cast<long long>(std::ceil(L / h)));
    const double he = L / static_cast<double>(half);

    std::vector<double> t;
    t.reserve(static_cast<std::size_t>(2 * half + 1));
    for (long long j = -half; j <= half; ++j)
        t.push_back(he * static_cast<double>(j));

    if (sigma_n < 5.0 * he) {
        const double hr = sigma_n / 10.0;
        for (int i = 1; i < q.level_count; ++i) {
            const double ti = q.threshold(i);
            if (std::abs(ti) >= L + 7.0 * sigma_n) continue;
            for (int k = -70; k <= 70; ++k) {
                const double x = ti + hr * static_cast<double>(k);
                if (x > -L && x < L) t.push_back(x);
            }
        }
        std::sort(t.begin(), t.end());
        t.erase(std::unique(t.begin(), t.end()), t.end());
    }
    return t;
}

}  // namespace detail

/// Decompose the quantizer output at an operating point into the linear-gain
/// model. All three output moments are accumulated over one shared node set,
/// which makes gain^2*sigma_s^2 + nld_var + noise_var == total_output_power
/// hold to rounding error by construction.
inline EquivalentStats decompose(const QuantizerSpec& q, const OperatingPoint& pt,
                                 const QuadratureGrid& grid) {
    require(std::isfinite(pt.sigma_n) && pt.sigma_n > 0.0,
            "sigma_n must be finite and > 0");
    require_finite(pt.sigma_s, "sigma_s");
    if (!(pt.sigma_s > 0.0))
        throw degenerate_input("decompose: sigma_s must be > 0 (use the low-signal limit)");
    require(grid.valid(), "quadrature grid must be valid");

    const std::vector<double> t = detail::signal_nodes(q, pt.sigma_n, pt.sigma_s, grid);
    const std::size_t n = t.size();
    double m_sf = 0.0, m_f2 = 0.0, m_v = 0.0;
    double prev_f = 0.0, prev_v = 0.0, prev_w = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const auto fv = detail::transfer_pair(q, pt.sigma_n, t[j]);
        const double w = detail::gauss_pdf(t[j], pt.sigma_s);
        if (j > 0) {
            const double half_dt = 0.5 * (t[j] - t[j - 1]);
            m_sf += half_dt * (prev_w * t[j - 1] * prev_f + w * t[j] * fv.f);
            m_f2 += half_dt * (prev_w * prev_f * prev_f + w * fv.f * fv.f);
            m_v += half_dt * (prev_w * prev_v + w * fv.v);
        }
        prev_f = fv.f;
        prev_v = fv.v;
        prev_w = w;
    }

    EquivalentStats st;
    st.gain = m_sf / (pt.sigma_s * pt.sigma_s);
    st.total_output_power = m_v;
    const double clamp_floor = -1e-10 * std::max(1.0, m_v);
    auto clamp_var = [&](double v, const char* what) {
        if (v >= 0.0) return v;
        if (v >= clamp_floor) return 0.0;
        throw internal_error(std::string("negative variance in decomposition: ") + what);
    };
    st.noise_var = clamp_var(m_v - m_f2, "noise_var");
    st.nld_var = clamp_var(m_f2 - st.gain * st.gain * pt.sigma_s * pt.sigma_s, "nld_var");
    return st;
}

/// Linear gain of the equivalent model, E[signal * output] / E[signal^2].
inline double bussgang_gain(const QuantizerSpec& q, const OperatingPoint& pt,
                            const QuadratureGrid& grid) {
    return decompose(q, pt, grid).gain;
}

/// Variance of the equivalent amplified-noise component.
inline double equiv_noise_var(const QuantizerSpec& q, const OperatingPoint& pt,
                              const QuadratureGrid& grid) {
    return decompose(q, pt, grid).noise_var;
}

/// Variance of the nonlinear-distortion component.
inline double nld_var(const QuantizerSpec& q, const OperatingPoint& pt,
                      const QuadratureGrid& grid) {
    return decompose(q, pt, grid).nld_var;
}

/// Exact vanishing-signal limit of the decomposition: the distortion power
/// goes to zero and the gain becomes the mean slope of the transfer function
/// under the noise density alone. For bits == 1 this gain is
/// sqrt(2 / (pi * sigma_n^2)).
inline EquivalentStats decompose_low_signal_limit(const QuantizerSpec& q,
                                                  double sigma_n) {
    require(std::isfinite(sigma_n) && sigma_n > 0.0, "sigma_n must be finite and > 0");
    const double R = static_cast<double>(q.level_count);
    const double w = detail::erfc_cut * sqrt2 * sigma_n;
    double lo = std::max(std::ceil(0.5 * (R - w)), 1.0);
    double hi = std::min(std::floor(0.5 * (R + w)), R - 1.0);
    double gain_sum = 0.0;
    for (double i = lo; i <= hi; ++i) {
        const double t = 2.0 * i - R;
        gain_sum += std::exp(-0.5 * t * t / (sigma_n * sigma_n));
    }
    EquivalentStats st;
    st.gain = std::sqrt(2.0 / pi) / sigma_n * gain_sum;
    const auto fv = detail::transfer_pair(q, sigma_n, 0.0);
    st.total_output_power = fv.v;
    st.noise_var = fv.v - fv.f * fv.f;
    st.nld_var = 0.0;
    return st;
}

/// Closed-form gain for a Gaussian signal: smoothing the transfer slope by
/// the signal density collapses to the low-signal gain at the combined
/// deviation sqrt(sigma_n^2 + sigma_s^2). Used as an independent algebraic
/// cross-check of the quadrature path.
inline double bussgang_gain_closed_form(const QuantizerSpec& q, const OperatingPoint& pt) {
    require(std::isfinite(pt.sigma_n) && pt.sigma_n > 0.0,
            "sigma_n must be finite and > 0");
    require(std::isfinite(pt.sigma_s) && pt.sigma_s >= 0.0,
            "sigma_s must be finite and >= 0");
    const double sq = std::hypot(pt.sigma_n, pt.sigma_s);
    return decompose_low_signal_limit(q, sq).gain;
}

/// Closed-form mean squared output for a Gaussian signal (same smoothing
/// argument applied to the energy function).
inline double mean_output_energy_closed_form(const QuantizerSpec& q,
                                             const OperatingPoint& pt) {
    require(std::isfinite(pt.sigma_n) && pt.sigma_n > 0.0,
            "sigma_n must be finite and > 0");
    require(std::isfinite(pt.sigma_s) && pt.sigma_s >= 0.0,
            "sigma_s must be finite and >= 0");
    const double sq = std::hypot(pt.sigma_n, pt.sigma_s);
    return detail::transfer_pair(q, sq, 0.0).v;
}

}  // namespace adceq
