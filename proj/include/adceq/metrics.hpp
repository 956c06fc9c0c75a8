#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "adceq/common.hpp"
#include "adceq/equiv_model.hpp"
#include "adceq/quantizer.hpp"

namespace adceq {

/// System-level description of one ADC's load: automatic-gain scale factor
/// (power ratio), per-ADC input SNR (linear), and the number of combined
/// receiver branches m. The cumulative input SNR after ideal combining is
/// m * snr_adc_in.
struct ScaledPoint {
    double sf = 1.0;
    double snr_adc_in = 0.0;
    int m = 1;

    double snr_cum_in() const { return static_cast<double>(m) * snr_adc_in; }
};

/// Convert the scaled description into per-dimension deviations. The scale
/// factor pins the total input power to the quantizer range:
/// sf * (sigma_s^2 + sigma_n^2) == R^2.
inline OperatingPoint to_operating_point(const QuantizerSpec& q, const ScaledPoint& sp) {
    require(std::isfinite(sp.sf) && sp.sf > 0.0, "sf must be finite and > 0");
    require(std::isfinite(sp.snr_adc_in) && sp.snr_adc_in >= 0.0,
            "snr_adc_in must be finite and >= 0");
    require(sp.m >= 1, "m must be >= 1");
    OperatingPoint pt;
    const double R = static_cast<double>(q.level_count);
    pt.sigma_n = R / std::sqrt(sp.sf * (1.0 + sp.snr_adc_in));
    pt.sigma_s = pt.sigma_n * std::sqrt(sp.snr_adc_in);
    return pt;
}

/// Output-side quality of a single ADC at an operating point.
struct AdcOutputMetrics {
    double snr_out = 0.0;    // signal over amplified noise
    double sdr_out = 0.0;    // signal over distortion (inf when distortion-free)
    double sinad_out = 0.0;  // signal over (noise + distortion)
    bool nld_free = false;
};

inline AdcOutputMetrics adc_output_metrics(const QuantizerSpec& q,
                                           const OperatingPoint& pt,
                                           const QuadratureGrid& grid) {
    if (!(pt.sigma_s > 0.0))
        throw degenerate_input("adc_output_metrics: sigma_s must be > 0");
    const EquivalentStats st = decompose(q, pt, grid);
    const double sig = st.gain * st.gain * pt.sigma_s * pt.sigma_s;
    AdcOutputMetrics out;
    out.snr_out = sig / st.noise_var;
    out.nld_free = !(st.nld_var > 0.0);
    out.sdr_out = out.nld_free ? std::numeric_limits<double>::infinity()
                               : sig / st.nld_var;
    out.sinad_out = sig / (st.noise_var + st.nld_var);
    return out;
}

/// Worst-case noise figure of the combined m-branch receiver: the SINAD
/// degradation when every branch sees the same distortion realization, so
/// distortion adds coherently while thermal noise does not.
inline double nf_max(const QuantizerSpec& q, double sf, double snr_cum_in, int m) {
    require(std::isfinite(sf) && sf > 0.0, "sf must be finite and > 0");
    require(std::isfinite(snr_cum_in) && snr_cum_in >= 0.0,
            "snr_cum_in must be finite and >= 0");
    require(m >= 1, "m must be >= 1");
    ScaledPoint sp{sf, snr_cum_in / static_cast<double>(m), m};
    const OperatingPoint pt = to_operating_point(q, sp);
    EquivalentStats st;
    if (pt.sigma_s > 0.0)
        st = decompose(q, pt, QuadratureGrid::for_point(pt));
    else
        st = decompose_low_signal_limit(q, pt.sigma_n);
    const double denom = st.gain * st.gain * pt.sigma_n * pt.sigma_n;
    return (st.noise_var + static_cast<double>(m) * st.nld_var) / denom;
}

/// Cumulative output SINAD of the combined receiver; equals the cumulative
/// input SNR divided by the worst-case noise figure.
inline double cumulative_sinad(const QuantizerSpec& q, double sf, double snr_cum_in,
                               int m) {
    return snr_cum_in / nf_max(q, sf, snr_cum_in, m);
}

enum class SfObjective {
    maximize_sinad,  // best single-ADC output SINAD
    minimize_nf      // best combined-receiver noise figure
};

namespace detail {

struct SfScanResult {
    double sf = 1.0;        // linear
    double sf_db = 0.0;
    double value_db = 0.0;  // objective value at the optimum (dB)
};

/// Exhaustive scan of the automatic-gain scale factor over 0..30 dB in
/// 0.1 dB steps; ties keep the smaller scale factor.
template <class ObjectiveDb>
SfScanResult scan_sf(ObjectiveDb&& objective_db) {
    SfScanResult best;
    bool first = true;
    for (int i = 0; i <= 300; ++i) {
        const double sf_db = 0.1 * static_cast<double>(i);
        const double sf = from_db(sf_db);
        const double value = objective_db(sf);
        if (first || value < best.value_db) {
            best = {sf, sf_db, value};
            first = false;
        }
    }
    return best;
}

inline SfScanResult min_nf_scan(const QuantizerSpec& q, double snr_cum_in, int m) {
    return scan_sf([&](double sf) { return to_db(nf_max(q, sf, snr_cum_in, m)); });
}

}  // namespace detail

/// Best scale factor for one ADC feeding an m-branch receiver at per-ADC
/// input SNR snr_adc_in. Returns the linear scale factor.
inline double optimal_sf(const QuantizerSpec& q, double snr_adc_in,
                         SfObjective objective, int m) {
    require(std::isfinite(snr_adc_in) && snr_adc_in >= 0.0,
            "snr_adc_in must be finite and >= 0");
    require(m >= 1, "m must be >= 1");
    if (objective == SfObjective::maximize_sinad) {
        require(snr_adc_in > 0.0, "maximize_sinad needs snr_adc_in > 0");
        const auto best = detail::scan_sf([&](double sf) {
            const OperatingPoint pt = to_operating_point(q, {sf, snr_adc_in, m});
            // scan_sf minimizes, so feed it the negated SINAD
            return -to_db(adc_output_metrics(q, pt, QuadratureGrid::for_point(pt)).sinad_out);
        });
        return best.sf;
    }
    const double snr_cum = static_cast<double>(m) * snr_adc_in;
    return detail::min_nf_scan(q, snr_cum, m).sf;
}

/// Threshold search result: the largest cumulative input SNR at which the
/// noise figure still meets the limit (to 0.05 dB), plus the scale factor
/// that achieves it. open_above is set when the search bracket's upper end
/// (80 dB) still meets the limit.
struct SnrThreshold {
    double snr_cum_in_db = 0.0;
    double sf_opt_db = 0.0;
    bool open_above = false;
};

/// Bisection on the dB axis over [-20, 80]. The minimized-over-SF noise
/// figure is nondecreasing in the cumulative input SNR (flat floor at low
/// SNR, steep growth past the threshold), which the test suite verifies on a
/// grid; bisection therefore brackets the unique crossing.
inline SnrThreshold snr_threshold(const QuantizerSpec& q, int m, double nf_limit_db) {
    require(m >= 1, "m must be >= 1");
    require_finite(nf_limit_db, "nf_limit_db");
    const auto nf_min_db = [&](double snr_db) {
        return detail::min_nf_scan(q, from_db(snr_db), m);
    };

    double lo = -20.0, hi = 80.0;
    const auto at_lo = nf_min_db(lo);
    if (at_lo.value_db > nf_limit_db)
        throw no_solution("noise-figure limit unreachable at any tested SNR",
                          at_lo.value_db);
    auto at_best = at_lo;
    const auto at_hi = nf_min_db(hi);
    if (at_hi.value_db <= nf_limit_db)
        return {hi, at_hi.sf_db, true};

    while (hi - lo > 0.05) {
        const double mid = 0.5 * (lo + hi);
        const auto at_mid = nf_min_db(mid);
        if (at_mid.value_db <= nf_limit_db) {
            lo = mid;
            at_best = at_mid;
        } else {
            hi = mid;
        }
    }
    return {lo, at_best.sf_db, false};
}

/// Smallest resolution (bits) whose threshold covers the target cumulative
/// SNR under the noise-figure limit. Resolutions whose noise-figure floor
/// already exceeds the limit are skipped; if even max_bits falls short, a
/// no_solution error reports the best achievable noise figure at the target.
inline int resolution_for(int m, double snr_cum_in_db, double nf_limit_db,
                          int max_bits = 8) {
    require(m >= 1, "m must be >= 1");
    require_finite(snr_cum_in_db, "snr_cum_in_db");
    require(max_bits >= 1 && max_bits <= 16, "max_bits must be in [1, 16]");
    for (int bits = 1; bits <= max_bits; ++bits) {
        const QuantizerSpec q = make_quantizer(bits);
        SnrThreshold th;
        try {
            th = snr_threshold(q, m, nf_limit_db);
        } catch (const no_solution&) {
            continue;  // this resolution cannot meet the limit at any SNR
        }
        if (th.snr_cum_in_db >= snr_cum_in_db || th.open_above) return bits;
    }
    const QuantizerSpec q = make_quantizer(max_bits);
    const double best = detail::min_nf_scan(q, from_db(snr_cum_in_db), m).value_db;
    throw no_solution("no resolution up to max_bits meets the noise-figure limit", best);
}

/// Effective number of equally loaded branches for a set of per-branch
/// signal powers: total power over the strongest branch's power.
inline double effective_antenna_count(std::span<const double> branch_powers) {
    require(!branch_powers.empty(), "branch power list must be nonempty");
    double sum = 0.0, peak = 0.0;
    for (double p : branch_powers) {
        require(std::isfinite(p) && p >= 0.0, "branch powers must be finite and >= 0");
        sum += p;
        peak = std::max(peak, p);
    }
    require(peak > 0.0, "at least one branch power must be > 0");
    return sum / peak;
}

/// One row of the noise-figure characteristic sweep.
struct NFCurvePoint {
    int bits = 0;
    int m = 0;
    double snr_cum_in_db = 0.0;
    double sf_opt_db = 0.0;
    double nf_db = 0.0;
    double sinad_cum_out_db = 0.0;
};

/// Noise figure and cumulative SINAD versus cumulative input SNR at the
/// NF-optimal scale factor for each point.
inline std::vector<NFCurvePoint> nf_curve(const QuantizerSpec& q, int m,
                                          double start_db, double stop_db,
                                          double step_db) {
    require(m >= 1, "m must be >= 1");
    require(std::isfinite(start_db) && std::isfinite(stop_db) && std::isfinite(step_db),
            "sweep bounds must be finite");
    require(step_db > 0.0, "sweep step must be > 0");
    require(stop_db >= start_db, "sweep stop must be >= start");
    std::vector<NFCurvePoint> out;
    for (int k = 0;; ++k) {
        const double snr_db = start_db + step_db * static_cast<double>(k);
        if (snr_db > stop_db + 1e-9) break;
        const auto best = detail::min_nf_scan(q, from_db(snr_db), m);
        NFCurvePoint p;
        p.bits = q.bits;
        p.m = m;
        p.snr_cum_in_db = snr_db;
        p.sf_opt_db = best.sf_db;
        p.nf_db = best.value_db;
        p.sinad_cum_out_db = snr_db - best.value_db;
        out.push_back(p);
    }
    return out;
}

}  // namespace adceq
