#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "adceq/common.hpp"
#include "adceq/equiv_model.hpp"
#include "adceq/metrics.hpp"
#include "adceq/mimo.hpp"
#include "adceq/monte_carlo.hpp"
#include "adceq/quantizer.hpp"

namespace adceq {

struct CheckResult {
    std::string name;
    bool pass = false;
    double observed = 0.0;  // the statistic that was compared
    double limit = 0.0;     // its pass limit
    std::string note;
};

struct ValidationConfig {
    std::uint64_t seed = 20240601;
    std::uint64_t mc_samples = 200000;  // per whiteness point
    std::uint64_t nf_trials = 20000;
    std::uint64_t coherence_trials = 2000;
    /// Test hook: multiplies the decomposition gain before consistency
    /// checks. Any value != 1 must make the identity check fail.
    double gain_scale = 1.0;
};

/// Self-consistency suite run by the `validate` CLI subcommand. Each check
/// compares an observed statistic against a fixed limit.
inline std::vector<CheckResult> run_validation(const ValidationConfig& cfg) {
    std::vector<CheckResult> results;

    {  // power decomposition identity across a parameter grid
        double worst = 0.0;
        for (int bits : {1, 3, 5}) {
            const QuantizerSpec q = make_quantizer(bits);
            for (double sn : {0.3, 1.0, 3.0}) {
                for (double ss : {0.5, 2.0}) {
                    const OperatingPoint pt{sn, ss};
                    const EquivalentStats st =
                        decompose(q, pt, QuadratureGrid::for_point(pt));
                    const double gain = st.gain * cfg.gain_scale;
                    const double resid = std::abs(gain * gain * ss * ss + st.nld_var +
                                                  st.noise_var - st.total_output_power) /
                                         st.total_output_power;
                    worst = std::max(worst, resid);
                }
            }
        }
        results.push_back({"decomposition-identity", worst <= 1e-8, worst, 1e-8,
                           "max relative residual over bits x sigma grid"});
    }

    {  // closed-form transfer/energy vs independent numeric integration
        double worst = 0.0;
        for (int bits : {2, 4}) {
            const QuantizerSpec q = make_quantizer(bits);
            for (double sn : {0.2, 1.0}) {
                const QuadratureGrid grid = QuadratureGrid::for_point(sn, sn);
                const double span = 10.0 * sn;
                for (int i = 0; i <= 40; ++i) {
                    const double s = -span + 2.0 * span * i / 40.0;
                    worst = std::max(worst, std::abs(transfer_function(q, sn, s) -
                                                     transfer_function_quadrature(q, sn, s, grid)));
                    worst = std::max(worst, std::abs(energy_function(q, sn, s) -
                                                     energy_function_quadrature(q, sn, s, grid)));
                }
            }
        }
        results.push_back({"transfer-closed-vs-numeric", worst <= 1e-6, worst, 1e-6,
                           "max abs deviation over sampled inputs"});
    }

    {  // quadrature gain vs closed-form Gaussian-smoothing gain
        double worst = 0.0;
        for (int bits : {1, 3}) {
            const QuantizerSpec q = make_quantizer(bits);
            for (double ss : {0.5, 1.5}) {
                const OperatingPoint pt{1.0, ss};
                const double gq = bussgang_gain(q, pt, QuadratureGrid::for_point(pt)) *
                                  cfg.gain_scale;
                const double gc = bussgang_gain_closed_form(q, pt);
                worst = std::max(worst, std::abs(gq / gc - 1.0));
            }
        }
        // the 5-sigma quadrature range truncates ~1e-7 of relative mass
        results.push_back({"gain-quadrature-vs-closed", worst <= 1e-5, worst, 1e-5,
                           "max relative gain deviation"});
    }

    {  // one-bit low-SNR noise-figure floor: 10*log10(pi/2)
        const QuantizerSpec q = make_quantizer(1);
        const double sf = optimal_sf(q, 1e-6, SfObjective::minimize_nf, 1);
        const double nf_db = to_db(nf_max(q, sf, 1e-6, 1));
        const double dev = std::abs(nf_db - to_db(pi / 2.0));
        results.push_back({"one-bit-nf-floor", dev <= 0.02, dev, 0.02,
                           "abs deviation from 1.9612 dB"});
    }

    {  // whiteness / orthogonality of the sampled components
        double worst = 0.0;
        const double limit = 4.0 / std::sqrt(static_cast<double>(cfg.mc_samples));
        int idx = 0;
        for (int bits : {1, 3}) {
            const QuantizerSpec q = make_quantizer(bits);
            for (double ss : {0.5, 1.0}) {
                const McStats mc = monte_carlo_stats(q, {1.0, ss}, cfg.mc_samples,
                                                     cfg.seed + 17 * idx++);
                worst = std::max({worst, std::abs(mc.diag.corr_noise_signal),
                                  std::abs(mc.diag.corr_nld_signal),
                                  std::abs(mc.diag.corr_noise_nld),
                                  std::abs(mc.diag.lag1_noise)});
            }
        }
        results.push_back({"component-whiteness", worst < limit, worst, limit,
                           "max |correlation| across sampled points"});
    }

    {  // broadside distortion coherence across the array
        const QuantizerSpec q = make_quantizer(2);
        const cplx gains[] = {cplx{1.0, 0.0}};
        const double aoas[] = {0.0};
        const ArrayConfig cc = make_los_config(q, 32, gains, aoas, 0.0, 4.0);
        const CoherenceProbe probe =
            nld_coherence_probe(cc, cfg.coherence_trials, cfg.seed + 101);
        double worst = 0.0;
        for (double c : probe.corr_mag) worst = std::max(worst, std::abs(c - 1.0));
        const double limit = 3.0 * probe.se;
        results.push_back({"broadside-distortion-coherence", worst <= limit, worst,
                           limit, "max |corr - 1| across branches"});
    }

    {  // analytic vs empirical receiver noise figure at one setup
        const QuantizerSpec q = make_quantizer(1);
        const int m = 32;
        const double snr_cum_db = -5.0;
        const double sf =
            optimal_sf(q, from_db(snr_cum_db) / m, SfObjective::minimize_nf, m);
        const cplx gains[] = {cplx{1.0, 0.0}};
        const double aoas[] = {0.0};
        const ArrayConfig cc = make_los_config(q, m, gains, aoas, snr_cum_db, sf);
        const SimReport rep = empirical_nf(cc, cfg.nf_trials, cfg.seed + 211);
        const double dev = std::abs(to_db(rep.worst_nf) - to_db(rep.analytic_nf));
        results.push_back({"empirical-vs-analytic-nf", dev <= 0.3, dev, 0.3,
                           "abs dB deviation at one-bit broadside setup"});
    }

    return results;
}

}  // namespace adceq
