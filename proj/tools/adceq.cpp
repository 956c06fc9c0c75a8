// Command-line front end: characterization curves, SNR-threshold tables,
// link-level BER simulation, and the self-validation suite. All outputs are
// deterministic for fixed arguments (fixed formats, no timestamps), so
// reruns produce byte-identical files.

#include <cstdio>
#include <exception>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "adceq/adceq.hpp"

namespace {

using namespace adceq;

struct Sweep {
    double start = 0.0, stop = 0.0, step = 1.0;

    std::vector<double> values() const {
        std::vector<double> v;
        for (int k = 0;; ++k) {
            const double x = start + step * static_cast<double>(k);
            if (x > stop + 1e-9) break;
            v.push_back(x);
        }
        return v;
    }

    std::string text() const {
        char buf[96];
        std::snprintf(buf, sizeof buf, "%g:%g:%g", start, stop, step);
        return buf;
    }
};

Sweep parse_sweep(const std::string& s) {
    Sweep sw;
    char tail = 0;
    if (std::sscanf(s.c_str(), "%lf:%lf:%lf%c", &sw.start, &sw.stop, &sw.step, &tail) != 3)
        throw CLI::ValidationError("--snr-db", "expected <start>:<stop>:<step>");
    if (!(sw.step > 0.0) || sw.stop < sw.start)
        throw CLI::ValidationError("--snr-db", "need step > 0 and stop >= start");
    return sw;
}

std::string list_text(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

// out path "dir/name.csv" + part "nf" -> "dir/name.nf.csv"
std::string with_part(const std::string& out, const std::string& part) {
    const std::size_t slash = out.find_last_of('/');
    const std::size_t dot = out.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return out + "." + part;
    return out.substr(0, dot) + "." + part + out.substr(dot);
}

TableFormat parse_format(const std::string& f) {
    return f == "json" ? TableFormat::json : TableFormat::csv;
}

void base_meta(Table& t, const std::string& command) {
    t.meta.emplace_back("tool_version", version_string);
    t.meta.emplace_back("command", command);
}

void emit(const Table& t, const std::string& path, TableFormat fmt) {
    write_table_file(path, fmt, t);
    std::cout << "wrote " << path << "\n";
}

Cell db_cell(double v) {
    if (!std::isfinite(v)) return Cell{};  // empty cell for unbounded ratios
    return Cell{v};
}

int run_curves(const std::vector<int>& bits_list, const std::vector<int>& m_list,
               const Sweep& sweep, const std::string& out, TableFormat fmt) {
    {  // noise-smoothed transfer and energy samples
        Table t;
        base_meta(t, "curves.transfer");
        t.meta.emplace_back("sigma_n_set", "0.1,0.3,1.0");
        t.columns = {{"bits", ColKind::integer},
                     {"sigma_n", ColKind::real},
                     {"s_in", ColKind::real},
                     {"f_out", ColKind::real},
                     {"v_out", ColKind::real}};
        for (int bits : bits_list) {
            const QuantizerSpec q = make_quantizer(bits);
            const double span = q.top_level() + 1.0;
            for (double sn : {0.1, 0.3, 1.0}) {
                for (int i = 0; i <= 400; ++i) {
                    const double s = -span + 2.0 * span * i / 400.0;
                    t.rows.push_back({Cell{static_cast<long long>(bits)}, Cell{sn},
                                      Cell{s}, Cell{transfer_function(q, sn, s)},
                                      Cell{energy_function(q, sn, s)}});
                }
            }
        }
        emit(t, with_part(out, "transfer"), fmt);
    }

    {  // single-ADC output quality at the SINAD-optimal scale factor
        Table t;
        base_meta(t, "curves.sinad");
        t.meta.emplace_back("snr_adc_in_db", sweep.text());
        t.columns = {{"bits", ColKind::integer},
                     {"snr_adc_in_db", ColKind::decibel},
                     {"sf_opt_db", ColKind::decibel},
                     {"snr_out_db", ColKind::decibel},
                     {"sdr_out_db", ColKind::decibel},
                     {"sinad_out_db", ColKind::decibel}};
        for (int bits : bits_list) {
            const QuantizerSpec q = make_quantizer(bits);
            for (double snr_db : sweep.values()) {
                const double snr = from_db(snr_db);
                if (!(snr > 0.0)) continue;
                const double sf = optimal_sf(q, snr, SfObjective::maximize_sinad, 1);
                const OperatingPoint pt = to_operating_point(q, {sf, snr, 1});
                const AdcOutputMetrics mx =
                    adc_output_metrics(q, pt, QuadratureGrid::for_point(pt));
                t.rows.push_back({Cell{static_cast<long long>(bits)}, Cell{snr_db},
                                  Cell{to_db(sf)}, Cell{to_db(mx.snr_out)},
                                  db_cell(to_db(mx.sdr_out)), Cell{to_db(mx.sinad_out)}});
            }
        }
        emit(t, with_part(out, "sinad"), fmt);
    }

    {  // combined-receiver noise figure curves
        Table t;
        base_meta(t, "curves.nf");
        t.meta.emplace_back("snr_cum_in_db", sweep.text());
        t.meta.emplace_back("antennas", list_text(m_list));
        t.columns = {{"bits", ColKind::integer},
                     {"m", ColKind::integer},
                     {"snr_cum_in_db", ColKind::decibel},
                     {"sf_opt_db", ColKind::decibel},
                     {"nf_db", ColKind::decibel},
                     {"sinad_cum_out_db", ColKind::decibel}};
        for (int bits : bits_list) {
            const QuantizerSpec q = make_quantizer(bits);
            for (int m : m_list) {
                for (const NFCurvePoint& p :
                     nf_curve(q, m, sweep.start, sweep.stop, sweep.step)) {
                    t.rows.push_back({Cell{static_cast<long long>(p.bits)},
                                      Cell{static_cast<long long>(p.m)},
                                      Cell{p.snr_cum_in_db}, Cell{p.sf_opt_db},
                                      Cell{p.nf_db}, Cell{p.sinad_cum_out_db}});
                }
            }
        }
        emit(t, with_part(out, "nf"), fmt);
    }
    return 0;
}

int run_threshold_table(const std::vector<int>& bits_list, const std::vector<int>& m_list,
                        double nf_limit_db, const std::string& out, TableFormat fmt) {
    Table t;
    base_meta(t, "threshold-table");
    {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.4f", nf_limit_db);
        t.meta.emplace_back("nf_limit_db", buf);
    }
    t.columns = {{"m", ColKind::integer},
                 {"bits", ColKind::integer},
                 {"snr_threshold_db", ColKind::decibel},
                 {"sf_opt_db", ColKind::decibel},
                 {"open_above", ColKind::integer},
                 {"note", ColKind::text},
                 {"best_achievable_nf_db", ColKind::decibel}};
    for (int m : m_list) {
        for (int bits : bits_list) {
            const QuantizerSpec q = make_quantizer(bits);
            std::vector<Cell> row{Cell{static_cast<long long>(m)},
                                  Cell{static_cast<long long>(bits)}};
            try {
                const SnrThreshold th = snr_threshold(q, m, nf_limit_db);
                row.push_back(Cell{th.snr_cum_in_db});
                row.push_back(Cell{th.sf_opt_db});
                row.push_back(Cell{static_cast<long long>(th.open_above ? 1 : 0)});
                row.push_back(Cell{std::string{}});
                row.push_back(Cell{});
            } catch (const no_solution& e) {
                row.push_back(Cell{});
                row.push_back(Cell{});
                row.push_back(Cell{static_cast<long long>(0)});
                row.push_back(Cell{std::string("unreachable")});
                row.push_back(Cell{e.best_achievable_db});
            }
            t.rows.push_back(std::move(row));
        }
    }
    emit(t, out, fmt);
    return 0;
}

int run_simulate_ber(const std::vector<int>& bits_list, const std::vector<int>& m_list,
                     const Sweep& sweep, const std::string& scenario, long long trials,
                     std::uint64_t seed, const std::string& out, TableFormat fmt) {
    const ChannelScenario sc =
        scenario == "average" ? ChannelScenario::average : ChannelScenario::worst_case;
    Table t;
    base_meta(t, "simulate-ber");
    t.meta.emplace_back("scenario", scenario);
    t.meta.emplace_back("seed", std::to_string(seed));
    t.meta.emplace_back("max_symbols", std::to_string(trials));
    t.meta.emplace_back("snr_cum_in_db", sweep.text());
    t.columns = {{"bits", ColKind::integer},
                 {"m", ColKind::integer},
                 {"scenario", ColKind::text},
                 {"snr_cum_in_db", ColKind::decibel},
                 {"sf_db", ColKind::decibel},
                 {"bits_sent", ColKind::integer},
                 {"bit_errors", ColKind::integer},
                 {"ber", ColKind::real},
                 {"wilson_low", ColKind::real},
                 {"wilson_high", ColKind::real}};
    BerOptions opt;
    opt.max_symbols = trials;
    opt.seed = seed;
    const OfdmSpec ofdm;
    const std::vector<double> points = sweep.values();
    for (int bits : bits_list) {
        const QuantizerSpec q = make_quantizer(bits);
        for (int m : m_list) {
            for (const BerPoint& p : ber_sim(q, m, sc, ofdm, points, opt)) {
                t.rows.push_back({Cell{static_cast<long long>(bits)},
                                  Cell{static_cast<long long>(m)}, Cell{scenario},
                                  Cell{p.snr_cum_in_db}, Cell{p.sf_db},
                                  Cell{p.bits_sent}, Cell{p.bit_errors}, Cell{p.ber},
                                  Cell{p.wilson_low}, Cell{p.wilson_high}});
            }
        }
    }
    emit(t, out, fmt);
    return 0;
}

int run_validate(long long trials, std::uint64_t seed, double gain_scale,
                 const std::string& out, TableFormat fmt) {
    ValidationConfig cfg;
    cfg.seed = seed;
    cfg.gain_scale = gain_scale;
    if (trials > 0) {
        cfg.nf_trials = static_cast<std::uint64_t>(std::max<long long>(trials, 200));
        cfg.coherence_trials =
            static_cast<std::uint64_t>(std::max<long long>(trials / 10, 200));
        cfg.mc_samples =
            static_cast<std::uint64_t>(std::max<long long>(trials * 10, 10000));
    }
    const std::vector<CheckResult> results = run_validation(cfg);

    int failures = 0;
    for (const CheckResult& r : results) {
        if (!r.pass) ++failures;
        char buf[192];
        std::snprintf(buf, sizeof buf, "%s %-34s observed=%.3e limit=%.3e  %s",
                      r.pass ? "PASS" : "FAIL", r.name.c_str(), r.observed, r.limit,
                      r.note.c_str());
        std::cout << buf << "\n";
    }
    std::cout << (failures == 0 ? "all checks passed" : "some checks FAILED") << "\n";

    if (!out.empty()) {
        Table t;
        base_meta(t, "validate");
        t.meta.emplace_back("seed", std::to_string(seed));
        t.columns = {{"check", ColKind::text},
                     {"pass", ColKind::integer},
                     {"observed", ColKind::real},
                     {"limit", ColKind::real},
                     {"note", ColKind::text}};
        for (const CheckResult& r : results)
            t.rows.push_back({Cell{r.name}, Cell{static_cast<long long>(r.pass ? 1 : 0)},
                              Cell{r.observed}, Cell{r.limit}, Cell{r.note}});
        emit(t, out, fmt);
    }
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantizer equivalent-model toolkit: characterization curves, "
                 "resolution thresholds, and link-level simulation"};
    app.set_version_flag("--version", adceq::version_string);
    app.require_subcommand(1);

    std::vector<int> bits_list{1, 2, 3, 4, 5};
    std::vector<int> m_list{1, 10, 100, 1000, 10000};
    std::string snr_curves = "-10:70:1";
    std::string snr_ber = "10:40:2";
    std::string out_path;
    std::string format = "csv";
    std::string scenario = "worst";
    double nf_limit_db = 3.0;
    long long trials = 0;
    std::uint64_t seed = 1;
    double gain_scale = 1.0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--bits", bits_list, "Quantizer resolutions, comma separated")
            ->delimiter(',')
            ->check(CLI::Range(1, 16));
        sub->add_option("--antennas", m_list, "Combined branch counts, comma separated")
            ->delimiter(',')
            ->check(CLI::Range(1, 1000000));
        sub->add_option("--format", format, "Output format")
            ->check(CLI::IsMember({"csv", "json"}));
    };

    CLI::App* curves = app.add_subcommand(
        "curves", "Transfer-function samples, single-ADC SINAD, and NF curves");
    add_common(curves);
    curves->add_option("--snr-db", snr_curves, "SNR sweep <start>:<stop>:<step> in dB");
    curves->add_option("--out", out_path, "Output path (suffixed per table)")->required();

    CLI::App* thresholds = app.add_subcommand(
        "threshold-table", "Largest cumulative SNR meeting an NF limit, per (m, bits)");
    add_common(thresholds);
    thresholds->add_option("--nf-limit-db", nf_limit_db, "Noise-figure limit in dB");
    thresholds->add_option("--out", out_path, "Output path")->required();

    CLI::App* ber = app.add_subcommand(
        "simulate-ber", "Uncoded 64-QAM OFDM BER through the quantized array");
    add_common(ber);
    ber->add_option("--snr-db", snr_ber, "SNR sweep <start>:<stop>:<step> in dB");
    ber->add_option("--trials", trials, "Max OFDM symbols per sweep point")
        ->default_val(2000);
    ber->add_option("--seed", seed, "RNG seed");
    ber->add_option("--scenario", scenario, "Arrival-angle scenario")
        ->check(CLI::IsMember({"worst", "average"}));
    ber->add_option("--out", out_path, "Output path")->required();

    CLI::App* validate = app.add_subcommand(
        "validate", "Self-consistency checks; nonzero exit on failure");
    validate->add_option("--trials", trials, "Monte-Carlo trial count override");
    validate->add_option("--seed", seed, "RNG seed");
    validate->add_option("--inject-gain-scale", gain_scale,
                         "Test hook: scale the model gain to force failures");
    validate->add_option("--out", out_path, "Optional report path");
    validate->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (curves->parsed())
            return run_curves(bits_list, m_list, parse_sweep(snr_curves), out_path,
                              parse_format(format));
        if (thresholds->parsed())
            return run_threshold_table(bits_list, m_list, nf_limit_db, out_path,
                                       parse_format(format));
        if (ber->parsed()) {
            std::vector<int> ber_bits = bits_list;
            std::vector<int> ber_m = m_list;
            if (!ber->count("--bits")) ber_bits = {1, 2, 3};
            if (!ber->count("--antennas")) ber_m = {100};
            return run_simulate_ber(ber_bits, ber_m, parse_sweep(snr_ber), scenario,
                                    trials, seed, out_path, parse_format(format));
        }
        if (validate->parsed())
            return run_validate(validate->count("--trials") ? trials : 0, seed,
                                gain_scale, out_path, parse_format(format));
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
