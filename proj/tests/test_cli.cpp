#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

const std::string cli = ADCEQ_CLI_PATH;

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    const std::string log = "cli_test_stdout.txt";
    const std::string cmd = cli + " " + args + " > " + log + " 2>&1";
    const int raw = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = (raw >= 0) ? ((raw >> 8) & 0xff) : raw;
    std::ifstream in(log);
    std::stringstream ss;
    ss << in.rdbuf();
    r.output = ss.str();
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) out.push_back(line);
    return out;
}

}  // namespace

TEST_CASE("version flag and argument errors use the documented exit codes") {
    CHECK(run_cli("--version").exit_code == 0);
    CHECK(run_cli("").exit_code == 2);               // a subcommand is required
    CHECK(run_cli("no-such-command").exit_code == 2);
    CHECK(run_cli("curves --bits 3").exit_code == 2);  // --out is required
    CHECK(run_cli("curves --bits 0 --out x.csv").exit_code == 2);
    CHECK(run_cli("simulate-ber --snr-db nonsense --out x.csv").exit_code == 2);
    CHECK(run_cli("simulate-ber --scenario sideways --out x.csv").exit_code == 2);
}

TEST_CASE("curves writes the three advertised tables") {
    const RunResult r =
        run_cli("curves --bits 1 --antennas 1 --snr-db 0:10:5 --out cli_curves.csv");
    REQUIRE(r.exit_code == 0);
    const std::string transfer = slurp("cli_curves.transfer.csv");
    const std::string sinad = slurp("cli_curves.sinad.csv");
    const std::string nf = slurp("cli_curves.nf.csv");
    REQUIRE(!transfer.empty());
    REQUIRE(!sinad.empty());
    REQUIRE(!nf.empty());
    CHECK(transfer.find("bits,sigma_n,s_in,f_out,v_out") != std::string::npos);
    CHECK(sinad.find("bits,snr_adc_in_db,sf_opt_db,snr_out_db,sdr_out_db,sinad_out_db") !=
          std::string::npos);
    CHECK(nf.find("bits,m,snr_cum_in_db,sf_opt_db,nf_db,sinad_cum_out_db") !=
          std::string::npos);
    // 4 metadata lines, 1 header, 3 sweep points for the single (bits, m) pair
    CHECK(lines_of(nf).size() == 4 + 1 + 3);
    for (const std::string& f :
         {std::string("cli_curves.transfer.csv"), std::string("cli_curves.sinad.csv"),
          std::string("cli_curves.nf.csv")})
        std::remove(f.c_str());
}

TEST_CASE("threshold table lists one row per antenna-resolution pair") {
    const RunResult r = run_cli(
        "threshold-table --bits 1 --antennas 1,4 --nf-limit-db 3 --out cli_thr.csv");
    REQUIRE(r.exit_code == 0);
    const std::string text = slurp("cli_thr.csv");
    CHECK(text.find("# nf_limit_db=3.0000") != std::string::npos);
    CHECK(text.find("m,bits,snr_threshold_db,sf_opt_db,open_above,note,"
                    "best_achievable_nf_db") != std::string::npos);
    int rows = 0;
    for (const std::string& line : lines_of(text))
        if (!line.empty() && line[0] != '#' && line[0] != 'm') ++rows;
    CHECK(rows == 2);
    std::remove("cli_thr.csv");
}

TEST_CASE("ber simulation output is byte-identical across reruns") {
    const std::string flags =
        "simulate-ber --bits 1 --antennas 4 --snr-db 10:12:2 --trials 5 --seed 3 "
        "--scenario worst --out ";
    REQUIRE(run_cli(flags + "cli_ber_a.csv").exit_code == 0);
    REQUIRE(run_cli(flags + "cli_ber_b.csv").exit_code == 0);
    const std::string a = slurp("cli_ber_a.csv");
    const std::string b = slurp("cli_ber_b.csv");
    REQUIRE(!a.empty());
    CHECK(a == b);
    CHECK(a.find("# scenario=worst") != std::string::npos);
    CHECK(a.find("# seed=3") != std::string::npos);
    CHECK(a.find("bits,m,scenario,snr_cum_in_db,sf_db,bits_sent,bit_errors,ber,"
                 "wilson_low,wilson_high") != std::string::npos);
    // a different seed changes the sampled content
    REQUIRE(run_cli("simulate-ber --bits 1 --antennas 4 --snr-db 10:12:2 --trials 5 "
                    "--seed 4 --scenario worst --out cli_ber_c.csv")
                .exit_code == 0);
    CHECK(slurp("cli_ber_c.csv") != a);
    std::remove("cli_ber_a.csv");
    std::remove("cli_ber_b.csv");
    std::remove("cli_ber_c.csv");
}

TEST_CASE("validate reports pass and fail through the exit code") {
    const RunResult ok = run_cli("validate --trials 2000 --out cli_val.json --format json");
    REQUIRE(ok.exit_code == 0);
    CHECK(ok.output.find("all checks passed") != std::string::npos);
    const std::string json = slurp("cli_val.json");
    CHECK(!json.empty());
    CHECK(json.front() == '{');
    CHECK(json.find("\"check\": \"decomposition-identity\"") != std::string::npos);
    std::remove("cli_val.json");

    const RunResult bad = run_cli("validate --trials 2000 --inject-gain-scale 1.01");
    CHECK(bad.exit_code == 1);
    CHECK(bad.output.find("FAIL") != std::string::npos);
}
