#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <unistd.h>

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "btcts/errors.hpp"
#include "btcts/pipeline.hpp"
#include "doctest.h"
#include "support/helpers.hpp"

using namespace btcts;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        static int counter = 0;
        path = fs::temp_directory_path() /
               ("btcts_pipe_" + tag + "_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    REQUIRE(f.good());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::size_t data_rows(const std::string& csv) {
    // line count minus the header; every emitted file ends with '\n'.
    std::size_t lines = 0;
    for (char c : csv)
        if (c == '\n') ++lines;
    return lines - 1;
}

std::string first_line(const std::string& text) {
    return text.substr(0, text.find('\n'));
}

IngestConfig golden_config() {
    IngestConfig cfg;
    cfg.input_path = BTCTS_DATA_CSV;
    cfg.extra_columns = {"difficulty", "hashrate", "transactionfeesUSD"};
    return cfg;
}

const std::vector<std::string> kOutputs = {
    "price_series.csv",  "log_returns.csv",  "histogram.csv",
    "qq.csv",            "acf_price.csv",    "pacf_price.csv",
    "acf_returns.csv",   "pacf_returns.csv", "volatility_forecast.csv",
    "logprice_forecast.csv", "report.json"};

int cli(const std::string& args) {
    const std::string cmd = std::string(BTCTS_CLI_BIN) + " " + args;
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -2;
}

}  // namespace

TEST_CASE("full pipeline: deterministic outputs with the documented shapes") {
    TempDir dir_a("a"), dir_b("b");
    const PipelineConfig config;  // defaults: split 0.9, all models, rolling

    run_pipeline(golden_config(), config, dir_a.path.string());
    run_pipeline(golden_config(), config, dir_b.path.string());

    for (const std::string& name : kOutputs) {
        CAPTURE(name);
        REQUIRE(fs::exists(dir_a.path / name));
        REQUIRE(fs::exists(dir_b.path / name));
        // Byte-identical across independent runs.
        CHECK(slurp(dir_a.path / name) == slurp(dir_b.path / name));
    }

    const std::string price = slurp(dir_a.path / "price_series.csv");
    CHECK(first_line(price) == "date,price,log_price");
    CHECK(data_rows(price) == 2425);

    const std::string rets = slurp(dir_a.path / "log_returns.csv");
    CHECK(first_line(rets) == "date,log_return");
    CHECK(data_rows(rets) == 2424);

    const std::string hist = slurp(dir_a.path / "histogram.csv");
    CHECK(first_line(hist) == "bin_lower,bin_upper,count");
    CHECK(data_rows(hist) == 50);

    const std::string qq = slurp(dir_a.path / "qq.csv");
    CHECK(first_line(qq) == "theoretical,sample");
    CHECK(data_rows(qq) == 2424);

    // ACF includes lag 0; PACF starts at lag 1.
    const std::string acf_p = slurp(dir_a.path / "acf_price.csv");
    CHECK(first_line(acf_p) == "lag,acf,band");
    CHECK(data_rows(acf_p) == 41);
    const std::string pacf_p = slurp(dir_a.path / "pacf_price.csv");
    CHECK(first_line(pacf_p) == "lag,pacf,band");
    CHECK(data_rows(pacf_p) == 40);
    CHECK(data_rows(slurp(dir_a.path / "acf_returns.csv")) == 41);
    CHECK(data_rows(slurp(dir_a.path / "pacf_returns.csv")) == 40);

    // Test window: 2425 log prices -> 243 test rows; 2424 returns -> 243.
    const std::string vol = slurp(dir_a.path / "volatility_forecast.csv");
    CHECK(first_line(vol) == "date,realized_abs_return,garch_sigma,egarch_sigma");
    CHECK(data_rows(vol) == 243);
    const std::string fc = slurp(dir_a.path / "logprice_forecast.csv");
    CHECK(first_line(fc) == "date,actual,arima_predicted,sarima_predicted");
    CHECK(data_rows(fc) == 243);

    const std::string report = slurp(dir_a.path / "report.json");
    for (const char* needle :
         {"\"tool_version\": \"0.1.0\"", "\"fingerprint\"", "\"adf_returns\"",
          "\"arch_lm_returns\"", "\"regressions\"", "\"ARIMA(1,1,1)\"",
          "\"SARIMA(1,1,1)(1,1,1,7)\"", "\"GARCH(1,1)\"", "\"EGARCH(1,1)\"", "\"schemes\"",
          "\"rolling_one_step\"", "\"static_multi_step\"", "\"best\"",
          "\"rows_before_filter\": 3488", "\"rows_after_filter\": 2425"}) {
        CAPTURE(needle);
        CHECK(report.find(needle) != std::string::npos);
    }
}

TEST_CASE("pipeline: restricting the model selection narrows every output") {
    TempDir dir("arima_only");
    PipelineConfig config;
    config.models = ModelSelection::arima;

    run_pipeline(golden_config(), config, dir.path.string());

    const std::string fc = slurp(dir.path / "logprice_forecast.csv");
    CHECK(first_line(fc) == "date,actual,arima_predicted");

    // No volatility model was fitted: header only.
    const std::string vol = slurp(dir.path / "volatility_forecast.csv");
    CHECK(vol == "date,realized_abs_return\n");

    const std::string report = slurp(dir.path / "report.json");
    CHECK(report.find("\"ARIMA(1,1,1)\"") != std::string::npos);
    // Exactly one fitted model: one price entry, no volatility entries.
    // (The configured-but-unfitted seasonal order still appears in the
    // config block, so count model groups rather than names.)
    std::size_t price_entries = 0;
    for (std::size_t pos = report.find("\"group\": \"price\""); pos != std::string::npos;
         pos = report.find("\"group\": \"price\"", pos + 1))
        ++price_entries;
    CHECK(price_entries == 1);
    CHECK(report.find("\"group\": \"volatility\"") == std::string::npos);
}

TEST_CASE("pipeline: config failures leave no partial outputs behind") {
    TempDir dir("fail");
    PipelineConfig config;
    config.split_fraction = 1.5;
    CHECK_THROWS_AS(run_pipeline(golden_config(), config, dir.path.string()), InvalidFraction);
    for (const std::string& name : kOutputs) CHECK_FALSE(fs::exists(dir.path / name));
}

TEST_CASE("diagnose: returns the three corrected regressions") {
    const std::string out = diagnose(golden_config(), PipelineConfig{}).dump();
    for (const char* needle :
         {"\"adf_returns\"", "\"arch_lm_returns\"", "\"regressions\"",
          "\"price_on_difficulty_fees\"", "\"logprice_on_loghash_logdiff_logfees\"",
          "\"dlogprice_on_dlogfees\"", "\"dw_before\"", "\"dw_after\""}) {
        CAPTURE(needle);
        CHECK(out.find(needle) != std::string::npos);
    }
}

TEST_CASE("cli: pipeline subcommand writes the report and says so") {
    TempDir dir("cli");
    const fs::path log = dir.path / "stdout.txt";
    const int rc = cli("pipeline --input " + std::string(BTCTS_DATA_CSV) + " --out " +
                       (dir.path / "out").string() + " > " + log.string() + " 2>&1");
    CHECK(rc == 0);
    CHECK(fs::exists(dir.path / "out" / "report.json"));
    CHECK(slurp(log).find("wrote") != std::string::npos);
}

TEST_CASE("cli: ingest summarizes the filtered dataset") {
    TempDir dir("ingest");
    const fs::path log = dir.path / "stdout.txt";
    const int rc =
        cli("ingest --input " + std::string(BTCTS_DATA_CSV) + " > " + log.string() + " 2>&1");
    CHECK(rc == 0);
    const std::string out = slurp(log);
    CHECK(out.find("\"rows_before_filter\": 3488") != std::string::npos);
    CHECK(out.find("\"rows_after_filter\": 2425") != std::string::npos);
    CHECK(out.find("\"mean_log_return\"") != std::string::npos);
}

TEST_CASE("cli: error paths map to the documented exit codes") {
    TempDir dir("errors");
    // Missing input file -> data error.
    CHECK(cli("ingest --input /nonexistent/nope.csv > /dev/null 2>&1") == 3);
    // Invalid train fraction -> config error.
    CHECK(cli("pipeline --input " + std::string(BTCTS_DATA_CSV) + " --split 1.5 --out " +
              (dir.path / "o1").string() + " > /dev/null 2>&1") == 2);
    // Unknown flag -> usage error.
    CHECK(cli("pipeline --input x --bogus > /dev/null 2>&1") == 2);
    // Help exits cleanly.
    CHECK(cli("--help > /dev/null 2>&1") == 0);
}

TEST_CASE("cli: a dataset too small for the volatility fits fails cleanly") {
    TempDir dir("small");
    const fs::path csv = dir.path / "small.csv";
    {
        std::ofstream f(csv);
        f << "date,priceUSD\n";
        Date day = Date::parse("2020-01-01");
        double price = 200.0;
        std::uint64_t state = 88172645463325252ULL;  // xorshift, fixed seed
        for (int i = 0; i < 100; ++i) {
            f << day.to_string() << "," << price << "\n";
            day = day + 1;
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            const double u = static_cast<double>(state % 2000) / 1000.0 - 1.0;  // [-1, 1)
            price *= std::exp(0.02 * u);
        }
    }
    // 100 prices -> 99 returns -> 89 training returns, below the GARCH
    // minimum: the run must fail with a data error and clean up after itself.
    const fs::path out = dir.path / "out";
    const int rc = cli("pipeline --input " + csv.string() + " --out " + out.string() +
                       " > /dev/null 2>&1");
    CHECK(rc == 3);
    CHECK_FALSE(fs::exists(out / "report.json"));
}
