#include "btcts/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <map>
#include <numeric>
#include <optional>

#include "btcts/diagnostics.hpp"
#include "btcts/errors.hpp"
#include "btcts/stats.hpp"
#include "btcts/volatility.hpp"

namespace btcts {

namespace {

namespace fs = std::filesystem;

std::string fmt(double v) {
    char b[64];
    std::snprintf(b, sizeof(b), "%.10g", v);
    return b;
}

std::string spec_label(const SarimaSpec& s) {
    std::string base = "ARIMA(" + std::to_string(s.p) + "," + std::to_string(s.d) + "," +
                       std::to_string(s.q) + ")";
    if (s.P + s.D + s.Q == 0 && s.s == 1) return base;
    return "S" + base + "(" + std::to_string(s.P) + "," + std::to_string(s.D) + "," +
           std::to_string(s.Q) + "," + std::to_string(s.s) + ")";
}

std::string scheme_label(ForecastScheme s) {
    return s == ForecastScheme::rolling_one_step ? "rolling_one_step" : "static_multi_step";
}

std::string model_selection_label(ModelSelection m) {
    switch (m) {
        case ModelSelection::arima: return "arima";
        case ModelSelection::sarima: return "sarima";
        case ModelSelection::garch: return "garch";
        case ModelSelection::egarch: return "egarch";
        default: return "all";
    }
}

std::vector<double> log_column(const std::vector<double>& v, const std::string& name) {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!(v[i] > 0.0))
            throw DataError("column '" + name + "' has a non-positive value; cannot take log");
        out[i] = std::log(v[i]);
    }
    return out;
}

std::vector<double> first_difference(const std::vector<double>& v) {
    std::vector<double> out(v.size() - 1);
    for (std::size_t i = 1; i < v.size(); ++i) out[i - 1] = v[i] - v[i - 1];
    return out;
}

DiagnosticsSummary compute_diagnostics(const IngestResult& data, const PipelineConfig& cfg) {
    DiagnosticsSummary diag;
    const TimeSeries returns = log_returns(data.prices);

    const AdfResult adf = adf_test(returns, cfg.adf_max_lags);
    diag.adf_returns = AdfSummary{adf.statistic, adf.p_value, adf.lags_used};

    std::vector<double> demeaned = returns.values();
    const double mean = std::accumulate(demeaned.begin(), demeaned.end(), 0.0) /
                        static_cast<double>(demeaned.size());
    for (double& v : demeaned) v -= mean;
    const ArchLmResult arch = arch_lm_test(demeaned, cfg.arch_lags);
    diag.arch_returns = ArchSummary{arch.lm_statistic, arch.p_value, arch.lags};

    // The three autocorrelation-corrected regressions, when the blockchain
    // columns were ingested: price on difficulty+fees, log-price on the
    // three logged predictors, and return on the fee log-difference.
    const auto& ex = data.extras;
    const bool have_columns = ex.count("difficulty") && ex.count("hashrate") &&
                              ex.count("transactionfeesUSD");
    if (have_columns) {
        const std::size_t n = data.prices.size();
        const auto& price = data.prices.values();

        auto run_row = [&diag](const std::string& name, const std::vector<double>& y,
                               const DesignMatrix& X) {
            const CochraneOrcuttResult co = cochrane_orcutt(y, X);
            diag.dw_rows.push_back(DwRow{name, co.dw_before, co.dw_after, co.rho,
                                         co.original_fit.r_squared, co.converged});
        };

        {
            DesignMatrix X = DesignMatrix::with_intercept(n);
            X.add_column(ex.at("difficulty"));
            X.add_column(ex.at("transactionfeesUSD"));
            run_row("price_on_difficulty_fees", price, X);
        }
        {
            DesignMatrix X = DesignMatrix::with_intercept(n);
            X.add_column(log_column(ex.at("hashrate"), "hashrate"));
            X.add_column(log_column(ex.at("difficulty"), "difficulty"));
            X.add_column(log_column(ex.at("transactionfeesUSD"), "transactionfeesUSD"));
            run_row("logprice_on_loghash_logdiff_logfees", log_column(price, "price"), X);
        }
        {
            DesignMatrix X = DesignMatrix::with_intercept(n - 1);
            X.add_column(first_difference(log_column(ex.at("transactionfeesUSD"),
                                                     "transactionfeesUSD")));
            run_row("dlogprice_on_dlogfees", returns.values(), X);
        }
    }
    return diag;
}

struct PriceModel {
    SarimaFit fit;
    ForecastTrace rolling;
    ForecastTrace static_trace;
};

PriceModel fit_price_model(const SplitPair& split_lp, const SarimaSpec& spec) {
    PriceModel m;
    m.fit = fit_sarima(split_lp.train, spec);
    m.rolling = rolling_forecast(m.fit, split_lp);
    m.static_trace = static_forecast(m.fit, split_lp);
    return m;
}

Json fingerprint_json(const DatasetFingerprint& fp) {
    Json j = Json::object();
    j.set("rows_before_filter", Json::integer(static_cast<long long>(fp.rows_before_filter)));
    j.set("rows_after_filter", Json::integer(static_cast<long long>(fp.rows_after_filter)));
    j.set("first_date", Json::string(fp.first_date));
    j.set("last_date", Json::string(fp.last_date));
    j.set("min_price", Json::number(fp.min_price));
    j.set("split_fraction", Json::number(fp.split_fraction));
    return j;
}

Json diagnostics_json(const DiagnosticsSummary& diag) {
    Json j = Json::object();
    if (diag.adf_returns) {
        Json a = Json::object();
        a.set("statistic", Json::number(diag.adf_returns->statistic));
        a.set("p_value", Json::number(diag.adf_returns->p_value));
        a.set("lags", Json::integer(diag.adf_returns->lags));
        j.set("adf_returns", std::move(a));
    } else {
        j.set("adf_returns", Json::null());
    }
    if (diag.arch_returns) {
        Json a = Json::object();
        a.set("lm_statistic", Json::number(diag.arch_returns->lm_statistic));
        a.set("p_value", Json::number(diag.arch_returns->p_value));
        a.set("lags", Json::integer(diag.arch_returns->lags));
        j.set("arch_lm_returns", std::move(a));
    } else {
        j.set("arch_lm_returns", Json::null());
    }
    Json rows = Json::array();
    for (const DwRow& r : diag.dw_rows) {
        Json row = Json::object();
        row.set("name", Json::string(r.name));
        row.set("dw_before", Json::number(r.dw_before));
        row.set("dw_after", Json::number(r.dw_after));
        row.set("rho", Json::number(r.rho));
        row.set("r_squared", Json::number(r.r_squared));
        row.set("converged", Json::boolean(r.converged));
        rows.push(std::move(row));
    }
    j.set("regressions", std::move(rows));
    return j;
}

Json sarima_coefficients_json(const SarimaFit& fit) {
    Json j = Json::object();
    Json terms = Json::array();
    const std::vector<double> coefs = fit.coefficients();
    for (std::size_t i = 0; i < coefs.size(); ++i) {
        Json t = Json::object();
        t.set("name", Json::string(fit.coef_names[i]));
        t.set("estimate", Json::number(coefs[i]));
        t.set("stderr", Json::number(fit.stderrors[i]));
        t.set("p_value", Json::number(fit.p_values[i]));
        terms.push(std::move(t));
    }
    j.set("terms", std::move(terms));
    j.set("sigma2", Json::number(fit.sigma2));
    return j;
}

Json garch_coefficients_json(const GarchFit& fit) {
    Json j = Json::object();
    j.set("mu", Json::number(fit.mu));
    j.set("omega", Json::number(fit.omega));
    j.set("alpha1", Json::number(fit.alpha1));
    j.set("beta1", Json::number(fit.beta1));
    j.set("persistence", Json::number(fit.persistence));
    return j;
}

Json egarch_coefficients_json(const EgarchFit& fit) {
    Json j = Json::object();
    j.set("mu", Json::number(fit.mu));
    j.set("omega", Json::number(fit.omega));
    j.set("alpha1", Json::number(fit.alpha1));
    j.set("beta1", Json::number(fit.beta1));
    j.set("gamma1", Json::number(fit.gamma1));
    return j;
}

Json config_json(const IngestConfig& in_cfg, const PipelineConfig& cfg) {
    Json j = Json::object();
    j.set("input", Json::string(in_cfg.input_path));
    j.set("date_column", Json::string(in_cfg.date_column));
    j.set("price_column", Json::string(in_cfg.price_column));
    j.set("min_price", Json::number(in_cfg.min_price));
    Json extras = Json::array();
    for (const auto& c : in_cfg.extra_columns) extras.push(Json::string(c));
    j.set("extra_columns", std::move(extras));
    j.set("split_fraction", Json::number(cfg.split_fraction));
    j.set("models", Json::string(model_selection_label(cfg.models)));
    j.set("arima_order", Json::string(spec_label(cfg.arima_order)));
    j.set("sarima_order", Json::string(spec_label(cfg.sarima_order)));
    j.set("forecast_scheme", Json::string(scheme_label(cfg.forecast_scheme)));
    j.set("acf_lags", Json::integer(cfg.acf_lags));
    j.set("arch_lags", Json::integer(cfg.arch_lags));
    j.set("adf_max_lags", Json::integer(cfg.adf_max_lags));
    j.set("histogram_bins", Json::integer(cfg.histogram_bins));
    j.set("seed", Json::integer(static_cast<long long>(cfg.seed)));
    return j;
}

unsigned capped_pacf_lags(unsigned requested, std::size_t n) {
    const std::size_t cap = n / 2 > 1 ? n / 2 - 1 : 1;
    return static_cast<unsigned>(std::min<std::size_t>(requested, cap));
}

std::string correlogram_csv(const std::vector<CorrelogramPoint>& points, const char* value_name) {
    std::string out = std::string("lag,") + value_name + ",band\n";
    for (const auto& p : points)
        out += std::to_string(p.lag) + "," + fmt(p.value) + "," + fmt(p.confidence_band) + "\n";
    return out;
}

void validate_config(const PipelineConfig& cfg) {
    if (!(cfg.split_fraction > 0.0) || !(cfg.split_fraction < 1.0))
        throw InvalidFraction(cfg.split_fraction);
    cfg.arima_order.validate();
    cfg.sarima_order.validate();
}

}  // namespace

Json diagnose(const IngestConfig& ingest_config, const PipelineConfig& config) {
    validate_config(config);
    const IngestResult data = ingest(ingest_config);
    const DiagnosticsSummary diag = compute_diagnostics(data, config);

    Json root = Json::object();
    root.set("tool_version", Json::string("0.1.0"));
    root.set("config", config_json(ingest_config, config));
    root.set("fingerprint", fingerprint_json(data.fingerprint(config.split_fraction)));
    root.set("diagnostics", diagnostics_json(diag));
    return root;
}

void run_pipeline(const IngestConfig& ingest_config, const PipelineConfig& config,
                  const std::string& out_dir) {
    validate_config(config);

    const IngestResult data = ingest(ingest_config);
    const TimeSeries log_price = log_transform(data.prices);
    const TimeSeries returns = log_returns(data.prices);
    const DiagnosticsSummary diag = compute_diagnostics(data, config);

    const SplitPair split_lp = split(log_price, config.split_fraction);
    const SplitPair split_r = split(returns, config.split_fraction);

    const ModelSelection sel = config.models;
    const bool want_arima = sel == ModelSelection::all || sel == ModelSelection::arima;
    const bool want_sarima = sel == ModelSelection::all || sel == ModelSelection::sarima;
    const bool want_garch = sel == ModelSelection::all || sel == ModelSelection::garch;
    const bool want_egarch = sel == ModelSelection::all || sel == ModelSelection::egarch;

    // The four fits share only immutable inputs, so they run concurrently;
    // everything from here on (including all file writes) is sequential.
    std::future<PriceModel> arima_future, sarima_future;
    std::future<GarchFit> garch_future;
    std::future<EgarchFit> egarch_future;
    if (want_arima)
        arima_future = std::async(std::launch::async,
                                  [&] { return fit_price_model(split_lp, config.arima_order); });
    if (want_sarima)
        sarima_future = std::async(std::launch::async,
                                   [&] { return fit_price_model(split_lp, config.sarima_order); });
    if (want_garch)
        garch_future = std::async(std::launch::async, [&] { return fit_garch(split_r.train); });
    if (want_egarch)
        egarch_future = std::async(std::launch::async, [&] { return fit_egarch(split_r.train); });

    std::optional<PriceModel> arima, sarima;
    std::optional<GarchFit> garch;
    std::optional<EgarchFit> egarch;
    if (want_arima) arima = arima_future.get();
    if (want_sarima) sarima = sarima_future.get();
    if (want_garch) garch = garch_future.get();
    if (want_egarch) egarch = egarch_future.get();

    std::optional<VolForecastTrace> garch_trace, egarch_trace;
    if (garch) garch_trace = forecast_volatility(*garch, split_r.test);
    if (egarch) egarch_trace = forecast_volatility(*egarch, split_r.test);

    const DatasetFingerprint fp = data.fingerprint(config.split_fraction);
    auto trace_of = [&](const PriceModel& m) -> const ForecastTrace& {
        return config.forecast_scheme == ForecastScheme::rolling_one_step ? m.rolling
                                                                          : m.static_trace;
    };

    std::vector<ModelResult> inputs;
    if (arima)
        inputs.push_back(ModelResult{spec_label(config.arima_order), "price", arima->fit.loglik,
                                     arima->fit.spec.n_coefficients() + 1,
                                     arima->fit.n_effective, arima->fit.converged,
                                     scheme_label(config.forecast_scheme), &trace_of(*arima), fp});
    if (sarima)
        inputs.push_back(ModelResult{spec_label(config.sarima_order), "price",
                                     sarima->fit.loglik, sarima->fit.spec.n_coefficients() + 1,
                                     sarima->fit.n_effective, sarima->fit.converged,
                                     scheme_label(config.forecast_scheme), &trace_of(*sarima),
                                     fp});
    if (garch)
        inputs.push_back(ModelResult{"GARCH(1,1)", "volatility", garch->loglik, 4,
                                     split_r.train.size(), garch->converged, "", nullptr, fp});
    if (egarch)
        inputs.push_back(ModelResult{"EGARCH(1,1)", "volatility", egarch->loglik, 5,
                                     split_r.train.size(), egarch->converged, "", nullptr, fp});

    EvaluationReport report = compare_models(inputs);
    report.diagnostics = diag;
    report.fingerprint = fp;

    // ---- report JSON ----
    Json root = Json::object();
    root.set("tool_version", Json::string("0.1.0"));
    root.set("config", config_json(ingest_config, config));
    root.set("fingerprint", fingerprint_json(fp));
    root.set("diagnostics", diagnostics_json(diag));

    std::map<std::string, Json> coefficient_blocks;
    if (arima)
        coefficient_blocks.emplace(spec_label(config.arima_order),
                                   sarima_coefficients_json(arima->fit));
    if (sarima)
        coefficient_blocks.emplace(spec_label(config.sarima_order),
                                   sarima_coefficients_json(sarima->fit));
    if (garch) coefficient_blocks.emplace("GARCH(1,1)", garch_coefficients_json(*garch));
    if (egarch) coefficient_blocks.emplace("EGARCH(1,1)", egarch_coefficients_json(*egarch));

    Json models = Json::array();
    for (const ModelEntry& e : report.models) {
        Json m = Json::object();
        m.set("name", Json::string(e.name));
        m.set("group", Json::string(e.group));
        m.set("scheme", e.scheme.empty() ? Json::null() : Json::string(e.scheme));
        m.set("mae", Json::number(e.mae));
        m.set("rmse", Json::number(e.rmse));
        m.set("loglik", Json::number(e.loglik));
        m.set("k", Json::integer(static_cast<long long>(e.k)));
        m.set("n_obs", Json::integer(static_cast<long long>(e.n_obs)));
        m.set("aic", Json::number(e.aic));
        m.set("bic", Json::number(e.bic));
        m.set("converged", Json::boolean(e.converged));
        auto it = coefficient_blocks.find(e.name);
        m.set("coefficients", it != coefficient_blocks.end() ? it->second : Json::null());
        models.push(std::move(m));
    }
    root.set("models", std::move(models));

    Json best = Json::array();
    for (const MetricFlag& f : report.best) {
        Json b = Json::object();
        b.set("metric", Json::string(f.metric));
        Json winners = Json::array();
        for (const auto& w : f.winners) winners.push(Json::string(w));
        b.set("winners", std::move(winners));
        b.set("tie", Json::boolean(f.tie));
        best.push(std::move(b));
    }
    root.set("best", std::move(best));

    // Both forecast schemes for each price model, so the configured scheme
    // choice never hides the other one's accuracy.
    Json schemes = Json::object();
    auto scheme_entry = [](const PriceModel& m) {
        Json s = Json::object();
        Json rolling = Json::object();
        rolling.set("mae", Json::number(mae(m.rolling)));
        rolling.set("rmse", Json::number(rmse(m.rolling)));
        s.set("rolling_one_step", std::move(rolling));
        Json fixed = Json::object();
        fixed.set("mae", Json::number(mae(m.static_trace)));
        fixed.set("rmse", Json::number(rmse(m.static_trace)));
        s.set("static_multi_step", std::move(fixed));
        return s;
    };
    if (arima) schemes.set(spec_label(config.arima_order), scheme_entry(*arima));
    if (sarima) schemes.set(spec_label(config.sarima_order), scheme_entry(*sarima));
    root.set("schemes", std::move(schemes));

    // ---- plot data ----
    std::string price_csv = "date,price,log_price\n";
    for (std::size_t i = 0; i < data.prices.size(); ++i)
        price_csv += data.prices.timestamp(i).to_string() + "," + fmt(data.prices.value(i)) +
                     "," + fmt(log_price.value(i)) + "\n";

    std::string returns_csv = "date,log_return\n";
    for (std::size_t i = 0; i < returns.size(); ++i)
        returns_csv += returns.timestamp(i).to_string() + "," + fmt(returns.value(i)) + "\n";

    const DistributionShape shape = distribution_shape(returns, config.histogram_bins);
    std::string hist_csv = "bin_lower,bin_upper,count\n";
    for (const HistogramBin& b : shape.histogram)
        hist_csv += fmt(b.lower) + "," + fmt(b.upper) + "," + std::to_string(b.count) + "\n";
    std::string qq_csv = "theoretical,sample\n";
    for (const QqPoint& p : shape.qq) qq_csv += fmt(p.theoretical) + "," + fmt(p.sample) + "\n";

    const std::string acf_price_csv = correlogram_csv(acf(log_price, config.acf_lags), "acf");
    const std::string pacf_price_csv = correlogram_csv(
        pacf(log_price, capped_pacf_lags(config.acf_lags, log_price.size())), "pacf");
    const std::string acf_returns_csv = correlogram_csv(acf(returns, config.acf_lags), "acf");
    const std::string pacf_returns_csv = correlogram_csv(
        pacf(returns, capped_pacf_lags(config.acf_lags, returns.size())), "pacf");

    std::string vol_csv = "date,realized_abs_return";
    if (garch) vol_csv += ",garch_sigma";
    if (egarch) vol_csv += ",egarch_sigma";
    vol_csv += "\n";
    if (garch_trace || egarch_trace) {
        const VolForecastTrace& lead = garch_trace ? *garch_trace : *egarch_trace;
        for (std::size_t i = 0; i < lead.timestamps.size(); ++i) {
            vol_csv += lead.timestamps[i].to_string() + "," + fmt(lead.realized_abs_return[i]);
            if (garch_trace) vol_csv += "," + fmt(garch_trace->predicted_sigma[i]);
            if (egarch_trace) vol_csv += "," + fmt(egarch_trace->predicted_sigma[i]);
            vol_csv += "\n";
        }
    }

    std::string fc_csv = "date,actual";
    if (arima) fc_csv += ",arima_predicted";
    if (sarima) fc_csv += ",sarima_predicted";
    fc_csv += "\n";
    for (std::size_t i = 0; i < split_lp.test.size(); ++i) {
        fc_csv += split_lp.test.timestamp(i).to_string() + "," + fmt(split_lp.test.value(i));
        if (arima) fc_csv += "," + fmt(trace_of(*arima).predicted[i]);
        if (sarima) fc_csv += "," + fmt(trace_of(*sarima).predicted[i]);
        fc_csv += "\n";
    }

    // ---- write everything, report.json last; unwind cleanly on failure ----
    const fs::path dir(out_dir);
    fs::create_directories(dir);
    std::vector<fs::path> written;
    auto emit = [&](const char* name, const std::string& content) {
        const fs::path p = dir / name;
        {
            std::ofstream f(p, std::ios::binary);
            if (!f) throw DataError("cannot open for writing: " + p.string());
            f << content;
            if (!f) throw DataError("write failed: " + p.string());
        }
        written.push_back(p);
    };
    try {
        emit("price_series.csv", price_csv);
        emit("log_returns.csv", returns_csv);
        emit("histogram.csv", hist_csv);
        emit("qq.csv", qq_csv);
        emit("acf_price.csv", acf_price_csv);
        emit("pacf_price.csv", pacf_price_csv);
        emit("acf_returns.csv", acf_returns_csv);
        emit("pacf_returns.csv", pacf_returns_csv);
        emit("volatility_forecast.csv", vol_csv);
        emit("logprice_forecast.csv", fc_csv);
        emit("report.json", root.dump());
    } catch (...) {
        std::error_code ec;
        for (const fs::path& p : written) fs::remove(p, ec);
        throw;
    }
}

}  // namespace btcts
