// Command-line front end: ingest | diagnose | fit | pipeline.
//
// Exit codes: 0 success, 2 configuration error, 3 data error,
// 4 numerical error, 1 anything else.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "btcts/errors.hpp"
#include "btcts/evaluate.hpp"
#include "btcts/pipeline.hpp"
#include "btcts/volatility.hpp"

namespace {

using namespace btcts;

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(tok);
    return out;
}

std::vector<unsigned> parse_uints(const std::string& s, std::size_t want, const char* flag) {
    const std::vector<std::string> parts = split_commas(s);
    if (parts.size() != want)
        throw ConfigError(std::string(flag) + " expects " + std::to_string(want) +
                          " comma-separated integers, got '" + s + "'");
    std::vector<unsigned> out;
    for (const std::string& p : parts) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(p.c_str(), &end, 10);
        if (p.empty() || end == nullptr || *end != '\0')
            throw ConfigError(std::string(flag) + ": '" + p + "' is not a non-negative integer");
        out.push_back(static_cast<unsigned>(v));
    }
    return out;
}

// "auto" keeps whichever of the three blockchain covariates the header
// actually has; an explicit list is taken literally; "none"/"" keeps nothing.
std::vector<std::string> resolve_extra_columns(const std::string& spec, const std::string& path) {
    if (spec.empty() || spec == "none") return {};
    if (spec != "auto") return split_commas(spec);
    std::ifstream f(path);
    if (!f) return {};  // let ingest report the missing file
    std::string line;
    if (!std::getline(f, line)) return {};
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::vector<std::string> header = split_commas(line);
    std::vector<std::string> out;
    for (const char* want : {"difficulty", "hashrate", "transactionfeesUSD"})
        for (const std::string& h : header)
            if (h == want) {
                out.emplace_back(want);
                break;
            }
    return out;
}

ModelSelection parse_model(const std::string& s) {
    if (s == "arima") return ModelSelection::arima;
    if (s == "sarima") return ModelSelection::sarima;
    if (s == "garch") return ModelSelection::garch;
    if (s == "egarch") return ModelSelection::egarch;
    if (s == "all") return ModelSelection::all;
    throw ConfigError("--model must be one of arima|sarima|garch|egarch|all, got '" + s + "'");
}

ForecastScheme parse_scheme(const std::string& s) {
    if (s == "rolling") return ForecastScheme::rolling_one_step;
    if (s == "static") return ForecastScheme::static_multi_step;
    throw ConfigError("--scheme must be rolling or static, got '" + s + "'");
}

struct Options {
    std::string input;
    std::string date_col = "date";
    std::string price_col = "priceUSD";
    double min_price = 100.0;
    std::string extra_cols = "auto";
    double split_fraction = 0.9;
    std::string model = "all";
    std::string order = "1,1,1";
    std::string seasonal = "1,1,1,7";
    std::string scheme = "rolling";
    std::string out_dir = "out";
    unsigned long long seed = 42;
};

IngestConfig make_ingest_config(const Options& o) {
    IngestConfig cfg;
    cfg.input_path = o.input;
    cfg.date_column = o.date_col;
    cfg.price_column = o.price_col;
    cfg.min_price = o.min_price;
    cfg.extra_columns = resolve_extra_columns(o.extra_cols, o.input);
    return cfg;
}

PipelineConfig make_pipeline_config(const Options& o) {
    PipelineConfig cfg;
    cfg.split_fraction = o.split_fraction;
    const std::vector<unsigned> ord = parse_uints(o.order, 3, "--order");
    const std::vector<unsigned> sea = parse_uints(o.seasonal, 4, "--seasonal");
    cfg.arima_order = SarimaSpec{ord[0], ord[1], ord[2], 0, 0, 0, 1};
    cfg.sarima_order = SarimaSpec{ord[0], ord[1], ord[2], sea[0], sea[1], sea[2], sea[3]};
    cfg.forecast_scheme = parse_scheme(o.scheme);
    cfg.models = parse_model(o.model);
    cfg.seed = o.seed;
    return cfg;
}

Json sarima_fit_json(const SarimaFit& fit, const std::string& label, std::size_t n_obs) {
    Json j = Json::object();
    j.set("name", Json::string(label));
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
    j.set("loglik", Json::number(fit.loglik));
    const std::size_t k = fit.spec.n_coefficients() + 1;
    j.set("k", Json::integer(static_cast<long long>(k)));
    j.set("n_obs", Json::integer(static_cast<long long>(n_obs)));
    j.set("aic", Json::number(aic(fit.loglik, k)));
    j.set("bic", Json::number(bic(fit.loglik, k, n_obs)));
    j.set("converged", Json::boolean(fit.converged));
    return j;
}

std::string spec_label(const SarimaSpec& s) {
    std::string base = "ARIMA(" + std::to_string(s.p) + "," + std::to_string(s.d) + "," +
                       std::to_string(s.q) + ")";
    if (s.P + s.D + s.Q == 0 && s.s == 1) return base;
    return "S" + base + "(" + std::to_string(s.P) + "," + std::to_string(s.D) + "," +
           std::to_string(s.Q) + "," + std::to_string(s.s) + ")";
}

int cmd_ingest(const Options& o) {
    const IngestResult r = ingest(make_ingest_config(o));
    const TimeSeries rets = log_returns(r.prices);
    const double mean_ret = std::accumulate(rets.values().begin(), rets.values().end(), 0.0) /
                            static_cast<double>(rets.size());
    Json j = Json::object();
    j.set("rows_before_filter", Json::integer(static_cast<long long>(r.rows_before_filter)));
    j.set("rows_after_filter", Json::integer(static_cast<long long>(r.rows_after_filter)));
    j.set("first_date", Json::string(r.prices.timestamp(0).to_string()));
    j.set("last_date", Json::string(r.prices.timestamp(r.prices.size() - 1).to_string()));
    j.set("min_price", Json::number(r.min_price));
    j.set("n_returns", Json::integer(static_cast<long long>(rets.size())));
    j.set("mean_log_return", Json::number(mean_ret));
    std::cout << j.dump();
    return 0;
}

int cmd_diagnose(const Options& o) {
    std::cout << diagnose(make_ingest_config(o), make_pipeline_config(o)).dump();
    return 0;
}

int cmd_fit(const Options& o) {
    const PipelineConfig cfg = make_pipeline_config(o);
    const IngestResult data = ingest(make_ingest_config(o));
    const ModelSelection sel = cfg.models;

    Json out = Json::array();
    if (sel == ModelSelection::all || sel == ModelSelection::arima ||
        sel == ModelSelection::sarima) {
        const SplitPair sp = split(log_transform(data.prices), cfg.split_fraction);
        if (sel == ModelSelection::all || sel == ModelSelection::arima) {
            const SarimaFit fit = fit_sarima(sp.train, cfg.arima_order);
            out.push(sarima_fit_json(fit, spec_label(cfg.arima_order), fit.n_effective));
        }
        if (sel == ModelSelection::all || sel == ModelSelection::sarima) {
            const SarimaFit fit = fit_sarima(sp.train, cfg.sarima_order);
            out.push(sarima_fit_json(fit, spec_label(cfg.sarima_order), fit.n_effective));
        }
    }
    if (sel == ModelSelection::all || sel == ModelSelection::garch ||
        sel == ModelSelection::egarch) {
        const SplitPair sp = split(log_returns(data.prices), cfg.split_fraction);
        const std::size_t n = sp.train.size();
        if (sel == ModelSelection::all || sel == ModelSelection::garch) {
            const GarchFit f = fit_garch(sp.train);
            Json j = Json::object();
            j.set("name", Json::string("GARCH(1,1)"));
            j.set("mu", Json::number(f.mu));
            j.set("omega", Json::number(f.omega));
            j.set("alpha1", Json::number(f.alpha1));
            j.set("beta1", Json::number(f.beta1));
            j.set("persistence", Json::number(f.persistence));
            j.set("loglik", Json::number(f.loglik));
            j.set("aic", Json::number(aic(f.loglik, 4)));
            j.set("bic", Json::number(bic(f.loglik, 4, n)));
            j.set("converged", Json::boolean(f.converged));
            out.push(std::move(j));
        }
        if (sel == ModelSelection::all || sel == ModelSelection::egarch) {
            const EgarchFit f = fit_egarch(sp.train);
            Json j = Json::object();
            j.set("name", Json::string("EGARCH(1,1)"));
            j.set("mu", Json::number(f.mu));
            j.set("omega", Json::number(f.omega));
            j.set("alpha1", Json::number(f.alpha1));
            j.set("beta1", Json::number(f.beta1));
            j.set("gamma1", Json::number(f.gamma1));
            j.set("loglik", Json::number(f.loglik));
            j.set("aic", Json::number(aic(f.loglik, 5)));
            j.set("bic", Json::number(bic(f.loglik, 5, n)));
            j.set("converged", Json::boolean(f.converged));
            out.push(std::move(j));
        }
    }
    std::cout << out.dump();
    return 0;
}

int cmd_pipeline(const Options& o) {
    run_pipeline(make_ingest_config(o), make_pipeline_config(o), o.out_dir);
    std::cout << "wrote " << o.out_dir << "/report.json\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"classical time-series toolkit for daily price data"};
    app.require_subcommand(1);

    Options o;
    auto add_data_opts = [&](CLI::App* c) {
        c->add_option("--input", o.input, "input CSV path")->required();
        c->add_option("--date-col", o.date_col, "date column name");
        c->add_option("--price-col", o.price_col, "price column name");
        c->add_option("--min-price", o.min_price, "drop rows with price below this");
        c->add_option("--extra-cols", o.extra_cols,
                      "extra numeric columns: auto | none | comma-separated list");
    };
    auto add_model_opts = [&](CLI::App* c) {
        c->add_option("--split", o.split_fraction, "train fraction (0,1)");
        c->add_option("--model", o.model, "arima|sarima|garch|egarch|all");
        c->add_option("--order", o.order, "non-seasonal order p,d,q");
        c->add_option("--seasonal", o.seasonal, "seasonal order P,D,Q,s");
        c->add_option("--scheme", o.scheme, "forecast scheme: rolling|static");
        c->add_option("--seed", o.seed, "seed recorded in the report");
    };

    CLI::App* ing = app.add_subcommand("ingest", "load, filter and summarize the CSV");
    add_data_opts(ing);
    CLI::App* dia = app.add_subcommand("diagnose", "stationarity and residual diagnostics");
    add_data_opts(dia);
    add_model_opts(dia);
    CLI::App* fit = app.add_subcommand("fit", "fit the selected model(s) on the training split");
    add_data_opts(fit);
    add_model_opts(fit);
    CLI::App* pipe = app.add_subcommand("pipeline", "full run: diagnostics, fits, forecasts");
    add_data_opts(pipe);
    add_model_opts(pipe);
    pipe->add_option("--out", o.out_dir, "output directory for report.json and plot CSVs");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (ing->parsed()) return cmd_ingest(o);
        if (dia->parsed()) return cmd_diagnose(o);
        if (fit->parsed()) return cmd_fit(o);
        return cmd_pipeline(o);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 3;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
