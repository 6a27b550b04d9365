#include "btcts/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "btcts/errors.hpp"

namespace btcts {

namespace {

void check_trace(const ForecastTrace& trace) {
    if (trace.actual.empty()) throw EmptyTrace();
    if (trace.actual.size() != trace.predicted.size())
        throw DimensionMismatch("forecast trace actual/predicted lengths differ");
}

}  // namespace

double mae(const ForecastTrace& trace) {
    check_trace(trace);
    double sum = 0.0;
    for (std::size_t i = 0; i < trace.actual.size(); ++i)
        sum += std::abs(trace.actual[i] - trace.predicted[i]);
    return sum / static_cast<double>(trace.actual.size());
}

double rmse(const ForecastTrace& trace) {
    check_trace(trace);
    double sum = 0.0;
    for (std::size_t i = 0; i < trace.actual.size(); ++i) {
        const double e = trace.actual[i] - trace.predicted[i];
        sum += e * e;
    }
    return std::sqrt(sum / static_cast<double>(trace.actual.size()));
}

double aic(double loglik, std::size_t k) { return 2.0 * static_cast<double>(k) - 2.0 * loglik; }

double bic(double loglik, std::size_t k, std::size_t n) {
    if (n == 0) throw ConfigError("bic needs n >= 1");
    return static_cast<double>(k) * std::log(static_cast<double>(n)) - 2.0 * loglik;
}

EvaluationReport compare_models(const std::vector<ModelResult>& models) {
    EvaluationReport report;
    if (models.empty()) return report;

    for (const ModelResult& m : models) {
        if (!(m.fingerprint == models.front().fingerprint))
            throw InconsistentSplit("models were evaluated on different dataset splits");
    }
    report.fingerprint = models.front().fingerprint;

    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (const ModelResult& m : models) {
        ModelEntry e;
        e.name = m.name;
        e.group = m.group;
        e.scheme = m.scheme;
        e.mae = m.trace ? mae(*m.trace) : nan;
        e.rmse = m.trace ? rmse(*m.trace) : nan;
        e.loglik = m.loglik;
        e.k = m.k;
        e.n_obs = m.n_obs;
        e.aic = aic(m.loglik, m.k);
        e.bic = bic(m.loglik, m.k, m.n_obs);
        e.converged = m.converged;
        report.models.push_back(std::move(e));
    }
    std::sort(report.models.begin(), report.models.end(),
              [](const ModelEntry& a, const ModelEntry& b) { return a.name < b.name; });

    // Best-model flags: forecast errors rank the price group, information
    // criteria the volatility group. Flags appear only when a metric has
    // at least two contenders; exact ties list every winner.
    auto flag_metric = [&](const std::string& metric, const std::string& group,
                           auto value_of) {
        std::vector<const ModelEntry*> contenders;
        for (const ModelEntry& e : report.models)
            if (e.group == group && std::isfinite(value_of(e))) contenders.push_back(&e);
        if (contenders.size() < 2) return;
        double best = std::numeric_limits<double>::infinity();
        for (const ModelEntry* e : contenders) best = std::min(best, value_of(*e));
        MetricFlag flag;
        flag.metric = metric;
        for (const ModelEntry* e : contenders)
            if (value_of(*e) == best) flag.winners.push_back(e->name);
        flag.tie = flag.winners.size() > 1;
        report.best.push_back(std::move(flag));
    };
    flag_metric("mae", "price", [](const ModelEntry& e) { return e.mae; });
    flag_metric("rmse", "price", [](const ModelEntry& e) { return e.rmse; });
    flag_metric("aic", "volatility", [](const ModelEntry& e) { return e.aic; });
    flag_metric("bic", "volatility", [](const ModelEntry& e) { return e.bic; });
    return report;
}

}  // namespace btcts
