#ifndef JTHETA_SWEEP_HPP
#define JTHETA_SWEEP_HPP

// Convergence sweeps rendered as CSV or JSON tables.
//
//   edge_limit      n, E1..E4       |zeta F_n(zeta) -+ 1/8| at the edge points t
//   reduction_gain  im_tau, ...     product lengths with and without one inversion at tau = i*im_tau
//   lambert_tail    y, ...          Lambert truncation length and its a-priori bound at z = a + ib

#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "complex.hpp"
#include "format.hpp"
#include "siegel.hpp"
#include "theta_core.hpp"

namespace jtheta
{

using Cell = std::variant<long, double>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

// `points` samples from..to inclusive; empty when points < 1 or from > to.
inline std::vector<double> linear_range(double from, double to, int points)
{
    std::vector<double> out;
    if (points < 1 || from > to) {
        return out;
    }
    if (points == 1) {
        return {from};
    }
    for (int i = 0; i < points; ++i) {
        out.push_back(from + (to - from) * double(i) / double(points - 1));
    }
    return out;
}

inline Table sweep_edge_limit(int from, int to, int step, double a, double b, double y, double t)
{
    if (step < 1) {
        throw DomainError("sweep edge_limit: step must be >= 1");
    }
    if (from < 1 && from <= to) {
        throw DomainError("sweep edge_limit: n must be >= 1");
    }
    Table table{{"n", "E1", "E2", "E3", "E4"}, {}};
    for (int n = from; n <= to; n += step) {
        const SiegelDomainPoint p(a, b, y, n);
        std::vector<Cell> row{long(n)};
        for (Edge e : all_edges) {
            row.emplace_back(std::abs(edge_limit_value(e, t, p) - edge_limit_target(e)));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

inline Table sweep_reduction_gain(double from, double to, int points, Complex z, double eps)
{
    Table table{{"im_tau", "terms_direct", "terms_reduced", "gain", "abs_diff"}, {}};
    for (double v : linear_range(from, to, points)) {
        const TauPoint tau(Complex{0.0, v});
        EvalConfig cfg;
        cfg.eps = eps;
        const auto direct = theta1_reduced(z, tau, cfg);
        cfg.reduction_enabled = true;
        const auto reduced = theta1_reduced(z, tau, cfg);
        table.rows.push_back({v, long(direct.terms_used), long(reduced.terms_used),
                              double(direct.terms_used) / double(reduced.terms_used),
                              std::abs(direct.value - reduced.value)});
    }
    return table;
}

inline Table sweep_lambert_tail(double from, double to, int points, double a, double b, double eps)
{
    Table table{{"y", "terms", "tail_bound", "rel_error"}, {}};
    SeriesConfig cfg;
    cfg.eps = eps;
    for (double y : linear_range(from, to, points)) {
        const SiegelDomainPoint p(a, b, y);
        const auto lam = log_theta1_lambert(p, cfg);
        const double r = detail::lambert_rate(p.z(), y);
        const int m = lam.terms;
        const double bound = 3.0 * std::exp(-2.0 * pi * r * (m + 1)) /
                             ((m + 1) * -std::expm1(-2.0 * pi * r) * -std::expm1(-2.0 * pi * y));
        const Complex reference = theta1(p.z(), TauPoint(Complex{0.0, y}));
        const double rel = std::abs(std::exp(lam.value) - reference) / std::abs(reference);
        table.rows.push_back({y, long(m), bound, rel});
    }
    return table;
}

inline std::string cell_text(const Cell &c)
{
    if (const auto *l = std::get_if<long>(&c)) {
        return std::to_string(*l);
    }
    return json_number(std::get<double>(c));
}

inline std::string to_csv(const Table &t)
{
    std::string out;
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        out += (i ? "," : "") + t.columns[i];
    }
    out += '\n';
    for (const auto &row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out += (i ? "," : "") + cell_text(row[i]);
        }
        out += '\n';
    }
    return out;
}

// {"columns":[...],"rows":[[...],...]}
inline std::string to_json(const Table &t)
{
    std::string out = "{\"columns\":[";
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        out += (i ? "," : "") + nlohmann::json(t.columns[i]).dump();
    }
    out += "],\"rows\":[";
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        out += r ? ",[" : "[";
        for (std::size_t i = 0; i < t.rows[r].size(); ++i) {
            out += (i ? "," : "") + cell_text(t.rows[r][i]);
        }
        out += ']';
    }
    out += "]}\n";
    return out;
}

} // namespace jtheta

#endif
