#ifndef JTHETA_VERIFY_HPP
#define JTHETA_VERIFY_HPP

// Verification suites that replay each step of the inversion-law proof and
// report one VerificationReport per check.
//
// Suites and their default tolerances:
//   eq2     transformation law on a seeded general-tau grid          1e-10
//   lemma1  phi_direct vs phi_lambert on seeded domain points         1e-10
//   lemma2  closed-form residues vs circle quadrature                 1e-9
//           both forms of the residue total                           1e-12
//           contour integral vs closed residue sum (n <= 8)           1e-8
//           closed residue sum at n = 25 vs phi + pi z^2/y - i pi/2    1e-8
//   lemma3  |zeta F_n -+ 1/8| at edge midpoints                       1e-6
//           residual(n = 20) / residual(n = 2) per edge               1e-3
//   theorem theorem_residual on seeded domain points                  1e-9
//
// A user tolerance replaces every default except the lemma3 decay ratio.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <variant>
#include <vector>

#include <json.hpp>

#include "complex.hpp"
#include "contour.hpp"
#include "errors.hpp"
#include "format.hpp"
#include "siegel.hpp"
#include "theta_core.hpp"

namespace jtheta
{

using ParamValue = std::variant<long, double, std::string>;

struct VerificationReport {
    std::string check_name;
    std::map<std::string, ParamValue> parameters;
    double residual = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    long terms_or_nodes = 0;
    double wall_ms = 0.0;
    std::string error;
};

// One JSON object per line. wall_ms is written as null unless with_timing is
// set, so that identical inputs give byte-identical output.
inline std::string to_json_line(const VerificationReport &r, bool with_timing = false)
{
    auto quote = [](const std::string &s) { return nlohmann::json(s).dump(); };
    std::string out = "{\"check\":" + quote(r.check_name) + ",\"parameters\":{";
    bool first = true;
    for (const auto &[key, value] : r.parameters) {
        if (!first) {
            out += ',';
        }
        first = false;
        out += quote(key) + ':';
        if (const auto *l = std::get_if<long>(&value)) {
            out += std::to_string(*l);
        } else if (const auto *d = std::get_if<double>(&value)) {
            out += json_number(*d);
        } else {
            out += quote(std::get<std::string>(value));
        }
    }
    out += "},\"residual\":" + json_number(r.residual);
    out += ",\"tolerance\":" + json_number(r.tolerance);
    out += std::string(",\"passed\":") + (r.passed ? "true" : "false");
    out += ",\"terms_or_nodes\":" + std::to_string(r.terms_or_nodes);
    out += ",\"wall_ms\":" + (with_timing ? json_number(r.wall_ms) : std::string("null"));
    if (!r.error.empty()) {
        out += ",\"error\":" + quote(r.error);
    }
    out += '}';
    return out;
}

// Deterministic source of uniform doubles; independent of the standard
// library's distribution implementations.
class SeededUniform
{
public:
    explicit SeededUniform(std::uint64_t seed) : m_state(seed) {}

    // splitmix64
    std::uint64_t next_u64() noexcept
    {
        std::uint64_t x = (m_state += 0x9e3779b97f4a7c15ULL);
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    double uniform(double lo, double hi) noexcept
    {
        const double u = double(next_u64() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }

private:
    std::uint64_t m_state;
};

struct GridPoint {
    Complex z;
    Complex tau;
};

// Seeded (z, tau) with |Re z|, |Im z| <= z_extent, |Re tau| <= 1, Im tau in [im_lo, im_hi].
inline std::vector<GridPoint> general_tau_grid(std::uint64_t seed, int count, double im_lo = 0.3, double im_hi = 3.0,
                                               double z_extent = 1.0)
{
    SeededUniform rng(seed);
    std::vector<GridPoint> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        const double zr = rng.uniform(-z_extent, z_extent);
        const double zi = rng.uniform(-z_extent, z_extent);
        const double tr = rng.uniform(-1.0, 1.0);
        const double ti = rng.uniform(im_lo, im_hi);
        out.push_back({Complex{zr, zi}, Complex{tr, ti}});
    }
    return out;
}

// Seeded points with b in [-0.6, -0.05], a in [0.05, 0.95], y in [|b| + 0.1, 3].
inline std::vector<SiegelDomainPoint> siegel_points(std::uint64_t seed, int count)
{
    SeededUniform rng(seed);
    std::vector<SiegelDomainPoint> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        const double a = rng.uniform(0.05, 0.95);
        const double b = rng.uniform(-0.6, -0.05);
        const double y = rng.uniform(-b + 0.1, 3.0);
        out.emplace_back(a, b, y);
    }
    return out;
}

struct VerifyOptions {
    std::uint64_t seed = 42;
    int count = 0;              // 0: suite default
    std::optional<double> tol;  // overrides suite defaults
    int n = 0;                  // 0: suite default
    double a = 0.5;
    double b = -0.25;
    double y = 2.0;
    unsigned threads = 1;
};

namespace detail
{

struct CheckOutcome {
    double residual;
    long terms_or_nodes;
};

struct CheckTask {
    std::string name;
    std::map<std::string, ParamValue> parameters;
    double tolerance;
    std::function<CheckOutcome()> run;
};

inline VerificationReport execute(const CheckTask &task)
{
    VerificationReport r;
    r.check_name = task.name;
    r.parameters = task.parameters;
    r.tolerance = task.tolerance;
    const auto start = std::chrono::steady_clock::now();
    try {
        const auto outcome = task.run();
        r.residual = outcome.residual;
        r.terms_or_nodes = outcome.terms_or_nodes;
    } catch (const std::exception &e) {
        r.residual = std::numeric_limits<double>::infinity();
        r.error = e.what();
    }
    r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    r.passed = r.residual <= r.tolerance;
    return r;
}

// Runs tasks on up to `threads` workers; output order is task order.
inline std::vector<VerificationReport> execute_all(const std::vector<CheckTask> &tasks, unsigned threads)
{
    std::vector<VerificationReport> out(tasks.size());
    if (threads <= 1 || tasks.size() <= 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            out[i] = execute(tasks[i]);
        }
        return out;
    }
    std::vector<std::thread> workers;
    const unsigned used = std::min<unsigned>(threads, unsigned(tasks.size()));
    for (unsigned w = 0; w < used; ++w) {
        workers.emplace_back([&, w] {
            for (std::size_t i = w; i < tasks.size(); i += used) {
                out[i] = execute(tasks[i]);
            }
        });
    }
    for (auto &t : workers) {
        t.join();
    }
    return out;
}

inline std::uint64_t suite_seed(std::uint64_t seed, std::string_view suite)
{
    // FNV-1a of the suite name mixed into the user seed
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : suite) {
        h = (h ^ std::uint64_t(static_cast<unsigned char>(c))) * 0x100000001b3ULL;
    }
    return seed ^ h;
}

inline std::map<std::string, ParamValue> point_params(const SiegelDomainPoint &p)
{
    return {{"a", p.a()}, {"b", p.b()}, {"y", p.y()}, {"n", long(p.n())}};
}

inline std::vector<CheckTask> eq2_tasks(const VerifyOptions &o)
{
    const int count = o.count > 0 ? o.count : 25;
    const double tol = o.tol.value_or(1e-10);
    std::vector<CheckTask> tasks;
    for (const auto &g : general_tau_grid(suite_seed(o.seed, "eq2"), count)) {
        tasks.push_back({"eq2.transformation",
                         {{"z_re", g.z.real()}, {"z_im", g.z.imag()}, {"tau_re", g.tau.real()}, {"tau_im", g.tau.imag()}},
                         tol,
                         [g] {
                             const TauPoint tau(g.tau);
                             const EvalConfig cfg;
                             return CheckOutcome{transformation_residual(g.z, tau, cfg),
                                                 long(theta1_terms(g.z, tau, cfg))};
                         }});
    }
    return tasks;
}

inline std::vector<CheckTask> lemma1_tasks(const VerifyOptions &o)
{
    const int count = o.count > 0 ? o.count : 10;
    const double tol = o.tol.value_or(1e-10);
    std::vector<CheckTask> tasks;
    for (const auto &p : siegel_points(suite_seed(o.seed, "lemma1"), count)) {
        auto params = point_params(p);
        params.erase("n");
        tasks.push_back({"lemma1.phi_equivalence", params, tol, [p] {
                             const SeriesConfig cfg;
                             const auto lam = phi_lambert(p, cfg);
                             return CheckOutcome{std::abs(phi_direct(p, cfg) - lam.value), long(lam.terms)};
                         }});
    }
    return tasks;
}

inline std::vector<CheckTask> lemma2_tasks(const VerifyOptions &o)
{
    const int n = o.n > 0 ? o.n : 5;
    const SiegelDomainPoint p(o.a, o.b, o.y, n);
    const double radius = std::min(1.0, p.y()) / (4.0 * p.big_n());
    QuadratureConfig circle_cfg;
    circle_cfg.tol = 1e-14;
    circle_cfg.max_depth = 16;

    std::vector<CheckTask> tasks;
    auto residue_task = [&](std::string name, std::map<std::string, ParamValue> params, Complex center,
                            std::function<Complex()> closed) {
        tasks.push_back({std::move(name), std::move(params), o.tol.value_or(1e-9), [=] {
                             const auto circle =
                                 residue_by_circle([&](Complex zeta) { return f_n(zeta, p); }, center, radius, circle_cfg);
                             return CheckOutcome{std::abs(circle.value - closed()), circle.nodes};
                         }});
    };

    residue_task("lemma2.res_zero", point_params(p), Complex{0.0, 0.0}, [p] { return res_zero(p); });
    for (int k = -n; k <= n; ++k) {
        if (k == 0) {
            continue;
        }
        auto params = point_params(p);
        params["k"] = long(k);
        residue_task("lemma2.res_ik", params, Complex{0.0, k / p.big_n()}, [p, k] { return res_ik(k, p); });
        residue_task("lemma2.res_ky", params, Complex{k * p.y() / p.big_n(), 0.0}, [p, k] { return res_ky(k, p); });
    }

    tasks.push_back({"lemma2.closed_form_consistency", point_params(p), o.tol.value_or(1e-12), [p] {
                         const auto breakdown = residue_breakdown(p);
                         return CheckOutcome{std::abs(breakdown.total_times_2pi_i - residue_sum_closed(p)),
                                             long(2 * breakdown.at_ik.size() + 1)};
                     }});

    if (n <= 8) {
        tasks.push_back({"lemma2.residue_theorem", point_params(p), o.tol.value_or(1e-8), [p] {
                             QuadratureConfig cfg;
                             cfg.tol = 1e-11;
                             cfg.max_depth = 30;
                             const auto integral = integrate_closed([&](Complex zeta) { return f_n(zeta, p); },
                                                                    siegel_contour(p.y()), cfg);
                             return CheckOutcome{std::abs(integral.value - residue_sum_closed(p)), integral.nodes};
                         }});
    }

    const SiegelDomainPoint p25 = p.with_n(25);
    tasks.push_back({"lemma2.residue_sum_limit", point_params(p25), o.tol.value_or(1e-8), [p25] {
                         const auto phi = phi_lambert(p25, SeriesConfig{});
                         const Complex z = p25.z();
                         const Complex target = phi.value + pi * z * z / p25.y() - I * (pi / 2.0);
                         return CheckOutcome{std::abs(residue_sum_closed(p25) - target), long(p25.n())};
                     }});
    return tasks;
}

inline std::vector<CheckTask> lemma3_tasks(const VerifyOptions &o)
{
    const int n = o.n > 0 ? o.n : 10;
    const SiegelDomainPoint p(o.a, o.b, o.y, n);
    std::vector<CheckTask> tasks;
    for (Edge e : all_edges) {
        auto params = point_params(p);
        params["edge"] = std::string(edge_name(e));
        params["t"] = 0.5;
        tasks.push_back({"lemma3.edge_limit", params, o.tol.value_or(1e-6), [p, e] {
                             return CheckOutcome{std::abs(edge_limit_value(e, 0.5, p) - edge_limit_target(e)),
                                                 long(p.n())};
                         }});
    }
    for (Edge e : all_edges) {
        auto params = point_params(p);
        params.erase("n");
        params["edge"] = std::string(edge_name(e));
        params["t"] = 0.5;
        params["n_coarse"] = 2L;
        params["n_fine"] = 20L;
        tasks.push_back({"lemma3.decay", params, 1e-3, [p, e] {
                             const double coarse = std::abs(edge_limit_value(e, 0.5, p.with_n(2)) - edge_limit_target(e));
                             const double fine = std::abs(edge_limit_value(e, 0.5, p.with_n(20)) - edge_limit_target(e));
                             return CheckOutcome{fine / coarse, 20L};
                         }});
    }
    return tasks;
}

inline std::vector<CheckTask> theorem_tasks(const VerifyOptions &o)
{
    const int count = o.count > 0 ? o.count : 10;
    const double tol = o.tol.value_or(1e-9);
    std::vector<CheckTask> tasks;
    for (const auto &p : siegel_points(suite_seed(o.seed, "theorem"), count)) {
        auto params = point_params(p);
        params.erase("n");
        tasks.push_back({"theorem.identity", params, tol, [p] {
                             const SeriesConfig cfg;
                             return CheckOutcome{theorem_residual(p, cfg), long(phi_lambert(p, cfg).terms)};
                         }});
    }
    return tasks;
}

} // namespace detail

inline constexpr std::string_view suite_names[] = {"eq2", "lemma1", "lemma2", "lemma3", "theorem", "all"};

inline bool is_suite_name(std::string_view name)
{
    for (auto s : suite_names) {
        if (s == name) {
            return true;
        }
    }
    return false;
}

inline std::vector<VerificationReport> run_suite(std::string_view suite, const VerifyOptions &opts = {})
{
    std::vector<detail::CheckTask> tasks;
    auto append = [&](std::vector<detail::CheckTask> more) {
        for (auto &t : more) {
            tasks.push_back(std::move(t));
        }
    };
    if (suite == "eq2" || suite == "all") {
        append(detail::eq2_tasks(opts));
    }
    if (suite == "lemma1" || suite == "all") {
        append(detail::lemma1_tasks(opts));
    }
    if (suite == "lemma2" || suite == "all") {
        append(detail::lemma2_tasks(opts));
    }
    if (suite == "lemma3" || suite == "all") {
        append(detail::lemma3_tasks(opts));
    }
    if (suite == "theorem" || suite == "all") {
        append(detail::theorem_tasks(opts));
    }
    if (!is_suite_name(suite)) {
        throw DomainError("unknown suite '" + std::string(suite) + "'");
    }
    return detail::execute_all(tasks, opts.threads);
}

} // namespace jtheta

#endif
