#ifndef JTHETA_CONTOUR_HPP
#define JTHETA_CONTOUR_HPP

// Complex line integrals over polygonal paths and residues by circle quadrature.
//
// Segments use globally adaptive Gauss-Kronrod (7/15) panels: the panel with the
// largest |K15 - G7| is bisected until the summed estimate drops below tol.
// Circles use the periodic trapezoid rule, which converges geometrically for
// integrands analytic in an annulus around the circle; the node count doubles
// until two successive estimates agree to tol.

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <queue>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "complex.hpp"
#include "errors.hpp"

namespace jtheta
{

template <class F>
concept ComplexIntegrand = std::invocable<F &, Complex> && std::convertible_to<std::invoke_result_t<F &, Complex>, Complex>;

struct QuadratureConfig {
    double tol = 1e-12;
    int max_depth = 20;
    int nodes_per_panel = 16;

    void validate() const
    {
        if (!(tol > 0.0)) {
            throw DomainError("QuadratureConfig: tol must be positive");
        }
        if (max_depth < 1) {
            throw DomainError("QuadratureConfig: max_depth must be >= 1");
        }
        if (nodes_per_panel < 1) {
            throw DomainError("QuadratureConfig: nodes_per_panel must be >= 1");
        }
    }
};

struct QuadratureResult {
    Complex value;
    double err_est = 0.0;
    long nodes = 0;
};

// Ordered polygonal path. Consecutive vertices are distinct (for a closed path
// this includes the wrap-around edge). Orientation is reported, not enforced,
// so that reversed() is representable.
class ContourPath
{
public:
    ContourPath(std::vector<Complex> vertices, bool closed) : m_vertices(std::move(vertices)), m_closed(closed)
    {
        if (m_vertices.size() < 2) {
            throw DomainError("ContourPath: need at least two vertices");
        }
        for (const auto &v : m_vertices) {
            if (!is_finite(v)) {
                throw DomainError("ContourPath: vertex is not finite");
            }
        }
        for (std::size_t i = 0; i < edge_count(); ++i) {
            const auto [a, b] = edge(i);
            if (a == b) {
                throw DomainError("ContourPath: consecutive vertices must be distinct");
            }
        }
    }

    const std::vector<Complex> &vertices() const noexcept
    {
        return m_vertices;
    }
    bool closed() const noexcept
    {
        return m_closed;
    }
    std::size_t edge_count() const noexcept
    {
        return m_closed ? m_vertices.size() : m_vertices.size() - 1;
    }
    std::pair<Complex, Complex> edge(std::size_t i) const
    {
        return {m_vertices[i], m_vertices[(i + 1) % m_vertices.size()]};
    }

    // Shoelace area; positive for counterclockwise traversal.
    double signed_area() const noexcept
    {
        double twice = 0.0;
        const std::size_t n = m_vertices.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Complex a = m_vertices[i];
            const Complex b = m_vertices[(i + 1) % n];
            twice += a.real() * b.imag() - b.real() * a.imag();
        }
        return 0.5 * twice;
    }

    bool is_counterclockwise() const noexcept
    {
        return m_closed && signed_area() > 0.0;
    }

    ContourPath reversed() const
    {
        return ContourPath(std::vector<Complex>(m_vertices.rbegin(), m_vertices.rend()), m_closed);
    }

private:
    std::vector<Complex> m_vertices;
    bool m_closed;
};

// The rhombus -i -> y -> i -> -y -> -i, positively oriented.
inline ContourPath siegel_contour(double y)
{
    if (!(y > 0.0) || !std::isfinite(y)) {
        throw DomainError("siegel_contour: y must be positive");
    }
    return ContourPath({Complex{0.0, -1.0}, Complex{y, 0.0}, Complex{0.0, 1.0}, Complex{-y, 0.0}}, true);
}

namespace detail
{

struct Panel {
    Complex start;
    Complex end;
    Complex value;
    double err;
    int depth;

    bool operator<(const Panel &other) const noexcept
    {
        return err < other.err;
    }
};

template <class F>
Panel gauss_kronrod_15(F &f, Complex a, Complex b, int depth)
{
    static constexpr std::array<double, 8> xgk = {
        0.991455371120812639206854697526329, 0.949107912342758524526189684047851, 0.864864423359769072789712788640926,
        0.741531185599394439863864773280788, 0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
        0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
    static constexpr std::array<double, 8> wgk = {
        0.022935322010529224963732008058970, 0.063092092629978553290700663189204, 0.104790010322250183839876322541518,
        0.140653259715525918745189590510238, 0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
        0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
    // Gauss weights for xgk[1], xgk[3], xgk[5], xgk[7].
    static constexpr std::array<double, 4> wg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                                 0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

    const Complex mid = 0.5 * (a + b);
    const Complex half = 0.5 * (b - a);
    const Complex fc = f(mid);
    Complex kronrod = wgk[7] * fc;
    Complex gauss = wg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const Complex f1 = f(mid - half * xgk[j]);
        const Complex f2 = f(mid + half * xgk[j]);
        kronrod += wgk[j] * (f1 + f2);
        if (j % 2 == 1) {
            gauss += wg[j / 2] * (f1 + f2);
        }
    }
    kronrod *= half;
    gauss *= half;
    return {a, b, kronrod, std::abs(kronrod - gauss), depth};
}

} // namespace detail

// Integral of f along the segment start -> end.
template <ComplexIntegrand F>
QuadratureResult integrate_edge(F &&f, Complex start, Complex end, const QuadratureConfig &cfg = {})
{
    cfg.validate();
    std::priority_queue<detail::Panel> open;
    std::vector<detail::Panel> settled;
    open.push(detail::gauss_kronrod_15(f, start, end, 0));
    long nodes = 15;
    double err = open.top().err;

    while (err > cfg.tol && !open.empty()) {
        detail::Panel worst = open.top();
        open.pop();
        if (worst.depth >= cfg.max_depth) {
            settled.push_back(worst);
            continue;
        }
        const Complex mid = 0.5 * (worst.start + worst.end);
        auto left = detail::gauss_kronrod_15(f, worst.start, mid, worst.depth + 1);
        auto right = detail::gauss_kronrod_15(f, mid, worst.end, worst.depth + 1);
        nodes += 30;
        err += left.err + right.err - worst.err;
        open.push(left);
        open.push(right);
    }

    // Sum in a fixed order (by start point along the segment) for reproducibility.
    while (!open.empty()) {
        settled.push_back(open.top());
        open.pop();
    }
    const Complex dir = end - start;
    std::sort(settled.begin(), settled.end(), [&](const auto &l, const auto &r) {
        return std::real((l.start - start) * std::conj(dir)) < std::real((r.start - start) * std::conj(dir));
    });
    Complex value{0.0, 0.0};
    double total_err = 0.0;
    for (const auto &p : settled) {
        value += p.value;
        total_err += p.err;
    }
    if (!is_finite(value)) {
        throw NonFiniteError("integrate_edge: integral is not finite");
    }
    if (total_err > cfg.tol) {
        throw AccuracyError("integrate_edge: tolerance not reached (err_est " + std::to_string(total_err) + ")",
                            total_err);
    }
    return {value, total_err, nodes};
}

// Sum of the edge integrals of a closed path.
template <ComplexIntegrand F>
QuadratureResult integrate_closed(F &&f, const ContourPath &path, const QuadratureConfig &cfg = {})
{
    if (!path.closed()) {
        throw DomainError("integrate_closed: path is not closed");
    }
    QuadratureResult total{Complex{0.0, 0.0}, 0.0, 0};
    for (std::size_t i = 0; i < path.edge_count(); ++i) {
        const auto [a, b] = path.edge(i);
        const auto r = integrate_edge(f, a, b, cfg);
        total.value += r.value;
        total.err_est += r.err_est;
        total.nodes += r.nodes;
    }
    return total;
}

// (1 / 2 pi i) times the integral of f over |zeta - center| = radius.
// The caller keeps every other singularity outside the disc.
template <ComplexIntegrand F>
QuadratureResult residue_by_circle(F &&f, Complex center, double radius, const QuadratureConfig &cfg = {})
{
    cfg.validate();
    if (!(radius > 0.0) || !std::isfinite(radius)) {
        throw DomainError("residue_by_circle: radius must be positive");
    }
    // (1/2 pi i) int f dzeta = mean over nodes of f(c + r e^{it}) r e^{it}
    auto sample = [&](long j, long m) {
        const double theta = 2.0 * pi * double(j) / double(m);
        const Complex offset = std::polar(radius, theta);
        return Complex(f(center + offset)) * offset;
    };

    long m = cfg.nodes_per_panel;
    Complex sum{0.0, 0.0};
    for (long j = 0; j < m; ++j) {
        sum += sample(j, m);
    }
    Complex estimate = sum / double(m);
    double diff = 0.0;
    for (int depth = 1; depth <= cfg.max_depth; ++depth) {
        // Refinement reuses the previous nodes; only odd indices are new.
        const long fine = 2 * m;
        for (long j = 1; j < fine; j += 2) {
            sum += sample(j, fine);
        }
        m = fine;
        const Complex refined = sum / double(m);
        diff = std::abs(refined - estimate);
        estimate = refined;
        if (diff <= cfg.tol) {
            return {require_finite(estimate, "residue_by_circle"), diff, m};
        }
    }
    throw AccuracyError("residue_by_circle: trapezoid rule did not converge", diff);
}

} // namespace jtheta

#endif
