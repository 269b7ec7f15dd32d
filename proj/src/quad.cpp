#include "weakkam/quad.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "weakkam/errors.hpp"
#include "weakkam/potential.hpp"

namespace weakkam {
namespace {

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
using Gauss = boost::math::quadrature::gauss<double, 7>;

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

double checked(const Integrand& g, double x) {
    const double v = g(x);
    if (!std::isfinite(v)) throw DomainError("quadrature: integrand is not finite at x = " + std::to_string(x));
    return v;
}

// One 15-point Kronrod panel with the embedded 7-point Gauss estimate and the
// QUADPACK error heuristic.
Panel kronrod_panel(const Integrand& g, double a, double b) {
    static const auto& xk = Kronrod::abscissa();
    static const auto& wk = Kronrod::weights();
    static const auto& wg = Gauss::weights();
    constexpr double eps = std::numeric_limits<double>::epsilon();
    constexpr double uflow = std::numeric_limits<double>::min();

    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = checked(g, centre);
    double resk = wk[0] * fc;
    double resg = wg[0] * fc;
    double resabs = std::abs(resk);
    double f1[8], f2[8];
    for (std::size_t j = 1; j < xk.size(); ++j) {
        const double dx = half * xk[j];
        f1[j] = checked(g, centre - dx);
        f2[j] = checked(g, centre + dx);
        resk += wk[j] * (f1[j] + f2[j]);
        resabs += wk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
        if (j % 2 == 0) resg += wg[j / 2] * (f1[j] + f2[j]);
    }
    const double mean = 0.5 * resk;
    double resasc = wk[0] * std::abs(fc - mean);
    for (std::size_t j = 1; j < xk.size(); ++j) resasc += wk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));

    const double ah = std::abs(half);
    resabs *= ah;
    resasc *= ah;
    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (resabs > uflow / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
    return {a, b, resk * half, err};
}

std::vector<double> interior_points(double a, double b, std::span<const double> pts) {
    std::vector<double> out;
    for (double p : pts)
        if (p > a && p < b) out.push_back(p);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

void QuadConfig::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw DomainError("QuadConfig: tolerances must be positive");
    if (max_subdivisions < 1) throw DomainError("QuadConfig: max_subdivisions must be >= 1");
}

QuadConfig QuadConfig::tightened(double rel, double abs) const {
    QuadConfig out = *this;
    out.rel_tol = std::min(rel_tol, rel);
    out.abs_tol = std::min(abs_tol, abs);
    return out;
}

void RootConfig::validate() const {
    if (!(tol > 0.0)) throw DomainError("RootConfig: tol must be positive");
    if (max_iter < 1) throw DomainError("RootConfig: max_iter must be >= 1");
}

namespace {

// A piece of the integral: int_a^b g.
struct Segment {
    Integrand g;
    double a, b;
};

Segment from_singular(const Integrand& g, double from, double to) {
    if (to >= from) return {[g, from](double t) { return g(from + t * t) * 2.0 * t; }, 0.0, std::sqrt(to - from)};
    return {[g, from](double t) { return -g(from - t * t) * 2.0 * t; }, 0.0, std::sqrt(from - to)};
}

// Sum of the segment integrals under one global error budget: the panel
// with the largest error estimate, in whichever segment, is bisected next.
QuadResult adaptive_sum(const std::vector<Segment>& segments, const QuadConfig& cfg) {
    cfg.validate();
    struct Item {
        Panel panel;
        std::size_t segment;
        bool operator<(const Item& o) const { return panel < o.panel; }
    };
    std::priority_queue<Item> active;
    std::vector<Item> frozen;  // panels too narrow to bisect further
    double total = 0.0, total_err = 0.0;
    for (std::size_t i = 0; i < segments.size(); ++i) {
        const auto& s = segments[i];
        if (s.a == s.b) continue;
        Item it{kronrod_panel(s.g, s.a, s.b), i};
        total += it.panel.value;
        total_err += it.panel.error;
        active.push(std::move(it));
    }
    int subdivisions = 0;
    auto tolerance = [&] { return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total)); };

    while (total_err > tolerance() && !active.empty()) {
        if (subdivisions >= cfg.max_subdivisions) {
            const auto& worst = active.top().panel;
            throw AccuracyError("quadrature: subdivision budget of " + std::to_string(cfg.max_subdivisions) +
                                    " exhausted; worst panel [" + std::to_string(worst.a) + ", " +
                                    std::to_string(worst.b) + "]",
                                total, total_err);
        }
        Item it = active.top();
        active.pop();
        const Panel& p = it.panel;
        const double mid = 0.5 * (p.a + p.b);
        if (!(mid > p.a && mid < p.b) || (p.b - p.a) < 1e-15 * std::max(1.0, std::abs(mid))) {
            frozen.push_back(it);
            continue;
        }
        const auto& g = segments[it.segment].g;
        Item left{kronrod_panel(g, p.a, mid), it.segment};
        Item right{kronrod_panel(g, mid, p.b), it.segment};
        total += left.panel.value + right.panel.value - p.value;
        total_err += left.panel.error + right.panel.error - p.error;
        active.push(left);
        active.push(right);
        ++subdivisions;
    }

    // Re-sum to shed drift from the running updates.
    double value = 0.0, error = 0.0;
    for (const auto& it : frozen) value += it.panel.value, error += it.panel.error;
    while (!active.empty()) {
        value += active.top().panel.value;
        error += active.top().panel.error;
        active.pop();
    }
    if (error > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value)) && !frozen.empty()) {
        throw AccuracyError("quadrature: panels reached machine resolution before tolerance", value, error);
    }
    return {value, error, subdivisions};
}

void add_pieces(std::vector<Segment>& out, const Integrand& g, double a, double b) {
    const double m = 0.5 * (a + b);
    out.push_back(from_singular(g, a, m));
    out.push_back(from_singular(g, b, m));
    out.back().g = [h = out.back().g](double t) { return -h(t); };
}

}  // namespace

QuadResult integrate_adaptive(const Integrand& g, double a, double b, const QuadConfig& cfg) {
    if (b < a) {
        auto r = integrate_adaptive(g, b, a, cfg);
        r.value = -r.value;
        return r;
    }
    return adaptive_sum({Segment{g, a, b}}, cfg);
}

double integrate(const Integrand& g, double a, double b, const QuadConfig& cfg) {
    return integrate_adaptive(g, a, b, cfg).value;
}

double integrate_from_singular(const Integrand& g, double from, double to, const QuadConfig& cfg) {
    if (from == to) return 0.0;
    return adaptive_sum({from_singular(g, from, to)}, cfg).value;
}

double integrate_endpoint_singular(const Integrand& g, double a, double b, const QuadConfig& cfg) {
    if (a == b) return 0.0;
    if (b < a) return -integrate_endpoint_singular(g, b, a, cfg);
    std::vector<Segment> pieces;
    add_pieces(pieces, g, a, b);
    return adaptive_sum(pieces, cfg).value;
}

double integrate_partitioned(const Integrand& g, double a, double b, std::span<const double> breakpoints,
                             const QuadConfig& cfg) {
    if (b < a) return -integrate_partitioned(g, b, a, breakpoints, cfg);
    std::vector<double> edges{a};
    for (double p : interior_points(a, b, breakpoints)) edges.push_back(p);
    edges.push_back(b);
    std::vector<Segment> pieces;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        if (edges[i + 1] - edges[i] <= 1e-14) continue;
        add_pieces(pieces, g, edges[i], edges[i + 1]);
    }
    if (pieces.empty()) return 0.0;
    return adaptive_sum(pieces, cfg).value;
}

double integrate_circle(const Integrand& g, const QuadConfig& cfg) { return integrate(g, 0.0, kTwoPi, cfg); }

double integrate_circle(const Integrand& g, std::span<const double> breakpoints, const QuadConfig& cfg) {
    std::vector<double> reduced;
    reduced.reserve(breakpoints.size());
    for (double p : breakpoints) reduced.push_back(reduce_angle(p));
    return integrate_partitioned(g, 0.0, kTwoPi, reduced, cfg);
}

double invert_monotone(const Integrand& F, double target, double lo, double hi, const RootConfig& cfg) {
    cfg.validate();
    if (!(lo <= hi)) throw BracketError("invert_monotone: empty bracket");
    const double threshold = cfg.tol * std::max(1.0, std::abs(target));

    double best_x = lo, best_r = std::numeric_limits<double>::infinity();
    auto h = [&](double x) {
        const double r = F(x) - target;
        if (std::abs(r) < best_r) best_r = std::abs(r), best_x = x;
        return r;
    };

    const double hlo = h(lo);
    if (std::abs(hlo) <= threshold) return lo;
    const double hhi = h(hi);
    if (std::abs(hhi) <= threshold) return hi;
    if (hlo > 0.0 || hhi < 0.0) {
        throw BracketError("invert_monotone: target " + std::to_string(target) + " not bracketed by [" +
                           std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }

    auto done = [&](double a, double b) {
        return best_r <= threshold || std::abs(b - a) <= 4.0 * std::numeric_limits<double>::epsilon() *
                                                             std::max(std::abs(a), std::abs(b));
    };
    std::uintmax_t iters = std::uintmax_t(cfg.max_iter);
    boost::math::tools::toms748_solve(h, lo, hi, hlo, hhi, done, iters);
    if (best_r > threshold) {
        throw AccuracyError("invert_monotone: residual " + std::to_string(best_r) + " above tolerance " +
                                std::to_string(threshold) + " after " + std::to_string(iters) + " iterations",
                            best_x, best_r);
    }
    return best_x;
}

}  // namespace weakkam
