#include "weakkam/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "weakkam/errors.hpp"

namespace weakkam {
namespace {

constexpr int kScanPoints = 4096;
constexpr double kMaxTie = 1e-9;

double angular_distance(double a, double b) {
    const double d = std::abs(reduce_angle(a) - reduce_angle(b));
    return std::min(d, kTwoPi - d);
}

}  // namespace

double reduce_angle(double phi) {
    double r = std::fmod(phi, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    return r >= kTwoPi ? 0.0 : r;
}

// ---------------------------------------------------------------- TrigPolynomial

double TrigPolynomial::value(double phi) const {
    double s = constant;
    for (std::size_t m = 0; m < cos_coeffs.size(); ++m) s += cos_coeffs[m] * std::cos(double(m + 1) * phi);
    for (std::size_t m = 0; m < sin_coeffs.size(); ++m) s += sin_coeffs[m] * std::sin(double(m + 1) * phi);
    return s;
}

double TrigPolynomial::derivative(double phi) const {
    double s = 0.0;
    for (std::size_t m = 0; m < cos_coeffs.size(); ++m) {
        const double n = double(m + 1);
        s -= n * cos_coeffs[m] * std::sin(n * phi);
    }
    for (std::size_t m = 0; m < sin_coeffs.size(); ++m) {
        const double n = double(m + 1);
        s += n * sin_coeffs[m] * std::cos(n * phi);
    }
    return s;
}

double TrigPolynomial::second_derivative(double phi) const {
    double s = 0.0;
    for (std::size_t m = 0; m < cos_coeffs.size(); ++m) {
        const double n = double(m + 1);
        s -= n * n * cos_coeffs[m] * std::cos(n * phi);
    }
    for (std::size_t m = 0; m < sin_coeffs.size(); ++m) {
        const double n = double(m + 1);
        s -= n * n * sin_coeffs[m] * std::sin(n * phi);
    }
    return s;
}

bool TrigPolynomial::is_constant() const {
    auto zero = [](double v) { return v == 0.0; };
    return std::all_of(cos_coeffs.begin(), cos_coeffs.end(), zero) &&
           std::all_of(sin_coeffs.begin(), sin_coeffs.end(), zero);
}

nlohmann::json TrigPolynomial::to_json() const {
    return {{"const", constant}, {"cos", cos_coeffs}, {"sin", sin_coeffs}};
}

TrigPolynomial TrigPolynomial::from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw DomainError("trig polynomial: expected a JSON object");
    TrigPolynomial p;
    try {
        p.constant = j.value("const", 0.0);
        if (j.contains("cos")) p.cos_coeffs = j.at("cos").get<std::vector<double>>();
        if (j.contains("sin")) p.sin_coeffs = j.at("sin").get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("trig polynomial: ") + e.what());
    }
    auto finite = [](double v) { return std::isfinite(v); };
    if (!std::isfinite(p.constant) || !std::all_of(p.cos_coeffs.begin(), p.cos_coeffs.end(), finite) ||
        !std::all_of(p.sin_coeffs.begin(), p.sin_coeffs.end(), finite)) {
        throw DomainError("trig polynomial: coefficients must be finite");
    }
    return p;
}

// ---------------------------------------------------------------- Potential

Potential::Potential(PotentialKind kind, TrigPolynomial poly) : kind_(kind), poly_(std::move(poly)) {}

Potential Potential::pendulum() {
    Potential p(PotentialKind::pendulum, TrigPolynomial{0.0, {-1.0}, {}});
    p.locate_extrema();
    return p;
}

Potential Potential::zero() {
    Potential p(PotentialKind::zero, TrigPolynomial{});
    p.locate_extrema();
    return p;
}

Potential Potential::trig(std::vector<double> cos_coeffs, std::vector<double> sin_coeffs) {
    Potential p(PotentialKind::trig_polynomial, TrigPolynomial{0.0, std::move(cos_coeffs), std::move(sin_coeffs)});
    auto finite = [](double v) { return std::isfinite(v); };
    if (!std::all_of(p.poly_.cos_coeffs.begin(), p.poly_.cos_coeffs.end(), finite) ||
        !std::all_of(p.poly_.sin_coeffs.begin(), p.poly_.sin_coeffs.end(), finite)) {
        throw DomainError("potential: coefficients must be finite");
    }
    p.locate_extrema();
    return p;
}

Potential Potential::custom(std::function<double(double)> f, std::function<double(double)> df,
                            std::function<double(double)> d2f) {
    if (!f || !df || !d2f) throw DomainError("potential: custom potential needs f, f' and f''");
    Potential p(PotentialKind::custom, TrigPolynomial{});
    p.f_ = std::move(f);
    p.df_ = std::move(df);
    p.d2f_ = std::move(d2f);
    p.locate_extrema();
    return p;
}

Potential Potential::from_json(const nlohmann::json& j) {
    try {
        return parse_potential(j);
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("potential: ") + e.what());
    }
}

Potential Potential::parse_potential(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("kind")) throw DomainError("potential: expected an object with a \"kind\" field");
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "pendulum") return pendulum();
    if (kind == "zero") return zero();
    if (kind == "trig") {
        std::vector<double> c, s;
        if (j.contains("cos")) c = j.at("cos").get<std::vector<double>>();
        if (j.contains("sin")) s = j.at("sin").get<std::vector<double>>();
        return trig(std::move(c), std::move(s));
    }
    throw DomainError("potential: unknown kind \"" + kind + "\"");
}

nlohmann::json Potential::to_json() const {
    switch (kind_) {
        case PotentialKind::pendulum: return {{"kind", "pendulum"}};
        case PotentialKind::zero: return {{"kind", "zero"}};
        case PotentialKind::trig_polynomial:
            return {{"kind", "trig"}, {"cos", poly_.cos_coeffs}, {"sin", poly_.sin_coeffs}};
        case PotentialKind::custom: break;
    }
    throw DomainError("potential: custom potentials are not serialisable");
}

double Potential::eval(double phi) const {
    switch (kind_) {
        case PotentialKind::pendulum: return -std::cos(reduce_angle(phi));
        case PotentialKind::zero: return 0.0;
        case PotentialKind::trig_polynomial: return poly_.value(reduce_angle(phi));
        case PotentialKind::custom: return f_(reduce_angle(phi));
    }
    return 0.0;
}

double Potential::eval_deriv(double phi) const {
    switch (kind_) {
        case PotentialKind::pendulum: return std::sin(reduce_angle(phi));
        case PotentialKind::zero: return 0.0;
        case PotentialKind::trig_polynomial: return poly_.derivative(reduce_angle(phi));
        case PotentialKind::custom: return df_(reduce_angle(phi));
    }
    return 0.0;
}

double Potential::eval_second_deriv(double phi) const {
    switch (kind_) {
        case PotentialKind::pendulum: return std::cos(reduce_angle(phi));
        case PotentialKind::zero: return 0.0;
        case PotentialKind::trig_polynomial: return poly_.second_derivative(reduce_angle(phi));
        case PotentialKind::custom: return d2f_(reduce_angle(phi));
    }
    return 0.0;
}

void Potential::locate_extrema() {
    const double h = kTwoPi / kScanPoints;
    std::vector<double> v(kScanPoints);
    for (int i = 0; i < kScanPoints; ++i) v[i] = eval(i * h);
    const auto [lo_it, hi_it] = std::minmax_element(v.begin(), v.end());

    constant_ = (kind_ == PotentialKind::custom) ? (*hi_it - *lo_it == 0.0) : poly_.is_constant();
    if (constant_) {
        f_min_ = f_max_ = v.front();
        argmin_ = argmax_ = 0.0;
        return;
    }

    const int bits = std::numeric_limits<double>::digits / 2;
    struct Refined {
        double x, f;
        bool is_max;
    };
    std::vector<Refined> found;
    for (int i = 0; i < kScanPoints; ++i) {
        const double prev = v[(i + kScanPoints - 1) % kScanPoints];
        const double next = v[(i + 1) % kScanPoints];
        const bool is_max = v[i] >= prev && v[i] > next;
        const bool is_min = v[i] <= prev && v[i] < next;
        if (!is_max && !is_min) continue;
        const double a = (i - 1) * h, b = (i + 1) * h;
        const double sgn = is_max ? -1.0 : 1.0;
        auto r = boost::math::tools::brent_find_minima([&](double x) { return sgn * eval(x); }, a, b, bits);
        // Brent locates to about sqrt(eps); Newton on f' takes it to rounding level.
        double x = r.first;
        for (int it = 0; it < 8; ++it) {
            const double d1 = eval_deriv(x), d2 = eval_second_deriv(x);
            if (d1 == 0.0 || d2 == 0.0) break;
            const double next = x - d1 / d2;
            if (!(next > a && next < b) || std::abs(eval_deriv(next)) >= std::abs(d1)) break;
            x = next;
        }
        found.push_back({reduce_angle(x), eval(x), is_max});
    }

    f_min_ = std::numeric_limits<double>::infinity();
    f_max_ = -std::numeric_limits<double>::infinity();
    for (const auto& r : found) {
        extrema_.push_back(r.x);
        if (r.is_max && r.f > f_max_) {
            f_max_ = r.f;
            argmax_ = r.x;
        }
        if (!r.is_max && r.f < f_min_) {
            f_min_ = r.f;
            argmin_ = r.x;
        }
    }
    for (const auto& r : found) {
        if (!r.is_max || r.f < f_max_ - kMaxTie) continue;
        const bool dup = std::any_of(maximizers_.begin(), maximizers_.end(),
                                     [&](double m) { return angular_distance(m, r.x) < 1e-6; });
        if (!dup) maximizers_.push_back(r.x);
    }
    std::sort(extrema_.begin(), extrema_.end());
    extrema_.erase(std::unique(extrema_.begin(), extrema_.end(),
                               [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                   extrema_.end());
}

std::vector<double> Potential::level_crossings(double c) const {
    std::vector<double> roots;
    if (constant_ || c < f_min_ || c > f_max_) return roots;

    // f is monotone between consecutive points of the merged grid, so each
    // sign change brackets exactly one root.
    std::vector<double> nodes(extrema_.begin(), extrema_.end());
    const double h = kTwoPi / kScanPoints;
    for (int i = 0; i < kScanPoints; ++i) nodes.push_back(i * h);
    std::sort(nodes.begin(), nodes.end());
    nodes.push_back(kTwoPi);

    auto g = [&](double x) { return eval(x) - c; };
    auto tol = [](double a, double b) { return std::abs(b - a) <= 1e-13; };
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        const double a = nodes[i], b = nodes[i + 1];
        const double ga = g(a), gb = g(b);
        if (ga == 0.0) {
            roots.push_back(reduce_angle(a));
            continue;
        }
        if (gb == 0.0 || (ga < 0.0) == (gb < 0.0)) continue;
        auto r = boost::math::tools::bisect(g, a, b, tol);
        roots.push_back(reduce_angle(0.5 * (r.first + r.second)));
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end(), [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                roots.end());
    return roots;
}

std::vector<double> Potential::breakpoints(double c) const {
    auto pts = level_crossings(c);
    pts.insert(pts.end(), extrema_.begin(), extrema_.end());
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end(), [](double a, double b) { return std::abs(a - b) < 1e-12; }),
              pts.end());
    return pts;
}

}  // namespace weakkam
