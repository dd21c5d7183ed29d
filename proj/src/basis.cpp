#include "hgsg/basis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <string>

namespace hgsg {

void validate_degree_rule(const DegreeRule& rule) {
    if (rule.p_max < 1 || rule.p_max > kMaxDegree)
        throw std::invalid_argument("p_max must be in [1, " + std::to_string(kMaxDegree) +
                                    "], got " + std::to_string(rule.p_max));
}

std::int32_t degree_for_level(std::int32_t level, std::int32_t p_max) {
    if (level < 0 || p_max < 1) throw std::invalid_argument("degree_for_level: bad arguments");
    return std::min(p_max, level);
}

std::vector<double> support_nodes(Coord1D c, std::int32_t degree) {
    if (degree > c.level)
        throw std::invalid_argument("degree " + std::to_string(degree) +
                                    " needs level >= degree, got level " +
                                    std::to_string(c.level));
    if (degree <= 0) return {};
    const double x = coordinate_1d(c);
    const double h = support_halfwidth(c.level);
    if (c.level == 1) return {0.5};  // clipped half-hat vanishes at the midpoint only
    std::vector<double> nodes{x - h, x + h};
    if (degree == 1) return nodes;
    for (Coord1D a : ancestor_chain_1d(c)) {
        if (static_cast<std::int32_t>(nodes.size()) >= degree) break;
        double xa = coordinate_1d(a);
        if (std::find(nodes.begin(), nodes.end(), xa) == nodes.end()) nodes.push_back(xa);
    }
    return nodes;
}

BasisSpec make_basis(Coord1D c, std::int32_t degree) {
    BasisSpec spec;
    spec.center = c;
    spec.degree = degree;
    spec.x = coordinate_1d(c);
    spec.h = support_halfwidth(c.level);
    spec.lo = std::max(0.0, spec.x - spec.h);
    spec.hi = std::min(1.0, spec.x + spec.h);
    spec.nodes = support_nodes(c, degree);
    if (degree >= 2) {
        spec.denom = 1.0;
        for (double n : spec.nodes) spec.denom *= spec.x - n;
    }
    return spec;
}

BasisSpec make_basis(Coord1D c, const DegreeRule& rule) {
    return make_basis(c, degree_for_level(c.level, rule.p_max));
}

double eval_1d(const BasisSpec& spec, double x) {
    if (spec.degree == 0) return 1.0;  // the constant, nonzero on all of [0, 1]
    double t = x - spec.x;
    if (std::abs(t) >= spec.h) return 0.0;
    if (spec.degree == 1) return 1.0 - std::abs(t) / spec.h;
    double num = 1.0;
    for (double n : spec.nodes) num *= x - n;
    return num / spec.denom;
}

double volume_1d(const BasisSpec& spec) {
    if (spec.degree == 0) return 1.0;
    const GaussRule& gl = gauss_legendre((spec.degree + 2) / 2);  // exact to degree p
    double total = 0.0;
    // Integrate each side of the center separately; the hat has a kink there.
    const std::array<std::pair<double, double>, 2> pieces{
        std::pair{spec.lo, spec.x}, std::pair{spec.x, spec.hi}};
    for (const auto& [a, b] : pieces) {
        if (b <= a) continue;
        double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        double s = 0.0;
        for (std::size_t k = 0; k < gl.nodes.size(); ++k)
            s += gl.weights[k] * eval_1d(spec, mid + half * gl.nodes[k]);
        total += half * s;
    }
    return total;
}

double eval_nd(const LatticePoint& p, const DegreeRule& rule, std::span<const double> x) {
    if (static_cast<std::int32_t>(x.size()) != p.dimension())
        throw std::invalid_argument("eval_nd: dimension mismatch");
    validate_degree_rule(rule);
    double prod = 1.0;  // root factors are the constant 1
    for (const auto& [d, c] : p.nonroot()) {
        prod *= eval_1d(make_basis(c, rule), x[d]);
        if (prod == 0.0) return 0.0;
    }
    return prod;
}

double volume_nd(const LatticePoint& p, const DegreeRule& rule) {
    validate_degree_rule(rule);
    double prod = 1.0;  // root factors have volume 1
    for (const auto& [d, c] : p.nonroot()) {
        (void)d;
        prod *= volume_1d(make_basis(c, rule));
    }
    return prod;
}

const GaussRule& gauss_legendre(std::int32_t n) {
    constexpr std::int32_t kMaxRule = 32;
    if (n < 1 || n > kMaxRule) throw std::invalid_argument("gauss_legendre: bad order");
    static std::array<GaussRule, kMaxRule + 1> cache;
    static std::array<std::once_flag, kMaxRule + 1> flags;
    std::call_once(flags[n], [n] {
        GaussRule r;
        r.nodes.resize(n);
        r.weights.resize(n);
        for (std::int32_t i = 0; i < n; ++i) {
            // Newton iteration on the Legendre recurrence.
            double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (std::int32_t k = 2; k <= n; ++k) {
                    double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16) break;
            }
            r.nodes[i] = x;
            r.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        cache[n] = std::move(r);
    });
    return cache[n];
}

}  // namespace hgsg
