#include "hgsg/functions.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "hgsg/errors.hpp"

namespace hgsg {

namespace {

/// (exp(c*x) - 1) / c, continuous through c = 0.
double expm1_ratio(double c, double x) {
    if (c == 0.0) return x;
    return std::expm1(c * x) / c;
}

}  // namespace

std::string to_string(TestFunctionId id) {
    switch (id) {
        case TestFunctionId::F1: return "f1";
        case TestFunctionId::F2: return "f2";
        case TestFunctionId::F3: return "f3";
        case TestFunctionId::F4: return "f4";
    }
    return "f2";
}

TestFunctionId parse_function_id(const std::string& name) {
    if (name == "f1") return TestFunctionId::F1;
    if (name == "f2") return TestFunctionId::F2;
    if (name == "f3") return TestFunctionId::F3;
    if (name == "f4") return TestFunctionId::F4;
    throw config_error("function: unknown id '" + name + "' (expected f1..f4)");
}

std::string to_string(ScheduleKind kind) {
    switch (kind) {
        case ScheduleKind::A: return "A";
        case ScheduleKind::B: return "B";
        case ScheduleKind::C: return "C";
    }
    return "A";
}

ScheduleKind parse_schedule(const std::string& name) {
    if (name == "A") return ScheduleKind::A;
    if (name == "B") return ScheduleKind::B;
    if (name == "C") return ScheduleKind::C;
    throw config_error("schedule: unknown kind '" + name + "' (expected A, B, or C)");
}

std::vector<double> coefficient_schedule(ScheduleKind kind, std::int32_t d, double lambda) {
    if (d < 1) throw config_error("schedule: d must be >= 1");
    if (kind == ScheduleKind::C && lambda <= 0.0)
        throw config_error("lambda: must be positive for schedule C");
    std::vector<double> c(d);
    for (std::int32_t i = 1; i <= d; ++i) {
        switch (kind) {
            case ScheduleKind::A: c[i - 1] = 10.0 / std::ldexp(1.0, i + 2); break;
            case ScheduleKind::B: c[i - 1] = 1.0 / std::ldexp(1.0, i + 2); break;
            case ScheduleKind::C: c[i - 1] = lambda * std::exp(-35.0 * i / d); break;
        }
    }
    return c;
}

TestFunction TestFunction::make(TestFunctionId id, std::int32_t d, std::vector<double> c,
                                std::vector<double> w) {
    if (id == TestFunctionId::F1 && d != 2) throw config_error("d: f1 requires d = 2");
    if (id == TestFunctionId::F4 && d < 2) throw config_error("d: f4 requires d >= 2");
    if (d < 1) throw config_error("d: must be >= 1");
    if (w.empty()) w.assign(d, 0.5);
    if (static_cast<std::int32_t>(w.size()) != d) throw config_error("w: needs one entry per dimension");
    if (id != TestFunctionId::F1) {
        if (static_cast<std::int32_t>(c.size()) != d)
            throw config_error("c: needs one coefficient per dimension");
        for (double ci : c)
            if (ci <= 0.0) throw config_error("c: coefficients must be positive");
    }
    return TestFunction{id, d, std::move(c), std::move(w)};
}

double eval_test_function(const TestFunction& tf, std::span<const double> xi) {
    if (static_cast<std::int32_t>(xi.size()) != tf.d)
        throw std::invalid_argument("eval_test_function: dimension mismatch");
    switch (tf.id) {
        case TestFunctionId::F1:
            return 1.0 / (std::abs(0.3 - xi[0] * xi[0] - xi[1] * xi[1]) + 0.1);
        case TestFunctionId::F2: {
            double s = 0.0;
            for (std::int32_t i = 0; i < tf.d; ++i) {
                double t = tf.c[i] * (xi[i] - tf.w[i]);
                s += t * t;
            }
            return std::exp(-s);
        }
        case TestFunctionId::F3: {
            double s = 0.0;
            for (std::int32_t i = 0; i < tf.d; ++i) s += tf.c[i] * std::abs(xi[i] - tf.w[i]);
            return std::exp(-s);
        }
        case TestFunctionId::F4: {
            if (xi[0] > tf.w[0] || xi[1] > tf.w[1]) return 0.0;
            double s = 0.0;
            for (std::int32_t i = 0; i < tf.d; ++i) s += tf.c[i] * xi[i];
            return std::exp(s);
        }
    }
    return 0.0;
}

Evaluator make_evaluator(const TestFunction& tf) {
    return [tf](std::span<const double> xi) { return eval_test_function(tf, xi); };
}

std::optional<double> analytic_integral(const TestFunction& tf) {
    switch (tf.id) {
        case TestFunctionId::F1:
            return std::nullopt;
        case TestFunctionId::F2: {
            constexpr double sqrt_pi = 1.7724538509055160273;
            double prod = 1.0;
            for (std::int32_t i = 0; i < tf.d; ++i) {
                double c = tf.c[i], w = tf.w[i];
                prod *= sqrt_pi / (2.0 * c) * (std::erf(c * (1.0 - w)) + std::erf(c * w));
            }
            return prod;
        }
        case TestFunctionId::F3: {
            double prod = 1.0;
            for (std::int32_t i = 0; i < tf.d; ++i) {
                double c = tf.c[i], w = tf.w[i];
                prod *= (-std::expm1(-c * w) - std::expm1(-c * (1.0 - w))) / c;
            }
            return prod;
        }
        case TestFunctionId::F4: {
            double prod = 1.0;
            for (std::int32_t i = 0; i < tf.d; ++i)
                prod *= expm1_ratio(tf.c[i], i < 2 ? tf.w[i] : 1.0);
            return prod;
        }
    }
    return std::nullopt;
}

double f1_reference_integral() {
    // Polar and cartesian reductions agree on this value to 4.4e-16
    // (tools/gen_f1_reference.cpp regenerates it).
    return 2.9291723937558949;
}

double reference_integral(const TestFunction& tf) {
    if (auto exact = analytic_integral(tf)) return *exact;
    return f1_reference_integral();
}

ErrorMetrics compute_metrics(const Evaluator& truth, const GridState& approx,
                             double exact_integral, std::size_t n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("compute_metrics: need at least one sample");
    if (exact_integral == 0.0)
        throw std::domain_error("compute_metrics: relative integral error undefined for zero integral");
    ErrorMetrics m;
    m.samples = n;
    m.seed = seed;
    std::mt19937_64 rng(seed);
    const std::int32_t d = approx.dimension();
    std::vector<double> x(d);
    double sum_sq = 0.0;
    for (std::size_t s = 0; s < n; ++s) {
        for (std::int32_t k = 0; k < d; ++k)
            x[k] = static_cast<double>(rng() >> 11) * 0x1.0p-53;  // uniform in [0, 1)
        double diff = std::abs(truth(x) - approx.evaluate(x));
        m.linf = std::max(m.linf, diff);
        sum_sq += diff * diff;
    }
    m.l2 = std::sqrt(sum_sq / static_cast<double>(n));
    m.integral_signed = (approx.integrate() - exact_integral) / exact_integral;
    return m;
}

}  // namespace hgsg
