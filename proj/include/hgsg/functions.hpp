#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hgsg/adaptive.hpp"
#include "hgsg/interpolant.hpp"

namespace hgsg {

// The four benchmark families:
//   f1: 1 / (|0.3 - x1^2 - x2^2| + 0.1)                (d = 2, kinked ring)
//   f2: exp(-sum c_i^2 (x_i - w_i)^2)                  (smooth Gaussian)
//   f3: exp(-sum c_i |x_i - w_i|)                      (C0 ridge)
//   f4: 0 if x1 > w1 or x2 > w2, else exp(sum c_i x_i) (jump discontinuity)

enum class TestFunctionId : std::uint8_t { F1, F2, F3, F4 };

std::string to_string(TestFunctionId id);
TestFunctionId parse_function_id(const std::string& name);

/// Coefficient schedules, indexed i = 1..d:
///   A: 10 / 2^(i+2)      B: 1 / 2^(i+2)      C: lambda * exp(-35 i / d)
enum class ScheduleKind : std::uint8_t { A, B, C };

std::string to_string(ScheduleKind kind);
ScheduleKind parse_schedule(const std::string& name);
std::vector<double> coefficient_schedule(ScheduleKind kind, std::int32_t d, double lambda = 1.0);

struct TestFunction {
    TestFunctionId id = TestFunctionId::F2;
    std::int32_t d = 1;
    std::vector<double> c;  // empty for f1
    std::vector<double> w;  // shift parameters, default 0.5

    static TestFunction make(TestFunctionId id, std::int32_t d, std::vector<double> c,
                             std::vector<double> w = {});
};

double eval_test_function(const TestFunction& tf, std::span<const double> xi);
Evaluator make_evaluator(const TestFunction& tf);

/// Closed-form integral over [0,1]^d where one exists (f2/f3/f4);
/// f1 has none -- use f1_reference_integral().
std::optional<double> analytic_integral(const TestFunction& tf);

/// High-accuracy quadrature reference for f1, frozen from two independent
/// semi-analytic reductions (see tools/gen_f1_reference.cpp).
double f1_reference_integral();

/// Reference integral for metric computation: analytic when available.
double reference_integral(const TestFunction& tf);

struct ErrorMetrics {
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    double linf = 0.0;
    double l2 = 0.0;
    double integral_signed = 0.0;  // (I_approx - I_exact) / I_exact
};

/// Monte Carlo interpolation errors on `n` seeded uniform samples plus the
/// relative quadrature error. Throws std::domain_error when exact_integral
/// is zero.
ErrorMetrics compute_metrics(const Evaluator& truth, const GridState& approx,
                             double exact_integral, std::size_t n, std::uint64_t seed);

}  // namespace hgsg
