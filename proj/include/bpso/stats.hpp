#pragma once

#include <span>

namespace bpso {

double mean(std::span<const double> values);
/// Sample standard deviation (n - 1 denominator); 0 for fewer than 2 values.
double sample_stddev(std::span<const double> values);

/// Regularized incomplete beta function I_x(a, b).
double incomplete_beta(double a, double b, double x);

/// Two-tailed tail probability of Student's t with `df` degrees of freedom.
double student_t_two_tailed(double t, double df);

struct TTestResult {
    double t = 0.0;
    double df = 0.0;
    double p = 1.0;
    /// Both samples had zero variance, so no t distribution applies.
    bool degenerate = false;
};

/// Welch's unequal-variance two-sample t-test. Requires at least two values
/// per sample (UsageError otherwise). With zero variance in both samples the
/// result is flagged degenerate: p = 1 for equal means, 0 otherwise.
TTestResult welch_t_test(std::span<const double> a, std::span<const double> b);

}  // namespace bpso
