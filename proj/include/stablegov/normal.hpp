#pragma once

// Standard-normal special functions and the lognormal mean.

namespace stablegov::math {

/// A value in [0, 1]. Construction validates the range.
class Probability {
public:
    explicit Probability(double value);

    double value() const noexcept { return value_; }
    operator double() const noexcept { return value_; }

private:
    double value_;
};

inline constexpr double kInvSqrt2Pi = 0.398942280401432677939946059934;

/// (1/sqrt(2 pi)) exp(-x^2/2). Throws DomainError for non-finite x.
double std_normal_pdf(double x);

/// Phi(x) through erfc, accurate to a few ulp in both tails.
/// Accepts +-inf; throws DomainError for NaN.
Probability std_normal_cdf(double x);

/// Phi^-1(p) for 0 < p < 1.
///
/// Acklam's rational approximation (relative error ~1.15e-9) followed by one
/// Halley step on the erfc-based cdf. The step is always taken on the smaller
/// tail, so the result satisfies |Phi(x) - p| <= 1e-12 with room to spare and
/// stays accurate as p approaches either endpoint.
double std_normal_inv_cdf(Probability p);

/// x such that 1 - Phi(x) = tail, without forming 1 - tail.
double std_normal_inv_ccdf(Probability tail);

/// E[e^R] for R ~ N(0, sigma^2), i.e. exp(sigma^2 / 2). Requires sigma > 0.
double lognormal_mean(double sigma);

}  // namespace stablegov::math
