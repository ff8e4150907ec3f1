#include "stablegov/normal.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "stablegov/errors.hpp"

namespace stablegov::math {

namespace {

// Acklam's coefficients.
constexpr std::array<double, 6> kA = {-3.969683028665376e+01, 2.209460984245205e+02,
                                      -2.759285104469687e+02, 1.383577518672690e+02,
                                      -3.066479806614716e+01, 2.506628277459239e+00};
constexpr std::array<double, 5> kB = {-5.447609879822406e+01, 1.615858368580409e+02,
                                      -1.556989798598866e+02, 6.680131188771972e+01,
                                      -1.328068155288572e+01};
constexpr std::array<double, 6> kC = {-7.784894002430293e-03, -3.223964580411365e-01,
                                      -2.400758277161838e+00, -2.549732539343734e+00,
                                      4.374664141464968e+00,  2.938163982698783e+00};
constexpr std::array<double, 4> kD = {7.784695709041462e-03, 3.224671290700398e-01,
                                      2.445134137142996e+00, 3.754408661907416e+00};
constexpr double kLowRegion = 0.02425;

double cdf_unchecked(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

// Rational approximation for p in (0, 0.5].
double acklam_lower(double p) {
    if (p < kLowRegion) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((kC[0] * q + kC[1]) * q + kC[2]) * q + kC[3]) * q + kC[4]) * q + kC[5]) /
               ((((kD[0] * q + kD[1]) * q + kD[2]) * q + kD[3]) * q + 1.0);
    }
    const double q = p - 0.5;
    const double r = q * q;
    return (((((kA[0] * r + kA[1]) * r + kA[2]) * r + kA[3]) * r + kA[4]) * r + kA[5]) * q /
           (((((kB[0] * r + kB[1]) * r + kB[2]) * r + kB[3]) * r + kB[4]) * r + 1.0);
}

// Quantile for p in (0, 0.5], refined in place against the lower tail.
double inv_lower_tail(double p) {
    double x = acklam_lower(p);
    const double e = cdf_unchecked(x) - p;
    const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
    x -= u / (1.0 + 0.5 * x * u);
    return x;
}

void require_open_unit(double p, const char* what) {
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError(std::string(what) + ": probability must lie strictly inside (0, 1), got " +
                          std::to_string(p));
    }
}

}  // namespace

Probability::Probability(double value) : value_(value) {
    if (!(value >= 0.0 && value <= 1.0)) {
        throw DomainError("Probability: value must lie in [0, 1], got " + std::to_string(value));
    }
}

double std_normal_pdf(double x) {
    if (!std::isfinite(x)) {
        throw DomainError("std_normal_pdf: argument must be finite");
    }
    return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

Probability std_normal_cdf(double x) {
    if (std::isnan(x)) {
        throw DomainError("std_normal_cdf: argument is NaN");
    }
    return Probability(cdf_unchecked(x));
}

double std_normal_inv_cdf(Probability p) {
    require_open_unit(p, "std_normal_inv_cdf");
    if (p <= 0.5) {
        return inv_lower_tail(p);
    }
    // 1 - p is exact for p in [0.5, 1).
    return -inv_lower_tail(1.0 - p);
}

double std_normal_inv_ccdf(Probability tail) {
    require_open_unit(tail, "std_normal_inv_ccdf");
    if (tail <= 0.5) {
        return -inv_lower_tail(tail);
    }
    return inv_lower_tail(1.0 - tail);
}

double lognormal_mean(double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw DomainError("lognormal_mean: sigma must be > 0, got " + std::to_string(sigma));
    }
    return std::exp(0.5 * sigma * sigma);
}

}  // namespace stablegov::math
