#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace lrp {

double mean(std::span<const double> xs);
double sample_stddev(std::span<const double> xs);  // n-1 denominator
double median(std::vector<double> xs);             // by value: sorts a copy
double quantile(std::vector<double> xs, double q); // type-7 linear interpolation

struct OlsFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_se = 0.0;
    std::size_t points = 0;
};

OlsFit ols_fit(std::span<const double> x, std::span<const double> y);

// Upper tail of the chi-square distribution with `dof` degrees of freedom
// (regularized incomplete gamma Q(dof/2, x/2), series + continued fraction).
double chi_square_sf(double x, double dof);

// FNV-1a 64-bit, used for CSV header checksums.
std::uint64_t fnv1a64(std::span<const char> bytes);

}  // namespace lrp
