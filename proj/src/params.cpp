#include "lrp/params.hpp"

#include <cmath>
#include <stdexcept>

namespace lrp {

void LrpParams::validate() const {
    if (d < 1) throw std::invalid_argument("LrpParams: d must be >= 1");
    if (!(alpha > 1.0)) throw std::invalid_argument("LrpParams: alpha must be > 1");
    if (!(beta > 0.0)) throw std::invalid_argument("LrpParams: beta must be > 0");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("LrpParams: p must be in [0,1]");
    if (kernel == KernelKind::custom) {
        if (!custom_kernel) throw std::invalid_argument("LrpParams: custom kernel not set");
        double at_zero = custom_kernel(0.0);
        if (!(at_zero >= 0.0 && at_zero < 1.0)) throw std::invalid_argument("LrpParams: kernel values must lie in [0,1)");
    }
}

double connection_prob(double r, const LrpParams& params) {
    if (!(r > 0.0)) throw std::invalid_argument("connection_prob: distance must be > 0");
    if (params.kernel == KernelKind::custom) {
        double j = params.custom_kernel(r / params.beta);
        if (j < 0.0) j = 0.0;
        if (j > 1.0) j = 1.0;
        return params.p * j;
    }
    double ratio = params.beta / r;
    if (ratio > 1.0) ratio = 1.0;
    return params.p * std::pow(ratio, params.d * params.alpha);
}

bool integrability_check(const LrpParams& params) {
    if (params.kernel == KernelKind::polynomial) {
        return params.alpha > 1.0 + 1.0 / params.d;
    }
    // Numeric check of integral r^d J(r) dr over [0, 2^20): Simpson on each
    // dyadic block; integrable iff the block sums tail off geometrically
    // (ratio <= 3/4 across the last decade of blocks).
    auto f = [&](double r) { return std::pow(r, params.d) * params.custom_kernel(r); };
    auto simpson = [&](double a, double b) {
        const int steps = 64;
        double h = (b - a) / steps;
        double acc = f(a) + f(b);
        for (int i = 1; i < steps; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
        return acc * h / 3.0;
    };
    double prev = simpson(0.0, 1.0);
    double total = prev;
    bool decaying = true;
    for (int j = 0; j < 20; ++j) {
        double blk = simpson(std::ldexp(1.0, j), std::ldexp(1.0, j + 1));
        total += blk;
        if (j >= 10 && blk > 0.75 * prev) decaying = false;
        prev = blk;
    }
    return decaying && std::isfinite(total);
}

}  // namespace lrp
