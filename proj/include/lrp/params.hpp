#pragma once

#include <functional>
#include <optional>
#include <string>

namespace lrp {

// Connectivity kernel. The polynomial kernel gives the connection
// probability p * (1 and beta/r)^(d*alpha) at l2-distance r. A custom kernel
// J must be non-increasing with values in [0,1); the probability is then
// p * J(r / beta).
enum class KernelKind { polynomial, custom };

struct LrpParams {
    int d = 2;
    double alpha = 2.0;   // tail exponent, > 1
    double beta = 1.0;    // range scale, > 0
    double p = 1.0;       // amplitude in [0,1]; p = 0 is the empty-graph degenerate case
    KernelKind kernel = KernelKind::polynomial;
    std::function<double(double)> custom_kernel;  // J, used when kernel == custom

    void validate() const;
};

// Connection probability at l2-distance r > 0.
double connection_prob(double r, const LrpParams& params);

// True iff the edge-length integrability condition holds: alpha > 1 + 1/d
// for the polynomial kernel. Custom kernels are integrated numerically over
// dyadic blocks [2^j, 2^(j+1)) up to 2^20 and judged by geometric decay of
// the block sums (documented cutoff).
bool integrability_check(const LrpParams& params);

}  // namespace lrp
