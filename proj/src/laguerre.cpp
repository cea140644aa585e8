#include "evf/laguerre.hpp"

#include <string>

#include "evf/errors.hpp"

namespace evf {

double assoc_laguerre(int n, int alpha, double x) {
    if (n < 0 || alpha < 0) throw DomainError("assoc_laguerre needs n >= 0 and alpha >= 0");
    if (n > kMaxLaguerreOrder) {
        throw UnsupportedOrderError("assoc_laguerre order " + std::to_string(n) +
                                    " exceeds supported ceiling " +
                                    std::to_string(kMaxLaguerreOrder));
    }
    double prev = 1.0;
    if (n == 0) return prev;
    const double a = alpha;
    double curr = 1.0 + a - x;
    for (int k = 1; k < n; ++k) {
        const double next = ((2.0 * k + 1.0 + a - x) * curr - (k + a) * prev) / (k + 1.0);
        prev = curr;
        curr = next;
    }
    return curr;
}

}  // namespace evf
