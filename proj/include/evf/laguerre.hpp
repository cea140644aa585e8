#pragma once

namespace evf {

// Highest order accepted by assoc_laguerre.
inline constexpr int kMaxLaguerreOrder = 60;

// Associated Laguerre polynomial L_n^alpha(x) by the three-term recurrence
//   (k+1) L_{k+1} = (2k+1+alpha-x) L_k - (k+alpha) L_{k-1}.
// Throws UnsupportedOrderError for n > kMaxLaguerreOrder and DomainError for
// negative n or alpha.
double assoc_laguerre(int n, int alpha, double x);

}  // namespace evf
