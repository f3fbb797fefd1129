#pragma once

#include <cstddef>
#include <vector>

namespace oufpt {

struct AiryValue {
  double ai = 0.0;
  double ai_prime = 0.0;
};

/// Ai and Ai' on [-60, 10], absolute error below 1e-12: Maclaurin series in
/// extended precision for |x| <= 6, the exponential asymptotic expansion for
/// x > 6, and Taylor-stepped integration of y'' = xy seeded at -6 for x < -6.
/// Throws std::range_error outside [-60, 10].
AiryValue airy(double x);

/// First n negative zeros of Ai (decreasing), n <= 50; Newton-refined from the
/// asymptotic guesses -(3 pi (4j+3)/8)^{2/3} until |Ai(z_j)| < 1e-12.
std::vector<double> airy_zeros(std::size_t n);

}  // namespace oufpt
