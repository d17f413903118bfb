#pragma once
// Integer-exact admissibility for rational exponents q = Q/den, r = R/den.
// Multiplying 2/q + (2d-1)/r ≤ d - 1/2 through by 2QR/den > 0 gives
//   4R + 2(2d-1)Q ≤ (2d-1)QR/den,
// and q ≥ (4d+2)/(2d-1) becomes (2d-1)Q ≥ (4d+2)den.

#include <cstdint>

namespace oracle {

struct IntAdmissible {
  bool clause1;
  bool clause2;
  bool boundary;
  bool admissible() const { return clause1 || clause2; }
};

inline IntAdmissible admissible_exact(std::int64_t Q, std::int64_t R, std::int64_t den, std::int64_t d) {
  const std::int64_t lhs = 4 * R * den + 2 * (2 * d - 1) * Q * den;
  const std::int64_t rhs = (2 * d - 1) * Q * R;
  const bool q_large = (2 * d - 1) * Q >= (4 * d + 2) * den;
  // Clause 2's leading condition 2 ≤ (4d+2)/(2d-1) is about d alone.
  const bool d_cond = 2 * (2 * d - 1) <= 4 * d + 2;
  const bool q_ge_2 = Q >= 2 * den;
  return {q_large && lhs <= rhs, d_cond && q_ge_2 && lhs < rhs, lhs == rhs};
}

// q = ∞: the condition reduces to (2d-1)/r ≤ d - 1/2, i.e. R ≥ 2 den.
inline IntAdmissible admissible_exact_q_inf(std::int64_t R, std::int64_t den) {
  return {R >= 2 * den, R > 2 * den, R == 2 * den};
}

}  // namespace oracle
