#pragma once

#include <cmath>
#include <compare>
#include <cstdlib>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "parry/errors.hpp"
#include "parry/params.hpp"
#include "parry/prefix_engine.hpp"
#include "parry/word.hpp"

namespace parry {

/// An eventually periodic digit stream; an empty period means a 0^omega tail.
struct DigitStream {
  std::vector<int> preperiod;
  std::vector<int> period;

  int at(std::size_t i) const {
    if (i < preperiod.size()) return preperiod[i];
    if (period.empty()) return 0;
    return period[(i - preperiod.size()) % period.size()];
  }

  std::string describe() const {
    std::string s;
    for (int d : preperiod) s += std::to_string(d);
    if (!period.empty()) {
      s.push_back('(');
      for (int d : period) s += std::to_string(d);
      s += ")^w";
    }
    return s;
  }
};

/// Three-way lexicographic order of eventually periodic streams, decided
/// within preperiod + 2 * lcm(periods) digits.
inline std::strong_ordering lex_compare(const DigitStream& a, const DigitStream& b) {
  const std::size_t pa = a.period.empty() ? 1 : a.period.size();
  const std::size_t pb = b.period.empty() ? 1 : b.period.size();
  const std::size_t window =
      std::max(a.preperiod.size(), b.preperiod.size()) + 2 * std::lcm(pa, pb);
  for (std::size_t i = 0; i < window; ++i) {
    const int da = a.at(i), db = b.at(i);
    if (da != db) return da <=> db;
  }
  return std::strong_ordering::equal;
}

/// d_beta(1). An empty period means the expansion is finite (simple Parry).
struct RenyiExpansion {
  std::vector<int> preperiod;
  std::vector<int> period;

  static RenyiExpansion from_params(const ParryParameters& params) {
    RenyiExpansion e;
    if (params.simple()) {
      e.preperiod = params.t;
    } else {
      e.preperiod = {params.p};
      e.period = {params.q};
    }
    return e;
  }
};

/// The infinite Renyi expansion d*_beta(1): the expansion itself when
/// infinite, else (t_1 ... t_{m-1} (t_m - 1))^omega.
inline DigitStream d_star(const RenyiExpansion& expansion) {
  if (!expansion.period.empty())
    return DigitStream{expansion.preperiod, expansion.period};
  std::vector<int> period = expansion.preperiod;
  period.back() -= 1;
  return DigitStream{{}, std::move(period)};
}

/// Most-significant-first digits x_{k-1} ... x_0 of a beta-integer.
struct DigitString {
  std::vector<int> digits;

  bool operator==(const DigitString&) const = default;

  std::string to_text() const {
    bool wide = false;
    for (int d : digits) wide |= d >= 10;
    std::string s;
    for (std::size_t i = 0; i < digits.size(); ++i) {
      if (wide && i) s.push_back(',');
      s += std::to_string(digits[i]);
    }
    return s;
  }

  static DigitString from_text(std::string_view text) {
    Word w = word_from_text(text);
    DigitString d;
    d.digits.assign(w.letters.begin(), w.letters.end());
    if (d.digits.empty()) throw std::invalid_argument("empty digit string");
    return d;
  }
};

/// Parry admissibility: every suffix x_i x_{i-1} ... x_0 0^omega is strictly
/// below d*_beta(1).
inline bool parry_admissible(const DigitString& digits, const RenyiExpansion& expansion) {
  const DigitStream bound = d_star(expansion);
  for (std::size_t j = 0; j < digits.digits.size(); ++j) {
    DigitStream suffix{{digits.digits.begin() + j, digits.digits.end()}, {}};
    if (lex_compare(suffix, bound) != std::strong_ordering::less) return false;
  }
  return true;
}

/// Greedy decomposition n = sum x_i U_i with the largest U_i first; the
/// digits of <b_n>_beta by the Fabre correspondence.
inline DigitString position_to_expansion(PrefixEngine& engine, Index n) {
  if (n < 0) throw std::invalid_argument("position must be non-negative");
  if (n == 0) return DigitString{{0}};
  int k = 0;
  while (engine.length_u(k + 1) <= n) ++k;
  DigitString out;
  Index rest = n;
  for (int i = k; i >= 0; --i) {
    const Index base = engine.length_u(i);
    out.digits.push_back(static_cast<int>(rest / base));
    rest %= base;
  }
  return out;
}

/// Exact inverse of position_to_expansion; rejects inadmissible digit strings
/// naming the failing suffix.
inline Index expansion_to_position(PrefixEngine& engine, const DigitString& digits) {
  if (digits.digits.empty()) throw std::invalid_argument("empty digit string");
  if (digits.digits.size() > 1 && digits.digits.front() == 0)
    throw std::invalid_argument("digit string has a leading zero");
  const RenyiExpansion expansion = RenyiExpansion::from_params(engine.params());
  const DigitStream bound = d_star(expansion);
  for (std::size_t j = 0; j < digits.digits.size(); ++j) {
    DigitStream suffix{{digits.digits.begin() + j, digits.digits.end()}, {}};
    if (lex_compare(suffix, bound) != std::strong_ordering::less) {
      DigitString tail{{digits.digits.begin() + j, digits.digits.end()}};
      throw std::invalid_argument("digit string is not Parry-admissible: suffix " +
                                  tail.to_text() + " 0^w is not below " + bound.describe());
    }
  }
  const int k = static_cast<int>(digits.digits.size());
  Index pos = 0;
  for (int j = 0; j < k; ++j) {
    Index prod = 0;
    if (__builtin_mul_overflow(static_cast<Index>(digits.digits[j]),
                               engine.length_u(k - 1 - j), &prod) ||
        __builtin_add_overflow(pos, prod, &pos))
      throw ResourceCapError("position exceeds 64-bit range");
  }
  return pos;
}

/// Numeric value of beta together with the defining polynomial (monic,
/// descending degree) and the residual at the returned approximation.
struct BetaValue {
  double approx = 0.0;
  std::vector<long long> polynomial;
  double tolerance = 0.0;
};

namespace detail {

inline double eval_poly(std::span<const long long> coeffs, double x) {
  double v = 0.0;
  for (long long c : coeffs) v = v * x + static_cast<double>(c);
  return v;
}

/// Bisection for the unique root of an increasing function on [lo, hi].
inline double bisect_increasing(std::span<const long long> coeffs, double lo, double hi) {
  for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
    const double mid = 0.5 * (lo + hi);
    (eval_poly(coeffs, mid) > 0.0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

/// The base beta > 1. Simple: the root of x^m - t_1 x^{m-1} - ... - t_m on
/// [1, 1 + sum t_i]. Non-simple binary: the root of x^2 - (p+1)x + (p-q)
/// right of the vertex (p+1)/2.
inline BetaValue beta_root(const ParryParameters& params) {
  BetaValue out;
  if (params.simple()) {
    out.polynomial.push_back(1);
    for (int d : params.t) out.polynomial.push_back(-static_cast<long long>(d));
    double hi = 1.0;
    for (int d : params.t) hi += d;
    out.approx = detail::bisect_increasing(out.polynomial, 1.0, hi);
  } else {
    out.polynomial = {1, -static_cast<long long>(params.p) - 1,
                      static_cast<long long>(params.p - params.q)};
    const double vertex = 0.5 * (params.p + 1);
    out.approx = detail::bisect_increasing(out.polynomial, vertex,
                                           static_cast<double>(params.p + 1 + params.q));
  }
  out.tolerance = std::abs(detail::eval_poly(out.polynomial, out.approx));
  return out;
}

/// Gap length Delta_k = sum_{i>=1} t_{i+k} beta^{-i}. Simple bases use the
/// finite sum; non-simple binary bases add the geometric tail
/// q / (beta^j (beta - 1)). Delta_0 = 1 by the definition of d_beta(1).
inline double delta(const ParryParameters& params, int k) {
  const double beta = beta_root(params).approx;
  if (params.simple()) {
    const int m = params.m();
    if (k < 0 || k >= m)
      throw std::invalid_argument("delta: k must lie in [0, m) for simple parameters");
    double sum = 0.0, power = 1.0;
    for (int i = 1; i + k <= m; ++i) {
      power /= beta;
      sum += params.t[i + k - 1] * power;
    }
    return sum;
  }
  if (k == 0) return params.p / beta + params.q / (beta * (beta - 1.0));
  if (k == 1) return params.q / (beta - 1.0);
  throw std::invalid_argument("delta: k must be 0 or 1 for non-simple binary parameters");
}

/// b_n, the n-th non-negative beta-integer, evaluated from its expansion.
inline double beta_integer_value(PrefixEngine& engine, Index n) {
  const DigitString digits = position_to_expansion(engine, n);
  const double beta = beta_root(engine.params()).approx;
  double value = 0.0;
  for (int d : digits.digits) value = value * beta + d;
  return value;
}

}  // namespace parry
