#pragma once

#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "parry/errors.hpp"
#include "parry/word.hpp"

namespace parry {

namespace detail {

/// Lexicographic comparison of finite digit words padded with 0^omega.
inline int compare_zero_padded(std::span<const int> a, std::span<const int> b) {
  const std::size_t n = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    const int da = i < a.size() ? a[i] : 0;
    const int db = i < b.size() ? b[i] : 0;
    if (da != db) return da < db ? -1 : 1;
  }
  return 0;
}

inline std::string digits_to_string(std::span<const int> d) {
  std::string s;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) s.push_back(',');
    s += std::to_string(d[i]);
  }
  return s;
}

}  // namespace detail

/// Numeration parameters: either a simple Parry base given by the finite
/// Renyi digits t_1..t_m, or a binary non-simple Parry base given by (p, q).
struct ParryParameters {
  enum class Kind { Simple, NonSimpleBinary };

  Kind kind = Kind::Simple;
  std::vector<int> t;  // Simple: t[i-1] holds t_i
  int p = 0;
  int q = 0;

  int m() const { return static_cast<int>(t.size()); }
  bool simple() const { return kind == Kind::Simple; }
  Letter alphabet_size() const { return simple() ? static_cast<Letter>(t.size()) : 2; }

  std::string describe() const {
    std::string s = simple() ? "t=" : "nsp=";
    if (simple()) {
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) s.push_back(',');
        s += std::to_string(t[i]);
      }
    } else {
      s += std::to_string(p) + "," + std::to_string(q);
    }
    return s;
  }

  static ParryParameters simple_params(std::vector<int> digits);
  static ParryParameters non_simple_binary(int p, int q);
};

/// Checks the defining conditions and returns the parameters unchanged.
/// Simple: t_1 >= 1, t_m >= 1 and t_i..t_m 0^w strictly below t_1..t_m 0^w
/// for every i in {2..m}. Non-simple binary: p > q >= 1.
/// Throws std::invalid_argument naming the first violated condition and the
/// two compared digit strings.
inline ParryParameters validate(ParryParameters params) {
  if (params.kind == ParryParameters::Kind::Simple) {
    const auto& t = params.t;
    const int m = params.m();
    if (m < 2) throw std::invalid_argument("simple Parry parameters need m >= 2");
    if (t.front() < 1) throw std::invalid_argument("simple Parry parameters need t_1 >= 1");
    if (t.back() < 1) throw std::invalid_argument("simple Parry parameters need t_m >= 1");
    for (int v : t)
      if (v < 0) throw std::invalid_argument("simple Parry digits must be non-negative");
    for (int i = 2; i <= m; ++i) {
      std::span<const int> suffix(t.data() + (i - 1), t.size() - (i - 1));
      if (detail::compare_zero_padded(suffix, t) >= 0) {
        std::ostringstream os;
        os << "Parry condition fails at i=" << i << ": suffix "
           << detail::digits_to_string(suffix) << " 0^w is not lexicographically below "
           << detail::digits_to_string(t) << " 0^w";
        throw std::invalid_argument(os.str());
      }
    }
  } else {
    if (!(params.p > params.q && params.q >= 1)) {
      std::ostringstream os;
      os << "non-simple binary parameters need p > q >= 1, got p=" << params.p
         << " q=" << params.q;
      throw std::invalid_argument(os.str());
    }
  }
  return params;
}

inline ParryParameters ParryParameters::simple_params(std::vector<int> digits) {
  ParryParameters p;
  p.kind = Kind::Simple;
  p.t = std::move(digits);
  return validate(std::move(p));
}

inline ParryParameters ParryParameters::non_simple_binary(int p, int q) {
  ParryParameters r;
  r.kind = Kind::NonSimpleBinary;
  r.p = p;
  r.q = q;
  return validate(std::move(r));
}

/// k = min{ j in {1..m-1} : t_{m-j} != 0 }; exists because t_1 >= 1.
inline int k_index(const ParryParameters& params) {
  if (!params.simple()) throw PreconditionError("k_index needs simple Parry parameters");
  const int m = params.m();
  for (int j = 1; j <= m - 1; ++j)
    if (params.t[m - j - 1] != 0) return j;
  throw InternalError("k_index: no nonzero t_{m-j} found for valid parameters");
}

}  // namespace parry
