#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

#include "parry/errors.hpp"
#include "parry/params.hpp"
#include "parry/prefix_engine.hpp"
#include "parry/word.hpp"

namespace parry {

enum class TheoremId {
  GammaTable,      ///< a plain Gamma_n window
  PriorCorollary,  ///< Gamma_{n-1} with U_n-1 added, size up to m+1
  Affine,
  Restricted,
  Binary,
  GeneralCat1,
  GeneralCat2,
  GeneralZS,  ///< the t_1 = t_m set for lengths in (Z_n, S_n]
  NonSimpleBinary,
};

inline std::string_view theorem_name(TheoremId id) {
  switch (id) {
    case TheoremId::GammaTable: return "gamma";
    case TheoremId::PriorCorollary: return "prior";
    case TheoremId::Affine: return "affine";
    case TheoremId::Restricted: return "restricted";
    case TheoremId::Binary: return "binary";
    case TheoremId::GeneralCat1: return "general-cat1";
    case TheoremId::GeneralCat2: return "general-cat2";
    case TheoremId::GeneralZS: return "general-zs";
    case TheoremId::NonSimpleBinary: return "nonsimple";
  }
  return "?";
}

/// A candidate attractor for the length-word_length prefix, tagged with the
/// construction that produced it. Positions are strictly increasing.
struct AttractorSet {
  std::vector<Index> positions;
  Index word_length = 0;
  TheoremId source = TheoremId::GammaTable;

  std::size_t size() const { return positions.size(); }
};

/// Gamma_n: the last min(n+1, m) positions of the form U_j - 1;
/// Gamma_{-1} is empty.
inline std::vector<Index> gamma(PrefixEngine& engine, int n) {
  if (n < -1) throw std::invalid_argument("gamma is defined for n >= -1");
  const int m = engine.params().alphabet_size();
  const int lo = n <= m - 1 ? 0 : n - m + 1;
  std::vector<Index> out;
  for (int j = lo; j <= n; ++j) out.push_back(engine.length_u(j) - 1);
  return out;
}

/// Hypothesis report for the two restricted theorems. affine_ok requires
/// t_m = 1 and, when t_1..t_{m-1} has a nonempty border, that it is a proper
/// power; restricted_ok requires the shifted lexicographic condition for
/// i in {2..m-2} together with t_1 > max(t_{m-1}, t_m).
struct ConditionsReport {
  bool affine_ok = false;
  bool restricted_ok = false;
  bool binary = false;
  bool t1_gt_tm = false;
  bool t1_eq_tm = false;
  std::string affine_reason;
  std::string restricted_reason;
};

namespace detail {

/// Nonempty proper borders via the KMP failure function.
inline bool has_nonempty_border(std::span<const int> s) {
  if (s.size() < 2) return false;
  std::vector<std::size_t> fail(s.size(), 0);
  for (std::size_t i = 1; i < s.size(); ++i) {
    std::size_t k = fail[i - 1];
    while (k > 0 && s[i] != s[k]) k = fail[k - 1];
    if (s[i] == s[k]) ++k;
    fail[i] = k;
  }
  return fail.back() > 0;
}

inline bool is_proper_power(std::span<const int> s) {
  for (std::size_t period = 1; period * 2 <= s.size(); ++period) {
    if (s.size() % period != 0) continue;
    bool ok = true;
    for (std::size_t i = period; i < s.size() && ok; ++i) ok = s[i] == s[i - period];
    if (ok) return true;
  }
  return false;
}

/// (gamma \ {drop}) with add inserted; written in this order so the set keeps
/// its size when add and drop coincide.
inline std::vector<Index> replace_position(std::vector<Index> positions, Index drop,
                                           Index add) {
  std::erase(positions, drop);
  positions.push_back(add);
  std::sort(positions.begin(), positions.end());
  positions.erase(std::unique(positions.begin(), positions.end()), positions.end());
  return positions;
}

inline AttractorSet make_set(std::vector<Index> positions, Index word_length,
                             TheoremId source) {
  std::sort(positions.begin(), positions.end());
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (i > 0 && positions[i] == positions[i - 1])
      throw InternalError("attractor positions collide");
    if (positions[i] < 0 || positions[i] >= word_length)
      throw InternalError("attractor position " + std::to_string(positions[i]) +
                          " outside word of length " + std::to_string(word_length));
  }
  return AttractorSet{std::move(positions), word_length, source};
}

}  // namespace detail

inline ConditionsReport conditions(const ParryParameters& params) {
  if (!params.simple())
    throw PreconditionError("conditions needs simple Parry parameters");
  const auto& t = params.t;
  const int m = params.m();
  ConditionsReport r;
  r.binary = m == 2;
  r.t1_gt_tm = t.front() > t.back();
  r.t1_eq_tm = t.front() == t.back();

  if (t.back() != 1) {
    r.affine_reason = "t_m = " + std::to_string(t.back()) + " != 1";
  } else {
    std::span<const int> head(t.data(), t.size() - 1);
    if (detail::has_nonempty_border(head) && !detail::is_proper_power(head)) {
      r.affine_reason = "t_1..t_{m-1} has a nonempty border but is not a proper power";
    } else {
      r.affine_ok = true;
      r.affine_reason = "t_m = 1 and t_1..t_{m-1} passes the border condition";
    }
  }

  if (t.front() <= std::max(t[m - 2], t.back())) {
    r.restricted_reason = "t_1 = " + std::to_string(t.front()) +
                          " is not above max(t_{m-1}, t_m) = " +
                          std::to_string(std::max(t[m - 2], t.back()));
  } else {
    r.restricted_ok = true;
    r.restricted_reason = "t_1 > max(t_{m-1}, t_m)";
    for (int i = 2; i <= m - 2; ++i) {
      std::vector<int> shifted(t.begin() + (i - 1), t.begin() + (m - 1));
      shifted.back() += 1;
      if (detail::compare_zero_padded(shifted, t) >= 0) {
        r.restricted_ok = false;
        r.restricted_reason = "shifted condition fails at i=" + std::to_string(i) + ": " +
                              detail::digits_to_string(shifted) +
                              " 0^w is not below " + detail::digits_to_string(t) + " 0^w";
        break;
      }
    }
    if (r.restricted_ok && m > 3) r.restricted_reason += " and all shifted conditions hold";
  }
  return r;
}

enum class Category { Cat1, Cat2 };

/// For a prefix u_n x with |x| <= Z_n - U_n: Cat1 when
/// u_{n-m+k} u_{n-m}^{t_m} x is a prefix of u_{n-m+k+1}, Cat2 when it has
/// u_{n-m+k+1} as a prefix. When both hold (exact length match) Cat1 wins.
/// While n - m + k + 1 <= m - 1 the comparison target still carries its fresh
/// trailing letter, which no continuation of u_{n-m+k} u_{n-m}^{t_m} can
/// match; the relation is then decided against the target without that
/// letter (only Cat2 can arise this way).
inline Category classify_category(PrefixEngine& engine, int n, const Word& x) {
  const ParryParameters& params = engine.params();
  if (!params.simple())
    throw PreconditionError("classify_category needs simple Parry parameters");
  const int m = params.m();
  if (n < m) throw std::invalid_argument("classify_category needs n >= m");
  if (x.size() > engine.length(LengthKind::Z, n) - engine.length_u(n))
    throw std::invalid_argument("classify_category: |x| exceeds Z_n - U_n");
  if (x.size() > 0) {
    const Word expected =
        engine.prefix_of_length(engine.length_u(n) + x.size()).substring(
            engine.length_u(n), engine.length_u(n) + x.size());
    if (!(expected == x))
      throw std::invalid_argument("classify_category: u_n x is not a prefix of the fixed point");
  }
  const int k = k_index(params);
  Word w = engine.prefix_u(n - m + k);
  w.append_power(engine.prefix_u(n - m), params.t.back());
  w.append(x);
  const Word& target = engine.prefix_u(n - m + k + 1);
  if (w.size() <= target.size() && target.has_prefix(w)) return Category::Cat1;
  if (w.has_prefix(target)) return Category::Cat2;
  if (n - m + k + 1 <= m - 1) {
    Word stripped = target;
    stripped.letters.pop_back();
    if (w.has_prefix(stripped)) return Category::Cat2;
  }
  throw InternalError("classify_category: neither prefix relation holds");
}

/// Minimal attractor of the length-len prefix for any valid simple
/// parameters, dispatching on n = max{n : U_n <= len}:
/// the Gamma table below U_m and at len = U_n, the two category sets on
/// (U_n, Z_n], Gamma_n past Z_n when t_1 > t_m, and the Z/S split when
/// t_1 = t_m.
inline AttractorSet attractor_general(PrefixEngine& engine, Index len) {
  const ParryParameters& params = engine.params();
  if (!params.simple())
    throw PreconditionError("attractor_general needs simple Parry parameters");
  if (len < 1) throw std::invalid_argument("prefix length must be >= 1");
  const int m = params.m();
  const int n = engine.level_of_length(len);
  if (n <= m - 1) return detail::make_set(gamma(engine, n), len, TheoremId::GammaTable);
  const Index u_n = engine.length_u(n);
  if (len == u_n)
    return detail::make_set(gamma(engine, n - 1), len, TheoremId::GammaTable);
  const Index z_n = engine.length(LengthKind::Z, n);
  if (len <= z_n) {
    const Word x = engine.prefix_of_length(len).substring(u_n, len);
    const int k = k_index(params);
    const Index u_nm = engine.length_u(n - m);
    const Index u_nmk = engine.length_u(n - m + k);
    const Category cat = classify_category(engine, n, x);
    if (cat == Category::Cat1)
      return detail::make_set(
          detail::replace_position(gamma(engine, n - 1), u_nm - 1,
                                   u_n - u_nmk - (params.t.back() - 1) * u_nm - 1),
          len, TheoremId::GeneralCat1);
    return detail::make_set(
        detail::replace_position(gamma(engine, n - 1), u_nmk - 1,
                                 u_n - params.t.back() * u_nm - 1),
        len, TheoremId::GeneralCat2);
  }
  if (params.t.front() > params.t.back())
    return detail::make_set(gamma(engine, n), len, TheoremId::GammaTable);
  if (len <= engine.length(LengthKind::S, n)) {
    const Index u_nm = engine.length_u(n - m);
    return detail::make_set(
        detail::replace_position(gamma(engine, n - 1), u_nm - 1,
                                 u_n - (params.t.back() - 1) * u_nm - 1),
        len, TheoremId::GeneralZS);
  }
  return detail::make_set(gamma(engine, n), len, TheoremId::GammaTable);
}

/// Attractor under the restricted hypotheses; always a subset of
/// {U_j - 1 : j in N}.
inline AttractorSet attractor_restricted(PrefixEngine& engine, Index len) {
  if (!conditions(engine.params()).restricted_ok)
    throw PreconditionError("attractor_restricted: hypotheses do not hold for " +
                            engine.params().describe());
  if (len < 1) throw std::invalid_argument("prefix length must be >= 1");
  const int m = engine.params().m();
  const int n = engine.level_of_length(len);
  if (n <= m - 1) return detail::make_set(gamma(engine, n), len, TheoremId::Restricted);
  const bool low = len <= engine.length(LengthKind::Z, n);
  return detail::make_set(gamma(engine, low ? n - 1 : n), len, TheoremId::Restricted);
}

/// Attractor of binary simple Parry prefixes; size at most 2.
inline AttractorSet attractor_binary(PrefixEngine& engine, Index len) {
  const ParryParameters& params = engine.params();
  if (!params.simple() || params.m() != 2)
    throw PreconditionError("attractor_binary needs simple parameters with m = 2");
  if (len < 1) throw std::invalid_argument("prefix length must be >= 1");
  const int n = engine.level_of_length(len);
  if (n <= 1) return detail::make_set(gamma(engine, n), len, TheoremId::Binary);
  const bool low = len <= engine.length(LengthKind::Z, n);
  return detail::make_set(gamma(engine, low ? n - 1 : n), len, TheoremId::Binary);
}

/// Attractor under affine factor complexity; intervals split at P_n, and at
/// len = P_n the lower branch is returned (the theorem allows both).
inline AttractorSet attractor_affine(PrefixEngine& engine, Index len) {
  if (!conditions(engine.params()).affine_ok)
    throw PreconditionError("attractor_affine: hypotheses do not hold for " +
                            engine.params().describe());
  if (len < 1) throw std::invalid_argument("prefix length must be >= 1");
  const int m = engine.params().m();
  const int n = engine.level_of_length(len);
  if (n <= m - 1) return detail::make_set(gamma(engine, n), len, TheoremId::Affine);
  const bool low = len <= engine.length(LengthKind::P, n);
  return detail::make_set(gamma(engine, low ? n - 1 : n), len, TheoremId::Affine);
}

/// The size-(m+1) construction from prior work, kept as a cross-check oracle;
/// not minimal for n >= m.
inline AttractorSet attractor_prior(PrefixEngine& engine, Index len) {
  if (!engine.params().simple())
    throw PreconditionError("attractor_prior needs simple Parry parameters");
  if (len < 1) throw std::invalid_argument("prefix length must be >= 1");
  const int m = engine.params().m();
  const int n = engine.level_of_length(len);
  if (n <= m - 1)
    return detail::make_set(gamma(engine, n), len, TheoremId::PriorCorollary);
  std::vector<Index> positions = gamma(engine, n - 1);
  positions.push_back(engine.length_u(n) - 1);
  return detail::make_set(std::move(positions), len, TheoremId::PriorCorollary);
}

/// Minimal attractor of phi^n(0) for binary non-simple Parry parameters:
/// { sum_{j<n} |phi^j(0)| - 1, |phi^n(0)| - sum_{0<j<n} |phi^j(1)| - 1 }.
inline AttractorSet attractor_nonsimple(PrefixEngine& engine, int n) {
  if (engine.params().simple())
    throw PreconditionError("attractor_nonsimple needs non-simple binary parameters");
  if (n < 0) throw std::invalid_argument("level must be >= 0");
  if (n == 0) return detail::make_set({0}, 1, TheoremId::GammaTable);
  Index left = -1;
  for (int j = 0; j < n; ++j) left += engine.length_u(j);
  Index right = engine.length_u(n) - 1;
  for (int j = 1; j < n; ++j) right -= engine.length_image_of_one(j);
  return detail::make_set({left, right}, engine.length_u(n), TheoremId::NonSimpleBinary);
}

}  // namespace parry
