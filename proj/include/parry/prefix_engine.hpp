#pragma once

#include <deque>
#include <limits>
#include <string>
#include <vector>

#include "parry/errors.hpp"
#include "parry/params.hpp"
#include "parry/word.hpp"

namespace parry {

enum class LengthKind { U, Z, S, P, Q };
enum class SpecialPrefix { Z, S, P };

/// Generates prefixes u_n = phi^n(0) of the fixed point by the level
/// recurrence, memoizing every level, and answers all length bookkeeping
/// (U_n, Z_n, S_n, P_n, Q_n). Convention: u_n is the empty word and U_n = 0
/// for n < 0. Cache growth is single-writer; cached levels are immutable.
class PrefixEngine {
public:
  static constexpr Index kDefaultMaxWordLength = 10'000'000;

  explicit PrefixEngine(ParryParameters params,
                        Index max_word_length = kDefaultMaxWordLength)
      : params_(std::move(params)), cap_(max_word_length) {
    if (cap_ <= 0) throw std::invalid_argument("word length cap must be positive");
    u_.push_back(Word({0}, params_.alphabet_size()));
    ulen_.push_back(1);
    if (!params_.simple()) {
      v_.push_back(Word({1}, 2));
      vlen_.push_back(1);
    }
  }

  const ParryParameters& params() const { return params_; }
  Index max_word_length() const { return cap_; }

  /// phi(a). Simple: phi(i) = 0^{t_{i+1}} (i+1) for i < m-1, phi(m-1) = 0^{t_m}.
  /// Non-simple binary: phi(0) = 0^p 1, phi(1) = 0^q 1.
  Word morphism_image(Letter a) const {
    const Letter sigma = params_.alphabet_size();
    if (a < 0 || a >= sigma)
      throw std::invalid_argument("morphism_image: letter " + std::to_string(a) +
                                  " outside alphabet of size " + std::to_string(sigma));
    Word out({}, sigma);
    if (params_.simple()) {
      const int m = params_.m();
      for (int i = 0; i < params_.t[a]; ++i) out.push_back(0);
      if (a < m - 1) out.push_back(a + 1);
    } else {
      const int reps = a == 0 ? params_.p : params_.q;
      for (int i = 0; i < reps; ++i) out.push_back(0);
      out.push_back(1);
    }
    return out;
  }

  /// U_n = |phi^n(0)|, without materializing the word.
  Index length_u(int n) {
    if (n < 0) return 0;
    ensure_lengths(n);
    return ulen_[n];
  }

  /// |phi^n(1)| for non-simple binary parameters.
  Index length_image_of_one(int n) {
    if (!params_.simple()) {
      if (n < 0) return 0;
      ensure_lengths(n);
      return vlen_[n];
    }
    throw PreconditionError("length_image_of_one needs non-simple parameters");
  }

  /// phi^n(0), memoized; empty for n < 0.
  const Word& prefix_u(int n) {
    if (n < 0) return empty_;
    ensure_prefix(n);
    return u_[n];
  }

  /// phi^n(1) for non-simple binary parameters, memoized.
  const Word& image_of_one(int n) {
    if (params_.simple())
      throw PreconditionError("image_of_one needs non-simple parameters");
    if (n < 0) return empty_;
    ensure_prefix(n);
    return v_[n];
  }

  /// The length-len prefix of the fixed point: slices the smallest u_n with
  /// U_n >= len.
  Word prefix_of_length(Index len) {
    if (len < 1) throw std::invalid_argument("prefix_of_length needs len >= 1");
    int n = 0;
    while (length_u(n) < len) ++n;
    return prefix_u(n).prefix(len);
  }

  /// Largest n with U_n <= len (len >= 1).
  int level_of_length(Index len) {
    if (len < 1) throw std::invalid_argument("level_of_length needs len >= 1");
    int n = 0;
    while (length_u(n + 1) <= len) ++n;
    return n;
  }

  /// z_n, s_n or p_n: u_n u_{n-m}^{e} u_{n-m-1}^{t_2} ... u_{n-2m+1}^{t_m}
  /// with e = t_1 - t_m (z), t_1 - t_m + 1 (s), t_1 - 1 (p); factors with a
  /// negative level are empty.
  Word special_prefix(SpecialPrefix which, int n) {
    require_simple("special_prefix");
    const int m = params_.m();
    if (n < m) throw std::invalid_argument("special prefixes are defined for n >= m");
    Word out = prefix_u(n);
    out.append_power(prefix_u(n - m), head_exponent(which));
    for (int i = 2; i <= m; ++i)
      out.append_power(prefix_u(n - m - i + 1), params_.t[i - 1]);
    return out;
  }

  /// Length bookkeeping. Z/S/P/Q need simple parameters. Q_n is found by
  /// scanning the fixed point against the periodic extension of u_n; the scan
  /// is capped at U_{n+2}, which is past the first mismatch for every
  /// aperiodic fixed point.
  Index length(LengthKind which, int n) {
    if (which == LengthKind::U) return length_u(n);
    require_simple("length(Z|S|P|Q, n)");
    const int m = params_.m();
    switch (which) {
      case LengthKind::Z:
      case LengthKind::S: {
        if (n < m) throw std::invalid_argument("Z_n and S_n are defined for n >= m");
        Index len = length_u(n) +
                    head_exponent(which == LengthKind::Z ? SpecialPrefix::Z
                                                         : SpecialPrefix::S) *
                        length_u(n - m);
        for (int i = 2; i <= m; ++i) len += params_.t[i - 1] * length_u(n - m - i + 1);
        return len;
      }
      case LengthKind::P:
        if (n < 0) throw std::invalid_argument("P_n is defined for n >= 0");
        if (n <= m - 1) return length_u(n);
        return length_u(n) + length_u(n - m + 1) - length_u(n - m) - 1;
      case LengthKind::Q: {
        if (n < 0) throw std::invalid_argument("Q_n is defined for n >= 0");
        const Word& base = prefix_u(n);
        const Word& inside = prefix_u(n + 2);
        for (Index i = 0; i < inside.size(); ++i)
          if (inside[i] != base[i % base.size()]) return i;
        throw InternalError("Q_n scan exhausted u_{n+2} without finding a mismatch");
      }
      default:
        throw std::invalid_argument("unknown length kind");
    }
  }

private:
  void require_simple(const char* what) const {
    if (!params_.simple())
      throw PreconditionError(std::string(what) + " needs simple Parry parameters");
  }

  Index head_exponent(SpecialPrefix which) const {
    switch (which) {
      case SpecialPrefix::Z: return params_.t.front() - params_.t.back();
      case SpecialPrefix::S: return params_.t.front() - params_.t.back() + 1;
      case SpecialPrefix::P: return params_.t.front() - 1;
    }
    throw std::invalid_argument("unknown special prefix");
  }

  Index checked_mul_add(Index acc, Index a, Index b) const {
    Index prod = 0;
    if (__builtin_mul_overflow(a, b, &prod) || __builtin_add_overflow(acc, prod, &acc))
      throw ResourceCapError("prefix length exceeds 64-bit range");
    return acc;
  }

  void ensure_lengths(int n) {
    const int m = params_.m();
    while (static_cast<int>(ulen_.size()) <= n) {
      const int j = static_cast<int>(ulen_.size());
      if (params_.simple()) {
        // U_j = t_1 U_{j-1} + ... + t_m U_{j-m}, plus 1 for the trailing new
        // letter while j <= m-1.
        Index len = j <= m - 1 ? 1 : 0;
        for (int i = 1; i <= m; ++i)
          len = checked_mul_add(len, params_.t[i - 1], j - i >= 0 ? ulen_[j - i] : 0);
        ulen_.push_back(len);
      } else {
        Index u = checked_mul_add(vlen_[j - 1], params_.p, ulen_[j - 1]);
        Index v = checked_mul_add(vlen_[j - 1], params_.q, ulen_[j - 1]);
        ulen_.push_back(u);
        vlen_.push_back(v);
      }
    }
  }

  void ensure_prefix(int n) {
    ensure_lengths(n);
    const int m = params_.m();
    while (static_cast<int>(u_.size()) <= n) {
      const int j = static_cast<int>(u_.size());
      if (ulen_[j] > cap_)
        throw ResourceCapError("materializing u_" + std::to_string(j) + " needs " +
                               std::to_string(ulen_[j]) + " letters, cap is " +
                               std::to_string(cap_));
      Word w({}, params_.alphabet_size());
      w.letters.reserve(static_cast<std::size_t>(ulen_[j]));
      if (params_.simple()) {
        const int top = std::min(j, m);
        for (int i = 1; i <= top; ++i) w.append_power(u_[j - i], params_.t[i - 1]);
        if (j <= m - 1) w.push_back(j);
      } else {
        w.append_power(u_[j - 1], params_.p);
        w.append(v_[j - 1]);
        Word w1({}, 2);
        w1.letters.reserve(static_cast<std::size_t>(vlen_[j]));
        w1.append_power(u_[j - 1], params_.q);
        w1.append(v_[j - 1]);
        v_.push_back(std::move(w1));
      }
      u_.push_back(std::move(w));
    }
  }

  ParryParameters params_;
  Index cap_;
  Word empty_;
  // deques keep references from prefix_u/image_of_one valid while the cache
  // grows
  std::deque<Word> u_;
  std::deque<Word> v_;
  std::vector<Index> ulen_;
  std::vector<Index> vlen_;
};

}  // namespace parry
