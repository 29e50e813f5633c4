#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "parry/errors.hpp"
#include "parry/word.hpp"

namespace parry {

/// Occurrence of a factor as the position set {begin, ..., end-1}.
struct OccurrenceInterval {
  Index begin = 0;
  Index end = 0;

  bool operator==(const OccurrenceInterval&) const = default;
  bool contains_any(std::span<const Index> positions) const {
    for (Index g : positions)
      if (begin <= g && g < end) return true;
    return false;
  }
};

struct VerifierStats {
  std::size_t distinct_factors = 0;
  std::size_t checked = 0;
};

/// Outcome of an attractor check. When holds is false the witness is a factor
/// none of whose occurrences meets the candidate set, together with all of
/// its occurrence intervals.
struct Verdict {
  bool holds = true;
  std::optional<Word> witness;
  std::vector<OccurrenceInterval> witness_occurrences;
  VerifierStats stats;
};

enum class VerifyMode {
  Indexed,    ///< endpos-indexed check over a suffix automaton
  Reference,  ///< definition-literal double loop, kept as the oracle
};

/// All occurrence intervals of f in w, by direct scan.
inline std::vector<OccurrenceInterval> occurrences_of(const Word& w, const Word& f) {
  if (f.empty()) throw std::invalid_argument("occurrences_of: empty factor");
  std::vector<OccurrenceInterval> out;
  for (Index i = 0; i + f.size() <= w.size(); ++i) {
    bool match = true;
    for (Index j = 0; j < f.size() && match; ++j) match = w[i + j] == f[j];
    if (match) out.push_back({i, i + f.size()});
  }
  return out;
}

namespace detail {

constexpr Index kNoCost = std::numeric_limits<Index>::max() / 2;

/// Suffix automaton of a word with letters remapped to a dense alphabet.
/// Each state represents the distinct factors sharing one end-position set;
/// min_cost carries min over that set of (distance to the previous candidate
/// position + 1), the shortest factor length ending there that crosses the
/// candidate set.
class SuffixAutomaton {
public:
  explicit SuffixAutomaton(const Word& w) {
    Index n = w.size();
    std::vector<Letter> remap;
    dense_.reserve(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) {
      Letter a = w[i];
      if (a < 0) throw std::invalid_argument("negative letter in word");
      if (static_cast<std::size_t>(a) >= remap.size()) remap.resize(a + 1, -1);
      if (remap[a] < 0) remap[a] = sigma_++;
      dense_.push_back(remap[a]);
    }
    len_.assign(1, 0);
    link_.assign(1, -1);
    first_end_.assign(1, -1);
    trans_.assign(static_cast<std::size_t>(sigma_), -1);
    std::int32_t last = 0;
    for (Index i = 0; i < n; ++i) last = extend(last, dense_[static_cast<std::size_t>(i)], i);
  }

  std::size_t state_count() const { return len_.size(); }

  std::size_t distinct_factor_count() const {
    std::size_t total = 0;
    for (std::size_t s = 1; s < len_.size(); ++s)
      total += static_cast<std::size_t>(len_[s] - len_[link_[s]]);
    return total;
  }

  /// Shortest uncovered factor for the given candidate set, as
  /// (length, start of first occurrence); nullopt when every factor is
  /// covered. Ties break toward the earliest first occurrence.
  std::optional<std::pair<Index, Index>> first_uncovered(
      std::span<const Index> gamma) const {
    sort_states_by_len();
    const Index n = static_cast<Index>(dense_.size());
    std::vector<Index> cost(len_.size(), kNoCost);
    std::vector<Index> sorted_gamma(gamma.begin(), gamma.end());
    std::sort(sorted_gamma.begin(), sorted_gamma.end());
    std::size_t gi = 0;
    Index prev = -1;
    for (Index e = 0; e < n; ++e) {
      while (gi < sorted_gamma.size() && sorted_gamma[gi] <= e) prev = sorted_gamma[gi++];
      if (prev >= 0) cost[position_state_[static_cast<std::size_t>(e)]] = e - prev + 1;
    }
    // min over each endpos set = min over the suffix-link subtree
    for (auto it = by_len_desc_.begin(); it != by_len_desc_.end(); ++it) {
      const std::int32_t s = *it;
      if (cost[s] < cost[link_[s]]) cost[link_[s]] = cost[s];
    }
    std::optional<std::pair<Index, Index>> best;
    for (std::size_t s = 1; s < len_.size(); ++s) {
      const Index shortest = len_[link_[s]] + 1;
      if (cost[s] > shortest) {
        const Index start = first_end_[s] - shortest + 1;
        if (!best || std::pair(shortest, start) < *best) best = {shortest, start};
      }
    }
    return best;
  }

private:
  std::int32_t extend(std::int32_t last, Letter c, Index end_pos) {
    const std::int32_t cur = new_state(len_[last] + 1, end_pos);
    position_state_.push_back(cur);
    std::int32_t p = last;
    while (p != -1 && tr(p, c) == -1) {
      tr(p, c) = cur;
      p = link_[p];
    }
    if (p == -1) {
      link_[cur] = 0;
    } else {
      const std::int32_t q = tr(p, c);
      if (len_[p] + 1 == len_[q]) {
        link_[cur] = q;
      } else {
        const std::int32_t clone = new_state(len_[p] + 1, first_end_[q]);
        for (Letter a = 0; a < sigma_; ++a) tr(clone, a) = tr(q, a);
        link_[clone] = link_[q];
        while (p != -1 && tr(p, c) == q) {
          tr(p, c) = clone;
          p = link_[p];
        }
        link_[q] = clone;
        link_[cur] = clone;
      }
    }
    return cur;
  }

  std::int32_t new_state(Index l, Index first_end) {
    len_.push_back(l);
    link_.push_back(-1);
    first_end_.push_back(first_end);
    trans_.resize(trans_.size() + static_cast<std::size_t>(sigma_), -1);
    by_len_dirty_ = true;
    return static_cast<std::int32_t>(len_.size()) - 1;
  }

  std::int32_t& tr(std::int32_t s, Letter c) {
    return trans_[static_cast<std::size_t>(s) * sigma_ + static_cast<std::size_t>(c)];
  }
  std::int32_t tr(std::int32_t s, Letter c) const {
    return trans_[static_cast<std::size_t>(s) * sigma_ + static_cast<std::size_t>(c)];
  }

  void sort_states_by_len() const {
    if (!by_len_dirty_) return;
    // counting sort by len, emitted in decreasing order
    std::vector<std::size_t> buckets(dense_.size() + 2, 0);
    for (std::size_t s = 1; s < len_.size(); ++s) ++buckets[static_cast<std::size_t>(len_[s])];
    for (std::size_t i = 1; i < buckets.size(); ++i) buckets[i] += buckets[i - 1];
    by_len_desc_.assign(len_.size() - 1, 0);
    for (std::size_t s = 1; s < len_.size(); ++s)
      by_len_desc_[by_len_desc_.size() - (buckets[static_cast<std::size_t>(len_[s])]--)] =
          static_cast<std::int32_t>(s);
    by_len_dirty_ = false;
  }

  std::vector<Letter> dense_;
  Letter sigma_ = 0;
  std::vector<Index> len_;
  std::vector<std::int32_t> link_;
  std::vector<Index> first_end_;
  std::vector<std::int32_t> trans_;
  std::vector<std::int32_t> position_state_;  // state created for each end position
  mutable std::vector<std::int32_t> by_len_desc_;
  mutable bool by_len_dirty_ = true;
};

inline void check_candidate_positions(const Word& w, std::span<const Index> gamma) {
  for (Index g : gamma)
    if (g < 0 || g >= w.size())
      throw std::invalid_argument("candidate position " + std::to_string(g) +
                                  " outside word of length " + std::to_string(w.size()));
}

inline Verdict verdict_with_witness(const Word& w, Word factor, VerifierStats stats) {
  Verdict v;
  v.holds = false;
  v.witness_occurrences = occurrences_of(w, factor);
  v.witness = std::move(factor);
  v.stats = stats;
  return v;
}

inline Verdict is_attractor_indexed(const Word& w, std::span<const Index> gamma) {
  SuffixAutomaton sa(w);
  VerifierStats stats{sa.distinct_factor_count(), sa.state_count() - 1};
  auto uncovered = sa.first_uncovered(gamma);
  if (!uncovered) return Verdict{true, std::nullopt, {}, stats};
  auto [len, start] = *uncovered;
  return verdict_with_witness(w, w.substring(start, start + len), stats);
}

inline Verdict is_attractor_reference(const Word& w, std::span<const Index> gamma) {
  const Index n = w.size();
  VerifierStats stats;
  for (Index len = 1; len <= n; ++len) {
    for (Index start = 0; start + len <= n; ++start) {
      // count each distinct factor once, at its first occurrence
      bool first = true;
      for (Index i = 0; i < start && first; ++i) {
        bool same = true;
        for (Index j = 0; j < len && same; ++j) same = w[i + j] == w[start + j];
        first = !same;
      }
      if (!first) continue;
      ++stats.distinct_factors;
      bool covered = false;
      for (Index i = start; i + len <= n && !covered; ++i) {
        bool same = true;
        for (Index j = 0; j < len && same; ++j) same = w[i + j] == w[start + j];
        if (!same) continue;
        ++stats.checked;
        for (Index g : gamma)
          if (i <= g && g < i + len) {
            covered = true;
            break;
          }
      }
      if (!covered) return verdict_with_witness(w, w.substring(start, start + len), stats);
    }
  }
  return Verdict{true, std::nullopt, {}, stats};
}

}  // namespace detail

/// Decides whether gamma is a string attractor of w: every non-empty distinct
/// factor of w must have an occurrence whose interval contains an element of
/// gamma. The indexed mode groups factors by end-position set; the reference
/// mode is the definition-literal double loop the indexed mode is validated
/// against. Both report the shortest uncovered factor (earliest first
/// occurrence breaks ties) as witness.
inline Verdict is_attractor(const Word& w, std::span<const Index> gamma,
                            VerifyMode mode = VerifyMode::Indexed) {
  detail::check_candidate_positions(w, gamma);
  if (w.empty()) return Verdict{};
  return mode == VerifyMode::Indexed ? detail::is_attractor_indexed(w, gamma)
                                     : detail::is_attractor_reference(w, gamma);
}

inline Verdict is_attractor(const Word& w, std::initializer_list<Index> gamma,
                            VerifyMode mode = VerifyMode::Indexed) {
  return is_attractor(w, std::span<const Index>(gamma.begin(), gamma.size()), mode);
}

struct MinimalAttractorResult {
  std::size_t size = 0;
  std::vector<Index> positions;
};

/// Exact minimal attractor by exhaustive subset search. Starts at the letter
/// lower bound (every attractor contains a position of each distinct letter),
/// enumerates letter-covering subsets in lexicographic order, and grows the
/// size until a verifying set appears.
inline MinimalAttractorResult minimal_attractor(const Word& w, Index cap = 64) {
  if (w.size() > cap)
    throw ResourceCapError("minimal_attractor: word of length " + std::to_string(w.size()) +
                           " exceeds cap " + std::to_string(cap));
  const Index n = w.size();
  if (n == 0) return {};

  std::vector<Letter> remap;
  std::vector<int> dense(static_cast<std::size_t>(n));
  int sigma = 0;
  for (Index i = 0; i < n; ++i) {
    Letter a = w[i];
    if (static_cast<std::size_t>(a) >= remap.size()) remap.resize(a + 1, -1);
    if (remap[a] < 0) remap[a] = sigma++;
    dense[static_cast<std::size_t>(i)] = remap[a];
  }
  const std::uint64_t all_mask = sigma == 64 ? ~0ull : (1ull << sigma) - 1;
  std::vector<std::uint64_t> suffix_mask(static_cast<std::size_t>(n) + 1, 0);
  for (Index i = n - 1; i >= 0; --i)
    suffix_mask[i] = suffix_mask[i + 1] | (1ull << dense[static_cast<std::size_t>(i)]);

  detail::SuffixAutomaton sa(w);
  std::vector<Index> chosen;
  for (std::size_t target = static_cast<std::size_t>(sigma);
       target <= static_cast<std::size_t>(n); ++target) {
    chosen.clear();
    std::optional<std::vector<Index>> found;
    auto search = [&](auto&& self, Index next, std::uint64_t covered) -> bool {
      if (chosen.size() == target) {
        if (covered != all_mask) return false;
        if (!sa.first_uncovered(chosen)) {
          found = chosen;
          return true;
        }
        return false;
      }
      const Index slots = static_cast<Index>(target - chosen.size());
      for (Index i = next; n - i >= slots; ++i) {
        const std::uint64_t cov = covered | (1ull << dense[static_cast<std::size_t>(i)]);
        if ((cov | suffix_mask[i + 1]) != all_mask) continue;
        if (static_cast<Index>(std::popcount(all_mask & ~cov)) > slots - 1) continue;
        chosen.push_back(i);
        if (self(self, i + 1, cov)) return true;
        chosen.pop_back();
      }
      return false;
    };
    if (search(search, 0, 0) && found) return {target, *found};
  }
  throw InternalError("minimal_attractor: no attractor found (all positions must be one)");
}

/// Checks the power-transfer step: given x a power of z and gamma an attractor
/// of z, verifies that gamma with |z|-1 added is an attractor of x.
inline Verdict power_transfer_check(const Word& x, const Word& z,
                                    std::span<const Index> gamma) {
  if (!is_power_of(x, z))
    throw PreconditionError("power_transfer_check: x is not a power of z");
  if (!is_attractor(z, gamma).holds)
    throw PreconditionError("power_transfer_check: gamma is not an attractor of z");
  std::vector<Index> extended(gamma.begin(), gamma.end());
  extended.push_back(z.size() - 1);
  std::sort(extended.begin(), extended.end());
  extended.erase(std::unique(extended.begin(), extended.end()), extended.end());
  return is_attractor(x, extended);
}

inline Verdict power_transfer_check(const Word& x, const Word& z,
                                    std::initializer_list<Index> gamma) {
  return power_transfer_check(x, z, std::span<const Index>(gamma.begin(), gamma.size()));
}

}  // namespace parry
