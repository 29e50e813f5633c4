#include "parry/prefix_engine.hpp"

#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "parry/errors.hpp"

using namespace parry;
using parry::test::w;

namespace {

PrefixEngine engine_t(std::vector<int> t) {
  return PrefixEngine(ParryParameters::simple_params(std::move(t)));
}

PrefixEngine engine_nsp(int p, int q) {
  return PrefixEngine(ParryParameters::non_simple_binary(p, q));
}

// direct rewriting, independent of the level recurrence the engine uses
Word apply_morphism(const PrefixEngine& engine, const Word& word) {
  Word out({}, word.alphabet_size);
  for (Letter a : word.letters) out.append(engine.morphism_image(a));
  return out;
}

}  // namespace

TEST_CASE("morphism images") {
  auto e = engine_t({2, 1, 1});
  CHECK(e.morphism_image(0) == w("001", 3));
  CHECK(e.morphism_image(1) == w("02", 3));
  CHECK(e.morphism_image(2) == w("0", 3));
  CHECK_THROWS_AS(e.morphism_image(3), std::invalid_argument);

  auto nsp = engine_nsp(3, 1);
  CHECK(nsp.morphism_image(0) == w("0001", 2));
  CHECK(nsp.morphism_image(1) == w("01", 2));
  CHECK_THROWS_AS(nsp.morphism_image(-1), std::invalid_argument);
}

TEST_CASE("prefixes match the worked example for t=(2,1,1)") {
  auto e = engine_t({2, 1, 1});
  CHECK(word_to_text(e.prefix_u(0)) == "0");
  CHECK(word_to_text(e.prefix_u(1)) == "001");
  CHECK(word_to_text(e.prefix_u(2)) == "00100102");
  CHECK(word_to_text(e.prefix_u(3)) == "00100102001001020010");
  CHECK(e.prefix_u(-2).empty());
}

TEST_CASE("prefixes match the worked example for nsp=(3,1)") {
  auto e = engine_nsp(3, 1);
  CHECK(word_to_text(e.prefix_u(1)) == "0001");
  CHECK(word_to_text(e.prefix_u(2)) == "00010001000101");
  CHECK(word_to_text(e.image_of_one(1)) == "01");
}

TEST_CASE("prefix_of_length slices the fixed point") {
  auto e = engine_t({2, 1, 1});
  CHECK(word_to_text(e.prefix_of_length(8)) == "00100102");
  CHECK(word_to_text(e.prefix_of_length(1)) == "0");
  CHECK(word_to_text(engine_t({2, 2}).prefix_of_length(8)) == "00100100");
  CHECK_THROWS_AS(e.prefix_of_length(0), std::invalid_argument);
}

TEST_CASE("engine prefixes equal direct morphism rewriting") {
  for (auto t : {std::vector<int>{2, 1, 1}, {1, 1}, {2, 1, 2, 1}, {3, 0, 2}}) {
    auto e = engine_t(t);
    Word direct({0}, e.params().alphabet_size());
    for (int n = 1; n <= 6; ++n) {
      direct = apply_morphism(e, direct);
      REQUIRE(e.prefix_u(n) == direct);
    }
  }
  auto nsp = engine_nsp(3, 1);
  Word direct({0}, 2);
  for (int n = 1; n <= 6; ++n) {
    direct = apply_morphism(nsp, direct);
    REQUIRE(nsp.prefix_u(n) == direct);
  }
}

TEST_CASE("level recurrence holds in both branches") {
  for (auto t : {std::vector<int>{2, 1, 1}, {1, 1}, {2, 1, 2, 1}, {1, 1, 0, 1, 1}}) {
    auto e = engine_t(t);
    const int m = static_cast<int>(t.size());
    for (int n = 1; n <= m + 3; ++n) {
      Word expected({}, e.params().alphabet_size());
      for (int i = 1; i <= std::min(n, m); ++i)
        expected.append_power(e.prefix_u(n - i), t[i - 1]);
      if (n <= m - 1) expected.push_back(n);
      REQUIRE(e.prefix_u(n) == expected);
    }
  }
}

TEST_CASE("admissible digit tuples give prefixes of u_n") {
  // k_1..k_n with every shifted suffix strictly below t 0^w gives a prefix
  for (auto t : {std::vector<int>{2, 1, 1}, {1, 1}, {3, 0, 2}, {2, 1, 2, 1}}) {
    auto e = engine_t(t);
    const int n = 4;
    const int base = *std::max_element(t.begin(), t.end()) + 1;
    int combos = 1;
    for (int i = 0; i < n; ++i) combos *= base;
    std::size_t admitted = 0;
    for (int code = 0; code < combos; ++code) {
      std::vector<int> k(n);
      int c = code;
      for (int i = 0; i < n; ++i) {
        k[i] = c % base;
        c /= base;
      }
      bool admissible = true;
      for (int i = 0; i < n && admissible; ++i)
        admissible = detail::compare_zero_padded(
                         std::span<const int>(k.data() + i, k.size() - i), t) < 0;
      if (!admissible) continue;
      ++admitted;
      Word concat({}, e.params().alphabet_size());
      for (int i = 0; i < n; ++i) concat.append_power(e.prefix_u(n - 1 - i), k[i]);
      CHECK(e.prefix_u(n).has_prefix(concat));
    }
    CHECK(admitted > 1);
  }
}

TEST_CASE("u_{n+1} is a power of u_n from level m-1 on") {
  for (auto t : {std::vector<int>{2, 1, 1}, {2, 1, 2, 1}, {1, 1, 0, 1, 1}, {2, 2}}) {
    auto e = engine_t(t);
    const int m = static_cast<int>(t.size());
    for (int n = 0; n <= m + 2; ++n) {
      Word next = e.prefix_u(n + 1);
      if (n < m - 1) next.letters.pop_back();
      CHECK(is_power_of(next, e.prefix_u(n)));
    }
  }
}

TEST_CASE("non-simple prefix lemma, all seven statements") {
  for (auto [p, q] : {std::pair{3, 1}, {2, 1}, {4, 3}}) {
    auto e = engine_nsp(p, q);
    for (int k = 1; k <= 5; ++k) {
      const Word& u1 = e.prefix_u(k + 1);

      Word rhs({}, 2);  // (phi^k(0))^p phi^k(1)
      rhs.append_power(e.prefix_u(k), p);
      rhs.append(e.image_of_one(k));
      CHECK(u1 == rhs);

      CHECK(e.prefix_u(k).has_suffix(e.image_of_one(k)));

      Word desc({}, 2);  // phi^k(0) ... phi(0) 0
      for (int j = k; j >= 0; --j) desc.append(e.prefix_u(j));
      CHECK(u1.has_prefix(desc));
      CHECK(e.image_of_one(k + 1).has_prefix(desc));

      Word asc({}, 2);  // 1 phi(1) ... phi^k(1)
      for (int j = 0; j <= k; ++j) asc.append(e.image_of_one(j));
      CHECK(u1.has_suffix(asc));

      Word asc1({}, 2);  // phi(1) ... phi^k(1)
      for (int j = 1; j <= k; ++j) asc1.append(e.image_of_one(j));
      CHECK(e.prefix_u(k).has_suffix(asc1));

      Word both = asc1;  // phi(1)...phi^k(1) phi^k(0)...phi(0)
      for (int j = k; j >= 1; --j) both.append(e.prefix_u(j));
      CHECK(u1.has_factor(both));
    }
  }
}

TEST_CASE("length bookkeeping for t=(2,1,1)") {
  auto e = engine_t({2, 1, 1});
  CHECK(e.length_u(0) == 1);
  CHECK(e.length_u(1) == 3);
  CHECK(e.length_u(2) == 8);
  CHECK(e.length_u(3) == 20);
  CHECK(e.length_u(-1) == 0);
  CHECK(e.length(LengthKind::Q, 1) == 7);  // first mismatch against (001)^w
}

TEST_CASE("length bookkeeping for t=(2,1,2,1)") {
  auto e = engine_t({2, 1, 2, 1});
  const Index u6 = e.length_u(6);
  CHECK(e.length(LengthKind::Z, 6) == u6 + 13);
  CHECK(e.length(LengthKind::P, 6) == e.length_u(6) + e.length_u(3) - e.length_u(2) - 1);
  // z_6 = u_6 u_2 u_1 u_0^2
  Word z6 = e.prefix_u(6);
  z6.append(e.prefix_u(2));
  z6.append(e.prefix_u(1));
  z6.append_power(e.prefix_u(0), 2);
  CHECK(e.special_prefix(SpecialPrefix::Z, 6) == z6);
  CHECK(static_cast<Index>(z6.size()) == e.length(LengthKind::Z, 6));
}

TEST_CASE("special prefixes from the worked examples") {
  auto e302 = engine_t({3, 0, 2});
  CHECK(e302.special_prefix(SpecialPrefix::Z, 3) == concat(e302.prefix_u(3), e302.prefix_u(0)));
  CHECK(e302.length(LengthKind::Z, 3) == e302.length_u(3) + 1);

  auto e22 = engine_t({2, 2});
  CHECK(e22.special_prefix(SpecialPrefix::Z, 2) == e22.prefix_u(2));
  CHECK(e22.length(LengthKind::Z, 2) == e22.length_u(2));

  CHECK_THROWS_AS(e302.special_prefix(SpecialPrefix::Z, 2), std::invalid_argument);
  CHECK_THROWS_AS(engine_nsp(3, 1).special_prefix(SpecialPrefix::Z, 3), PreconditionError);
  CHECK_THROWS_AS(engine_nsp(3, 1).length(LengthKind::Z, 3), PreconditionError);
}

TEST_CASE("length ledger identities across a parameter matrix") {
  for (auto t : {std::vector<int>{2, 1, 1}, {1, 1}, {2, 2}, {2, 1, 2, 1}, {3, 0, 2},
                 {1, 1, 0, 1, 1}}) {
    auto e = engine_t(t);
    const int m = static_cast<int>(t.size());
    for (int n = m; n <= m + 4; ++n) {
      const Index U = e.length_u(n), Z = e.length(LengthKind::Z, n),
                  S = e.length(LengthKind::S, n), U1 = e.length_u(n + 1);
      CHECK(U <= Z);
      CHECK(Z < S);
      CHECK(S <= U1);
      CHECK(S == Z + e.length_u(n - m));
      if (n >= 2 * m - 1)
        CHECK(Z == U + e.length_u(n - m + 1) - t.back() * e.length_u(n - m));
      CHECK(static_cast<Index>(e.special_prefix(SpecialPrefix::Z, n).size()) == Z);
      CHECK(static_cast<Index>(e.special_prefix(SpecialPrefix::S, n).size()) == S);
      // p_n has length P_n below 2m-1 and P_n + 1 from there on
      const Index pn = e.special_prefix(SpecialPrefix::P, n).size();
      CHECK(pn == e.length(LengthKind::P, n) + (n >= 2 * m - 1 ? 1 : 0));
      // z_n and s_n are prefixes of the fixed point
      CHECK(e.prefix_of_length(S) == e.special_prefix(SpecialPrefix::S, n));
      CHECK(e.prefix_of_length(S).has_prefix(e.special_prefix(SpecialPrefix::Z, n)));
      // Q_n at least reaches the next level
      const Index Q = e.length(LengthKind::Q, n);
      CHECK(Q >= U1);
      CHECK(is_power_of(e.prefix_of_length(Q), e.prefix_u(n)));
    }
    for (int n = 0; n < m; ++n) {
      CHECK(e.length(LengthKind::P, n) == e.length_u(n));
      if (n < m - 1) CHECK(e.length(LengthKind::Q, n) >= e.length_u(n + 1) - 1);
    }
  }
}

TEST_CASE("non-simple level lengths follow the image recurrence") {
  auto e = engine_nsp(3, 1);
  for (int n = 0; n <= 6; ++n) {
    CHECK(e.length_u(n + 1) == 3 * e.length_u(n) + e.length_image_of_one(n));
    CHECK(e.length_u(n) == e.prefix_u(n).size());
  }
}

TEST_CASE("resource cap stops materialization") {
  PrefixEngine tiny(ParryParameters::simple_params({2, 1, 1}), 10);
  CHECK_NOTHROW(tiny.prefix_u(2));
  CHECK_THROWS_AS(tiny.prefix_u(3), ResourceCapError);
  CHECK_NOTHROW(tiny.length_u(40));  // lengths alone stay cheap
  CHECK_THROWS_AS(PrefixEngine(ParryParameters::simple_params({1, 1}), 0),
                  std::invalid_argument);
}
