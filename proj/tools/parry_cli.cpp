// Command line front end for Parry sequence generation, attractor
// construction, verification, sweeps and numeration queries.
//
// Exit codes: 0 ok, 1 verification false, 2 bad input, 3 resource cap,
// 4 theorem precondition unmet, 5 internal self-check failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "parry/parry.hpp"

using json = nlohmann::ordered_json;
using namespace parry;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerificationFalse = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitResourceCap = 3;
constexpr int kExitPrecondition = 4;
constexpr int kExitSelfCheck = 5;

struct FamilyFlags {
  std::vector<int> t;
  std::vector<int> nsp;

  ParryParameters resolve() const {
    if (!t.empty() && !nsp.empty())
      throw CLI::ValidationError("--t and --nsp are mutually exclusive");
    if (!t.empty()) return ParryParameters::simple_params(t);
    if (nsp.size() != 2)
      throw CLI::ValidationError("--nsp needs exactly two integers p,q");
    return ParryParameters::non_simple_binary(nsp[0], nsp[1]);
  }
};

void add_family_flags(CLI::App* cmd, FamilyFlags& family, bool simple_only = false) {
  if (simple_only) {
    cmd->add_option("--t", family.t, "simple Parry digits t_1,...,t_m")
        ->delimiter(',')
        ->required();
    return;
  }
  auto* group = cmd->add_option_group("family", "parameter family");
  group->add_option("--t", family.t, "simple Parry digits t_1,...,t_m")->delimiter(',');
  group->add_option("--nsp", family.nsp, "non-simple binary parameters p,q")
      ->delimiter(',');
  group->require_option(1);
}

Index word_cap_from_env() {
  if (const char* env = std::getenv("PARRY_MAX_WORD")) {
    char* end = nullptr;
    const long long cap = std::strtoll(env, &end, 10);
    if (end == env || *end != '\0' || cap <= 0)
      throw std::invalid_argument("PARRY_MAX_WORD must be a positive integer");
    return cap;
  }
  return PrefixEngine::kDefaultMaxWordLength;
}

// Lenient word input for `verify`: the standard digit / comma-separated text
// format, or arbitrary ASCII with one letter per byte ("ananas").
struct ParsedWord {
  Word word;
  bool raw_ascii = false;

  std::string render(const Word& factor) const {
    if (!raw_ascii) return word_to_text(factor);
    std::string s;
    for (Letter a : factor.letters) s.push_back(static_cast<char>(a));
    return s;
  }
};

ParsedWord parse_word_lenient(std::string text) {
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
  if (text.empty()) throw std::invalid_argument("empty word");
  const bool plain = text.find_first_not_of("0123456789,") == std::string::npos;
  if (plain) return {word_from_text(text), false};
  std::vector<Letter> letters;
  for (char c : text) {
    if (!std::isprint(static_cast<unsigned char>(c)))
      throw std::invalid_argument("word contains non-printable characters");
    letters.push_back(static_cast<unsigned char>(c));
  }
  return {Word(std::move(letters), 128), true};
}

json verdict_to_json(const Verdict& verdict, const ParsedWord& input) {
  json out;
  out["holds"] = verdict.holds;
  if (!verdict.holds) {
    json witness;
    witness["factor"] = input.render(*verdict.witness);
    json occs = json::array();
    for (const auto& occ : verdict.witness_occurrences)
      occs.push_back(json::array({occ.begin, occ.end}));
    witness["occurrences"] = std::move(occs);
    out["witness"] = std::move(witness);
  }
  out["stats"] = {{"distinct_factors", verdict.stats.distinct_factors},
                  {"checked", verdict.stats.checked}};
  return out;
}

AttractorSet dispatch_attractor(PrefixEngine& engine, const std::string& theorem,
                                std::optional<Index> len, std::optional<int> level) {
  if (!engine.params().simple()) {
    if (!theorem.empty() && theorem != "auto")
      throw PreconditionError("only the non-simple construction applies to --nsp");
    int n;
    if (level) {
      n = *level;
    } else {
      n = 0;
      while (engine.length_u(n) < *len) ++n;
      if (engine.length_u(n) != *len)
        throw PreconditionError("non-simple attractors exist only for lengths |phi^n(0)|");
    }
    return attractor_nonsimple(engine, n);
  }
  const Index length = len ? *len : engine.length_u(*level);
  if (theorem.empty() || theorem == "auto" || theorem == "general")
    return attractor_general(engine, length);
  if (theorem == "restricted") return attractor_restricted(engine, length);
  if (theorem == "binary") return attractor_binary(engine, length);
  if (theorem == "affine") return attractor_affine(engine, length);
  if (theorem == "prior") return attractor_prior(engine, length);
  throw CLI::ValidationError("unknown theorem '" + theorem + "'");
}

int cmd_gen(const FamilyFlags& family, std::optional<Index> len, std::optional<int> level) {
  PrefixEngine engine(family.resolve(), word_cap_from_env());
  const Word word = len ? engine.prefix_of_length(*len) : engine.prefix_u(*level);
  std::cout << word_to_text(word) << "\n";
  return kExitOk;
}

int cmd_attractor(const FamilyFlags& family, std::optional<Index> len,
                  std::optional<int> level, const std::string& theorem, bool verify) {
  PrefixEngine engine(family.resolve(), word_cap_from_env());
  const AttractorSet set = dispatch_attractor(engine, theorem, len, level);
  json out;
  out["length"] = set.word_length;
  out["positions"] = set.positions;
  out["theorem"] = theorem_name(set.source);
  if (verify) {
    const Verdict verdict = is_attractor(engine.prefix_of_length(set.word_length),
                                         set.positions);
    out["verified"] = verdict.holds;
    std::cout << out.dump() << "\n";
    if (!verdict.holds) {
      std::cerr << "self-check failed: theorem set rejected by the verifier\n";
      return kExitSelfCheck;
    }
    return kExitOk;
  }
  std::cout << out.dump() << "\n";
  return kExitOk;
}

int cmd_verify(const std::string& word_arg, const std::vector<Index>& gamma) {
  std::string text;
  if (word_arg == "-") {
    std::getline(std::cin, text);
  } else {
    std::ifstream in(word_arg);
    if (!in) throw std::invalid_argument("cannot open word file '" + word_arg + "'");
    std::getline(in, text);
  }
  const ParsedWord input = parse_word_lenient(std::move(text));
  const Verdict verdict = is_attractor(input.word, gamma);
  std::cout << verdict_to_json(verdict, input).dump() << "\n";
  return verdict.holds ? kExitOk : kExitVerificationFalse;
}

int cmd_sweep(int t_max, int m_max, int levels, std::optional<Index> minimality_len,
              bool quiet) {
  if (t_max < 1 || m_max < 1 || levels < 1)
    throw std::invalid_argument("sweep bounds must be positive");
  bool any_fail = false;
  std::size_t rows = 0;
  std::cout << "params\tlength\ttheorem\tsize\tverified";
  if (minimality_len) std::cout << "\tminimal_size";
  std::cout << "\tstatus\n";
  for (int m = 2; m <= m_max; ++m) {
    std::vector<int> t(m);
    long combos = 1;
    for (int i = 0; i < m; ++i) combos *= t_max + 1;
    for (long code = 0; code < combos; ++code) {
      long c = code;
      for (int i = m - 1; i >= 0; --i) {  // lexicographic order over t
        t[i] = static_cast<int>(c % (t_max + 1));
        c /= t_max + 1;
      }
      ParryParameters params;
      try {
        params = ParryParameters::simple_params(t);
      } catch (const std::invalid_argument&) {
        continue;
      }
      PrefixEngine engine(params, word_cap_from_env());
      const Index lmax = engine.length_u(levels);
      for (Index len = 1; len <= lmax; ++len) {
        const AttractorSet set = attractor_general(engine, len);
        const Word prefix = engine.prefix_of_length(len);
        const bool verified = is_attractor(prefix, set.positions).holds;
        bool pass = verified &&
                    set.size() == static_cast<std::size_t>(prefix.distinct_letter_count());
        std::optional<std::size_t> minimal_size;
        if (minimality_len && len <= *minimality_len) {
          minimal_size = minimal_attractor(prefix, *minimality_len).size;
          pass = pass && *minimal_size == set.size();
        }
        std::cout << params.describe() << "\t" << len << "\t" << theorem_name(set.source)
                  << "\t" << set.size() << "\t" << (verified ? "true" : "false");
        if (minimality_len) {
          std::cout << "\t";
          if (minimal_size) std::cout << *minimal_size;
        }
        std::cout << "\t" << (pass ? "PASS" : "FAIL") << "\n";
        any_fail |= !pass;
        ++rows;
      }
    }
  }
  if (rows == 0 && !quiet)
    std::cerr << "warning: no valid parameter sets in the requested range\n";
  return any_fail ? kExitVerificationFalse : kExitOk;
}

int cmd_fabre(const FamilyFlags& family, std::optional<Index> pos,
              const std::string& digits_arg) {
  PrefixEngine engine(family.resolve(), word_cap_from_env());
  json out;
  if (pos) {
    const DigitString digits = position_to_expansion(engine, *pos);
    out["position"] = *pos;
    out["digits"] = digits.to_text();
    out["admissible"] =
        parry_admissible(digits, RenyiExpansion::from_params(engine.params()));
  } else {
    const DigitString digits = DigitString::from_text(digits_arg);
    out["position"] = expansion_to_position(engine, digits);
    out["digits"] = digits.to_text();
    out["admissible"] = true;  // expansion_to_position rejects inadmissible input
  }
  std::cout << out.dump() << "\n";
  return kExitOk;
}

int cmd_beta(const FamilyFlags& family) {
  const ParryParameters params = family.resolve();
  const BetaValue beta = beta_root(params);
  json out;
  out["beta"] = beta.approx;
  out["polynomial"] = beta.polynomial;
  json deltas = json::array();
  const int count = params.simple() ? params.m() : 2;
  for (int k = 0; k < count; ++k) deltas.push_back(delta(params, k));
  out["deltas"] = std::move(deltas);
  out["d_star"] = d_star(RenyiExpansion::from_params(params)).describe();
  std::cout << out.dump() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parry sequences, their prefix attractors, and a verifier"};
  app.require_subcommand(1);
  bool quiet = false;
  app.add_flag("--quiet", quiet, "suppress warnings on stderr");

  FamilyFlags gen_family;
  std::optional<Index> gen_len;
  std::optional<int> gen_level;
  auto* gen = app.add_subcommand("gen", "generate a prefix of the fixed point");
  add_family_flags(gen, gen_family);
  auto* gen_len_opt = gen->add_option("--len", gen_len, "prefix length");
  auto* gen_level_opt = gen->add_option("--level", gen_level, "level n for phi^n(0)");
  gen_len_opt->excludes(gen_level_opt);

  FamilyFlags attr_family;
  std::optional<Index> attr_len;
  std::optional<int> attr_level;
  std::string theorem = "auto";
  bool verify = false;
  auto* attr = app.add_subcommand("attractor", "construct a theorem attractor");
  add_family_flags(attr, attr_family);
  auto* attr_len_opt = attr->add_option("--len", attr_len, "prefix length");
  auto* attr_level_opt = attr->add_option("--level", attr_level, "level n for phi^n(0)");
  attr_len_opt->excludes(attr_level_opt);
  attr->add_option("--theorem", theorem,
                   "auto|general|restricted|binary|affine|prior");
  attr->add_flag("--verify", verify, "run the independent verifier on the result");

  std::string verify_word;
  std::vector<Index> verify_gamma;
  auto* ver = app.add_subcommand("verify", "check a candidate attractor");
  ver->add_option("--word", verify_word, "word file, or - for stdin")->required();
  ver->add_option("--gamma", verify_gamma, "candidate positions")
      ->delimiter(',')
      ->required();

  int t_max = 2, m_max = 3, levels = 4;
  std::optional<Index> minimality_len;
  auto* sweep = app.add_subcommand("sweep", "verify attractors across a parameter range");
  sweep->add_option("--t-max", t_max, "largest digit value")->required();
  sweep->add_option("--m-max", m_max, "largest alphabet size")->required();
  sweep->add_option("--levels", levels, "sweep prefix lengths up to U_N")->required();
  sweep->add_option("--minimality-len", minimality_len,
                    "exact minimal attractor check for lengths up to K");

  FamilyFlags fabre_family;
  std::optional<Index> fabre_pos;
  std::string fabre_digits;
  auto* fabre = app.add_subcommand("fabre", "position <-> expansion correspondence");
  add_family_flags(fabre, fabre_family);
  auto* pos_opt = fabre->add_option("--pos", fabre_pos, "position n");
  auto* digits_opt = fabre->add_option("--digits", fabre_digits, "digit string");
  pos_opt->excludes(digits_opt);

  FamilyFlags beta_family;
  auto* beta = app.add_subcommand("beta", "numeric base data");
  add_family_flags(beta, beta_family);

  try {
    app.parse(argc, argv);
    if (gen->parsed()) {
      if (!gen_len && !gen_level)
        throw CLI::ValidationError("gen needs --len or --level");
      return cmd_gen(gen_family, gen_len, gen_level);
    }
    if (attr->parsed()) {
      if (!attr_len && !attr_level)
        throw CLI::ValidationError("attractor needs --len or --level");
      return cmd_attractor(attr_family, attr_len, attr_level, theorem, verify);
    }
    if (ver->parsed()) return cmd_verify(verify_word, verify_gamma);
    if (sweep->parsed())
      return cmd_sweep(t_max, m_max, levels, minimality_len, quiet);
    if (fabre->parsed()) {
      if (!fabre_pos && fabre_digits.empty())
        throw CLI::ValidationError("fabre needs --pos or --digits");
      return cmd_fabre(fabre_family, fabre_pos, fabre_digits);
    }
    if (beta->parsed()) return cmd_beta(beta_family);
    return kExitBadInput;
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kExitOk : kExitBadInput;
  } catch (const ResourceCapError& err) {
    std::cerr << "resource cap: " << err.what() << "\n";
    return kExitResourceCap;
  } catch (const PreconditionError& err) {
    std::cerr << "precondition: " << err.what() << "\n";
    return kExitPrecondition;
  } catch (const InternalError& err) {
    std::cerr << "internal self-check: " << err.what() << "\n";
    return kExitSelfCheck;
  } catch (const std::invalid_argument& err) {
    std::cerr << "bad input: " << err.what() << "\n";
    return kExitBadInput;
  }
}
