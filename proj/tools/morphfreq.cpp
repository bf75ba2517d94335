// morphfreq: letter and factor frequencies of pure morphic words.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "morphfreq/morphfreq.hpp"

namespace {

using namespace morphfreq;
using nlohmann::json;

enum Exit : int {
  kOk = 0,
  kError = 1,
  kInconclusive = 2,
  kLevelCap = 3,
  kDegenerate = 4,
  kBigIntCap = 5,
};

Morphism load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_morphism(text.str());
}

Letter resolve_start(const Morphism& phi, const std::string& start) {
  if (!start.empty()) return phi.alphabet().letter(start);
  if (phi.start()) return *phi.start();
  throw Error("no start letter: pass --start or add a 'start:' line");
}

std::uint64_t parse_count(const std::string& text, const char* what) {
  const Rational r = parse_rational(text);
  if (r < 0 || denominator_of(r) != 1) throw InvalidArgument(std::string(what) + " must be a non-negative integer");
  return numerator_of(r).convert_to<std::uint64_t>();
}

std::string join(const Alphabet& alpha, const std::vector<Letter>& ls) {
  if (ls.empty()) return "∅";
  return alpha.format(ls);
}

std::string show(const Interval& i) {
  if (i.is_point()) return to_fraction_string(i.lo) + " (" + to_decimal_string(i.lo, 10) + ")";
  return "[" + to_decimal_string(i.lo, 10) + ", " + to_decimal_string(i.hi, 10) + "]";
}

struct Common {
  std::string file;
  std::string start;
  bool pretty = false;
};

int cmd_classify(const Common& c) {
  const Morphism phi = load(c.file);
  const LetterClassification cls = classify_letters(phi);
  const Alphabet& alpha = phi.alphabet();
  if (c.pretty) {
    std::cout << "bounded: " << join(alpha, cls.bounded) << "; unbounded: " << join(alpha, cls.unbounded)
              << "; k1=" << cls.k1 << "; primitive: " << (is_primitive(phi) ? "yes" : "no") << "\n";
    std::cout << "prolongable: " << join(alpha, prolongable_letters(phi)) << "\n";
    return kOk;
  }
  json doc = report::document(phi, {{"command", "classify"}});
  doc["classification"] = report::classification(phi, cls);
  std::cout << report::dump(doc);
  return kOk;
}

int cmd_letters(const Common& c, const std::string& tol_text) {
  const Morphism phi = load(c.file);
  const Letter b = resolve_start(phi, c.start);
  const Rational tol = parse_rational(tol_text);
  const LetterClassification cls = classify_letters(phi);
  const FrequencyVector fv = letter_frequencies(phi, b, tol);
  const Alphabet& alpha = phi.alphabet();
  if (c.pretty) {
    for (Letter a : alpha.letters()) std::cout << "alpha_" << alpha.token(a) << " = " << show(fv[a]) << "\n";
    std::cout << "alpha (bounded mass) = " << show(bounded_mass(fv, cls)) << "\n";
    std::cout << "method: " << to_string(fv.method) << "; diagnostic: " << to_string(fv.diagnostic) << "\n";
  } else {
    json doc = report::document(phi, {{"command", "letters"},
                                      {"start", alpha.token(b)},
                                      {"tol", report::rational(tol)}});
    doc["classification"] = report::classification(phi, cls);
    doc["letters"] = report::letters(phi, fv, cls);
    std::cout << report::dump(doc);
  }
  return fv.converged() ? kOk : kInconclusive;
}

int cmd_factor_freq(const Common& c, const std::string& factor_text, const std::string& tol_text,
                    std::uint64_t max_level, const std::string& empirical_text) {
  const Morphism phi = load(c.file);
  const Letter b = resolve_start(phi, c.start);
  const Word v = phi.alphabet().parse_word(factor_text);
  if (v.empty()) throw InvalidArgument("--factor needs at least one letter");
  EstimateOptions opts;
  opts.tol = parse_rational(tol_text);
  opts.max_level = max_level;
  if (!empirical_text.empty()) opts.empirical_check = parse_count(empirical_text, "--empirical");

  LetterFrequencyOptions lopts;
  lopts.cross_check_length = 0;
  const FrequencyVector fv = letter_frequencies(phi, b, Rational(opts.tol / 64), lopts);
  const LetterClassification cls = classify_letters(phi);
  const FactorFrequencyReport r = estimate_frequency(phi, b, v, opts, fv, cls);

  if (c.pretty) {
    std::cout << "factor: " << phi.alphabet().format(v) << "\n";
    std::cout << "verdict: " << to_string(r.verdict) << (r.heuristic ? " (heuristic)" : "") << "\n";
    std::cout << "estimate: " << show(r.estimate) << "\n";
    std::cout << "midpoint: " << to_decimal_string(r.estimate.midpoint(), 10) << "\n";
    if (const auto* last = r.final_level()) {
      std::cout << "final level: " << last->c.level << "; C = " << show(last->c.value);
      if (last->bound) std::cout << "; bound = " << to_decimal_string(last->bound->bound, 10);
      std::cout << "\n";
    }
    if (r.empirical) {
      std::cout << "empirical ratio at n=" << r.empirical->last().n << ": "
                << to_decimal_string(r.empirical->last().ratio, 10)
                << (r.empirical_consistent.value_or(false) ? " (consistent)" : " (INCONSISTENT)") << "\n";
    }
    if (!r.note.empty()) std::cout << "note: " << r.note << "\n";
  } else {
    json params = {{"command", "factor-freq"},
                   {"start", phi.alphabet().token(b)},
                   {"factor", phi.alphabet().format(v)},
                   {"tol", report::rational(opts.tol)},
                   {"max_level", max_level},
                   {"empirical", opts.empirical_check ? json(*opts.empirical_check) : json(nullptr)}};
    json doc = report::document(phi, params);
    doc["classification"] = report::classification(phi, cls);
    doc["letters"] = report::letters(phi, fv, cls);
    doc["factors"].push_back(report::factor(phi, r));
    std::cout << report::dump(doc);
  }
  switch (r.verdict) {
    case Verdict::converged: return kOk;
    case Verdict::level_cap_reached: return kLevelCap;
    case Verdict::degenerate_support: return kDegenerate;
  }
  return kError;
}

int cmd_verify(const Common& c, std::size_t max_len, const std::string& prefix_text, const std::string& tol_text,
               std::uint64_t max_level) {
  const Morphism phi = load(c.file);
  const Letter b = resolve_start(phi, c.start);
  const std::uint64_t n = parse_count(prefix_text, "--prefix");
  const Rational tol = parse_rational(tol_text);
  LetterFrequencyOptions lopts;
  lopts.cross_check_length = 0;
  const FrequencyVector fv = letter_frequencies(phi, b, Rational(tol / 64), lopts);
  const LetterClassification cls = classify_letters(phi);
  const VerificationResult result = verify_factors(phi, b, max_len, n, tol, max_level, fv, cls);

  if (c.pretty) {
    for (const auto& f : result.factors) {
      std::cout << (f.pass ? "pass " : "FAIL ") << phi.alphabet().format(f.report.factor, "")
                << "  empirical=" << to_decimal_string(f.empirical, 8)
                << "  estimate=" << to_decimal_string(f.report.estimate.midpoint(), 8)
                << "  deviation=" << to_decimal_string(f.deviation, 8)
                << "  allowance=" << to_decimal_string(f.allowance, 8) << "  " << to_string(f.report.verdict)
                << "\n";
    }
    std::cout << result.factors.size() << " factors, " << result.violations() << " violations\n";
  } else {
    json params = {{"command", "verify"},
                   {"start", phi.alphabet().token(b)},
                   {"max_len", max_len},
                   {"prefix", n},
                   {"tol", report::rational(tol)},
                   {"max_level", max_level},
                   {"violations", result.violations()}};
    json doc = report::document(phi, params);
    doc["classification"] = report::classification(phi, cls);
    doc["letters"] = report::letters(phi, fv, cls);
    for (const auto& f : result.factors) doc["factors"].push_back(report::factor_check(phi, f));
    std::cout << report::dump(doc);
  }
  return result.passed() ? kOk : kError;
}

int cmd_generate(const Common& c, const std::string& n_text, const std::string& format) {
  const Morphism phi = load(c.file);
  const Letter b = resolve_start(phi, c.start);
  const std::uint64_t n = parse_count(n_text, "--n");
  FixedPointStream s(phi, b);
  const Alphabet& alpha = phi.alphabet();
  std::string buffer;
  for (std::uint64_t i = 0; i < n; ++i) {
    const std::string& tok = alpha.token(s.next());
    if (format == "lines") {
      buffer += tok;
      buffer += '\n';
    } else {
      if (format == "tokens" && i > 0) buffer += ' ';
      buffer += tok;
    }
    if (buffer.size() > (1U << 16)) {
      std::cout << buffer;
      buffer.clear();
    }
  }
  if (format != "lines" && n > 0) buffer += '\n';
  std::cout << buffer;
  return kOk;
}

int cmd_random(std::uint64_t seed, std::size_t letters, std::size_t max_image) {
  RandomMorphismOptions opts;
  opts.max_letters = letters;
  opts.max_image = max_image;
  opts.prolongable_first = true;
  std::cout << serialize(random_morphism(seed, opts));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Letter and factor frequencies of pure morphic words"};
  app.set_version_flag("--version", std::string(morphfreq::kVersion));
  app.require_subcommand(1);

  Common common;
  const auto add_common = [&common](CLI::App* sub, bool with_start) {
    sub->add_option("file", common.file, "morphism file")->required();
    sub->add_flag("--pretty", common.pretty, "human-readable output instead of JSON");
    if (with_start) sub->add_option("--start", common.start, "start letter (overrides 'start:')");
  };

  auto* classify = app.add_subcommand("classify", "bounded/unbounded letters, k1, primitivity");
  add_common(classify, false);

  std::string tol_letters = "1e-6";
  auto* letters = app.add_subcommand("letters", "letter frequency enclosures");
  add_common(letters, true);
  letters->add_option("--tol", tol_letters, "interval width target");

  std::string factor, tol_factor = "1e-3", empirical;
  std::uint64_t max_level = 64;
  auto* factor_freq = app.add_subcommand("factor-freq", "frequency of one factor");
  add_common(factor_freq, true);
  factor_freq->add_option("--factor", factor, "factor as whitespace-separated letters")->required();
  factor_freq->add_option("--tol", tol_factor, "envelope width target");
  factor_freq->add_option("--max-level", max_level, "largest level M");
  factor_freq->add_option("--empirical", empirical, "prefix length for an empirical check");

  std::size_t max_len = 3;
  std::string prefix = "1e6", tol_verify = "1e-2";
  std::uint64_t verify_max_level = 64;
  auto* verify = app.add_subcommand("verify", "check every short factor against prefix counts");
  add_common(verify, true);
  verify->add_option("--max-len", max_len, "longest factor length");
  verify->add_option("--prefix", prefix, "prefix length n");
  verify->add_option("--tol", tol_verify, "estimate tolerance and empirical slack");
  verify->add_option("--max-level", verify_max_level, "largest level M");

  std::string n_letters = "100", format = "raw";
  auto* generate = app.add_subcommand("generate", "print a prefix of the fixed point");
  add_common(generate, true);
  generate->add_option("--n", n_letters, "number of letters");
  generate->add_option("--format", format, "raw | tokens | lines")
      ->check(CLI::IsMember({"raw", "tokens", "lines"}));

  std::uint64_t seed = 1;
  std::size_t rand_letters = 4, rand_image = 4;
  auto* random = app.add_subcommand("random-morphism", "print a seeded random prolongable morphism");
  random->add_option("--seed", seed, "RNG seed");
  random->add_option("--letters", rand_letters, "maximum alphabet size")->check(CLI::PositiveNumber);
  random->add_option("--max-image", rand_image, "maximum image length")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*classify) return cmd_classify(common);
    if (*letters) return cmd_letters(common, tol_letters);
    if (*factor_freq) return cmd_factor_freq(common, factor, tol_factor, max_level, empirical);
    if (*verify) return cmd_verify(common, max_len, prefix, tol_verify, verify_max_level);
    if (*generate) return cmd_generate(common, n_letters, format);
    if (*random) return cmd_random(seed, rand_letters, rand_image);
  } catch (const morphfreq::BigIntCapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBigIntCap;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
