#pragma once

// JSON report documents. Every rational is written twice: exactly as a
// "p/q" string and as a rounded decimal string.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "morphfreq/factor_frequency.hpp"
#include "morphfreq/letter_spectrum.hpp"
#include "morphfreq/morphism.hpp"
#include "morphfreq/numeric.hpp"
#include "morphfreq/verify.hpp"

namespace morphfreq {

inline constexpr const char* kVersion = "0.1.0";

namespace report {

using nlohmann::json;

inline json rational(const Rational& r) {
  return {{"exact", to_fraction_string(r)}, {"decimal", to_decimal_string(r)}};
}

inline json interval(const Interval& i) { return {{"lo", rational(i.lo)}, {"hi", rational(i.hi)}}; }

inline json letters_of(const Alphabet& alpha, const std::vector<Letter>& ls) {
  json out = json::array();
  for (Letter a : ls) out.push_back(alpha.token(a));
  return out;
}

inline json morphism(const Morphism& phi) {
  json j;
  j["text"] = serialize(phi);
  j["alphabet"] = phi.alphabet().tokens();
  j["start"] = phi.start() ? json(phi.alphabet().token(*phi.start())) : json(nullptr);
  return j;
}

inline json classification(const Morphism& phi, const LetterClassification& cls) {
  const Alphabet& alpha = phi.alphabet();
  json j;
  j["bounded"] = letters_of(alpha, cls.bounded);
  j["unbounded"] = letters_of(alpha, cls.unbounded);
  j["k1"] = cls.k1;
  json orbits = json::object();
  for (const auto& [a, len] : cls.orbit_lengths) orbits[alpha.token(a)] = len;
  j["orbit_lengths"] = orbits;
  j["primitive"] = is_primitive(phi);
  j["prolongable"] = letters_of(alpha, prolongable_letters(phi));
  return j;
}

inline json letters(const Morphism& phi, const FrequencyVector& fv, const LetterClassification& cls) {
  const Alphabet& alpha = phi.alphabet();
  json j;
  j["method"] = to_string(fv.method);
  j["diagnostic"] = to_string(fv.diagnostic);
  j["tolerance"] = rational(fv.tolerance);
  j["exponent"] = fv.exponent;
  json freqs = json::object();
  for (Letter a : alpha.letters()) freqs[alpha.token(a)] = interval(fv[a]);
  j["frequencies"] = freqs;
  j["bounded_mass"] = interval(bounded_mass(fv, cls));
  if (fv.cross_check) {
    json cc;
    cc["n"] = fv.cross_check->n;
    cc["consistent"] = fv.cross_check->consistent;
    json ratios = json::object();
    for (Letter a : alpha.letters()) ratios[alpha.token(a)] = rational(fv.cross_check->ratios[a.id]);
    cc["ratios"] = ratios;
    j["cross_check"] = cc;
  } else {
    j["cross_check"] = nullptr;
  }
  j["note"] = fv.note;
  return j;
}

inline json factor(const Morphism& phi, const FactorFrequencyReport& r) {
  json j;
  j["factor"] = phi.alphabet().format(r.factor);
  j["verdict"] = to_string(r.verdict);
  j["heuristic"] = r.heuristic;
  j["estimate"] = interval(r.estimate);
  j["estimate_midpoint"] = rational(r.estimate.midpoint());
  json levels = json::array();
  for (const auto& lvl : r.levels) {
    json l;
    l["level"] = lvl.c.level;
    l["c"] = interval(lvl.c.value);
    l["envelope"] = interval(lvl.envelope);
    if (lvl.bound) {
      l["delta_star"] = rational(lvl.bound->delta_star);
      l["bound"] = rational(lvl.bound->bound);
      l["min_length"] = lvl.bound->min_length.str();
      l["vacuous"] = lvl.bound->vacuous;
    } else {
      l["delta_star"] = nullptr;
      l["bound"] = nullptr;
      l["min_length"] = nullptr;
      l["vacuous"] = nullptr;
    }
    levels.push_back(l);
  }
  j["levels"] = levels;
  if (r.empirical) {
    json e;
    e["burn_in"] = r.empirical->burn_in;
    json cps = json::array();
    for (const auto& cp : r.empirical->checkpoints) {
      cps.push_back({{"n", cp.n}, {"count", cp.count}, {"ratio", rational(cp.ratio)}});
    }
    e["checkpoints"] = cps;
    e["spread"] = rational(r.empirical->spread());
    e["consistent"] = r.empirical_consistent.value_or(false);
    j["empirical"] = e;
  } else {
    j["empirical"] = nullptr;
  }
  j["note"] = r.note;
  return j;
}

inline json factor_check(const Morphism& phi, const FactorCheck& c) {
  json j = factor(phi, c.report);
  j["verification"] = {{"count", c.count},
                       {"empirical", rational(c.empirical)},
                       {"deviation", rational(c.deviation)},
                       {"allowance", rational(c.allowance)},
                       {"pass", c.pass}};
  return j;
}

/// Skeleton with the six top-level keys; absent sections are null or empty.
inline json document(const Morphism& phi, const json& parameters) {
  json doc;
  doc["version"] = kVersion;
  doc["morphism"] = morphism(phi);
  doc["classification"] = nullptr;
  doc["letters"] = nullptr;
  doc["factors"] = json::array();
  doc["parameters"] = parameters;
  return doc;
}

inline std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace report
}  // namespace morphfreq
