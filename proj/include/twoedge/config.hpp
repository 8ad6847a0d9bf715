/*
 * Run configuration: one flat JSON object.
 *
 *   task            spectrum | leaning | bg | torus | wigner | semiclassical | verify
 *   m1 m2 l1 l2     positive numbers (required)
 *   hbar            positive, default 1
 *   preset          dirichlet | neumann | segment | ring | pendant | rose
 *   unitary         16 [re, im] pairs, row major (instead of preset)
 *   kappa_max       scan bound; alternatively e_max or roots
 *   e_max           energy bound, kappa_max = sqrt(2 e_max) / hbar
 *   roots           number of positive roots to scan for
 *   bins            histogram bins (bg), default 64
 *   root_index      1-based eigenfunction index (wigner), default 1
 *   x_min x_max nx  Wigner x axis, default [-l1, l2] with 201 points
 *   p_min p_max np  momentum axis, default +-(hbar max(k1, k2) + 20) with 201 points
 *   target_phi1     torus target (semiclassical)
 *   target_phi2     optional; defaults to the first sheet of the branch
 *   delta           torus tolerance of the subsequence, default 1e-2
 *   energy          macroscopic energy E (semiclassical), default 0.5
 *   u_min u_max nu  u axis of W_E, default [-2, 2] with 201 points
 *   output          output directory, default "out"
 *   format          csv | json, default csv
 *   threads         worker threads, 0 = all cores (default)
 */
#ifndef TWOEDGE_CONFIG_HPP
#define TWOEDGE_CONFIG_HPP

#include <json.hpp>

#include <algorithm>
#include <array>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "catalog.hpp"
#include "graph.hpp"

namespace twoedge {

enum class Task { spectrum, leaning, bg, torus, wigner, semiclassical, verify };

inline constexpr std::array<std::pair<Task, std::string_view>, 7> kTaskNames = {{{Task::spectrum, "spectrum"},
                                                                                  {Task::leaning, "leaning"},
                                                                                  {Task::bg, "bg"},
                                                                                  {Task::torus, "torus"},
                                                                                  {Task::wigner, "wigner"},
                                                                                  {Task::semiclassical, "semiclassical"},
                                                                                  {Task::verify, "verify"}}};

inline std::string_view task_name(Task t) {
  for (const auto &[k, v] : kTaskNames)
    if (k == t) return v;
  return "";
}

inline std::optional<Task> task_from_name(std::string_view s) {
  for (const auto &[k, v] : kTaskNames)
    if (v == s) return k;
  return std::nullopt;
}

enum class OutputFormat { csv, json };

struct GraphSpec {
  double m1 = 0, m2 = 0, l1 = 0, l2 = 0, hbar = 1.0;
  TwoEdgeGraph graph() const { return {m1, m2, l1, l2, hbar}; }
};

struct RunConfig {
  std::optional<Task> task;
  GraphSpec graph;
  std::optional<PresetTag> preset;
  std::optional<Mat4> unitary;

  std::optional<double> kappa_max;
  std::optional<double> e_max;
  std::optional<long> roots;
  int bins = 64;
  long root_index = 1;
  std::optional<double> x_min, x_max, p_min, p_max, u_min, u_max;
  long nx = 201, np = 201, nu = 201;
  std::optional<double> target_phi1, target_phi2;
  double delta = 1e-2;
  double energy = 0.5;

  std::string output = "out";
  OutputFormat format = OutputFormat::csv;
  unsigned threads = 0;

  BoundaryCondition boundary_condition() const {
    if (preset) return make_preset(*preset).bc;
    return BoundaryCondition::from_unitary(*unitary);
  }
  std::string bc_label() const { return preset ? std::string(preset_name(*preset)) : "unitary"; }
};

namespace detail {

inline int line_of_offset(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

inline int line_of_key(std::string_view text, const std::string &key) {
  const auto pos = text.find("\"" + key + "\"");
  return pos == std::string_view::npos ? 0 : line_of_offset(text, pos);
}

} // namespace detail

/** \brief Parses and validates a configuration; see the header comment for the schema. */
inline RunConfig parse_config(std::string_view text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error &e) {
    throw ParseError(e.what(), detail::line_of_offset(text, e.byte > 0 ? e.byte - 1 : 0), "");
  }
  if (!j.is_object()) throw ParseError("top level must be an object", 1, "");

  static const std::set<std::string> known = {
      "task",   "m1",     "m2",  "l1",     "l2",     "hbar",       "preset",      "unitary", "kappa_max",
      "e_max",  "roots",  "bins", "root_index", "x_min", "x_max",   "nx",          "p_min",   "p_max",
      "np",     "target_phi1", "target_phi2", "delta", "energy", "u_min", "u_max", "nu", "output",
      "format", "threads"};
  for (const auto &[k, v] : j.items())
    if (!known.count(k)) throw ParseError("unknown field", detail::line_of_key(text, k), k);

  auto type_error = [&](const std::string &k, const char *want) {
    return ParseError(std::string("expected ") + want, detail::line_of_key(text, k), k);
  };
  auto number = [&](const std::string &k) -> std::optional<double> {
    if (!j.contains(k)) return std::nullopt;
    if (!j[k].is_number()) throw type_error(k, "a number");
    return j[k].get<double>();
  };
  auto integer = [&](const std::string &k) -> std::optional<long> {
    if (!j.contains(k)) return std::nullopt;
    if (!j[k].is_number_integer()) throw type_error(k, "an integer");
    return j[k].get<long>();
  };
  auto string = [&](const std::string &k) -> std::optional<std::string> {
    if (!j.contains(k)) return std::nullopt;
    if (!j[k].is_string()) throw type_error(k, "a string");
    return j[k].get<std::string>();
  };

  RunConfig c;
  if (auto t = string("task")) {
    c.task = task_from_name(*t);
    if (!c.task) throw ValidationError("task", "unknown task '" + *t + "'");
  }

  auto required_positive = [&](const char *k) {
    const auto v = number(k);
    if (!v) throw ValidationError(k, "missing");
    if (!(std::isfinite(*v) && *v > 0.0)) throw ValidationError(k, "must be positive");
    return *v;
  };
  c.graph.m1 = required_positive("m1");
  c.graph.m2 = required_positive("m2");
  c.graph.l1 = required_positive("l1");
  c.graph.l2 = required_positive("l2");
  if (auto h = number("hbar")) {
    if (!(std::isfinite(*h) && *h > 0.0)) throw ValidationError("hbar", "must be positive");
    c.graph.hbar = *h;
  }

  if (j.contains("preset") && j.contains("unitary")) throw ValidationError("bc", "give either preset or unitary");
  if (auto p = string("preset")) {
    c.preset = preset_from_name(*p);
    if (!c.preset) throw ValidationError("preset", "unknown preset '" + *p + "'");
  } else if (j.contains("unitary")) {
    const auto &u = j["unitary"];
    const int line = detail::line_of_key(text, "unitary");
    if (!u.is_array() || u.size() != 16) throw ParseError("expected 16 [re, im] pairs", line, "unitary");
    Mat4 m;
    for (int k = 0; k < 16; ++k) {
      const auto &e = u[static_cast<std::size_t>(k)];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        throw ParseError("entry " + std::to_string(k) + " is not an [re, im] pair", line, "unitary");
      m(k / 4, k % 4) = cplx(e[0].get<double>(), e[1].get<double>());
    }
    if (!is_unitary(m)) throw ValidationError("unitarity", "||U U^dagger - 1||_max exceeds 1e-12");
    c.unitary = m;
  } else {
    throw ValidationError("bc", "missing preset or unitary");
  }

  auto positive_opt = [&](const char *k) {
    const auto v = number(k);
    if (v && !(std::isfinite(*v) && *v > 0.0)) throw ValidationError(k, "must be positive");
    return v;
  };
  c.kappa_max = positive_opt("kappa_max");
  c.e_max = positive_opt("e_max");
  if (auto r = integer("roots")) {
    if (*r <= 0) throw ValidationError("roots", "must be positive");
    c.roots = *r;
  }
  if (auto b = integer("bins")) {
    if (*b < 8) throw ValidationError("bins", "at least 8");
    c.bins = static_cast<int>(*b);
  }
  if (auto r = integer("root_index")) {
    if (*r < 1) throw ValidationError("root_index", "1-based");
    c.root_index = *r;
  }
  c.x_min = number("x_min");
  c.x_max = number("x_max");
  c.p_min = number("p_min");
  c.p_max = number("p_max");
  c.u_min = number("u_min");
  c.u_max = number("u_max");
  for (auto [k, dst] : {std::pair{"nx", &c.nx}, std::pair{"np", &c.np}, std::pair{"nu", &c.nu}}) {
    if (auto v = integer(k)) {
      if (*v < 1) throw ValidationError(k, "at least 1");
      *dst = *v;
    }
  }
  c.target_phi1 = number("target_phi1");
  c.target_phi2 = number("target_phi2");
  if (auto d = positive_opt("delta")) c.delta = *d;
  if (auto e = positive_opt("energy")) c.energy = *e;
  if (auto o = string("output")) c.output = *o;
  if (auto f = string("format")) {
    if (*f == "csv") c.format = OutputFormat::csv;
    else if (*f == "json") c.format = OutputFormat::json;
    else throw ValidationError("format", "csv or json");
  }
  if (auto t = integer("threads")) {
    if (*t < 0) throw ValidationError("threads", "must be >= 0");
    c.threads = static_cast<unsigned>(*t);
  }
  return c;
}

/** \brief omega1 and omega2 of the configured graph. */
inline Frequencies config_frequencies(const RunConfig &c) { return frequencies(c.graph.graph()); }

} // namespace twoedge

#endif // TWOEDGE_CONFIG_HPP
