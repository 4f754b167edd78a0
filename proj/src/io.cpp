#include "qloop/io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "qloop/errors.hpp"

namespace qloop {

namespace {

template <typename T>
T get_as(const Json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid ") + what + ": " + e.what());
  }
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace

Json quiver_to_json(const Quiver& q) {
  Json b = Json::array();
  for (Eigen::Index i = 0; i < q.matrix().rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < q.matrix().cols(); ++j) row.push_back(q.matrix()(i, j));
    b.push_back(std::move(row));
  }
  return Json{{"n", q.size()}, {"b", std::move(b)}};
}

Quiver quiver_from_json(const Json& j) {
  const int n = get_as<int>(field(j, "n"), "vertex count");
  if (n < 0) throw ParseError("negative vertex count");
  if (j.contains("b")) {
    const auto rows = get_as<std::vector<std::vector<std::int64_t>>>(j.at("b"), "exchange matrix");
    if (rows.size() != static_cast<std::size_t>(n)) throw ParseError("exchange matrix must have n rows");
    IntMatrix b(n, n);
    for (int r = 0; r < n; ++r) {
      if (rows[static_cast<std::size_t>(r)].size() != static_cast<std::size_t>(n))
        throw ParseError("exchange matrix must have n columns");
      for (int c = 0; c < n; ++c) b(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    }
    return Quiver(std::move(b));
  }
  if (j.contains("arrows")) {
    std::vector<std::pair<int, int>> arrows;
    for (const auto& a : j.at("arrows")) {
      const auto pair = get_as<std::vector<int>>(a, "arrow");
      if (pair.size() != 2) throw ParseError("an arrow is a pair [i, j]");
      arrows.emplace_back(pair[0], pair[1]);
    }
    return Quiver::from_arrows(n, arrows);
  }
  throw ParseError("quiver needs either 'b' or 'arrows'");
}

Json steps_to_json(const Steps& steps) {
  Json out = Json::array();
  for (const Step& s : steps) {
    if (const auto* m = std::get_if<Mutate>(&s))
      out.push_back(Json{{"mutate", m->vertex}});
    else
      out.push_back(Json{{"relabel", std::get<Relabel>(s).sigma.images()}});
  }
  return out;
}

Steps steps_from_json(const Json& j, int n) {
  if (!j.is_array()) throw ParseError("'steps' must be an array");
  Steps out;
  for (const auto& s : j) {
    if (s.is_object() && s.size() == 1 && s.contains("mutate")) {
      const int v = get_as<int>(s.at("mutate"), "mutation vertex");
      if (v < 1 || v > n) throw InvalidArgument("mutation vertex " + std::to_string(v) + " out of range");
      out.emplace_back(Mutate{v});
    } else if (s.is_object() && s.size() == 1 && s.contains("relabel")) {
      auto images = get_as<std::vector<int>>(s.at("relabel"), "relabeling");
      if (images.size() != static_cast<std::size_t>(n)) throw InvalidArgument("relabeling size does not match quiver");
      out.emplace_back(Relabel{Permutation(std::move(images))});
    } else {
      throw ParseError("a step is {\"mutate\": v} or {\"relabel\": [...]}");
    }
  }
  return out;
}

Json loop_to_json(const MutationLoop& loop) {
  return Json{{"quiver", quiver_to_json(loop.initial())}, {"steps", steps_to_json(loop.steps())}};
}

MutationLoop loop_from_json(const Json& j) {
  Quiver q = quiver_from_json(field(j, "quiver"));
  Steps steps = steps_from_json(field(j, "steps"), q.size());
  return validate_loop(std::move(q), std::move(steps));
}

Json normal_form_to_json(const NormalForm& nf) {
  return Json{{"mutations", nf.mutations}, {"phi", nf.phi.images()}};
}

Json form_to_json(const ExponentForm& form) {
  Integer den = 1;
  for (Eigen::Index i = 0; i < form.gram.rows(); ++i)
    for (Eigen::Index k = 0; k < form.gram.cols(); ++k) den = lcm(den, denominator(form.gram(i, k)));
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < form.gram.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < form.gram.cols(); ++k) row.push_back(to_int64(numerator(form.gram(i, k) * den)));
    rows.push_back(std::move(row));
  }
  Json out{{"delta", form.delta}, {"gram_num", std::move(rows)}, {"gram_den", to_int64(den)},
           {"positivity", to_string(form.positivity.kind)}};
  if (form.positivity.kind == Positivity::CopositiveCertified)
    out["simplex_bound"] = to_fraction_string(form.positivity.bound);
  return out;
}

namespace {

Json coefficient_json(const Integer& c) {
  if (c <= std::numeric_limits<std::int64_t>::max() && c >= std::numeric_limits<std::int64_t>::min())
    return Json(c.convert_to<std::int64_t>());
  return Json(c.str());
}

Integer coefficient_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return Integer(j.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw ParseError("series coefficient must be an integer or a decimal string");
}

}  // namespace

Json series_to_json(const QSeries& s) {
  Json terms = Json::array();
  for (const auto& [e, c] : s.terms()) terms.push_back(Json::array({e, coefficient_json(c)}));
  return Json{{"delta", s.delta()}, {"cutoff", to_fraction_string(s.cutoff())}, {"terms", std::move(terms)}};
}

QSeries series_from_json(const Json& j) {
  const auto delta = get_as<std::int64_t>(field(j, "delta"), "delta");
  if (delta <= 0) throw ParseError("delta must be positive");
  QSeries s(delta, parse_rational(get_as<std::string>(field(j, "cutoff"), "cutoff")));
  for (const auto& t : field(j, "terms")) {
    if (!t.is_array() || t.size() != 2) throw ParseError("a term is [e, c]");
    const auto e = get_as<std::int64_t>(t[0], "exponent");
    if (e < 0 || e > s.max_numerator()) throw ParseError("term exponent outside the cutoff");
    s.add_term(e, coefficient_from_json(t[1]));
  }
  return s;
}

std::string series_to_text(const QSeries& s) {
  if (s.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : s.terms()) {
    const bool negative = c < 0;
    const Integer magnitude = negative ? Integer(-c) : c;
    if (first)
      os << (negative ? "-" : "");
    else
      os << (negative ? " - " : " + ");
    first = false;
    if (e == 0)
      os << magnitude;
    else
      os << magnitude << " * q^(" << e << "/" << s.delta() << ")";
  }
  return os.str();
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
}

}  // namespace qloop
