#include "fgap/spec_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace fgap {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ParseError(path + ": " + what);
}

double get_real(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(path, "expected a finite number");
  return v;
}

cplx get_complex(const json& j, const std::string& path) {
  if (j.is_number()) return get_real(j, path);
  if (!j.is_array() || j.size() != 2)
    fail(path, "expected a complex number [re, im]");
  return {get_real(j[0], path + "[0]"), get_real(j[1], path + "[1]")};
}

int get_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

struct ParsedPoint {
  ProjPoint point = ProjPoint::infinity();
  int multiplicity = 1;
};

ParsedPoint get_point(const json& j, const std::string& path,
                      bool allow_infinity) {
  if (!j.is_object()) fail(path, "expected an object with \"lambda\"");
  ParsedPoint p;
  if (!j.contains("lambda")) fail(path + ".lambda", "missing");
  const json& l = j["lambda"];
  if (l.is_string()) {
    if (!allow_infinity || l.get<std::string>() != "inf")
      fail(path + ".lambda", allow_infinity ? "only the string \"inf\" is allowed"
                                            : "expected a complex number [re, im]");
  } else {
    p.point = ProjPoint::finite(get_complex(l, path + ".lambda"));
  }
  if (j.contains("multiplicity")) {
    p.multiplicity = get_int(j["multiplicity"], path + ".multiplicity");
    if (p.multiplicity < 1) fail(path + ".multiplicity", "must be >= 1");
  }
  for (const auto& [key, _] : j.items())
    if (key != "lambda" && key != "multiplicity")
      fail(path + "." + key, "unknown field");
  return p;
}

const json& point_list(const json& j, const std::string& path) {
  if (j.is_array()) return j;
  if (j.is_object() && j.contains("points") && j["points"].is_array())
    return j["points"];
  fail(path, "expected a list of points or {\"points\": [...]}");
}

std::vector<ParsedPoint> get_points(const json& j, const std::string& path,
                                    bool allow_infinity) {
  const json& list = point_list(j, path);
  const std::string base = list.is_array() && &list != &j ? path + ".points"
                                                          : path;
  std::vector<ParsedPoint> out;
  for (std::size_t i = 0; i < list.size(); ++i)
    out.push_back(
        get_point(list[i], base + "[" + std::to_string(i) + "]", allow_infinity));
  return out;
}

// Line and column of a byte offset, both 1-based.
std::string locate(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(locate(text, e.byte == 0 ? 0 : e.byte - 1) +
                     ": malformed JSON");
  }
}

}  // namespace

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (const unsigned char ch : bytes) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

SpecDocument parse_spec_document(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object()) fail("spec", "expected a JSON object");
  static const char* known[] = {"alpha", "beta",  "classes",    "poles", "sigma",
                                "tau",   "grid",  "tolerances", "seed"};
  for (const auto& [key, _] : j.items())
    if (std::find(std::begin(known), std::end(known), key) == std::end(known))
      fail("spec." + key, "unknown field");

  SpecDocument doc;
  doc.hash = fnv1a64(j.dump());
  if (j.contains("alpha")) doc.spec.alpha = get_complex(j["alpha"], "spec.alpha");
  if (j.contains("beta")) doc.spec.beta = get_complex(j["beta"], "spec.beta");

  if (j.contains("classes")) {
    const json& cls = j["classes"];
    if (!cls.is_array()) fail("spec.classes", "expected a list");
    for (std::size_t i = 0; i < cls.size(); ++i) {
      const std::string path = "spec.classes[" + std::to_string(i) + "]";
      std::vector<WeightedPoint> members;
      for (const auto& p : get_points(cls[i], path, false))
        members.push_back({p.point.value(), p.multiplicity});
      try {
        doc.spec.classes.emplace_back(std::move(members));
      } catch (const InvalidInput& e) {
        throw InvalidInput(path + ": " + e.what());
      }
    }
  }

  if (j.contains("poles")) {
    for (const auto& p : get_points(j["poles"], "spec.poles", true)) {
      doc.rr_divisor.entries.push_back({p.point, p.multiplicity});
      if (p.point.is_infinite())
        doc.pole_at_infinity = true;
      else
        doc.divisor.entries.push_back({p.point.value(), p.multiplicity});
    }
  }

  if (j.contains("sigma")) {
    if (!j["sigma"].is_boolean()) fail("spec.sigma", "expected true or false");
    doc.spec.sigma_declared = j["sigma"].get<bool>();
  }
  if (j.contains("tau") && !j["tau"].is_null())
    doc.spec.tau_param = get_real(j["tau"], "spec.tau");

  if (j.contains("grid")) {
    const json& g = j["grid"];
    if (!g.is_object()) fail("spec.grid", "expected an object");
    for (const auto& [key, val] : g.items()) {
      const std::string path = "spec.grid." + key;
      if (key == "x_min") doc.grid.x_min = get_real(val, path);
      else if (key == "x_max") doc.grid.x_max = get_real(val, path);
      else if (key == "y_min") doc.grid.y_min = get_real(val, path);
      else if (key == "y_max") doc.grid.y_max = get_real(val, path);
      else if (key == "nx") doc.grid.nx = get_int(val, path);
      else if (key == "ny") doc.grid.ny = get_int(val, path);
      else fail(path, "unknown field");
    }
    if (doc.grid.nx < 1) fail("spec.grid.nx", "must be >= 1");
    if (doc.grid.ny < 1) fail("spec.grid.ny", "must be >= 1");
  }

  if (j.contains("tolerances")) {
    const json& t = j["tolerances"];
    if (!t.is_object()) fail("spec.tolerances", "expected an object");
    for (const auto& [key, val] : t.items()) {
      const std::string path = "spec.tolerances." + key;
      double v = get_real(val, path);
      if (v <= 0.0) fail(path, "must be positive");
      if (key == "residual") doc.tolerances.residual = v;
      else if (key == "rank") doc.tolerances.rank = v;
      else if (key == "condition_cutoff") doc.tolerances.condition_cutoff = v;
      else fail(path, "unknown field");
    }
  }

  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer())
      fail("spec.seed", "expected a nonnegative integer");
    if (j["seed"].is_number_integer() && j["seed"].get<std::int64_t>() < 0)
      fail("spec.seed", "expected a nonnegative integer");
    doc.seed = j["seed"].get<std::uint64_t>();
  }
  return doc;
}

SpecDocument load_spec_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_spec_document(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

RRDivisor parse_rr_divisor(const std::string& text) {
  const json j = parse_json(text);
  RRDivisor d;
  for (const auto& p : get_points(j, "divisor", true))
    d.entries.push_back({p.point, p.multiplicity});
  return d;
}

}  // namespace fgap
