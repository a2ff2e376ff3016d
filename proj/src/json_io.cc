#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "lpfom/errors.h"
#include "lpfom/io.h"

namespace lpfom {
namespace {

using nlohmann::json;

double BoundValue(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "inf" || s == "+inf") return kInfinity;
    if (s == "-inf") return -kInfinity;
  }
  throw ParseError(0, "bound entries must be numbers or \"inf\"/\"-inf\"");
}

json BoundJson(double v) {
  if (v == kInfinity) return "inf";
  if (v == -kInfinity) return "-inf";
  return v;
}

std::vector<double> Vector(const json& doc, const char* key) {
  if (!doc.contains(key)) return {};
  const json& v = doc.at(key);
  if (!v.is_array()) throw ParseError(0, std::string("\"") + key + "\" must be an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (const json& e : v) {
    if (!e.is_number()) {
      throw ParseError(0, std::string("\"") + key + "\" must contain numbers");
    }
    out.push_back(e.get<double>());
  }
  return out;
}

ConstraintMatrix MatrixFrom(const json& doc, const char* key, int n,
                            Storage storage) {
  if (!doc.contains(key)) return ConstraintMatrix::Zero(0, n, storage);
  const json& m = doc.at(key);
  const int rows = m.at("rows").get<int>();
  const int cols = m.contains("cols") ? m.at("cols").get<int>() : n;
  std::vector<Triplet> t;
  if (m.contains("data")) {
    for (const json& e : m.at("data")) {
      if (!e.is_array() || e.size() != 3) {
        throw ParseError(0, std::string("\"") + key +
                                "\" data entries must be [row, col, value]");
      }
      t.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<double>()});
    }
  }
  try {
    return ConstraintMatrix::FromTriplets(rows, cols, t, storage);
  } catch (const DimensionError& e) {
    throw ParseError(0, std::string("\"") + key + "\": " + e.what());
  }
}

json MatrixJson(const ConstraintMatrix& m) {
  json data = json::array();
  for (const Triplet& t : m.ToTriplets()) data.push_back({t.row, t.col, t.value});
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

}  // namespace

LpProblem parse_problem_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(0, std::string("invalid JSON: ") + e.what());
  }
  try {
    LpProblem p;
    p.c = Vector(doc, "c");
    const int n = p.num_variables();
    p.storage = Storage::kSparseCsr;
    if (doc.contains("storage")) {
      const std::string s = doc.at("storage").get<std::string>();
      if (s == "dense") {
        p.storage = Storage::kDense;
      } else if (s != "sparse") {
        throw ParseError(0, "storage must be \"dense\" or \"sparse\"");
      }
    }
    p.A = MatrixFrom(doc, "A", n, p.storage);
    p.b = Vector(doc, "b");
    p.G = MatrixFrom(doc, "G", n, p.storage);
    p.h = Vector(doc, "h");
    p.l.assign(n, 0.0);
    p.u.assign(n, kInfinity);
    if (doc.contains("l")) {
      p.l.clear();
      for (const json& e : doc.at("l")) p.l.push_back(BoundValue(e));
    }
    if (doc.contains("u")) {
      p.u.clear();
      for (const json& e : doc.at("u")) p.u.push_back(BoundValue(e));
    }
    if (doc.contains("objective_offset")) {
      p.objective_offset = doc.at("objective_offset").get<double>();
    }
    if (doc.contains("name")) p.name = doc.at("name").get<std::string>();
    return p;
  } catch (const json::exception& e) {
    throw ParseError(0, std::string("malformed problem document: ") + e.what());
  }
}

std::string write_problem_json(const LpProblem& p) {
  json l = json::array();
  json u = json::array();
  for (double v : p.l) l.push_back(BoundJson(v));
  for (double v : p.u) u.push_back(BoundJson(v));
  json doc = {{"c", p.c},
              {"A", MatrixJson(p.A)},
              {"b", p.b},
              {"G", MatrixJson(p.G)},
              {"h", p.h},
              {"l", l},
              {"u", u},
              {"storage", p.storage == Storage::kDense ? "dense" : "sparse"}};
  if (p.objective_offset != 0.0) doc["objective_offset"] = p.objective_offset;
  if (!p.name.empty()) doc["name"] = p.name;
  return doc.dump() + "\n";
}

std::optional<ProblemFormat> format_from_path(const std::string& path) {
  auto ends_with = [&](const char* suffix) {
    const std::string s(suffix);
    return path.size() >= s.size() &&
           path.compare(path.size() - s.size(), s.size(), s) == 0;
  };
  if (ends_with(".json")) return ProblemFormat::kJson;
  if (ends_with(".mps") || ends_with(".MPS")) return ProblemFormat::kMps;
  return std::nullopt;
}

LpProblem read_problem_file(const std::string& path,
                            std::optional<ProblemFormat> format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  const ProblemFormat f =
      format.value_or(format_from_path(path).value_or(ProblemFormat::kMps));
  return f == ProblemFormat::kJson ? parse_problem_json(buf.str())
                                   : parse_mps(buf.str());
}

void write_problem_file(const LpProblem& p, const std::string& path,
                        ProblemFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << (format == ProblemFormat::kJson ? write_problem_json(p) : write_mps(p));
}

}  // namespace lpfom
