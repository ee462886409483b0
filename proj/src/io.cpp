#include "io.hpp"

#include <cinttypes>
#include <cstdio>
#include <sstream>

namespace nilc {

namespace {

const char* kSchema = "nilcoupling/1";

[[noreturn]] void bad(const std::string& what) { throw SchemaError(what); }

int index_field(const Json& j, const char* key, int dim) {
  if (!j.contains(key) || !j[key].is_number_integer())
    bad(std::string("missing integer field \"") + key + "\"");
  const int v = j[key].get<int>();
  if (v < 1 || v > dim) bad(std::string("index \"") + key + "\" out of range");
  return v;
}

}  // namespace

std::string rat_json(const Rat& x) { return rat_str(x); }

Rat rat_from_json(const Json& j) {
  if (!j.is_string()) bad("rational must be a \"p/q\" string");
  try {
    return parse_rat(j.get<std::string>());
  } catch (const std::exception&) {
    bad("malformed rational \"" + j.get<std::string>() + "\"");
  }
}

VecQ vec_from_json(const Json& j, int dim) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    bad("vector must be an array of length " + std::to_string(dim));
  VecQ v;
  v.reserve(dim);
  for (const auto& e : j) v.push_back(rat_from_json(e));
  return v;
}

Json vec_to_json(const VecQ& v) {
  Json j = Json::array();
  for (const auto& x : v) j.push_back(rat_json(x));
  return j;
}

Json algebra_to_json(const LayeredAlgebra& a) {
  Json j;
  j["schema"] = kSchema;
  j["dim"] = a.dim();
  j["layers"] = a.layers();
  Json brackets = Json::array();
  for (const auto& p : a.alg().pairs()) {
    if (is_zero_vec(p.out)) continue;
    Json out = Json::array();
    for (int idx = 0; idx < a.dim(); ++idx)
      if (p.out[idx] != 0)
        out.push_back(Json::array({idx + 1, rat_json(p.out[idx])}));
    brackets.push_back({{"a", p.a + 1}, {"b", p.b + 1}, {"out", out}});
  }
  j["brackets"] = brackets;
  return j;
}

LayeredAlgebra algebra_from_json(const Json& j) {
  if (!j.is_object()) bad("algebra file must be a JSON object");
  if (j.contains("schema") && j["schema"] != kSchema)
    bad("unknown schema " + j["schema"].dump());
  if (!j.contains("dim") || !j["dim"].is_number_integer())
    bad("missing integer field \"dim\"");
  const int dim = j["dim"].get<int>();
  if (dim < 1) bad("\"dim\" must be positive");
  if (!j.contains("brackets") || !j["brackets"].is_array())
    bad("missing array field \"brackets\"");
  std::vector<Algebra::Pair> pairs;
  for (const auto& bj : j["brackets"]) {
    const int a = index_field(bj, "a", dim), b = index_field(bj, "b", dim);
    if (a >= b) bad("bracket pair must have a < b");
    if (!bj.contains("out") || !bj["out"].is_array())
      bad("bracket missing array field \"out\"");
    VecQ out = zero_vec(dim);
    for (const auto& e : bj["out"]) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer())
        bad("bracket component must be [index, \"p/q\"]");
      const int idx = e[0].get<int>();
      if (idx < 1 || idx > dim) bad("bracket component index out of range");
      out[idx - 1] = rat_from_json(e[1]);
    }
    pairs.push_back({a - 1, b - 1, std::move(out)});
  }
  Algebra alg(dim, std::move(pairs));
  if (!j.contains("layers")) return layered(alg);
  if (!j["layers"].is_array()) bad("\"layers\" must be an array");
  std::vector<int> layers;
  int total = 0;
  for (const auto& e : j["layers"]) {
    if (!e.is_number_integer() || e.get<int>() < 1)
      bad("\"layers\" entries must be positive integers");
    layers.push_back(e.get<int>());
    total += layers.back();
  }
  if (total != dim) bad("\"layers\" must sum to \"dim\"");
  return LayeredAlgebra(std::move(alg), std::move(layers));
}

Json extension_to_json(const CentralExtension& ext) {
  Json j = algebra_to_json(ext.base);
  Json om = Json::array();
  for (int a = 0; a < ext.base.dim(); ++a)
    for (int b = a + 1; b < ext.base.dim(); ++b)
      if (ext.omega[a][b] != 0)
        om.push_back(Json::array({a + 1, b + 1, rat_json(ext.omega[a][b])}));
  j["omega"] = om;
  return j;
}

CentralExtension extension_from_json(const Json& j) {
  LayeredAlgebra base = algebra_from_json(j);
  if (!j.contains("omega") || !j["omega"].is_array())
    bad("missing array field \"omega\"");
  const int d = base.dim();
  MatQ omega(d, zero_vec(d));
  for (const auto& e : j["omega"]) {
    if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() ||
        !e[1].is_number_integer())
      bad("\"omega\" entries must be [a, b, \"p/q\"]");
    const int a = e[0].get<int>(), b = e[1].get<int>();
    if (a < 1 || b < 1 || a > d || b > d || a >= b)
      bad("\"omega\" entry indices must satisfy 1 <= a < b <= dim");
    const Rat v = rat_from_json(e[2]);
    omega[a - 1][b - 1] = v;
    omega[b - 1][a - 1] = -v;
  }
  return make_extension(base, omega);
}

std::string samples_to_csv(const std::vector<CocycleSample>& samples,
                           std::uint64_t seed) {
  std::string out = "seed,trial,gen,k,outcome,D\n";
  char buf[160];
  for (const auto& s : samples) {
    std::snprintf(buf, sizeof buf, "%" PRIu64 ",%lld,%d,%d,%s,%.17g\n", seed,
                  s.trial, s.gen, s.k, s.ok ? "ok" : "depth_exceeded", s.d);
    out += buf;
  }
  return out;
}

std::vector<CocycleSample> samples_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "seed,trial,gen,k,outcome,D")
    bad("sample CSV must start with header seed,trial,gen,k,outcome,D");
  std::vector<CocycleSample> samples;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string f[6];
    for (int i = 0; i < 6; ++i)
      if (!std::getline(row, f[i], i < 5 ? ',' : '\n'))
        bad("sample CSV row with fewer than 6 fields");
    CocycleSample s;
    try {
      s.trial = std::stoll(f[1]);
      s.gen = std::stoi(f[2]);
      s.k = std::stoi(f[3]);
      s.d = std::stod(f[5]);
    } catch (const std::exception&) {
      bad("malformed sample CSV row: " + line);
    }
    if (f[4] == "ok")
      s.ok = true;
    else if (f[4] == "depth_exceeded")
      s.ok = false;
    else
      bad("unknown outcome \"" + f[4] + "\"");
    samples.push_back(s);
  }
  return samples;
}

}  // namespace nilc
