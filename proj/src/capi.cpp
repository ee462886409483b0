#include "nilcoupling.h"

#include "io.hpp"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <string>

namespace {

using namespace nilc;

thread_local std::string g_last_error;

char* dup_str(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

template <typename F>
int guard(F&& f) {
  try {
    f();
    return NC_OK;
  } catch (const SchemaError& e) {
    g_last_error = e.what();
    return NC_ERR_SCHEMA;
  } catch (const Json::exception& e) {
    g_last_error = e.what();
    return NC_ERR_SCHEMA;
  } catch (const InsufficientDataError& e) {
    g_last_error = e.what();
    return NC_ERR_INSUFFICIENT_DATA;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return NC_ERR_VALIDATION;
  }
}

const LayeredAlgebra& unwrap(const nc_algebra* a) {
  if (!a) throw SchemaError("null algebra handle");
  return *reinterpret_cast<const LayeredAlgebra*>(a);
}

Json parse_json(const char* text, const char* what) {
  if (!text) throw SchemaError(std::string("null ") + what);
  return Json::parse(text);
}

Law law_field(const Json& j, const char* key) {
  if (!j.contains(key)) return Law::original;
  const std::string s = j[key].get<std::string>();
  if (s == "original") return Law::original;
  if (s == "graded") return Law::graded;
  throw SchemaError(std::string("unknown law \"") + s + "\"");
}

int int_field(const Json& j, const char* key, int fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number_integer())
    throw SchemaError(std::string("field \"") + key + "\" must be an integer");
  return j[key].get<int>();
}

std::uint64_t seed_field(const Json& j) {
  if (!j.contains("seed") || !j["seed"].is_number())
    throw SchemaError("sampling request requires a numeric \"seed\"");
  return j["seed"].get<std::uint64_t>();
}

long long trials_field(const Json& j, long long fallback) {
  const long long n =
      j.contains("trials") ? j["trials"].get<long long>() : fallback;
  if (n < 1) throw SchemaError("\"trials\" must be positive");
  return n;
}

TilingSpec tiling_from(const LayeredAlgebra& alg, const Json& req,
                       const char* law_key) {
  const int depth = int_field(req, "depth", 8);
  if (depth < 0 || depth % 2 != 0)
    throw SchemaError("\"depth\" must be even and nonnegative");
  return make_tiling(alg, law_field(req, law_key), depth,
                     int_field(req, "bits", 16),
                     req.value("lattice", false));
}

std::vector<VecQ> generators_from(const Json& req, const TilingSpec& spec) {
  if (!req.contains("generators")) return default_generators(spec.alg());
  std::vector<VecQ> gens;
  for (const auto& g : req["generators"])
    gens.push_back(vec_from_json(g, spec.dim()));
  if (gens.empty()) throw SchemaError("\"generators\" must be nonempty");
  return gens;
}

Json word_to_json(const DigitWord& w) {
  Json rows = Json::array();
  for (const auto& lvl : w.levels) rows.push_back(vec_to_json(lvl));
  return rows;
}

DigitWord word_from_json(const Json& j, int dim) {
  if (!j.is_array() || j.empty())
    throw SchemaError("\"word\" must be a nonempty array of level rows");
  DigitWord w;
  for (const auto& row : j) w.levels.push_back(vec_from_json(row, dim));
  return w;
}

void emit(char** out, const Json& j) { *out = dup_str(j.dump(2) + "\n"); }

}  // namespace

extern "C" {

const char* nc_version(void) { return "nilcoupling/1"; }

const char* nc_last_error(void) { return g_last_error.c_str(); }

void nc_free_string(char* s) { std::free(s); }

int nc_algebra_parse(const char* json, nc_algebra** out) {
  return guard([&] {
    auto alg = algebra_from_json(parse_json(json, "algebra"));
    *out = reinterpret_cast<nc_algebra*>(new LayeredAlgebra(std::move(alg)));
  });
}

void nc_algebra_free(nc_algebra* a) {
  delete reinterpret_cast<LayeredAlgebra*>(a);
}

int nc_algebra_emit(const nc_algebra* a, char** json) {
  return guard([&] { emit(json, algebra_to_json(unwrap(a))); });
}

int nc_algebra_make(const char* spec_json, char** json) {
  return guard([&] {
    const Json spec = parse_json(spec_json, "make spec");
    const std::string kind = spec.value("kind", "");
    LayeredAlgebra alg;
    if (kind == "abelian")
      alg = layered(abelian(int_field(spec, "n", 0)));
    else if (kind == "filiform")
      alg = layered(filiform(int_field(spec, "m", 0)));
    else if (kind == "heisenberg")
      alg = layered(heisenberg());
    else if (kind == "sum")
      alg = layered(direct_sum(algebra_from_json(spec.at("a")).alg(),
                               algebra_from_json(spec.at("b")).alg()));
    else if (kind == "central_product") {
      const Json& tj = spec.at("theta");
      MatQ theta;
      for (const auto& row : tj) {
        VecQ r;
        for (const auto& e : row) r.push_back(rat_from_json(e));
        theta.push_back(std::move(r));
      }
      alg = layered(central_product(algebra_from_json(spec.at("a")).alg(),
                                    algebra_from_json(spec.at("b")).alg(),
                                    theta));
    } else if (kind == "gmn")
      alg = g_mn(int_field(spec, "m", 0), int_field(spec, "n", 0));
    else
      throw SchemaError("unknown algebra kind \"" + kind + "\"");
    emit(json, algebra_to_json(alg));
  });
}

int nc_algebra_check(const nc_algebra* a, char** json) {
  return guard([&] {
    const LayeredAlgebra& alg = unwrap(a);
    Json j;
    j["violations"] = validate(alg.alg());
    j["valid"] = j["violations"].empty();
    j["layers"] = alg.layers();
    j["graded"] = alg.graded();
    try {
      j["lcs"] = lower_central_series_dims(alg.alg());
      j["nilpotent"] = true;
      j["class"] = alg.cls();
      j["growth"] = growth_degree(alg);
    } catch (const NotNilpotentError& e) {
      j["nilpotent"] = false;
      j["valid"] = false;
      j["violations"].push_back(e.what());
    }
    emit(json, j);
  });
}

int nc_algebra_gr(const nc_algebra* a, char** json) {
  return guard([&] {
    const LayeredAlgebra& alg = unwrap(a);
    // The report is itself an ingestible algebra file.
    Json j = algebra_to_json(carnot_grading(alg));
    j["equal"] = alg.graded();
    emit(json, j);
  });
}

int nc_group_eval(const nc_algebra* a, const char* request, char** json) {
  return guard([&] {
    const LayeredAlgebra& alg = unwrap(a);
    const Json req = parse_json(request, "group request");
    Group grp(&alg, law_field(req, "law"));
    std::vector<GroupElement> args;
    for (const auto& v : req.at("args"))
      args.push_back(grp.element(vec_from_json(v, alg.dim())));
    const std::string op = req.value("op", "");
    GroupElement r;
    if (op == "mul") {
      if (args.empty()) throw SchemaError("\"mul\" needs arguments");
      r = args[0];
      for (std::size_t i = 1; i < args.size(); ++i) r = mul(r, args[i]);
    } else if (op == "inv") {
      if (args.size() != 1) throw SchemaError("\"inv\" needs one argument");
      r = inverse(args[0]);
    } else if (op == "comm") {
      if (args.size() < 2) throw SchemaError("\"comm\" needs two arguments");
      r = iterated_commutator(args);
    } else
      throw SchemaError("unknown group op \"" + op + "\"");
    Json j;
    j["result"] = vec_to_json(r.v);
    emit(json, j);
  });
}

int nc_tile_encode(const nc_algebra* a, const char* request, char** json) {
  return guard([&] {
    const LayeredAlgebra& alg = unwrap(a);
    const Json req = parse_json(request, "encode request");
    const TilingSpec spec = tiling_from(alg, req, "law");
    const VecQ v = vec_from_json(req.at("v"), alg.dim());
    const EncodeOutcome out = encode(spec, v, spec.depth);
    Json j;
    j["ok"] = out.ok();
    if (out.ok())
      j["word"] = word_to_json(*out.word);
    else
      j["required_depth"] = out.required_depth;
    emit(json, j);
  });
}

int nc_tile_decode(const nc_algebra* a, const char* request, char** json) {
  return guard([&] {
    const LayeredAlgebra& alg = unwrap(a);
    const Json req = parse_json(request, "decode request");
    const TilingSpec spec = tiling_from(alg, req, "law");
    Json j;
    j["v"] = vec_to_json(decode(spec, word_from_json(req.at("word"), alg.dim())));
    emit(json, j);
  });
}

int nc_folner_stats(const nc_algebra* a, const char* request, char** json) {
  return guard([&] {
    const LayeredAlgebra& alg = unwrap(a);
    const Json req = parse_json(request, "folner request");
    std::vector<int> ks;
    if (req.contains("ks"))
      for (const auto& k : req["ks"]) ks.push_back(k.get<int>());
    else
      for (int k = 0; k <= int_field(req, "kmax", 8); ++k) ks.push_back(k);
    TilingSpec spec = tiling_from(alg, req, "law");
    spec.depth = *std::max_element(ks.begin(), ks.end());
    const long long n = trials_field(req, 1000);
    const std::uint64_t seed = seed_field(req);
    const auto rows =
        folner_stats(spec, generators_from(req, spec), ks, n, seed);
    Json j;
    j["seed"] = seed;
    j["trials"] = n;
    j["rows"] = Json::array();
    for (const auto& r : rows)
      j["rows"].push_back({{"gen", r.gen},
                           {"k", r.k},
                           {"escapes", r.escapes},
                           {"trials", r.trials},
                           {"q_hat", r.q_hat},
                           {"ci_lo", r.ci_lo},
                           {"ci_hi", r.ci_hi},
                           {"provenance", "monte-carlo(" +
                                              std::to_string(seed) + "," +
                                              std::to_string(n) + ")"}});
    emit(json, j);
  });
}

int nc_couple_sample(const nc_algebra* g, const nc_algebra* h,
                     const char* request, char** csv) {
  return guard([&] {
    const Json req = parse_json(request, "sample request");
    const TilingSpec src = tiling_from(unwrap(g), req, "law_src");
    const TilingSpec dst = tiling_from(unwrap(h), req, "law_dst");
    const DigitMap map = req.value("map", "aligned") == std::string("scrambled")
                             ? DigitMap::scrambled
                             : DigitMap::aligned;
    const CouplingSpec spec =
        build_coupling(src, dst, map, req.value("scramble_level0", false));
    const long long n = trials_field(req, 1000);
    const std::uint64_t seed = seed_field(req);
    const auto samples =
        sample_cocycle(spec, generators_from(req, spec.src), n, seed);
    *csv = dup_str(samples_to_csv(samples, seed));
  });
}

int nc_couple_fit(const char* csv, const char* request, char** json) {
  return guard([&] {
    if (!csv) throw SchemaError("null sample CSV");
    const Json req = request ? parse_json(request, "fit request") : Json::object();
    const auto samples = samples_from_csv(csv);
    Json j;
    const ExponentFit fit = exponent_fit(samples);
    j["fit"] = {{"slope", fit.slope},
                {"intercept", fit.intercept},
                {"residual_rms", fit.residual_rms},
                {"theil_sen", fit.theil_sen},
                {"used", fit.used},
                {"distinct_k", fit.distinct_k},
                {"provenance", "least-squares over sample log"}};
    if (req.contains("p_grid")) {
      int kmax = 0;
      for (const auto& s : samples) kmax = std::max(kmax, s.k);
      const auto rows = moment_report(
          samples, req["p_grid"].get<std::vector<double>>(),
          int_field(req, "depth", kmax));
      j["moments"] = Json::array();
      for (const auto& r : rows)
        j["moments"].push_back({{"p", r.p},
                                {"truncations", r.truncations},
                                {"means", r.means},
                                {"ratios", r.ratios},
                                {"divergence_suspected", r.divergence_suspected}});
    }
    emit(json, j);
  });
}

int nc_couple_bounds(const nc_algebra* g, const nc_algebra* h,
                     const char* request, char** json) {
  return guard([&] {
    const Json req = parse_json(request, "bounds request");
    BoundsParams params;
    const std::string rel = req.value("relation", "unknown");
    if (rel == "same")
      params.relation = CarnotRelation::same;
    else if (rel == "different")
      params.relation = CarnotRelation::different;
    else if (rel == "unknown")
      params.relation = CarnotRelation::unknown;
    else
      throw SchemaError("unknown relation \"" + rel + "\"");
    if (req.contains("e")) params.e = rat_from_json(req["e"]);
    params.central_difference = req.value("central_difference", false);
    if (req.contains("family")) {
      const auto mn = req["family"].get<std::vector<int>>();
      if (mn.size() != 2) throw SchemaError("\"family\" must be [m, n]");
      params.family_mn = {mn[0], mn[1]};
    }
    Json j;
    j["bounds"] = Json::array();
    for (const auto& b : bounds_report(unwrap(g), unwrap(h), params))
      j["bounds"].push_back(
          {{"kind", b.kind}, {"value", b.value}, {"provenance", b.provenance}});
    emit(json, j);
  });
}

int nc_ext_check(const char* ext_json, char** json) {
  return guard([&] {
    const CentralExtension ext =
        extension_from_json(parse_json(ext_json, "extension"));
    Json j;
    j["violations"] = validate_extension(ext);
    j["valid"] = j["violations"].empty();
    j["class"] = extension_class(ext);
    emit(json, j);
  });
}

int nc_ext_psi(const char* ext_json, const char* request, char** json) {
  return guard([&] {
    const CentralExtension ext =
        extension_from_json(parse_json(ext_json, "extension"));
    const Json req = parse_json(request, "psi request");
    const int d = ext.base.dim();
    const VecQ g1 = vec_from_json(req.at("g1"), d);
    const VecQ g2 = vec_from_json(req.at("g2"), d);
    const std::string op = req.value("op", "psi");
    Rat value;
    if (op == "psi")
      value = psi(ext, g1, g2);
    else if (op == "pairing")
      value = commutator_pairing(ext, g1, g2);
    else if (op == "identity")
      value = cocycle_identity_residual(ext, g1, g2,
                                        vec_from_json(req.at("g3"), d));
    else
      throw SchemaError("unknown psi op \"" + op + "\"");
    Json j;
    j["value"] = rat_json(value);
    j["provenance"] = "computed-exact";
    emit(json, j);
  });
}

int nc_ext_probe(const char* ext_json, const char* request, char** json) {
  return guard([&] {
    const CentralExtension ext =
        extension_from_json(parse_json(ext_json, "extension"));
    const Json req = parse_json(request, "probe request");
    const long long n = trials_field(req, 200);
    const std::uint64_t seed = seed_field(req);
    const std::string kind = req.value("kind", "");
    ProbeResult r;
    if (kind == "growth")
      r = growth_bound_probe(ext, n, int_field(req, "box_log2", 10), seed);
    else if (kind == "continuity")
      r = continuity_probe(ext, int_field(req, "r_log2", 8),
                           int_field(req, "eps_log2", -4), n, seed);
    else
      throw SchemaError("unknown probe kind \"" + kind + "\"");
    Json j;
    j["sup"] = r.sup;
    j["sup_doubled"] = r.sup_doubled;
    j["ratio"] = r.ratio;
    j["trials"] = r.trials;
    j["provenance"] =
        "monte-carlo(" + std::to_string(seed) + "," + std::to_string(n) + ")";
    emit(json, j);
  });
}

int nc_ext_induce(const nc_algebra* src, const char* ext_json,
                  const char* request, char** json) {
  return guard([&] {
    const CentralExtension ext =
        extension_from_json(parse_json(ext_json, "extension"));
    const Json req = parse_json(request, "induce request");
    const TilingSpec src_spec = tiling_from(unwrap(src), req, "law_src");
    const TilingSpec dst_spec = tiling_from(ext.base, req, "law_dst");
    const DigitMap map = req.value("map", "aligned") == std::string("scrambled")
                             ? DigitMap::scrambled
                             : DigitMap::aligned;
    const CouplingSpec spec = build_coupling(src_spec, dst_spec, map, false);
    const long long n = trials_field(req, 1000);
    const std::uint64_t seed = seed_field(req);
    const auto est = induced_cocycle_mc(
        spec, ext, vec_from_json(req.at("g1"), src_spec.dim()),
        vec_from_json(req.at("g2"), src_spec.dim()), n, seed);
    Json j;
    j["mean"] = est.mean;
    j["ci_lo"] = est.ci_lo;
    j["ci_hi"] = est.ci_hi;
    j["used"] = est.used;
    j["excluded"] = est.excluded;
    j["experimental"] = est.experimental;
    j["provenance"] =
        "monte-carlo(" + std::to_string(seed) + "," + std::to_string(n) + ")";
    emit(json, j);
  });
}

}  // extern "C"
