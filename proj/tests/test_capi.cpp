#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "nilcoupling.h"

#include "json.hpp"

#include <string>

using Json = nlohmann::json;

namespace {

const char* kHeis = R"({
  "schema": "nilcoupling/1", "dim": 3,
  "brackets": [{"a": 1, "b": 2, "out": [[3, "1"]]}]
})";

const char* kHeisExt = R"({
  "schema": "nilcoupling/1", "dim": 3, "layers": [2, 1],
  "brackets": [{"a": 1, "b": 2, "out": [[3, "1"]]}],
  "omega": [[1, 2, "1"]]
})";

struct Str {
  char* s = nullptr;
  ~Str() { nc_free_string(s); }
  std::string view() const { return s ? s : ""; }
};

struct Handle {
  nc_algebra* h = nullptr;
  ~Handle() { nc_algebra_free(h); }
};

}  // namespace

TEST_CASE("parse, check, emit round trip") {
  Handle a;
  REQUIRE(nc_algebra_parse(kHeis, &a.h) == NC_OK);
  Str report;
  REQUIRE(nc_algebra_check(a.h, &report.s) == NC_OK);
  CHECK(report.view().find("\"valid\": true") != std::string::npos);
  CHECK(report.view().find("\"class\": 2") != std::string::npos);
  CHECK(report.view().find("\"growth\": 4") != std::string::npos);

  Str emitted;
  REQUIRE(nc_algebra_emit(a.h, &emitted.s) == NC_OK);
  Handle b;
  CHECK(nc_algebra_parse(emitted.s, &b.h) == NC_OK);
}

TEST_CASE("schema errors set code 2") {
  nc_algebra* h = nullptr;
  CHECK(nc_algebra_parse("{ not json", &h) == NC_ERR_SCHEMA);
  CHECK(nc_algebra_parse(R"({"dim": 2})", &h) == NC_ERR_SCHEMA);
  CHECK(std::string(nc_last_error()).find("brackets") != std::string::npos);
  CHECK(nc_algebra_parse(
            R"({"dim": 2, "brackets": [{"a": 2, "b": 1, "out": []}]})", &h) ==
        NC_ERR_SCHEMA);
}

TEST_CASE("validation errors set code 1") {
  // [e1, e2] = e2 is not nilpotent, so no adapted basis exists
  nc_algebra* h = nullptr;
  CHECK(nc_algebra_parse(
            R"({"dim": 2, "brackets": [{"a": 1, "b": 2, "out": [[2, "1"]]}]})",
            &h) == NC_ERR_VALIDATION);
}

TEST_CASE("make and gr") {
  Str made;
  REQUIRE(nc_algebra_make(R"({"kind": "gmn", "m": 4, "n": 3})", &made.s) ==
          NC_OK);
  Handle g;
  REQUIRE(nc_algebra_parse(made.s, &g.h) == NC_OK);
  Str gr;
  REQUIRE(nc_algebra_gr(g.h, &gr.s) == NC_OK);
  Handle grh;
  CHECK(nc_algebra_parse(gr.s, &grh.h) == NC_OK);  // gr emits an algebra file
  CHECK(gr.view().find("\"equal\": false") != std::string::npos);

  Str bad;
  CHECK(nc_algebra_make(R"({"kind": "nope"})", &bad.s) == NC_ERR_SCHEMA);
}

TEST_CASE("group eval") {
  Handle a;
  REQUIRE(nc_algebra_parse(kHeis, &a.h) == NC_OK);
  Str r;
  REQUIRE(nc_group_eval(
              a.h,
              R"({"op": "comm", "args": [["1","0","0"], ["0","1","0"]]})",
              &r.s) == NC_OK);
  CHECK(Json::parse(r.view())["result"] ==
        Json::array({"0", "0", "1"}));
}

TEST_CASE("tile encode decode round trip") {
  Handle a;
  REQUIRE(nc_algebra_parse(kHeis, &a.h) == NC_OK);
  // (2, 1, -2) lies on the integer-matrix lattice: -2 + 2*1/2 is integral
  Str enc;
  REQUIRE(nc_tile_encode(
              a.h, R"({"v": ["2","1","-2"], "depth": 4, "lattice": true})",
              &enc.s) == NC_OK);
  const Json ej = Json::parse(enc.view());
  REQUIRE(ej["ok"] == true);
  Json dreq{{"word", ej["word"]}, {"lattice", true}};
  Str dec;
  REQUIRE(nc_tile_decode(a.h, dreq.dump().c_str(), &dec.s) == NC_OK);
  CHECK(Json::parse(dec.view())["v"] == Json::array({"2", "1", "-2"}));
}

TEST_CASE("sampling requires a seed and is deterministic") {
  Handle a;
  REQUIRE(nc_algebra_parse(kHeis, &a.h) == NC_OK);
  Str no_seed;
  CHECK(nc_folner_stats(a.h, R"({"kmax": 2, "trials": 10})", &no_seed.s) ==
        NC_ERR_SCHEMA);
  Str r1, r2;
  const char* req = R"({"kmax": 3, "trials": 100, "seed": 42})";
  REQUIRE(nc_folner_stats(a.h, req, &r1.s) == NC_OK);
  REQUIRE(nc_folner_stats(a.h, req, &r2.s) == NC_OK);
  CHECK(r1.view() == r2.view());
}

TEST_CASE("coupling sample and fit through the boundary") {
  Handle a;
  REQUIRE(nc_algebra_parse(kHeis, &a.h) == NC_OK);
  Str csv1, csv2;
  const char* req =
      R"({"trials": 200, "depth": 8, "seed": 11, "map": "scrambled"})";
  REQUIRE(nc_couple_sample(a.h, a.h, req, &csv1.s) == NC_OK);
  REQUIRE(nc_couple_sample(a.h, a.h, req, &csv2.s) == NC_OK);
  CHECK(csv1.view() == csv2.view());
  CHECK(csv1.view().rfind("seed,trial,gen,k,outcome,D", 0) == 0);

  Str fit;
  REQUIRE(nc_couple_fit(csv1.s, R"({"p_grid": [1.0]})", &fit.s) == NC_OK);
  CHECK(fit.view().find("\"slope\"") != std::string::npos);
  CHECK(fit.view().find("\"moments\"") != std::string::npos);

  Str too_few;
  CHECK(nc_couple_fit("seed,trial,gen,k,outcome,D\n1,0,0,2,ok,2\n", "{}",
                      &too_few.s) == NC_ERR_INSUFFICIENT_DATA);
}

TEST_CASE("bounds through the boundary") {
  Str r2j, r3j;
  REQUIRE(nc_algebra_make(R"({"kind": "abelian", "n": 2})", &r2j.s) == NC_OK);
  REQUIRE(nc_algebra_make(R"({"kind": "abelian", "n": 3})", &r3j.s) == NC_OK);
  Handle r2, r3;
  REQUIRE(nc_algebra_parse(r2j.s, &r2.h) == NC_OK);
  REQUIRE(nc_algebra_parse(r3j.s, &r3.h) == NC_OK);
  Str b;
  REQUIRE(nc_couple_bounds(r2.h, r3.h, R"({"relation": "different"})", &b.s) ==
          NC_OK);
  CHECK(b.view().find("[0, 2/3)") != std::string::npos);
  CHECK(b.view().find("Thm. 1.8") != std::string::npos);
}

TEST_CASE("extension calls") {
  Str chk;
  REQUIRE(nc_ext_check(kHeisExt, &chk.s) == NC_OK);
  CHECK(chk.view().find("\"valid\": true") != std::string::npos);
  CHECK(chk.view().find("\"class\": 2") != std::string::npos);

  Str p;
  REQUIRE(nc_ext_psi(kHeisExt,
                     R"({"op": "psi", "g1": ["1","0","0"], "g2": ["0","1","0"]})",
                     &p.s) == NC_OK);
  CHECK(p.view().find("\"value\": \"1/2\"") != std::string::npos);

  Str pr;
  REQUIRE(nc_ext_probe(kHeisExt,
                       R"({"kind": "growth", "trials": 50, "seed": 1})",
                       &pr.s) == NC_OK);
  CHECK(pr.view().find("\"ratio\"") != std::string::npos);
}
