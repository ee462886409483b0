// nilc: batch front door over the nilcoupling C API.
#include "nilcoupling.h"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using Json = nlohmann::json;

int g_rc = 0;

void fail(int rc, const std::string& msg) {
  Json err{{"error", msg}, {"code", rc}};
  std::fprintf(stderr, "%s\n", err.dump().c_str());
  g_rc = rc;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Output {
  std::string path;
  bool force = false;

  void add_flags(CLI::App* cmd) {
    cmd->add_option("-o,--out", path, "write here instead of stdout");
    cmd->add_flag("--force", force, "allow overwriting the output file");
  }

  bool write(const std::string& text) {
    if (path.empty()) {
      std::fputs(text.c_str(), stdout);
      return true;
    }
    if (!force && std::ifstream(path)) {
      fail(NC_ERR_SCHEMA, path + " exists; pass --force to overwrite");
      return false;
    }
    std::ofstream out(path);
    out << text;
    if (!out) {
      fail(NC_ERR_SCHEMA, "cannot write " + path);
      return false;
    }
    return true;
  }
};

// Runs a C API call and routes the output string or the error.
template <typename F>
void run(Output& out, F&& call) {
  char* result = nullptr;
  const int rc = call(&result);
  if (rc != NC_OK) {
    fail(rc, nc_last_error());
    return;
  }
  out.write(result);
  nc_free_string(result);
}

struct AlgebraHandle {
  nc_algebra* h = nullptr;
  ~AlgebraHandle() { nc_algebra_free(h); }
  bool load(const std::string& path) {
    try {
      const std::string text = read_file(path);
      const int rc = nc_algebra_parse(text.c_str(), &h);
      if (rc != NC_OK) {
        fail(rc, nc_last_error());
        return false;
      }
      return true;
    } catch (const std::exception& e) {
      fail(NC_ERR_SCHEMA, e.what());
      return false;
    }
  }
};

// "1,0,3/2" -> JSON array of rational strings
Json vec_arg(const std::string& s) {
  Json v = Json::array();
  std::istringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) v.push_back(tok);
  return v;
}

struct TileOpts {
  int depth = 8, bits = 16;
  bool lattice = false;
  std::string law = "original", law_dst;

  void add_flags(CLI::App* cmd, bool two_sided = false) {
    cmd->add_option("--depth", depth, "truncation depth K (even)");
    cmd->add_option("--bits", bits, "dyadic resolution of the base tile");
    cmd->add_flag("--lattice", lattice, "integer lattice model");
    cmd->add_option("--law", law, "original or graded")
        ->check(CLI::IsMember({"original", "graded"}));
    if (two_sided)
      cmd->add_option("--law-dst", law_dst, "target-side law, defaults to --law")
          ->check(CLI::IsMember({"original", "graded"}));
  }

  void fill(Json& req, const char* law_key = "law") const {
    req["depth"] = depth;
    req["bits"] = bits;
    req["lattice"] = lattice;
    req[law_key] = law;
  }

  std::string dst_law() const { return law_dst.empty() ? law : law_dst; }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact nilpotent-group tilings, couplings, and cocycles"};
  app.require_subcommand();

  // Shared option storage; each leaf reads what it declared.
  std::string file, file2, file3, law = "original", map = "aligned";
  std::string g1, g2, g3, vec, word_path, op = "psi", kind, relation = "unknown";
  std::string e_const;
  std::vector<std::string> args;
  std::vector<double> p_grid;
  std::vector<int> family;
  std::uint64_t seed = 0;
  long long trials = 1000;
  int kmax = 8, n_arg = 0, m_arg = 0, box_log2 = 10, r_log2 = 8, eps_log2 = -4;
  bool central_difference = false, scramble_level0 = false;
  TileOpts tile;
  Output out;

  auto* algebra = app.add_subcommand("algebra", "validate, grade, construct");
  auto* a_check = algebra->add_subcommand("check", "validation report");
  a_check->add_option("file", file)->required();
  out.add_flags(a_check);
  a_check->callback([&] {
    AlgebraHandle a;
    if (!a.load(file)) return;
    char* result = nullptr;
    const int rc = nc_algebra_check(a.h, &result);
    if (rc != NC_OK) {
      fail(rc, nc_last_error());
      return;
    }
    if (!Json::parse(result)["valid"].get<bool>()) g_rc = NC_ERR_VALIDATION;
    out.write(result);
    nc_free_string(result);
  });

  auto* a_gr = algebra->add_subcommand("gr", "associated Carnot grading");
  a_gr->add_option("file", file)->required();
  out.add_flags(a_gr);
  a_gr->callback([&] {
    AlgebraHandle a;
    if (!a.load(file)) return;
    run(out, [&](char** r) { return nc_algebra_gr(a.h, r); });
  });

  auto* a_make = algebra->add_subcommand("make", "emit a constructed algebra");
  a_make->add_option("kind", kind, "abelian|filiform|heisenberg|sum|central-product|gmn")
      ->required();
  a_make->add_option("args", args, "kind arguments (sizes or files)");
  out.add_flags(a_make);
  a_make->callback([&] {
    try {
      Json spec;
      if (kind == "abelian" || kind == "filiform" || kind == "gmn") {
        spec["kind"] = kind;
        if (args.empty()) throw std::runtime_error(kind + " needs a size");
        spec[kind == "abelian" ? "n" : "m"] = std::stoi(args.at(0));
        if (kind == "gmn") spec["n"] = std::stoi(args.at(1));
      } else if (kind == "heisenberg") {
        spec["kind"] = kind;
      } else if (kind == "sum" || kind == "central-product") {
        spec["kind"] = kind == "sum" ? "sum" : "central_product";
        spec["a"] = Json::parse(read_file(args.at(0)));
        spec["b"] = Json::parse(read_file(args.at(1)));
        if (spec["kind"] == "central_product")
          spec["theta"] = Json::parse(read_file(args.at(2)));
      } else
        throw std::runtime_error("unknown kind " + kind);
      run(out, [&](char** r) { return nc_algebra_make(spec.dump().c_str(), r); });
    } catch (const std::exception& e) {
      fail(NC_ERR_SCHEMA, e.what());
    }
  });

  auto* group = app.add_subcommand("group", "exact group arithmetic");
  for (const char* opname : {"mul", "inv", "comm"}) {
    auto* cmd = group->add_subcommand(opname, "BCH product");
    cmd->add_option("file", file)->required();
    cmd->add_option("vectors", args, "comma-separated rational vectors")
        ->required();
    cmd->add_option("--law", law)->check(CLI::IsMember({"original", "graded"}));
    out.add_flags(cmd);
    cmd->callback([&, opname] {
      AlgebraHandle a;
      if (!a.load(file)) return;
      Json req{{"op", opname}, {"law", law}, {"args", Json::array()}};
      for (const auto& v : args) req["args"].push_back(vec_arg(v));
      run(out, [&](char** r) {
        return nc_group_eval(a.h, req.dump().c_str(), r);
      });
    });
  }

  auto* tile_cmd = app.add_subcommand("tile", "digit normal forms");
  auto* t_enc = tile_cmd->add_subcommand("encode", "vector to digit word");
  t_enc->add_option("file", file)->required();
  t_enc->add_option("--vec", vec, "comma-separated rational vector")->required();
  tile.add_flags(t_enc);
  out.add_flags(t_enc);
  t_enc->callback([&] {
    AlgebraHandle a;
    if (!a.load(file)) return;
    Json req{{"v", vec_arg(vec)}};
    tile.fill(req);
    run(out, [&](char** r) { return nc_tile_encode(a.h, req.dump().c_str(), r); });
  });

  auto* t_dec = tile_cmd->add_subcommand("decode", "digit word to vector");
  t_dec->add_option("file", file)->required();
  t_dec->add_option("--word", word_path, "JSON file with the level rows")
      ->required();
  tile.add_flags(t_dec);
  out.add_flags(t_dec);
  t_dec->callback([&] {
    AlgebraHandle a;
    if (!a.load(file)) return;
    try {
      Json req{{"word", Json::parse(read_file(word_path))}};
      tile.fill(req);
      run(out, [&](char** r) {
        return nc_tile_decode(a.h, req.dump().c_str(), r);
      });
    } catch (const std::exception& e) {
      fail(NC_ERR_SCHEMA, e.what());
    }
  });

  auto* folner = app.add_subcommand("folner", "tile boundary statistics");
  auto* f_stats = folner->add_subcommand("stats", "escape probabilities");
  f_stats->add_option("file", file)->required();
  f_stats->add_option("--kmax", kmax);
  f_stats->add_option("--trials", trials);
  f_stats->add_option("--seed", seed)->required();
  tile.add_flags(f_stats);
  out.add_flags(f_stats);
  f_stats->callback([&] {
    AlgebraHandle a;
    if (!a.load(file)) return;
    Json req{{"kmax", kmax}, {"trials", trials}, {"seed", seed}};
    tile.fill(req);
    run(out, [&](char** r) {
      return nc_folner_stats(a.h, req.dump().c_str(), r);
    });
  });

  auto* couple = app.add_subcommand("couple", "tiling couplings and cocycles");
  auto* c_build = couple->add_subcommand("build", "check and echo a coupling");
  c_build->add_option("src", file)->required();
  c_build->add_option("dst", file2)->required();
  c_build->add_option("--map", map)->check(CLI::IsMember({"aligned", "scrambled"}));
  tile.add_flags(c_build, true);
  out.add_flags(c_build);
  c_build->callback([&] {
    AlgebraHandle a, b;
    if (!a.load(file) || !b.load(file2)) return;
    Json req{{"trials", 1}, {"seed", 0}, {"map", map}};
    tile.fill(req, "law_src");
    req["law_dst"] = tile.dst_law();
    char* csv = nullptr;
    const int rc = nc_couple_sample(a.h, b.h, req.dump().c_str(), &csv);
    if (rc != NC_OK) {
      fail(rc, nc_last_error());
      return;
    }
    nc_free_string(csv);
    req.erase("trials");
    req.erase("seed");
    Json echo{{"schema", "nilcoupling/1"}, {"src", file}, {"dst", file2},
              {"config", req}, {"buildable", true}};
    out.write(echo.dump(2) + "\n");
  });

  auto* c_sample = couple->add_subcommand("sample", "cocycle distance log");
  c_sample->add_option("src", file)->required();
  c_sample->add_option("dst", file2)->required();
  c_sample->add_option("--trials", trials);
  c_sample->add_option("--seed", seed)->required();
  c_sample->add_option("--map", map)->check(CLI::IsMember({"aligned", "scrambled"}));
  c_sample->add_flag("--scramble-level0", scramble_level0);
  tile.add_flags(c_sample, true);
  out.add_flags(c_sample);
  c_sample->callback([&] {
    AlgebraHandle a, b;
    if (!a.load(file) || !b.load(file2)) return;
    Json req{{"trials", trials},
             {"seed", seed},
             {"map", map},
             {"scramble_level0", scramble_level0}};
    tile.fill(req, "law_src");
    req["law_dst"] = tile.dst_law();
    run(out, [&](char** r) {
      return nc_couple_sample(a.h, b.h, req.dump().c_str(), r);
    });
  });

  auto* c_fit = couple->add_subcommand("fit", "exponent fit of a sample log");
  c_fit->add_option("csv", file)->required();
  c_fit->add_option("--p-grid", p_grid, "moment exponents to report");
  out.add_flags(c_fit);
  c_fit->callback([&] {
    try {
      const std::string csv = read_file(file);
      Json req = Json::object();
      if (!p_grid.empty()) req["p_grid"] = p_grid;
      run(out, [&](char** r) {
        return nc_couple_fit(csv.c_str(), req.dump().c_str(), r);
      });
    } catch (const std::exception& e) {
      fail(NC_ERR_SCHEMA, e.what());
    }
  });

  auto* c_bounds = couple->add_subcommand("bounds", "known L^p intervals");
  c_bounds->add_option("src", file)->required();
  c_bounds->add_option("dst", file2)->required();
  c_bounds->add_option("--relation", relation)
      ->check(CLI::IsMember({"same", "different", "unknown"}));
  c_bounds->add_option("--eG", e_const, "Cornulier constant e as p/q");
  c_bounds->add_flag("--central-difference", central_difference);
  c_bounds->add_option("--family", family, "m n of the G_{m,n} family")
      ->expected(2);
  out.add_flags(c_bounds);
  c_bounds->callback([&] {
    AlgebraHandle a, b;
    if (!a.load(file) || !b.load(file2)) return;
    Json req{{"relation", relation}, {"central_difference", central_difference}};
    if (!e_const.empty()) req["e"] = e_const;
    if (!family.empty()) req["family"] = family;
    run(out, [&](char** r) {
      return nc_couple_bounds(a.h, b.h, req.dump().c_str(), r);
    });
  });

  auto* ext = app.add_subcommand("ext", "central extensions by R");
  auto* e_check = ext->add_subcommand("check", "validation + class");
  e_check->add_option("file", file)->required();
  out.add_flags(e_check);
  auto* e_class = ext->add_subcommand("class", "nilpotency class");
  e_class->add_option("file", file)->required();
  out.add_flags(e_class);
  for (auto* cmd : {e_check, e_class})
    cmd->callback([&] {
      try {
        const std::string text = read_file(file);
        char* result = nullptr;
        const int rc = nc_ext_check(text.c_str(), &result);
        if (rc != NC_OK) {
          fail(rc, nc_last_error());
          return;
        }
        if (!Json::parse(result)["valid"].get<bool>()) g_rc = NC_ERR_VALIDATION;
        out.write(result);
        nc_free_string(result);
      } catch (const std::exception& e) {
        fail(NC_ERR_SCHEMA, e.what());
      }
    });

  auto* e_psi = ext->add_subcommand("psi", "group 2-cocycle values");
  e_psi->add_option("file", file)->required();
  e_psi->add_option("--g1", g1)->required();
  e_psi->add_option("--g2", g2)->required();
  e_psi->add_option("--g3", g3);
  e_psi->add_option("--op", op)->check(CLI::IsMember({"psi", "pairing", "identity"}));
  out.add_flags(e_psi);
  e_psi->callback([&] {
    try {
      const std::string text = read_file(file);
      Json req{{"op", op}, {"g1", vec_arg(g1)}, {"g2", vec_arg(g2)}};
      if (!g3.empty()) req["g3"] = vec_arg(g3);
      run(out, [&](char** r) {
        return nc_ext_psi(text.c_str(), req.dump().c_str(), r);
      });
    } catch (const std::exception& e) {
      fail(NC_ERR_SCHEMA, e.what());
    }
  });

  auto* e_probe = ext->add_subcommand("probe", "growth/continuity envelopes");
  e_probe->add_option("file", file)->required();
  e_probe->add_option("--kind", kind)->required()
      ->check(CLI::IsMember({"growth", "continuity"}));
  e_probe->add_option("--trials", trials);
  e_probe->add_option("--seed", seed)->required();
  e_probe->add_option("--box-log2", box_log2);
  e_probe->add_option("--r-log2", r_log2);
  e_probe->add_option("--eps-log2", eps_log2);
  out.add_flags(e_probe);
  e_probe->callback([&] {
    try {
      const std::string text = read_file(file);
      Json req{{"kind", kind},     {"trials", trials},   {"seed", seed},
               {"box_log2", box_log2}, {"r_log2", r_log2}, {"eps_log2", eps_log2}};
      run(out, [&](char** r) {
        return nc_ext_probe(text.c_str(), req.dump().c_str(), r);
      });
    } catch (const std::exception& e) {
      fail(NC_ERR_SCHEMA, e.what());
    }
  });

  auto* e_induce = ext->add_subcommand("induce", "Monte Carlo induced cocycle");
  e_induce->add_option("src", file)->required();
  e_induce->add_option("ext_file", file3)->required();
  e_induce->add_option("--g1", g1)->required();
  e_induce->add_option("--g2", g2)->required();
  e_induce->add_option("--trials", trials);
  e_induce->add_option("--seed", seed)->required();
  e_induce->add_option("--map", map)->check(CLI::IsMember({"aligned", "scrambled"}));
  tile.add_flags(e_induce, true);
  out.add_flags(e_induce);
  e_induce->callback([&] {
    AlgebraHandle a;
    if (!a.load(file)) return;
    try {
      const std::string text = read_file(file3);
      Json req{{"g1", vec_arg(g1)}, {"g2", vec_arg(g2)}, {"trials", trials},
               {"seed", seed},      {"map", map}};
      tile.fill(req, "law_src");
      req["law_dst"] = tile.dst_law();
      run(out, [&](char** r) {
        return nc_ext_induce(a.h, text.c_str(), req.dump().c_str(), r);
      });
    } catch (const std::exception& e) {
      fail(NC_ERR_SCHEMA, e.what());
    }
  });

  CLI11_PARSE(app, argc, argv);
  return g_rc;
}
