// ietpc: codings, complexity tables, constructions and certificates for
// interval exchanges and piecewise contractions.
//
// Exit status: 0 success, 1 invalid input or failed check, 2 inconclusive.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "ietpc/construct.hpp"
#include "ietpc/io.hpp"

using namespace ietpc;

namespace {

constexpr int kInconclusive = 2;

struct Options {
  std::string map;
  std::string x;
  std::string word;
  std::string seed;
  std::string output;
  std::string format = "plain";
  std::string shift = "0";
  std::size_t length = 0;
  int k_max = 10;
  std::size_t depth = 64;
  std::size_t samples = 20;
  std::size_t budget = 5000;
  std::size_t m = 50000;
  std::size_t grid = 100;
  long bits = 60;
  std::size_t max_bits = std::size_t{1} << 17;
  bool ball = false;
  bool refine = false;
  bool force = false;
};

void emit(const Options& o, const std::string& text) {
  if (o.output.empty()) {
    std::cout << text;
  } else {
    write_atomic(o.output, text);
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

OrbitOptions orbit_options(const Options& o) {
  OrbitOptions opts;
  opts.max_bits = o.max_bits;
  opts.ball_fallback = o.ball;
  opts.ball_precision = o.bits;
  return opts;
}

Iet load_iet(const std::string& path) {
  Map map = load_map(path);
  if (auto* t = std::get_if<Iet>(&map)) return std::move(*t);
  throw Error(ErrorKind::InvalidArgument, path + " is not an IET map");
}

PiecewiseContraction load_pc(const std::string& path) {
  Map map = load_map(path);
  if (auto* f = std::get_if<PiecewiseContraction>(&map)) return std::move(*f);
  throw Error(ErrorKind::InvalidArgument, path + " is not a PC map");
}

Word map_coding(const Options& o) {
  const Number x = Number::parse(o.x);
  const Map map = load_map(o.map);
  if (const auto* t = std::get_if<Iet>(&map)) return t->coding(x, o.length);
  const PcCoding c = coding(std::get<PiecewiseContraction>(map), x, o.length, orbit_options(o));
  if (c.approximate)
    std::cerr << R"({"warning":"approximate","detail":")" << c.undecided << " undecided letters\"}\n";
  return c.word;
}

int run_code(const Options& o) {
  emit(o, map_coding(o).to_text() + "\n");
  return 0;
}

int run_complexity(const Options& o) {
  ComplexityTable table;
  if (o.refine) {
    const RefinementComplexity r = refinement_complexity(load_iet(o.map), Number::parse(o.x), o.k_max);
    table = r.table;
  } else {
    const Word w = o.word.empty() ? map_coding(o) : Word::parse(o.word);
    table = o.force ? complexity(w, o.k_max, true) : prefix_stability(w, o.k_max);
  }
  emit(o, o.format == "json" ? dump(to_json(table)) : table.to_csv());
  return 0;
}

int run_idoc(const Options& o) {
  const IdocCertificate cert = idoc_check(load_iet(o.map), o.depth);
  emit(o, dump(to_json(cert)));
  return 0;
}

int run_construct(const Options& o) {
  const Iet t = load_iet(o.map);
  const ConstructedPc cpc =
      o.seed.empty() ? build_pc_from_iet(t, o.depth) : build_pc_from_iet(t, Number::parse(o.seed), o.depth);
  Json sidecar;
  sidecar["depth"] = o.depth;
  sidecar["seed"] = cpc.seed.to_string();
  sidecar["error_bound"] = rational_to_string(cpc.error_bound);
  Json bps = Json::array();
  for (const Ball& b : cpc.breakpoints) bps.push_back(to_json(b));
  sidecar["breakpoints"] = bps;
  Json pieces = Json::array();
  for (std::size_t i = 0; i < cpc.intercepts.size(); ++i) {
    const PieceIntercept& pi = cpc.intercepts[i];
    pieces.push_back(Json{{"piece", i + 1},
                          {"slope", cpc.map.slopes()[i].to_string()},
                          {"intercept", to_json(pi.value)},
                          {"gap", pi.gap},
                          {"cross_check_gap", pi.second_gap}});
  }
  sidecar["pieces"] = pieces;
  Json gaps = Json::array();
  for (std::size_t k = 1; k <= cpc.gaps.depth(); ++k) {
    gaps.push_back(Json{{"k", k},
                        {"orbit_point", cpc.gaps.point(k).to_string()},
                        {"iet_piece", cpc.gaps.piece_of_point(k) + 1},
                        {"inf", to_json(cpc.gaps.inf_gap(k))}});
  }
  sidecar["gaps"] = gaps;

  const std::string map_text = dump(to_json(cpc.map));
  if (o.output.empty()) {
    std::cout << map_text;
  } else {
    write_atomic(o.output, map_text);
    write_atomic(o.output + ".sidecar.json", dump(sidecar));
  }
  return 0;
}

int run_verify(const Options& o) {
  const Iet t = load_iet(o.map);
  const ConstructedPc cpc =
      o.seed.empty() ? build_pc_from_iet(t, o.depth) : build_pc_from_iet(t, Number::parse(o.seed), o.depth);
  const Number shift = Number::parse(o.shift);
  if (!shift.is_rational()) throw Error(ErrorKind::InvalidArgument, "--shift must be rational");
  const SemiconjugacyReport r = verify_semiconjugacy(cpc, t, o.length, o.samples, shift.rational_part());
  Json j{{"samples", r.samples}, {"length", r.length},       {"agree", r.agree},
         {"disagree", r.disagree}, {"undecided", r.undecided}, {"isomorphic", r.isomorphic},
         {"passed", r.passed()}};
  if (r.first_disagreement_gap) {
    j["first_disagreement"] = Json{{"gap", *r.first_disagreement_gap}, {"step", *r.first_disagreement_step}};
  }
  emit(o, dump(j));
  return r.passed() ? 0 : 1;
}

int run_rabbit(const Options& o) {
  const Ball r = rabbit_constant(o.bits);
  const Iet golden = Iet::rotation(Number(2) - Number::golden_ratio());
  const std::size_t len = static_cast<std::size_t>(o.bits) + 8;
  const RotationPc rot = rotation_pc(golden.coding(Number(2) - Number::golden_ratio(), len));
  const Ball one_minus_half_r = Ball::exact(1) - mpq_class(1, 2) * r;
  Json j{{"rabbit", to_json(r)},
         {"delta", to_json(rot.delta)},
         {"one_minus_half_rabbit", to_json(one_minus_half_r)},
         {"identity_holds", rot.delta.overlaps(one_minus_half_r)}};
  emit(o, dump(j));
  return rot.delta.overlaps(one_minus_half_r) ? 0 : 1;
}

int run_certify(const Options& o) {
  const PiecewiseContraction f = load_pc(o.map);
  const Number x = Number::parse(o.x);
  const auto cert = certify_periodic(f, x, o.budget, orbit_options(o));
  if (!cert) {
    emit(o, dump(Json{{"certificate", nullptr}, {"budget", o.budget}}));
    return kInconclusive;
  }
  emit(o, dump(to_json(*cert)));
  return 0;
}

int run_factor(const Options& o) {
  const PiecewiseContraction f = load_pc(o.map);
  OrbitOptions opts = orbit_options(o);
  const EmpiricalFactor e = empirical_factor(f, Number::parse(o.x), o.m, o.grid, opts);
  Json j{{"samples", e.samples},       {"pieces", e.pieces},   {"visits", e.visits},
         {"breakpoints", e.breakpoints}, {"translations", e.translations}, {"signs", e.signs},
         {"residual", e.residual},     {"approximate", e.approximate}};
  if (o.format == "csv") {
    std::string csv = "t,h\n";
    for (std::size_t i = 0; i < e.grid.size(); ++i) csv += std::to_string(e.grid[i]) + "," + std::to_string(e.cdf[i]) + "\n";
    emit(o, csv);
  } else {
    j["grid"] = e.grid;
    j["cdf"] = e.cdf;
    emit(o, dump(j));
  }
  return 0;
}

void report_error(std::string_view kind, const std::string& detail) {
  std::cerr << Json{{"error", kind}, {"detail", detail}}.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Codings, complexity and constructions for interval exchanges and piecewise contractions"};
  app.require_subcommand(1);
  Options o;

  auto format_check = CLI::IsMember({"plain", "csv", "json"});

  auto* code = app.add_subcommand("code", "print the natural coding of a point");
  code->add_option("--map", o.map, "map JSON file")->required();
  code->add_option("--x", o.x, "starting point")->required();
  code->add_option("--len", o.length, "number of letters")->required()->check(CLI::PositiveNumber);
  code->add_flag("--ball", o.ball, "continue in ball arithmetic past --max-bits");
  code->add_option("--max-bits", o.max_bits, "exact size budget per orbit point");
  code->add_option("--bits", o.bits, "ball precision");

  auto* cx = app.add_subcommand("complexity", "factor complexity table");
  cx->add_option("--word", o.word, "word as digits or comma separated letters");
  cx->add_option("--map", o.map, "map JSON file");
  cx->add_option("--x", o.x, "starting point (regular point with --refine)");
  cx->add_option("--len", o.length, "prefix length")->check(CLI::PositiveNumber);
  cx->add_option("--kmax", o.k_max, "largest k")->check(CLI::PositiveNumber);
  cx->add_flag("--refine", o.refine, "count through the refined partition of an IET");
  cx->add_flag("--force", o.force, "allow kmax above length/4");
  cx->add_option("--format", o.format, "csv or json")->check(format_check);

  auto* idoc = app.add_subcommand("idoc", "finite-depth distinct orbit check");
  idoc->add_option("--map", o.map, "IET JSON file")->required();
  idoc->add_option("--depth", o.depth, "orbit steps")->check(CLI::PositiveNumber);

  auto* construct = app.add_subcommand("construct", "build the 1/2-affine contraction of an IET");
  construct->add_option("--map", o.map, "IET JSON file")->required();
  construct->add_option("--depth", o.depth, "truncation depth N")->check(CLI::Range(16, 1 << 20));
  construct->add_option("--seed", o.seed, "orbit seed T(y_j)");

  auto* verify = app.add_subcommand("verify", "compare codings of f_T and T on gap samples");
  verify->add_option("--map", o.map, "IET JSON file")->required();
  verify->add_option("--depth", o.depth, "truncation depth N")->check(CLI::Range(16, 1 << 20));
  verify->add_option("--seed", o.seed, "orbit seed T(y_j)");
  verify->add_option("--len", o.length, "letters per sample")->required()->check(CLI::PositiveNumber);
  verify->add_option("--samples", o.samples, "number of gaps")->check(CLI::PositiveNumber);
  verify->add_option("--shift", o.shift, "rational added to every intercept");

  auto* rabbit = app.add_subcommand("rabbit", "rabbit constant and delta = 1 - R/2");
  rabbit->add_option("--bits", o.bits, "precision")->check(CLI::Range(8, 1 << 20));

  auto* certify = app.add_subcommand("certify", "certify an ultimately periodic coding");
  certify->add_option("--map", o.map, "PC JSON file")->required();
  certify->add_option("--x", o.x, "starting point")->required();
  certify->add_option("--budget", o.budget, "orbit steps")->check(CLI::PositiveNumber);
  certify->add_option("--max-bits", o.max_bits, "exact size budget per orbit point");

  auto* factor = app.add_subcommand("factor", "empirical factor interval exchange");
  factor->add_option("--map", o.map, "PC JSON file")->required();
  factor->add_option("--x", o.x, "starting point")->required();
  factor->add_option("--m", o.m, "orbit samples")->check(CLI::Range(1000, 100000000));
  factor->add_option("--grid", o.grid, "CDF grid size")->check(CLI::PositiveNumber);
  factor->add_option("--max-bits", o.max_bits, "exact size budget before ball mode");
  factor->add_option("--bits", o.bits, "ball precision");
  factor->add_option("--format", o.format, "json or csv")->check(format_check);

  for (auto* sub : app.get_subcommands({})) sub->add_option("--output", o.output, "write here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_error("UsageError", e.what());
    return 1;
  }

  try {
    if (*code) return run_code(o);
    if (*cx) {
      if (o.word.empty() && (o.map.empty() || o.x.empty() || (!o.refine && o.length == 0)))
        throw Error(ErrorKind::InvalidArgument, "give --word, or --map with --x and --len");
      return run_complexity(o);
    }
    if (*idoc) return run_idoc(o);
    if (*construct) return run_construct(o);
    if (*verify) return run_verify(o);
    if (*rabbit) return run_rabbit(o);
    if (*certify) {
      o.ball = false;
      return run_certify(o);
    }
    if (*factor) {
      o.ball = true;
      return run_factor(o);
    }
  } catch (const Error& e) {
    report_error(to_string(e.kind()), e.what());
    return 1;
  } catch (const std::exception& e) {
    report_error("InternalError", e.what());
    return 1;
  }
  return 1;
}
