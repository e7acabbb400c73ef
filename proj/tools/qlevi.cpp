// qlevi: deformed quantum tables, eigencone inequalities, membership and
// verification from the command line.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or input error.

#include "qlevi/compare.hpp"
#include "qlevi/io.hpp"

#include "CLI11.hpp"

#include <fmt/format.h>

#include <cctype>
#include <iostream>

namespace {

using namespace qlevi;
using io::Json;

constexpr int exit_ok = 0;
constexpr int exit_verification = 1;
constexpr int exit_input = 2;

struct RunConfig {
  std::string command;
  std::string type_label;
  int rank = 0;
  int parabolic = 0;  // 1-based
  int n = 3;
  std::string point_path;
  std::string format = "text";
  std::uint64_t seed = 0;
  int restarts = 200;
  double tol = 1e-8;
  unsigned workers = 1;
  bool no_cache = false;
  bool baseline = false;
  bool export_constants = false;
  int samples = 50;
  std::string letter = "c";
};

RootSystem resolve_root_system(const RunConfig& cfg) {
  if (cfg.type_label.empty()) throw InputError("--type is required");
  const char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(cfg.type_label[0])));
  const std::string digits = cfg.type_label.substr(1);
  if (digits.empty()) {
    if (cfg.rank <= 0) throw InputError("--rank is required with type letter '" + cfg.type_label + "'");
    return build_root_system(letter, cfg.rank);
  }
  if (!std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw InputError("malformed type '" + cfg.type_label + "'");
  const int rank = std::stoi(digits);
  if (cfg.rank > 0 && cfg.rank != rank) throw InputError("--rank " + std::to_string(cfg.rank) + " contradicts type " + cfg.type_label);
  return build_root_system(letter, rank);
}

std::optional<io::TableCache> resolve_cache(const RunConfig& cfg) {
  if (cfg.no_cache) return std::nullopt;
  if (auto env = io::TableCache::from_environment()) return env;
  const char* xdg = std::getenv("XDG_CACHE_HOME");
  const char* home = std::getenv("HOME");
  if (xdg != nullptr && *xdg != '\0') return io::TableCache(std::filesystem::path(xdg) / "qlevi");
  if (home != nullptr && *home != '\0') return io::TableCache(std::filesystem::path(home) / ".cache" / "qlevi");
  return std::nullopt;
}

StructureTable load_table(const std::optional<io::TableCache>& cache, std::shared_ptr<const ParabolicContext> ctx) {
  return cache ? cache->load_or_build(std::move(ctx)) : build_structure_table(std::move(ctx));
}

MaximalParabolics load_family(const RootSystem& rs, const std::optional<io::TableCache>& cache) {
  return cache ? MaximalParabolics(rs, cache->source()) : MaximalParabolics(rs);
}

void check_format(const RunConfig& cfg) {
  if (cfg.format != "text" && cfg.format != "json") throw InputError("unknown format '" + cfg.format + "' (expected text or json)");
}

std::string describe(const RootSystem& rs, const Inequality& q) {
  std::string words, lhs;
  for (std::size_t k = 0; k < q.words.size(); ++k) {
    words += (k ? " | " : "") + format_word(q.words[k]);
    lhs += k ? ", (" : "(";
    for (std::size_t j = 0; j < q.lhs_weights[k].size(); ++j) lhs += (j ? " " : "") + to_string(q.lhs_weights[k][j]);
    lhs += ")";
  }
  (void)rs;
  return fmt::format("P{} d={} u=[{}] lhs=[{}] rhs={}", q.parabolic + 1, q.d, words, lhs, q.rhs());
}

int cmd_tables(const RunConfig& cfg, std::ostream& out) {
  check_format(cfg);
  RootSystem rs = resolve_root_system(cfg);
  if (cfg.parabolic < 1 || cfg.parabolic > rs.rank())
    throw InputError("no such node: parabolic " + std::to_string(cfg.parabolic) + " in " + rs.label() + " (nodes 1.." + std::to_string(rs.rank()) + ")");
  auto ctx = std::make_shared<const ParabolicContext>(minimal_reps(rs, {cfg.parabolic - 1}));
  StructureTable table = load_table(resolve_cache(cfg), ctx);
  if (cfg.export_constants) {
    out << io::table_export_json(table).dump(2) << '\n';
    return exit_ok;
  }
  if (cfg.letter.size() != 1 || !std::isalpha(static_cast<unsigned char>(cfg.letter[0])))
    throw InputError("--letter must be a single letter, got '" + cfg.letter + "'");
  DeformedRing ring(std::move(table));
  out << render_table(ring, RenderOptions{cfg.format == "json" ? TableFormat::json : TableFormat::text, cfg.letter[0]});
  return exit_ok;
}

int cmd_inequalities(const RunConfig& cfg, std::ostream& out) {
  check_format(cfg);
  RootSystem rs = resolve_root_system(cfg);
  MaximalParabolics family = load_family(rs, resolve_cache(cfg));
  auto list = generate_inequalities(family, cfg.n, cfg.baseline ? Criterion::undeformed : Criterion::deformed);
  if (cfg.format == "json") {
    out << io::inequalities_json(rs, cfg.n, list).dump(2) << '\n';
  } else {
    out << fmt::format("# {} n={} {} inequalities: {}\n", rs.label(), cfg.n, cfg.baseline ? "baseline" : "deformed", list.size());
    for (std::size_t i = 0; i < list.size(); ++i) out << fmt::format("{:>4} {}\n", i + 1, describe(rs, list[i]));
  }
  return exit_ok;
}

int cmd_member(const RunConfig& cfg, std::ostream& out) {
  check_format(cfg);
  RootSystem rs = resolve_root_system(cfg);
  if (cfg.point_path.empty()) throw InputError("--point is required");
  auto point = io::load_points(cfg.point_path, rs.rank());
  MaximalParabolics family = load_family(rs, resolve_cache(cfg));
  auto list = generate_inequalities(family, cfg.n);
  MembershipVerdict v = membership(rs, cfg.n, point, list);
  if (cfg.format == "json") {
    Json j;
    j["type"] = rs.label();
    j["n"] = cfg.n;
    j["verdict"] = to_string(v.placement);
    j["violated"] = Json::array();
    for (auto i : v.violated) j["violated"].push_back(io::inequality_json(rs, cfg.n, list[i]));
    j["tight"] = Json::array();
    for (auto i : v.tight) j["tight"].push_back(io::inequality_json(rs, cfg.n, list[i]));
    out << j.dump(2) << '\n';
  } else {
    out << to_string(v.placement) << '\n';
    for (auto i : v.violated) out << fmt::format("violated {:>4} {}\n", i + 1, describe(rs, list[i]));
    for (auto i : v.tight) out << fmt::format("tight    {:>4} {}\n", i + 1, describe(rs, list[i]));
  }
  return exit_ok;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  check_format(cfg);
  RootSystem rs = resolve_root_system(cfg);
  MaximalParabolics family = load_family(rs, resolve_cache(cfg));
  auto list = generate_inequalities(family, cfg.n, cfg.baseline ? Criterion::undeformed : Criterion::deformed);
  IrredundancyReport irr = irredundancy_check(rs, cfg.n, list, std::max(1u, cfg.workers));
  DistinctnessReport dist = distinctness_check(list);
  for (const auto& w : irr.warnings) err << "warning: " << w << '\n';
  if (cfg.format == "json") {
    Json j;
    j["type"] = rs.label();
    j["n"] = cfg.n;
    j["count"] = list.size();
    j["certified"] = irr.certified();
    j["entries"] = Json::array();
    for (const auto& e : irr.entries) {
      Json x;
      x["index"] = e.index + 1;
      x["certificate"] = to_string(e.certificate);
      x["excess"] = to_string(e.excess);
      if (!e.witness.empty()) x["witness"] = io::rational_row(e.witness);
      if (e.face_dimension >= 0) x["face_dimension"] = e.face_dimension;
      j["entries"].push_back(std::move(x));
    }
    j["proportional_pairs"] = Json::array();
    for (auto [a, b] : dist.proportional_pairs) j["proportional_pairs"].push_back(Json::array({a + 1, b + 1}));
    j["warnings"] = irr.warnings;
    out << j.dump(2) << '\n';
  } else {
    for (const auto& e : irr.entries) {
      out << fmt::format("{:>4} {:<16} excess={}", e.index + 1, to_string(e.certificate), to_string(e.excess));
      if (e.face_dimension >= 0) out << fmt::format(" face_dimension={}", e.face_dimension);
      out << '\n';
    }
    for (auto [a, b] : dist.proportional_pairs) out << fmt::format("proportional pair: {} {}\n", a + 1, b + 1);
    out << fmt::format("{} n={}: {}/{} irredundant, {} duplicate pairs\n", rs.label(), cfg.n, irr.certified(), list.size(),
                       dist.proportional_pairs.size());
  }
  return irr.all_certified() && dist.passed() ? exit_ok : exit_verification;
}

int cmd_oracle_compare(const RunConfig& cfg, std::ostream& out) {
  check_format(cfg);
  RootSystem rs = resolve_root_system(cfg);
  GroupRep rep(group_for(rs));
  MaximalParabolics family = load_family(rep.root_system(), resolve_cache(cfg));
  auto list = generate_inequalities(family, cfg.n);
  std::vector<std::vector<CartanPoint>> points;
  if (!cfg.point_path.empty()) {
    points.push_back(io::load_points(cfg.point_path, rs.rank()));
  } else {
    if (cfg.samples < 0) throw InputError("--samples must be nonnegative");
    points = sample_balanced_points(rep.root_system(), cfg.n, list, static_cast<std::size_t>(cfg.samples), make_rational(1, 20), cfg.seed);
  }
  OracleOptions opt;
  opt.seed = cfg.seed;
  opt.restarts = cfg.restarts;
  opt.tol = cfg.tol;
  auto rows = oracle_compare(rep, cfg.n, list, points, opt);
  ComparisonSummary s = summarize(rows);
  auto numeric = [](const ComparisonRow& r) { return r.numeric.feasible ? "feasible" : "no-witness"; };
  if (cfg.format == "json") {
    Json j;
    j["group"] = to_string(rep.label());
    j["n"] = cfg.n;
    j["rows"] = Json::array();
    for (const auto& r : rows) {
      Json x;
      x["point"] = Json::array();
      for (const auto& mu : r.point) x["point"].push_back(io::rational_row(mu.coords));
      x["exact"] = r.exact_inside ? "inside" : "outside";
      x["numeric"] = numeric(r);
      x["residual"] = r.numeric.residual;
      if (r.reference) x["reference"] = *r.reference ? "inside" : "outside";
      j["rows"].push_back(std::move(x));
    }
    j["summary"] = {{"inside", s.inside},
                    {"inside_certified", s.inside_certified},
                    {"outside", s.outside},
                    {"outside_certified", s.outside_certified},
                    {"reference_disagreements", s.reference_disagreements}};
    out << j.dump(2) << '\n';
  } else {
    for (const auto& r : rows) {
      std::string p;
      for (const auto& mu : r.point) {
        p += p.empty() ? "(" : " (";
        for (std::size_t k = 0; k < mu.size(); ++k) p += (k ? "," : "") + to_string(mu[k]);
        p += ")";
      }
      out << fmt::format("{} exact={} numeric={} residual={:.17g}", p, r.exact_inside ? "inside" : "outside", numeric(r), r.numeric.residual);
      if (r.reference) out << " reference=" << (*r.reference ? "inside" : "outside");
      out << '\n';
    }
    out << fmt::format("{} n={}: inside {}/{} certified feasible, outside {} certified feasible of {}, reference disagreements {}\n",
                       to_string(rep.label()), cfg.n, s.inside_certified, s.inside, s.outside_certified, s.outside, s.reference_disagreements);
  }
  return s.outside_certified == 0 && s.reference_disagreements == 0 ? exit_ok : exit_verification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deformed quantum cohomology tables and multiplicative eigencone inequalities"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub, bool with_n) {
    sub->add_option("--type", cfg.type_label, "Root system, e.g. G2, or a letter with --rank")->required();
    sub->add_option("--rank", cfg.rank, "Rank, when --type is a bare letter");
    sub->add_option("--format", cfg.format, "text or json");
    sub->add_flag("--no-cache", cfg.no_cache, "Do not read or write cached structure tables");
    if (with_n) sub->add_option("-n", cfg.n, "Number of conjugacy classes");
  };

  auto* tables = app.add_subcommand("tables", "Deformed multiplication table for a maximal parabolic");
  common(tables, false);
  tables->add_option("--parabolic", cfg.parabolic, "Node of the maximal parabolic (1-based)")->required();
  tables->add_flag("--export", cfg.export_constants, "Emit all structure constants as JSON");
  tables->add_option("--letter", cfg.letter, "Class label letter (default c)");

  auto* inequalities = app.add_subcommand("inequalities", "Inequalities of the multiplicative eigen polytope");
  common(inequalities, true);
  inequalities->add_flag("--baseline", cfg.baseline, "Use the undeformed Gromov-Witten criterion");

  auto* member = app.add_subcommand("member", "Exact membership of a point tuple");
  common(member, true);
  member->add_option("--point", cfg.point_path, "Point file {points: [[\"p/q\", ...], ...]}")->required();

  auto* verify = app.add_subcommand("verify", "Irredundancy and distinctness of the generated inequalities");
  common(verify, true);
  verify->add_option("--workers", cfg.workers, "Parallel LP workers");
  verify->add_flag("--baseline", cfg.baseline, "Verify the undeformed list instead");

  auto* compare = app.add_subcommand("oracle-compare", "Compare exact membership with the numerical unitary oracle");
  common(compare, true);
  compare->add_option("--point", cfg.point_path, "Single point file instead of random samples");
  compare->add_option("--samples", cfg.samples, "Number of margin-separated random points");
  compare->add_option("--seed", cfg.seed, "Seed for sampling and restarts");
  compare->add_option("--restarts", cfg.restarts, "Random restarts per point");
  compare->add_option("--tol", cfg.tol, "Residual threshold for a witness");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? exit_ok : exit_input;
  }

  try {
    if (tables->parsed()) return cmd_tables(cfg, std::cout);
    if (inequalities->parsed()) return cmd_inequalities(cfg, std::cout);
    if (member->parsed()) return cmd_member(cfg, std::cout);
    if (verify->parsed()) return cmd_verify(cfg, std::cout, std::cerr);
    if (compare->parsed()) return cmd_oracle_compare(cfg, std::cout);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_input;
  } catch (const UnsupportedSpaceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_input;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_verification;
  }
  return exit_input;
}
