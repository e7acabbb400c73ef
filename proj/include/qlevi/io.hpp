#pragma once

// JSON formats: inequality lists, point files, structure-table export, and the
// on-disk structure-table cache.

#include "qlevi/eigencone.hpp"

#include "json.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace qlevi::io {

using Json = nlohmann::ordered_json;

inline Json word_json(const std::vector<int>& word) {
  Json j = Json::array();
  for (int g : word) j.push_back(g + 1);
  return j;
}

inline Json rational_row(const RatVec& v) {
  Json j = Json::array();
  for (const auto& x : v) j.push_back(to_string(x));
  return j;
}

inline Json inequality_json(const RootSystem& rs, int n, const Inequality& q) {
  Json j;
  j["type"] = std::string(1, rs.type());
  j["rank"] = rs.rank();
  j["n"] = n;
  j["parabolic"] = q.parabolic + 1;
  j["u"] = Json::array();
  for (const auto& w : q.words) j["u"].push_back(word_json(w));
  j["d"] = q.d;
  j["lhs"] = Json::array();
  for (const auto& w : q.lhs_weights) j["lhs"].push_back(rational_row(w.coords));
  j["rhs"] = q.rhs();
  return j;
}

inline Json inequalities_json(const RootSystem& rs, int n, const std::vector<Inequality>& list) {
  Json j = Json::array();
  for (const auto& q : list) j.push_back(inequality_json(rs, n, q));
  return j;
}

/// Lines (1-based) where each row of the "points" array and each of its entries start.
struct PointLines {
  std::vector<std::size_t> rows;
  std::vector<std::vector<std::size_t>> entries;
};

inline PointLines point_lines(const std::string& text) {
  PointLines out;
  auto key = text.find("\"points\"");
  if (key == std::string::npos) return out;
  auto open = text.find('[', key);
  if (open == std::string::npos) return out;
  std::size_t line = static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(open), '\n')) + 1;
  int depth = 0;
  bool in_string = false, expect = true;
  for (std::size_t i = open; i < text.size(); ++i) {
    char c = text[i];
    if (c == '\n') ++line;
    if (in_string) {
      if (c == '\\') ++i;
      else if (c == '"') in_string = false;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (expect && c != ']' && (depth == 1 || depth == 2)) {
      if (depth == 1) {
        out.rows.push_back(line);
        out.entries.emplace_back();
      } else {
        out.entries.back().push_back(line);
      }
    }
    expect = false;
    if (c == '"') in_string = true;
    else if (c == '[' || c == '{') ++depth, expect = true;
    else if (c == ']' || c == '}') {
      if (--depth == 0) break;
    } else if (c == ',') expect = true;
  }
  return out;
}

inline Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t byte = std::min(e.byte == 0 ? 0 : e.byte - 1, text.size());
    auto line = std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n') + 1;
    std::string what = e.what();
    auto cut = what.find("syntax error");
    throw InputError(source + ":" + std::to_string(line) + ": " + (cut == std::string::npos ? what : what.substr(cut)));
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// {points: [[m_1, ..., m_rank], ...]} with rationals as "p/q" strings (integers accepted).
inline std::vector<CartanPoint> parse_points(const std::string& text, const std::string& source, int rank) {
  Json j = parse_json(text, source);
  const PointLines lines = point_lines(text);
  auto fail = [&](std::size_t line, const std::string& message) -> InputError {
    return InputError(source + (line ? ":" + std::to_string(line) : "") + ": " + message);
  };
  auto row_line = [&](std::size_t k) { return k < lines.rows.size() ? lines.rows[k] : 0; };
  auto entry_line = [&](std::size_t k, std::size_t c) {
    return k < lines.entries.size() && c < lines.entries[k].size() ? lines.entries[k][c] : row_line(k);
  };
  if (!j.is_object() || !j.contains("points")) throw fail(0, "expected an object with a \"points\" array");
  const Json& pts = j["points"];
  if (!pts.is_array()) throw fail(0, "\"points\" must be an array");
  std::vector<CartanPoint> out;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const Json& row = pts[k];
    const std::string where = "points[" + std::to_string(k) + "]";
    if (!row.is_array()) throw fail(row_line(k), where + " must be an array");
    if (static_cast<int>(row.size()) != rank)
      throw fail(row_line(k), where + " has " + std::to_string(row.size()) + " coordinates, expected " + std::to_string(rank));
    RatVec m;
    for (std::size_t c = 0; c < row.size(); ++c) {
      const Json& x = row[c];
      const std::string at = where + "[" + std::to_string(c) + "]";
      if (x.is_number_integer()) {
        m.push_back(make_rational(x.get<std::int64_t>()));
      } else if (x.is_string()) {
        try {
          m.push_back(parse_rational(x.get<std::string>()));
        } catch (const InputError& e) {
          throw fail(entry_line(k, c), at + ": " + e.what());
        }
      } else {
        throw fail(entry_line(k, c), at + " must be a \"p/q\" string");
      }
    }
    out.emplace_back(std::move(m));
  }
  return out;
}

inline std::vector<CartanPoint> load_points(const std::string& path, int rank) { return parse_points(read_file(path), path, rank); }

/// Every nonzero c_{u,v}^{w,d} as {u, v, w, d, coeff}.
inline Json table_export_json(const StructureTable& table) {
  const auto& ctx = table.context();
  Json j = Json::array();
  for (std::size_t u = 0; u < table.size(); ++u)
    for (std::size_t v = 0; v < table.size(); ++v)
      for (const auto& [k, c] : table.product(u, v).terms) {
        Json e;
        e["u"] = word_json(ctx.element(u).word);
        e["v"] = word_json(ctx.element(v).word);
        e["w"] = word_json(ctx.element(ctx.dual(k.cls)).word);
        e["d"] = k.d;
        e["coeff"] = to_int64(c);
        j.push_back(std::move(e));
      }
  return j;
}

inline std::vector<int> word_from_json(const Json& j, int rank) {
  std::vector<int> w;
  for (const auto& g : j) {
    int x = g.get<int>();
    if (x < 1 || x > rank) throw InputError("generator " + std::to_string(x) + " out of range");
    w.push_back(x - 1);
  }
  return w;
}

inline StructureTable table_import_json(std::shared_ptr<const ParabolicContext> ctx, const Json& entries) {
  const std::size_t n = ctx->size();
  const int rank = ctx->root_system().rank();
  std::vector<QRingElement> products(n * n);
  for (const auto& e : entries) {
    std::size_t u = ctx->position_of_word(word_from_json(e.at("u"), rank));
    std::size_t v = ctx->position_of_word(word_from_json(e.at("v"), rank));
    std::size_t w = ctx->position_of_word(word_from_json(e.at("w"), rank));
    Degree d = e.at("d").get<Degree>();
    if (d.size() != ctx->s_p().size()) throw InputError("degree has the wrong number of components");
    products[u * n + v].add(QKey{ctx->dual(w), d}, Integer(static_cast<long>(e.at("coeff").get<std::int64_t>())));
  }
  return table_from_constants(std::move(ctx), std::move(products));
}

inline constexpr int cache_format_version = 1;

/// Structure tables on disk under $QLEVI_CACHE_DIR (or an explicit directory).
/// Unreadable or mismatched entries are rebuilt and overwritten.
class TableCache {
public:
  explicit TableCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  static std::optional<TableCache> from_environment() {
    const char* env = std::getenv("QLEVI_CACHE_DIR");
    if (env == nullptr || *env == '\0') return std::nullopt;
    return TableCache(env);
  }

  std::filesystem::path path_for(const ParabolicContext& ctx) const {
    std::string parts;
    for (int i : ctx.s_p()) parts += (parts.empty() ? "" : "-") + std::to_string(i + 1);
    return dir_ / (ctx.root_system().label() + "_P" + parts + ".v" + std::to_string(cache_format_version) + ".json");
  }

  StructureTable load_or_build(std::shared_ptr<const ParabolicContext> ctx) const {
    const auto path = path_for(*ctx);
    if (auto cached = try_load(ctx, path)) return std::move(*cached);
    StructureTable table = build_structure_table(ctx);
    store(table, path);
    return table;
  }

  MaximalParabolics::TableSource source() const {
    return [this](std::shared_ptr<const ParabolicContext> ctx) { return load_or_build(std::move(ctx)); };
  }

private:
  std::optional<StructureTable> try_load(const std::shared_ptr<const ParabolicContext>& ctx, const std::filesystem::path& path) const {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    try {
      Json j = Json::parse(in);
      if (j.at("format_version").get<int>() != cache_format_version) return std::nullopt;
      if (j.at("type").get<std::string>() != std::string(1, ctx->root_system().type()) || j.at("rank").get<int>() != ctx->root_system().rank())
        return std::nullopt;
      std::vector<int> sp;
      for (const auto& x : j.at("parabolic")) sp.push_back(x.get<int>() - 1);
      if (sp != ctx->s_p()) return std::nullopt;
      StructureTable t = table_import_json(ctx, j.at("entries"));
      for (std::size_t u = 0; u < t.size(); ++u)
        if (!(t.product(t.context().longest_rep(), u).terms == t.basis(u).terms)) return std::nullopt;
      return t;
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }

  void store(const StructureTable& table, const std::filesystem::path& path) const {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    const auto& ctx = table.context();
    Json j;
    j["format_version"] = cache_format_version;
    j["type"] = std::string(1, ctx.root_system().type());
    j["rank"] = ctx.root_system().rank();
    j["parabolic"] = Json::array();
    for (int i : ctx.s_p()) j["parabolic"].push_back(i + 1);
    j["entries"] = table_export_json(table);
    auto tmp = path;
    tmp += ".tmp";
    {
      std::ofstream out(tmp);
      if (!out) return;
      out << j.dump() << '\n';
    }
    std::filesystem::rename(tmp, path, ec);
  }

  std::filesystem::path dir_;
};

}  // namespace qlevi::io
