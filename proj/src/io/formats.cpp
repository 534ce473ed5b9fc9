#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "dtop/errors.hpp"
#include "dtop/io.hpp"

namespace dtop::io {

namespace {

struct Line {
  std::size_t number;
  std::string text;
};

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Non-empty lines with comments removed. The first one must be the header.
std::vector<Line> content_lines(const std::string& text, const std::string& header) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    ++number;
    if (number > max_lines) throw ParseError(number, "file too long");
    std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    std::string t = trim(raw);
    if (!t.empty()) out.push_back({number, t});
  }
  if (out.empty()) throw ParseError(1, "missing header '" + header + "'");
  if (out[0].text != header) throw ParseError(out[0].number, "expected header '" + header + "'");
  out.erase(out.begin());
  return out;
}

std::vector<std::string> tokens(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

Int parse_int(const std::string& t, std::size_t line) {
  std::size_t start = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
  if (t.size() == start || t.size() - start > max_digits ||
      !std::all_of(t.begin() + static_cast<long>(start), t.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw ParseError(line, "expected an integer, got '" + t + "'");
  return Int(t[0] == '+' ? t.substr(1) : t, 10);
}

long parse_bounded(const std::string& t, std::size_t line, long lo, long hi, const std::string& what) {
  Int v = parse_int(t, line);
  if (v < lo || v > hi)
    throw ParseError(line, what + " out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]: " + t);
  return v.get_si();
}

Vec parse_ints(const std::string& s, std::size_t line) {
  Vec v;
  for (const auto& t : tokens(s)) v.push_back(parse_int(t, line));
  return v;
}

// "key: rest" with the exact key; returns rest.
bool keyed(const Line& l, const std::string& key, std::string& rest) {
  if (l.text.size() < key.size() + 1 || l.text.compare(0, key.size(), key) != 0 || l.text[key.size()] != ':')
    return false;
  rest = trim(l.text.substr(key.size() + 1));
  return true;
}

std::string expect_key(const Line& l, const std::string& key) {
  std::string rest;
  if (!keyed(l, key, rest)) throw ParseError(l.number, "expected '" + key + ":'");
  return rest;
}

std::string join(const Vec& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + v[i].get_str();
  return s;
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

std::vector<int> parse_points(const std::string& s, std::size_t line, long hi) {
  std::vector<int> out;
  for (const auto& t : tokens(s)) out.push_back(static_cast<int>(parse_bounded(t, line, 0, hi, "index")));
  return out;
}

// generators/relator block shared by fpgroup and gtower.
FpGroup parse_group_block(const std::vector<Line>& lines, std::size_t& pos, bool relator_prefix) {
  if (pos >= lines.size()) throw ParseError(lines.empty() ? 1 : lines.back().number, "missing 'generators:'");
  std::size_t k = static_cast<std::size_t>(
      parse_bounded(expect_key(lines[pos], "generators"), lines[pos].number, 0, max_generators, "generator count"));
  ++pos;
  std::vector<Vec> rels;
  while (pos < lines.size()) {
    std::string body = lines[pos].text;
    if (relator_prefix) {
      std::string rest;
      if (!keyed(lines[pos], "relator", rest)) break;
      body = rest;
    }
    Vec r = parse_ints(body, lines[pos].number);
    if (r.size() != k)
      throw ParseError(lines[pos].number, "relator has " + std::to_string(r.size()) + " entries, expected " +
                                              std::to_string(k));
    if (rels.size() >= max_generators * 4) throw ParseError(lines[pos].number, "too many relators");
    rels.push_back(std::move(r));
    ++pos;
  }
  return FpGroup(k, IntMatrix::from_columns(k, rels));
}

void group_block(std::ostringstream& out, const FpGroup& g, bool relator_prefix) {
  out << "generators: " << g.generator_count() << "\n";
  for (std::size_t j = 0; j < g.relations().cols(); ++j)
    out << (relator_prefix ? "relator: " : "") << join(g.relations().column(j)) << "\n";
}

IntMatrix parse_map_rows(const std::vector<Line>& lines, std::size_t& pos, std::size_t rows, std::size_t cols) {
  IntMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (pos >= lines.size()) throw ParseError(lines.back().number, "missing 'map:' row");
    Vec v = parse_ints(expect_key(lines[pos], "map"), lines[pos].number);
    if (v.size() != cols)
      throw ParseError(lines[pos].number, "map row has " + std::to_string(v.size()) + " entries, expected " +
                                              std::to_string(cols));
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = v[c];
    ++pos;
  }
  return m;
}

void map_rows(std::ostringstream& out, const IntMatrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) out << "map: " << join(m.row(r)) << "\n";
}

}  // namespace

std::string read_file(const std::filesystem::path& p) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(p, ec)) throw ParseError(0, "cannot read file '" + p.string() + "'");
  auto size = std::filesystem::file_size(p, ec);
  if (ec || size > 4 * 1024 * 1024) throw ParseError(0, "file too large or unreadable: '" + p.string() + "'");
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

FpGroup parse_fpgroup(const std::string& text) {
  auto lines = content_lines(text, "fpgroup v1");
  std::size_t pos = 0;
  FpGroup g = parse_group_block(lines, pos, false);
  if (pos != lines.size()) throw ParseError(lines[pos].number, "unexpected line");
  return g;
}

std::string serialize_fpgroup(const FpGroup& g) {
  std::ostringstream out;
  out << "fpgroup v1\n";
  group_block(out, g, false);
  return out.str();
}

IntMatrix parse_intmatrix(const std::string& text) {
  auto lines = content_lines(text, "intmatrix v1");
  if (lines.empty()) throw ParseError(1, "missing 'size:'");
  auto dims = tokens(expect_key(lines[0], "size"));
  if (dims.size() != 2) throw ParseError(lines[0].number, "size needs rows and columns");
  std::size_t rows = static_cast<std::size_t>(parse_bounded(dims[0], lines[0].number, 0, max_matrix_dim, "rows"));
  std::size_t cols = static_cast<std::size_t>(parse_bounded(dims[1], lines[0].number, 0, max_matrix_dim, "columns"));
  std::size_t expected_lines = cols == 0 ? 0 : rows;
  if (lines.size() - 1 != expected_lines)
    throw ParseError(lines.back().number, "expected " + std::to_string(expected_lines) + " matrix rows, found " +
                                              std::to_string(lines.size() - 1));
  IntMatrix m(rows, cols);
  for (std::size_t r = 0; r < expected_lines; ++r) {
    Vec v = parse_ints(lines[r + 1].text, lines[r + 1].number);
    if (v.size() != cols) throw ParseError(lines[r + 1].number, "row has " + std::to_string(v.size()) + " entries");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = v[c];
  }
  return m;
}

std::string serialize_intmatrix(const IntMatrix& m) {
  std::ostringstream out;
  out << "intmatrix v1\nsize: " << m.rows() << " " << m.cols() << "\n";
  if (m.cols() > 0)
    for (std::size_t r = 0; r < m.rows(); ++r) out << join(m.row(r)) << "\n";
  return out.str();
}

SimplicialComplex parse_scomplex(const std::string& text) {
  auto lines = content_lines(text, "scomplex v1");
  std::vector<Simplex> simplices;
  for (const auto& l : lines) {
    Simplex s = parse_points(l.text, l.number, max_vertex);
    if (s.size() > max_simplex_vertices)
      throw ParseError(l.number, "simplex has more than " + std::to_string(max_simplex_vertices) + " vertices");
    std::set<int> distinct(s.begin(), s.end());
    if (distinct.size() != s.size()) throw ParseError(l.number, "repeated vertex in simplex");
    simplices.push_back(std::move(s));
  }
  return SimplicialComplex::from_maximal(simplices);
}

std::string serialize_scomplex(const SimplicialComplex& k) {
  std::ostringstream out;
  out << "scomplex v1\n";
  for (const auto& s : k.maximal_simplices()) out << join(s) << "\n";
  return out.str();
}

std::map<int, int> parse_smap(const std::string& text) {
  auto lines = content_lines(text, "smap v1");
  std::map<int, int> m;
  for (const auto& l : lines) {
    std::size_t arrow = l.text.find("->");
    if (arrow == std::string::npos) throw ParseError(l.number, "expected 'v -> w'");
    auto lhs = tokens(l.text.substr(0, arrow));
    auto rhs = tokens(l.text.substr(arrow + 2));
    if (lhs.size() != 1 || rhs.size() != 1) throw ParseError(l.number, "expected 'v -> w'");
    int v = static_cast<int>(parse_bounded(lhs[0], l.number, 0, max_vertex, "vertex"));
    int w = static_cast<int>(parse_bounded(rhs[0], l.number, 0, max_vertex, "vertex"));
    auto [it, fresh] = m.emplace(v, w);
    if (!fresh && it->second != w) throw ParseError(l.number, "conflicting image for vertex " + std::to_string(v));
  }
  return m;
}

std::string serialize_smap(const std::map<int, int>& m) {
  std::ostringstream out;
  out << "smap v1\n";
  for (const auto& [v, w] : m) out << v << " -> " << w << "\n";
  return out.str();
}

Cover parse_cover(const std::string& text) {
  auto lines = content_lines(text, "cover v1");
  if (lines.empty()) throw ParseError(1, "missing 'ground:'");
  std::size_t n =
      static_cast<std::size_t>(parse_bounded(expect_key(lines[0], "ground"), lines[0].number, 0, max_ground, "ground size"));
  std::vector<std::vector<int>> members;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& l = lines[i];
    std::size_t colon = l.text.find(':');
    if (l.text[0] != 'U' || colon == std::string::npos) throw ParseError(l.number, "expected 'U<i>: points'");
    std::string idx = l.text.substr(1, colon - 1);
    if (idx != std::to_string(members.size()))
      throw ParseError(l.number, "expected member U" + std::to_string(members.size()));
    if (members.size() >= max_members) throw ParseError(l.number, "too many members");
    members.push_back(parse_points(l.text.substr(colon + 1), l.number, static_cast<long>(max_ground)));
  }
  return Cover(n, std::move(members));
}

std::string serialize_cover(const Cover& c) {
  std::ostringstream out;
  out << "cover v1\nground: " << c.ground_size() << "\n";
  for (std::size_t i = 0; i < c.member_count(); ++i) out << "U" << i << ": " << join(c.member(i)) << "\n";
  return out.str();
}

TowerFile parse_tower_file(const std::string& text) {
  auto lines = content_lines(text, "tower v1");
  TowerFile t;
  std::string rest;
  for (const auto& l : lines) {
    if (keyed(l, "level", rest)) {
      if (rest.empty()) throw ParseError(l.number, "empty level path");
      if (t.level_paths.size() >= max_levels) throw ParseError(l.number, "too many levels");
      t.level_paths.push_back(rest);
    } else if (keyed(l, "exhaust", rest)) {
      if (t.exhaustion.size() >= max_levels) throw ParseError(l.number, "too many exhaustion sets");
      t.exhaustion.push_back(parse_points(rest, l.number, static_cast<long>(max_ground)));
    } else if (l.text.rfind("refine ", 0) == 0) {
      std::size_t colon = l.text.find(':');
      if (colon == std::string::npos) throw ParseError(l.number, "expected 'refine k: assignment'");
      long k = parse_bounded(trim(l.text.substr(7, colon - 7)), l.number, 0, max_levels, "refinement index");
      if (static_cast<std::size_t>(k) != t.refinements.size())
        throw ParseError(l.number, "expected refine " + std::to_string(t.refinements.size()));
      t.refinements.push_back(parse_points(l.text.substr(colon + 1), l.number, static_cast<long>(max_members)));
    } else {
      throw ParseError(l.number, "unexpected line");
    }
  }
  if (t.level_paths.empty()) throw ParseError(lines.empty() ? 1 : lines.back().number, "no levels");
  return t;
}

std::string serialize_tower_file(const TowerFile& t) {
  std::ostringstream out;
  out << "tower v1\n";
  for (const auto& p : t.level_paths) out << "level: " << p << "\n";
  for (std::size_t k = 0; k < t.refinements.size(); ++k) out << "refine " << k << ": " << join(t.refinements[k]) << "\n";
  for (const auto& e : t.exhaustion) out << "exhaust: " << join(e) << "\n";
  return out.str();
}

CoverTower load_tower(const std::filesystem::path& file) {
  TowerFile t = parse_tower_file(read_file(file));
  std::vector<Cover> levels;
  for (const auto& p : t.level_paths) {
    std::filesystem::path lp(p);
    if (lp.is_relative()) lp = file.parent_path() / lp;
    levels.push_back(parse_cover(read_file(lp)));
  }
  return CoverTower(std::move(levels), std::move(t.refinements), std::move(t.exhaustion));
}

GroupTower parse_gtower(const std::string& text) {
  auto lines = content_lines(text, "gtower v1");
  if (lines.empty()) throw ParseError(1, "missing 'kind:'");
  std::string kind = expect_key(lines[0], "kind");
  std::size_t pos = 1;
  if (kind == "periodic") {
    FpGroup g = parse_group_block(lines, pos, true);
    IntMatrix m = parse_map_rows(lines, pos, g.generator_count(), g.generator_count());
    if (pos != lines.size()) throw ParseError(lines[pos].number, "unexpected line");
    return GroupTower::periodic(g, GroupHom(g, g, std::move(m)));
  }
  if (kind != "explicit") throw ParseError(lines[0].number, "kind must be 'periodic' or 'explicit'");
  std::vector<FpGroup> stages;
  while (pos < lines.size() && lines[pos].text.rfind("stage ", 0) == 0) {
    long k = parse_bounded(trim(lines[pos].text.substr(6)), lines[pos].number, 0, max_stages, "stage index");
    if (static_cast<std::size_t>(k) != stages.size())
      throw ParseError(lines[pos].number, "expected stage " + std::to_string(stages.size()));
    ++pos;
    stages.push_back(parse_group_block(lines, pos, true));
  }
  if (stages.empty()) throw ParseError(pos < lines.size() ? lines[pos].number : lines.back().number, "no stages");
  std::vector<GroupHom> bonds;
  while (pos < lines.size() && lines[pos].text.rfind("bond ", 0) == 0) {
    long k = parse_bounded(trim(lines[pos].text.substr(5)), lines[pos].number, 0, max_stages, "bond index");
    if (static_cast<std::size_t>(k) != bonds.size() || bonds.size() + 1 >= stages.size())
      throw ParseError(lines[pos].number, "unexpected bond " + std::to_string(k));
    ++pos;
    const FpGroup& src = stages[bonds.size() + 1];
    const FpGroup& tgt = stages[bonds.size()];
    IntMatrix m = parse_map_rows(lines, pos, tgt.generator_count(), src.generator_count());
    bonds.emplace_back(src, tgt, std::move(m));
  }
  if (pos != lines.size()) throw ParseError(lines[pos].number, "unexpected line");
  return GroupTower::explicit_tower(std::move(stages), std::move(bonds));
}

std::string serialize_gtower(const GroupTower& t) {
  std::ostringstream out;
  out << "gtower v1\n";
  if (t.is_periodic()) {
    out << "kind: periodic\n";
    group_block(out, t.stage(0), true);
    map_rows(out, t.bond(0).matrix());
    return out.str();
  }
  out << "kind: explicit\n";
  for (std::size_t k = 0; k < t.stored_stages(); ++k) {
    out << "stage " << k << "\n";
    group_block(out, t.stage(k), true);
  }
  for (std::size_t k = 0; k + 1 < t.stored_stages(); ++k) {
    out << "bond " << k << "\n";
    map_rows(out, t.bond(k).matrix());
  }
  return out.str();
}

TowerCochain parse_tower_cochain(const std::string& text, int degree) {
  std::size_t colon = text.find(':');
  if (colon == std::string::npos) throw ParseError(0, "cochain must look like 'level: v v v'");
  TowerCochain c;
  c.level = static_cast<std::size_t>(parse_bounded(trim(text.substr(0, colon)), 0, 0, max_levels, "level"));
  c.degree = degree;
  c.values = parse_ints(text.substr(colon + 1), 0);
  return c;
}

}  // namespace dtop::io
