#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dtop/covers.hpp"
#include "dtop/fp_group.hpp"
#include "dtop/simplicial.hpp"
#include "dtop/towers.hpp"

namespace dtop::io {

// Input size limits. Anything larger is rejected as a parse error so that a
// malformed file cannot make the tools allocate without bound.
inline constexpr std::size_t max_generators = 256;
inline constexpr std::size_t max_matrix_dim = 256;
inline constexpr std::size_t max_lines = 20000;
inline constexpr std::size_t max_simplex_vertices = 10;
inline constexpr int max_vertex = 1000000;
inline constexpr std::size_t max_ground = 100000;
inline constexpr std::size_t max_members = 2000;
inline constexpr std::size_t max_levels = 64;
inline constexpr std::size_t max_stages = 64;
inline constexpr std::size_t max_digits = 60;

// All parsers take the file text; `source` only labels messages. Errors are
// ParseError with a 1-based line number, or ValidationError for structural
// rules checked after parsing.
FpGroup parse_fpgroup(const std::string& text);
std::string serialize_fpgroup(const FpGroup& g);

IntMatrix parse_intmatrix(const std::string& text);
std::string serialize_intmatrix(const IntMatrix& m);

SimplicialComplex parse_scomplex(const std::string& text);
std::string serialize_scomplex(const SimplicialComplex& k);

std::map<int, int> parse_smap(const std::string& text);
std::string serialize_smap(const std::map<int, int>& m);

Cover parse_cover(const std::string& text);
std::string serialize_cover(const Cover& c);

/// `tower v1`: level files are resolved against `dir`.
struct TowerFile {
  std::vector<std::string> level_paths;
  std::vector<std::vector<int>> refinements;  // refine k: level k+1 → level k
  std::vector<std::vector<int>> exhaustion;
};
TowerFile parse_tower_file(const std::string& text);
std::string serialize_tower_file(const TowerFile& t);
CoverTower load_tower(const std::filesystem::path& file);

GroupTower parse_gtower(const std::string& text);
std::string serialize_gtower(const GroupTower& t);

std::string read_file(const std::filesystem::path& p);

// `level: v v v` for a tower cochain of the given degree.
TowerCochain parse_tower_cochain(const std::string& text, int degree);

}  // namespace dtop::io
