#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dtop/integer.hpp"

namespace dtop {

// Vertices in ascending order.
using Simplex = std::vector<int>;

std::string to_string(const Simplex& s);

/// Finite abstract simplicial complex, stored downward closed and grouped by
/// dimension with each dimension in lexicographic order.
class SimplicialComplex {
 public:
  SimplicialComplex();  // empty

  // Closure of the given simplices. Vertex lists may be unsorted but must not
  // repeat a vertex. Throws BudgetError if the closure exceeds the budget.
  static SimplicialComplex from_maximal(const std::vector<Simplex>& simplices);
  // Already downward closed list; checks closure.
  static SimplicialComplex from_closed(std::vector<Simplex> simplices);
  static SimplicialComplex simplex(int n);       // Δ^n on 0..n
  static SimplicialComplex sphere_model(int n);  // ∂Δ^{n+1} on 0..n+1

  int dimension() const { return static_cast<int>(data_->by_dim.size()) - 1; }
  bool empty() const { return data_->by_dim.empty(); }
  const std::vector<int>& vertices() const { return data_->vertices; }
  const std::vector<Simplex>& simplices(int dim) const;
  std::size_t count(int dim) const { return simplices(dim).size(); }
  std::size_t size() const;

  bool contains(const Simplex& s) const { return index_of(s).has_value(); }
  bool contains_vertex(int v) const;
  std::optional<std::size_t> index_of(const Simplex& s) const;

  SimplicialComplex skeleton(int n) const;
  // Simplices all of whose vertices lie in `keep`.
  SimplicialComplex full_subcomplex(const std::vector<int>& keep) const;
  std::vector<Simplex> maximal_simplices() const;
  bool is_subcomplex_of(const SimplicialComplex& other) const;

  friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
    return a.data_ == b.data_ || a.data_->by_dim == b.data_->by_dim;
  }

 private:
  struct Data {
    std::vector<int> vertices;
    std::vector<std::vector<Simplex>> by_dim;
    std::vector<std::map<Simplex, std::size_t>> index;
  };
  explicit SimplicialComplex(std::vector<std::vector<Simplex>> by_dim);
  std::shared_ptr<const Data> data_;
};

/// Vertex map carrying every simplex of the source onto a simplex of the target.
class SimplicialMap {
 public:
  // Throws ValidationError("simplicial-map") with the offending simplex.
  SimplicialMap(SimplicialComplex source, SimplicialComplex target, std::map<int, int> vertex_map);

  static SimplicialMap identity(const SimplicialComplex& k);
  static SimplicialMap constant(const SimplicialComplex& source, const SimplicialComplex& target, int v);
  static SimplicialMap inclusion(const SimplicialComplex& sub, const SimplicialComplex& k);

  const SimplicialComplex& source() const { return source_; }
  const SimplicialComplex& target() const { return target_; }
  const std::map<int, int>& vertex_map() const { return map_; }

  int operator()(int v) const;
  // Image vertex tuple in the order of s (may repeat vertices).
  Simplex apply(const Simplex& s) const;
  Simplex image(const Simplex& s) const;  // sorted, deduplicated

  SimplicialMap after(const SimplicialMap& first) const;  // this ∘ first
  SimplicialMap restrict_to(const SimplicialComplex& sub) const;
  bool maps_into(const SimplicialComplex& source_sub, const SimplicialComplex& target_sub) const;

 private:
  SimplicialComplex source_;
  SimplicialComplex target_;
  std::map<int, int> map_;
};

/// A complex with a subcomplex; the subcomplex may be empty.
class SimplicialPair {
 public:
  explicit SimplicialPair(SimplicialComplex complex);
  SimplicialPair(SimplicialComplex complex, SimplicialComplex subcomplex);  // checks inclusion

  const SimplicialComplex& complex() const { return complex_; }
  const SimplicialComplex& subcomplex() const { return sub_; }
  bool is_absolute() const { return sub_.empty(); }

 private:
  SimplicialComplex complex_;
  SimplicialComplex sub_;
};

// Oriented chains with simplices stored ascending; zero coefficients removed.
using Chain = std::map<Simplex, Int>;

// Sorts `tuple` ascending and returns the sign of the sorting permutation,
// or 0 when a vertex repeats.
int orientation_sign(Simplex& tuple);
void add_oriented(Chain& c, Simplex tuple, const Int& coefficient);
Chain boundary(const Chain& c);
Chain push_forward(const SimplicialMap& f, const Chain& c);
Chain operator+(const Chain& a, const Chain& b);
Chain operator-(const Chain& a, const Chain& b);
Chain operator*(const Int& s, const Chain& c);

}  // namespace dtop
