#include "dtop/abelian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "dtop/budget.hpp"
#include "dtop/errors.hpp"

namespace dtop {

namespace {

double as_double_pow(double base, double exponent) { return std::pow(base, exponent); }

void check_budget(const char* what, double required) {
  auto budget = static_cast<double>(enumeration_budget());
  if (required > budget) throw BudgetError(what, required, budget);
}

FpGroup invariant_presentation(const FpGroup& g) {
  return FpGroup::from_invariants(g.torsion(), g.free_rank());
}

// Mixed-radix indexing of canonical elements of a finite group.
struct ElementIndex {
  std::vector<Int> moduli;
  std::size_t index(const Vec& canonical) const {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < moduli.size(); ++i)
      idx = idx * moduli[i].get_ui() + canonical[i].get_ui();
    return idx;
  }
  Vec add(const Vec& a, const Vec& b) const {
    Vec c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = mod_floor(a[i] + b[i], moduli[i]);
    return c;
  }
};

}  // namespace

// ---------------------------------------------------------------------------

namespace {

Subquotient make_hom_subquotient(const FpGroup& a, const FpGroup& b) {
  std::size_t na = a.generator_count(), nb = b.generator_count();
  std::size_t r = a.relations().cols();
  FpGroup entries = FpGroup::free(na * nb);
  // vec(M·R_A) = (R_Aᵀ ⊗ I_b) vec(M) must lie in span(I_r ⊗ R_B).
  IntMatrix constraint = kron(a.relations().transpose(), IntMatrix::identity(nb));
  IntMatrix allowed = repeat_diag(b.relations(), r);
  IntMatrix k = integer_kernel(hcat(constraint, Int(-1) * allowed));
  Subgroup homs(entries, k.row_range(0, na * nb));
  Subgroup trivial_maps(entries, repeat_diag(b.relations(), na));
  return Subquotient(homs, trivial_maps);
}

}  // namespace

HomGroup::HomGroup(FpGroup source, FpGroup target)
    : source_(std::move(source)), target_(std::move(target)),
      quotient_(make_hom_subquotient(source_, target_)) {}

GroupHom HomGroup::decode(const Vec& element) const {
  Vec entries = quotient_.representative(element);
  std::size_t nb = target_.generator_count();
  IntMatrix m(nb, source_.generator_count());
  for (std::size_t j = 0; j < source_.generator_count(); ++j)
    for (std::size_t i = 0; i < nb; ++i) m(i, j) = entries[j * nb + i];
  return GroupHom(source_, target_, std::move(m));
}

Vec HomGroup::encode(const GroupHom& h) const {
  std::size_t nb = target_.generator_count();
  Vec entries(nb * source_.generator_count());
  for (std::size_t j = 0; j < source_.generator_count(); ++j)
    for (std::size_t i = 0; i < nb; ++i) entries[j * nb + i] = h.matrix()(i, j);
  return quotient_.classify(entries);
}

HomGroup hom_group(const FpGroup& a, const FpGroup& b) { return HomGroup(a, b); }

// ---------------------------------------------------------------------------

IntMatrix injective_presentation(const FpGroup& a) {
  SmithDecomposition d = smith_normal_form(a.relations());
  IntMatrix r(a.generator_count(), d.rank);
  for (std::size_t j = 0; j < d.rank; ++j)
    for (std::size_t i = 0; i < a.generator_count(); ++i) r(i, j) = d.U_inv(i, j) * d.S(j, j);
  return r;
}

ExtGroup ext_group_with_resolution(const IntMatrix& resolution, const FpGroup& b) {
  if (integer_kernel(resolution).cols() != 0)
    throw ValidationError("resolution-injective", "presentation matrix has a nonzero kernel");
  std::size_t k = resolution.rows(), r = resolution.cols();
  FpGroup hom_f0 = FpGroup::power(b, k);
  FpGroup hom_f1 = FpGroup::power(b, r);
  GroupHom pre(hom_f0, hom_f1, kron(resolution.transpose(), IntMatrix::identity(b.generator_count())));
  return ExtGroup{cokernel(pre), resolution, pre};
}

ExtGroup ext_group(const FpGroup& a, const FpGroup& b) {
  return ext_group_with_resolution(injective_presentation(a), b);
}

// ---------------------------------------------------------------------------

namespace {

struct CocycleSetup {
  FpGroup coeff;               // A in invariant-factor presentation
  std::vector<Vec> elements;   // of B
  ElementIndex index;
  std::size_t m = 0;           // |B|
  std::size_t a = 0;           // generators of coeff
  std::vector<std::size_t> sum;  // sum[x*m+y] = index of x+y

  CocycleSetup(const FpGroup& A, const FpGroup& B) : coeff(invariant_presentation(A)) {
    if (!A.is_finite() || !B.is_finite())
      throw ValidationError("finite-group", "cocycle enumeration needs finite A and B");
    elements = B.canonical_elements();
    index.moduli = B.moduli();
    m = elements.size();
    a = coeff.generator_count();
    sum.resize(m * m);
    for (std::size_t x = 0; x < m; ++x)
      for (std::size_t y = 0; y < m; ++y)
        sum[x * m + y] = index.index(index.add(elements[x], elements[y]));
  }

  std::size_t zero() const { return 0; }  // mixed-radix index of the zero element

  // Integer relation rows over the m² cells, deduplicated.
  IntMatrix relation_matrix() const {
    std::set<std::vector<std::pair<std::size_t, long>>> rows;
    auto add_row = [&](std::map<std::size_t, long> coeffs) {
      std::vector<std::pair<std::size_t, long>> row;
      for (auto [c, v] : coeffs)
        if (v != 0) row.emplace_back(c, v);
      if (row.empty()) return;
      if (row.front().second < 0)
        for (auto& e : row) e.second = -e.second;
      rows.insert(std::move(row));
    };
    for (std::size_t x = 0; x < m; ++x) {
      std::map<std::size_t, long> r;
      r[x * m + zero()] += 1;
      r[zero() * m + x] -= 1;
      add_row(r);
    }
    for (std::size_t x = 0; x < m; ++x)
      for (std::size_t y = 0; y < m; ++y) {
        std::map<std::size_t, long> sym;
        sym[x * m + y] += 1;
        sym[y * m + x] -= 1;
        add_row(sym);
        for (std::size_t z = 0; z < m; ++z) {
          std::map<std::size_t, long> r;
          r[x * m + y] += 1;
          r[sum[x * m + y] * m + z] += 1;
          r[x * m + sum[y * m + z]] -= 1;
          r[y * m + z] -= 1;
          add_row(r);
        }
      }
    IntMatrix c(rows.size(), m * m);
    std::size_t i = 0;
    for (const auto& row : rows) {
      for (auto [col, v] : row) c(i, col) = v;
      ++i;
    }
    return c;
  }

  IntMatrix coboundary_generators() const {
    IntMatrix d(m * m, m);
    for (std::size_t x = 0; x < m; ++x)
      for (std::size_t y = 0; y < m; ++y) {
        d(x * m + y, x) += 1;
        d(x * m + y, y) += 1;
        d(x * m + y, sum[x * m + y]) -= 1;
      }
    return kron(d, IntMatrix::identity(a));
  }

  bool satisfies(const std::vector<Vec>& t) const {
    auto eq = [&](const Vec& u, const Vec& v) { return coeff.is_zero(u - v); };
    for (std::size_t x = 0; x < m; ++x)
      if (!eq(t[x * m], t[x])) return false;
    for (std::size_t x = 0; x < m; ++x)
      for (std::size_t y = 0; y < m; ++y) {
        if (!eq(t[x * m + y], t[y * m + x])) return false;
        for (std::size_t z = 0; z < m; ++z)
          if (!eq(t[x * m + y] + t[sum[x * m + y] * m + z], t[x * m + sum[y * m + z]] + t[y * m + z]))
            return false;
      }
    return true;
  }

  Vec flatten(const std::vector<Vec>& t) const {
    Vec v(m * m * a);
    for (std::size_t c = 0; c < m * m; ++c)
      for (std::size_t j = 0; j < a; ++j) v[c * a + j] = t[c][j];
    return v;
  }

  std::vector<Vec> unflatten(const Vec& v) const {
    std::vector<Vec> t(m * m, zero_vec(a));
    for (std::size_t c = 0; c < m * m; ++c)
      for (std::size_t j = 0; j < a; ++j) t[c][j] = mod_floor(v[c * a + j], coeff.moduli()[j]);
    return t;
  }
};

IntMatrix cocycles_by_relations(const CocycleSetup& s) {
  IntMatrix c = s.relation_matrix();
  SmithDecomposition d = smith_normal_form_right(c);
  std::vector<Vec> gens;
  std::size_t cells = s.m * s.m;
  for (std::size_t j = 0; j < s.a; ++j) {
    const Int& mod = s.coeff.moduli()[j];
    for (std::size_t i = 0; i < cells; ++i) {
      Int scale = 1;
      if (i < d.rank) {
        Int g;
        mpz_gcd(g.get_mpz_t(), mod.get_mpz_t(), d.S(i, i).get_mpz_t());
        scale = mod / g;
      }
      if (scale == mod) continue;  // multiple of the modulus: zero in A
      Vec gen(cells * s.a);
      for (std::size_t cell = 0; cell < cells; ++cell) gen[cell * s.a + j] = scale * d.V(cell, i);
      gens.push_back(std::move(gen));
    }
  }
  return IntMatrix::from_columns(cells * s.a, gens);
}

IntMatrix cocycles_by_enumeration(const CocycleSetup& s) {
  std::size_t cells = s.m * s.m;
  std::vector<Vec> values = s.coeff.canonical_elements();
  std::vector<std::size_t> digit(cells, 0);
  std::vector<Vec> gens;
  for (;;) {
    std::vector<Vec> table(cells);
    for (std::size_t c = 0; c < cells; ++c) table[c] = values[digit[c]];
    if (s.satisfies(table)) gens.push_back(s.flatten(table));
    std::size_t c = cells;
    while (c-- > 0) {
      if (++digit[c] < values.size()) break;
      digit[c] = 0;
    }
    if (c == static_cast<std::size_t>(-1)) break;
  }
  return IntMatrix::from_columns(cells * s.a, gens);
}

}  // namespace

CocycleExtGroup cocycle_ext_group(const FpGroup& a, const FpGroup& b, CocycleStrategy strategy) {
  if (!a.is_finite() || !b.is_finite())
    throw ValidationError("finite-group", "cocycle_ext_group needs finite groups");
  double nb = b.order().get_d();
  double na = a.order().get_d();
  double table_space = as_double_pow(na, nb * nb);
  if (strategy == CocycleStrategy::automatic)
    strategy = table_space <= static_cast<double>(enumeration_budget())
                   ? CocycleStrategy::enumerate_tables
                   : CocycleStrategy::solve_relations;
  if (strategy == CocycleStrategy::enumerate_tables)
    check_budget("symmetric cocycle table enumeration |A|^(|B|^2)", table_space);
  else
    check_budget("cocycle relation system |B|^3", nb * nb * nb);

  CocycleSetup s(a, b);
  FpGroup ambient = FpGroup::power(s.coeff, s.m * s.m);
  IntMatrix numerator = strategy == CocycleStrategy::enumerate_tables ? cocycles_by_enumeration(s)
                                                                      : cocycles_by_relations(s);
  Subgroup cocycles(ambient, numerator);
  Subgroup coboundaries(ambient, s.coboundary_generators());
  Subquotient classes(cocycles, coboundaries);

  CocycleExtGroup out{classes.group(), {}, classes, s.coeff, b, s.elements};
  for (const Vec& e : out.group.canonical_elements())
    out.representatives.push_back(out.representative_of(e));
  return out;
}

SymmetricCocycle CocycleExtGroup::representative_of(const Vec& canonical) const {
  Vec flat = classes.representative(group.lift(canonical));
  std::size_t m = base_elements.size();
  std::size_t a = coefficients.generator_count();
  SymmetricCocycle c{coefficients, base, m, std::vector<Vec>(m * m, zero_vec(a))};
  for (std::size_t cell = 0; cell < m * m; ++cell)
    for (std::size_t j = 0; j < a; ++j)
      c.table[cell][j] = mod_floor(flat[cell * a + j], coefficients.moduli()[j]);
  return c;
}

Vec CocycleExtGroup::class_of(const SymmetricCocycle& c) const {
  std::size_t a = c.coefficients.generator_count();
  Vec flat(c.table.size() * a);
  for (std::size_t cell = 0; cell < c.table.size(); ++cell)
    for (std::size_t j = 0; j < a; ++j) flat[cell * a + j] = c.table[cell][j];
  return group.reduce(classes.classify(flat));
}

bool CocycleExtGroup::is_cocycle(const SymmetricCocycle& c) const {
  std::size_t a = c.coefficients.generator_count();
  Vec flat(c.table.size() * a);
  for (std::size_t cell = 0; cell < c.table.size(); ++cell)
    for (std::size_t j = 0; j < a; ++j) flat[cell * a + j] = c.table[cell][j];
  return classes.numerator().contains(flat);
}

SymmetricCocycle baer_sum(const SymmetricCocycle& x, const SymmetricCocycle& y) {
  if (x.table.size() != y.table.size())
    throw ValidationError("cocycle-shape", "tables over different base groups");
  SymmetricCocycle s = x;
  for (std::size_t c = 0; c < s.table.size(); ++c) {
    s.table[c] = x.table[c] + y.table[c];
    for (std::size_t j = 0; j < s.table[c].size(); ++j)
      s.table[c][j] = mod_floor(s.table[c][j], s.coefficients.moduli()[j]);
  }
  return s;
}

}  // namespace dtop

namespace dtop {

FpGroup extension_group(const SymmetricCocycle& c) {
  const FpGroup& A = c.coefficients;
  std::size_t a = A.generator_count();
  std::size_t m = c.base_size;
  std::vector<Vec> elements = c.base.canonical_elements();
  ElementIndex index{c.base.moduli()};
  std::vector<Vec> rels;
  for (std::size_t j = 0; j < A.relations().cols(); ++j) {
    Vec r = zero_vec(a + m);
    for (std::size_t i = 0; i < a; ++i) r[i] = A.relations()(i, j);
    rels.push_back(std::move(r));
  }
  // [x] + [y] − [x + y] − c(x, y) = 0
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y) {
      Vec r = zero_vec(a + m);
      r[a + x] += 1;
      r[a + y] += 1;
      r[a + index.index(index.add(elements[x], elements[y]))] -= 1;
      for (std::size_t i = 0; i < a; ++i) r[i] -= c.at(x, y)[i];
      rels.push_back(std::move(r));
    }
  return FpGroup(a + m, IntMatrix::from_columns(a + m, rels));
}

std::vector<IntMatrix> automorphisms(const FpGroup& group) {
  if (!group.is_finite()) throw ValidationError("finite-group", "automorphisms of an infinite group");
  FpGroup A = invariant_presentation(group);
  std::size_t k = A.generator_count();
  double candidates = std::pow(group.order().get_d(), static_cast<double>(k));
  check_budget("automorphism enumeration |A|^k", candidates);
  std::vector<Vec> elements = A.canonical_elements();
  std::vector<std::size_t> digit(k, 0);
  std::vector<IntMatrix> out;
  for (;;) {
    IntMatrix m(k, k);
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < k; ++i) m(i, j) = elements[digit[j]][i];
    bool well_defined = true;
    for (std::size_t j = 0; j < k && well_defined; ++j)
      well_defined = A.is_zero(A.moduli()[j] * m.column(j));
    if (well_defined && kernel(GroupHom(A, A, m)).is_trivial()) out.push_back(std::move(m));
    std::size_t c = k;
    while (c-- > 0) {
      if (++digit[c] < elements.size()) break;
      digit[c] = 0;
    }
    if (c == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

ExtOrbits aut_orbits_on_ext(const FpGroup& group) {
  if (!group.is_finite()) throw ValidationError("finite-group", "aut_orbits_on_ext needs finite A");
  FpGroup A = invariant_presentation(group);
  ExtGroup ext = ext_group(A, FpGroup::free(1));
  const IntMatrix& res = ext.resolution;
  IntegerSolver lift(res);
  std::vector<IntMatrix> auts = automorphisms(A);

  std::vector<Vec> elements = ext.group.canonical_elements();
  ElementIndex index{ext.group.moduli()};
  std::vector<std::size_t> parent(elements.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const IntMatrix& f : auts) {
    // Lift f: F_0 → F_0 to F_1 → F_1 through res·N = f·res.
    IntMatrix target = f * res;
    IntMatrix n(res.cols(), res.cols());
    for (std::size_t j = 0; j < res.cols(); ++j) {
      auto col = lift.solve(target.column(j));
      if (!col) throw ValidationError("resolution-lift", "automorphism does not lift");
      for (std::size_t i = 0; i < res.cols(); ++i) n(i, j) = (*col)[i];
    }
    IntMatrix action = n.transpose();  // φ ↦ φ ∘ N on Hom(F_1, Z)
    for (std::size_t e = 0; e < elements.size(); ++e) {
      Vec image = ext.group.reduce(action * ext.group.lift(elements[e]));
      std::size_t x = find(e), y = find(index.index(image));
      if (x != y) parent[std::max(x, y)] = std::min(x, y);
    }
  }
  std::map<std::size_t, std::vector<Vec>> by_root;
  for (std::size_t e = 0; e < elements.size(); ++e) by_root[find(e)].push_back(elements[e]);
  ExtOrbits out{ext.group, {}, auts.size()};
  for (auto& [root, orbit] : by_root) out.orbits.push_back(std::move(orbit));
  return out;
}

}  // namespace dtop
