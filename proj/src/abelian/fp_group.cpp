#include "dtop/fp_group.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>

#include "dtop/budget.hpp"
#include "dtop/errors.hpp"

namespace dtop {

FpGroup::FpGroup() : FpGroup(0, IntMatrix(0, 0)) {}

FpGroup::FpGroup(std::size_t generators, IntMatrix relations) {
  if (relations.rows() != generators)
    throw ValidationError("presentation-shape", "relation matrix has " +
                                                    std::to_string(relations.rows()) +
                                                    " rows for " + std::to_string(generators) +
                                                    " generators");
  auto d = std::make_shared<Data>();
  d->generators = generators;
  d->relations = std::move(relations);
  SmithDecomposition snf = smith_normal_form(d->relations);
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < generators; ++i) {
    if (i < snf.rank) {
      const Int& di = snf.S(i, i);
      if (di == 1) continue;
      d->torsion.push_back(di);
      d->moduli.push_back(di);
    } else {
      d->moduli.push_back(0);
      ++d->free_rank;
    }
    rows.push_back(i);
  }
  d->to_canon = snf.U.select_rows(rows);
  d->from_canon = snf.U_inv.select_columns(rows);
  data_ = std::move(d);
}

FpGroup FpGroup::free(std::size_t rank) { return FpGroup(rank, IntMatrix(rank, 0)); }

FpGroup FpGroup::cyclic(const Int& n) {
  if (n < 1) throw ValidationError("cyclic-order", "Z/" + n.get_str());
  IntMatrix r(1, 1);
  r(0, 0) = n;
  return FpGroup(1, r);
}

FpGroup FpGroup::from_invariants(const std::vector<Int>& torsion, std::size_t free_rank) {
  std::size_t k = torsion.size() + free_rank;
  return FpGroup(k, IntMatrix::diagonal(k, torsion.size(), torsion));
}

FpGroup FpGroup::direct_sum(const FpGroup& a, const FpGroup& b) {
  return FpGroup(a.generator_count() + b.generator_count(),
                 block_diag(a.relations(), b.relations()));
}

FpGroup FpGroup::power(const FpGroup& g, std::size_t k) {
  return FpGroup(g.generator_count() * k, repeat_diag(g.relations(), k));
}

Int FpGroup::order() const {
  if (!is_finite()) throw ValidationError("finite-group", "order of infinite group " + canonical_string());
  Int n = 1;
  for (const auto& d : torsion()) n *= d;
  return n;
}

Int FpGroup::exponent_of_torsion() const {
  return torsion().empty() ? Int(1) : torsion().back();
}

Vec FpGroup::generator(std::size_t i) const {
  Vec v = zero();
  v.at(i) = 1;
  return v;
}

void FpGroup::check_element(const Vec& x) const {
  if (x.size() != generator_count())
    throw ValidationError("element-length", std::to_string(x.size()) + " coordinates for " +
                                                std::to_string(generator_count()) + " generators");
}

Vec FpGroup::reduce(const Vec& x) const {
  check_element(x);
  Vec y = data_->to_canon * x;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (data_->moduli[i] != 0) y[i] = mod_floor(y[i], data_->moduli[i]);
  return y;
}

Vec FpGroup::lift(const Vec& canonical) const {
  if (canonical.size() != invariant_count())
    throw ValidationError("element-length", "canonical coordinate count");
  return data_->from_canon * canonical;
}

bool FpGroup::is_zero(const Vec& x) const { return dtop::is_zero(reduce(x)); }

std::vector<Vec> FpGroup::canonical_elements() const {
  if (!is_finite()) throw ValidationError("finite-group", "cannot enumerate " + canonical_string());
  Int n = order();
  if (n > Int(static_cast<unsigned long>(enumeration_budget())))
    throw BudgetError("group enumeration", n.get_d(), static_cast<double>(enumeration_budget()));
  std::vector<Vec> out;
  out.reserve(n.get_ui());
  Vec cur = zero_vec(invariant_count());
  for (unsigned long c = 0; c < n.get_ui(); ++c) {
    out.push_back(cur);
    for (std::size_t i = cur.size(); i-- > 0;) {
      cur[i] += 1;
      if (cur[i] < data_->moduli[i]) break;
      cur[i] = 0;
    }
  }
  return out;
}

std::string FpGroup::canonical_string() const {
  std::vector<std::string> parts;
  if (free_rank() == 1) parts.push_back("Z");
  if (free_rank() > 1) parts.push_back("Z^" + std::to_string(free_rank()));
  for (const auto& d : torsion()) parts.push_back("Z/" + d.get_str());
  if (parts.empty()) return "0";
  std::string s = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) s += " + " + parts[i];
  return s;
}

// ---------------------------------------------------------------------------

GroupHom::GroupHom(FpGroup source, FpGroup target, IntMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != target_.generator_count() || matrix_.cols() != source_.generator_count())
    throw ValidationError("hom-shape", std::to_string(matrix_.rows()) + "x" +
                                           std::to_string(matrix_.cols()) + " matrix for " +
                                           std::to_string(source_.generator_count()) + " -> " +
                                           std::to_string(target_.generator_count()));
  const IntMatrix& rel = source_.relations();
  for (std::size_t j = 0; j < rel.cols(); ++j) {
    Vec image = matrix_ * rel.column(j);
    if (!target_.is_zero(image))
      throw ValidationError("hom-well-defined", "relator " + std::to_string(j) + " maps to " +
                                                    to_string(target_.reduce(image)));
  }
}

GroupHom GroupHom::identity(const FpGroup& g) {
  return GroupHom(g, g, IntMatrix::identity(g.generator_count()));
}

GroupHom GroupHom::zero(const FpGroup& source, const FpGroup& target) {
  return GroupHom(source, target, IntMatrix(target.generator_count(), source.generator_count()));
}

GroupHom GroupHom::after(const GroupHom& first) const {
  if (first.target().generator_count() != source_.generator_count() ||
      !(first.target().relations() == source_.relations()))
    throw ValidationError("hom-compose", "target of first map is not the source of the second");
  return GroupHom(first.source(), target_, matrix_ * first.matrix());
}

bool GroupHom::equals(const GroupHom& other) const {
  if (matrix_.rows() != other.matrix_.rows() || matrix_.cols() != other.matrix_.cols()) return false;
  for (std::size_t j = 0; j < matrix_.cols(); ++j)
    if (!target_.is_zero(matrix_.column(j) - other.matrix_.column(j))) return false;
  return true;
}

bool GroupHom::is_zero() const {
  for (std::size_t j = 0; j < matrix_.cols(); ++j)
    if (!target_.is_zero(matrix_.column(j))) return false;
  return true;
}

IntMatrix GroupHom::canonical_matrix() const {
  IntMatrix m(target_.invariant_count(), source_.invariant_count());
  for (std::size_t j = 0; j < source_.invariant_count(); ++j) {
    Vec e = zero_vec(source_.invariant_count());
    e[j] = 1;
    Vec y = target_.reduce(matrix_ * source_.lift(e));
    for (std::size_t i = 0; i < y.size(); ++i) m(i, j) = y[i];
  }
  return m;
}

// ---------------------------------------------------------------------------

Subgroup::Subgroup(FpGroup ambient, IntMatrix generators)
    : ambient_(std::move(ambient)), generators_(std::move(generators)) {
  if (generators_.rows() != ambient_.generator_count())
    throw ValidationError("element-length", "subgroup generators have wrong length");
  solver_ = std::make_shared<IntegerSolver>(hcat(generators_, ambient_.relations()));
}

Subgroup Subgroup::trivial(const FpGroup& ambient) {
  return Subgroup(ambient, IntMatrix(ambient.generator_count(), 0));
}

Subgroup Subgroup::whole(const FpGroup& ambient) {
  return Subgroup(ambient, IntMatrix::identity(ambient.generator_count()));
}

const IntegerSolver& Subgroup::solver() const { return *solver_; }

std::optional<Vec> Subgroup::coefficients(const Vec& x) const {
  ambient_.check_element(x);
  auto z = solver().solve(x);
  if (!z) return std::nullopt;
  z->resize(generators_.cols());
  return z;
}

bool Subgroup::contains(const Vec& x) const {
  ambient_.check_element(x);
  return solver().solvable(x);
}

bool Subgroup::is_trivial() const {
  for (std::size_t j = 0; j < generators_.cols(); ++j)
    if (!ambient_.is_zero(generators_.column(j))) return false;
  return true;
}

bool Subgroup::contains(const Subgroup& other) const {
  if (other.ambient_.generator_count() != ambient_.generator_count())
    throw ValidationError("ambient-mismatch");
  for (std::size_t j = 0; j < other.generators_.cols(); ++j)
    if (!contains(other.generators_.column(j))) return false;
  return true;
}

FpGroup Subgroup::as_group() const {
  IntMatrix k = solver().kernel();
  return FpGroup(generators_.cols(), k.row_range(0, generators_.cols()));
}

namespace {

void require_same_ambient(const Subgroup& a, const Subgroup& b) {
  const FpGroup& x = a.ambient();
  const FpGroup& y = b.ambient();
  if (x.generator_count() != y.generator_count() || !(x.relations() == y.relations()))
    throw ValidationError("ambient-mismatch", x.canonical_string() + " vs " + y.canonical_string());
}

}  // namespace

Subgroup kernel(const GroupHom& h) {
  std::size_t a = h.source().generator_count();
  IntMatrix k = integer_kernel(hcat(h.matrix(), h.target().relations()));
  return Subgroup(h.source(), k.row_range(0, a));
}

Subgroup image(const GroupHom& h) { return Subgroup(h.target(), h.matrix()); }

Subgroup image(const GroupHom& h, const Subgroup& s) {
  if (s.ambient().generator_count() != h.source().generator_count())
    throw ValidationError("ambient-mismatch", "subgroup is not in the source of the map");
  return Subgroup(h.target(), h.matrix() * s.generators());
}

FpGroup cokernel(const GroupHom& h) {
  return FpGroup(h.target().generator_count(), hcat(h.target().relations(), h.matrix()));
}

FpGroup quotient(const Subgroup& s) {
  return FpGroup(s.ambient().generator_count(), hcat(s.ambient().relations(), s.generators()));
}

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  require_same_ambient(a, b);
  IntMatrix neg_b = Int(-1) * b.generators();
  IntMatrix k = integer_kernel(hcat({&a.generators(), &neg_b, &a.ambient().relations()}));
  IntMatrix coeffs = k.row_range(0, a.generator_count());
  return compact(Subgroup(a.ambient(), a.generators() * coeffs));
}

Subgroup compact(const Subgroup& s) {
  // Image of [canonical generators | torsion moduli] is spanned by the columns
  // of U^-1·S, at most one per canonical coordinate.
  const FpGroup& g = s.ambient();
  std::size_t n = g.invariant_count();
  IntMatrix y = g.to_canonical() * s.generators();
  IntMatrix d(n, n);
  for (std::size_t i = 0; i < n; ++i) d(i, i) = g.moduli()[i];
  SmithDecomposition snf = smith_normal_form(hcat(y, d));
  std::vector<Vec> cols;
  for (std::size_t j = 0; j < snf.rank; ++j) {
    Vec c = snf.U_inv.column(j);
    for (auto& x : c) x *= snf.S(j, j);
    c = g.lift(g.reduce(g.lift(c)));
    if (!g.is_zero(c)) cols.push_back(std::move(c));
  }
  IntMatrix out(g.generator_count(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < g.generator_count(); ++i) out(i, j) = cols[j][i];
  return Subgroup(g, std::move(out));
}

Subgroup sum(const Subgroup& a, const Subgroup& b) {
  require_same_ambient(a, b);
  return Subgroup(a.ambient(), hcat(a.generators(), b.generators()));
}

bool subgroup_equal(const Subgroup& a, const Subgroup& b) {
  require_same_ambient(a, b);
  return a.contains(b) && b.contains(a);
}

// ---------------------------------------------------------------------------

Subquotient::Subquotient(const Subgroup& numerator, const Subgroup& denominator)
    : numerator_(numerator), denominator_(denominator) {
  require_same_ambient(numerator, denominator);
  if (!numerator.contains(denominator))
    throw ValidationError("subquotient-containment", "denominator is not inside numerator");
  std::size_t t = numerator.generator_count();
  auto solver = std::make_shared<IntegerSolver>(
      hcat({&numerator.generators(), &denominator.generators(), &numerator.ambient().relations()}));
  // z ↦ class of N·z; its kernel is {z : N z ∈ D + R}.
  group_ = FpGroup(t, solver->kernel().row_range(0, t));
  solver_ = std::move(solver);
}

Vec Subquotient::classify(const Vec& x) const {
  auto z = solver_->solve(x);
  if (!z) throw ValidationError("subquotient-membership", to_string(x));
  z->resize(numerator_.generator_count());
  return *z;
}

bool Subquotient::contains(const Vec& x) const { return solver_->solvable(x); }

GroupHom induced_on_subquotients(const Subquotient& from, const Subquotient& to,
                                 const IntMatrix& ambient_map) {
  const IntMatrix& gens = from.numerator().generators();
  IntMatrix images = ambient_map * gens;
  IntMatrix m(to.group().generator_count(), from.group().generator_count());
  for (std::size_t j = 0; j < images.cols(); ++j) {
    Vec z = to.classify(images.column(j));
    for (std::size_t i = 0; i < z.size(); ++i) m(i, j) = z[i];
  }
  return GroupHom(from.group(), to.group(), std::move(m));
}

// ---------------------------------------------------------------------------

FpGroup parse_group_literal(const std::string& text) {
  std::vector<Int> torsion;
  std::size_t free_rank = 0;
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto read_number = [&]() -> Int {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos || pos - start > 40)
      throw ParseError(0, "group literal '" + text + "': expected a number at offset " +
                              std::to_string(start));
    return Int(text.substr(start, pos - start), 10);
  };
  bool any = false;
  for (;;) {
    skip_ws();
    if (pos >= text.size()) break;
    if (any) {
      if (text[pos] != '+') throw ParseError(0, "group literal '" + text + "': expected '+'");
      ++pos;
      skip_ws();
    }
    if (pos < text.size() && text[pos] == '0') {
      ++pos;
    } else if (pos < text.size() && text[pos] == 'Z') {
      ++pos;
      skip_ws();
      if (pos < text.size() && text[pos] == '/') {
        ++pos;
        Int n = read_number();
        if (n < 1) throw ParseError(0, "group literal '" + text + "': Z/0 is not allowed");
        if (n > 1) torsion.push_back(n);
      } else if (pos < text.size() && text[pos] == '^') {
        ++pos;
        Int k = read_number();
        if (k > 10000) throw ParseError(0, "group literal '" + text + "': rank too large");
        free_rank += k.get_ui();
      } else {
        free_rank += 1;
      }
    } else {
      throw ParseError(0, "group literal '" + text + "': expected Z, Z/n, Z^k or 0");
    }
    any = true;
  }
  if (!any) throw ParseError(0, "empty group literal");
  std::size_t k = torsion.size() + free_rank;
  return FpGroup(k, IntMatrix::diagonal(k, torsion.size(), torsion));
}

}  // namespace dtop
