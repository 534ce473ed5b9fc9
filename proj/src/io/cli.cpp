#include "dtop/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <new>
#include <sstream>

#include "dtop/abelian.hpp"
#include "dtop/degree.hpp"
#include "dtop/errors.hpp"
#include "dtop/io.hpp"
#include "dtop/obstruction.hpp"
#include "dtop/smith.hpp"
#include "dtop/towers.hpp"

namespace dtop::cli {

void Report::field(std::string key, std::string value) {
  std::replace(value.begin(), value.end(), '\n', ' ');
  fields_.emplace_back(std::move(key), std::move(value));
}

std::string Report::render(bool machine_only) const {
  std::ostringstream out;
  out << report_header << "\ncommand: " << command_ << "\n";
  if (!machine_only)
    for (const auto& l : lines_) out << l << "\n";
  out << "machine:\n";
  for (const auto& [k, v] : fields_) out << k << ": " << v << "\n";
  return out.str();
}

std::vector<std::pair<std::string, std::string>> parse_machine(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::istringstream in(text);
  std::string line;
  bool inside = false;
  while (std::getline(in, line)) {
    if (!inside) {
      inside = line == "machine:";
      continue;
    }
    std::size_t colon = line.find(": ");
    if (colon == std::string::npos) {
      if (!line.empty() && line.back() == ':') out.emplace_back(line.substr(0, line.size() - 1), "");
      continue;
    }
    out.emplace_back(line.substr(0, colon), line.substr(colon + 2));
  }
  return out;
}

std::vector<std::string> split_command_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false, have = false;
  for (char c : line) {
    if (c == '"') {
      quoted = !quoted;
      have = true;
    } else if (!quoted && (c == ' ' || c == '\t' || c == '\n' || c == '\r')) {
      if (have) out.push_back(cur);
      cur.clear();
      have = false;
    } else {
      cur += c;
      have = true;
    }
  }
  if (quoted) throw ParseError(0, "unterminated quote");
  if (have) out.push_back(cur);
  return out;
}

namespace {

namespace fs = std::filesystem;

std::string fmt(const Vec& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + "]";
}

template <typename T>
std::string fmt_list(const std::vector<T>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    if constexpr (std::is_same_v<T, Int>) s += v[i].get_str();
    else s += std::to_string(v[i]);
  }
  return s + "]";
}

std::string fmt_group(const FpGroup& g) { return g.canonical_string(); }

std::string yes(bool b) { return b ? "true" : "false"; }

std::string f_vector(const SimplicialComplex& k) {
  std::vector<std::size_t> f;
  for (int q = 0; q <= k.dimension(); ++q) f.push_back(k.count(q));
  return fmt_list(f);
}

struct Context {
  fs::path base;
  fs::path resolve(const std::string& p) const {
    fs::path q(p);
    return q.is_absolute() || base.empty() ? q : base / q;
  }
  std::string read(const std::string& p) const { return io::read_file(resolve(p)); }
};

SimplicialPair load_pair(const Context& ctx, const std::string& complex, const std::string& sub) {
  SimplicialComplex x = io::parse_scomplex(ctx.read(complex));
  if (sub.empty()) return SimplicialPair(x);
  return SimplicialPair(x, io::parse_scomplex(ctx.read(sub)));
}

// Vertex map into the sphere model, defined on the n-skeleton of X.
SimplicialMap load_sphere_map(const Context& ctx, const std::string& file, const SimplicialComplex& x,
                              const SphereTarget& target) {
  return SimplicialMap(x.skeleton(target.dimension()), target.model(), io::parse_smap(ctx.read(file)));
}

struct Options {
  std::string complex, sub, coeff = "Z", map, map2, a, b, file, tower, dir, group, cochain_a, cochain_b;
  int degree = 0, n = 1, level = 0, relative = -1, depth = 2, d = 2, N = 5;
  long p = 2;
  std::size_t cap = 10;
  bool telescope = false, update = false;
};

void cmd_cohomology(const Options& o, const Context& ctx, Report& r) {
  SimplicialPair pair = load_pair(ctx, o.complex, o.sub);
  FpGroup g = parse_group_literal(o.coeff);
  FpGroup h = cohomology_group(pair, g, o.degree);
  std::string name = "H^" + std::to_string(o.degree) + "(X" + (pair.is_absolute() ? "" : ", L") + "; " +
                     fmt_group(g) + ")";
  r.line("complex: f-vector " + f_vector(pair.complex()));
  r.line(name + " = " + fmt_group(h));
  r.field("f_vector", f_vector(pair.complex()));
  r.field("degree", std::to_string(o.degree));
  r.field("coefficients", fmt_group(g));
  r.field("group", fmt_group(h));
  r.field("free_rank", std::to_string(h.free_rank()));
  r.field("torsion", fmt_list(h.torsion()));
}

void cmd_ext(const Options& o, const Context&, Report& r) {
  FpGroup a = parse_group_literal(o.a), b = parse_group_literal(o.b);
  FpGroup e = ext_group(a, b).group;
  r.line("Ext^1(" + fmt_group(a) + ", " + fmt_group(b) + ") = " + fmt_group(e) + " (free resolution)");
  r.field("ext", fmt_group(e));
  std::string cocycle = "skipped";
  if (a.is_finite() && b.is_finite() && a.order() <= 64) {
    try {
      cocycle = fmt_group(cocycle_ext_group(b, a).group);
      r.line("symmetric cocycles " + fmt_group(a) + " x " + fmt_group(a) + " -> " + fmt_group(b) +
             " modulo coboundaries: " + cocycle);
    } catch (const BudgetError& e) {
      r.line(std::string("cocycle computation skipped: ") + e.what());
    }
  }
  r.field("cocycle_ext", cocycle);
  r.field("agree", cocycle == "skipped" ? "n/a" : yes(cocycle == fmt_group(e)));
}

void cmd_hom(const Options& o, const Context&, Report& r) {
  FpGroup a = parse_group_literal(o.a), b = parse_group_literal(o.b);
  FpGroup h = hom_group(a, b).group();
  r.line("Hom(" + fmt_group(a) + ", " + fmt_group(b) + ") = " + fmt_group(h));
  r.field("hom", fmt_group(h));
}

void cmd_snf(const Options& o, const Context& ctx, Report& r) {
  IntMatrix m = io::parse_intmatrix(ctx.read(o.file));
  SmithDecomposition d = smith_normal_form(m);
  std::vector<Int> diag = d.diagonal();
  std::vector<Int> nonzero;
  for (const Int& x : diag)
    if (x != 0) nonzero.push_back(x);
  r.line("matrix " + std::to_string(m.rows()) + " x " + std::to_string(m.cols()) + ", rank " + std::to_string(d.rank));
  r.line("diagonal: " + fmt_list(diag));
  r.line("cokernel: " + fmt_group(FpGroup(m.rows(), m)));
  r.field("rows", std::to_string(m.rows()));
  r.field("cols", std::to_string(m.cols()));
  r.field("rank", std::to_string(d.rank));
  r.field("invariant_factors", fmt_list(nonzero));
  r.field("cokernel", fmt_group(FpGroup(m.rows(), m)));
}

void cmd_nerve(const Options& o, const Context& ctx, Report& r) {
  Cover c = io::parse_cover(ctx.read(o.file));
  SimplicialComplex k = nerve(c);
  r.line("cover: " + std::to_string(c.member_count()) + " members over " + std::to_string(c.ground_size()) + " points");
  r.line("nerve f-vector: " + f_vector(k));
  r.field("members", std::to_string(c.member_count()));
  r.field("f_vector", f_vector(k));
  for (int q = 0; q <= k.dimension(); ++q) {
    FpGroup h = cohomology_group(SimplicialPair(k), FpGroup::free(1), q);
    r.line("H^" + std::to_string(q) + "(nerve; Z) = " + fmt_group(h));
    r.field("H" + std::to_string(q), fmt_group(h));
  }
}

void cmd_cech(const Options& o, const Context& ctx, Report& r) {
  CoverTower t = io::load_tower(ctx.resolve(o.tower));
  FpGroup g = parse_group_literal(o.coeff);
  TruncatedCech cech(t, g, o.degree);
  const ChainColimit& c = cech.colimit(o.relative);
  std::string which = o.relative < 0 ? "" : ", X_" + std::to_string(o.relative);
  std::vector<std::string> levels;
  for (std::size_t k = 0; k < t.level_count(); ++k) {
    FpGroup h = cech.cohomology(k, o.relative).group();
    r.line("level " + std::to_string(k) + ": H^" + std::to_string(o.degree) + " = " + fmt_group(h));
    levels.push_back(fmt_group(h));
  }
  r.line("truncated colimit H^" + std::to_string(o.degree) + "(X" + which + "; " + fmt_group(g) + ") = " +
         fmt_group(c.colimit) + ", stable from level " + std::to_string(c.stable_from()));
  std::string joined;
  for (std::size_t i = 0; i < levels.size(); ++i) joined += (i ? "," : "") + levels[i];
  r.field("levels", "[" + joined + "]");
  r.field("colimit", fmt_group(c.colimit));
  r.field("stable_from", std::to_string(c.stable_from()));
}

void cmd_metric(const Options& o, const Context& ctx, Report& r) {
  CoverTower t = io::load_tower(ctx.resolve(o.tower));
  FpGroup g = parse_group_literal(o.coeff);
  TowerCochain a = io::parse_tower_cochain(o.cochain_a, o.degree);
  TowerCochain b = io::parse_tower_cochain(o.cochain_b, o.degree);
  MetricResult m = cochain_metric(a, b, t, g);
  r.line("rho(a, b) = " + m.value.get_str() + " at join level " + std::to_string(m.join_level));
  r.field("value", m.value.get_str());
  r.field("join_level", std::to_string(m.join_level));
  r.field("disagreement", fmt_list(m.disagreement));
}

void cochain_lines(Report& r, const std::string& name, const IntCochain& c) {
  std::vector<std::string> support;
  for (std::size_t i = 0; i < c.basis.size(); ++i)
    if (c.values[i] != 0) {
      std::string s = name + "(" + to_string(c.basis[i]) + ") = " + c.values[i].get_str();
      r.line("  " + s);
      support.push_back(to_string(c.basis[i]) + "=" + c.values[i].get_str());
    }
  std::string joined;
  for (std::size_t i = 0; i < support.size(); ++i) joined += (i ? "," : "") + support[i];
  r.field("support", "[" + joined + "]");
}

void cmd_obstruct(const Options& o, const Context& ctx, Report& r) {
  SimplicialPair pair = load_pair(ctx, o.complex, o.sub);
  SphereTarget target(o.n);
  ModelMap f(load_sphere_map(ctx, o.map, pair.complex(), target), target);
  IntCochain c = obstruction_cocycle(f, pair);
  ExtensionCertificate cert = is_extensible(c);
  r.line("obstruction cocycle c(f) in degree " + std::to_string(c.degree) + " on " + std::to_string(c.basis.size()) +
         " cells:");
  cochain_lines(r, "c", c);
  r.line(cert.extensible ? "f extends over the " + std::to_string(o.n + 1) + "-skeleton"
                         : "f does not extend: " + std::to_string(cert.obstructed.size()) + " obstructed cells");
  r.field("cells", std::to_string(c.basis.size()));
  r.field("obstructed", std::to_string(cert.obstructed.size()));
  r.field("extensible", yes(cert.extensible));
}

void cmd_difference(const Options& o, const Context& ctx, Report& r) {
  SimplicialPair pair = load_pair(ctx, o.complex, o.sub);
  SphereTarget target(o.n);
  SimplicialMap fm = load_sphere_map(ctx, o.map, pair.complex(), target);
  SimplicialMap gm = load_sphere_map(ctx, o.map2, pair.complex(), target);
  ModelMap f(fm, target), g(gm, target);
  IntCochain d = deformation_cochain(f, g, PrismHomotopy::straight(fm, gm), pair);
  r.line("deformation cochain d(f, g; straight homotopy) in degree " + std::to_string(d.degree) + ":");
  cochain_lines(r, "d", d);
  r.field("cells", std::to_string(d.basis.size()));
  // On a closed n-manifold-like X the pairing with [X] is deg f − deg g.
  if (pair.is_absolute() && pair.complex().dimension() == o.n) {
    try {
      Chain z = fundamental_cycle(pair.complex());
      Int total = 0;
      for (const auto& [sx, a] : z) total += a * d.at(sx);
      r.line("<d, [X]> = " + total.get_str());
      r.field("fundamental_pairing", total.get_str());
    } catch (const ValidationError&) {
      r.field("fundamental_pairing", "n/a");
    }
  }
}

void cmd_chi(const Options& o, const Context& ctx, Report& r) {
  SimplicialPair pair = load_pair(ctx, o.complex, o.sub);
  SphereTarget target(o.n);
  ModelMap f(load_sphere_map(ctx, o.map, pair.complex(), target), target);
  ChiClass chi = chi_class(f, pair);
  ChiClass via = chi_class_via_difference(f, pair);
  r.line("H^" + std::to_string(o.n) + "(X; Z) = " + fmt_group(chi.group));
  r.line("chi(f) = " + fmt(chi.element) + " in canonical coordinates");
  if (chi.has_fundamental_value) r.line("<f^#u, [X]> = " + chi.fundamental_value.get_str());
  r.field("group", fmt_group(chi.group));
  r.field("class", fmt(chi.element));
  r.field("via_difference_agrees", yes(chi.element == via.element));
  if (chi.has_fundamental_value) r.field("degree", chi.fundamental_value.get_str());
}

void cmd_classify(const Options& o, const Context& ctx, Report& r) {
  SimplicialPair pair = load_pair(ctx, o.complex, o.sub);
  SphereTarget target(o.n);
  Classification c = classify_maps(pair, target);
  r.line("[X, S^" + std::to_string(o.n) + "] = H^" + std::to_string(o.n) + "(X; Z) = " + fmt_group(c.group));
  r.line("classes realized by vertex maps: " + std::to_string(c.realized.size()) + " (" +
         std::to_string(c.maps_examined) + " maps examined" + (c.exhaustive ? ", exhaustive)" : ")"));
  std::vector<std::string> classes;
  for (const auto& rc : c.realized) {
    r.line("  " + fmt(rc.element));
    classes.push_back(fmt(rc.element));
  }
  std::string joined;
  for (std::size_t i = 0; i < classes.size(); ++i) joined += (i ? "," : "") + classes[i];
  r.field("group", fmt_group(c.group));
  r.field("realized", "[" + joined + "]");
  r.field("exhaustive", yes(c.exhaustive));
  r.field("maps_examined", std::to_string(c.maps_examined));
}

void cmd_theta(const Options& o, const Context& ctx, Report& r) {
  CoverTower t = io::load_tower(ctx.resolve(o.tower));
  if (o.level < 0 || static_cast<std::size_t>(o.level) >= t.level_count())
    throw ValidationError("level-index", std::to_string(o.level));
  std::size_t level = static_cast<std::size_t>(o.level);
  SphereTarget target(o.n);
  TruncatedCech cech(t, FpGroup::free(1), o.n);
  SimplicialMap p(t.nerve(level), target.model(), io::parse_smap(ctx.read(o.map)));
  auto star = canonical_map(t.level(level), uniform_weights(t.level(level)));
  ThetaResult th = theta_finite_stage(cech, level, p, target, star);
  r.line("chi(p) at level " + std::to_string(level) + ": " + fmt(th.level_class));
  r.line("class in the truncated colimit: " + fmt(th.colimit_class));
  if (th.refinement_checked)
    r.line(std::string("p composed with the next refinement gives ") + (th.refinement_stable ? "the same" : "a different") +
           " colimit class");
  r.line(std::string("star condition for the uniform partition: ") + (th.star->ok ? "holds" : "fails"));
  r.field("level_class", fmt(th.level_class));
  r.field("colimit_class", fmt(th.colimit_class));
  r.field("refinement_stable", th.refinement_checked ? yes(th.refinement_stable) : "n/a");
  r.field("star_ok", yes(th.star->ok));
}

void cmd_moore(const Options& o, const Context&, Report& r) {
  FpGroup a = parse_group_literal(o.group);
  MooreSpaceData m = moore_space(a, o.n);
  CochainComplexFp cc = m.cochain_complex();
  r.line("M(" + fmt_group(a) + ", " + std::to_string(o.n) + "): " + std::to_string(m.f0_rank) + " cells of dimension " +
         std::to_string(o.n) + ", " + std::to_string(m.f1_rank) + " of dimension " + std::to_string(o.n + 1));
  std::vector<Int> degrees;
  for (std::size_t i = 0; i < m.f1_rank; ++i) degrees.push_back(m.attaching(i, i));
  r.line("attaching degrees: " + fmt_list(degrees));
  FpGroup hn = cohomology(cc, o.n).group(), hn1 = cohomology(cc, o.n + 1).group();
  FpGroup hom = hom_group(a, FpGroup::free(1)).group(), ext = ext_group(a, FpGroup::free(1)).group;
  r.line("H^" + std::to_string(o.n) + " = " + fmt_group(hn) + ", Hom(A, Z) = " + fmt_group(hom));
  r.line("H^" + std::to_string(o.n + 1) + " = " + fmt_group(hn1) + ", Ext^1(A, Z) = " + fmt_group(ext));
  r.field("cells_n", std::to_string(m.f0_rank));
  r.field("cells_n1", std::to_string(m.f1_rank));
  r.field("attaching", fmt_list(degrees));
  r.field("H_n", fmt_group(m.homology_n()));
  r.field("Hn", fmt_group(hn));
  r.field("Hn1", fmt_group(hn1));
  r.field("uct", yes(hn.isomorphic(hom) && hn1.isomorphic(ext)));
}

void cmd_filtration(const Options& o, const Context& ctx, Report& r) {
  IntMatrix i = io::parse_intmatrix(ctx.read(o.file));
  MooreFiltration f = moore_filtration(i, o.n);
  std::vector<Int> factors;
  for (const auto& inc : f.inclusions) {
    IntMatrix c = inc.canonical_matrix();
    factors.push_back(c.rows() == 1 && c.cols() == 1 ? Int(c(0, 0)) : Int(0));
  }
  for (std::size_t m = 0; m < f.k.size(); ++m)
    r.line("m = " + std::to_string(m + 1) + ": k_m = " + std::to_string(f.k[m]) + ", A_m = " +
           fmt_group(f.spaces[m].homology_n()));
  r.line(std::string("colimit of the A_m is A: ") + yes(f.colimit_matches));
  std::vector<std::string> groups;
  for (const auto& s : f.spaces) groups.push_back(fmt_group(s.homology_n()));
  std::string joined;
  for (std::size_t m = 0; m < groups.size(); ++m) joined += (m ? "," : "") + groups[m];
  r.field("k", fmt_list(f.k));
  r.field("groups", "[" + joined + "]");
  r.field("rank_one_factors", fmt_list(factors));
  r.field("colimit_matches", yes(f.colimit_matches));
}

void cmd_telescope(const Options& o, const Context&, Report& r) {
  Telescope t = degree_p_telescope(o.d, o.p, static_cast<std::size_t>(o.N));
  std::vector<std::string> hs;
  for (int q = 0; q <= t.top_degree(); ++q) {
    FpGroup h = cohomology(t.complex(), q).group();
    r.line("H^" + std::to_string(q) + "(T_" + std::to_string(o.N) + ") = " + fmt_group(h));
    hs.push_back(fmt_group(h));
  }
  GroupTower tower = cohomology_tower(t, o.d);
  std::vector<Int> factors;
  for (std::size_t k = 0; k + 1 < t.stage_count(); ++k) factors.push_back(tower.bond(k).canonical_matrix()(0, 0));
  r.line("restriction factors on H^" + std::to_string(o.d) + ": " + fmt_list(factors));
  std::string joined;
  for (std::size_t q = 0; q < hs.size(); ++q) joined += (q ? "," : "") + hs[q];
  r.field("cohomology", "[" + joined + "]");
  r.field("bond_factors", fmt_list(factors));
}

void lim1_fields(Report& r, const Lim1Result& l) {
  r.line("Mittag-Leffler: " + to_string(l.ml.kind) + " at step " + std::to_string(l.ml.step));
  for (std::size_t k = 0; k < l.ml.witnesses.size(); ++k)
    if (!l.ml.witnesses[k].empty()) r.line("  witness " + std::to_string(k) + ": " + fmt(l.ml.witnesses[k]));
  r.line("lim^1 " + to_string(l.verdict) + ": " + l.certificate);
  r.field("ml", to_string(l.ml.kind));
  r.field("ml_step", std::to_string(l.ml.step));
  r.field("verdict", to_string(l.verdict));
  r.field("lim1_vanishes", l.verdict == Verdict::Undetermined ? "undetermined" : yes(l.verdict == Verdict::Vanishes));
  if (!l.charpoly.empty() || l.ml.kind != MittagLeffler::Kind::Stabilized) {
    r.field("charpoly", fmt_list(l.charpoly));
    r.field("eventual_index", l.eventual_index.get_str());
  }
}

void cmd_lim1(const Options& o, const Context& ctx, Report& r) {
  GroupTower t = io::parse_gtower(ctx.read(o.file));
  r.line(std::string(t.is_periodic() ? "periodic" : "explicit") + " tower over " + fmt_group(t.stage(0)));
  lim1_fields(r, lim1_vanishes(t, o.cap));
}

void phantom_fields(Report& r, const PhantomFiltration& f) {
  std::vector<std::string> levels;
  for (std::size_t k = 0; k < f.levels.size(); ++k) {
    std::string s = f.levels[k].is_trivial() ? "0" : fmt_group(f.levels[k].as_group());
    r.line("Ph^" + std::to_string(k) + " = " + s);
    levels.push_back(s);
  }
  r.line(std::string("descending: ") + yes(f.descending));
  std::string joined;
  for (std::size_t k = 0; k < levels.size(); ++k) joined += (k ? "," : "") + levels[k];
  r.field("levels", "[" + joined + "]");
  r.field("descending", yes(f.descending));
}

void cmd_phantom(const Options& o, const Context& ctx, Report& r) {
  if (o.telescope) {
    Telescope t = degree_p_telescope(o.d, o.p, static_cast<std::size_t>(o.N));
    PairSystem s = pair_system(t, o.degree);
    r.line("degree-" + std::to_string(o.p) + " telescope of S^" + std::to_string(o.d) + " truncated at stage " +
           std::to_string(o.N) + ", degree " + std::to_string(o.degree));
    r.line("the last exhaustion stage is the whole truncation, so Ph^0 is 0 here; nonzero phantom classes "
           "only appear for the infinite telescope");
    r.field("absolute", fmt_group(s.absolute));
    phantom_fields(r, phantom_filtration(s, static_cast<std::size_t>(o.depth)));
    return;
  }
  CoverTower t = io::load_tower(ctx.resolve(o.tower));
  TruncatedCech cech(t, parse_group_literal(o.coeff), o.degree);
  PairSystem s = pair_system(cech);
  r.line("truncated Cech cohomology H^" + std::to_string(o.degree) + " = " + fmt_group(s.absolute) + " with " +
         std::to_string(s.relative.size()) + " exhaustion sets");
  r.field("absolute", fmt_group(s.absolute));
  phantom_fields(r, phantom_filtration(s, static_cast<std::size_t>(o.depth)));
}

void cmd_example711(const Options& o, const Context&, Report& r) {
  TelescopeReport t = degree_p_pipeline(o.p, o.d, static_cast<std::size_t>(o.N), o.cap);
  for (const auto& l : t.chain) r.line(l);
  lim1_fields(r, t.lim1);
  r.field("bond_factors", fmt_list(t.bond_factors));
  r.field("periodic_model", yes(t.tower_is_periodic_model));
  std::vector<Vec> w;
  for (const auto& x : t.lim1.ml.witnesses) w.push_back(x);
  std::string joined;
  for (std::size_t k = 0; k < w.size(); ++k) joined += (k ? "," : "") + fmt(w[k]);
  r.field("witnesses", "[" + joined + "]");
  r.field("truncated_ph0", t.phantom.levels[0].is_trivial() ? "0" : "nonzero");
}

void cmd_orbits(const Options& o, const Context&, Report& r) {
  FpGroup a = parse_group_literal(o.group);
  ExtOrbits e = aut_orbits_on_ext(a);
  std::vector<std::size_t> sizes;
  r.line("Aut(" + fmt_group(a) + ") has " + std::to_string(e.automorphism_count) + " elements; Ext^1(A, Z) = " +
         fmt_group(e.ext));
  for (const auto& orbit : e.orbits) {
    sizes.push_back(orbit.size());
    std::string s;
    for (std::size_t i = 0; i < orbit.size(); ++i) s += (i ? " " : "") + fmt(orbit[i]);
    r.line("  orbit {" + s + "}");
  }
  std::sort(sizes.begin(), sizes.end());
  r.field("ext", fmt_group(e.ext));
  r.field("automorphisms", std::to_string(e.automorphism_count));
  r.field("orbits", std::to_string(e.orbits.size()));
  r.field("orbit_sizes", fmt_list(sizes));
}

// Golden format: `exit: <code>` then either the machine trailer or the
// first line of the error stream.
std::string golden_of(int code, const std::string& out, const std::string& err) {
  std::string s = "exit: " + std::to_string(code) + "\n";
  if (code == exit_ok) {
    for (const auto& [k, v] : parse_machine(out)) s += k + ": " + v + "\n";
  } else {
    s += err.substr(0, err.find('\n')) + "\n";
  }
  return s;
}

int cmd_corpus(const Options& o, const Context& ctx, Report& r) {
  fs::path dir = ctx.resolve(o.dir);
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw ValidationError("corpus-directory", dir.string());
  std::vector<fs::path> entries;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_directory() && fs::exists(e.path() / "cmd")) entries.push_back(e.path());
  std::sort(entries.begin(), entries.end());
  if (entries.empty()) throw ValidationError("empty-corpus", dir.string());

  std::size_t passed = 0;
  std::vector<std::string> failed;
  for (const auto& e : entries) {
    std::string name = e.filename().string();
    std::string line = io::read_file(e / "cmd");
    std::vector<std::string> args = split_command_line(line);
    if (!args.empty() && args[0] == "corpus") throw ValidationError("corpus-recursion", name);
    std::ostringstream out, err;
    int code = run(args, out, err, e);
    std::string actual = golden_of(code, out.str(), err.str());
    fs::path golden = e / "expected.machine";
    if (o.update) {
      std::ofstream(golden, std::ios::binary) << actual;
      r.line("updated " + name);
      ++passed;
      continue;
    }
    std::string expected = fs::exists(golden) ? io::read_file(golden) : std::string();
    if (expected == actual) {
      r.line("ok      " + name);
      ++passed;
    } else {
      r.line("MISMATCH " + name);
      std::istringstream ea(expected), aa(actual);
      std::string el, al;
      std::size_t ln = 0;
      while (true) {
        bool he = static_cast<bool>(std::getline(ea, el)), ha = static_cast<bool>(std::getline(aa, al));
        if (!he && !ha) break;
        ++ln;
        if (!he) el = "<missing>";
        if (!ha) al = "<missing>";
        if (el != al) r.line("  line " + std::to_string(ln) + ": expected '" + el + "', got '" + al + "'");
      }
      failed.push_back(name);
    }
  }
  std::string joined;
  for (std::size_t i = 0; i < failed.size(); ++i) joined += (i ? "," : "") + failed[i];
  r.field("entries", std::to_string(entries.size()));
  r.field("passed", std::to_string(passed));
  r.field("failed", "[" + joined + "]");
  return failed.empty() ? exit_ok : exit_invalid;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const fs::path& base) {
  CLI::App app{"Exact computations with covers, cohomology and towers", "dtop"};
  app.require_subcommand(1);
  bool machine_only = false;
  app.add_flag("--machine-only", machine_only, "Print only the machine-readable trailer");

  Options o;
  Context ctx{base};
  using Handler = std::function<int(Report&)>;
  std::vector<std::pair<CLI::App*, Handler>> commands;
  auto add = [&](const std::string& name, const std::string& help, auto fn) {
    CLI::App* sub = app.add_subcommand(name, help);
    commands.emplace_back(sub, [fn, &o, &ctx](Report& r) {
      if constexpr (std::is_same_v<decltype(fn(o, ctx, r)), int>) return fn(o, ctx, r);
      else {
        fn(o, ctx, r);
        return exit_ok;
      }
    });
    return sub;
  };
  auto complex_opts = [&](CLI::App* s) {
    s->add_option("--complex", o.complex, "scomplex v1 file")->required();
    s->add_option("--sub", o.sub, "subcomplex file (relative cohomology)");
  };
  auto sphere_opt = [&](CLI::App* s) {
    s->add_option("--n", o.n, "sphere dimension")->required()->check(CLI::Range(1, 6));
  };

  auto* s = add("cohomology", "H^q(X, L; G) of a simplicial pair", cmd_cohomology);
  complex_opts(s);
  s->add_option("--coeff", o.coeff, "coefficient group literal");
  s->add_option("--degree", o.degree, "degree")->required()->check(CLI::Range(0, 32));

  s = add("ext", "Ext^1(A, B) by resolution and by symmetric cocycles", cmd_ext);
  s->add_option("--a", o.a)->required();
  s->add_option("--b", o.b)->required();
  s = add("hom", "Hom(A, B)", cmd_hom);
  s->add_option("--a", o.a)->required();
  s->add_option("--b", o.b)->required();
  s = add("snf", "Smith normal form of an intmatrix file", cmd_snf);
  s->add_option("--matrix", o.file)->required();
  s = add("nerve", "nerve of a cover and its cohomology", cmd_nerve);
  s->add_option("--cover", o.file)->required();

  s = add("cech", "truncated Cech cohomology of a cover tower", cmd_cech);
  s->add_option("--tower", o.tower)->required();
  s->add_option("--coeff", o.coeff);
  s->add_option("--degree", o.degree)->required()->check(CLI::Range(0, 16));
  s->add_option("--relative", o.relative, "exhaustion index (0-based) for the relative group")->check(CLI::Range(-1, 64));

  s = add("metric", "distance between two tower cochains", cmd_metric);
  s->add_option("--tower", o.tower)->required();
  s->add_option("--coeff", o.coeff);
  s->add_option("--degree", o.degree)->required()->check(CLI::Range(0, 16));
  s->add_option("--a", o.cochain_a, "'level: values'")->required();
  s->add_option("--b", o.cochain_b, "'level: values'")->required();

  s = add("obstruct", "obstruction cocycle of a vertex map into S^n", cmd_obstruct);
  complex_opts(s);
  sphere_opt(s);
  s->add_option("--map", o.map)->required();
  s = add("difference", "deformation cochain between two vertex maps", cmd_difference);
  complex_opts(s);
  sphere_opt(s);
  s->add_option("--map", o.map)->required();
  s->add_option("--map2", o.map2)->required();
  s = add("chi", "class of f^#u in H^n(X, L; Z)", cmd_chi);
  complex_opts(s);
  sphere_opt(s);
  s->add_option("--map", o.map)->required();
  s = add("classify", "homotopy classes of maps into S^n", cmd_classify);
  complex_opts(s);
  sphere_opt(s);

  s = add("theta", "class of a nerve map in the truncated Cech colimit", cmd_theta);
  s->add_option("--tower", o.tower)->required();
  s->add_option("--level", o.level)->required()->check(CLI::Range(0, 64));
  s->add_option("--map", o.map)->required();
  sphere_opt(s);

  s = add("moore", "cellular data and cohomology of M(A, n)", cmd_moore);
  s->add_option("--group", o.group)->required();
  s->add_option("--n", o.n)->required()->check(CLI::Range(2, 16));
  s = add("filtration", "Moore filtration from an injective presentation matrix", cmd_filtration);
  s->add_option("--matrix", o.file)->required();
  s->add_option("--n", o.n)->check(CLI::Range(2, 16));

  auto telescope_opts = [&](CLI::App* t) {
    t->add_option("--p", o.p, "bonding degree")->check(CLI::Range(1L, 1000000L));
    t->add_option("--d", o.d, "sphere dimension")->check(CLI::Range(1, 4));
    t->add_option("--N", o.N, "last stage")->check(CLI::Range(0, 12));
  };
  s = add("telescope", "degree-p telescope of spheres", cmd_telescope);
  telescope_opts(s);
  s = add("lim1", "Mittag-Leffler and lim^1 for a gtower file", cmd_lim1);
  s->add_option("--tower", o.file)->required();
  s->add_option("--cap", o.cap)->check(CLI::Range(0, 200));

  s = add("phantom", "finite phantom filtration", cmd_phantom);
  s->add_option("--tower", o.tower, "tower v1 file");
  s->add_flag("--telescope", o.telescope, "use the degree-p telescope instead of a cover tower");
  s->add_option("--coeff", o.coeff);
  s->add_option("--degree", o.degree)->check(CLI::Range(0, 16));
  s->add_option("--depth", o.depth)->check(CLI::Range(0, 8));
  telescope_opts(s);

  s = add("example711", "degree-p telescope, its cohomology tower and lim^1", cmd_example711);
  telescope_opts(s);
  s->add_option("--cap", o.cap)->check(CLI::Range(0, 200));

  s = add("orbits", "Aut(A)-orbits on Ext^1(A, Z)", cmd_orbits);
  s->add_option("--group", o.group)->required();

  s = add("corpus", "run the example corpus against golden files", cmd_corpus);
  s->add_option("--dir", o.dir)->required();
  s->add_flag("--update", o.update, "rewrite the golden files");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_invalid;
  }

  for (auto& [sub, handler] : commands) {
    if (!sub->parsed()) continue;
    Report r(sub->get_name());
    try {
      if (sub->get_name() == "phantom" && !o.telescope && o.tower.empty())
        throw ValidationError("missing-exhaustion", "phantom needs --tower or --telescope");
      int code = handler(r);
      out << r.render(machine_only);
      return code;
    } catch (const ParseError& e) {
      err << "error: parse: " << e.what() << "\n";
      return exit_invalid;
    } catch (const ValidationError& e) {
      err << "error: " << e.what() << "\n";
      return exit_invalid;
    } catch (const BudgetError& e) {
      err << "error: budget: " << e.what() << "\n";
      return exit_budget;
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      return exit_invalid;
    } catch (const std::bad_alloc&) {
      err << "error: budget: out of memory\n";
      return exit_budget;
    } catch (const std::exception& e) {
      err << "internal error: " << e.what() << "\n";
      return exit_internal;
    }
  }
  return exit_invalid;
}

}  // namespace dtop::cli
