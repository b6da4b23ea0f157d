#include "griesskit/decomp.hpp"

#include <json.hpp>

#include <algorithm>
#include <numeric>
#include <set>

namespace griesskit::decomp {

using minimal::MinimalModel;
using minimal::ModuleLabel;
using nlohmann::json;

const Summand& DecompTemplate::summand(std::string_view var) const {
  for (const auto& s : summands) {
    if (s.var == var) return s;
  }
  throw std::invalid_argument("no summand with variable '" + std::string(var) + "'");
}

std::string sector_of(const ModuleLabel& x) {
  if (x.factors.empty()) throw std::invalid_argument("empty module label");
  return x.factors.front().h().get_str();
}

void validate(const DecompTemplate& tpl) {
  if (tpl.models.empty()) throw ParseError("template has no models");
  if (tpl.summands.empty()) throw ParseError("template has no summands");
  std::set<std::string> vars;
  std::set<ModuleLabel> labels;
  std::size_t fixed_vacua = 0;
  for (const auto& s : tpl.summands) {
    if (s.var.empty() || !vars.insert(s.var).second) throw ParseError("duplicate or empty variable '" + s.var + "'");
    if (!labels.insert(s.label).second) throw ParseError("duplicate summand " + minimal::to_string(s.label));
    if (s.label.models() != tpl.models) throw ParseError("summand " + s.var + " uses different models");
    if (s.sector != sector_of(s.label)) {
      throw ParseError("summand " + s.var + " has sector '" + s.sector + "' but its first weight is " + sector_of(s.label));
    }
    if (s.fixed && *s.fixed < 0) throw ParseError("negative multiplicity for " + s.var);
    if (s.label.is_vacuum()) {
      if (!s.fixed || *s.fixed != 1) throw ParseError("the vacuum summand must be fixed to multiplicity 1");
      ++fixed_vacua;
    }
  }
  if (fixed_vacua != 1) throw ParseError("template needs exactly one vacuum summand");
  std::set<std::string> sectors;
  for (const auto& s : tpl.summands) sectors.insert(s.sector);
  for (const auto& sp : tpl.splits) {
    if (sp.fixed_sectors.empty() || sp.eigen_sectors.empty()) throw ParseError("split '" + sp.name + "' has an empty side");
    for (const auto* side : {&sp.fixed_sectors, &sp.eigen_sectors})
      for (const auto& sec : *side) {
        if (!sectors.count(sec)) throw ParseError("split '" + sp.name + "' names unknown sector '" + sec + "'");
      }
  }
  for (const auto& [var, value] : tpl.expected) {
    if (!vars.count(var)) throw ParseError("expected multiplicity for unknown variable '" + var + "'");
    if (value < 0) throw ParseError("negative expected multiplicity for " + var);
  }
}

namespace {

DecompTemplate make_template(std::string case_id, std::vector<MinimalModel> models,
                             const std::vector<std::string>& labels,
                             std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> splits) {
  DecompTemplate tpl;
  tpl.case_id = std::move(case_id);
  tpl.models = std::move(models);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    Summand s;
    s.var = "n" + std::to_string(i + 1);
    s.label = minimal::parse_module_label(tpl.models, labels[i]);
    s.sector = sector_of(s.label);
    if (s.label.is_vacuum()) s.fixed = 1;
    tpl.expected[s.var] = 1;
    tpl.summands.push_back(std::move(s));
  }
  for (auto& [fixed, eigen] : splits) {
    SectorSplit sp;
    for (std::size_t i = 0; i < fixed.size(); ++i) sp.name += (i ? "+" : "") + fixed[i];
    sp.name += "|";
    for (std::size_t i = 0; i < eigen.size(); ++i) sp.name += (i ? "+" : "") + eigen[i];
    sp.fixed_sectors = std::move(fixed);
    sp.eigen_sectors = std::move(eigen);
    tpl.splits.push_back(std::move(sp));
  }
  validate(tpl);
  return tpl;
}

}  // namespace

DecompTemplate builtin_template(std::string_view case_id) {
  if (case_id == "c3") {
    return make_template("c3", {{3, 4}, {11, 12}},
                         {"[0,0]", "[0,8]", "[1/2,7/2]", "[1/2,45/2]", "[1/16,31/16]", "[1/16,175/16]"},
                         {{{"0"}, {"1/2"}}, {{"0", "1/2"}, {"1/16"}}});
  }
  if (case_id == "a5") {
    return make_template("a5", {{3, 4}, {7, 8}, {7, 8}},
                         {"[0,0,0]", "[0,15/2,15/2]", "[0,3/4,13/4]", "[0,13/4,3/4]", "[1/2,0,15/2]", "[1/2,15/2,0]",
                          "[1/2,3/4,3/4]", "[1/2,13/4,13/4]", "[1/16,5/32,57/32]", "[1/16,57/32,5/32]",
                          "[1/16,57/32,165/32]", "[1/16,165/32,57/32]"},
                         {{{"0"}, {"1/2"}}, {{"0", "1/2"}, {"1/16"}}});
  }
  throw std::invalid_argument("no built-in template for case '" + std::string(case_id) + "'");
}

DecompTemplate parse_template(std::string_view json_text) {
  DecompTemplate tpl;
  try {
    const auto j = json::parse(json_text);
    const std::set<std::string> known{"case", "models", "summands", "splits", "expected"};
    for (const auto& [key, _] : j.items()) {
      if (!known.count(key)) throw ParseError("unknown template key '" + key + "'");
    }
    tpl.case_id = j.at("case").get<std::string>();
    for (const auto& m : j.at("models")) tpl.models.emplace_back(m.at(0).get<int>(), m.at(1).get<int>());
    for (const auto& s : j.at("summands")) {
      Summand sm;
      sm.var = s.at("var").get<std::string>();
      sm.label = minimal::parse_module_label(tpl.models, s.at("label").get<std::string>());
      sm.sector = s.contains("sector") ? s.at("sector").get<std::string>() : sector_of(sm.label);
      if (s.contains("fixed")) sm.fixed = s.at("fixed").get<long>();
      tpl.summands.push_back(std::move(sm));
    }
    for (const auto& s : j.at("splits")) {
      SectorSplit sp;
      sp.name = s.value("name", "");
      sp.fixed_sectors = s.at("fixed").get<std::vector<std::string>>();
      sp.eigen_sectors = s.at("eigen").get<std::vector<std::string>>();
      tpl.splits.push_back(std::move(sp));
    }
    if (j.contains("expected")) tpl.expected = j.at("expected").get<std::map<std::string, long>>();
  } catch (const json::exception& err) {
    throw ParseError(std::string("malformed template: ") + err.what());
  } catch (const minimal::LabelError& err) {
    throw ParseError(std::string("malformed template: ") + err.what());
  }
  validate(tpl);
  return tpl;
}

std::string template_to_json(const DecompTemplate& tpl) {
  json j;
  j["case"] = tpl.case_id;
  j["models"] = json::array();
  for (const auto& m : tpl.models) j["models"].push_back({m.p, m.q});
  j["summands"] = json::array();
  for (const auto& s : tpl.summands) {
    json e{{"var", s.var}, {"label", minimal::to_string(s.label)}, {"sector", s.sector}};
    if (s.fixed) e["fixed"] = *s.fixed;
    j["summands"].push_back(e);
  }
  j["splits"] = json::array();
  for (const auto& sp : tpl.splits) j["splits"].push_back({{"name", sp.name}, {"fixed", sp.fixed_sectors}, {"eigen", sp.eigen_sectors}});
  j["expected"] = tpl.expected;
  return j.dump(2) + "\n";
}

// ---- equations -------------------------------------------------------------------

namespace {

// Orders n2 before n10.
bool var_less(const std::string& a, const std::string& b) {
  auto split = [](const std::string& s) {
    std::size_t i = s.size();
    while (i > 0 && std::isdigit(static_cast<unsigned char>(s[i - 1]))) --i;
    return std::pair{s.substr(0, i), i < s.size() ? std::stol(s.substr(i)) : -1L};
  };
  return split(a) < split(b);
}

std::string coef_text(const QF& c) { return c.is_rational() ? to_display(c) : "(" + to_display(c) + ")"; }

std::vector<std::string> sorted_keys(const std::map<std::string, QF>& m) {
  std::vector<std::string> keys;
  for (const auto& [k, _] : m) keys.push_back(k);
  std::sort(keys.begin(), keys.end(), var_less);
  return keys;
}

}  // namespace

std::string to_string(const LinearForm& f) {
  std::string out;
  if (!f.constant.is_zero()) out = coef_text(f.constant);
  for (const auto& v : sorted_keys(f.coeffs)) {
    const QF& c = f.coeffs.at(v);
    if (c.is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += (c == QF(1) ? std::string() : coef_text(c) + "*") + v;
  }
  return out.empty() ? "0" : out;
}

std::string to_string(const QFEquation& eq) { return to_string(eq.lhs) + " = " + to_string(eq.rhs); }

std::string to_string(const IntEquation& eq) {
  std::string out;
  std::vector<std::string> keys;
  for (const auto& [k, _] : eq.coeffs) keys.push_back(k);
  std::sort(keys.begin(), keys.end(), var_less);
  for (const auto& v : keys) {
    const long c = eq.coeffs.at(v);
    if (c == 0) continue;
    out += out.empty() ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
    if (std::labs(c) != 1) out += std::to_string(std::labs(c)) + "*";
    out += v;
  }
  if (eq.constant != 0 || out.empty()) {
    out += out.empty() ? std::to_string(eq.constant) : (eq.constant < 0 ? " - " : " + ") + std::to_string(std::labs(eq.constant));
  }
  return out + " = 0";
}

MultiplicitySystem balance_system(const DecompTemplate& tpl, long default_bound) {
  if (default_bound < 0) throw std::invalid_argument("search bound must be nonnegative");
  validate(tpl);
  MultiplicitySystem sys;
  for (const auto& s : tpl.summands) {
    if (s.fixed) {
      sys.fixed[s.var] = *s.fixed;
    } else {
      sys.vars.push_back(s.var);
      sys.bounds[s.var] = {0, default_bound};
    }
  }
  std::map<std::string, QF> qd;
  for (const auto& s : tpl.summands) {
    const auto d = minimal::qdim(s.label);
    if (!d.exact) throw std::runtime_error("quantum dimension of " + minimal::to_string(s.label) + " not identified: " + d.note);
    qd[s.var] = *d.exact;
  }
  for (const auto& sp : tpl.splits) {
    QFEquation eq;
    eq.name = sp.name;
    auto fill = [&](LinearForm& side, const std::vector<std::string>& sectors) {
      for (const auto& s : tpl.summands) {
        if (std::find(sectors.begin(), sectors.end(), s.sector) == sectors.end()) continue;
        if (s.fixed) {
          side.constant += QF(*s.fixed) * qd[s.var];
        } else {
          side.coeffs[s.var] += qd[s.var];
        }
      }
    };
    fill(eq.lhs, sp.fixed_sectors);
    fill(eq.rhs, sp.eigen_sectors);
    sys.equations.push_back(std::move(eq));
  }
  return sys;
}

std::pair<IntEquation, IntEquation> split_equation(const QFEquation& eq) {
  std::map<std::string, QF> diff;
  for (const auto& [v, c] : eq.lhs.coeffs) diff[v] += c;
  for (const auto& [v, c] : eq.rhs.coeffs) diff[v] -= c;
  const QF constant = eq.lhs.constant - eq.rhs.constant;

  auto part = [&](bool radical, const std::string& suffix) {
    std::map<std::string, Rational> coeffs;
    for (const auto& [v, c] : diff) coeffs[v] = radical ? c.rad() : c.rat();
    const Rational k = radical ? constant.rad() : constant.rat();
    mpz_class lcm = k.get_den();
    for (const auto& [v, c] : coeffs) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
    mpz_class g = 0;
    auto scaled = [&](const Rational& r) { return mpz_class(r * lcm); };
    for (const auto& [v, c] : coeffs) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), scaled(c).get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), scaled(k).get_mpz_t());
    if (g == 0) g = 1;
    IntEquation out;
    out.name = eq.name + suffix;
    auto to_long = [&](const Rational& r) {
      const mpz_class z = scaled(r) / g;
      if (!z.fits_slong_p()) throw ArithmeticError("split equation coefficient exceeds machine range");
      return z.get_si();
    };
    for (const auto& [v, c] : coeffs) {
      if (sgn(c)) out.coeffs[v] = to_long(c);
    }
    out.constant = to_long(k);
    return out;
  };
  return {part(false, ":rat"), part(true, ":sqrt")};
}

MultiplicitySystem apply_simple_current_bounds(const DecompTemplate& tpl, MultiplicitySystem sys) {
  std::map<ModuleLabel, const Summand*> by_label;
  for (const auto& s : tpl.summands) by_label[s.label] = &s;
  std::set<std::tuple<std::string, std::string, std::string>> seen;
  for (const auto& j : tpl.summands) {
    if (j.label.is_vacuum() || !minimal::is_simple_current(j.label)) continue;
    if (auto it = sys.bounds.find(j.var); it != sys.bounds.end()) it->second.hi = std::min(it->second.hi, 1L);
    for (const auto& m : tpl.summands) {
      const auto prod = minimal::fuse_tensor(j.label, m.label);
      if (prod.size() != 1) continue;
      const auto z = by_label.find(prod.front());
      if (z == by_label.end()) continue;
      auto a = j.var, b = m.var;
      if (b < a) std::swap(a, b);
      if (z->second->var == j.var || z->second->var == m.var) continue;
      if (!seen.insert({a, b, z->second->var}).second) continue;
      sys.implications.push_back({j.var, m.var, z->second->var,
                                  minimal::to_string(j.label) + " x " + minimal::to_string(m.label) + " = " +
                                      minimal::to_string(prod.front())});
    }
  }
  return sys;
}

QF residual(const QFEquation& eq, const std::map<std::string, long>& values) {
  auto eval = [&](const LinearForm& f) {
    QF acc = f.constant;
    for (const auto& [v, c] : f.coeffs) acc += c * QF(values.at(v));
    return acc;
  };
  return eval(eq.lhs) - eval(eq.rhs);
}

// ---- solver ----------------------------------------------------------------------

namespace {

struct CompiledEq {
  std::vector<std::pair<std::size_t, long>> terms;  // (position in order, coefficient)
  long constant = 0;
};

struct CompiledImp {
  // position in order, or -1 with the fixed value in `fixed_*`
  long a, b, z;
  long fixed_a, fixed_b, fixed_z;
};

class Search {
 public:
  Search(const MultiplicitySystem& sys, std::vector<std::string> order) : order_(std::move(order)) {
    std::map<std::string, std::size_t> pos;
    for (std::size_t i = 0; i < order_.size(); ++i) pos[order_[i]] = i;
    for (const auto& v : order_) {
      const auto it = sys.bounds.find(v);
      const Bound b = it == sys.bounds.end() ? Bound{} : it->second;
      lo_.push_back(b.lo);
      hi_.push_back(b.hi);
    }
    for (const auto& eq : sys.equations) {
      const auto [r, s] = split_equation(eq);
      for (const auto* ie : {&r, &s}) {
        CompiledEq ce;
        ce.constant = ie->constant;
        for (const auto& [v, c] : ie->coeffs) {
          const auto it = pos.find(v);
          if (it == pos.end()) throw std::invalid_argument("equation uses unknown variable '" + v + "'");
          ce.terms.emplace_back(it->second, c);
        }
        if (ce.terms.empty() && ce.constant == 0) continue;
        eqs_.push_back(std::move(ce));
      }
    }
    auto slot = [&](const std::string& v, long& fixed) -> long {
      if (const auto it = pos.find(v); it != pos.end()) return static_cast<long>(it->second);
      const auto f = sys.fixed.find(v);
      if (f == sys.fixed.end()) throw std::invalid_argument("implication uses unknown variable '" + v + "'");
      fixed = f->second;
      return -1;
    };
    for (const auto& imp : sys.implications) {
      CompiledImp ci{};
      ci.a = slot(imp.premise_a, ci.fixed_a);
      ci.b = slot(imp.premise_b, ci.fixed_b);
      ci.z = slot(imp.conclusion, ci.fixed_z);
      imps_.push_back(ci);
    }
    value_.assign(order_.size(), 0);
  }

  std::vector<Assignment> run() {
    for (std::size_t i = 0; i < order_.size(); ++i) {
      if (lo_[i] > hi_[i]) return {};
    }
    dfs(0);
    std::sort(found_.begin(), found_.end());
    return found_;
  }

 private:
  bool feasible(std::size_t assigned) const {
    for (const auto& e : eqs_) {
      long lo = e.constant, hi = e.constant;
      for (const auto& [i, c] : e.terms) {
        if (i < assigned) {
          lo += c * value_[i];
          hi += c * value_[i];
        } else {
          lo += c > 0 ? c * lo_[i] : c * hi_[i];
          hi += c > 0 ? c * hi_[i] : c * lo_[i];
        }
      }
      if (lo > 0 || hi < 0) return false;
    }
    for (const auto& imp : imps_) {
      auto known = [&](long slot, long fixed, long& out) {
        if (slot < 0) {
          out = fixed;
          return true;
        }
        if (static_cast<std::size_t>(slot) >= assigned) return false;
        out = value_[slot];
        return true;
      };
      long a, b, z;
      if (known(imp.a, imp.fixed_a, a) && known(imp.b, imp.fixed_b, b) && known(imp.z, imp.fixed_z, z)) {
        if (a == 1 && b == 1 && z != 1) return false;
      }
    }
    return true;
  }

  void dfs(std::size_t k) {
    if (!feasible(k)) return;
    if (k == order_.size()) {
      Assignment a;
      for (std::size_t i = 0; i < order_.size(); ++i) a.values[order_[i]] = value_[i];
      found_.push_back(std::move(a));
      return;
    }
    for (long v = lo_[k]; v <= hi_[k]; ++v) {
      value_[k] = v;
      dfs(k + 1);
    }
  }

  std::vector<std::string> order_;
  std::vector<long> lo_, hi_, value_;
  std::vector<CompiledEq> eqs_;
  std::vector<CompiledImp> imps_;
  std::vector<Assignment> found_;
};

}  // namespace

std::vector<Assignment> solve(const MultiplicitySystem& sys, const SolveOptions& opts) {
  auto order = opts.order.empty() ? sys.vars : opts.order;
  auto a = order, b = sys.vars;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a != b) throw std::invalid_argument("enumeration order must be a permutation of the unknowns");
  for (const auto& [v, bd] : sys.bounds) {
    if (bd.lo < 0) throw std::invalid_argument("negative lower bound for " + v);
  }
  return Search(sys, std::move(order)).run();
}

// ---- theorem pipeline ------------------------------------------------------------

TheoremReport verify_theorem(std::string_view case_id, const VerifyOptions& opts) {
  TheoremReport rep;
  rep.case_id = std::string(case_id);
  auto fail = [&](std::string stage, std::string msg) {
    rep.ok = false;
    rep.failed_stage = std::move(stage);
    rep.messages.push_back(std::move(msg));
    return rep;
  };

  DecompTemplate tpl = opts.tpl ? *opts.tpl : builtin_template(case_id);
  if (tpl.case_id != case_id) return fail("template", "template is for case '" + tpl.case_id + "'");

  // Algebra.
  std::optional<griess::CaseTable> table;
  try {
    if (opts.definition) {
      table.emplace(griess::build_case_table(*opts.definition));
    } else {
      const auto pair = opts.pair ? *opts.pair : griess::catalog(griess::class_for_case_id(case_id));
      table.emplace(griess::build_case_table(pair));
    }
    if (table->id() != case_id) return fail("construction", "case data describes '" + table->id() + "'");
  } catch (const griess::ConstructionError& err) {
    return fail("construction", err.what());
  }
  const auto& t = *table;
  rep.algebra_dim = t.dim();
  const auto e = t["e"];
  std::size_t total = 0;
  for (const auto& lam : {QF(2), QF(0), QF::frac(1, 2), QF::frac(1, 16)}) {
    const auto n = griess::eigenspace(e, lam, t).size();
    rep.eigenspace_dims[to_display(lam)] = n;
    total += n;
  }
  if (total != t.dim()) return fail("eigenspaces", "eigenspaces of e do not span the algebra");

  // Conformal vectors matching the factor models after the first.
  std::vector<griess::GriessElement> omegas{e};
  if (griess::inner(e, e, t) * QF(2) != QF(tpl.models.front().central_charge())) {
    return fail("conformal", "central charge of e does not match the first factor model");
  }
  try {
    const auto cands = griess::conformal_search(griess::reference_zero_basis(t), t);
    for (std::size_t i = 1; i < tpl.models.size(); ++i) {
      const QF want(tpl.models[i].central_charge());
      bool placed = false;
      for (const auto& c : cands) {
        if (c.central_charge != want) continue;
        const bool fresh = std::all_of(omegas.begin(), omegas.end(), [&](const griess::GriessElement& w) {
          return griess::inner(w, c.vector, t).is_zero() && griess::multiply(w, c.vector, t).is_zero();
        });
        if (!fresh) continue;
        omegas.push_back(c.vector);
        rep.conformal.emplace_back(griess::format_element(c.vector, t), to_display(c.central_charge));
        placed = true;
        break;
      }
      if (!placed) return fail("conformal", "no conformal vector of central charge " + to_string(want) + " orthogonal to the others");
    }
  } catch (const griess::ConformalSearchError& err) {
    return fail("conformal", err.what());
  }

  // Weight-2 summands are read off joint eigenspaces in the algebra.
  std::size_t weight_two = omegas.size();
  std::size_t seeded_sixteenth = 0;
  for (auto& s : tpl.summands) {
    if (s.fixed || s.label.is_vacuum() || s.label.weight() != 2) continue;
    std::vector<std::pair<griess::GriessElement, QF>> ops;
    for (std::size_t i = 0; i < omegas.size(); ++i) ops.emplace_back(omegas[i], QF(s.label.factors[i].h()));
    const long dim = static_cast<long>(griess::joint_eigenspace(ops, t).size());
    s.fixed = dim;
    weight_two += static_cast<std::size_t>(dim);
    if (s.sector == "1/16" && dim > 0) ++seeded_sixteenth;
    rep.seeds.push_back({s.var, dim, "joint eigenspace " + minimal::to_string(s.label) + " in the algebra"});
  }
  if (weight_two != t.dim()) {
    return fail("seeding", "weight-2 summands account for " + std::to_string(weight_two) + " of " +
                               std::to_string(t.dim()) + " dimensions");
  }
  if (seeded_sixteenth != rep.eigenspace_dims[to_display(QF::frac(1, 16))]) {
    return fail("seeding", "1/16-sector seeds do not match the 1/16-eigenspace of e");
  }
  for (const auto& [var, value] : opts.force) {
    auto it = std::find_if(tpl.summands.begin(), tpl.summands.end(), [&](const Summand& s) { return s.var == var; });
    if (it == tpl.summands.end()) return fail("template", "cannot force unknown variable '" + var + "'");
    it->fixed = value;
    rep.seeds.push_back({var, value, "forced"});
  }

  // Equations and solutions.
  MultiplicitySystem sys;
  try {
    sys = apply_simple_current_bounds(tpl, balance_system(tpl, opts.bound));
  } catch (const std::runtime_error& err) {
    return fail("balance", err.what());
  }
  for (const auto& eq : sys.equations) {
    rep.equations.push_back(to_string(eq));
    const auto [r, s] = split_equation(eq);
    rep.split_equations.push_back(to_string(r));
    rep.split_equations.push_back(to_string(s));
  }
  rep.implications = sys.implications;
  for (const auto& s : tpl.summands) {
    if (!s.label.is_vacuum() && minimal::is_simple_current(s.label)) rep.simple_currents.push_back(s.var);
  }
  rep.assumptions.push_back(
      "multiplicity transfer along simple currents: n_J = n_M = 1 implies n_{J x M} = 1 (imported, not proved here)");
  rep.assumptions.push_back("quantum dimensions of the fixed part and the (-1)-part of each split agree (imported)");
  rep.solutions = solve(sys);

  if (rep.solutions.size() != 1) {
    return fail("solve", std::to_string(rep.solutions.size()) + " solutions in the search box; expected exactly one");
  }
  std::map<std::string, long> all = sys.fixed;
  for (const auto& [v, n] : rep.solutions.front().values) all[v] = n;
  for (const auto& s : tpl.summands) rep.decomposition.emplace_back(minimal::to_string(s.label), all.at(s.var));

  std::vector<std::string> diffs;
  for (const auto& [var, want] : tpl.expected) {
    if (all.at(var) != want) diffs.push_back(var + ": solved " + std::to_string(all.at(var)) + ", expected " + std::to_string(want));
  }

  // Every fusion of two occurring summands must meet the summand list.
  std::set<ModuleLabel> present;
  for (const auto& s : tpl.summands) {
    if (all.at(s.var) > 0) present.insert(s.label);
  }
  std::set<std::string> outside;
  for (auto x = present.begin(); x != present.end(); ++x)
    for (auto y = x; y != present.end(); ++y) {
      ++rep.fusion.pairs;
      bool meets = false;
      for (const auto& z : minimal::fuse_tensor(*x, *y)) {
        if (present.count(z)) meets = true;
        else outside.insert(minimal::to_string(z));
      }
      if (meets) ++rep.fusion.pairs_meeting_list;
    }
  rep.fusion.outside_labels.assign(outside.begin(), outside.end());
  if (rep.fusion.pairs_meeting_list != rep.fusion.pairs) diffs.push_back("a fusion product misses every summand");

  if (!diffs.empty()) {
    rep.failed_stage = "compare";
    rep.messages.insert(rep.messages.end(), diffs.begin(), diffs.end());
    return rep;
  }
  rep.ok = true;
  return rep;
}

}  // namespace griesskit::decomp
