#include "griesskit/cli.hpp"

#include "griesskit/decomp.hpp"
#include "griesskit/exactnum.hpp"
#include "griesskit/griess.hpp"
#include "griesskit/minimal.hpp"
#include "griesskit/modecalc.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

namespace griesskit::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::string case_id = "a5";
  std::string format = "text";
  std::string out_path;
  long bound = 16;
  double tol = 1e-9;
  int precision = 64;
  std::string model;
  std::string h;
  std::string x;
  std::string y;
  std::string class_name;
  std::string template_path;
  std::string lambda1;
  std::vector<std::string> lambdas;
  std::vector<std::string> force;
};

struct Result {
  json data;
  std::string text;
  int code = kOk;
};

// ---- rendering helpers -------------------------------------------------------------

json exact(const QF& v) { return {{"exact", to_string(v)}, {"decimal", to_decimal(v, 15)}}; }

std::string short_qf(const QF& v) { return to_display(v); }

json matrix_json(const QFMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

std::string matrix_text(const QFMatrix& m, const std::vector<std::string>& labels = {}) {
  std::vector<std::vector<std::string>> cells(m.rows(), std::vector<std::string>(m.cols()));
  std::vector<std::size_t> width(m.cols(), 0);
  std::size_t label_width = 0;
  for (const auto& l : labels) label_width = std::max(label_width, l.size());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      cells[i][j] = short_qf(m(i, j));
      width[j] = std::max(width[j], cells[i][j].size());
    }
  std::ostringstream os;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << "  ";
    if (!labels.empty()) os << std::left << std::setw(static_cast<int>(label_width)) << labels[i] << "  ";
    for (std::size_t j = 0; j < m.cols(); ++j) os << std::right << std::setw(static_cast<int>(width[j]) + 2) << cells[i][j];
    os << "\n";
  }
  return os.str();
}

json coords_json(const std::vector<QF>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

json element_json(const griess::GriessElement& x, const griess::CaseTable& t) {
  return {{"coords", coords_json(x.coords)}, {"text", griess::format_element(x, t)}};
}

json kac_json(const minimal::KacLabel& k) {
  return {{"p", k.model.p}, {"q", k.model.q}, {"r", k.r}, {"s", k.s}, {"h", to_string(k.h())}};
}

json module_json(const minimal::ModuleLabel& m) {
  json f = json::array();
  for (const auto& k : m.factors) f.push_back(kac_json(k));
  return {{"label", minimal::to_string(m)}, {"factors", f}};
}

json qdim_json(const minimal::QDim& d) {
  json j{{"numeric", to_decimal(d.numeric, 20)}, {"exact", d.exact ? json(to_string(*d.exact)) : json(nullptr)},
         {"precision_bits", d.precision_bits}};
  if (!d.note.empty()) j["note"] = d.note;
  return j;
}

// ---- inputs ------------------------------------------------------------------------

std::vector<minimal::MinimalModel> case_models(const std::string& case_id) {
  return decomp::builtin_template(case_id).models;
}

minimal::MinimalModel parse_model(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError("--model expects p,q");
  try {
    return minimal::MinimalModel(std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1)));
  } catch (const std::invalid_argument& err) {
    throw UsageError(std::string("bad --model: ") + err.what());
  } catch (const std::out_of_range&) {
    throw UsageError("bad --model: value out of range");
  }
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::optional<griess::CaseDefinition> case_file_definition(const std::string& case_id) {
  const char* dir = std::getenv("GRIESSKIT_CASE_DIR");
  if (!dir || !*dir) return std::nullopt;
  const fs::path path = fs::path(dir) / (case_id + ".case");
  if (!fs::exists(path)) return std::nullopt;
  try {
    return griess::parse_case_file(read_file(path));
  } catch (const ParseError& err) {
    throw UsageError(path.string() + ": " + err.what());
  }
}

griess::CaseTable load_case(const RunConfig& cfg) {
  griess::class_for_case_id(cfg.case_id);
  if (auto def = case_file_definition(cfg.case_id)) return griess::build_case_table(*def);
  return griess::standard_case(cfg.case_id);
}

minimal::QDimOptions qdim_options(const RunConfig& cfg) {
  minimal::QDimOptions o;
  o.precision_bits = cfg.precision;
  o.identify.tol = HighReal(cfg.tol);
  return o;
}

decomp::VerifyOptions verify_options(const RunConfig& cfg) {
  decomp::VerifyOptions o;
  o.bound = cfg.bound;
  o.definition = case_file_definition(cfg.case_id);
  if (!cfg.lambda1.empty()) {
    if (o.definition) throw UsageError("--lambda1 cannot be combined with a case file");
    o.pair = griess::catalog(griess::class_for_case_id(cfg.case_id));
    o.pair->lambda1 = parse_qf(cfg.lambda1);
  }
  if (!cfg.template_path.empty()) o.tpl = decomp::parse_template(read_file(cfg.template_path));
  for (const auto& f : cfg.force) {
    const auto eq = f.find('=');
    if (eq == std::string::npos) throw UsageError("--force expects var=value");
    try {
      o.force[f.substr(0, eq)] = std::stol(f.substr(eq + 1));
    } catch (const std::exception&) {
      throw UsageError("--force expects an integer value in '" + f + "'");
    }
  }
  return o;
}

// ---- commands ----------------------------------------------------------------------

Result cmd_catalog(const RunConfig& cfg) {
  Result r;
  r.data["classes"] = json::array();
  std::ostringstream os;
  os << std::left << std::setw(6) << "class" << std::setw(4) << "N" << std::setw(12) << "<e,f>" << "<e,e^tf>\n";
  for (const auto& name : griess::catalog_classes()) {
    if (!cfg.class_name.empty() && name != cfg.class_name) continue;
    const auto d = griess::catalog(name);
    json row{{"class", name}, {"N", d.N}, {"lambda1", exact(d.lambda1)}, {"inner_ef", exact(d.inner_ef())}};
    row["lambda2"] = d.lambda2 ? exact(*d.lambda2) : json(nullptr);
    row["inner_e_etf"] = d.lambda2 ? exact(*d.lambda2 / QF(4)) : json(nullptr);
    r.data["classes"].push_back(row);
    os << std::setw(6) << name << std::setw(4) << d.N << std::setw(12) << short_qf(d.inner_ef())
       << (d.lambda2 ? short_qf(*d.lambda2 / QF(4)) : "-") << "\n";
  }
  if (r.data["classes"].empty()) griess::catalog(cfg.class_name);
  r.text = os.str();
  return r;
}

Result cmd_table(const RunConfig& cfg) {
  const auto t = load_case(cfg);
  Result r;
  r.data["case"] = t.id();
  r.data["class"] = t.pair().class_name;
  r.data["basis"] = t.basis();
  r.data["gram"] = matrix_json(t.gram());
  std::ostringstream os;
  os << "case " << t.id() << " (" << t.pair().class_name << "), dimension " << t.dim() << "\nproducts:\n";
  json products = json::array();
  for (std::size_t i = 0; i < t.dim(); ++i)
    for (std::size_t j = i; j < t.dim(); ++j) {
      const auto v = griess::multiply(t.basis_element(i), t.basis_element(j), t);
      products.push_back({{"left", t.basis()[i]}, {"right", t.basis()[j]}, {"value", element_json(v, t)}});
      os << "  " << t.basis()[i] << " * " << t.basis()[j] << " = " << griess::format_element(v, t) << "\n";
    }
  r.data["products"] = products;
  os << "gram:\n" << matrix_text(t.gram(), t.basis());
  for (const auto& [g, m] : t.autos()) {
    r.data["automorphisms"][std::string(griess::automorphism_name(g))] = matrix_json(m);
    os << std::string(griess::automorphism_name(g)) << " (columns are images):\n" << matrix_text(m, t.basis());
  }
  r.text = os.str();
  return r;
}

json reduction_json(const Reduction& red) {
  json j{{"rank", red.rank}};
  j["det"] = red.det ? exact(*red.det) : json(nullptr);
  j["kernel"] = json::array();
  for (const auto& k : red.kernel) j["kernel"].push_back(coords_json(k));
  return j;
}

std::string reduction_text(const Reduction& red) {
  std::ostringstream os;
  os << "rank " << red.rank;
  if (red.det) os << ", det " << short_qf(*red.det) << " (" << to_decimal(*red.det, 10) << ")";
  os << "\n";
  for (const auto& k : red.kernel) {
    os << "kernel (";
    for (std::size_t i = 0; i < k.size(); ++i) os << (i ? ", " : "") << short_qf(k[i]);
    os << ")\n";
  }
  return os.str();
}

Result cmd_gram(const RunConfig& cfg) {
  const auto t = load_case(cfg);
  Result r;
  std::ostringstream os;
  r.data["case"] = t.id();
  if (t.id() == "a5") {
    const auto g7 = griess::a5_spanning_gram(t.pair().lambda1, *t.pair().lambda2);
    const auto red = mat_reduce(g7);
    r.data["spanning_labels"] = griess::a5_spanning_labels();
    r.data["spanning_gram"] = matrix_json(g7);
    r.data["spanning_reduction"] = reduction_json(red);
    os << "spanning-set Gram matrix:\n" << matrix_text(g7, griess::a5_spanning_labels()) << reduction_text(red);
  }
  json minors = json::array();
  for (std::size_t k = 1; k <= t.dim(); ++k) {
    QFMatrix sub(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) sub(i, j) = t.gram()(i, j);
    minors.push_back(exact(*mat_reduce(sub).det));
  }
  const auto red = mat_reduce(t.gram());
  r.data["basis"] = t.basis();
  r.data["basis_gram"] = matrix_json(t.gram());
  r.data["basis_reduction"] = reduction_json(red);
  r.data["leading_minors"] = minors;
  os << "basis Gram matrix:\n" << matrix_text(t.gram(), t.basis()) << reduction_text(red) << "leading minors:";
  for (const auto& m : minors) os << " " << m["decimal"].get<std::string>();
  os << "\n";
  r.text = os.str();
  return r;
}

Result cmd_eigen(const RunConfig& cfg) {
  const auto t = load_case(cfg);
  const std::string xl = cfg.x.empty() ? "e" : cfg.x;
  const auto x = t[xl];
  std::vector<QF> lams;
  if (cfg.lambdas.empty()) {
    lams = {QF(2), QF(0), QF::frac(1, 2), QF::frac(1, 16)};
  } else {
    for (const auto& l : cfg.lambdas) lams.push_back(parse_qf(l));
  }
  Result r;
  r.data["case"] = t.id();
  r.data["operator"] = xl;
  r.data["eigenspaces"] = json::array();
  std::ostringstream os;
  std::size_t total = 0;
  for (const auto& lam : lams) {
    const auto basis = griess::eigenspace(x, lam, t);
    total += basis.size();
    json b = json::array();
    os << "E^" << xl << "(" << short_qf(lam) << "): dimension " << basis.size() << "\n";
    for (const auto& v : basis) {
      b.push_back(element_json(v, t));
      os << "  " << griess::format_element(v, t) << "\n";
    }
    r.data["eigenspaces"].push_back({{"eigenvalue", exact(lam)}, {"dimension", basis.size()}, {"basis", b}});
  }
  r.data["dimension_total"] = total;
  r.data["algebra_dimension"] = t.dim();
  os << "total " << total << " of " << t.dim() << "\n";
  r.text = os.str();
  return r;
}

Result cmd_conformal(const RunConfig& cfg) {
  const auto t = load_case(cfg);
  const auto span = griess::reference_zero_basis(t);
  const auto found = griess::conformal_search(span, t);
  Result r;
  std::ostringstream os;
  r.data["case"] = t.id();
  r.data["span"] = json::array();
  os << "search span:\n";
  for (const auto& v : span) {
    r.data["span"].push_back(element_json(v, t));
    os << "  " << griess::format_element(v, t) << "\n";
  }
  r.data["conformal"] = json::array();
  for (const auto& c : found) {
    json j{{"vector", element_json(c.vector, t)}, {"central_charge", exact(c.central_charge)},
           {"norm", exact(griess::inner(c.vector, c.vector, t))}};
    j["k"] = c.k ? exact(*c.k) : json(nullptr);
    r.data["conformal"].push_back(j);
    os << "c = " << short_qf(c.central_charge) << (c.k ? ", k = " + short_qf(*c.k) : std::string()) << "\n  "
       << griess::format_element(c.vector, t) << "\n";
  }
  // The Ising vector plus the first orthogonal family found.
  auto total = t["e"];
  std::vector<griess::GriessElement> family;
  for (const auto& c : found) {
    const bool orth = std::all_of(family.begin(), family.end(), [&](const griess::GriessElement& w) {
      return griess::multiply(w, c.vector, t).is_zero();
    });
    if (orth) family.push_back(c.vector);
  }
  for (const auto& w : family) total += w;
  QF charge = QF::frac(1, 2);
  for (const auto& w : family) charge += QF(2) * griess::inner(w, w, t);
  r.data["sum"] = {{"members", family.size() + 1}, {"conformal", griess::is_conformal(total, t)},
                   {"central_charge", exact(charge)}};
  os << "e + " << family.size() << " mutually orthogonal conformal vector(s): "
     << (griess::is_conformal(total, t) ? "conformal" : "NOT conformal") << ", total central charge " << short_qf(charge)
     << "\n";
  r.text = os.str();
  return r;
}

Result cmd_w4(const RunConfig& cfg) {
  if (cfg.case_id != "c3") throw UsageError("w4 is defined for --case c3");
  const auto t = load_case(cfg);
  const auto states = modecalc::c3_independence_states(t);
  const auto g = modecalc::w4_gram(states, t);
  const auto printed = modecalc::printed_c3_matrix();
  const auto pred = mat_reduce(printed);
  std::vector<std::string> labels;
  for (const auto& s : states) labels.push_back(s.label);
  Result r;
  r.data["case"] = t.id();
  r.data["states"] = labels;
  r.data["recomputed_matrix"] = {{"entries", matrix_json(g.matrix)}, {"rank", g.rank}, {"det", exact(g.det)}};
  r.data["paper_matrix"] = {{"entries", matrix_json(printed)}, {"rank", pred.rank}, {"det", exact(*pred.det)}};
  json diffs = json::array();
  std::ostringstream os;
  os << "recomputed weight-4 Gram matrix:\n" << matrix_text(g.matrix, labels) << "rank " << g.rank << ", det "
     << short_qf(g.det) << " (" << to_decimal(g.det, 10) << ")\n";
  os << "reference matrix as printed:\n" << matrix_text(printed, labels) << "rank " << pred.rank << ", det "
     << to_decimal(*pred.det, 10) << "\ndiscrepancies:\n";
  for (const auto& d : modecalc::matrix_discrepancies(printed, g.matrix)) {
    diffs.push_back({{"row", d.row + 1}, {"col", d.col + 1}, {"printed", exact(d.printed)}, {"recomputed", exact(d.recomputed)}});
    os << "  (" << d.row + 1 << "," << d.col + 1 << ") printed " << short_qf(d.printed) << ", recomputed "
       << short_qf(d.recomputed) << "\n";
  }
  r.data["discrepancies"] = diffs;
  r.text = os.str();
  return r;
}

// Either --model p,q with bare weights, or --case with bracketed labels.
std::vector<minimal::MinimalModel> label_models(const RunConfig& cfg) {
  if (!cfg.model.empty()) return {parse_model(cfg.model)};
  return case_models(cfg.case_id);
}

Result cmd_fusion(const RunConfig& cfg) {
  if (cfg.x.empty() || cfg.y.empty()) throw UsageError("fusion needs --x and --y");
  const auto models = label_models(cfg);
  const auto x = minimal::parse_module_label(models, cfg.x);
  const auto y = minimal::parse_module_label(models, cfg.y);
  const auto prod = minimal::fuse_tensor(x, y);
  Result r;
  r.data["x"] = module_json(x);
  r.data["y"] = module_json(y);
  r.data["product"] = json::array();
  std::ostringstream os;
  os << minimal::to_string(x) << " x " << minimal::to_string(y) << " =";
  for (std::size_t i = 0; i < prod.size(); ++i) {
    r.data["product"].push_back(module_json(prod[i]));
    os << (i ? " + " : " ") << minimal::to_string(prod[i]);
  }
  os << "\n";
  r.text = os.str();
  return r;
}

Result cmd_qdim(const RunConfig& cfg) {
  const std::string text = !cfg.h.empty() ? cfg.h : cfg.x;
  if (text.empty()) throw UsageError("qdim needs --h (with --model) or --x");
  const auto label = minimal::parse_module_label(label_models(cfg), text);
  const auto d = minimal::qdim(label, qdim_options(cfg));
  Result r;
  r.data = qdim_json(d);
  r.data["label"] = module_json(label);
  r.data["simple_current"] = d.exact && *d.exact == QF(1);
  std::ostringstream os;
  os << "qdim " << minimal::to_string(label) << " = " << to_decimal(d.numeric, 20);
  os << (d.exact ? " = " + short_qf(*d.exact) : " (not identified: " + d.note + ")") << "\n";
  r.text = os.str();
  return r;
}

json report_json(const decomp::TheoremReport& rep) {
  json j;
  j["case"] = rep.case_id;
  j["ok"] = rep.ok;
  j["failed_stage"] = rep.failed_stage;
  j["messages"] = rep.messages;
  j["algebra_dimension"] = rep.algebra_dim;
  j["eigenspace_dimensions"] = rep.eigenspace_dims;
  j["conformal"] = json::array();
  for (const auto& [v, c] : rep.conformal) j["conformal"].push_back({{"vector", v}, {"central_charge", c}});
  j["seeds"] = json::array();
  for (const auto& s : rep.seeds) j["seeds"].push_back({{"var", s.var}, {"value", s.value}, {"reason", s.reason}});
  j["equations"] = rep.equations;
  j["split_equations"] = rep.split_equations;
  j["implications"] = json::array();
  for (const auto& i : rep.implications) {
    j["implications"].push_back({{"if", {i.premise_a, i.premise_b}}, {"then", i.conclusion}, {"fusion", i.reason}});
  }
  j["simple_currents"] = rep.simple_currents;
  j["solutions"] = json::array();
  for (const auto& s : rep.solutions) j["solutions"].push_back(s.values);
  j["decomposition"] = json::array();
  for (const auto& [l, n] : rep.decomposition) j["decomposition"].push_back({{"label", l}, {"multiplicity", n}});
  j["fusion_check"] = {{"pairs", rep.fusion.pairs},
                       {"pairs_meeting_list", rep.fusion.pairs_meeting_list},
                       {"outside_labels", rep.fusion.outside_labels}};
  j["assumptions"] = rep.assumptions;
  return j;
}

std::string report_text(const decomp::TheoremReport& rep, bool full) {
  std::ostringstream os;
  os << "case " << rep.case_id << ": " << (rep.ok ? "VERIFIED" : "FAILED at " + rep.failed_stage) << "\n";
  for (const auto& m : rep.messages) os << "  ! " << m << "\n";
  if (full && rep.algebra_dim) {
    os << "algebra dimension " << rep.algebra_dim << "; eigenspaces of e:";
    for (const auto& [lam, n] : rep.eigenspace_dims) os << " " << lam << "->" << n;
    os << "\n";
    for (const auto& [v, c] : rep.conformal) os << "conformal vector, c = " << c << ": " << v << "\n";
  }
  for (const auto& s : rep.seeds) os << "fixed " << s.var << " = " << s.value << " (" << s.reason << ")\n";
  if (!rep.equations.empty()) os << "equations:\n";
  for (const auto& e : rep.equations) os << "  " << e << "\n";
  if (!rep.split_equations.empty()) os << "split:\n";
  for (const auto& e : rep.split_equations) os << "  " << e << "\n";
  if (full && !rep.implications.empty()) {
    os << "simple-current implications (imported assumption):\n";
    for (const auto& i : rep.implications) {
      os << "  " << i.premise_a << " = " << i.premise_b << " = 1 => " << i.conclusion << " = 1   [" << i.reason << "]\n";
    }
  }
  os << "solutions: " << rep.solutions.size() << "\n";
  for (const auto& s : rep.solutions) {
    os << " ";
    std::vector<std::pair<std::string, long>> items(s.values.begin(), s.values.end());
    std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
      return a.first.size() != b.first.size() ? a.first.size() < b.first.size() : a.first < b.first;
    });
    for (const auto& [v, n] : items) os << " " << v << "=" << n;
    os << "\n";
  }
  if (!rep.decomposition.empty()) {
    os << "decomposition:";
    for (std::size_t i = 0; i < rep.decomposition.size(); ++i) {
      os << (i ? " +" : "") << " " << rep.decomposition[i].second << rep.decomposition[i].first;
    }
    os << "\n";
  }
  if (full && rep.fusion.pairs) {
    os << "fusion check: " << rep.fusion.pairs_meeting_list << "/" << rep.fusion.pairs
       << " pairwise products meet the summand list; " << rep.fusion.outside_labels.size()
       << " further labels occur outside it\n";
  }
  return os.str();
}

Result cmd_solve(const RunConfig& cfg) {
  const auto rep = decomp::verify_theorem(cfg.case_id, verify_options(cfg));
  Result r;
  const auto full = report_json(rep);
  for (const char* key : {"case", "seeds", "equations", "split_equations", "implications", "solutions", "messages"}) {
    r.data[key] = full[key];
  }
  r.text = report_text(rep, false);
  if (rep.failed_stage == "construction" || rep.failed_stage == "template") r.code = kMismatch;
  return r;
}

Result cmd_verify(const RunConfig& cfg) {
  const auto rep = decomp::verify_theorem(cfg.case_id, verify_options(cfg));
  Result r;
  r.data = report_json(rep);
  r.text = report_text(rep, true);
  r.code = rep.ok ? kOk : kMismatch;
  return r;
}

void validate(const RunConfig& cfg) {
  if (cfg.format != "text" && cfg.format != "json") throw UsageError("--format must be text or json");
  if (!(cfg.tol > 0)) throw UsageError("--tol must be positive");
  if (cfg.precision < 64 || cfg.precision > 256) throw UsageError("--precision must be between 64 and 256 bits");
  if (cfg.bound < 0) throw UsageError("--bound must be nonnegative");
  if (cfg.case_id != "c3" && cfg.case_id != "a5") throw UsageError("--case must be c3 or a5");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Exact Griess-algebra and minimal-model computations for two Ising vectors", "griesskit"};
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);
  app.add_option("--case", cfg.case_id, "case id: c3 or a5")->capture_default_str();
  app.add_option("--format", cfg.format, "text or json")->capture_default_str();
  app.add_option("--out", cfg.out_path, "write the report to this file");
  app.add_option("--bound", cfg.bound, "upper search bound per multiplicity")->capture_default_str();
  app.add_option("--tol", cfg.tol, "tolerance for exact identification")->capture_default_str();
  app.add_option("--precision", cfg.precision, "working precision in bits (64..256)")->capture_default_str();

  struct Cmd {
    const char* name;
    const char* help;
    Result (*fn)(const RunConfig&);
  };
  const std::vector<Cmd> cmds = {
      {"catalog", "pair inner products of the nine classes", cmd_catalog},
      {"table", "structure constants, Gram matrix and automorphisms", cmd_table},
      {"gram", "Gram matrices, ranks and kernels", cmd_gram},
      {"eigen", "eigenspaces of an adjoint operator", cmd_eigen},
      {"conformal", "conformal vectors in E^e(0)", cmd_conformal},
      {"w4", "weight-4 Gram matrix (c3)", cmd_w4},
      {"fusion", "fusion of two module labels", cmd_fusion},
      {"qdim", "quantum dimension of a module label", cmd_qdim},
      {"solve", "multiplicity equations and their solutions", cmd_solve},
      {"verify", "full decomposition check", cmd_verify},
  };
  std::map<CLI::App*, const Cmd*> by_app;
  for (const auto& c : cmds) {
    auto* sub = app.add_subcommand(c.name, c.help);
    sub->fallthrough();
    by_app[sub] = &c;
    const std::string n = c.name;
    if (n == "catalog") sub->add_option("--class", cfg.class_name, "restrict to one class");
    if (n == "eigen") {
      sub->add_option("--x", cfg.x, "basis label of the operator (default e)");
      sub->add_option("--lambda", cfg.lambdas, "eigenvalues to inspect");
    }
    if (n == "fusion" || n == "qdim") {
      sub->add_option("--model", cfg.model, "minimal model p,q (labels are then bare weights)");
      sub->add_option("--x", cfg.x, "module label, e.g. [1/2,45/2]");
    }
    if (n == "fusion") sub->add_option("--y", cfg.y, "second module label");
    if (n == "qdim") sub->add_option("--h", cfg.h, "conformal weight (with --model)");
    if (n == "solve" || n == "verify") {
      sub->add_option("--template", cfg.template_path, "decomposition template (JSON)");
      sub->add_option("--force", cfg.force, "fix a multiplicity, e.g. n2=0");
      sub->add_option("--lambda1", cfg.lambda1, "override lambda1 = 4<e,f>");
    }
  }

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  const Cmd* cmd = nullptr;
  for (auto* sub : app.get_subcommands()) cmd = by_app.at(sub);
  cfg.command = cmd->name;

  Result res;
  try {
    validate(cfg);
    res = cmd->fn(cfg);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const griess::ConstructionError& e) {
    err << "error: " << e.what() << "\n";
    return kMismatch;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kMismatch;
  }

  const std::string body = cfg.format == "json" ? res.data.dump(2) + "\n" : res.text;
  if (cfg.out_path.empty()) {
    out << body;
  } else {
    std::ofstream f(cfg.out_path, std::ios::binary);
    if (!f || !(f << body)) {
      err << "error: cannot write " << cfg.out_path << "\n";
      return kUsage;
    }
  }
  return res.code;
}

}  // namespace griesskit::cli
