#include "griesskit/griess.hpp"

#include <algorithm>
#include <sstream>

namespace griesskit::griess {

namespace {

std::vector<std::string> words(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::string_view trim(std::string_view v) {
  while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) v.remove_prefix(1);
  while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.remove_suffix(1);
  return v;
}

}  // namespace

CaseDefinition parse_case_file(std::string_view text) {
  CaseDefinition def;
  std::optional<std::string> cls;
  std::optional<int> n;
  std::optional<QF> l1, l2;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<QF>> seeds;
  std::map<Automorphism, QFMatrix> autos;
  bool have_basis = false;

  auto index = [&](const std::string& label, std::size_t line) {
    const auto it = std::find(def.basis.begin(), def.basis.end(), label);
    if (it == def.basis.end()) {
      throw ParseError("line " + std::to_string(line) + ": unknown basis label '" + label + "'");
    }
    return static_cast<std::size_t>(it - def.basis.begin());
  };

  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("line " + std::to_string(line_no) + ": expected key=value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    const auto w = words(value);
    auto need = [&](std::size_t k) {
      if (w.size() != k) {
        throw ParseError("line " + std::to_string(line_no) + ": '" + key + "' takes " + std::to_string(k) + " fields");
      }
      if (!have_basis) throw ParseError("line " + std::to_string(line_no) + ": basis must come before '" + key + "'");
    };
    if (key == "class") {
      cls = std::string(value);
    } else if (key == "N") {
      try {
        n = std::stoi(std::string(value));
      } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line_no) + ": malformed N");
      }
    } else if (key == "lambda1") {
      l1 = parse_qf(value);
    } else if (key == "lambda2") {
      l2 = parse_qf(value);
    } else if (key == "disc") {
      const auto d = parse_rational(value);
      if (d.get_den() != 1 || !d.get_num().fits_slong_p() || !is_squarefree(d.get_num().get_si())) {
        throw ParseError("line " + std::to_string(line_no) + ": disc must be a squarefree positive integer");
      }
      def.disc = d.get_num().get_si();
    } else if (key == "basis") {
      if (have_basis) throw ParseError("line " + std::to_string(line_no) + ": basis given twice");
      def.basis = w;
      if (def.basis.empty()) throw ParseError("line " + std::to_string(line_no) + ": empty basis");
      for (std::size_t i = 0; i < def.basis.size(); ++i) {
        if (std::count(def.basis.begin(), def.basis.end(), def.basis[i]) != 1) {
          throw ParseError("line " + std::to_string(line_no) + ": repeated basis label '" + def.basis[i] + "'");
        }
      }
      have_basis = true;
    } else if (key == "gram") {
      need(3);
      auto i = index(w[0], line_no), j = index(w[1], line_no);
      if (i > j) std::swap(i, j);
      def.gram[{i, j}] = parse_qf(w[2]);
    } else if (key == "seed") {
      need(4);
      const auto i = index(w[0], line_no), j = index(w[1], line_no), k = index(w[2], line_no);
      auto& v = seeds[{i, j}];
      v.resize(def.basis.size());
      v[k] += parse_qf(w[3]);
    } else if (key == "auto") {
      need(4);
      Automorphism g;
      try {
        g = parse_automorphism(w[0]);
      } catch (const std::invalid_argument& err) {
        throw ParseError("line " + std::to_string(line_no) + ": " + err.what());
      }
      auto [it, _] = autos.try_emplace(g, def.basis.size(), def.basis.size());
      it->second(index(w[2], line_no), index(w[1], line_no)) += parse_qf(w[3]);
    } else {
      throw ParseError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  if (!cls) throw ParseError("case file lacks class=");
  if (!have_basis) throw ParseError("case file lacks basis=");
  if (!l1) throw ParseError("case file lacks lambda1=");
  def.pair.class_name = *cls;
  def.pair.N = n.value_or(0);
  def.pair.lambda1 = *l1;
  def.pair.lambda2 = l2;
  for (auto& [ij, v] : seeds) def.seeds.push_back({ij.first, ij.second, std::move(v)});
  def.autos = std::move(autos);
  return def;
}

std::string format_case_file(const CaseDefinition& def) {
  std::ostringstream out;
  out << "class=" << def.pair.class_name << "\n";
  out << "N=" << def.pair.N << "\n";
  out << "lambda1=" << to_string(def.pair.lambda1) << "\n";
  if (def.pair.lambda2) out << "lambda2=" << to_string(*def.pair.lambda2) << "\n";
  out << "disc=" << def.disc << "\n";
  out << "basis=";
  for (std::size_t i = 0; i < def.basis.size(); ++i) out << (i ? " " : "") << def.basis[i];
  out << "\n";
  for (const auto& [ij, v] : def.gram) {
    if (!v.is_zero()) out << "gram=" << def.basis[ij.first] << " " << def.basis[ij.second] << " " << to_string(v) << "\n";
  }
  for (const auto& s : def.seeds) {
    const bool all_zero = std::all_of(s.value.begin(), s.value.end(), [](const QF& x) { return x.is_zero(); });
    if (all_zero) out << "seed=" << def.basis[s.left] << " " << def.basis[s.right] << " " << def.basis[0] << " 0/1\n";
    for (std::size_t k = 0; k < s.value.size(); ++k) {
      if (!s.value[k].is_zero()) {
        out << "seed=" << def.basis[s.left] << " " << def.basis[s.right] << " " << def.basis[k] << " "
            << to_string(s.value[k]) << "\n";
      }
    }
  }
  for (const auto& [g, m] : def.autos) {
    for (std::size_t j = 0; j < m.cols(); ++j)
      for (std::size_t i = 0; i < m.rows(); ++i) {
        if (!m(i, j).is_zero()) {
          out << "auto=" << automorphism_name(g) << " " << def.basis[j] << " " << def.basis[i] << " " << to_string(m(i, j))
              << "\n";
        }
      }
  }
  return out.str();
}

}  // namespace griesskit::griess
