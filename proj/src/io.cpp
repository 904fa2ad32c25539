#include "mop/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "mop/errors.hpp"

namespace mop::io {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json grid_json(const Grid<double>& g) {
  json rows = json::array();
  for (int n = 0; n <= g.window.N; ++n) {
    json row = json::array();
    for (int m = 0; m <= g.window.M; ++m) row.push_back(g.at(n, m));
    rows.push_back(std::move(row));
  }
  return rows;
}

Grid<double> grid_from_json(const json& j, Window window, const std::string& name) {
  if (!j.is_array() || static_cast<int>(j.size()) != window.N + 1)
    throw DomainError("json field '" + name + "': expected " + std::to_string(window.N + 1) +
                      " rows");
  Grid<double> g(window);
  for (int n = 0; n <= window.N; ++n) {
    const json& row = j[static_cast<std::size_t>(n)];
    if (!row.is_array() || static_cast<int>(row.size()) != window.M + 1)
      throw DomainError("json field '" + name + "': expected " + std::to_string(window.M + 1) +
                        " columns");
    for (int m = 0; m <= window.M; ++m) g.at(n, m) = row[static_cast<std::size_t>(m)].get<double>();
  }
  return g;
}

json polytable_json(const PolyTable<double>& table) {
  json coeffs = json::array();
  for (int n = 0; n <= table.window.N; ++n) {
    json row = json::array();
    for (int m = 0; m <= table.window.M; ++m) row.push_back(table.at(n, m).coeffs);
    coeffs.push_back(std::move(row));
  }
  return json{{"window", {table.window.N, table.window.M}}, {"coeffs", std::move(coeffs)}};
}

std::string polytable_csv(const PolyTable<double>& table) {
  std::ostringstream out;
  out << "n,m,coeffs_ascending\n";
  for (int n = 0; n <= table.window.N; ++n)
    for (int m = 0; m <= table.window.M; ++m) {
      out << n << ',' << m;
      for (double c : table.at(n, m).coeffs) out << ',' << format_double(c);
      out << '\n';
    }
  return out.str();
}

json field_json(const CoeffField<double>& field) {
  return json{{"window", {field.window.N, field.window.M}},
              {"a", grid_json(field.a)},
              {"b", grid_json(field.b)},
              {"c", grid_json(field.c)},
              {"d", grid_json(field.d)}};
}

std::string field_csv(const CoeffField<double>& field) {
  std::ostringstream out;
  out << "n,m,a,b,c,d,q\n";
  for (int n = 0; n <= field.window.N; ++n)
    for (int m = 0; m <= field.window.M; ++m)
      out << n << ',' << m << ',' << format_double(field.a.at(n, m)) << ','
          << format_double(field.b.at(n, m)) << ',' << format_double(field.c.at(n, m)) << ','
          << format_double(field.d.at(n, m)) << ',' << format_double(field.q(n, m)) << '\n';
  return out.str();
}

static Window window_from_json(const json& j) {
  if (!j.contains("window") || !j["window"].is_array() || j["window"].size() != 2)
    throw DomainError("json: missing or malformed 'window' [N,M]");
  return Window{j["window"][0].get<int>(), j["window"][1].get<int>()};
}

CoeffField<double> field_from_json(const json& j) {
  Window w = window_from_json(j);
  CoeffField<double> field(w);
  field.a = grid_from_json(j.at("a"), w, "a");
  field.b = grid_from_json(j.at("b"), w, "b");
  field.c = grid_from_json(j.at("c"), w, "c");
  field.d = grid_from_json(j.at("d"), w, "d");
  return field;
}

QabInput qab_from_json(const json& j) {
  QabInput in;
  in.window = window_from_json(j);
  in.q = grid_from_json(j.at("q"), in.window, "q");
  in.a = grid_from_json(j.at("a"), in.window, "a");
  in.b = grid_from_json(j.at("b"), in.window, "b");
  return in;
}

json curvature_report_json(const CurvatureReport<double>& rep) {
  return json{{"window", {rep.window.N, rep.window.M}},
              {"residual_31", grid_json(rep.residual_31)},
              {"residual_32", grid_json(rep.residual_32)},
              {"residual_33", grid_json(rep.residual_33)},
              {"residual_34", grid_json(rep.residual_34)},
              {"max_residual", rep.max_residual},
              {"tolerance", rep.tolerance},
              {"pass", rep.pass}};
}

json degeneracy_json(const DegeneracyField<double>& deg) {
  json nd = json::array(), def = json::array();
  for (int n = 0; n <= deg.window.N; ++n) {
    json nd_row = json::array(), def_row = json::array();
    for (int m = 0; m <= deg.window.M; ++m) {
      nd_row.push_back(deg.is_nondegenerate(n, m));
      def_row.push_back(deg.is_defined(n, m));
    }
    nd.push_back(std::move(nd_row));
    def.push_back(std::move(def_row));
  }
  return json{{"window", {deg.window.N, deg.window.M}},
              {"D", grid_json(deg.values)},
              {"nondegenerate", std::move(nd)},
              {"defined", std::move(def)}};
}

json symmetrizability_json(const SymmetrizabilityReport<double>& rep) {
  return json{{"window", {rep.window.N, rep.window.M}},
              {"residuals", grid_json(rep.residuals)},
              {"max_residual", rep.max_residual},
              {"symmetrizable", rep.symmetrizable}};
}

json eigencheck_json(const EigencheckReport<double>& rep) {
  return json{{"samples", rep.samples},
              {"residuals", rep.residuals},
              {"interior", {rep.interior.N, rep.interior.M}},
              {"max_residual", rep.max_residual}};
}

json normality_json(const NormalityReport<double>& rep) {
  json normal = json::array();
  for (int n = 0; n <= rep.window.N; ++n) {
    json row = json::array();
    for (int m = 0; m <= rep.window.M; ++m) row.push_back(rep.is_normal(n, m));
    normal.push_back(std::move(row));
  }
  return json{{"window", {rep.window.N, rep.window.M}},
              {"determinants", grid_json(rep.determinants)},
              {"normal", std::move(normal)},
              {"threshold", rep.threshold}};
}

std::string matrix_csv(const SquareMatrix<double>& a) {
  std::ostringstream out;
  for (int i = 0; i < a.n; ++i) {
    for (int j = 0; j < a.n; ++j) {
      if (j) out << ',';
      out << format_double(a.at(i, j));
    }
    out << '\n';
  }
  return out.str();
}

json matrix_triplets_json(const SquareMatrix<double>& a) {
  json entries = json::array();
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j)
      if (a.at(i, j) != 0.0) entries.push_back(json::array({i, j, a.at(i, j)}));
  return json{{"rows", a.n}, {"cols", a.n}, {"entries", std::move(entries)}};
}

json wavetable_json(const WaveTable<double>& wave) {
  json psi = json::array();
  for (int n = 0; n <= wave.window.N; ++n) {
    json row = json::array();
    for (int m = 0; m <= wave.window.M; ++m) {
      const auto& v = wave.at(n, m);
      row.push_back(json::array({v[0], v[1], v[2]}));
    }
    psi.push_back(std::move(row));
  }
  return json{{"z", wave.z}, {"psi", std::move(psi)}};
}

json moment_pair_json(const MomentPair<double>& pair) {
  return json{{"mu1", pair.mu1.values}, {"mu2", pair.mu2.values}};
}

MomentPair<double> moment_pair_from_json(const json& j) {
  if (!j.contains("mu1") || !j.contains("mu2"))
    throw DomainError("raw moments json: expected keys 'mu1' and 'mu2'");
  return raw_moments(j["mu1"].get<std::vector<double>>(), j["mu2"].get<std::vector<double>>());
}

MomentSequence<double> moments_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<double> values;
  bool first = true;
  int expected = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (first) {
      first = false;
      if (line.rfind("j,s", 0) == 0) continue;  // header
    }
    std::istringstream row(line);
    std::string jfield, sfield;
    if (!std::getline(row, jfield, ',') || !std::getline(row, sfield, ','))
      throw DomainError("moments csv: expected two columns 'j,s'");
    if (std::stoi(jfield) != expected)
      throw DomainError("moments csv: orders must run 0,1,2,... without gaps");
    values.push_back(std::stod(sfield));
    ++expected;
  }
  if (values.empty()) throw DomainError("moments csv: no data rows");
  MomentSequence<double> seq;
  seq.values = std::move(values);
  seq.normalized = seq.values[0] == 1.0;
  return seq;
}

FamilySpec family_spec_from_json(const json& j) {
  if (!j.contains("family")) throw DomainError("family json: missing 'family'");
  const std::string name = j["family"].get<std::string>();
  FamilySpec spec;
  if (name == "hermite")
    spec.kind = FamilyKind::hermite;
  else if (name == "laguerre1")
    spec.kind = FamilyKind::laguerre1;
  else if (name == "meixner1")
    spec.kind = FamilyKind::meixner1;
  else if (name == "constant_toy")
    spec.kind = FamilyKind::constant_toy;
  else
    throw DomainError("family json: unknown family '" + name + "'");
  const json params = j.value("params", json::object());
  spec.c1 = params.value("c1", spec.c1);
  spec.c2 = params.value("c2", spec.c2);
  spec.alpha1 = params.value("alpha1", spec.alpha1);
  spec.alpha2 = params.value("alpha2", spec.alpha2);
  spec.beta = params.value("beta", spec.beta);
  spec.u0 = params.value("u0", spec.u0);
  spec.v0 = params.value("v0", spec.v0);
  spec.validate_ranges();
  return spec;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot open for writing: " + path);
  out << content;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json_file(const std::string& path) { return json::parse(read_text_file(path)); }

}  // namespace mop::io
