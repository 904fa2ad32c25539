// Command-line surface: builds MOP tables, verifies recurrence
// consistency and zero-curvature conditions, materializes the lattice
// operators, and reconstructs (c,d) from (q,a,b).

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mop/curvature.hpp"
#include "mop/families.hpp"
#include "mop/io.hpp"
#include "mop/laxpair.hpp"
#include "mop/operators.hpp"
#include "mop/recurrence.hpp"

namespace {

using mop::io::json;

constexpr int kExitUsage = 2;
constexpr int kExitNormality = 3;
constexpr int kExitSymmetrizability = 4;
constexpr int kExitDegeneracy = 5;
constexpr int kExitConsistency = 6;
constexpr int kExitNumeric = 7;

struct CommonOptions {
  std::string family;
  std::string params_json_path;
  std::vector<int> window{3, 3};
  std::string precision = "double";
  double tol_curvature = 1e-10;
  double tol_normality = 1e-10;
  double tol_eigencheck = 1e-9;
  double tol_path = 1e-9;
  double tol_route = 1e-8;
  double tol_degeneracy = 1e-8;
  std::string out_path;
  std::string format = "json";
  std::string z_list = "0,1,-1";
};

void add_common(CLI::App* cmd, CommonOptions& opt, bool with_family = true) {
  if (with_family)
    cmd->add_option("--family", opt.family, "built-in family: hermite|laguerre1|meixner1|constant_toy");
  cmd->add_option("--params-json", opt.params_json_path,
                  "JSON file {\"family\":...,\"params\":{...}}");
  cmd->add_option("--window", opt.window, "window extents N M")->expected(2);
  cmd->add_option("--precision", opt.precision, "double|extended")
      ->check(CLI::IsMember({"double", "extended"}));
  cmd->add_option("--tol-curvature", opt.tol_curvature, "curvature residual tolerance");
  cmd->add_option("--tol-normality", opt.tol_normality, "normality threshold");
  cmd->add_option("--tol-eigencheck", opt.tol_eigencheck, "eigencheck residual tolerance");
  cmd->add_option("--tol-path", opt.tol_path, "path-independence tolerance");
  cmd->add_option("--tol-route", opt.tol_route, "two-route generation tolerance");
  cmd->add_option("--tol-degeneracy", opt.tol_degeneracy, "degeneracy tolerance on D");
  cmd->add_option("--out", opt.out_path, "output artifact path");
  cmd->add_option("--format", opt.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--z", opt.z_list, "comma-separated spectral sample points");
}

// Family params via flags; double duty for both family selection styles.
struct FamilyFlags {
  double c1 = 0, c2 = 1, alpha1 = 0, alpha2 = 0.5, beta = 1, u0 = 0, v0 = 1;
};

void add_family_flags(CLI::App* cmd, FamilyFlags& f) {
  cmd->add_option("--c1", f.c1, "hermite shift / meixner ratio 1");
  cmd->add_option("--c2", f.c2, "hermite shift / meixner ratio 2");
  cmd->add_option("--alpha1", f.alpha1, "laguerre exponent 1");
  cmd->add_option("--alpha2", f.alpha2, "laguerre exponent 2");
  cmd->add_option("--beta", f.beta, "meixner beta");
  cmd->add_option("--u0", f.u0, "constant_toy u");
  cmd->add_option("--v0", f.v0, "constant_toy v");
}

mop::FamilySpec resolve_spec(const CommonOptions& opt, const FamilyFlags& flags) {
  if (!opt.params_json_path.empty())
    return mop::io::family_spec_from_json(mop::io::read_json_file(opt.params_json_path));
  if (opt.family.empty()) throw mop::DomainError("no family given (--family or --params-json)");
  mop::FamilySpec spec;
  if (opt.family == "hermite")
    spec.kind = mop::FamilyKind::hermite;
  else if (opt.family == "laguerre1")
    spec.kind = mop::FamilyKind::laguerre1;
  else if (opt.family == "meixner1")
    spec.kind = mop::FamilyKind::meixner1;
  else if (opt.family == "constant_toy")
    spec.kind = mop::FamilyKind::constant_toy;
  else
    throw mop::DomainError("unknown family '" + opt.family + "'");
  spec.c1 = flags.c1;
  spec.c2 = flags.c2;
  spec.alpha1 = flags.alpha1;
  spec.alpha2 = flags.alpha2;
  spec.beta = flags.beta;
  spec.u0 = flags.u0;
  spec.v0 = flags.v0;
  // Distinctness is validated by the operation that needs it: the
  // determinantal route must reach the normality scan for c1 == c2.
  spec.validate_ranges();
  return spec;
}

std::vector<double> parse_z(const std::string& list) {
  std::vector<double> zs;
  std::istringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    zs.push_back(std::stod(item));
  }
  if (zs.empty()) throw mop::DomainError("--z: no sample points given");
  return zs;
}

mop::Window window_of(const CommonOptions& opt) {
  if (opt.window.size() != 2 || opt.window[0] < 0 || opt.window[1] < 0)
    throw mop::DomainError("--window: expected nonnegative N M");
  return mop::Window{opt.window[0], opt.window[1]};
}

void emit_report(const std::string& command, bool pass, json max_residuals,
                 std::vector<std::string> artifacts) {
  json rep{{"command", command},
           {"pass", pass},
           {"max_residuals", std::move(max_residuals)},
           {"artifacts", std::move(artifacts)}};
  std::cout << rep.dump(2) << "\n";
}

std::vector<std::string> write_artifact(const CommonOptions& opt, const std::string& content) {
  if (opt.out_path.empty()) return {};
  mop::io::write_text_file(opt.out_path, content);
  return {opt.out_path};
}

int moment_order_for(const mop::Window& w) {
  // Enough for determinantal construction over the whole window.
  return 2 * w.N + w.M + 2;
}

template <class S>
mop::PolyTable<double> generate_with_precision(const mop::FamilySpec& spec, mop::Window w,
                                               const CommonOptions& opt, const std::string& route,
                                               double& route_diff) {
  mop::PolyTable<S> table;
  if (route == "determinant") {
    auto pair = mop::family_moment_pair<S>(spec, moment_order_for(w));
    table = mop::determinantal_table(pair, w, opt.tol_normality);
  } else if (route == "recurrence") {
    auto field = mop::family_field<S>(spec, w);
    table = mop::generate_table(field, w, opt.tol_route).table;
  } else {  // both-with-diff
    auto pair = mop::family_moment_pair<S>(spec, moment_order_for(w));
    auto det = mop::determinantal_table(pair, w, opt.tol_normality);
    auto field = mop::family_field<S>(spec, w);
    auto rec = mop::generate_table(field, w, opt.tol_route);
    S diff(0);
    for (int n = 0; n <= w.N; ++n)
      for (int m = 0; m <= w.M; ++m) {
        S d = mop::max_coeff_difference(det.at(n, m), rec.table.at(n, m));
        S scale = mop::max_val(S(1), mop::max_abs_coeff(det.at(n, m)));
        diff = mop::max_val(diff, d / scale);
      }
    route_diff = mop::to_double(diff);
    table = std::move(det);
  }
  mop::PolyTable<double> out(w);
  for (int n = 0; n <= w.N; ++n)
    for (int m = 0; m <= w.M; ++m) out.at(n, m) = mop::poly_to_double(table.at(n, m));
  return out;
}

int cmd_generate(const CommonOptions& opt, const FamilyFlags& flags, const std::string& route) {
  auto spec = resolve_spec(opt, flags);
  auto w = window_of(opt);
  double route_diff = 0;
  mop::PolyTable<double> table =
      opt.precision == "extended"
          ? generate_with_precision<mop::Extended>(spec, w, opt, route, route_diff)
          : generate_with_precision<double>(spec, w, opt, route, route_diff);
  auto artifacts = write_artifact(opt, opt.format == "csv" ? mop::io::polytable_csv(table)
                                                           : mop::io::polytable_json(table).dump(2));
  emit_report("generate", true, json{{"route_diff", route_diff}}, artifacts);
  return 0;
}

mop::CoeffField<double> resolve_field(const CommonOptions& opt, const FamilyFlags& flags,
                                      const std::string& field_json_path, mop::Window w) {
  if (!field_json_path.empty())
    return mop::io::field_from_json(mop::io::read_json_file(field_json_path));
  return mop::family_field<double>(resolve_spec(opt, flags), w);
}

int cmd_verify(const CommonOptions& opt, const FamilyFlags& flags,
               const std::string& field_json_path) {
  auto w = window_of(opt);
  auto field = resolve_field(opt, flags, field_json_path, w);
  auto curvature = mop::check_curvature(field, opt.tol_curvature);
  auto degeneracy = mop::degeneracy_scan(field, opt.tol_degeneracy);
  auto symmetrizability = mop::check_symmetrizable(field, opt.tol_curvature);
  json report{{"curvature", mop::io::curvature_report_json(curvature)},
              {"degeneracy", mop::io::degeneracy_json(degeneracy)},
              {"symmetrizability", mop::io::symmetrizability_json(symmetrizability)}};
  auto artifacts = write_artifact(opt, report.dump(2));
  emit_report("verify", curvature.pass,
              json{{"curvature", curvature.max_residual},
                   {"symmetrizability", symmetrizability.max_residual}},
              artifacts);
  return curvature.pass ? 0 : kExitConsistency;
}

int cmd_operator(const CommonOptions& opt, const FamilyFlags& flags,
                 const std::string& field_json_path, const std::vector<std::string>& kinds,
                 const std::string& eigencheck_list) {
  auto w = window_of(opt);
  auto field = resolve_field(opt, flags, field_json_path, w);
  std::vector<std::string> artifacts;
  json residuals = json::object();
  bool pass = true;

  std::optional<mop::SymmetricDecomposition<double>> sym;
  auto materialize = [&](const std::string& kind) -> mop::LatticeOperator<double> {
    if (kind == "h1") return mop::build_h1(field);
    if (kind == "h2") return mop::build_h2(field);
    if (kind == "delta") return mop::build_delta(field);
    if (kind == "deltas" || kind == "j1" || kind == "j2") {
      if (!sym) sym = mop::build_delta_s(field);
      if (kind == "deltas") return sym->delta_s;
      return kind == "j1" ? sym->j1 : sym->j2;
    }
    throw mop::DomainError("unknown operator kind '" + kind + "'");
  };

  for (const auto& kind : kinds) {
    auto op = materialize(kind);
    auto matrix = mop::to_matrix(op);
    if (!opt.out_path.empty()) {
      const std::string path = opt.out_path + "." + kind + (opt.format == "csv" ? ".csv" : ".json");
      mop::io::write_text_file(path, opt.format == "csv"
                                         ? mop::io::matrix_csv(matrix)
                                         : mop::io::matrix_triplets_json(matrix).dump(2));
      artifacts.push_back(path);
    }
    if (!eigencheck_list.empty()) {
      auto zs = parse_z(eigencheck_list);
      auto table = mop::generate_table(field, w, opt.tol_route).table;
      bool scaled = kind == "deltas";
      auto rep = mop::eigencheck(op, table, zs, scaled, sym ? &sym->symmetrizer : nullptr);
      residuals[kind] = rep.max_residual;
      if (rep.max_residual > opt.tol_eigencheck) pass = false;
    }
  }
  emit_report("operator", pass, residuals, artifacts);
  return pass ? 0 : kExitConsistency;
}

int cmd_lax(const CommonOptions& opt, const FamilyFlags& flags, const std::string& field_json_path,
            const std::string& path_policy) {
  auto w = window_of(opt);
  auto field = resolve_field(opt, flags, field_json_path, w);
  auto zs = parse_z(opt.z_list);
  std::vector<double> z_scalars(zs.begin(), zs.end());
  double residual = mop::zero_curvature_residual(field, w, z_scalars);
  double path_diff = 0;
  if (path_policy == "both") {
    for (double z : zs) {
      auto wave = mop::propagate(field, z, w, mop::PathPolicy::both, opt.tol_path);
      path_diff = std::max(path_diff, wave.path_discrepancy);
    }
  }
  const bool pass = residual <= opt.tol_curvature && path_diff <= opt.tol_path;
  std::vector<std::string> artifacts;
  if (!opt.out_path.empty()) {
    auto wave = mop::propagate(field, zs[0], w, mop::PathPolicy::row_major);
    artifacts = write_artifact(opt, mop::io::wavetable_json(wave).dump(2));
  }
  emit_report("lax", pass, json{{"zero_curvature", residual}, {"path", path_diff}}, artifacts);
  return pass ? 0 : kExitConsistency;
}

int cmd_reconstruct(const CommonOptions& opt, const std::string& input_path) {
  if (input_path.empty()) throw mop::DomainError("reconstruct: --input required");
  auto in = mop::io::qab_from_json(mop::io::read_json_file(input_path));
  auto rec = mop::reconstruct_cd(in.q, in.a, in.b, in.window, opt.tol_degeneracy, opt.tol_path);
  mop::CoeffField<double> field(in.window);
  field.a = in.a;
  field.b = in.b;
  field.c = rec.c;
  field.d = rec.d;
  json out = mop::io::field_json(field);
  // The (N,M) corner is not covered by any 6x6 cell.
  json known = json::array();
  for (int n = 0; n <= in.window.N; ++n) {
    json row = json::array();
    for (int m = 0; m <= in.window.M; ++m)
      row.push_back(rec.known[static_cast<std::size_t>(m * (in.window.N + 1) + n)] != 0);
    known.push_back(std::move(row));
  }
  out["known"] = std::move(known);
  auto artifacts = write_artifact(opt, opt.format == "csv" ? mop::io::field_csv(field) : out.dump(2));
  emit_report("reconstruct", true, json{{"overlap_consistency", rec.consistency}}, artifacts);
  return 0;
}

int cmd_moments(const CommonOptions& opt, const FamilyFlags& flags, const std::string& raw_json,
                const std::string& mu1_csv, const std::string& mu2_csv, int max_order) {
  mop::MomentPair<double> pair;
  if (!raw_json.empty()) {
    pair = mop::io::moment_pair_from_json(mop::io::read_json_file(raw_json));
  } else if (!mu1_csv.empty() || !mu2_csv.empty()) {
    if (mu1_csv.empty() || mu2_csv.empty())
      throw mop::DomainError("moments: both --mu1-csv and --mu2-csv required");
    auto s1 = mop::io::moments_from_csv(mop::io::read_text_file(mu1_csv));
    auto s2 = mop::io::moments_from_csv(mop::io::read_text_file(mu2_csv));
    pair = mop::raw_moments(s1.values, s2.values);
  } else {
    pair = mop::family_moment_pair<double>(resolve_spec(opt, flags), max_order);
  }
  auto artifacts = write_artifact(opt, mop::io::moment_pair_json(pair).dump(2));
  if (artifacts.empty()) std::cout << mop::io::moment_pair_json(pair).dump(2) << "\n";
  emit_report("moments", true, json::object(), artifacts);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multiple orthogonal polynomial lattice toolkit"};
  app.require_subcommand(1);

  CommonOptions opt;
  FamilyFlags flags;
  std::string route = "determinant";
  std::string field_json_path;
  std::string kinds_list = "delta";
  std::string eigencheck_list;
  std::string path_policy = "row_major";
  std::string input_path, raw_json, mu1_csv, mu2_csv;
  int max_order = 8;

  auto* generate = app.add_subcommand("generate", "build a MOP table");
  add_common(generate, opt);
  add_family_flags(generate, flags);
  generate->add_option("--route", route, "determinant|recurrence|both")
      ->check(CLI::IsMember({"determinant", "recurrence", "both"}));

  auto* verify = app.add_subcommand("verify", "curvature, degeneracy, symmetrizability report");
  add_common(verify, opt);
  add_family_flags(verify, flags);
  verify->add_option("--field-json", field_json_path, "coefficient field JSON input");

  auto* op_cmd = app.add_subcommand("operator", "materialize lattice operators");
  add_common(op_cmd, opt);
  add_family_flags(op_cmd, flags);
  op_cmd->add_option("--field-json", field_json_path, "coefficient field JSON input");
  op_cmd->add_option("--kind", kinds_list, "comma-separated: h1,h2,delta,deltas,j1,j2");
  op_cmd->add_option("--eigencheck", eigencheck_list, "comma-separated z samples");

  auto* lax = app.add_subcommand("lax", "zero-curvature and path-independence checks");
  add_common(lax, opt);
  add_family_flags(lax, flags);
  lax->add_option("--field-json", field_json_path, "coefficient field JSON input");
  lax->add_option("--path", path_policy, "row_major|column_major|both")
      ->check(CLI::IsMember({"row_major", "column_major", "both"}));

  auto* reconstruct = app.add_subcommand("reconstruct", "recover (c,d) from (q,a,b)");
  add_common(reconstruct, opt, false);
  reconstruct->add_option("--input", input_path, "JSON with window, q, a, b");

  auto* moments = app.add_subcommand("moments", "emit normalized moment pairs");
  add_common(moments, opt);
  add_family_flags(moments, flags);
  moments->add_option("--raw-json", raw_json, "raw moments JSON {\"mu1\":[],\"mu2\":[]}");
  moments->add_option("--mu1-csv", mu1_csv, "two-column CSV (header j,s)");
  moments->add_option("--mu2-csv", mu2_csv, "two-column CSV (header j,s)");
  moments->add_option("--max-order", max_order, "highest moment order");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (generate->parsed()) return cmd_generate(opt, flags, route);
    if (verify->parsed()) return cmd_verify(opt, flags, field_json_path);
    if (op_cmd->parsed()) {
      std::vector<std::string> kinds;
      std::istringstream in(kinds_list);
      std::string item;
      while (std::getline(in, item, ',')) kinds.push_back(item);
      return cmd_operator(opt, flags, field_json_path, kinds, eigencheck_list);
    }
    if (lax->parsed()) return cmd_lax(opt, flags, field_json_path, path_policy);
    if (reconstruct->parsed()) return cmd_reconstruct(opt, input_path);
    if (moments->parsed()) return cmd_moments(opt, flags, raw_json, mu1_csv, mu2_csv, max_order);
  } catch (const mop::NotNormal& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNormality;
  } catch (const mop::InsufficientMoments& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNormality;
  } catch (const mop::NotSymmetrizable& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSymmetrizability;
  } catch (const mop::DegenerateSystem& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDegeneracy;
  } catch (const mop::DegenerateDenominator& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDegeneracy;
  } catch (const mop::InconsistentField& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConsistency;
  } catch (const mop::PathInconsistent& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConsistency;
  } catch (const mop::InconsistentOverlap& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConsistency;
  } catch (const mop::ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const mop::FitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const mop::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
