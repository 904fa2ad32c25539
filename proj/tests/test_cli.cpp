// End-to-end checks of the CLI binary: exit codes, report shape,
// artifact files.  The binary path is injected by the build.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "mop/families.hpp"
#include "mop/io.hpp"

using nlohmann::json;

namespace {

int failures = 0;

int run(const std::string& args) {
  const std::string cmd = std::string(MOPCLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string capture(const std::string& args) {
  const std::string path = "/tmp/mopcli_test_stdout.txt";
  const std::string cmd = std::string(MOPCLI_PATH) + " " + args + " > " + path + " 2>/dev/null";
  if (std::system(cmd.c_str()) == -1) return {};
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void expect(bool ok, const std::string& what) {
  std::printf("%-64s %s\n", what.c_str(), ok ? "ok" : "FAIL");
  if (!ok) ++failures;
}

}  // namespace

int main() {
  expect(run("generate --family hermite --c1 0 --c2 2 --window 3 3 --route both") == 0,
         "generate hermite route=both exits 0");
  expect(run("generate --family hermite --c1 1 --c2 1 --window 2 2") == 3,
         "generate with c1=c2 exits 3 (NotNormal)");
  expect(run("generate --family meixner1 --beta 0 --c1 0.5 --c2 0.3 --window 2 2") == 2,
         "invalid family parameters exit 2");
  expect(run("frobnicate") == 2, "unknown subcommand exits 2");
  expect(run("reconstruct") == 2, "reconstruct without input exits 2");

  expect(run("verify --family meixner1 --beta 1 --c1 0.5 --c2 0.3333333333 --window 4 4") == 0,
         "verify meixner exits 0");
  expect(run("verify --family laguerre1 --alpha1 0 --alpha2 0.4 --window 4 4") == 0,
         "verify laguerre exits 0 (curvature passes)");

  expect(run("operator --family laguerre1 --alpha1 0 --alpha2 0.4 --window 3 3 --kind deltas") == 4,
         "deltas on laguerre exits 4 (NotSymmetrizable)");
  expect(run("operator --family hermite --c1 0 --c2 2 --window 4 4 --kind deltas "
             "--eigencheck 0,1,-1") == 0,
         "deltas eigencheck on hermite exits 0");

  expect(run("lax --family hermite --c1 0 --c2 2 --window 4 4 --path both") == 0,
         "lax hermite path=both exits 0");

  // Determinism + artifact schema: two generate runs produce identical bytes.
  const std::string out1 = "/tmp/mopcli_test_t1.json", out2 = "/tmp/mopcli_test_t2.json";
  run("generate --family meixner1 --beta 1 --c1 0.5 --c2 0.25 --window 3 3 --out " + out1);
  run("generate --family meixner1 --beta 1 --c1 0.5 --c2 0.25 --window 3 3 --out " + out2);
  {
    std::ifstream a(out1), b(out2);
    std::ostringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    expect(!sa.str().empty() && sa.str() == sb.str(), "generate output is deterministic");
    json t = json::parse(sa.str());
    expect(t["window"] == json::array({3, 3}) && t["coeffs"][0][0] == json::array({1.0}),
           "table artifact follows the schema");
  }

  // Reconstruct round trip through files.
  {
    mop::FamilySpec s;
    s.kind = mop::FamilyKind::meixner1;
    s.beta = 1;
    s.c1 = 0.5;
    s.c2 = 1.0 / 3;
    auto field = mop::family_field<double>(s, mop::Window{3, 3});
    mop::Grid<double> q(field.window);
    for (int n = 0; n <= 3; ++n)
      for (int m = 0; m <= 3; ++m) q.at(n, m) = field.q(n, m);
    json in{{"window", {3, 3}},
            {"q", mop::io::grid_json(q)},
            {"a", mop::io::grid_json(field.a)},
            {"b", mop::io::grid_json(field.b)}};
    mop::io::write_text_file("/tmp/mopcli_test_qab.json", in.dump());
    const std::string rec_path = "/tmp/mopcli_test_rec.json";
    expect(run("reconstruct --input /tmp/mopcli_test_qab.json --out " + rec_path) == 0,
           "reconstruct meixner exits 0");
    auto rec = json::parse(mop::io::read_text_file(rec_path));
    bool close = true;
    for (int n = 0; n <= 3; ++n)
      for (int m = 0; m <= 3; ++m) {
        if (n == 3 && m == 3) continue;
        close = close && std::abs(rec["c"][n][m].get<double>() - field.c.at(n, m)) < 1e-9;
      }
    expect(close, "reconstructed c matches the closed form");

    // Hermite projection must hit the degeneracy exit code.
    mop::FamilySpec h;
    h.c1 = 0;
    h.c2 = 2;
    auto hf = mop::family_field<double>(h, mop::Window{3, 3});
    mop::Grid<double> hq(hf.window);
    for (int n = 0; n <= 3; ++n)
      for (int m = 0; m <= 3; ++m) hq.at(n, m) = hf.q(n, m);
    json hin{{"window", {3, 3}},
             {"q", mop::io::grid_json(hq)},
             {"a", mop::io::grid_json(hf.a)},
             {"b", mop::io::grid_json(hf.b)}};
    mop::io::write_text_file("/tmp/mopcli_test_qab_h.json", hin.dump());
    expect(run("reconstruct --input /tmp/mopcli_test_qab_h.json") == 5,
           "reconstruct hermite exits 5 (DegenerateSystem)");
  }

  // Report schema on stdout.
  {
    auto text = capture("verify --family hermite --c1 0 --c2 2 --window 3 3");
    json rep = json::parse(text);
    expect(rep.contains("command") && rep.contains("pass") && rep.contains("max_residuals") &&
               rep.contains("artifacts") && rep["command"] == "verify",
           "stdout report follows the schema");
  }

  // moments subcommand with raw CSV input.
  {
    mop::io::write_text_file("/tmp/mopcli_test_mu1.csv", "j,s\n0,1\n1,0\n2,0.5\n");
    mop::io::write_text_file("/tmp/mopcli_test_mu2.csv", "j,s\n0,2\n1,1\n2,1.5\n");
    expect(run("moments --mu1-csv /tmp/mopcli_test_mu1.csv --mu2-csv /tmp/mopcli_test_mu2.csv "
               "--out /tmp/mopcli_test_moments.json") == 0,
           "moments from CSV exits 0");
    auto m = json::parse(mop::io::read_text_file("/tmp/mopcli_test_moments.json"));
    expect(m["mu2"] == json::array({1.0, 0.5, 0.75}), "raw moments are normalized");
  }

  std::printf("cli checks: %s\n", failures == 0 ? "all passed" : "FAILURES");
  return failures == 0 ? 0 : 1;
}
