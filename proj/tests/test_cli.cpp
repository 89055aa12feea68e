#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "vvl/io.hpp"

using namespace vvl;
using io::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run vvl_run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

// Scratch directory with the fixture files used by the command tests.
struct Workspace {
  fs::path dir;
  Workspace() {
    dir = fs::temp_directory_path() / "vvl_cli_test";
    fs::create_directories(dir);
    write("bump.json", R"({"family":"poly_bump","a":0.5,"b":2,"p":3})");
    write("sym.json", R"({"family":"symmetric_decay","alpha":0,"beta":8})");
    const auto delta = io::form_to_json(io::gen_oracle(io::OracleKind::Delta, 50));
    write("delta.json", delta.dump(2));
    json bad = delta;
    for (auto& c : bad["coefficients_plus"]) {
      if (c["n"] == 2) c["re"] = c["re"].get<double>() + 1e-3;
    }
    write("perturbed.json", bad.dump(2));
    json zero = delta;
    zero["coefficients_plus"] = json::array();
    write("zero.json", zero.dump(2));
    write("phi.json", io::jacobi_to_json(fixtures::phi_10_1(12)).dump(2));
  }
  void write(const std::string& name, const std::string& text) const { std::ofstream(dir / name) << text; }
  std::string operator()(const std::string& name) const { return (dir / name).string(); }
};

const Workspace& ws() {
  static const Workspace w;
  return w;
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  return json::parse(in);
}

}  // namespace

TEST_CASE("cli: gen-oracle writes the generator's Form file") {
  const std::string path = ws()("gen_delta.json");
  const auto r = vvl_run({"gen-oracle", "delta", "--terms", "20", "--out", path});
  CHECK(r.code == 0);
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  CHECK(text.str() == io::form_to_json(io::gen_oracle(io::OracleKind::Delta, 20)).dump(2) + "\n");
  const auto to_stdout = vvl_run({"gen-oracle", "eta-inverse-24"});
  CHECK(to_stdout.code == 0);
  CHECK(json::parse(to_stdout.out)["n0"] == 1);
  CHECK(vvl_run({"gen-oracle", "theta"}).code == 1);
  CHECK(vvl_run({"gen-oracle", "delta", "--terms", "5"}).code == 1);
}

TEST_CASE("cli: check-fe verdicts and exit codes") {
  const auto pass = vvl_run({"check-fe", "--form", ws()("delta.json"), "--testfn", ws()("bump.json"), "--tol", "1e-8"});
  CHECK(pass.code == 0);
  CHECK(pass.out.find("verdict  PASS") != std::string::npos);
  const auto strict = vvl_run({"check-fe", "--form", ws()("delta.json"), "--testfn", ws()("bump.json"), "--tol", "1e-30"});
  CHECK(strict.code == 2);
  CHECK(strict.out.find("verdict  FAIL") != std::string::npos);
  CHECK(vvl_run({"check-fe", "--form", ws()("delta.json"), "--testfn", ws()("bump.json"), "--mode", "sideways"}).code == 1);
}

TEST_CASE("cli: converse-test") {
  const auto bad = vvl_run({"converse-test", "--form", ws()("perturbed.json")});
  CHECK(bad.code == 2);
  CHECK(bad.out.find("verdict  REFUTED") != std::string::npos);
  const auto good = vvl_run({"converse-test", "--form", ws()("delta.json")});
  CHECK(good.code == 0);
  CHECK(good.out.find("verdict  CONSISTENT") != std::string::npos);
  const std::string out = ws()("converse_seed.json");
  CHECK(vvl_run({"converse-test", "--form", ws()("delta.json"), "--seed", "7", "--trials", "4", "--out", out}).code == 0);
  CHECK(read_json(out)["results"]["family_size"] == 4);
  CHECK(vvl_run({"converse-test", "--form", ws()("delta.json"), "--testfn", ws()("bump.json")}).code == 0);
}

TEST_CASE("cli: eval-form of the zero form") {
  const std::string out = ws()("zero_report.json");
  const auto r = vvl_run({"eval-form", "--form", ws()("zero.json"), "--tau", "0+1i", "--out", out});
  CHECK(r.code == 0);
  const json rep = read_json(out);
  CHECK(rep["results"]["value"][0]["re"] == 0.0);
  CHECK(rep["results"]["value"][0]["im"] == 0.0);
  CHECK(rep["verdict"] == "INFO");
  CHECK(vvl_run({"eval-form", "--form", ws()("zero.json"), "--tau", "1-1i"}).code == 1);
}

TEST_CASE("cli: reports are byte stable and match their human form") {
  const std::vector<std::string> base{"check-fe", "--form", ws()("delta.json"), "--testfn", ws()("bump.json")};
  auto with_out = [&](const std::string& name) {
    auto a = base;
    a.push_back("--out");
    a.push_back(ws()(name));
    return a;
  };
  const auto a = vvl_run(with_out("stable.json"));
  std::ifstream f1(ws()("stable.json"));
  std::stringstream t1;
  t1 << f1.rdbuf();
  const auto b = vvl_run(with_out("stable.json"));
  std::ifstream f2(ws()("stable.json"));
  std::stringstream t2;
  t2 << f2.rdbuf();
  CHECK(a.out == b.out);
  CHECK(t1.str() == t2.str());
  const json rep = json::parse(t1.str());
  for (const auto& c : rep["checks"]) CHECK(a.out.find("residual " + c["residual"].dump()) != std::string::npos);
  CHECK(cli::render_report(rep) == a.out);
  CHECK(rep["inputs"][0]["fnv1a64"].get<std::string>().size() == 16);
  CHECK_FALSE(rep.contains("wall_clock_s"));
}

TEST_CASE("cli: input errors exit with 1") {
  const auto missing = vvl_run({"check-fe", "--form", ws()("nope.json"), "--testfn", ws()("bump.json")});
  CHECK(missing.code == 1);
  ws().write("badfn.json", R"({"family":"poly_bump","a":0.5,"b":"x","p":3})");
  const auto schema = vvl_run({"check-fe", "--form", ws()("delta.json"), "--testfn", ws()("badfn.json")});
  CHECK(schema.code == 1);
  CHECK(schema.err.find("/b: expected a number") != std::string::npos);
  CHECK(vvl_run({}).code == 1);
  CHECK(vvl_run({"frobnicate"}).code == 1);
  CHECK(vvl_run({"lseries", "--form", ws()("delta.json")}).code == 1);
  CHECK(vvl_run({"--help"}).code == 0);
}

TEST_CASE("cli: L-series commands") {
  const std::string out = ws()("ls.json");
  CHECK(vvl_run({"lseries-s", "--form", ws()("delta.json"), "--s", "9", "--out", out}).code == 0);
  const auto direct = classical_L(fixtures::delta(), Weight(12), 9.0).value(0);
  CHECK(std::abs(read_json(out)["results"]["value"][0]["re"].get<double>() - direct.real()) <= 1e-15 * std::abs(direct));
  CHECK(vvl_run({"lseries-s", "--form", ws()("delta.json"), "--s", "6"}).code == 1);
  const auto fe = vvl_run({"lseries-s", "--form", ws()("delta.json"), "--s", "0.3", "--testfn", ws()("sym.json"), "--fe"});
  CHECK(fe.code == 0);
  CHECK(vvl_run({"lseries", "--form", ws()("delta.json"), "--testfn", ws()("bump.json")}).code == 0);
  const auto mellin =
      vvl_run({"mellin-check", "--form", ws()("delta.json"), "--testfn", ws()("bump.json"), "--y", "1"});
  CHECK(mellin.code == 0);
  CHECK(vvl_run({"summation-check"}).code == 0);
  CHECK(vvl_run({"specfun-selftest"}).code == 0);
}

TEST_CASE("cli: Jacobi and Kohnen commands") {
  const std::string comps = ws()("phi_components.json");
  CHECK(vvl_run({"jacobi", "decompose", "--jacobi", ws()("phi.json"), "--form-out", comps}).code == 0);
  const auto file = io::form_from_json(read_json(comps));
  CHECK(file.form.dim() == 2);
  CHECK(file.context.representation.kind == Representation::Kind::Weil);
  CHECK(vvl_run({"check-fe", "--form", comps, "--testfn", ws()("bump.json"), "--tol", "1e-6"}).code == 0);
  CHECK(vvl_run({"jacobi", "reconstruct", "--jacobi", ws()("phi.json"), "--tau", "0.1+0.9i", "--z", "0.2+0.1i"}).code == 0);
  CHECK(vvl_run({"jacobi", "lseries", "--jacobi", ws()("phi.json"), "--testfn", ws()("bump.json")}).code == 0);
  CHECK(vvl_run({"jacobi", "check-fe", "--jacobi", ws()("phi.json"), "--testfn", ws()("bump.json")}).code == 0);
  CHECK(vvl_run({"jacobi"}).code == 1);

  const std::string plus = ws()("plus.json");
  CHECK(vvl_run({"kohnen", "map", "--jacobi", ws()("phi.json"), "--form-out", plus}).code == 0);
  CHECK(io::form_from_json(read_json(plus)).form.plus.get(0, 3) == Complex(1.0));
  CHECK(vvl_run({"kohnen", "check-L", "--jacobi", ws()("phi.json"), "--finite"}).code == 0);
  CHECK(vvl_run({"kohnen", "check-L", "--jacobi", ws()("phi.json")}).code == 1);  // s = 3 outside the series domain
  CHECK(vvl_run({"kohnen", "check-fe", "--form", plus, "--testfn", ws()("bump.json")}).code == 0);
  CHECK(vvl_run({"kohnen", "check-fe", "--testfn", ws()("bump.json")}).code == 1);
}
