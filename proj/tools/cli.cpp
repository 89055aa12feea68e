#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "vvl/io.hpp"
#include "vvl/jacobi.hpp"
#include "vvl/lseries.hpp"
#include "vvl/specfun.hpp"

namespace vvl::cli {

namespace {

using io::json;

struct Settings {
  std::optional<double> tol;
  int trials = 10;
  std::optional<long long> truncation;
  std::optional<double> quad_rel_tol, quad_abs_tol;
  double mellin_c = 1.0, mellin_T = 200.0;
  int mellin_points = 4096;
  std::optional<unsigned long long> seed;
  std::string out_path;
  bool timing = false;

  double tol_or(double fallback) const { return tol.value_or(fallback); }

  QuadratureSpec quad() const {
    QuadratureSpec q;
    if (quad_rel_tol) q.rel_tol = *quad_rel_tol;
    if (quad_abs_tol) q.abs_tol = *quad_abs_tol;
    q.validate();
    return q;
  }

  LSeriesOptions lseries() const {
    LSeriesOptions o;
    if (quad_rel_tol) o.specfun.quad.rel_tol = o.inner_quad.rel_tol = *quad_rel_tol;
    if (quad_abs_tol) o.specfun.quad.abs_tol = o.inner_quad.abs_tol = *quad_abs_tol;
    o.specfun.validate();
    o.inner_quad.validate();
    return o;
  }

  LineIntegralSpec line() const {
    LineIntegralSpec l{mellin_c, mellin_T, mellin_points};
    l.validate();
    return l;
  }

  json to_json() const {
    json s;
    s["tol"] = tol ? json(*tol) : json(nullptr);
    s["trials"] = trials;
    s["truncation"] = truncation ? json(*truncation) : json(nullptr);
    s["quad_rel_tol"] = quad_rel_tol ? json(*quad_rel_tol) : json(nullptr);
    s["quad_abs_tol"] = quad_abs_tol ? json(*quad_abs_tol) : json(nullptr);
    s["mellin_c"] = mellin_c;
    s["mellin_T"] = mellin_T;
    s["mellin_points"] = mellin_points;
    s["seed"] = seed ? json(*seed) : json(nullptr);
    return s;
  }
};

json complex_json(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json vector_json(const VectorXc& v) {
  json out = json::array();
  for (long i = 0; i < v.size(); ++i) out.push_back(complex_json(v(i)));
  return out;
}

json real_vector_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (long i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

// One command invocation: inputs, checks and results accumulate here.
class Report {
 public:
  Report(std::string command, const std::vector<std::string>& args, const Settings& settings) {
    doc_["command"] = std::move(command);
    doc_["args"] = args;
    doc_["inputs"] = json::array();
    doc_["settings"] = settings.to_json();
    doc_["checks"] = json::array();
    doc_["results"] = json::object();
  }

  void input(const std::string& role, const std::string& path, const std::string& digest) {
    doc_["inputs"].push_back(json{{"role", role}, {"path", path}, {"fnv1a64", digest}});
  }

  bool check(const std::string& name, double residual, double threshold) {
    const bool pass = residual <= threshold;
    doc_["checks"].push_back(json{{"name", name}, {"residual", residual}, {"threshold", threshold},
                                  {"verdict", pass ? "PASS" : "FAIL"}});
    return pass;
  }

  json& results() { return doc_["results"]; }

  // Overall verdict from the checks; `refutation` switches to CONSISTENT/REFUTED.
  int finish(bool refutation = false) {
    bool all = true;
    for (const auto& c : doc_["checks"]) all = all && c["verdict"] == "PASS";
    const bool any = !doc_["checks"].empty();
    if (!any) doc_["verdict"] = "INFO";
    else if (refutation) doc_["verdict"] = all ? "CONSISTENT" : "REFUTED";
    else doc_["verdict"] = all ? "PASS" : "FAIL";
    return all ? kExitOk : kExitRefuted;
  }

  json& doc() { return doc_; }

 private:
  json doc_;
};

template <class T, class Parse>
T load(Report& report, const std::string& role, const std::string& path, Parse&& parse) {
  const auto file = io::load_json_file(path);
  try {
    T value = parse(file.doc);
    report.input(role, path, file.digest);
    return value;
  } catch (const Error& e) {
    throw InputError(path + ": " + e.what());
  }
}

io::FormFile load_form(Report& r, const std::string& role, const std::string& path) {
  return load<io::FormFile>(r, role, path, [](const json& d) { return io::form_from_json(d); });
}
TestFunction load_testfn(Report& r, const std::string& path) {
  return load<TestFunction>(r, "testfn", path, [](const json& d) { return io::testfn_from_json(d); });
}
JacobiExpansion load_jacobi(Report& r, const std::string& path) {
  return load<JacobiExpansion>(r, "jacobi", path, [](const json& d) { return io::jacobi_from_json(d); });
}

FEMode parse_mode(const std::string& m) {
  if (m == "plain") return FEMode::Plain;
  if (m == "delta") return FEMode::Delta;
  throw InputError("unknown --mode '" + m + "' (plain, delta)");
}

std::string mode_name(FEMode m) { return m == FEMode::Plain ? "plain" : "delta"; }

json fe_json(const FEReport& r) {
  return json{{"testfn", r.testfn_id}, {"mode", mode_name(r.mode)}, {"lhs", vector_json(r.lhs.value)},
              {"rhs", vector_json(r.rhs.value)}, {"residual", r.residual}, {"abs_residual", r.abs_residual}};
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError(path + ": cannot write file");
  f << text;
}

// ---- commands --------------------------------------------------------------

int cmd_specfun_selftest(Report& rep, const Settings& st) {
  const double tol = st.tol_or(1e-8);
  double worst = 0.0;
  int points = 0;
  for (int ia = 0; ia <= 11; ++ia) {
    const double a = -3.5 + 0.5 * ia;
    for (int iz = 0; iz <= 16; ++iz) {
      const double z = 0.1 * std::pow(200.0, iz / 16.0);
      const double rec = upper_incomplete_gamma(a, z);
      const double integ = upper_incomplete_gamma_by_integral(a, z, st.quad());
      worst = std::max(worst, std::abs(rec - integ) / std::abs(integ));
      ++points;
    }
  }
  rep.results()["incomplete_gamma_points"] = points;
  rep.check("incomplete gamma: series/fraction vs integral representation", worst, tol);

  double kernel_worst = 0.0;
  for (Complex s : {Complex(0.75, 0.0), Complex(2.0, 3.0), Complex(5.5, -1.0), Complex(7.9, 0.5)}) {
    for (double u : {0.7, 3.0, 11.0}) {
      const Complex want = std::pow(2.0 * kPi / u, s);
      kernel_worst = std::max(kernel_worst, std::abs(laplace(TestFunction::kernel(s), u) - want) / std::abs(want));
    }
  }
  rep.check("Laplace transform of I_s equals (2 pi/u)^s", kernel_worst, tol);

  double reflection = 0.0;
  for (double x : {0.1, 0.3, 0.45, 0.7}) {
    reflection = std::max(reflection, std::abs(gamma(x) * gamma(1.0 - x) * std::sin(kPi * x) / kPi - 1.0));
  }
  rep.check("gamma reflection formula", reflection, tol);
  return rep.finish();
}

int cmd_eval_form(Report& rep, const Settings& st, const std::string& form_path, const std::string& tau_text) {
  const auto file = load_form(rep, "form", form_path);
  const Complex tau = io::parse_complex(tau_text);
  if (!(tau.imag() > 0)) throw InputError("--tau must lie in the upper half-plane");
  EvalOptions opt;
  opt.truncation = st.truncation;
  const FormValue v = evaluate_form(file.form, tau, opt);
  rep.results()["tau"] = complex_json(tau);
  rep.results()["value"] = vector_json(v.value);
  rep.results()["tail_bound"] = v.tail_bound;
  rep.results()["truncation_ok"] = v.truncation_ok;
  return rep.finish();
}

int cmd_lseries(Report& rep, const Settings& st, const std::string& form_path, const std::string& testfn_path,
                bool delta) {
  const auto file = load_form(rep, "form", form_path);
  const auto phi = load_testfn(rep, testfn_path);
  const auto opt = st.lseries();
  const LSeriesValue v = delta ? L_delta(file.form, phi, opt) : L_harmonic(file.form, phi, opt);
  rep.results()["operator"] = delta ? "L_delta" : "L";
  rep.results()["testfn"] = phi.id();
  rep.results()["value"] = vector_json(v.value);
  rep.results()["truncation_error"] = real_vector_json(v.error);
  return rep.finish();
}

int cmd_check_fe(Report& rep, const Settings& st, const std::string& form_path, const std::string& testfn_path,
                 const std::string& mode) {
  const auto file = load_form(rep, "form", form_path);
  const auto phi = load_testfn(rep, testfn_path);
  const FEMode m = parse_mode(mode);
  const double tol = st.tol_or(1e-8);
  const FEReport r = fe_residual(file.form, file.context, phi, m, tol, st.lseries());
  rep.results()["fe"] = fe_json(r);
  rep.check("functional equation (" + mode_name(m) + ") " + r.testfn_id, r.residual, tol);
  return rep.finish();
}

int cmd_lseries_s(Report& rep, const Settings& st, const std::string& form_path, const std::string& testfn_path,
                  const std::string& s_text, bool fe) {
  const auto file = load_form(rep, "form", form_path);
  std::optional<TestFunction> phi;
  if (!testfn_path.empty()) phi = load_testfn(rep, testfn_path);
  const Complex s = io::parse_complex(s_text);
  rep.results()["s"] = complex_json(s);
  if (!phi) {
    if (fe) throw InputError("--fe needs --testfn");
    const auto v = classical_L(file.form.plus, file.form.weight, s);
    rep.results()["operator"] = "classical";
    rep.results()["value"] = vector_json(v.value);
    return rep.finish();
  }
  const auto opt = st.lseries();
  const VectorXc a = L_continued(file.form, file.context, *phi, s, opt).value;
  rep.results()["operator"] = "continued";
  rep.results()["testfn"] = phi->id();
  rep.results()["value"] = vector_json(a);
  if (fe) {
    const auto slashed = slash_testfn(*phi, Rational(1) - file.context.weight, file.context.multiplier);
    const VectorXc b = i_power(file.context.weight) * file.context.representation(GroupElement::S()) *
                       L_continued(file.form, file.context, slashed, 1.0 - s, opt).value;
    const double scale = std::max(a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff());
    const double diff = (a - b).cwiseAbs().maxCoeff();
    rep.results()["fe_rhs"] = vector_json(b);
    rep.check("s <-> 1-s functional equation", diff == 0.0 ? 0.0 : diff / scale, st.tol_or(1e-6));
  }
  return rep.finish();
}

int cmd_mellin(Report& rep, const Settings& st, const std::string& form_path, const std::string& testfn_path,
               const std::vector<double>& ys) {
  const auto file = load_form(rep, "form", form_path);
  const auto phi = load_testfn(rep, testfn_path);
  const double tol = st.tol_or(1e-4);
  json rows = json::array();
  for (double y : ys) {
    const auto r = mellin_roundtrip(file.form, phi, y, st.line(), st.lseries());
    rows.push_back(json{{"y", y}, {"recovered", vector_json(r.recovered)}, {"direct", vector_json(r.direct)},
                        {"error", r.error}, {"tail_proxy", r.tail_proxy}});
    std::ostringstream name;
    name << "Mellin roundtrip at y = " << json(y).dump();
    rep.check(name.str(), r.error, tol);
  }
  rep.results()["points"] = rows;
  return rep.finish();
}

std::vector<TestFunction> converse_family(const Settings& st) {
  if (st.trials < 1) throw InputError("--trials must be >= 1");
  if (!st.seed) return covering_bumps(0.25, 4.0, st.trials);
  // Random polynomial bumps with log-uniform centres in [1/4, 4].
  std::mt19937_64 rng(*st.seed);
  std::uniform_real_distribution<double> centre(std::log(0.25), std::log(4.0)), spread(std::log(1.5), std::log(4.0));
  std::vector<TestFunction> out;
  for (int i = 0; i < st.trials; ++i) {
    const double c = std::exp(centre(rng)), r = std::exp(0.5 * spread(rng));
    out.push_back(TestFunction::poly_bump(c / r, c * r, 3));
  }
  return out;
}

int cmd_converse(Report& rep, const Settings& st, const std::string& form_path,
                 const std::vector<std::string>& testfn_paths) {
  const auto file = load_form(rep, "form", form_path);
  std::vector<TestFunction> family;
  for (const auto& p : testfn_paths) family.push_back(load_testfn(rep, p));
  if (family.empty()) family = converse_family(st);
  const double tol = st.tol_or(1e-5);
  const auto r = converse_check(file.form, file.context, family, tol, st.lseries());
  json rows = json::array();
  for (const auto& fe : r.reports) {
    rows.push_back(fe_json(fe));
    rep.check("functional equation (" + mode_name(fe.mode) + ") " + fe.testfn_id, fe.residual, tol);
  }
  rep.results()["family_size"] = family.size();
  rep.results()["worst_residual"] = r.worst_residual;
  rep.results()["worst_testfn"] = r.worst_id;
  rep.results()["reports"] = rows;
  return rep.finish(true);
}

int cmd_summation(Report& rep, const Settings& st, const std::vector<int>& ks, const std::vector<double>& ds,
                  const std::string& testfn_path, const std::string& harmonic_path, int j) {
  const TestFunction phi = testfn_path.empty() ? TestFunction::poly_bump(1.0, 2.0, 2) : load_testfn(rep, testfn_path);
  std::optional<io::FormFile> g;
  if (!harmonic_path.empty()) g = load_form(rep, "harmonic", harmonic_path);
  const double tol = st.tol_or(1e-8);
  json rows = json::array();
  for (int k : ks) {
    for (double d : ds) {
      const auto r = phi_transform_sides(k, d, phi, st.quad());
      rows.push_back(json{{"k", k}, {"d", d}, {"lhs", complex_json(r.lhs)}, {"rhs", complex_json(r.rhs)},
                          {"residual", r.residual}});
      rep.check("Phi-transform identity k = " + std::to_string(k) + " d = " + json(d).dump(), r.residual, tol);
    }
  }
  rep.results()["phi_transform"] = rows;
  rep.results()["testfn"] = phi.id();
  if (g) {
    // Both sides of the summation formula for (shadow(g), g); reported, not judged.
    const Weight k = Rational(2) - g->form.weight;
    const auto f = shadow(g->form, k);
    const auto sides = summation_formula_sides(f, g->form, phi, j, k, st.quad());
    rep.results()["summation"] = json{{"j", j}, {"k", k.str()}, {"lhs", complex_json(sides.lhs)},
                                      {"rhs", complex_json(sides.rhs)}, {"residual", sides.residual}};
  }
  return rep.finish();
}

int cmd_jacobi_decompose(Report& rep, const std::string& path, const std::string& form_out) {
  const auto F = load_jacobi(rep, path);
  const auto comps = theta_decompose(F);
  const io::FormFile file{comps, jacobi_context(F.weight, F.index, comps.plus.n0)};
  const json doc = io::form_to_json(file);
  rep.results()["components"] = doc;
  if (!form_out.empty()) write_file(form_out, doc.dump(2) + "\n");
  return rep.finish();
}

int cmd_jacobi_reconstruct(Report& rep, const Settings& st, const std::string& path, const std::string& tau_text,
                           const std::string& z_text) {
  const auto F = load_jacobi(rep, path);
  const Complex tau = io::parse_complex(tau_text), z = io::parse_complex(z_text);
  if (!(tau.imag() > 0)) throw InputError("--tau must lie in the upper half-plane");
  const auto rec = theta_reconstruct(theta_decompose(F), F.index, tau, z, st.truncation);
  const auto direct = jacobi_evaluate(F, tau, z);
  rep.results()["tau"] = complex_json(tau);
  rep.results()["z"] = complex_json(z);
  rep.results()["reconstructed"] = complex_json(rec.value);
  rep.results()["direct"] = complex_json(direct.value);
  rep.results()["truncation_ok"] = rec.truncation_ok;
  const double diff = std::abs(rec.value - direct.value);
  rep.check("theta reconstruction vs direct double sum", diff / std::max(1.0, std::abs(direct.value)),
            st.tol_or(1e-10));
  return rep.finish();
}

int cmd_jacobi_lseries(Report& rep, const Settings& st, const std::string& path, const std::string& testfn_path,
                       bool alpha) {
  const auto F = load_jacobi(rep, path);
  const auto phi = load_testfn(rep, testfn_path);
  const auto v = alpha ? jacobi_alpha_L(F, phi, st.lseries()) : jacobi_L(F, phi, st.lseries());
  rep.results()["operator"] = alpha ? "L_alpha" : "L";
  rep.results()["testfn"] = phi.id();
  rep.results()["value"] = vector_json(v.value);
  rep.results()["truncation_error"] = real_vector_json(v.error);
  return rep.finish();
}

int cmd_jacobi_fe(Report& rep, const Settings& st, const std::string& path, const std::string& testfn_path,
                  const std::string& mode) {
  const auto F = load_jacobi(rep, path);
  const auto phi = load_testfn(rep, testfn_path);
  const double tol = st.tol_or(1e-6);
  const auto r = jacobi_fe_residual(F, phi, parse_mode(mode), tol, st.lseries());
  rep.results()["fe"] = fe_json(r);
  rep.check("Jacobi functional equation (" + mode_name(r.mode) + ") " + r.testfn_id, r.residual, tol);
  return rep.finish();
}

io::FormFile plus_form_file(const HarmonicMaassExpansion& f) {
  // The plus-space form lives on Gamma_0(4); the file records trivial SL2(Z) data as a placeholder.
  return {f, FormContext{f.weight, MultiplierSystem::trivial(), Representation::trivial(1), f.plus.n0}};
}

int cmd_kohnen_map(Report& rep, const std::string& path, const std::string& form_out) {
  const auto F = load_jacobi(rep, path);
  const json doc = io::form_to_json(plus_form_file(kohnen_map(F)));
  rep.results()["plus_form"] = doc;
  if (!form_out.empty()) write_file(form_out, doc.dump(2) + "\n");
  return rep.finish();
}

int cmd_kohnen_check_L(Report& rep, const Settings& st, const std::string& path, const std::vector<double>& ss,
                       bool finite) {
  const auto F = load_jacobi(rep, path);
  const auto comps = theta_decompose(F);
  const auto f = kohnen_map(F);
  const auto back = plus_split(f);
  const bool exact = back.plus.kappa == comps.plus.kappa && back.plus.coeffs == comps.plus.coeffs &&
                     back.minus == comps.minus;
  rep.check("plus_split inverts kohnen_map exactly", exact ? 0.0 : 1.0, 0.0);
  const double tol = st.tol_or(1e-10);
  json rows = json::array();
  for (double s : ss) {
    for (int j = 1; j <= 2; ++j) {
      const Complex lhs = plus_partial_L(f, j, s, finite);
      const Complex rhs = std::pow(4.0, -s) * partial_L(F, j, s, finite);
      const double diff = std::abs(lhs - rhs);
      const double res = diff == 0.0 ? 0.0 : diff / std::max(std::abs(lhs), std::abs(rhs));
      rows.push_back(json{{"s", s}, {"j", j}, {"plus_L", complex_json(lhs)}, {"scaled_jacobi_L", complex_json(rhs)},
                          {"residual", res}});
      rep.check("L(psi F, j, s) = 4^-s L(F, j, s) at j = " + std::to_string(j) + " s = " + json(s).dump(), res, tol);
    }
  }
  rep.results()["relation"] = rows;
  return rep.finish();
}

int cmd_kohnen_fe(Report& rep, const Settings& st, const std::string& jacobi_path, const std::string& form_path,
                  const std::string& testfn_path, const std::string& mode) {
  if (jacobi_path.empty() == form_path.empty()) throw InputError("give exactly one of --jacobi or --form");
  const HarmonicMaassExpansion f =
      jacobi_path.empty() ? load_form(rep, "plus_form", form_path).form : kohnen_map(load_jacobi(rep, jacobi_path));
  const auto phi = load_testfn(rep, testfn_path);
  const double tol = st.tol_or(1e-6);
  const auto r = plus_fe_residual(f, phi, parse_mode(mode), tol, st.lseries());
  rep.results()["fe"] = fe_json(r);
  rep.check("plus-space functional equation (" + mode_name(r.mode) + ") " + r.testfn_id, r.residual, tol);
  return rep.finish();
}

void add_settings(CLI::App* sub, Settings& st) {
  sub->add_option("--tol", st.tol, "Residual threshold for the command's checks");
  sub->add_option("--trials", st.trials, "Size of generated test-function families")->check(CLI::PositiveNumber);
  sub->add_option("--truncation", st.truncation, "Series truncation index");
  sub->add_option("--quad-rel-tol", st.quad_rel_tol, "Quadrature relative tolerance")->check(CLI::PositiveNumber);
  sub->add_option("--quad-abs-tol", st.quad_abs_tol, "Quadrature absolute tolerance")->check(CLI::PositiveNumber);
  sub->add_option("--mellin-c", st.mellin_c, "Abscissa of the Mellin inversion line");
  sub->add_option("--mellin-T", st.mellin_T, "Half-height of the truncated Mellin line")->check(CLI::PositiveNumber);
  sub->add_option("--mellin-points", st.mellin_points, "Trapezoid nodes on the Mellin line");
  sub->add_option("--seed", st.seed, "Seed for random test-function families");
  sub->add_option("--out", st.out_path, "Write the JSON report to this path");
  sub->add_flag("--timing", st.timing, "Include wall-clock time in the report");
}

}  // namespace

std::string render_report(const json& report) {
  std::ostringstream os;
  os << "command  " << report.value("command", "") << "\n";
  for (const auto& in : report["inputs"]) {
    os << "input    " << in["role"].get<std::string>() << "  " << in["path"].get<std::string>() << "  fnv1a64 "
       << in["fnv1a64"].get<std::string>() << "\n";
  }
  for (const auto& [key, value] : report["settings"].items()) {
    if (!value.is_null()) os << "setting  " << key << " = " << value.dump() << "\n";
  }
  const json flat = report["results"].flatten();
  for (const auto& [path, value] : flat.items()) {
    os << "result   " << path << " = " << value.dump() << "\n";
  }
  for (const auto& c : report["checks"]) {
    os << "check    " << c["verdict"].get<std::string>() << "  residual " << c["residual"].dump() << "  threshold "
       << c["threshold"].dump() << "  " << c["name"].get<std::string>() << "\n";
  }
  if (report.contains("wall_clock_s")) os << "time     " << report["wall_clock_s"].dump() << " s\n";
  os << "verdict  " << report.value("verdict", "") << "\n";
  return os.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical L-series toolkit for vector-valued modular forms"};
  app.require_subcommand(1);
  Settings st;
  std::string form, testfn, tau = "0+1i", z = "0", mode = "plain", s_text, jacobi, harmonic, form_out, kind;
  std::vector<std::string> testfns;
  std::vector<double> ys{0.8, 1.0, 1.25}, ds{1.0, 2.0, 5.0}, ss{3.0, 5.0, 8.0};
  std::vector<int> ks{4, 12};
  bool delta = false, fe = false, finite = false;
  int terms = 50, j = 0;

  auto* selftest = app.add_subcommand("specfun-selftest", "Special-function consistency checks");
  add_settings(selftest, st);

  auto* eval = app.add_subcommand("eval-form", "Evaluate a form at tau");
  eval->add_option("--form", form, "Form file")->required();
  eval->add_option("--tau", tau, "Point a+bi with b > 0");
  add_settings(eval, st);

  auto* lser = app.add_subcommand("lseries", "Laplace-transform L-series L_f(phi)");
  lser->add_option("--form", form, "Form file")->required();
  lser->add_option("--testfn", testfn, "Test-function file")->required();
  lser->add_flag("--delta", delta, "Evaluate L_{delta_k f}(phi) instead");
  add_settings(lser, st);

  auto* chk = app.add_subcommand("check-fe", "Functional-equation residual for one test function");
  chk->add_option("--form", form, "Form file")->required();
  chk->add_option("--testfn", testfn, "Test-function file")->required();
  chk->add_option("--mode", mode, "plain or delta");
  add_settings(chk, st);

  auto* lss = app.add_subcommand("lseries-s", "Dirichlet series L(s) or continued L(s, f, phi)");
  lss->add_option("--form", form, "Form file")->required();
  lss->add_option("--s", s_text, "Complex s")->required();
  lss->add_option("--testfn", testfn, "Test function for the continued L-series");
  lss->add_flag("--fe", fe, "Also check the s <-> 1-s functional equation");
  add_settings(lss, st);

  auto* mel = app.add_subcommand("mellin-check", "Recover f(iy) phi(y) by Mellin inversion");
  mel->add_option("--form", form, "Form file")->required();
  mel->add_option("--testfn", testfn, "Test-function file")->required();
  mel->add_option("--y", ys, "Points y > 0");
  add_settings(mel, st);

  auto* conv = app.add_subcommand("converse-test", "Functional equations over a test-function family");
  conv->add_option("--form", form, "Form file")->required();
  conv->add_option("--testfn", testfns, "Test-function files (default: generated family)");
  add_settings(conv, st);

  auto* summ = app.add_subcommand("summation-check", "Phi-transform identity and summation-formula sides");
  summ->add_option("--k", ks, "Weights");
  summ->add_option("--d", ds, "Values of n - kappa");
  summ->add_option("--testfn", testfn, "Test function (default poly_bump on [1, 2], p = 2)");
  summ->add_option("--harmonic", harmonic, "Harmonic form g; reports both summation sides for (shadow g, g)");
  summ->add_option("--j", j, "Component for the summation sides");
  add_settings(summ, st);

  auto* jac = app.add_subcommand("jacobi", "Jacobi-form layer");
  jac->require_subcommand(1);
  auto* jdec = jac->add_subcommand("decompose", "Theta components as a Form file");
  jdec->add_option("--jacobi", jacobi, "Jacobi form file")->required();
  jdec->add_option("--form-out", form_out, "Write the component Form file here");
  add_settings(jdec, st);
  auto* jrec = jac->add_subcommand("reconstruct", "Evaluate through the theta decomposition");
  jrec->add_option("--jacobi", jacobi, "Jacobi form file")->required();
  jrec->add_option("--tau", tau, "Point a+bi with b > 0");
  jrec->add_option("--z", z, "Elliptic variable");
  add_settings(jrec, st);
  auto* jls = jac->add_subcommand("lseries", "L_F(phi) of the theta components");
  jls->add_option("--jacobi", jacobi, "Jacobi form file")->required();
  jls->add_option("--testfn", testfn, "Test-function file")->required();
  jls->add_flag("--alpha", delta, "Evaluate L_{alpha_k F}(phi) instead");
  add_settings(jls, st);
  auto* jfe = jac->add_subcommand("check-fe", "Jacobi functional-equation residual");
  jfe->add_option("--jacobi", jacobi, "Jacobi form file")->required();
  jfe->add_option("--testfn", testfn, "Test-function file")->required();
  jfe->add_option("--mode", mode, "plain or delta");
  add_settings(jfe, st);

  auto* koh = app.add_subcommand("kohnen", "Kohnen plus space (index 1)");
  koh->require_subcommand(1);
  auto* kmap = koh->add_subcommand("map", "Image of an index-1 Jacobi form");
  kmap->add_option("--jacobi", jacobi, "Jacobi form file")->required();
  kmap->add_option("--form-out", form_out, "Write the plus-space Form file here");
  add_settings(kmap, st);
  auto* kl = koh->add_subcommand("check-L", "Round trip and the 4^-s partial L relation");
  kl->add_option("--jacobi", jacobi, "Jacobi form file")->required();
  kl->add_option("--s", ss, "Values of s");
  kl->add_flag("--finite", finite, "Treat the stored coefficients as the complete series");
  add_settings(kl, st);
  auto* kfe = koh->add_subcommand("check-fe", "Plus-space functional-equation residual");
  kfe->add_option("--jacobi", jacobi, "Index-1 Jacobi form file");
  kfe->add_option("--form", form, "Plus-space Form file");
  kfe->add_option("--testfn", testfn, "Test-function file")->required();
  kfe->add_option("--mode", mode, "plain or delta");
  add_settings(kfe, st);

  auto* gen = app.add_subcommand("gen-oracle", "Write an exact-integer oracle Form file");
  gen->add_option("kind", kind, "delta, eta or eta-inverse-24")->required();
  gen->add_option("--terms", terms, "Number of coefficients (>= 10)");
  gen->add_option("--out", st.out_path, "Output path (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    if (gen->parsed()) {
      const std::string text = io::form_to_json(io::gen_oracle(io::parse_oracle_kind(kind), terms)).dump(2) + "\n";
      if (st.out_path.empty()) out << text;
      else write_file(st.out_path, text);
      return kExitOk;
    }
    std::string name;
    for (auto* sub : app.get_subcommands()) {
      name = sub->get_name();
      for (auto* inner : sub->get_subcommands()) name += " " + inner->get_name();
    }
    Report rep(name, args, st);
    int code = kExitOk;
    if (selftest->parsed()) code = cmd_specfun_selftest(rep, st);
    else if (eval->parsed()) code = cmd_eval_form(rep, st, form, tau);
    else if (lser->parsed()) code = cmd_lseries(rep, st, form, testfn, delta);
    else if (chk->parsed()) code = cmd_check_fe(rep, st, form, testfn, mode);
    else if (lss->parsed()) code = cmd_lseries_s(rep, st, form, testfn, s_text, fe);
    else if (mel->parsed()) code = cmd_mellin(rep, st, form, testfn, ys);
    else if (conv->parsed()) code = cmd_converse(rep, st, form, testfns);
    else if (summ->parsed()) code = cmd_summation(rep, st, ks, ds, testfn, harmonic, j);
    else if (jdec->parsed()) code = cmd_jacobi_decompose(rep, jacobi, form_out);
    else if (jrec->parsed()) code = cmd_jacobi_reconstruct(rep, st, jacobi, tau, z);
    else if (jls->parsed()) code = cmd_jacobi_lseries(rep, st, jacobi, testfn, delta);
    else if (jfe->parsed()) code = cmd_jacobi_fe(rep, st, jacobi, testfn, mode);
    else if (kmap->parsed()) code = cmd_kohnen_map(rep, jacobi, form_out);
    else if (kl->parsed()) code = cmd_kohnen_check_L(rep, st, jacobi, ss, finite);
    else if (kfe->parsed()) code = cmd_kohnen_fe(rep, st, jacobi, form, testfn, mode);
    if (st.timing) {
      rep.doc()["wall_clock_s"] =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    out << render_report(rep.doc());
    if (!st.out_path.empty()) write_file(st.out_path, rep.doc().dump(2) + "\n");
    return code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

}  // namespace vvl::cli
