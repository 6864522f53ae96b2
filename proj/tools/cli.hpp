#pragma once

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ncd/ncd.hpp"

namespace ncd::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitBadInput = 2;

/// Malformed command line or configuration.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Conventions every report carries so that stored outputs are self-describing.
inline Json convention_ledger() {
  return Json{
      {"phase", "e(t) = exp(2 pi i t)"},
      {"product", "U_x * U_y = e(-Theta(x, y)) U_{x+y}"},
      {"involution", "a*(x) = e(Theta(x, -x)) a(-x)^dagger"},
      {"commutation", "U_y * U_x = e(iota(x, y)) U_x * U_y with iota(x, y) = Theta(x, y) - Theta(y, x)"},
      {"projection_phase", "(p_Theta)_jk = e(-Theta(x_j, x_j - x_k)) p_jk"},
      {"gamma", "gamma_1 = [[0, 1], [-1, 0]], gamma_2 = [[0, i], [i, 0]], higher N by Kronecker products"},
      {"dirac", "D U_x = i c(2 pi x) U_x"},
      {"theta_syntax", "t@i,j sets iota(e_i, e_j) = t with 1-based indices; Theta is the upper triangular representative"},
  };
}

struct Check {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass() const { return residual <= tolerance; }
};

class Report {
 public:
  explicit Report(std::string command) : command_(std::move(command)) {}

  void check(std::string name, double residual, double tolerance) { checks_.push_back({std::move(name), residual, tolerance}); }
  void require(std::string name, bool ok) { check(std::move(name), ok ? 0.0 : 1.0, 0.0); }
  Json& result() { return result_; }

  bool ok() const {
    return std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.pass(); });
  }

  Json to_json() const {
    Json checks = Json::array();
    for (const auto& c : checks_) checks.push_back(Json{{"name", c.name}, {"residual", c.residual}, {"tolerance", c.tolerance}, {"pass", c.pass()}});
    return Json{{"schema", kSchemaVersion}, {"command", command_}, {"conventions", convention_ledger()},
                {"checks", checks},         {"ok", ok()},          {"result", result_}};
  }

  std::string to_text() const {
    std::ostringstream os;
    os << command_ << "\n";
    for (const auto& [key, value] : result_.items()) os << "  " << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
    os << std::scientific << std::setprecision(3);
    for (const auto& c : checks_)
      os << (c.pass() ? "PASS " : "FAIL ") << c.name << "  residual " << c.residual << "  tolerance " << c.tolerance << "\n";
    os << (ok() ? "all checks passed" : "verification failed") << "\n";
    return os.str();
  }

 private:
  std::string command_;
  std::vector<Check> checks_;
  Json result_ = Json::object();
};

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) throw ParseError("'" + path + "' is empty");
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError("'" + path + "' is not valid JSON: " + e.what());
  }
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

/// Parses "t@i,j[,t'@k,l...]" (1-based indices) into a class on g; a bare "t" means t@1,2.
inline CohomologyClass parse_theta(const std::string& text, const FgAbelianGroup& g) {
  std::vector<std::pair<std::pair<std::size_t, std::size_t>, CirclePoint>> pairs;
  if (text.empty()) return CohomologyClass::from_pairs(g, pairs);
  auto index = [&](const std::string& s) {
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(s, &used);
    } catch (const std::logic_error&) {
      throw UsageError("malformed generator index '" + s + "' in theta '" + text + "'");
    }
    if (used != s.size() || v < 1 || static_cast<std::size_t>(v) > g.num_generators())
      throw UsageError("generator index '" + s + "' out of range in theta '" + text + "'");
    return static_cast<std::size_t>(v - 1);
  };
  if (text.find('@') == std::string::npos) {
    CirclePoint t = parse_circle_point(text);
    if (t.is_zero()) return CohomologyClass::from_pairs(g, pairs);
    if (g.num_generators() < 2) throw UsageError("theta needs at least two generators");
    pairs.push_back({{0, 1}, t});
    return CohomologyClass::from_pairs(g, pairs);
  }
  auto tokens = split(text, ',');
  for (std::size_t k = 0; k < tokens.size(); k += 2) {
    auto at = tokens[k].find('@');
    if (at == std::string::npos || k + 1 >= tokens.size()) throw UsageError("theta entries are written t@i,j: '" + text + "'");
    std::size_t i = index(tokens[k].substr(at + 1));
    std::size_t j = index(tokens[k + 1]);
    if (i == j) throw UsageError("theta pairs need distinct generators: '" + text + "'");
    pairs.push_back({{i, j}, parse_circle_point(tokens[k].substr(0, at))});
  }
  return CohomologyClass::from_pairs(g, pairs);
}

struct Options {
  std::string format = "text";
  std::optional<double> tolerance;
  std::string theta;
  std::string theta_file;
  std::uint64_t seed = 0;
};

/// Deformation parameter on g; a file (multiplier or class document) overrides the inline form.
inline Multiplier resolve_theta(const Options& o, const FgAbelianGroup& g) {
  if (!o.theta_file.empty()) {
    Json j = read_json_file(o.theta_file);
    Multiplier m = is_class_document(j) ? Multiplier(upper_triangular_representative(class_from_json(j))) : multiplier_from_json(j);
    if (!(m.group() == g)) throw ParseError("theta file is over " + m.group().to_string() + " but the input is over " + g.to_string());
    return m;
  }
  return Multiplier(upper_triangular_representative(parse_theta(o.theta, g)));
}

inline double tolerance_or(const Options& o, double fallback) { return o.tolerance.value_or(fallback); }

inline Json kernel_generators(const Subgroup& h) {
  Json out = Json::array();
  IntMatrix b = h.hermite_basis();
  for (std::size_t i = 0; i < b.rows(); ++i) {
    std::vector<std::int64_t> row(b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j) row[j] = b(i, j);
    if (std::any_of(row.begin(), row.end(), [](std::int64_t v) { return v != 0; })) out.push_back(row);
  }
  return out;
}

inline Report cohomology_analyze(const std::string& path, const Options& o) {
  Report r("cohomology analyze");
  Json j = read_json_file(path);
  CohomologyClass c;
  if (is_class_document(j)) {
    c = class_from_json(j);
  } else {
    Multiplier m = multiplier_from_json(j);
    auto samples = sample_elements(m.group(), 1);
    std::mt19937_64 rng(o.seed);
    std::shuffle(samples.begin(), samples.end(), rng);
    if (samples.size() > 12) samples.resize(12);
    auto cocycle = verify_cocycle(m, samples, tolerance_or(o, 1e-12));
    r.check("cocycle identity on sampled triples", cocycle.max_defect, tolerance_or(o, 1e-12));
    r.require("normalized cocycle", cocycle.normalized);
    c = antisymmetrize(m);
    r.require("cohomologous to the triangular representative", is_cohomologous(m, Multiplier(upper_triangular_representative(c))));
  }
  r.result()["group"] = c.group().to_string();
  r.result()["class"] = to_json(c).at("matrix");
  r.result()["representative"] = to_json(upper_triangular_representative(c)).at("matrix");
  if (!c.is_exact()) {
    r.result()["kernel"] = "unavailable for irrational classes";
    return r;
  }
  auto part = nondegenerate_part(c);
  r.result()["kernel"] = describe_subgroup(part.kernel);
  r.result()["kernel_generators"] = kernel_generators(part.kernel);
  r.result()["quotient"] = part.quotient.group.to_string();
  r.result()["quotient_order"] = part.quotient.group.is_finite() ? Json(part.quotient.group.order()) : Json("infinite");
  r.result()["order"] = class_order(c);
  r.result()["nondegenerate"] = is_nondegenerate(c);
  r.result()["nondegenerate_form"] = to_json(part.omega).at("matrix");
  return r;
}

inline AlgebraElement read_element(const std::string& path) { return algebra_element_from_json(read_json_file(path)); }

inline Report algebra_command(const std::string& op, const std::vector<std::string>& files, const Options& o) {
  Report r("algebra " + op);
  const std::size_t need = op == "invol" ? 1 : 2;
  if (files.size() != need) throw UsageError("algebra " + op + " takes " + std::to_string(need) + " element file(s)");
  AlgebraElement a = read_element(files[0]);
  Multiplier m = resolve_theta(o, a.group());
  const double tol = tolerance_or(o, 1e-12);
  if (op == "invol") {
    auto as = involution(a, m);
    r.result()["involution"] = to_json(as);
    r.check("involution is an involution", max_difference(involution(as, m), a), tol);
    r.check("involution reverses products", max_difference(involution(star(a, a, m), m), star(as, as, m)), tol);
    return r;
  }
  AlgebraElement b = read_element(files[1]);
  if (!(a.group() == b.group()) || a.dim() != b.dim()) throw ParseError("elements live over different groups or coefficient sizes");
  if (op == "star") {
    auto ab = star(a, b, m);
    r.result()["product"] = to_json(ab);
    auto unit = AlgebraElement::monomial(a.group(), a.group().zero(), CoeffMatrix<Complex>::identity(a.dim()));
    r.check("unit", max_difference(star(unit, ab, m), ab), tol);
    r.check("involution reverses products", max_difference(involution(ab, m), star(involution(b, m), involution(a, m), m)), tol);
    return r;
  }
  auto iota = antisymmetrize(m);
  r.result()["commutation_form"] = to_json(iota).at("matrix");
  r.check("commutation defect", commutation_defect(a, b, m, iota), tol);
  return r;
}

inline Report module_deform_projection(const std::string& path, const Options& o) {
  Report r("module deform-projection");
  auto p = projection_from_json(read_json_file(path));
  Multiplier theta = resolve_theta(o, p.frame.group);
  const double tol = tolerance_or(o, 1e-12);
  auto before = check_invariant_projection(p, Multiplier::zero(p.frame.group), tol);
  r.check("input idempotency", before.idempotency_residual, tol);
  r.check("input self-adjointness", before.self_adjoint_residual, tol);
  r.check("input isotypy violations", static_cast<double>(before.isotypy_violations), 0.0);
  if (!before.ok) return r;
  auto deformed = deform_projection(p, theta, ProjectionPhase::kRowMinusColumn, tol);
  auto after = check_invariant_projection(deformed, theta, tol);
  r.check("deformed idempotency", after.idempotency_residual, tol);
  r.check("deformed self-adjointness", after.self_adjoint_residual, tol);
  r.result()["projection"] = to_json(deformed);
  return r;
}

struct SpectralOptions {
  std::size_t n = 2;
  double cutoff = 8.0;
  double radius = 2.0;
  std::optional<double> weyl_cutoff;
};

inline double default_weyl_cutoff(std::size_t n) {
  switch (n) {
    case 1: return 200.0;
    case 2: return 20.0;
    case 3: return 8.0;
    default: return 5.0;
  }
}

inline Report spectral_verify(const SpectralOptions& s, const Options& o) {
  Report r("spectral verify");
  if (s.n == 0) throw UsageError("--n must be positive");
  if (s.radius <= 0 || 2.0 * s.radius > s.cutoff) throw UsageError("--radius must be positive and at most half of --cutoff");
  TruncatedTriple t(s.n, s.cutoff);
  Multiplier m = resolve_theta(o, t.group());
  const double tol = tolerance_or(o, 1e-10);

  std::vector<AlgebraElement> gens;
  for (const auto& x : sample_elements(t.group(), static_cast<std::int64_t>(std::floor(s.radius))))
    if (!(x == t.group().zero()) && dual_length(t.group(), x) <= s.radius + 1e-12) gens.push_back(AlgebraElement::monomial(t.group(), x));
  double zero = 0.0, one = 0.0, comm = 0.0;
  for (const auto& a : gens) {
    comm = std::max(comm, std::abs(commutator_norm(a, m, t) - 2.0 * std::numbers::pi * dual_length(t.group(), a.terms().begin()->first)));
    for (const auto& b : gens) {
      zero = std::max(zero, order_zero_residual(a, b, m, t));
      one = std::max(one, order_one_residual(a, b, m, t));
    }
  }
  r.result()["n"] = s.n;
  r.result()["cutoff"] = s.cutoff;
  r.result()["hilbert_dim"] = t.hilbert_dim();
  r.result()["generators_tested"] = gens.size();
  r.check("order zero on generator pairs", zero, tol);
  r.check("order one on generator pairs", one, tol);
  r.check("commutator norm equals 2 pi |x|", comm, tolerance_or(o, 1e-9));

  if (s.n == 2) {
    auto zero_m = Multiplier::zero(t.group());
    auto c = normalize_orientation_cycle(orientation_cycle_2d<Complex>(), zero_m, t);
    std::vector<AlgebraElement> probes{AlgebraElement::monomial(t.group(), {1, 0}), AlgebraElement::monomial(t.group(), {0, 1}),
                                       AlgebraElement::monomial(t.group(), {1, -1})};
    auto ch = chirality_check(c, m, zero_m, t, probes);
    r.check("chirality is unchanged by the deformation", ch.deformation_residual, tol);
    r.check("chirality squares to one", ch.square_residual, tol);
    r.check("chirality self-adjoint", ch.self_adjoint_residual, tol);
    r.check("chirality commutes with the algebra", ch.commutation_residual, tol);
    r.check("chirality anticommutes with one-forms", ch.anticommutation_residual, tol);
    r.check("orientation cycle antisymmetry", ch.antisymmetry_residual, tol);
  }

  const double wc = s.weyl_cutoff.value_or(std::max(s.cutoff, default_weyl_cutoff(s.n)));
  auto weyl = weyl_counting(TruncatedTriple(s.n, wc));
  const double expected = -1.0 / static_cast<double>(s.n);
  r.result()["weyl_cutoff"] = wc;
  r.result()["weyl_eigenvalues"] = weyl.eigenvalues.size();
  r.result()["weyl_slope"] = weyl.slope;
  r.result()["weyl_expected_slope"] = expected;
  r.check("Weyl slope (fit tolerance)", std::abs(weyl.slope - expected), 0.05);

  std::vector<double> cuts{s.cutoff / 4, s.cutoff / 2, 3 * s.cutoff / 4, s.cutoff};
  GroupElement e1 = t.group().basis(0);
  auto shift = averaged_trace_diagnostic(AlgebraElement::monomial(t.group(), e1), m, t, cuts);
  double shift_mass = 0.0;
  for (const auto& v : shift.partial_traces) shift_mass = std::max(shift_mass, std::abs(v));
  auto mixed = averaged_trace_diagnostic(AlgebraElement::monomial(t.group(), t.group().zero()) + AlgebraElement::monomial(t.group(), e1), m, t, cuts);
  Json normalized = Json::array();
  for (const auto& v : mixed.normalized) normalized.push_back(v.real());
  r.result()["trace_cutoffs"] = cuts;
  r.result()["trace_normalized"] = normalized;
  r.check("shift tracelessness", shift_mass, 0.0);
  r.check("averaged trace sees only the constant term", mixed.max_deviation, 0.0);
  return r;
}

/// Column k of Phi(U_(a,b)) has a single entry e(phase) in the listed row.
inline Json clock_shift_table(const ClockShiftModel& blk) {
  Json images = Json::array();
  const auto q = blk.q();
  for (std::int64_t a = 0; a < q; ++a)
    for (std::int64_t b = 0; b < q; ++b) {
      auto m = blk.generator_image<Complex>(a, b);
      Json cols = Json::array();
      for (std::size_t k = 0; k < static_cast<std::size_t>(q); ++k)
        for (std::size_t row = 0; row < static_cast<std::size_t>(q); ++row) {
          Complex v = m(row, k);
          if (std::abs(v) < 0.5) continue;
          auto e = static_cast<std::int64_t>(std::llround(std::arg(v) * static_cast<double>(q) / (2.0 * std::numbers::pi)));
          cols.push_back(Json{{"row", row}, {"phase", to_json(CirclePoint::exact(e, q))}});
        }
      images.push_back(Json{{"a", a}, {"b", b}, {"columns", cols}});
    }
  return Json{{"p", blk.p()}, {"q", q}, {"images", images}};
}

inline Report split_rational(const std::string& element_path, std::size_t samples, const Options& o) {
  Report r("split rational");
  AlgebraElement a = read_element(element_path);
  if (a.dim() != 1) throw ParseError("split rational needs a scalar element");
  CohomologyClass c = o.theta_file.empty() ? parse_theta(o.theta, a.group()) : antisymmetrize(resolve_theta(o, a.group()));
  if (!c.is_exact()) throw UsageError("split rational needs a rational theta");
  SplitModel model(c);
  Multiplier theta(model.pulled_back());
  const double tol = tolerance_or(o, 1e-10);

  Json tables = Json::array();
  double relation = 0.0;
  for (const auto& blk : model.blocks()) {
    tables.push_back(clock_shift_table(blk));
    relation = std::max(relation, blk.relation_residual<Cyclotomic>());
  }
  r.check("clock-shift relation (exact)", relation, 0.0);

  const auto& k = model.quotient().group;
  Multiplier nd(model.part().theta_nd);
  double phi_mult = 0.0;
  for (const auto& x : k.elements())
    for (const auto& y : k.elements()) {
      auto d = model.phi<Complex>(x) * model.phi<Complex>(y) - model.phi<Complex>(k.add(x, y)).scaled((-nd(x, y)).exp());
      phi_mult = std::max(phi_mult, d.norm());
    }
  r.check("Phi multiplicativity over all basis pairs", phi_mult, tolerance_or(o, 1e-12));

  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::vector<double>> points(samples, std::vector<double>(a.group().num_generators()));
  for (auto& p : points)
    for (auto& v : p) v = unit(rng);

  auto as = involution(a, theta);
  auto sa = split_refined(a, theta, model);
  auto sas = split_refined(as, theta, model);
  auto saas = split_refined(star(a, as, theta), theta, model);
  double pointwise = 0.0, adjoint = 0.0;
  for (const auto& p : points) {
    auto ea = evaluate_split(sa, p, model);
    pointwise = std::max(pointwise, (evaluate_split(saas, p, model) - ea * evaluate_split(sas, p, model)).norm());
    adjoint = std::max(adjoint, (evaluate_split(sas, p, model) - ea.adjoint()).norm());
  }
  r.check("pointwise multiplicativity of evaluated splits", pointwise, tol);
  r.check("evaluation preserves the involution", adjoint, tol);

  double equivariance = 0.0, isotypy = 0.0;
  const auto& g = a.group();
  for (std::size_t i = 0; i < g.num_generators(); ++i) {
    std::vector<CirclePoint> shift;
    for (std::size_t j = 0; j < g.num_generators(); ++j) shift.push_back(c(g.basis(i), g.basis(j)));
    auto audit = equivariance_audit(sa, shift, model, points);
    equivariance = std::max(equivariance, audit.covariance_residual);
    isotypy = std::max(isotypy, audit.isotypy_mass);
  }
  r.check("isotypy of split components", isotypy, 0.0);
  r.check("equivariance under the image of the class", equivariance, tol);

  auto simple = simplicity_report(model.part().omega);
  r.require("nondegenerate part is nondegenerate", simple.nondegenerate);
  Json simplicity{{"nondegenerate", simple.nondegenerate}, {"group_order", simple.group_order}};
  if (simple.center_dimension) {
    simplicity["center_dimension"] = *simple.center_dimension;
    r.check("center dimension of the finite twisted algebra minus one", static_cast<double>(*simple.center_dimension) - 1.0, 0.0);
  }

  r.result()["quotient"] = k.to_string();
  r.result()["matrix_dim"] = model.matrix_dim();
  r.result()["samples"] = samples;
  r.result()["clock_shift_table"] = tables;
  r.result()["multiplicativity_max_residual"] = std::max(phi_mult, pointwise);
  r.result()["equivariance_residual"] = equivariance;
  r.result()["simplicity"] = simplicity;
  return r;
}

inline std::optional<double> environment_tolerance() {
  const char* env = std::getenv("NCD_TOLERANCE");
  if (env == nullptr || *env == '\0') return std::nullopt;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(env, &used);
  } catch (const std::logic_error&) {
    throw UsageError(std::string("NCD_TOLERANCE is not a number: '") + env + "'");
  }
  if (used != std::string(env).size() || !(v > 0.0)) throw UsageError(std::string("NCD_TOLERANCE must be a positive number: '") + env + "'");
  return v;
}

/// Runs one command line (without the program name); returns the process exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Deformations of torus-equivariant algebras, modules and spectral triples", "ncd"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  double tolerance = 0.0;
  auto* tol_opt = app.add_option("--tolerance", tolerance, "Override every numeric tolerance")->check(CLI::PositiveNumber);
  app.add_option("--output", o.format, "Report format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", o.seed, "Seed for sampled checks");
  auto add_theta = [&](CLI::App* sub) {
    sub->add_option("--theta", o.theta, "Inline deformation parameter t@i,j[,t@k,l...] (1-based), or t for t@1,2");
    sub->add_option("--theta-file", o.theta_file, "Bicharacter, multiplier or class JSON; overrides --theta");
  };

  auto* coh = app.add_subcommand("cohomology", "Cohomology of a bicharacter or multiplier")->require_subcommand(1);
  std::string class_path;
  auto* analyze = coh->add_subcommand("analyze", "Class, kernel, quotient and order");
  analyze->add_option("file", class_path, "Bicharacter, multiplier or class JSON")->required();

  auto* alg = app.add_subcommand("algebra", "Deformed product, involution and commutation")->require_subcommand(1);
  std::vector<std::string> element_files;
  std::string alg_op;
  for (const char* name : {"star", "invol", "check-theta-comm"}) {
    auto* sub = alg->add_subcommand(name, std::string("algebra ") + name);
    sub->add_option("elements", element_files, "Element JSON files")->required();
    add_theta(sub);
    sub->callback([&alg_op, name] { alg_op = name; });
  }

  auto* mod = app.add_subcommand("module", "Deformation of invariant projections")->require_subcommand(1);
  std::string proj_path;
  auto* deform = mod->add_subcommand("deform-projection", "Deform a projection and verify the result");
  deform->add_option("--proj", proj_path, "Projection JSON")->required();
  add_theta(deform);

  auto* spectral = app.add_subcommand("spectral", "Truncated spectral triple checks")->require_subcommand(1);
  SpectralOptions so;
  double weyl_cutoff = 0.0;
  auto* verify = spectral->add_subcommand("verify", "Order conditions, commutators, chirality, Weyl law, trace diagnostic");
  verify->add_option("--n", so.n, "Torus dimension")->check(CLI::PositiveNumber);
  verify->add_option("--cutoff", so.cutoff, "Mode cutoff")->check(CLI::PositiveNumber);
  verify->add_option("--radius", so.radius, "Largest generator frequency in the pair sweep");
  auto* weyl_opt = verify->add_option("--weyl-cutoff", weyl_cutoff, "Cutoff for the Weyl fit")->check(CLI::PositiveNumber);
  verify->add_option("--report", o.format, "Report format")->check(CLI::IsMember({"text", "json"}));
  add_theta(verify);

  auto* spl = app.add_subcommand("split", "Splitting of rational deformations onto matrix algebras")->require_subcommand(1);
  std::string split_element;
  std::size_t samples = 100;
  auto* rational = spl->add_subcommand("rational", "Clock-shift model, multiplicativity, equivariance and simplicity");
  rational->add_option("--element", split_element, "Scalar element JSON")->required();
  rational->add_option("--samples", samples, "Number of random base points")->check(CLI::PositiveNumber);
  rational->add_option("--seed", o.seed, "Seed for the base points");
  add_theta(rational);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitBadInput;
  }

  try {
    o.tolerance = environment_tolerance();
    if (tol_opt->count() > 0) o.tolerance = tolerance;
    if (weyl_opt->count() > 0) so.weyl_cutoff = weyl_cutoff;
    std::optional<Report> report;
    if (analyze->parsed()) report = cohomology_analyze(class_path, o);
    else if (alg->parsed()) report = algebra_command(alg_op, element_files, o);
    else if (deform->parsed()) report = module_deform_projection(proj_path, o);
    else if (verify->parsed()) report = spectral_verify(so, o);
    else if (rational->parsed()) report = split_rational(split_element, samples, o);
    if (!report) throw UsageError("no command given");
    if (o.format == "json") out << report->to_json().dump(2) << "\n";
    else out << report->to_text();
    return report->ok() ? kExitOk : kExitVerificationFailed;
  } catch (const std::exception& e) {
    err << "ncd: error: " << e.what() << "\n";
    return kExitBadInput;
  }
}

}  // namespace ncd::cli
