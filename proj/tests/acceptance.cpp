// Acceptance gate: one PASS/FAIL line per criterion, each with its runtime budget.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>

#include "generators.hpp"

namespace {

using namespace ncd;
using testing::Rng;

struct Outcome {
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

const FgAbelianGroup& plane() {
  static const FgAbelianGroup g = FgAbelianGroup::lattice(2);
  return g;
}

CohomologyClass torus_class(const CirclePoint& t) { return CohomologyClass::from_pairs(plane(), {{{0, 1}, t}}); }
Multiplier torus_theta(const CirclePoint& t) { return Multiplier(upper_triangular_representative(torus_class(t))); }

Outcome cohomology_suite() {
  Outcome o;
  Rng rng(1001);
  std::vector<FgAbelianGroup> groups;
  for (std::size_t n = 1; n <= 4; ++n) groups.push_back(FgAbelianGroup::lattice(n));
  for (std::int64_t q = 2; q <= 6; ++q) groups.push_back(FgAbelianGroup::finite({q, q}));
  for (int t = 0; t < 500; ++t) {
    const auto& g = groups[static_cast<std::size_t>(t) % groups.size()];
    auto b = testing::random_bicharacter(rng, g);
    auto c = testing::random_bicharacter(rng, g);
    Bicharacter s = c + c.transpose();
    Multiplier m(b);
    // Theta + dT with dT a symmetric bicharacter, plus a quadratic-linear coboundary on lattices
    Multiplier shifted = g.is_finite() ? Multiplier(b + s) : Multiplier(b + s, testing::random_coboundary(rng, g));
    o.expect(is_cohomologous(m, shifted), "coboundary shift not cohomologous on " + g.to_string());
    o.expect(antisymmetrize(m) == antisymmetrize(shifted), "antisymmetrisation differs on " + g.to_string());
    o.expect(antisymmetrize(Multiplier(s)) == CohomologyClass(g, detail::zero_circle_matrix(g.num_generators())),
             "symmetric part survives antisymmetrisation on " + g.to_string());
    auto cls = antisymmetrize(m);
    o.expect(antisymmetrize(Multiplier(upper_triangular_representative(cls))) == cls, "triangular representative changes the class");
  }
  return o;
}

Outcome kernel_quotient() {
  Outcome o;
  for (std::int64_t q = 2; q <= 7; ++q)
    for (std::int64_t p = 1; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      auto c = torus_class(CirclePoint::exact(p, q));
      auto part = nondegenerate_part(c);
      const std::string want = std::to_string(q) + "Z^2";
      o.expect(describe_subgroup(part.kernel) == want, "kernel of " + std::to_string(p) + "/" + std::to_string(q));
      o.expect(part.kernel.contains(GroupElement{q, 0}) && part.kernel.contains(GroupElement{0, q}) &&
                   !part.kernel.contains(GroupElement{1, 0}) && !part.kernel.contains(GroupElement{0, 1}),
               "kernel membership");
      o.expect(part.quotient.group == FgAbelianGroup::finite({q, q}), "quotient of " + std::to_string(p) + "/" + std::to_string(q));
      o.expect(class_order(c) == q, "class order");
    }
  return o;
}

Outcome algebra_suite() {
  Outcome o;
  Rng rng(1003);
  const std::vector<FgAbelianGroup> groups{FgAbelianGroup::lattice(1), FgAbelianGroup::lattice(2), FgAbelianGroup::lattice(3),
                                           FgAbelianGroup::finite({3, 3}), FgAbelianGroup(1, {2})};
  for (int t = 0; t < 200; ++t) {
    const auto& g = groups[static_cast<std::size_t>(t) % groups.size()];
    auto b = testing::random_bicharacter(rng, g, true);
    Multiplier m = g.is_finite() || !g.torsion().empty() ? Multiplier(b) : Multiplier(b, testing::random_coboundary(rng, g, true));
    Multiplier m2(testing::random_bicharacter(rng, g, true));
    auto x = testing::random_exact_element(rng, g, 12, 2);
    auto y = testing::random_exact_element(rng, g, 12, 2);
    auto z = testing::random_exact_element(rng, g, 12, 2);
    auto one = ExactElement::unit(g);
    o.expect(star(star(x, y, m), z, m) == star(x, star(y, z, m), m), "associativity on " + g.to_string());
    o.expect(star(one, x, m) == x && star(x, one, m) == x, "unit");
    o.expect(involution(star(x, y, m), m) == star(involution(y, m), involution(x, m), m), "involution reverses products");
    o.expect(involution(involution(x, m), m) == x, "involution is involutive");
    o.expect(commutation_defect(x, y, m, antisymmetrize(m)) == 0.0, "commutation defect");
    o.expect(deformation_composition_check(x, y, m, m2) == 0.0, "deformation group law");
  }
  auto m = torus_theta(CirclePoint::real(1.0 / std::sqrt(7.0)));
  auto m2 = torus_theta(CirclePoint::real(std::sqrt(2.0) - 1.0));
  auto iota = antisymmetrize(m);
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    auto x = testing::random_complex_element(rng, plane(), 12, 3);
    auto y = testing::random_complex_element(rng, plane(), 12, 3);
    auto z = testing::random_complex_element(rng, plane(), 12, 3);
    worst = std::max({worst, max_difference(star(star(x, y, m), z, m), star(x, star(y, z, m), m)),
                      max_difference(involution(star(x, y, m), m), star(involution(y, m), involution(x, m), m)),
                      max_difference(involution(involution(x, m), m), x), commutation_defect(x, y, m, iota),
                      deformation_composition_check(x, y, m, m2)});
  }
  o.expect(worst <= 1e-12, "irrational residual " + fmt(worst));
  if (o.ok) o.detail = "irrational residual " + fmt(worst);
  return o;
}

std::vector<InvariantProjection<Cyclotomic>> projection_corpus(Rng& rng) {
  std::vector<InvariantProjection<Cyclotomic>> out;
  for (int t = 0; t < 6; ++t) {
    WeightedFrame f{plane(), {}};
    std::vector<bool> mask;
    for (int k = 0; k < 3; ++k) {
      f.weights.push_back(testing::random_element(rng, plane(), 2));
      mask.push_back(testing::uniform(rng, 0, 1) == 1);
    }
    out.push_back(diagonal_projection<Cyclotomic>(f, mask));
  }
  for (std::int64_t a = -3; a <= 3; ++a)
    for (std::int64_t b = -3; b <= 3; ++b)
      if (a * a + b * b <= 9)
        out.push_back(flat_line_bundle(plane(), testing::random_element(rng, plane(), 2), GroupElement{a, b}, Cyclotomic::rational(1, 2)));
  const auto base = out.size();
  for (int t = 0; t < 8; ++t) {
    const auto& p = out[static_cast<std::size_t>(testing::uniform(rng, 0, static_cast<std::int64_t>(base) - 1))];
    const auto& q = out[static_cast<std::size_t>(testing::uniform(rng, 0, static_cast<std::int64_t>(base) - 1))];
    out.push_back(direct_sum(p, q));
  }
  return out;
}

Outcome module_suite() {
  Outcome o;
  Rng rng(1004);
  std::vector<Multiplier> thetas{torus_theta(CirclePoint::exact(1, 3)),
                                 Multiplier(Bicharacter(plane(), {{CirclePoint::zero(), CirclePoint::exact(1, 8)},
                                                                  {CirclePoint::exact(7, 8), CirclePoint::zero()}}))};
  for (int t = 0; t < 3; ++t) thetas.emplace_back(testing::random_bicharacter(rng, plane(), true));
  auto corpus = projection_corpus(rng);
  for (const auto& p : corpus) {
    o.expect(check_invariant_projection(p, Multiplier::zero(plane())).ok, "corpus entry is not an invariant projection");
    for (std::size_t i = 0; i < thetas.size(); ++i) {
      const auto& th = thetas[i];
      auto r = check_invariant_projection(deform_projection(p, th), th);
      o.expect(r.idempotency_residual == 0.0, "idempotency residual " + fmt(r.idempotency_residual));
      o.expect(r.self_adjoint_residual == 0.0, "self-adjointness residual " + fmt(r.self_adjoint_residual));
      o.expect(r.isotypy_violations == 0, "isotypy");
      const auto& th2 = thetas[(i + 1) % thetas.size()];
      auto twice = deform_endomorphism(p.frame, deform_projection(p, th).entries, th2);
      o.expect(matrix_difference(twice, deform_projection(p, th + th2).entries) == 0.0, "functor composition");
    }
  }
  if (o.ok) o.detail = std::to_string(corpus.size()) + " projections x " + std::to_string(thetas.size()) + " thetas";
  return o;
}

std::vector<Multiplier> spectral_thetas() {
  return {torus_theta(CirclePoint::zero()), torus_theta(CirclePoint::exact(1, 3)), torus_theta(CirclePoint::exact(1, 4)),
          torus_theta(CirclePoint::real(1.0 / std::sqrt(7.0)))};
}

Outcome spectral_suite() {
  Outcome o;
  TruncatedTriple t(2, 8);
  std::vector<AlgebraElement> gens;
  for (std::int64_t a = -3; a <= 3; ++a)
    for (std::int64_t b = -3; b <= 3; ++b)
      if ((a != 0 || b != 0) && a * a + b * b <= 9) gens.push_back(AlgebraElement::monomial(plane(), GroupElement{a, b}));
  double zero = 0.0, one = 0.0, comm = 0.0, chi = 0.0;
  auto base = Multiplier::zero(plane());
  auto cycle = normalize_orientation_cycle(orientation_cycle_2d<Complex>(), base, t);
  const std::vector<AlgebraElement> probes{AlgebraElement::monomial(plane(), {1, 0}), AlgebraElement::monomial(plane(), {0, 1}),
                                           AlgebraElement::monomial(plane(), {1, -1})};
  for (const auto& m : spectral_thetas()) {
    for (const auto& a : gens) {
      comm = std::max(comm, std::abs(commutator_norm(a, m, t) - 2.0 * std::numbers::pi * dual_length(plane(), a.terms().begin()->first)));
      for (const auto& b : gens) {
        zero = std::max(zero, order_zero_residual(a, b, m, t));
        one = std::max(one, order_one_residual(a, b, m, t));
      }
    }
    auto r = chirality_check(cycle, m, base, t, probes);
    chi = std::max({chi, r.square_residual, r.anticommutation_residual, r.self_adjoint_residual, r.commutation_residual});
  }
  auto weyl = weyl_counting(TruncatedTriple(2, 20));
  o.expect(zero <= 1e-10, "order zero " + fmt(zero));
  o.expect(one <= 1e-10, "order one " + fmt(one));
  o.expect(comm <= 1e-9, "commutator norm " + fmt(comm));
  o.expect(chi <= 1e-10, "chirality " + fmt(chi));
  o.expect(std::abs(weyl.slope + 0.5) <= 0.05, "Weyl slope " + std::to_string(weyl.slope));
  if (o.ok)
    o.detail = std::to_string(gens.size() * gens.size()) + " pairs per theta, max order residual " + fmt(std::max(zero, one)) + ", Weyl slope " +
               std::to_string(weyl.slope);
  return o;
}

Outcome trace_diagnostic() {
  Outcome o;
  TruncatedTriple t(2, 8);
  const std::vector<double> cuts{2, 4, 6, 8};
  for (const auto& m : spectral_thetas())
    for (std::int64_t a = -3; a <= 3; ++a)
      for (std::int64_t b = -3; b <= 3; ++b) {
        if ((a == 0 && b == 0) || a * a + b * b > 9) continue;
        auto ux = AlgebraElement::monomial(plane(), GroupElement{a, b});
        auto shift = averaged_trace_diagnostic(ux, m, t, cuts);
        for (const auto& v : shift.partial_traces) o.expect(v == Complex(0.0, 0.0), "shift trace " + fmt(std::abs(v)));
        for (const auto& v : shift.normalized) o.expect(v == Complex(0.0, 0.0), "normalized shift trace");
        auto mixed = averaged_trace_diagnostic(AlgebraElement::monomial(plane(), plane().zero()) + ux, m, t, cuts);
        o.expect(mixed.max_deviation == 0.0, "U_0 + U_x deviates from U_0 by " + fmt(mixed.max_deviation));
      }
  return o;
}

Outcome rational_split() {
  Outcome o;
  Rng rng(1007);
  double phi_worst = 0.0, eval_worst = 0.0;
  for (std::int64_t q = 2; q <= 6; ++q)
    for (std::int64_t p = 1; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      ClockShiftModel cs(p, q);
      o.expect(cs.relation_residual<Cyclotomic>() == 0.0, "clock-shift relation");
      SplitModel model(torus_class(CirclePoint::exact(p, q)));
      const auto& k = model.quotient().group;
      Multiplier nd(model.part().theta_nd);
      for (const auto& x : k.elements())
        for (const auto& y : k.elements()) {
          auto d = model.phi<Complex>(x) * model.phi<Complex>(y) - model.phi<Complex>(k.add(x, y)).scaled((-nd(x, y)).exp());
          phi_worst = std::max(phi_worst, d.norm());
        }
      Multiplier theta(model.pulled_back());
      auto a = testing::random_complex_element(rng, plane(), 8, 3);
      auto b = testing::random_complex_element(rng, plane(), 8, 3);
      auto sa = split_refined(a, theta, model);
      auto sb = split_refined(b, theta, model);
      auto sab = split_refined(star(a, b, theta), theta, model);
      for (int s = 0; s < 100; ++s) {
        std::vector<double> pt{testing::uniform_real(rng, 0, 1), testing::uniform_real(rng, 0, 1)};
        auto d = evaluate_split(sab, pt, model) - evaluate_split(sa, pt, model) * evaluate_split(sb, pt, model);
        eval_worst = std::max(eval_worst, d.norm());
      }
    }
  o.expect(phi_worst <= 1e-12, "Phi multiplicativity " + fmt(phi_worst));
  o.expect(eval_worst <= 1e-10, "pointwise multiplicativity " + fmt(eval_worst));

  std::size_t simple_checked = 0;
  const std::vector<FgAbelianGroup> groups{FgAbelianGroup::finite({2, 2, 2, 2}), FgAbelianGroup::finite({3, 3, 3, 3}),
                                           FgAbelianGroup::finite({2, 2, 4, 4}), FgAbelianGroup::finite({2, 2, 3, 3}), FgAbelianGroup::finite({3, 3, 9}),
                                           FgAbelianGroup::finite({2, 2, 2, 2, 2, 2})};
  for (std::int64_t q = 2; q <= 9; ++q)
    for (std::int64_t p = 1; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      auto c = CohomologyClass::from_pairs(FgAbelianGroup::finite({q, q}), {{{0, 1}, CirclePoint::exact(p, q)}});
      auto r = simplicity_report(c);
      o.expect(r.nondegenerate && r.center_dimension == std::optional<std::size_t>(1), "simplicity of Z_q x Z_q class");
      ++simple_checked;
    }
  for (const auto& g : groups)
    for (int t = 0; t < 40; ++t) {
      auto c = testing::random_class(rng, g);
      auto r = simplicity_report(c);
      if (!r.nondegenerate) continue;
      o.expect(r.center_dimension == std::optional<std::size_t>(1), "center of a nondegenerate class on " + g.to_string());
      ++simple_checked;
    }
  if (o.ok) o.detail = "Phi " + fmt(phi_worst) + ", pointwise " + fmt(eval_worst) + ", " + std::to_string(simple_checked) + " simple classes";
  return o;
}

Outcome symmetry_suite() {
  Outcome o;
  Rng rng(1008);
  for (int t = 0; t < 50; ++t) {
    auto R = testing::random_unimodular(rng, 2, 5);
    auto S = testing::random_unimodular(rng, 2, 5);
    auto b = testing::random_bicharacter(rng, plane(), true);
    auto c = antisymmetrize(Multiplier(b));
    o.expect(pullback(pullback(b, R), S) == pullback(b, R * S), "action law on bicharacters");
    o.expect(pullback(pullback(c, R), S) == pullback(c, R * S), "action law on classes");
    o.expect(pullback(c, R) == antisymmetrize(Multiplier(pullback(b, R))), "pullback commutes with antisymmetrisation");
    Multiplier th(b), pulled(pullback(b, R));
    auto x = testing::random_exact_element(rng, plane(), 8, 2);
    auto y = testing::random_exact_element(rng, plane(), 8, 2);
    o.expect(glnz_pullback(glnz_pullback(x, S), R) == glnz_pullback(x, R * S), "action law on elements");
    o.expect(glnz_pullback(star(x, y, pulled), R) == star(glnz_pullback(x, R), glnz_pullback(y, R), th), "reindexing intertwines products");
    o.expect(glnz_pullback(involution(x, pulled), R) == involution(glnz_pullback(x, R), th), "reindexing intertwines involutions");
  }
  return o;
}

struct Criterion {
  int id;
  const char* title;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "cohomology round trips on 500 bicharacters", 5.0, cohomology_suite},
      {2, "kernel and quotient for p/q, q = 2..7", 1.0, kernel_quotient},
      {3, "algebra laws on 200 random triples", 10.0, algebra_suite},
      {4, "deformed projection corpus", 10.0, module_suite},
      {5, "truncated spectral triple", 60.0, spectral_suite},
      {6, "averaged trace diagnostic", 10.0, trace_diagnostic},
      {7, "rational splitting, q = 2..6", 30.0, rational_split},
      {8, "GL(2,Z) symmetry on 50 matrices", 5.0, symmetry_suite},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    auto start = std::chrono::steady_clock::now();
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_time = secs < c.limit_seconds;
    bool pass = o.ok && in_time;
    if (!in_time && o.ok) o.detail = "over the time limit";
    std::printf("criterion %d: %s  %s  (%.2f s, limit %.0f s)%s%s\n", c.id, pass ? "PASS" : "FAIL", c.title, secs, c.limit_seconds,
                o.detail.empty() ? "" : "  ", o.detail.c_str());
    failures += pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
