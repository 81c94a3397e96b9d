#include "weaklab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace weaklab {

std::string to_string(TheoremId id) {
  switch (id) {
    case TheoremId::Sawyer11: return "Sawyer11";
    case TheoremId::LemmaPointwise: return "LemmaPointwise";
    case TheoremId::ThmMax: return "ThmMax";
    case TheoremId::ThmIMax: return "ThmIMax";
    case TheoremId::ThmExtrap: return "ThmExtrap";
    case TheoremId::MoenA1: return "MoenA1";
    case TheoremId::VectorValued42: return "VectorValued42";
    case TheoremId::Thm23Char: return "Thm23Char";
  }
  return "ThmMax";
}

TheoremId theorem_from_string(const std::string& s) {
  for (TheoremId id :
       {TheoremId::Sawyer11, TheoremId::LemmaPointwise, TheoremId::ThmMax,
        TheoremId::ThmIMax, TheoremId::ThmExtrap, TheoremId::MoenA1,
        TheoremId::VectorValued42, TheoremId::Thm23Char})
    if (to_string(id) == s) return id;
  throw config_error("unknown theorem id: " + s);
}

std::string to_string(HypothesisMode m) {
  return m == HypothesisMode::A ? "A" : "B";
}

HypothesisMode mode_from_string(const std::string& s) {
  if (s == "A") return HypothesisMode::A;
  if (s == "B") return HypothesisMode::B;
  throw config_error("unknown hypothesis mode: " + s);
}

std::string to_string(ReportStatus s) {
  switch (s) {
    case ReportStatus::OK: return "OK";
    case ReportStatus::HypothesisUnstable: return "HypothesisUnstable";
    case ReportStatus::Degenerate: return "Degenerate";
    case ReportStatus::Violation: return "Violation";
  }
  return "OK";
}

namespace {

SampledFunction quotient(const Grid& grid, std::span<const double> num,
                         std::span<const double> den) {
  SampledFunction out{grid, std::vector<double>(num.size())};
  for (std::size_t i = 0; i < num.size(); ++i)
    out.values[i] = num[i] / den[i];
  return out;
}

// density = prod_i u_i^q * v^q over the given sample vectors.
std::vector<double> nu_vq_density(
    const std::vector<std::vector<double>>& u_samples,
    std::span<const double> v_samples, double q) {
  std::vector<double> density(v_samples.size());
  for (std::size_t c = 0; c < density.size(); ++c) {
    double d = std::pow(v_samples[c], q);
    for (const auto& u : u_samples) d *= std::pow(u[c], q);
    density[c] = d;
  }
  return density;
}

ReportStatus sides_status(double lhs, double rhs) {
  if (rhs > 0) return ReportStatus::OK;
  return lhs > 0 ? ReportStatus::Violation : ReportStatus::Degenerate;
}

void fill_sides(InequalityReport& rep, double lhs, double rhs) {
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.status = sides_status(lhs, rhs);
  rep.empirical_constant = rhs > 0 ? lhs / rhs : 0.0;
}

} // namespace

std::vector<HypothesisComponent> hypothesis_check(
    std::span<const Weight> us, const Weight& v, double alpha,
    HypothesisMode mode, CubeFamilyKind family,
    std::span<const double> p_ladder) {
  if (us.empty()) throw std::invalid_argument("hypothesis_check: no weights");
  const Grid& grid = us[0].grid();
  for (const Weight& u : us)
    if (!(u.grid() == grid) || !(v.grid() == grid))
      throw std::invalid_argument("hypothesis_check: mismatched grids");
  const int m = static_cast<int>(us.size());
  const double q = derived_q(m, grid.dim, alpha);
  const double mq = m * q;

  std::vector<Weight> u_mq;
  u_mq.reserve(us.size());
  for (const Weight& u : us) u_mq.push_back(pow_weight(u, mq));

  std::vector<HypothesisComponent> out;

  // A_(1,...,1) of u_vec^{mq}; gating in mode A.
  std::vector<double> ones(us.size(), 1.0);
  HypothesisComponent avec{multilinear_ap_constant(u_mq, ones, family),
                           mode == HypothesisMode::A};
  avec.report.target = "u_vec^{mq} in A_(1,...,1)";
  out.push_back(std::move(avec));

  // A_1 per u_i^{mq}; gating in mode B.
  for (int i = 0; i < m; ++i) {
    HypothesisComponent comp{a1_constant(u_mq[i], family),
                             mode == HypothesisMode::B};
    comp.report.target = "u" + std::to_string(i + 1) + "^{mq} in A_1";
    out.push_back(std::move(comp));
  }

  if (mode == HypothesisMode::A) {
    // nu v^q with nu = prod u_i^q.
    std::vector<Weight> all(us.begin(), us.end());
    all.push_back(v);
    std::vector<double> exps(all.size(), q);
    HypothesisComponent comp{
        ainf_proxy(product_weight(all, exps), family, p_ladder), true};
    comp.report.target = "nu*v^q in A_inf";
    out.push_back(std::move(comp));
  } else {
    HypothesisComponent comp{ainf_proxy(pow_weight(v, mq), family, p_ladder),
                             true};
    comp.report.target = "v^{mq} in A_inf";
    out.push_back(std::move(comp));
  }
  return out;
}

PointwiseLemmaResult verify_lemma_pointwise(std::span<const SampledFunction> fs,
                                            std::span<const Weight> us,
                                            double alpha,
                                            CubeFamilyKind family) {
  if (fs.empty() || fs.size() != us.size())
    throw std::invalid_argument("lemma: slot count mismatch");
  const Grid& grid = fs[0].grid;
  for (std::size_t i = 0; i < fs.size(); ++i)
    if (!(fs[i].grid == grid) || !(us[i].grid() == grid))
      throw std::invalid_argument("lemma: mismatched grids");
  const int m = static_cast<int>(fs.size());
  const double q = derived_q(m, grid.dim, alpha);
  const double mq = m * q;

  SampledFunction lhs = maximal(fs, {m, alpha, family});

  double mass_factor = 1.0;
  bool degenerate = false;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    double integral = weighted_l1(fs[i], us[i]);
    if (integral == 0.0 && alpha > 0) degenerate = true;
    mass_factor *= std::pow(integral, alpha / (m * grid.dim));
  }

  std::vector<SampledFunction> gs;
  gs.reserve(fs.size());
  for (std::size_t i = 0; i < fs.size(); ++i) {
    SampledFunction g{grid, fs[i].values};
    const Weight dual = pow_weight(us[i], 1.0 - mq);
    for (std::size_t c = 0; c < g.values.size(); ++c)
      g.values[c] *= dual.values()[c];
    gs.push_back(std::move(g));
  }
  SampledFunction mg = maximal(gs, {m, 0.0, family});

  PointwiseLemmaResult res;
  res.max_violation = -std::numeric_limits<double>::infinity();
  for (std::int64_t c = 0; c < grid.cell_count(); ++c) {
    double rhs = std::pow(mg.values[c], 1.0 / mq) * mass_factor;
    double viol = (lhs.values[c] - rhs) / (1.0 + rhs);
    if (viol > res.max_violation) {
      res.max_violation = viol;
      res.argmax_cell = c;
      res.lhs_at_argmax = lhs.values[c];
      res.rhs_at_argmax = rhs;
    }
  }
  if (degenerate) {
    bool lhs_zero = std::all_of(lhs.values.begin(), lhs.values.end(),
                                [](double x) { return x == 0.0; });
    res.status = lhs_zero ? ReportStatus::Degenerate : ReportStatus::Violation;
  } else {
    res.status = res.max_violation > 1e-9 ? ReportStatus::Violation
                                          : ReportStatus::OK;
  }
  return res;
}

InequalityReport verify_theorem_max(std::span<const SampledFunction> fs,
                                    std::span<const Weight> us,
                                    const Weight& v, double alpha,
                                    HypothesisMode mode, CubeFamilyKind family,
                                    std::span<const double> p_ladder) {
  if (fs.empty() || fs.size() != us.size())
    throw std::invalid_argument("verify_theorem_max: slot count mismatch");
  const Grid& grid = fs[0].grid;
  const int m = static_cast<int>(fs.size());
  const double q = derived_q(m, grid.dim, alpha);

  InequalityReport rep;
  rep.theorem = TheoremId::ThmMax;
  rep.params = {m,    grid.dim, alpha, q, 0.0, 0.0, grid.cells_per_axis,
                grid.half_width, family, mode};
  rep.hypothesis = hypothesis_check(us, v, alpha, mode, family, p_ladder);

  SampledFunction mf = maximal(fs, {m, alpha, family});
  SampledFunction phi = quotient(grid, mf.values, v.values());

  std::vector<std::vector<double>> u_samples;
  for (const Weight& u : us) u_samples.push_back(u.values());
  WeightedMeasure mu =
      make_measure(grid, nu_vq_density(u_samples, v.values(), q));

  double rhs = 1.0;
  for (std::size_t i = 0; i < fs.size(); ++i)
    rhs *= weighted_l1(fs[i], us[i]);

  fill_sides(rep, weak_norm(phi, mu, q).value, rhs);
  rep.sweep = weak_norm_sweep(phi, mu, q);
  return rep;
}

namespace {

// Shared by the I_alpha-based theorems: integral field, target-resampled
// weights, measure and quotient.
struct TargetSide {
  SampledFunction phi;  // I_alpha(f_vec)/v at target points
  WeightedMeasure mu;   // nu v^q at target points
};

TargetSide integral_side(std::span<const SampledFunction> fs,
                         std::span<const WeightFamily> us,
                         const WeightFamily& v, double alpha, double q,
                         bool override_guard) {
  const Grid& grid = fs[0].grid;
  SampledFunction integral = fractional_integral(fs, alpha, override_guard);
  std::vector<double> v_t = sample_at_targets(v, grid);
  std::vector<std::vector<double>> u_t;
  for (const WeightFamily& u : us) u_t.push_back(sample_at_targets(u, grid));
  TargetSide side{quotient(grid, integral.values, v_t),
                  make_measure(grid, nu_vq_density(u_t, v_t, q))};
  return side;
}

} // namespace

InequalityReport verify_theorem_imax(std::span<const SampledFunction> fs,
                                     std::span<const WeightFamily> us,
                                     const WeightFamily& v, double alpha,
                                     HypothesisMode mode,
                                     CubeFamilyKind family,
                                     std::span<const double> p_ladder,
                                     bool override_guard) {
  if (fs.empty() || fs.size() != us.size())
    throw std::invalid_argument("verify_theorem_imax: slot count mismatch");
  const Grid& grid = fs[0].grid;
  const int m = static_cast<int>(fs.size());
  const double q = derived_q(m, grid.dim, alpha);

  InequalityReport rep;
  rep.theorem = TheoremId::ThmIMax;
  rep.params = {m,    grid.dim, alpha, q, 0.0, 0.0, grid.cells_per_axis,
                grid.half_width, family, mode};

  std::vector<Weight> us_c;
  for (const WeightFamily& u : us) us_c.push_back(sample(u, grid));
  rep.hypothesis =
      hypothesis_check(us_c, sample(v, grid), alpha, mode, family, p_ladder);

  TargetSide side = integral_side(fs, us, v, alpha, q, override_guard);

  double rhs = 1.0;
  for (std::size_t i = 0; i < fs.size(); ++i)
    rhs *= weighted_l1(fs[i], us_c[i]);

  fill_sides(rep, weak_norm(side.phi, side.mu, q).value, rhs);
  rep.sweep = weak_norm_sweep(side.phi, side.mu, q);
  return rep;
}

InequalityReport verify_extrapolation(std::span<const SampledFunction> fs,
                                      std::span<const WeightFamily> us,
                                      const WeightFamily& v, double alpha,
                                      CubeFamilyKind family,
                                      std::span<const double> p_ladder,
                                      bool override_guard) {
  if (fs.empty() || fs.size() != us.size())
    throw std::invalid_argument("verify_extrapolation: slot count mismatch");
  const Grid& grid = fs[0].grid;
  const int m = static_cast<int>(fs.size());
  const double q = derived_q(m, grid.dim, alpha);
  const double mq = m * q;

  InequalityReport rep;
  rep.theorem = TheoremId::ThmExtrap;
  rep.params = {m,    grid.dim, alpha, q, 0.0, 0.0, grid.cells_per_axis,
                grid.half_width, family, HypothesisMode::A};

  // Stated hypothesis: u_vec^{mq} in A_(1,...,1) and v^q in A_inf. The
  // theorem's companion statements use nu v^q or v^{mq}; all three A_inf
  // variants are evaluated side by side, only v^q gates.
  std::vector<Weight> us_c;
  for (const WeightFamily& u : us) us_c.push_back(sample(u, grid));
  Weight v_c = sample(v, grid);
  {
    std::vector<Weight> u_mq;
    for (const Weight& u : us_c) u_mq.push_back(pow_weight(u, mq));
    std::vector<double> ones(us.size(), 1.0);
    HypothesisComponent avec{multilinear_ap_constant(u_mq, ones, family),
                             true};
    avec.report.target = "u_vec^{mq} in A_(1,...,1)";
    rep.hypothesis.push_back(std::move(avec));

    HypothesisComponent vq{ainf_proxy(pow_weight(v_c, q), family, p_ladder),
                           true};
    vq.report.target = "v^q in A_inf";
    rep.hypothesis.push_back(std::move(vq));

    std::vector<Weight> all(us_c.begin(), us_c.end());
    all.push_back(v_c);
    std::vector<double> exps(all.size(), q);
    HypothesisComponent nuvq{
        ainf_proxy(product_weight(all, exps), family, p_ladder), false};
    nuvq.report.target = "nu*v^q in A_inf";
    rep.hypothesis.push_back(std::move(nuvq));

    HypothesisComponent vmq{ainf_proxy(pow_weight(v_c, mq), family, p_ladder),
                            false};
    vmq.report.target = "v^{mq} in A_inf";
    rep.hypothesis.push_back(std::move(vmq));
  }

  TargetSide side = integral_side(fs, us, v, alpha, q, override_guard);

  // M_alpha is piecewise constant per cell; its value at the shifted
  // target is the cell value, with v resampled there for comparability.
  SampledFunction mf = maximal(fs, {m, alpha, family});
  std::vector<double> v_t = sample_at_targets(v, grid);
  SampledFunction phi_m = quotient(grid, mf.values, v_t);

  fill_sides(rep, weak_norm(side.phi, side.mu, q).value,
             weak_norm(phi_m, side.mu, q).value);
  rep.sweep = weak_norm_sweep(side.phi, side.mu, q);
  return rep;
}

InequalityReport verify_moen(std::span<const SampledFunction> fs,
                             const WeightFamily& w, double alpha, double s,
                             CubeFamilyKind family,
                             std::span<const double> p_ladder,
                             bool override_guard) {
  if (fs.empty()) throw std::invalid_argument("verify_moen: no functions");
  if (!(s > 0)) throw std::invalid_argument("verify_moen: s must be positive");
  const Grid& grid = fs[0].grid;
  const int m = static_cast<int>(fs.size());

  InequalityReport rep;
  rep.theorem = TheoremId::MoenA1;
  rep.params = {m,
                grid.dim,
                alpha,
                derived_q(m, grid.dim, alpha),
                0.0,
                s,
                grid.cells_per_axis,
                grid.half_width,
                family,
                HypothesisMode::A};

  HypothesisComponent ainf{ainf_proxy(sample(w, grid), family, p_ladder),
                           true};
  ainf.report.target = "w in A_inf";
  rep.hypothesis.push_back(std::move(ainf));

  SampledFunction integral = fractional_integral(fs, alpha, override_guard);
  SampledFunction mf = maximal(fs, {m, alpha, family});
  std::vector<double> w_t = sample_at_targets(w, grid);

  long double lhs = 0.0L, rhs = 0.0L;
  for (std::int64_t c = 0; c < grid.cell_count(); ++c) {
    lhs += std::pow(integral.values[c], s) * w_t[c];
    rhs += std::pow(mf.values[c], s) * w_t[c];
  }
  const double cell = grid.cell_measure();
  fill_sides(rep, static_cast<double>(lhs) * cell,
             static_cast<double>(rhs) * cell);
  return rep;
}

InequalityReport verify_sawyer(const SampledFunction& f, const Weight& u,
                               const Weight& v, CubeFamilyKind family) {
  const Grid& grid = f.grid;
  if (grid.dim != 1)
    throw std::invalid_argument("verify_sawyer: stated for n = 1");
  if (!(u.grid() == grid) || !(v.grid() == grid))
    throw std::invalid_argument("verify_sawyer: mismatched grids");

  InequalityReport rep;
  rep.theorem = TheoremId::Sawyer11;
  rep.params = {1,   1,   0.0, 1.0, 0.0, 0.0, grid.cells_per_axis,
                grid.half_width, family, HypothesisMode::B};

  HypothesisComponent hu{a1_constant(u, family), true};
  hu.report.target = "u in A_1";
  rep.hypothesis.push_back(std::move(hu));
  HypothesisComponent hv{a1_constant(v, family), true};
  hv.report.target = "v in A_1";
  rep.hypothesis.push_back(std::move(hv));

  SampledFunction fv{grid, f.values};
  for (std::size_t c = 0; c < fv.values.size(); ++c)
    fv.values[c] *= v.values()[c];
  SampledFunction mfv = maximal(std::span(&fv, 1), {1, 0.0, family});
  SampledFunction phi = quotient(grid, mfv.values, v.values());

  std::vector<double> uv(u.values().size());
  for (std::size_t c = 0; c < uv.size(); ++c)
    uv[c] = u.values()[c] * v.values()[c];
  WeightedMeasure mu = make_measure(grid, uv);

  double rhs = weighted_l1(f, make_weight({grid, uv}));
  fill_sides(rep, weak_norm(phi, mu, 1.0).value, rhs);
  rep.sweep = weak_norm_sweep(phi, mu, 1.0);
  return rep;
}

InequalityReport verify_vector_valued(
    std::span<const std::vector<SampledFunction>> f_families,
    std::span<const WeightFamily> us, const WeightFamily& v, double alpha,
    double r, HypothesisMode mode, CubeFamilyKind family,
    std::span<const double> p_ladder, bool override_guard) {
  if (f_families.empty() || f_families.size() != us.size())
    throw std::invalid_argument("vector_valued: slot count mismatch");
  const int m = static_cast<int>(f_families.size());
  for (const auto& fam : f_families)
    if (fam.empty() || fam.size() > 8)
      throw std::invalid_argument("vector_valued: family sizes must be 1..8");
  const Grid& grid = f_families[0][0].grid;
  const double q = derived_q(m, grid.dim, alpha);
  if (!(r == 2.0 || (r > q && r < 2.0 && q < 2.0)))
    throw std::invalid_argument(
        "vector_valued: r must lie in (q, 2) with q < 2, or equal 2");

  InequalityReport rep;
  rep.theorem = TheoremId::VectorValued42;
  rep.params = {m,   grid.dim, alpha, q, r, 0.0, grid.cells_per_axis,
                grid.half_width, family, mode};

  std::vector<Weight> us_c;
  for (const WeightFamily& u : us) us_c.push_back(sample(u, grid));
  rep.hypothesis =
      hypothesis_check(us_c, sample(v, grid), alpha, mode, family, p_ladder);

  std::vector<double> v_t = sample_at_targets(v, grid);
  std::vector<std::vector<double>> u_t;
  for (const WeightFamily& u : us) u_t.push_back(sample_at_targets(u, grid));
  WeightedMeasure mu = make_measure(grid, nu_vq_density(u_t, v_t, q));

  // l^r aggregate of |I_alpha(tuple)/v| over all K_1 * ... * K_m tuples.
  std::vector<double> agg(grid.cell_count(), 0.0);
  std::vector<std::size_t> index(m, 0);
  while (true) {
    std::vector<SampledFunction> tuple;
    tuple.reserve(m);
    for (int i = 0; i < m; ++i) tuple.push_back(f_families[i][index[i]]);
    SampledFunction integral =
        fractional_integral(tuple, alpha, override_guard);
    for (std::int64_t c = 0; c < grid.cell_count(); ++c)
      agg[c] += std::pow(integral.values[c] / v_t[c], r);
    int slot = m - 1;
    while (slot >= 0 && ++index[slot] == f_families[slot].size()) {
      index[slot] = 0;
      --slot;
    }
    if (slot < 0) break;
  }
  SampledFunction aggregate{grid, std::move(agg)};
  for (double& x : aggregate.values) x = std::pow(x, 1.0 / r);

  double rhs = 1.0;
  for (int i = 0; i < m; ++i) {
    SampledFunction slot_agg{grid, std::vector<double>(grid.cell_count(), 0.0)};
    for (const SampledFunction& f : f_families[i])
      for (std::int64_t c = 0; c < grid.cell_count(); ++c)
        slot_agg.values[c] += std::pow(f.values[c], r);
    for (double& x : slot_agg.values) x = std::pow(x, 1.0 / r);
    rhs *= weighted_l1(slot_agg, us_c[i]);
  }

  fill_sides(rep, weak_norm(aggregate, mu, q).value, rhs);
  rep.sweep = weak_norm_sweep(aggregate, mu, q);
  return rep;
}

ProofChainResult proof_chain_check(std::span<const SampledFunction> fs,
                                   std::span<const Weight> us, const Weight& v,
                                   double alpha, CubeFamilyKind family) {
  if (fs.empty() || fs.size() != us.size())
    throw std::invalid_argument("proof_chain: slot count mismatch");
  const Grid& grid = fs[0].grid;
  const int m = static_cast<int>(fs.size());
  const double q = derived_q(m, grid.dim, alpha);
  const double mq = m * q;

  SampledFunction mf = maximal(fs, {m, alpha, family});
  SampledFunction phi = quotient(grid, mf.values, v.values());

  double mass_factor = 1.0;
  bool degenerate = false;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    double integral = weighted_l1(fs[i], us[i]);
    if (integral == 0.0 && alpha > 0) degenerate = true;
    mass_factor *= std::pow(integral, alpha / (m * grid.dim));
  }

  ProofChainResult res;
  if (degenerate) {
    bool empty = std::all_of(phi.values.begin(), phi.values.end(),
                             [](double x) { return x == 0.0; });
    res.status = empty ? ReportStatus::Degenerate : ReportStatus::Violation;
    return res;
  }

  std::vector<SampledFunction> gs;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    SampledFunction g{grid, fs[i].values};
    const Weight dual = pow_weight(us[i], 1.0 - mq);
    for (std::size_t c = 0; c < g.values.size(); ++c)
      g.values[c] *= dual.values()[c];
    gs.push_back(std::move(g));
  }
  SampledFunction mg = maximal(gs, {m, 0.0, family});
  SampledFunction psi = quotient(grid, mg.values, pow_weight(v, mq).values());

  std::vector<double> levels = phi.values;
  std::sort(levels.begin(), levels.end(), std::greater<>());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  for (double lambda : levels) {
    if (!(lambda > 0)) break;
    const double transformed = std::pow(lambda / mass_factor, mq);
    for (std::int64_t c = 0; c < grid.cell_count(); ++c) {
      if (phi.values[c] > lambda &&
          !(psi.values[c] > transformed * (1.0 - 1e-12))) {
        double disc = (transformed - psi.values[c]) / transformed;
        res.max_discrepancy = std::max(res.max_discrepancy, disc);
        res.status = ReportStatus::Violation;
      }
    }
  }
  return res;
}

InequalityReport verify_bcp_p1(const SampledFunction& f, const Weight& u,
                               const Weight& v, double alpha,
                               CubeFamilyKind family) {
  const Grid& grid = f.grid;
  const double q =
      static_cast<double>(grid.dim) / (grid.dim - alpha); // m = 1 shape

  InequalityReport rep;
  rep.theorem = TheoremId::ThmMax;
  rep.params = {1,   grid.dim, alpha, q, 0.0, 0.0, grid.cells_per_axis,
                grid.half_width, family, HypothesisMode::B};

  SampledFunction mf = single_fractional_maximal(f, alpha, family);
  SampledFunction phi = quotient(grid, mf.values, v.values());

  std::vector<double> density(grid.cell_count());
  for (std::int64_t c = 0; c < grid.cell_count(); ++c)
    density[c] = std::pow(u.values()[c], q) * std::pow(v.values()[c], q);
  WeightedMeasure mu = make_measure(grid, density);

  fill_sides(rep, weak_norm(phi, mu, q).value, weighted_l1(f, u));
  rep.sweep = weak_norm_sweep(phi, mu, q);
  return rep;
}

SampledFunction FunctionSpec::sample(const Grid& grid) const {
  std::vector<double> values(grid.cell_count(), constant);
  for (std::int64_t c = 0; c < grid.cell_count(); ++c) {
    Point p = grid.cell_center(c);
    for (const Bump& b : bumps)
      if (b.box.contains(p, grid.dim)) values[c] += b.height;
  }
  return make_sampled(grid, std::move(values));
}

InequalityReport evaluate_instance(const TheoremInstance& inst, int grid_cells,
                                   std::span<const double> p_ladder) {
  const Grid grid = build_grid(inst.dim, inst.half_width, grid_cells);

  std::vector<SampledFunction> fs;
  for (const FunctionSpec& spec : inst.functions)
    fs.push_back(spec.sample(grid));

  auto sampled_u = [&] {
    std::vector<Weight> us;
    for (const WeightFamily& u : inst.u) us.push_back(sample(u, grid));
    return us;
  };

  switch (inst.theorem) {
    case TheoremId::ThmMax: {
      auto us = sampled_u();
      return verify_theorem_max(fs, us, sample(inst.v, grid), inst.alpha,
                                inst.mode, inst.family, p_ladder);
    }
    case TheoremId::ThmIMax:
      return verify_theorem_imax(fs, inst.u, inst.v, inst.alpha, inst.mode,
                                 inst.family, p_ladder, inst.override_guards);
    case TheoremId::ThmExtrap:
      return verify_extrapolation(fs, inst.u, inst.v, inst.alpha, inst.family,
                                  p_ladder, inst.override_guards);
    case TheoremId::MoenA1:
      return verify_moen(fs, inst.moen_w, inst.alpha, inst.moen_s, inst.family,
                         p_ladder, inst.override_guards);
    case TheoremId::Sawyer11: {
      auto us = sampled_u();
      if (us.size() != 1 || fs.size() != 1)
        throw std::invalid_argument("Sawyer11 instance needs m = 1");
      return verify_sawyer(fs[0], us[0], sample(inst.v, grid), inst.family);
    }
    case TheoremId::VectorValued42: {
      std::vector<std::vector<SampledFunction>> families;
      for (const auto& slot : inst.function_families) {
        std::vector<SampledFunction> fam;
        for (const FunctionSpec& spec : slot) fam.push_back(spec.sample(grid));
        families.push_back(std::move(fam));
      }
      return verify_vector_valued(families, inst.u, inst.v, inst.alpha, inst.r,
                                  inst.mode, inst.family, p_ladder,
                                  inst.override_guards);
    }
    case TheoremId::LemmaPointwise: {
      auto us = sampled_u();
      PointwiseLemmaResult lemma =
          verify_lemma_pointwise(fs, us, inst.alpha, inst.family);
      InequalityReport rep;
      rep.theorem = TheoremId::LemmaPointwise;
      const int m = static_cast<int>(fs.size());
      rep.params = {m, inst.dim, inst.alpha, derived_q(m, inst.dim, inst.alpha),
                    0.0, 0.0, grid_cells, inst.half_width, inst.family,
                    inst.mode};
      rep.lhs = lemma.lhs_at_argmax;
      rep.rhs = lemma.rhs_at_argmax;
      rep.empirical_constant = lemma.max_violation;
      rep.status = lemma.status;
      return rep;
    }
    case TheoremId::Thm23Char: {
      auto us = sampled_u();
      std::vector<double> ones(us.size(), 1.0);
      Theorem23Report t23 = check_theorem23(us, ones, inst.family);
      InequalityReport rep;
      rep.theorem = TheoremId::Thm23Char;
      rep.params = {static_cast<int>(us.size()), inst.dim, 0.0, 1.0, 0.0, 0.0,
                    grid_cells, inst.half_width, inst.family, inst.mode};
      rep.hypothesis.push_back({t23.avec, true});
      rep.hypothesis.push_back({t23.nu, true});
      for (const auto& comp : t23.components)
        rep.hypothesis.push_back({comp, true});
      rep.lhs = rep.rhs = rep.empirical_constant = t23.avec.constant;
      rep.status = ReportStatus::OK;
      return rep;
    }
  }
  throw std::logic_error("unreachable");
}

RefinedReport run_refinement(const TheoremInstance& inst,
                             std::span<const int> grid_sizes,
                             const StabilityProtocol& protocol,
                             std::span<const double> p_ladder) {
  if (grid_sizes.empty())
    throw std::invalid_argument("run_refinement: empty grid ladder");
  RefinedReport out;
  out.grid_sizes.assign(grid_sizes.begin(), grid_sizes.end());
  for (int n : grid_sizes)
    out.per_grid.push_back(evaluate_instance(inst, n, p_ladder));

  for (const InequalityReport& rep : out.per_grid)
    out.constants.push_back(rep.empirical_constant);
  out.constant_verdict = assess_stability(out.constants, protocol);

  // Hypothesis components line up across grids by construction.
  const auto& finest = out.per_grid.back();
  out.hypothesis = finest.hypothesis;
  for (std::size_t j = 0; j < out.hypothesis.size(); ++j) {
    std::vector<double> series;
    for (const InequalityReport& rep : out.per_grid)
      series.push_back(rep.hypothesis[j].report.constant);
    out.hypothesis[j].report.sweep_constants = series;
    out.hypothesis[j].report.sweep_grids = out.grid_sizes;
    out.hypothesis[j].report.verdict = assess_stability(series, protocol);
  }
  // Single-grid ladders cannot be assessed; only an assessed non-stable
  // verdict flags the hypothesis.
  out.hypothesis_stable = true;
  for (const HypothesisComponent& comp : out.hypothesis)
    if (comp.gating && comp.report.verdict != StabilityVerdict::Stable &&
        comp.report.verdict != StabilityVerdict::Unassessed)
      out.hypothesis_stable = false;

  // Merge statuses: violations dominate, then hypothesis instability,
  // then degeneracy.
  out.status = ReportStatus::OK;
  bool any_degenerate = false;
  for (const InequalityReport& rep : out.per_grid) {
    if (rep.status == ReportStatus::Violation)
      out.status = ReportStatus::Violation;
    if (rep.status == ReportStatus::Degenerate) any_degenerate = true;
  }
  if (inst.theorem == TheoremId::Thm23Char) {
    // Characterization: A_P stability must agree with the component side.
    bool avec_stable =
        out.hypothesis[0].report.verdict == StabilityVerdict::Stable;
    bool comps_stable = true;
    for (std::size_t j = 1; j < out.hypothesis.size(); ++j)
      if (out.hypothesis[j].report.verdict != StabilityVerdict::Stable)
        comps_stable = false;
    if (avec_stable != comps_stable) out.status = ReportStatus::Violation;
    return out;
  }
  if (out.status == ReportStatus::OK && !out.hypothesis_stable)
    out.status = ReportStatus::HypothesisUnstable;
  if (out.status == ReportStatus::OK && any_degenerate)
    out.status = ReportStatus::Degenerate;
  return out;
}

} // namespace weaklab
