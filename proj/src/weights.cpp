#include "weaklab/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace weaklab {

SampledFunction make_sampled(const Grid& grid, std::vector<double> values) {
  if (static_cast<std::int64_t>(values.size()) != grid.cell_count())
    throw std::invalid_argument("sampled function: value count mismatch");
  for (double v : values)
    if (!std::isfinite(v) || v < 0)
      throw std::invalid_argument(
          "sampled function: values must be finite and nonnegative");
  return {grid, std::move(values)};
}

Weight make_weight(SampledFunction fn) {
  for (double v : fn.values)
    if (!(v > 0) || !std::isfinite(v))
      throw std::invalid_argument(
          "weight: values must be strictly positive and finite");
  return {std::move(fn)};
}

Weight pow_weight(const Weight& w, double exponent) {
  SampledFunction out{w.grid(), w.values()};
  for (double& v : out.values) v = std::pow(v, exponent);
  return make_weight(std::move(out));
}

Weight product_weight(std::span<const Weight> ws,
                      std::span<const double> exponents) {
  if (ws.empty() || ws.size() != exponents.size())
    throw std::invalid_argument("product weight: size mismatch");
  for (const Weight& w : ws)
    if (!(w.grid() == ws[0].grid()))
      throw std::invalid_argument("product weight: mismatched grids");
  SampledFunction out{ws[0].grid(),
                      std::vector<double>(ws[0].values().size(), 1.0)};
  for (std::size_t i = 0; i < ws.size(); ++i)
    for (std::size_t c = 0; c < out.values.size(); ++c)
      out.values[c] *= std::pow(ws[i].values()[c], exponents[i]);
  return make_weight(std::move(out));
}

WeightFamily WeightFamily::constant(double value) {
  WeightFamily f;
  f.kind_ = Kind::Constant;
  f.value_ = value;
  return f;
}

WeightFamily WeightFamily::power(double exponent) {
  WeightFamily f;
  f.kind_ = Kind::Power;
  f.exponent_ = exponent;
  return f;
}

WeightFamily WeightFamily::product(std::vector<WeightFamily> factors) {
  WeightFamily f;
  f.kind_ = Kind::Product;
  f.factors_ = std::move(factors);
  return f;
}

WeightFamily WeightFamily::piecewise(
    std::vector<std::pair<Box, WeightFamily>> pieces) {
  WeightFamily f;
  f.kind_ = Kind::Piecewise;
  f.pieces_ = std::move(pieces);
  return f;
}

WeightFamily WeightFamily::pow(double e) const {
  switch (kind_) {
    case Kind::Constant:
      return constant(std::pow(value_, e));
    case Kind::Power:
      return power(exponent_ * e);
    case Kind::Product: {
      std::vector<WeightFamily> fs;
      fs.reserve(factors_.size());
      for (const auto& f : factors_) fs.push_back(f.pow(e));
      return product(std::move(fs));
    }
    case Kind::Piecewise: {
      std::vector<std::pair<Box, WeightFamily>> ps;
      ps.reserve(pieces_.size());
      for (const auto& [box, fam] : pieces_) ps.emplace_back(box, fam.pow(e));
      return piecewise(std::move(ps));
    }
  }
  throw std::logic_error("unreachable");
}

double WeightFamily::evaluate(const Point& p, int dim) const {
  switch (kind_) {
    case Kind::Constant:
      return value_;
    case Kind::Power: {
      double r = dim == 1 ? std::abs(p[0]) : std::hypot(p[0], p[1]);
      return std::pow(r, exponent_);
    }
    case Kind::Product: {
      double v = 1.0;
      for (const auto& f : factors_) v *= f.evaluate(p, dim);
      return v;
    }
    case Kind::Piecewise: {
      for (const auto& [box, fam] : pieces_)
        if (box.contains(p, dim)) return fam.evaluate(p, dim);
      throw std::invalid_argument("piecewise family: point not covered");
    }
  }
  throw std::logic_error("unreachable");
}

std::optional<double> WeightFamily::power_exponent() const {
  switch (kind_) {
    case Kind::Constant:
      return 0.0;
    case Kind::Power:
      return exponent_;
    case Kind::Product: {
      double total = 0.0;
      for (const auto& f : factors_) {
        auto e = f.power_exponent();
        if (!e) return std::nullopt;
        total += *e;
      }
      return total;
    }
    case Kind::Piecewise:
      return std::nullopt;
  }
  return std::nullopt;
}

bool WeightFamily::locally_integrable(int dim) const {
  if (kind_ == Kind::Piecewise) {
    for (const auto& [box, fam] : pieces_)
      if (!fam.locally_integrable(dim)) return false;
    return true;
  }
  auto e = power_exponent();
  return e && *e > -static_cast<double>(dim);
}

bool WeightFamily::a1_eligible(int dim) const {
  auto e = power_exponent();
  return e && *e > -static_cast<double>(dim) && *e <= 0.0;
}

void WeightFamily::validate_for_sampling(int dim) const {
  switch (kind_) {
    case Kind::Constant:
      if (!(value_ > 0) || !std::isfinite(value_))
        throw std::invalid_argument("weight family: constant must be > 0");
      return;
    case Kind::Power:
      if (!std::isfinite(exponent_))
        throw std::invalid_argument("weight family: non-finite exponent");
      if (exponent_ < -static_cast<double>(dim))
        throw std::invalid_argument(
            "weight family: |x|^a with a < -n is not locally integrable");
      return;
    case Kind::Product: {
      for (const auto& f : factors_) f.validate_for_sampling(dim);
      auto e = power_exponent();
      if (e && *e < -static_cast<double>(dim))
        throw std::invalid_argument(
            "weight family: product exponent below -n");
      return;
    }
    case Kind::Piecewise:
      if (pieces_.empty())
        throw std::invalid_argument("weight family: empty piecewise");
      for (const auto& [box, fam] : pieces_) fam.validate_for_sampling(dim);
      return;
  }
}

bool WeightFamily::operator==(const WeightFamily& o) const {
  if (kind_ != o.kind_) return false;
  switch (kind_) {
    case Kind::Constant:
      return value_ == o.value_;
    case Kind::Power:
      return exponent_ == o.exponent_;
    case Kind::Product:
      return factors_ == o.factors_;
    case Kind::Piecewise:
      return pieces_ == o.pieces_;
  }
  return false;
}

Weight sample(const WeightFamily& family, const Grid& grid) {
  family.validate_for_sampling(grid.dim);
  std::vector<double> values(grid.cell_count());
  for (std::int64_t i = 0; i < grid.cell_count(); ++i)
    values[i] = family.evaluate(grid.cell_center(i), grid.dim);
  return make_weight({grid, std::move(values)});
}

std::vector<double> sample_at_targets(const WeightFamily& family,
                                      const Grid& grid) {
  family.validate_for_sampling(grid.dim);
  std::vector<double> values(grid.cell_count());
  for (std::int64_t i = 0; i < grid.cell_count(); ++i) {
    values[i] = family.evaluate(grid.target_point(i), grid.dim);
    if (!(values[i] > 0) || !std::isfinite(values[i]))
      throw std::invalid_argument("weight family: nonpositive sample");
  }
  return values;
}

std::string to_string(StabilityVerdict v) {
  switch (v) {
    case StabilityVerdict::Stable: return "stable";
    case StabilityVerdict::Divergent: return "divergent";
    case StabilityVerdict::Inconclusive: return "inconclusive";
    case StabilityVerdict::Unassessed: return "unassessed";
  }
  return "unassessed";
}

StabilityVerdict assess_stability(std::span<const double> constants,
                                  const StabilityProtocol& protocol) {
  if (constants.size() < 2) return StabilityVerdict::Unassessed;
  bool stable = true, divergent = true;
  for (std::size_t i = 1; i < constants.size(); ++i) {
    double prev = constants[i - 1], cur = constants[i];
    if (!(prev > 0) || !(cur > 0)) return StabilityVerdict::Inconclusive;
    double ratio = cur / prev;
    if (std::max(ratio, 1.0 / ratio) > protocol.stable_ratio) stable = false;
    if (ratio < protocol.divergent_ratio) divergent = false;
  }
  if (stable) return StabilityVerdict::Stable;
  if (divergent) return StabilityVerdict::Divergent;
  return StabilityVerdict::Inconclusive;
}

std::string to_string(WeightClass c) {
  switch (c) {
    case WeightClass::A1: return "A1";
    case WeightClass::Ap: return "Ap";
    case WeightClass::AinfProxy: return "Ainf_proxy";
    case WeightClass::AvecP: return "AvecP";
  }
  return "A1";
}

MuckenhouptReport a1_constant(const Weight& w, CubeFamilyKind family) {
  PrefixTable table(w.grid(), w.values());
  MuckenhouptReport rep;
  rep.cls = WeightClass::A1;
  rep.family = family;
  rep.constant = 0.0;
  for (const Cube& q : enumerate_cubes(w.grid(), family)) {
    double c = table.cube_average(q) / table.cube_min(q);
    if (c > rep.constant) {
      rep.constant = c;
      rep.attaining_cube = q;
    }
  }
  return rep;
}

MuckenhouptReport ap_constant(const Weight& w, double p,
                              CubeFamilyKind family) {
  if (!(p > 1))
    throw std::invalid_argument("ap_constant requires p > 1 (use a1_constant)");
  const double dual = 1.0 - p / (p - 1.0); // 1 - p'
  PrefixTable table(w.grid(), w.values());
  PrefixTable dual_table(w.grid(), pow_weight(w, dual).values());
  MuckenhouptReport rep;
  rep.cls = WeightClass::Ap;
  rep.p = p;
  rep.family = family;
  rep.constant = 0.0;
  for (const Cube& q : enumerate_cubes(w.grid(), family)) {
    double c =
        table.cube_average(q) * std::pow(dual_table.cube_average(q), p - 1.0);
    if (c > rep.constant) {
      rep.constant = c;
      rep.attaining_cube = q;
    }
  }
  return rep;
}

MuckenhouptReport ainf_proxy(const Weight& w, CubeFamilyKind family,
                             std::span<const double> p_ladder) {
  if (p_ladder.empty())
    throw std::invalid_argument("ainf_proxy: empty p ladder");
  for (double p : p_ladder)
    if (!(p > 1)) throw std::invalid_argument("ainf_proxy: ladder p must be > 1");
  MuckenhouptReport best;
  bool first = true;
  for (double p : p_ladder) {
    MuckenhouptReport rep = ap_constant(w, p, family);
    if (first || rep.constant < best.constant) {
      best = rep;
      first = false;
    }
  }
  best.cls = WeightClass::AinfProxy;
  return best;
}

MuckenhouptReport multilinear_ap_constant(std::span<const Weight> ws,
                                          std::span<const double> pvec,
                                          CubeFamilyKind family) {
  if (ws.empty() || ws.size() != pvec.size())
    throw std::invalid_argument("multilinear A_P: size mismatch");
  const Grid& grid = ws[0].grid();
  for (const Weight& w : ws)
    if (!(w.grid() == grid))
      throw std::invalid_argument("multilinear A_P: mismatched grids");
  double inv_p = 0.0;
  for (double pi : pvec) {
    if (!(pi >= 1))
      throw std::invalid_argument("multilinear A_P: exponents must be >= 1");
    inv_p += 1.0 / pi;
  }
  const double p = 1.0 / inv_p;

  // nu_w = prod w_i^{p/p_i}, computed cellwise.
  std::vector<double> exps(ws.size());
  for (std::size_t i = 0; i < ws.size(); ++i) exps[i] = p / pvec[i];
  Weight nu = product_weight(ws, exps);
  PrefixTable nu_table(grid, nu.values());

  // Per-slot structures: dual-power average for p_i > 1, min for p_i = 1.
  std::vector<PrefixTable> slot_tables;
  slot_tables.reserve(ws.size());
  for (std::size_t i = 0; i < ws.size(); ++i) {
    if (pvec[i] > 1)
      slot_tables.emplace_back(
          grid, pow_weight(ws[i], 1.0 - pvec[i] / (pvec[i] - 1.0)).values());
    else
      slot_tables.emplace_back(grid, ws[i].values());
  }

  MuckenhouptReport rep;
  rep.cls = WeightClass::AvecP;
  rep.exponents.assign(pvec.begin(), pvec.end());
  rep.family = family;
  rep.constant = 0.0;
  for (const Cube& q : enumerate_cubes(grid, family)) {
    double c = std::pow(nu_table.cube_average(q), inv_p);
    for (std::size_t i = 0; i < ws.size(); ++i) {
      if (pvec[i] > 1) {
        double dual_exp = 1.0 - 1.0 / pvec[i]; // 1/p_i'
        c *= std::pow(slot_tables[i].cube_average(q), dual_exp);
      } else {
        c /= slot_tables[i].cube_min(q);
      }
    }
    if (c > rep.constant) {
      rep.constant = c;
      rep.attaining_cube = q;
    }
  }
  return rep;
}

Theorem23Report check_theorem23(std::span<const Weight> ws,
                                std::span<const double> pvec,
                                CubeFamilyKind family) {
  Theorem23Report out;
  out.avec = multilinear_ap_constant(ws, pvec, family);
  out.avec.target = "A_P(w_vec)";

  const double m = static_cast<double>(ws.size());
  double inv_p = 0.0;
  for (double pi : pvec) inv_p += 1.0 / pi;
  const double p = 1.0 / inv_p;
  const double mp = m * p;

  std::vector<double> exps(ws.size());
  for (std::size_t i = 0; i < ws.size(); ++i) exps[i] = p / pvec[i];
  Weight nu = product_weight(ws, exps);
  out.nu = mp > 1 ? ap_constant(nu, mp, family) : a1_constant(nu, family);
  out.nu.target = "nu_w";

  for (std::size_t i = 0; i < ws.size(); ++i) {
    MuckenhouptReport comp;
    if (pvec[i] > 1) {
      double dual = 1.0 - pvec[i] / (pvec[i] - 1.0);
      double mpi_dual = m * pvec[i] / (pvec[i] - 1.0);
      comp = ap_constant(pow_weight(ws[i], dual), mpi_dual, family);
      comp.target = "w" + std::to_string(i + 1) + "^{1-p_i'}";
    } else {
      comp = a1_constant(pow_weight(ws[i], 1.0 / m), family);
      comp.target = "w" + std::to_string(i + 1) + "^{1/m}";
    }
    out.components.push_back(std::move(comp));
  }
  return out;
}

MuckenhouptReport refine_constant(
    const std::function<MuckenhouptReport(const Grid&)>& eval, int dim,
    double half_width, std::span<const int> grid_sizes,
    const StabilityProtocol& protocol) {
  if (grid_sizes.empty())
    throw std::invalid_argument("refine_constant: empty grid ladder");
  MuckenhouptReport finest;
  std::vector<double> constants;
  constants.reserve(grid_sizes.size());
  for (int n : grid_sizes) {
    finest = eval(build_grid(dim, half_width, n));
    constants.push_back(finest.constant);
  }
  finest.sweep_constants = constants;
  finest.sweep_grids.assign(grid_sizes.begin(), grid_sizes.end());
  finest.verdict = assess_stability(constants, protocol);
  return finest;
}

} // namespace weaklab
