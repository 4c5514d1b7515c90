#include "flatchain/sizefunc.hpp"

#include <cmath>
#include <limits>

#include "flatchain/errors.hpp"

namespace flatchain {

std::string to_string(WeightKind kind) {
  switch (kind) {
    case WeightKind::FlatSize:
      return "flat-size";
    case WeightKind::GroupNorm:
      return "group-norm";
    case WeightKind::Table:
      return "table";
  }
  return "?";
}

WeightFunction WeightFunction::flat_size() { return WeightFunction(WeightKind::FlatSize); }
WeightFunction WeightFunction::group_norm() { return WeightFunction(WeightKind::GroupNorm); }

WeightFunction WeightFunction::table(std::map<Rational, double> entries) {
  for (const auto& [k, v] : entries)
    if (std::isnan(v) || v < 0) throw InputError("weight table value for " + k.get_str() + " is not in [0, inf]");
  WeightFunction w(WeightKind::Table);
  w.table_ = std::move(entries);
  return w;
}

std::optional<double> WeightFunction::evaluate(const GroupElement& g) const {
  switch (kind_) {
    case WeightKind::FlatSize:
      return g.is_zero() ? 0.0 : 1.0;
    case WeightKind::GroupNorm:
      return norm(g);
    case WeightKind::Table: {
      auto it = table_.find(g.value());
      if (it == table_.end()) return std::nullopt;
      return it->second;
    }
  }
  return std::nullopt;
}

double WeightFunction::operator()(const GroupElement& g) const {
  auto v = evaluate(g);
  if (!v) throw InputError("weight table has no entry for coefficient " + g.to_string());
  return *v;
}

WeightReport validate_weight(const WeightFunction& phi, const std::vector<GroupElement>& samples) {
  WeightReport rep;
  auto fail = [&](std::string prop, std::string detail) {
    rep.passed = false;
    rep.violations.push_back({std::move(prop), std::move(detail)});
  };
  if (!samples.empty()) {
    auto z = phi.evaluate(GroupElement::zero(samples.front().descriptor()));
    if (z && *z != 0.0) fail("zero", "phi(0) = " + std::to_string(*z));
  }
  for (const auto& g : samples) {
    auto a = phi.evaluate(g);
    auto b = phi.evaluate(-g);
    if (a && b && *a != *b)
      fail("even", "phi(" + g.to_string() + ") = " + std::to_string(*a) + " but phi(" + (-g).to_string() +
                       ") = " + std::to_string(*b));
  }
  for (const auto& g : samples)
    for (const auto& h : samples) {
      auto a = phi.evaluate(g), b = phi.evaluate(h), c = phi.evaluate(g + h);
      if (!a || !b || !c) continue;
      ++rep.pairs_checked;
      if (*c > *a + *b + kNormTolerance)
        fail("subadditive", "phi(" + g.to_string() + " + " + h.to_string() + ") = " + std::to_string(*c) +
                                " > " + std::to_string(*a) + " + " + std::to_string(*b));
    }
  return rep;
}

double phi_mass(const Chain& a, const WeightFunction& phi) {
  ExactSum total;
  for (const auto& t : a.terms()) {
    const double w = phi(t.coeff);
    if (w == 0.0) continue;
    total.add(w * t.simplex.volume());
  }
  return total.value();
}

double flat_size(const Chain& a) {
  ExactSum total;
  for (const auto& t : a.terms())
    if (!t.coeff.is_zero()) total.add(t.simplex.volume());
  return total.value();
}

GroupClassification classify_phi_rectifiability(const GroupDescriptor& d, const WeightFunction& phi) {
  switch (phi.kind()) {
    case WeightKind::FlatSize:
      return {true,
              "phi_s(g - h) >= 1 for g != h, so the metric phi(g - h) + |g - h| admits no nonconstant "
              "continuous path"};
    case WeightKind::GroupNorm: {
      auto c = classify_group(d);
      c.rationale = "metric is twice the group norm; " + c.rationale;
      return c;
    }
    case WeightKind::Table:
      break;
  }
  throw Unsupported("rectifiability classification is not decidable for table weights");
}

}  // namespace flatchain
