#include "flatchain/zerochain.hpp"

#include <algorithm>
#include <cmath>

#include "flatchain/errors.hpp"

namespace flatchain {

ZeroChain::ZeroChain(GroupDescriptor group, std::size_t ambient) : group_(std::move(group)), ambient_(ambient) {}

ZeroChain ZeroChain::from_atoms(GroupDescriptor group, std::size_t ambient, std::vector<Atom> atoms,
                                std::vector<std::string>* warnings) {
  ZeroChain out(std::move(group), ambient);
  std::map<Point, GroupElement> merged;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    auto& a = atoms[i];
    if (!(a.coeff.descriptor() == out.group_)) throw DescriptorMismatch("atom " + std::to_string(i) + " in wrong group");
    if (a.point.size() != ambient)
      throw DimensionMismatch("atom " + std::to_string(i) + " is not a point of R^" + std::to_string(ambient));
    if (a.coeff.is_zero()) {
      if (warnings) warnings->push_back("atom " + std::to_string(i) + " has zero coefficient; dropped");
      continue;
    }
    auto it = merged.find(a.point);
    if (it == merged.end())
      merged.emplace(std::move(a.point), a.coeff);
    else
      it->second += a.coeff;
  }
  for (auto& [p, g] : merged)
    if (!g.is_zero()) out.atoms_.push_back({g, p});
  return out;
}

ZeroChain ZeroChain::from_chain(const Chain& a) {
  if (a.dim() != 0) throw DimensionMismatch("expected a 0-chain, got dimension " + std::to_string(a.dim()));
  std::vector<Atom> atoms;
  for (const auto& t : a.terms()) atoms.push_back({t.coeff, t.simplex.vertices().front()});
  return from_atoms(a.group(), a.ambient(), std::move(atoms));
}

Chain ZeroChain::to_chain() const {
  std::vector<Term> terms;
  for (const auto& a : atoms_) terms.push_back({a.coeff, Simplex({a.point})});
  return Chain::from_terms(group_, ambient_, 0, std::move(terms));
}

bool operator==(const ZeroChain& a, const ZeroChain& b) {
  if (!(a.group_ == b.group_) || a.ambient_ != b.ambient_ || a.atoms_.size() != b.atoms_.size()) return false;
  for (std::size_t i = 0; i < a.atoms_.size(); ++i)
    if (!(a.atoms_[i].coeff == b.atoms_[i].coeff) || a.atoms_[i].point != b.atoms_[i].point) return false;
  return true;
}

ZeroChain add(const ZeroChain& a, const ZeroChain& b) {
  if (!(a.group() == b.group())) throw DescriptorMismatch("adding 0-chains over different groups");
  if (a.ambient() != b.ambient()) throw DimensionMismatch("adding 0-chains in different ambient spaces");
  auto atoms = a.atoms();
  atoms.insert(atoms.end(), b.atoms().begin(), b.atoms().end());
  return ZeroChain::from_atoms(a.group(), a.ambient(), std::move(atoms));
}

ZeroChain subtract(const ZeroChain& a, const ZeroChain& b) {
  auto neg = b.atoms();
  for (auto& x : neg) x.coeff = -x.coeff;
  return add(a, ZeroChain::from_atoms(b.group(), b.ambient(), std::move(neg)));
}

double mass(const ZeroChain& a) {
  ExactSum s;
  for (const auto& x : a.atoms()) s.add(norm(x.coeff));
  return s.value();
}

GroupElement chi(const ZeroChain& a) {
  GroupElement total = GroupElement::zero(a.group());
  for (const auto& x : a.atoms()) total += x.coeff;
  return total;
}

GroupElement chi(const Chain& a) {
  if (a.dim() != 0) throw DimensionMismatch("chi is defined on 0-chains");
  GroupElement total = GroupElement::zero(a.group());
  for (const auto& t : a.terms()) total += t.coeff;
  return total;
}

ConeBound cone_flat_bound(const ZeroChain& a, const Point& vertex) {
  if (vertex.size() != a.ambient()) throw DimensionMismatch("cone vertex in wrong dimension");
  std::vector<Term> segments;
  for (const auto& x : a.atoms())
    if (x.point != vertex) segments.push_back({x.coeff, Simplex({vertex, x.point})});
  ConeBound out{0.0, Chain::from_terms(a.group(), a.ambient(), 1, std::move(segments))};
  const GroupElement total = chi(a);
  Chain expected = a.to_chain();
  if (!total.is_zero()) expected = subtract_chains(expected, single_term(total, {vertex}));
  if (!(boundary(out.cone) == expected)) throw InvariantViolation("cone boundary differs from A - chi(A)[x]");
  ExactSum s;
  s.add(norm(total));
  s.add(mass(out.cone));
  out.bound = s.value();
  return out;
}

std::vector<Atom> canonical_representation(const ZeroChain& a) {
  std::vector<Atom> out = a.atoms();
  std::stable_sort(out.begin(), out.end(), [](const Atom& x, const Atom& y) {
    int c = compare_norms(x.coeff, y.coeff);
    if (c != 0) return c > 0;
    return x.point < y.point;
  });
  return out;
}

// ------------------------------------------------------------ dyadic cubes

namespace {

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

CubeIndex dyadic_index(const Point& x, int level) {
  CubeIndex idx;
  Integer scale = Integer(1) << level;
  for (const auto& c : x) {
    // half-open (i s, (i+1) s]: i = ceil(c / s) - 1
    Rational scaled = c * Rational(scale);
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    q -= 1;
    if (!q.fits_slong_p()) throw InputError("dyadic index out of range");
    idx.push_back(q.get_si());
  }
  return idx;
}

Point cube_center(const CubeIndex& index, int level) {
  Point p;
  Integer denom = Integer(1) << (level + 1);
  for (long i : index) p.push_back(make_rational(Integer(2 * i + 1), denom));
  return p;
}

CubeIndex parent_index(const CubeIndex& index, int fine, int coarse) {
  if (coarse > fine) throw InputError("parent level finer than child level");
  const long factor = 1L << (fine - coarse);
  CubeIndex out;
  for (long i : index) out.push_back(floor_div(i, factor));
  return out;
}

GMeasure::GMeasure(GroupDescriptor group, std::size_t ambient, int level)
    : group_(group), ambient_(ambient), level_(level), atoms_(group, ambient) {
  if (level < 0 || level > 40) throw InputError("dyadic level must lie in [0, 40]");
}

GMeasure GMeasure::from_parts(GroupDescriptor group, std::size_t ambient, int level,
                              std::map<CubeIndex, GroupElement> cubes, std::vector<Atom> atoms) {
  GMeasure m(group, ambient, level);
  for (auto& [idx, g] : cubes) {
    if (idx.size() != ambient) throw DimensionMismatch("cube index of wrong dimension");
    if (!(g.descriptor() == group)) throw DescriptorMismatch("cube value in wrong group");
    if (!g.is_zero()) m.cubes_.emplace(idx, g);
  }
  m.atoms_ = ZeroChain::from_atoms(group, ambient, std::move(atoms));
  return m;
}

std::map<CubeIndex, GroupElement> GMeasure::aggregate(int m) const {
  if (m < 0) throw InputError("negative dyadic level");
  if (m > level_ && !cubes_.empty())
    throw InputError("level " + std::to_string(m) + " is finer than the measure's resolution " +
                     std::to_string(level_));
  std::map<CubeIndex, GroupElement> out;
  auto accumulate = [&](CubeIndex idx, const GroupElement& g) {
    auto it = out.find(idx);
    if (it == out.end())
      out.emplace(std::move(idx), g);
    else
      it->second += g;
  };
  for (const auto& [idx, g] : cubes_) accumulate(parent_index(idx, level_, m), g);
  for (const auto& a : atoms_.atoms()) accumulate(dyadic_index(a.point, m), a.coeff);
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

double GMeasure::total_variation() const {
  ExactSum s;
  for (const auto& [idx, g] : cubes_) s.add(norm(g));
  for (const auto& a : atoms_.atoms()) s.add(norm(a.coeff));
  return s.value();
}

bool operator==(const GMeasure& a, const GMeasure& b) {
  return a.group_ == b.group_ && a.ambient_ == b.ambient_ && a.level_ == b.level_ && a.cubes_ == b.cubes_ &&
         a.atoms_ == b.atoms_;
}

std::vector<DyadicLevel> measure_to_chain_dyadic(const GMeasure& nu, int n_max) {
  if (n_max < 0) throw InputError("n_max must be nonnegative");
  const std::size_t n_dim = nu.ambient();
  std::vector<DyadicLevel> out;
  for (int n = 0; n <= n_max; ++n) {
    const auto values = nu.aggregate(n);
    DyadicLevel lvl{n, ZeroChain(nu.group(), n_dim), Chain(nu.group(), n_dim, 1)};
    std::vector<Atom> atoms;
    std::vector<Term> segments;
    const double step = std::ldexp(std::sqrt(static_cast<double>(n_dim)), -n - 1);
    ExactSum closed;
    for (const auto& [idx, g] : values) {
      Point z = cube_center(idx, n);
      if (n > 0) {
        segments.push_back({g, Simplex({cube_center(parent_index(idx, n, n - 1), n - 1), z})});
        closed.add(norm(g) * step);
      }
      lvl.max_atom_norm = std::max(lvl.max_atom_norm, norm(g));
      atoms.push_back({g, std::move(z)});
    }
    lvl.approximation = ZeroChain::from_atoms(nu.group(), n_dim, std::move(atoms));
    lvl.approximation_mass = mass(lvl.approximation);
    if (n > 0) {
      lvl.transport = Chain::from_terms(nu.group(), n_dim, 1, std::move(segments));
      lvl.transport_mass = mass(lvl.transport);
      lvl.closed_form = closed.value();
    }
    out.push_back(std::move(lvl));
  }
  return out;
}

GMeasure chain_to_measure(const ZeroChain& a, int level) {
  std::map<CubeIndex, GroupElement> cubes;
  for (const auto& x : a.atoms()) {
    auto idx = dyadic_index(x.point, level);
    auto it = cubes.find(idx);
    if (it == cubes.end())
      cubes.emplace(std::move(idx), x.coeff);
    else
      it->second += x.coeff;
  }
  return GMeasure::from_parts(a.group(), a.ambient(), level, std::move(cubes), {});
}

}  // namespace flatchain
