#include "flatchain/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "flatchain/errors.hpp"

namespace flatchain::io {

namespace {

const Json& field(const Json& j, const char* name, const std::string& where) {
  if (!j.is_object()) throw InputError(where + ": expected an object");
  auto it = j.find(name);
  if (it == j.end()) throw InputError(where + ": missing field '" + name + "'");
  return *it;
}

const Json& array_field(const Json& j, const char* name, const std::string& where) {
  const Json& v = field(j, name, where);
  if (!v.is_array()) throw InputError(where + ": field '" + name + "' must be an array");
  return v;
}

long integer_field(const Json& j, const char* name, const std::string& where) {
  const Json& v = field(j, name, where);
  if (!v.is_number_integer()) throw InputError(where + ": field '" + name + "' must be an integer");
  return v.get<long>();
}

Json integer_json(const Integer& z) {
  if (z.fits_slong_p()) return Json(z.get_si());
  return Json(z.get_str());
}

Integer integer_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (j.is_string()) {
    Rational q = parse_rational(j.get<std::string>());
    if (q.get_den() == 1) return q.get_num();
  }
  throw InputError(where + " must be an integer");
}

}  // namespace

Json to_json(const GroupDescriptor& d) {
  Json j;
  j["kind"] = to_string(d.kind());
  if (d.p() != 0) j["p"] = d.p();
  if (d.kind() == GroupKind::RealsAlphaNorm) j["alpha"] = format_rational(d.alpha());
  return j;
}

GroupDescriptor group_from_json(const Json& j) {
  const std::string where = "group";
  const Json& kind = field(j, "kind", where);
  if (!kind.is_string()) throw InputError("group: field 'kind' must be a string");
  switch (parse_group_kind(kind.get<std::string>())) {
    case GroupKind::Integers:
      return GroupDescriptor::integers();
    case GroupKind::Reals:
      return GroupDescriptor::reals();
    case GroupKind::IntegersModP:
      return GroupDescriptor::integers_mod(integer_field(j, "p", where));
    case GroupKind::PAdicRationals:
      return GroupDescriptor::padic_rationals(integer_field(j, "p", where));
    case GroupKind::PAdicIntegers:
      return GroupDescriptor::padic_integers(integer_field(j, "p", where));
    case GroupKind::RealsAlphaNorm:
      return GroupDescriptor::reals_alpha(rational_from_json(field(j, "alpha", where)));
  }
  throw InputError("group: unsupported kind");
}

Json to_json(const GroupElement& g) {
  switch (g.descriptor().kind()) {
    case GroupKind::Integers:
    case GroupKind::IntegersModP:
      return integer_json(g.value().get_num());
    default: {
      Json j;
      j["num"] = integer_json(g.value().get_num());
      j["den"] = integer_json(g.value().get_den());
      return j;
    }
  }
}

GroupElement element_from_json(const GroupDescriptor& d, const Json& j) {
  if (j.is_object()) {
    Integer num = integer_from_json(field(j, "num", "element"), "element field 'num'");
    Integer den = integer_from_json(field(j, "den", "element"), "element field 'den'");
    if (den == 0) throw InputError("element: field 'den' must be nonzero");
    return GroupElement::from_rational(d, make_rational(num, den));
  }
  return GroupElement::from_rational(d, rational_from_json(j));
}

Json to_json(const Rational& q) { return format_rational(q); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return make_rational(j.get<std::int64_t>());
  if (j.is_number_float()) {
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw InputError("rational must be finite");
    return from_double(v);
  }
  throw InputError("expected a rational (\"p/q\" string or number), got " + j.dump());
}

Json to_json(const Point& p) {
  Json j = Json::array();
  for (const auto& c : p) j.push_back(to_json(c));
  return j;
}

Point point_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("point must be an array of rationals");
  Point p;
  for (const auto& c : j) p.push_back(rational_from_json(c));
  return p;
}

Json to_json(const Chain& a) {
  Json j;
  j["group"] = to_json(a.group());
  j["ambient"] = a.ambient();
  j["dim"] = a.dim();
  Json terms = Json::array();
  for (const auto& t : a.terms()) {
    Json s = Json::array();
    for (const auto& v : t.simplex.vertices()) s.push_back(to_json(v));
    Json term;
    term["coeff"] = to_json(t.coeff);
    term["simplex"] = std::move(s);
    terms.push_back(std::move(term));
  }
  j["terms"] = std::move(terms);
  return j;
}

Chain chain_from_json(const Json& j, std::vector<std::string>* warnings) {
  const std::string where = "chain";
  GroupDescriptor g = group_from_json(field(j, "group", where));
  const long ambient = integer_field(j, "ambient", where);
  const long dim = integer_field(j, "dim", where);
  if (ambient < 1) throw InputError("chain: field 'ambient' must be positive");
  if (dim < 0 || dim > ambient) throw InputError("chain: field 'dim' must lie in [0, ambient]");
  std::vector<Term> terms;
  std::size_t index = 0;
  for (const auto& t : array_field(j, "terms", where)) {
    const std::string tw = "chain term " + std::to_string(index++);
    GroupElement c = element_from_json(g, field(t, "coeff", tw));
    const Json& sj = field(t, "simplex", tw);
    if (!sj.is_array() || sj.size() != static_cast<std::size_t>(dim + 1))
      throw InputError(tw + ": field 'simplex' must list dim + 1 = " + std::to_string(dim + 1) + " points");
    std::vector<Point> verts;
    for (const auto& v : sj) {
      Point p = point_from_json(v);
      if (p.size() != static_cast<std::size_t>(ambient))
        throw InputError(tw + ": point has " + std::to_string(p.size()) + " coordinates, expected " +
                         std::to_string(ambient));
      verts.push_back(std::move(p));
    }
    terms.push_back({std::move(c), Simplex(std::move(verts))});
  }
  return Chain::from_terms(g, ambient, dim, std::move(terms), warnings);
}

Json to_json(const ZeroChain& a) { return to_json(a.to_chain()); }

ZeroChain zero_chain_from_json(const Json& j, std::vector<std::string>* warnings) {
  Chain c = chain_from_json(j, warnings);
  if (c.dim() != 0) throw InputError("chain: expected a 0-chain, got dim " + std::to_string(c.dim()));
  return ZeroChain::from_chain(c);
}

Json to_json(const GMeasure& nu) {
  Json j;
  j["group"] = to_json(nu.group());
  j["ambient"] = nu.ambient();
  j["level"] = nu.level();
  Json cubes = Json::array();
  for (const auto& [idx, v] : nu.cubes()) {
    Json c;
    c["index"] = idx;
    c["value"] = to_json(v);
    cubes.push_back(std::move(c));
  }
  j["cubes"] = std::move(cubes);
  Json atoms = Json::array();
  for (const auto& at : nu.atoms().atoms()) {
    Json a;
    a["coeff"] = to_json(at.coeff);
    a["point"] = to_json(at.point);
    atoms.push_back(std::move(a));
  }
  j["atoms"] = std::move(atoms);
  return j;
}

GMeasure measure_from_json(const Json& j, std::vector<std::string>* warnings) {
  const std::string where = "measure";
  GroupDescriptor g = group_from_json(field(j, "group", where));
  const long level = integer_field(j, "level", where);
  long ambient = j.contains("ambient") ? integer_field(j, "ambient", where) : -1;
  std::map<CubeIndex, GroupElement> cubes;
  std::size_t index = 0;
  for (const auto& c : array_field(j, "cubes", where)) {
    const std::string cw = "measure cube " + std::to_string(index++);
    const Json& ij = field(c, "index", cw);
    if (!ij.is_array()) throw InputError(cw + ": field 'index' must be an array of integers");
    CubeIndex idx;
    for (const auto& v : ij) {
      if (!v.is_number_integer()) throw InputError(cw + ": field 'index' must be an array of integers");
      idx.push_back(v.get<long>());
    }
    if (ambient < 0) ambient = static_cast<long>(idx.size());
    if (idx.size() != static_cast<std::size_t>(ambient))
      throw InputError(cw + ": index has " + std::to_string(idx.size()) + " entries, expected " +
                       std::to_string(ambient));
    GroupElement v = element_from_json(g, field(c, "value", cw));
    if (v.is_zero()) {
      if (warnings) warnings->push_back(cw + ": zero value dropped");
      continue;
    }
    auto [it, fresh] = cubes.emplace(idx, v);
    if (!fresh) {
      if (warnings) warnings->push_back(cw + ": repeated index merged");
      it->second += v;
    }
  }
  std::vector<Atom> atoms;
  index = 0;
  if (j.contains("atoms")) {
    for (const auto& a : array_field(j, "atoms", where)) {
      const std::string aw = "measure atom " + std::to_string(index++);
      Point p = point_from_json(field(a, "point", aw));
      if (ambient < 0) ambient = static_cast<long>(p.size());
      if (p.size() != static_cast<std::size_t>(ambient)) throw InputError(aw + ": point has the wrong dimension");
      atoms.push_back({element_from_json(g, field(a, "coeff", aw)), std::move(p)});
    }
  }
  if (ambient < 1) throw InputError("measure: cannot infer 'ambient' from an empty measure");
  std::erase_if(cubes, [](const auto& kv) { return kv.second.is_zero(); });
  return GMeasure::from_parts(g, ambient, level, std::move(cubes), std::move(atoms));
}

Json to_json(const OrientedAffinePlane& p) {
  Json j;
  j["base"] = to_json(p.base());
  Json dirs = Json::array();
  for (const auto& d : p.directions()) dirs.push_back(to_json(d));
  j["dirs"] = std::move(dirs);
  return j;
}

OrientedAffinePlane plane_from_json(const Json& j) {
  Point base = point_from_json(field(j, "base", "plane"));
  std::vector<linalg::Vector> dirs;
  for (const auto& d : array_field(j, "dirs", "plane")) dirs.push_back(point_from_json(d));
  return OrientedAffinePlane(std::move(base), std::move(dirs));
}

Json to_json(const GridSpec& g) {
  Json j;
  j["eps"] = to_json(g.eps);
  j["offset"] = to_json(g.offset);
  return j;
}

GridSpec grid_from_json(const Json& j) {
  GridSpec g{rational_from_json(field(j, "eps", "grid")), point_from_json(field(j, "offset", "grid"))};
  if (sgn(g.eps) <= 0) throw InputError("grid: field 'eps' must be positive");
  return g;
}

Json to_json(const WeightFunction& w, const GroupDescriptor& d) {
  Json j;
  j["kind"] = to_string(w.kind());
  if (w.kind() == WeightKind::Table) {
    Json table = Json::array();
    for (const auto& [k, v] : w.entries()) {
      Json e;
      e["coeff"] = to_json(GroupElement::from_rational(d, k));
      if (std::isinf(v))
        e["weight"] = "inf";
      else
        e["weight"] = v;
      table.push_back(std::move(e));
    }
    j["table"] = std::move(table);
  }
  return j;
}

WeightFunction weight_from_json(const Json& j, const GroupDescriptor& d) {
  const Json& kind = field(j, "kind", "weight");
  if (!kind.is_string()) throw InputError("weight: field 'kind' must be a string");
  const std::string k = kind.get<std::string>();
  if (k == "flat-size") return WeightFunction::flat_size();
  if (k == "group-norm") return WeightFunction::group_norm();
  if (k != "table") throw InputError("weight: field 'kind' must be flat-size, group-norm or table");
  std::map<Rational, double> entries;
  std::size_t index = 0;
  for (const auto& e : array_field(j, "table", "weight")) {
    const std::string ew = "weight table entry " + std::to_string(index++);
    GroupElement g = element_from_json(d, field(e, "coeff", ew));
    const Json& w = field(e, "weight", ew);
    double v;
    if (w.is_string() && w.get<std::string>() == "inf")
      v = std::numeric_limits<double>::infinity();
    else if (w.is_number())
      v = w.get<double>();
    else
      throw InputError(ew + ": field 'weight' must be a number or \"inf\"");
    if (!entries.emplace(g.value(), v).second) throw InputError(ew + ": duplicate coefficient");
  }
  return WeightFunction::table(std::move(entries));
}

PathSamples path_from_json(const Json& j) {
  GroupDescriptor g = group_from_json(field(j, "group", "path"));
  std::vector<PathSample> samples;
  std::size_t index = 0;
  for (const auto& s : array_field(j, "samples", "path")) {
    const std::string sw = "path sample " + std::to_string(index++);
    samples.push_back({rational_from_json(field(s, "t", sw)), element_from_json(g, field(s, "value", sw))});
  }
  if (samples.empty()) throw InputError("path: field 'samples' must not be empty");
  return PathSamples(std::move(samples));
}

Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open input file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str());
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace flatchain::io
