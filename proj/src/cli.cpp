#include "flatchain/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "flatchain/errors.hpp"
#include "flatchain/experiments.hpp"
#include "flatchain/flatnorm.hpp"
#include "flatchain/io.hpp"
#include "flatchain/report.hpp"
#include "flatchain/sizefunc.hpp"
#include "flatchain/slicing.hpp"
#include "flatchain/zerochain.hpp"

namespace flatchain::cli {

namespace {

using io::Json;
using report::Cell;
using report::Table;

class UsageError : public InputError {
 public:
  using InputError::InputError;
};

struct Result {
  std::string artifact;
  std::string summary;
  int status = kExitOk;
};

struct Context {
  const CommandRequest& req;
  std::vector<std::string> warnings;

  const std::string& input(std::size_t i, const char* what) const {
    if (req.inputs.size() <= i)
      throw UsageError(req.command + " needs --input #" + std::to_string(i + 1) + " (" + what + ")");
    return req.inputs[i];
  }
  Chain chain(std::size_t i = 0) { return io::chain_from_json(io::read_file(input(i, "chain JSON")), &warnings); }
  ZeroChain zero_chain(std::size_t i = 0) {
    return io::zero_chain_from_json(io::read_file(input(i, "0-chain JSON")), &warnings);
  }
  std::uint64_t seed() const {
    if (!req.seed) throw UsageError(req.command + " is randomized and needs --seed");
    return *req.seed;
  }
  report::Format format() const { return report::parse_format(req.format); }
  std::string render(Table t) const { return report::render(t, format()); }
};

Point parse_point(const std::string& text) {
  Point p;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) p.push_back(parse_rational(item));
  if (p.empty()) throw UsageError("--offset must be a comma-separated list of rationals");
  return p;
}

std::string join_point(const Point& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ";" : "") + format_rational(p[i]);
  return s;
}

GroupDescriptor group_from_flags(const CommandRequest& req, GroupKind fallback) {
  GroupKind kind = fallback;
  if (req.group) {
    static const std::map<std::string, GroupKind> aliases = {
        {"Z", GroupKind::Integers},          {"Z/p", GroupKind::IntegersModP},
        {"R", GroupKind::Reals},             {"R^alpha", GroupKind::RealsAlphaNorm},
        {"Q_p", GroupKind::PAdicRationals},  {"Z_p", GroupKind::PAdicIntegers}};
    auto it = aliases.find(*req.group);
    kind = it != aliases.end() ? it->second : parse_group_kind(*req.group);
  }
  auto need_p = [&] {
    if (!req.p) throw UsageError("group " + to_string(kind) + " needs --p");
    return *req.p;
  };
  switch (kind) {
    case GroupKind::Integers:
      return GroupDescriptor::integers();
    case GroupKind::Reals:
      return GroupDescriptor::reals();
    case GroupKind::IntegersModP:
      return GroupDescriptor::integers_mod(need_p());
    case GroupKind::PAdicRationals:
      return GroupDescriptor::padic_rationals(need_p());
    case GroupKind::PAdicIntegers:
      return GroupDescriptor::padic_integers(need_p());
    case GroupKind::RealsAlphaNorm:
      if (!req.alpha) throw UsageError("group RealsAlphaNorm needs --alpha");
      return GroupDescriptor::reals_alpha(parse_rational(*req.alpha));
  }
  throw UsageError("unknown group");
}

Table single_row(std::vector<std::string> columns, std::vector<Cell> row) {
  Table t{std::move(columns), {}, {}};
  t.add_row(std::move(row));
  return t;
}

std::string chain_summary(const std::string& what, const Chain& c) {
  return what + ": " + std::to_string(c.terms().size()) + " terms, dim " + std::to_string(c.dim()) + ", mass " +
         report::format_real(mass(c));
}

// ---------------------------------------------------------------- commands

Result cmd_mass(Context& ctx) {
  Chain a = ctx.chain();
  const double m = mass(a);
  return {ctx.render(single_row({"mass", "dim", "terms"},
                                {m, static_cast<std::int64_t>(a.dim()), static_cast<std::int64_t>(a.terms().size())})),
          "mass = " + report::format_real(m)};
}

Result cmd_boundary(Context& ctx) {
  Chain b = boundary(ctx.chain());
  return {io::dump(io::to_json(b)), chain_summary("boundary", b)};
}

Result cmd_chi(Context& ctx) {
  ZeroChain a = ctx.zero_chain();
  GroupElement c = chi(a);
  return {ctx.render(single_row({"chi", "norm", "atoms"}, {c.to_string(), norm(c),
                                                          static_cast<std::int64_t>(a.atoms().size())})),
          "chi = " + c.to_string()};
}

Result cmd_canonical(Context& ctx) {
  Chain a = ctx.chain();
  return {io::dump(io::to_json(a)), chain_summary("canonical", a)};
}

Result cmd_cone_bound(Context& ctx) {
  ZeroChain a = ctx.zero_chain();
  Point x;
  if (ctx.req.offset)
    x = parse_point(*ctx.req.offset);
  else if (!a.is_zero())
    x = a.atoms().front().point;
  else
    x = Point(a.ambient(), Rational(0));
  if (x.size() != a.ambient()) throw UsageError("--offset must have " + std::to_string(a.ambient()) + " coordinates");
  ConeBound cb = cone_flat_bound(a, x);
  const GroupElement c = chi(a);
  std::string summary = "cone bound = " + report::format_real(cb.bound) + " (vertex " + format_point(x) + ")";
  if (ctx.format() == report::Format::Csv)
    return {report::to_csv(single_row({"bound", "chi_norm", "cone_mass"}, {cb.bound, norm(c), mass(cb.cone)})),
            summary};
  Json j;
  j["bound"] = std::stod(report::format_real(cb.bound));
  j["chi"] = io::to_json(c);
  j["vertex"] = io::to_json(x);
  j["cone"] = io::to_json(cb.cone);
  return {io::dump(j), summary};
}

Result cmd_slice(Context& ctx) {
  Chain a = ctx.chain();
  Chain s = [&] {
    if (ctx.req.inputs.size() > 1) return slice_by_plane(a, io::plane_from_json(io::read_file(ctx.req.inputs[1])));
    if (!ctx.req.offset) throw UsageError("slice needs a plane file as second --input or a fiber point via --offset");
    Point x = parse_point(*ctx.req.offset);
    if (x.size() > a.ambient()) throw UsageError("--offset has more coordinates than the ambient dimension");
    std::vector<std::size_t> axes(x.size());
    for (std::size_t i = 0; i < axes.size(); ++i) axes[i] = i;
    return slice_fiber(a, CoordinateProjection(a.ambient(), axes), x);
  }();
  return {io::dump(io::to_json(s)), chain_summary("slice", s)};
}

Result cmd_slice_stats(Context& ctx) {
  Chain a = ctx.chain();
  const std::uint64_t seed = ctx.seed();
  SliceStats st = slice_statistics(a, ctx.req.samples.value_or(100), 0, seed);
  Table t{{"axes", "x", "atoms", "total_norm", "max_norm", "resampled"}, {}, {{"seed", std::to_string(seed)}}};
  for (const auto& r : st.records) {
    std::string axes;
    for (std::size_t i = 0; i < r.indices.size(); ++i) axes += (i ? ";" : "") + std::to_string(r.indices[i]);
    t.add_row({axes, join_point(r.x), static_cast<std::int64_t>(r.atoms), r.total_norm, r.max_norm, r.resampled});
  }
  return {ctx.render(std::move(t)), "slice-stats: " + std::to_string(st.records.size()) + " fibers over " +
                                        std::to_string(st.planes) + " planes, max atoms " +
                                        std::to_string(st.max_atoms) + ", resamples " + std::to_string(st.resamples) +
                                        ", seed " + std::to_string(seed)};
}

Result cmd_deform(Context& ctx) {
  Chain a = ctx.chain();
  const Rational eps = parse_rational(ctx.req.eps.value_or("1"));
  GridSpec grid{eps, {}};
  std::string source;
  if (ctx.req.offset) {
    grid.offset = parse_point(*ctx.req.offset);
    if (grid.offset.size() != a.ambient())
      throw UsageError("--offset must have " + std::to_string(a.ambient()) + " coordinates");
    source = "given offset";
  } else {
    std::mt19937_64 rng(ctx.seed());
    grid = random_grid(eps, a.ambient(), rng);
    source = "seed " + std::to_string(*ctx.req.seed);
  }
  Chain p = deformation_sample(a, grid);
  return {io::dump(io::to_json(p)), chain_summary("deform", p) + " (eps " + format_rational(eps) + ", offset " +
                                        format_point(grid.offset) + ", " + source + ")"};
}

Result cmd_flatnorm(Context& ctx) {
  FlatBracket br = ctx.req.inputs.size() > 1 ? flat_distance(ctx.chain(0), ctx.chain(1)) : flat_bracket(ctx.chain(0));
  const double wmass = br.witness ? mass(br.witness->b) : 0.0;
  std::string summary = "flat norm in [" + report::format_real(br.lower) + ", " + report::format_real(br.upper) +
                        "] (" + br.lower_method + " / " + br.upper_strategy + ")";
  if (ctx.format() == report::Format::Csv)
    return {report::to_csv(single_row({"lower", "upper", "witness_mass", "lower_method", "upper_strategy", "exact"},
                                      {br.lower, br.upper, wmass, br.lower_method, br.upper_strategy, br.exact})),
            summary};
  Json j;
  j["lower"] = std::stod(report::format_real(br.lower));
  j["upper"] = std::stod(report::format_real(br.upper));
  j["witness_mass"] = std::stod(report::format_real(wmass));
  j["lower_method"] = br.lower_method;
  j["upper_strategy"] = br.upper_strategy;
  j["exact"] = br.exact;
  if (br.witness) j["witness"] = io::to_json(br.witness->b);
  return {io::dump(j), summary};
}

Result cmd_measure_build(Context& ctx) {
  ZeroChain a = ctx.zero_chain();
  const int level = ctx.req.level.value_or(4);
  GMeasure nu = chain_to_measure(a, level);
  return {io::dump(io::to_json(nu)), "measure-build: " + std::to_string(nu.cubes().size()) + " cubes at level " +
                                         std::to_string(level) + ", total variation " +
                                         report::format_real(nu.total_variation())};
}

Result cmd_measure_roundtrip(Context& ctx) {
  GMeasure nu = io::measure_from_json(io::read_file(ctx.input(0, "measure JSON")), &ctx.warnings);
  const int top = ctx.req.level.value_or(nu.level());
  Table t{{"level", "atoms", "mass", "max_atom_norm", "transport_mass", "closed_form", "roundtrip"}, {}, {}};
  bool all = true;
  for (const auto& lv : measure_to_chain_dyadic(nu, top)) {
    const bool ok = chain_to_measure(lv.approximation, lv.level).aggregate(lv.level) == nu.aggregate(lv.level);
    all = all && ok;
    t.add_row({static_cast<std::int64_t>(lv.level), static_cast<std::int64_t>(lv.approximation.atoms().size()),
               lv.approximation_mass, lv.max_atom_norm, lv.transport_mass, lv.closed_form, ok});
  }
  return {ctx.render(std::move(t)),
          std::string("measure-roundtrip: levels 0..") + std::to_string(top) + (all ? " reproduce" : " do NOT reproduce") +
              " the cube values",
          all ? kExitOk : kExitInvariant};
}

Result cmd_size(Context& ctx) {
  Chain a = ctx.chain();
  const double s = flat_size(a);
  return {ctx.render(single_row({"flat_size", "mass"}, {s, mass(a)})), "flat size = " + report::format_real(s)};
}

Result cmd_phi_mass(Context& ctx) {
  Chain a = ctx.chain();
  WeightFunction phi = ctx.req.inputs.size() > 1
                           ? io::weight_from_json(io::read_file(ctx.req.inputs[1]), a.group())
                           : WeightFunction::group_norm();
  const double m = phi_mass(a, phi);
  return {ctx.render(single_row({"phi_mass", "weight"}, {m, to_string(phi.kind())})),
          "phi mass = " + report::format_real(m) + " (" + to_string(phi.kind()) + ")"};
}

Result cmd_path_length(Context& ctx) {
  if (!ctx.req.inputs.empty()) {
    PathSamples path = io::path_from_json(io::read_file(ctx.req.inputs[0]));
    const double len = path_length_lower_bound(path);
    return {ctx.render(single_row({"length", "samples"}, {len, static_cast<std::int64_t>(path.size())})),
            "path length >= " + report::format_real(len)};
  }
  GroupDescriptor d = group_from_flags(ctx.req, GroupKind::Reals);
  const int levels = ctx.req.level.value_or(10);
  auto prof = dyadic_length_profile([&](const Rational& t) { return GroupElement::from_rational(d, t); }, 0, 1, levels);
  Table t{{"level", "length", "slope"}, {}, {{"group", d.label()}, {"path", "gamma(t)=t on [0,1]"}}};
  for (const auto& e : prof)
    t.add_row({static_cast<std::int64_t>(e.level), e.length, e.slope ? Cell(*e.slope) : Cell(std::string())});
  return {ctx.render(std::move(t)), "path-length: gamma(t)=t in " + d.label() + ", length at level " +
                                        std::to_string(levels) + " = " + report::format_real(prof.back().length)};
}

Result cmd_classify(Context& ctx) {
  Table t{{"group", "weight", "rectifiable", "witness", "value", "detail"}, {}, {}};
  if (ctx.req.group) {
    GroupDescriptor d = group_from_flags(ctx.req, GroupKind::Reals);
    auto c = classify_group(d);
    auto s = classify_phi_rectifiability(d, WeightFunction::flat_size());
    t.add_row({d.label(), "norm", c.every_finite_mass_chain_rectifiable, "", 0.0, c.rationale});
    t.add_row({d.label(), "flat-size", s.every_finite_mass_chain_rectifiable, "", 0.0, s.rationale});
  } else {
    for (const auto& r : classification_report(ctx.req.level.value_or(10)))
      t.add_row({r.group, r.weight, r.rectifiable, r.witness, r.value, r.detail});
  }
  const std::string summary = "classify: " + std::to_string(t.rows.size()) + " rows";
  return {ctx.render(std::move(t)), summary};
}

Result cmd_ball_growth(Context& ctx) {
  Chain tc = ctx.chain();
  if (tc.is_zero()) throw UsageError("ball-growth needs a nonzero 1-chain");
  Point a = ctx.req.offset ? parse_point(*ctx.req.offset) : tc.terms().front().simplex.vertices().front();
  if (a.size() != tc.ambient()) throw UsageError("--offset must have " + std::to_string(tc.ambient()) + " coordinates");
  auto box = bounding_box(tc);
  Rational reach = 0;
  for (std::size_t i = 0; i < a.size(); ++i) reach += std::max(abs(box->first[i] - a[i]), abs(box->second[i] - a[i]));
  const std::size_t n = ctx.req.samples.value_or(50);
  std::vector<Rational> radii;
  for (std::size_t i = 0; i <= n; ++i) radii.push_back(reach * make_rational(static_cast<std::int64_t>(i),
                                                                             static_cast<std::int64_t>(n ? n : 1)));
  auto inst = make_ball_growth_instance(tc, a, radii);
  auto rep = ball_growth_check(inst);
  Table t{{"radius", "chain_measure", "integral", "bound", "margin", "holds"}, {}, {{"center", format_point(a)}}};
  for (const auto& r : rep.rows) t.add_row({r.radius, r.chain_measure, r.integral, r.bound, r.margin, r.holds});
  return {ctx.render(std::move(t)),
          std::string("ball-growth: ") + (rep.holds ? "holds" : "FAILS") + " at " + std::to_string(rep.rows.size()) +
              " radii, min margin " + report::format_real(rep.min_margin),
          rep.holds ? kExitOk : kExitInvariant};
}

Result cmd_nonrect_demo(Context& ctx) {
  GroupDescriptor d = group_from_flags(ctx.req, GroupKind::Reals);
  const int levels = ctx.req.level.value_or(12);
  auto diag = build_nonrectifiable_chain(d, [&](const Rational& t) { return GroupElement::from_rational(d, t); }, 0, 1,
                                         levels);
  Table t{{"level", "atoms", "max_atom_norm", "mass", "cauchy_bound", "transport_mass"},
          {},
          {{"group", d.label()}, {"path", "gamma(t)=t on [0,1]"}}};
  for (const auto& l : diag.levels)
    t.add_row({static_cast<std::int64_t>(l.level), static_cast<std::int64_t>(l.atoms), l.max_atom_norm, l.mass,
               l.cauchy_bound, l.transport_mass});
  return {ctx.render(std::move(t)), "nonrect-demo: " + d.label() + ", max atom norm at level " +
                                        std::to_string(levels) + " = " +
                                        report::format_real(diag.levels.back().max_atom_norm)};
}

const std::map<std::string, std::function<Result(Context&)>>& commands() {
  static const std::map<std::string, std::function<Result(Context&)>> table = {
      {"mass", cmd_mass},
      {"boundary", cmd_boundary},
      {"chi", cmd_chi},
      {"canonical", cmd_canonical},
      {"cone-bound", cmd_cone_bound},
      {"slice", cmd_slice},
      {"slice-stats", cmd_slice_stats},
      {"deform", cmd_deform},
      {"flatnorm", cmd_flatnorm},
      {"measure-build", cmd_measure_build},
      {"measure-roundtrip", cmd_measure_roundtrip},
      {"size", cmd_size},
      {"phi-mass", cmd_phi_mass},
      {"path-length", cmd_path_length},
      {"classify", cmd_classify},
      {"ball-growth", cmd_ball_growth},
      {"nonrect-demo", cmd_nonrect_demo},
  };
  return table;
}

std::string usage() {
  std::string s = "usage: flatchain <command> [--input FILE]... [--output FILE] [--format csv|json] [--level N]\n"
                  "                 [--eps Q] [--offset Q,Q,...] [--seed S] [--samples N] [--group G] [--alpha Q] [--p P]\n"
                  "commands:";
  for (const auto& c : command_names()) s += " " + c;
  return s + "\n";
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {
      "mass",          "boundary",          "chi",  "canonical", "cone-bound",  "slice",
      "slice-stats",   "deform",            "flatnorm", "measure-build", "measure-roundtrip",
      "size",          "phi-mass",          "path-length", "classify", "ball-growth", "nonrect-demo"};
  return names;
}

int run_command(const CommandRequest& req, std::ostream& out, std::ostream& err) {
  auto it = commands().find(req.command);
  if (it == commands().end()) {
    err << "unknown command '" << req.command << "'\n" << usage();
    return kExitUsage;
  }
  Context ctx{req, {}};
  Result res;
  try {
    report::parse_format(req.format);
    res = it->second(ctx);
  } catch (const TransversalityError& e) {
    err << "transversality failure: " << e.what() << "\n";
    return kExitTransversality;
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const Error& e) {
    err << "input error: " << e.what() << "\n";
    return kExitUsage;
  }
  for (const auto& w : ctx.warnings) err << "warning: " << w << "\n";
  if (req.output) {
    try {
      report::write_file(*req.output, res.artifact);
    } catch (const Error& e) {
      err << "output error: " << e.what() << "\n";
      return kExitUsage;
    }
    out << res.summary << "\n";
  } else {
    out << res.artifact;
    err << res.summary << "\n";
  }
  return res.status;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (args.empty()) {
    err << usage();
    return kExitUsage;
  }
  if (std::find_if(args.begin(), args.end(), [](const std::string& a) { return a == "--help" || a == "-h"; }) !=
      args.end()) {
    out << usage();
    return kExitOk;
  }
  CLI::App app{"flat chain computations"};
  app.set_help_flag();
  CommandRequest req;
  req.command = args.front();
  int level = 0;
  long p = 0;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::string output, eps, offset, group, alpha;
  auto* o_level = app.add_option("--level", level);
  auto* o_p = app.add_option("--p", p);
  auto* o_seed = app.add_option("--seed", seed);
  auto* o_samples = app.add_option("--samples", samples);
  auto* o_output = app.add_option("--output", output);
  auto* o_eps = app.add_option("--eps", eps);
  auto* o_offset = app.add_option("--offset", offset);
  auto* o_group = app.add_option("--group", group);
  auto* o_alpha = app.add_option("--alpha", alpha);
  app.add_option("--input", req.inputs);
  app.add_option("--format", req.format)->check(CLI::IsMember({"csv", "json"}));
  std::vector<std::string> rest(args.begin() + 1, args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << usage();
    return kExitUsage;
  }
  if (o_level->count()) req.level = level;
  if (o_p->count()) req.p = p;
  if (o_seed->count()) req.seed = seed;
  if (o_samples->count()) req.samples = samples;
  if (o_output->count()) req.output = output;
  if (o_eps->count()) req.eps = eps;
  if (o_offset->count()) req.offset = offset;
  if (o_group->count()) req.group = group;
  if (o_alpha->count()) req.alpha = alpha;
  return run_command(req, out, err);
}

}  // namespace flatchain::cli
