#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "flatchain/coeffgroup.hpp"
#include "flatchain/polychain.hpp"
#include "flatchain/sizefunc.hpp"
#include "flatchain/slicing.hpp"
#include "flatchain/zerochain.hpp"

// JSON encodings. Parsers throw InputError naming the offending field, and
// report dropped content through `warnings`.
namespace flatchain::io {

using Json = nlohmann::ordered_json;

Json to_json(const GroupDescriptor& d);
GroupDescriptor group_from_json(const Json& j);

/// Integers and residues as JSON integers, everything else as
/// {"num": n, "den": d}.
Json to_json(const GroupElement& g);
/// Accepts a JSON integer, {"num", "den"}, or a rational string.
GroupElement element_from_json(const GroupDescriptor& d, const Json& j);

Json to_json(const Rational& q);
Rational rational_from_json(const Json& j);
Json to_json(const Point& p);
Point point_from_json(const Json& j);

Json to_json(const Chain& a);
Chain chain_from_json(const Json& j, std::vector<std::string>* warnings = nullptr);

Json to_json(const ZeroChain& a);
ZeroChain zero_chain_from_json(const Json& j, std::vector<std::string>* warnings = nullptr);

Json to_json(const GMeasure& nu);
GMeasure measure_from_json(const Json& j, std::vector<std::string>* warnings = nullptr);

Json to_json(const OrientedAffinePlane& p);
OrientedAffinePlane plane_from_json(const Json& j);

Json to_json(const GridSpec& g);
GridSpec grid_from_json(const Json& j);

/// Table entries are [{"coeff": element, "weight": number | "inf"}]; table
/// weights need the group to read their keys.
Json to_json(const WeightFunction& w, const GroupDescriptor& d);
WeightFunction weight_from_json(const Json& j, const GroupDescriptor& d);

/// {"group": descriptor, "samples": [{"t": rational, "value": element}]}.
PathSamples path_from_json(const Json& j);

Json parse_text(const std::string& text);
Json read_file(const std::string& path);
/// Pretty-printed with two-space indentation and a trailing newline.
std::string dump(const Json& j);

}  // namespace flatchain::io
