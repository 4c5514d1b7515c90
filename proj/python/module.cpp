// Thin JSON-in, JSON-out surface over the core library.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "flatchain/cli.hpp"
#include "flatchain/errors.hpp"
#include "flatchain/experiments.hpp"
#include "flatchain/flatnorm.hpp"
#include "flatchain/io.hpp"
#include "flatchain/sizefunc.hpp"

namespace py = pybind11;
using namespace flatchain;

namespace {

Chain chain_arg(const std::string& text) { return io::chain_from_json(io::parse_text(text)); }

std::string bracket_json(const FlatBracket& br) {
  io::Json j{{"lower", br.lower},
             {"upper", br.upper},
             {"exact", br.exact},
             {"lower_method", br.lower_method},
             {"upper_strategy", br.upper_strategy}};
  if (br.witness) {
    j["b"] = io::to_json(br.witness->b);
    j["residual"] = io::to_json(br.witness->residual);
  }
  return j.dump();
}

}  // namespace

PYBIND11_MODULE(_flatchain, m) {
  m.doc() = "Polyhedral flat chains with group coefficients";

  auto base = py::register_exception<Error>(m, "FlatchainError", PyExc_RuntimeError);
  py::register_exception<InputError>(m, "InputError", base.ptr());
  py::register_exception<DescriptorMismatch>(m, "DescriptorMismatch", base.ptr());
  py::register_exception<DimensionMismatch>(m, "DimensionMismatch", base.ptr());
  py::register_exception<InvariantViolation>(m, "InvariantViolation", base.ptr());
  py::register_exception<TransversalityError>(m, "TransversalityError", base.ptr());
  py::register_exception<Unsupported>(m, "Unsupported", base.ptr());

  m.def("mass", [](const std::string& chain) { return mass(chain_arg(chain)); });
  m.def("boundary", [](const std::string& chain) { return io::to_json(boundary(chain_arg(chain))).dump(); });
  m.def("flat_size", [](const std::string& chain) { return flat_size(chain_arg(chain)); });
  m.def("flat_bracket", [](const std::string& chain) { return bracket_json(flat_bracket(chain_arg(chain))); });
  m.def("flat_distance", [](const std::string& a, const std::string& b) {
    return bracket_json(flat_distance(chain_arg(a), chain_arg(b)));
  });
  m.def("norm", [](const std::string& group, const std::string& element) {
    auto d = io::group_from_json(io::parse_text(group));
    return norm(io::element_from_json(d, io::parse_text(element)));
  });
  m.def("classify_group", [](const std::string& group) {
    auto c = classify_group(io::group_from_json(io::parse_text(group)));
    return py::make_tuple(c.every_finite_mass_chain_rectifiable, c.rationale);
  });
  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = cli::run_cli(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
