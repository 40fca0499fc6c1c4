#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "mqr/count.hpp"
#include "mqr/dsl.hpp"
#include "mqr/errors.hpp"
#include "mqr/fixtures.hpp"
#include "mqr/reduce.hpp"

namespace py = pybind11;
using namespace mqr;

namespace {

std::string dims_summary(const MarkedQuiver& mq, const DimVec& d) {
  std::ostringstream os;
  for (int x = 0; x < mq.quiver.n_vertices(); ++x) {
    if (x) os << " ";
    os << mq.quiver.vertices[x] << ":";
    for (size_t a = 0; a < d.mult[x].size(); ++a) {
      if (a) os << ",";
      os << d.mult[x][a];
    }
  }
  return os.str();
}

}  // namespace

PYBIND11_MODULE(_mqr, m) {
  m.doc() = "marked-quiver representation toolkit";

  py::register_exception<ParseError>(m, "SpecParseError");
  py::register_exception<ValidationError>(m, "SpecValidationError");
  py::register_exception<ResourceLimit>(m, "ResourceLimitError");

  py::class_<SpecDocument>(m, "Spec")
      .def_static("parse", [](const std::string& text) { return parse_spec(text); },
                  "parse a specification document")
      .def("serialize", [](const SpecDocument& d) { return serialize_spec(d); })
      .def("vertices", [](const SpecDocument& d) { return d.mq.quiver.vertices; })
      .def("field", [](const SpecDocument& d) { return d.mq.field.p(); })
      .def("marking",
           [](const SpecDocument& d, const std::string& vertex) {
             return vectroid_to_dsl(d.mq.vectroid_at(d.mq.quiver.vertex_index(vertex)));
           })
      .def("classify", [](const SpecDocument& d) { return classify(d.mq).to_string(); })
      .def("detect_wild_pattern",
           [](const SpecDocument& d) -> py::object {
             auto p = detect_wild_pattern(d.mq);
             if (!p) return py::none();
             return py::str(p->to_string());
           })
      .def(
          "enumerate",
          [](const SpecDocument& d, int bound, uint32_t p) {
            MarkedQuiver mq = p ? with_field(d.mq, p) : d.mq;
            std::vector<std::pair<std::string, std::string>> out;
            for (const Rep& r : enumerate_indecomposables(mq, bound))
              out.emplace_back(dims_summary(mq, r.dims), serialize_rep(mq, r));
            return out;
          },
          py::arg("dim_bound"), py::arg("p") = 0,
          "indecomposable classes as (dims, serialized representation) pairs")
      .def(
          "count_by_dim",
          [](const SpecDocument& d, int bound, const std::vector<uint32_t>& fields) {
            std::vector<std::tuple<std::string, std::vector<uint64_t>>> out;
            std::vector<MarkedQuiver> mqs;
            for (uint32_t p : fields) mqs.push_back(with_field(d.mq, p));
            std::vector<IndCounter> cs;
            for (auto& m : mqs) cs.emplace_back(m, bound);
            for (int g = 1; g <= cs.front().max_grand(); ++g)
              for (auto& [dims, c0] : cs.front().level(g)) {
                std::vector<uint64_t> counts{c0};
                for (size_t f = 1; f < cs.size(); ++f) counts.push_back(cs[f].at(dims));
                bool any = false;
                for (uint64_t c : counts) any = any || c;
                if (any) out.emplace_back(dims_summary(mqs[0], dims), counts);
              }
            return out;
          },
          py::arg("dim_bound"), py::arg("fields"),
          "per-dims indecomposable class counts over several primes")
      .def(
          "reduce",
          [](const SpecDocument& d, const std::string& arrow, int cap) {
            ReductionResult r = reduce_pendant_arrow(d.mq, arrow, cap);
            py::dict out;
            out["eliminated"] = r.eliminated;
            out["new_marking"] = vectroid_to_dsl(r.reduced.vectroid_at(r.fused_vertex()));
            out["survivors"] = r.part().object_table.size();
            out["kernel"] = r.part().kernel_objects.size();
            out["reduced"] = serialize_spec(SpecDocument{r.reduced, {}});
            return out;
          },
          py::arg("arrow"), py::arg("dim_cap") = 4, "eliminate a pendant arrow");

  m.def(
      "verify_fixture",
      [](const std::string& name, uint32_t p) {
        FixtureResult r = run_fixture(name, p);
        return py::make_tuple(r.ok, r.report);
      },
      py::arg("name"), py::arg("p") = 0, "run a built-in fixture");
  m.def("fixture_names", &fixture_names);
  m.def("fixture_document", &fixture_document);
}
