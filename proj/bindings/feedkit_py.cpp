#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "feedkit/dot.hpp"
#include "feedkit/feedback.hpp"
#include "feedkit/model.hpp"
#include "feedkit/rfu.hpp"
#include "feedkit/spec.hpp"
#include "feedkit/sts.hpp"

namespace py = pybind11;
using namespace feedkit;

namespace {

// Python-facing rows use the textual value form ("bot", atom names, "fail").
std::vector<std::pair<std::string, std::string>> rows_of(const Rfu& r) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [x, z] : r.pairs()) {
    out.emplace_back(point_text(r.in_sig(), x),
                     z.is_fail() ? "fail" : point_text(r.out_sig(), z));
  }
  return out;
}

Model parse_or_raise(const std::string& text) {
  auto result = parse_model(text);
  if (!result.ok()) {
    std::string msg;
    for (const auto& d : result.diagnostics) {
      msg += diagnostic_text(d) + "\n";
    }
    throw Error(msg);
  }
  return std::move(*result.model);
}

}  // namespace

PYBIND11_MODULE(_feedkit, m) {
  m.doc() = "Compositional feedback for relations with fail and unknown";

  py::register_exception<Error>(m, "FeedkitError");

  py::class_<Rfu>(m, "Rfu")
      .def("rows", &rows_of)
      .def("fails_at",
           [](const Rfu& r, const std::string& x) {
             return r.fails_at(parse_point(r.in_sig(), x));
           })
      .def("table", &rfu_table)
      .def("refines", [](const Rfu& r, const Rfu& s) { return refines(r, s); })
      .def("equivalent",
           [](const Rfu& r, const Rfu& s) { return equivalent(r, s); })
      .def("compose",
           [](const Rfu& r, const Rfu& s) { return compose_serial(r, s); })
      .def("choice",
           [](const Rfu& r, const Rfu& s) { return demonic_choice(r, s); })
      .def("parallel",
           [](const Rfu& r, const Rfu& s) { return parallel(r, s); })
      .def("cross", [](const Rfu& r, const Rfu& s) { return cross(r, s); })
      .def("star", &star_bounded)
      .def("wp", [](const Rfu& r) { return wp(r); })
      .def("__eq__",
           [](const Rfu& r, const Rfu& s) { return equivalent(r, s); })
      .def("__repr__", [](const Rfu& r) {
        std::ostringstream os;
        os << "Rfu(" << r.pairs().size() << " rows)";
        return os.str();
      });

  py::class_<Spec>(m, "Spec")
      .def("table", &spec_table)
      .def("refines",
           [](const Spec& s, const Spec& t) { return refine_spec(s, t); })
      .def("seq", [](const Spec& s, const Spec& t) { return seq_spec(s, t); })
      .def("fuse",
           [](const Spec& s, const Spec& t) {
             std::vector<Spec> both{s, t};
             return fuse_specs(both);
           })
      .def("product",
           [](const Spec& s, const Spec& t) { return product_spec(s, t); })
      .def("choice",
           [](const Spec& s, const Spec& t) { return demonic_spec(s, t); })
      .def("miracle_free", &miracle_free)
      .def("__eq__", [](const Spec& s, const Spec& t) { return s == t; });

  py::class_<FeedbackShape>(m, "FeedbackShape")
      .def("inst_feedback",
           [](const FeedbackShape& s) { return inst_feedback(s); })
      .def("fb_hide", [](const FeedbackShape& s) { return fb_hide(s); })
      .def("tree_dot", [](const FeedbackShape& s, const std::string& input) {
        Signature b;
        for (std::size_t i = 0; i < s.rfu.in_sig().size(); ++i) {
          if (i < s.fb_in_begin || i >= s.fb_in_end) {
            b.push_back(s.rfu.in_sig()[i]);
          }
        }
        return emit_dot(feedback_tree(s, parse_point(b, input)));
      });

  py::class_<PrefixSemantics>(m, "PrefixSemantics")
      .def("table", &semantics_table)
      .def("horizon", &PrefixSemantics::horizon)
      .def("refines",
           [](const PrefixSemantics& s, const PrefixSemantics& t) {
             return refine_prefix(s, t);
           })
      .def("__eq__", [](const PrefixSemantics& s, const PrefixSemantics& t) {
        return s == t;
      });

  py::class_<Sts>(m, "Sts")
      .def("delay",
           [](const Sts& s, std::size_t horizon) {
             return delay_feedback(s, horizon);
           })
      .def("one_step", &Sts::one_step_spec)
      .def("refines_onestep", [](const Sts& s, const Sts& t) {
        return refine_sts_onestep(s, t);
      });

  py::class_<Model>(m, "Model")
      .def("rfu", &Model::rfu, py::return_value_policy::copy)
      .def("spec", &Model::spec, py::return_value_policy::copy)
      .def("sts", &Model::sts, py::return_value_policy::copy)
      .def("feedback", &Model::feedback, py::return_value_policy::copy)
      .def("printed", [](const Model& m2) { return m2.print(); });

  m.def("load_model", &parse_or_raise, py::arg("text"),
        "Parse a model file's text; raises FeedkitError on diagnostics.");
}
