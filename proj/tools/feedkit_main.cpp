#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "feedkit/dot.hpp"
#include "feedkit/feedback.hpp"
#include "feedkit/model.hpp"
#include "feedkit/rfu.hpp"
#include "feedkit/spec.hpp"
#include "feedkit/sts.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kPropertyFails = 1;
constexpr int kUsage = 2;

feedkit::Model load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw feedkit::Error("cannot open model file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  auto result = feedkit::parse_model(buf.str());
  if (!result.ok()) {
    std::string msg;
    for (const auto& d : result.diagnostics) {
      msg += path + ":" + feedkit::diagnostic_text(d) + "\n";
    }
    throw feedkit::Error(msg.empty() ? "parse failed" : msg);
  }
  return std::move(*result.model);
}

int run_check(const std::string& path, bool print) {
  feedkit::Model model = load_model(path);
  if (print) {
    std::cout << model.print();
  } else {
    std::cout << "ok\n";
  }
  return kOk;
}

int run_compose(const std::string& path, const std::string& name) {
  feedkit::Model model = load_model(path);
  std::cout << feedkit::rfu_table(model.rfu(name));
  return kOk;
}

int run_feedback(const std::string& path, const std::string& name,
                 bool hide) {
  feedkit::Model model = load_model(path);
  const auto& shape = model.feedback(name);
  feedkit::Rfu result =
      hide ? feedkit::fb_hide(shape) : feedkit::inst_feedback(shape);
  std::cout << feedkit::rfu_table(result);
  return kOk;
}

int run_refine(const std::string& path, const std::string& a,
               const std::string& b) {
  feedkit::Model model = load_model(path);
  auto ka = model.kind_of(a);
  auto kb = model.kind_of(b);
  if (!ka || !kb || *ka != *kb) {
    throw feedkit::Error("refine needs two components of the same kind");
  }
  switch (*ka) {
    case feedkit::Model::Kind::RfuComponent: {
      auto witness = feedkit::refine_witness(model.rfu(a), model.rfu(b));
      if (!witness) return kOk;
      std::cout << "counterexample input: "
                << feedkit::point_text(model.rfu(a).in_sig(), *witness)
                << "\n";
      return kPropertyFails;
    }
    case feedkit::Model::Kind::SpecComponent:
      return feedkit::refine_spec(model.spec(a), model.spec(b))
                 ? kOk
                 : kPropertyFails;
    case feedkit::Model::Kind::StsComponent:
      return feedkit::refine_sts_onestep(model.sts(a), model.sts(b))
                 ? kOk
                 : kPropertyFails;
    default:
      throw feedkit::Error("refine does not apply to feedback declarations");
  }
}

int run_simulate(const std::string& path, const std::string& name,
                 std::size_t horizon) {
  feedkit::Model model = load_model(path);
  std::cout << feedkit::semantics_table(
      feedkit::delay_feedback(model.sts(name), horizon));
  return kOk;
}

int run_tree(const std::string& path, const std::string& name,
             const std::string& input, const std::string& dot_path,
             const std::string& format) {
  feedkit::Model model = load_model(path);
  const auto& shape = model.feedback(name);
  std::size_t k = shape.fb_in_end - shape.fb_in_begin;
  feedkit::Signature b_sig;
  for (std::size_t i = 0; i < shape.rfu.in_sig().size(); ++i) {
    if (i < shape.fb_in_begin || i >= shape.fb_in_end) {
      b_sig.push_back(shape.rfu.in_sig()[i]);
    }
  }
  (void)k;
  feedkit::Point x = feedkit::parse_point(b_sig, input);
  auto tree = feedkit::feedback_tree(shape, x);
  if (format == "table") {
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
      const auto& n = tree.nodes[i];
      std::cout << i << ": ";
      switch (n.tag) {
        case feedkit::FeedbackTree::Tag::Pending:
          std::cout << "(" << feedkit::point_text(tree.bundle_sig, n.u)
                    << ",?)";
          break;
        case feedkit::FeedbackTree::Tag::Output:
          std::cout << "(" << feedkit::point_text(tree.bundle_sig, n.u) << ","
                    << feedkit::point_text(tree.free_out_sig, n.y) << ")";
          break;
        case feedkit::FeedbackTree::Tag::Fail:
          std::cout << "fail";
          break;
      }
      std::cout << " ->";
      for (std::size_t c : n.children) std::cout << " " << c;
      std::cout << "\n";
    }
    return kOk;
  }
  std::string dot = feedkit::emit_dot(tree);
  if (dot_path.empty()) {
    std::cout << dot;
  } else {
    std::ofstream out(dot_path, std::ios::binary);
    if (!out) throw feedkit::Error("cannot write '" + dot_path + "'");
    out << dot;
  }
  return kOk;
}

int run_wp(const std::string& path, const std::string& name) {
  feedkit::Model model = load_model(path);
  std::cout << feedkit::spec_table(feedkit::wp(model.rfu(name)));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"feedkit: compositional feedback for relations with fail and "
               "unknown"};
  app.require_subcommand(1);

  std::string model_path, name, a, b, input, dot_path;
  std::string format = "dot";
  std::size_t horizon = 1;
  bool hide = false, print = false;

  auto* check = app.add_subcommand("check", "parse and validate a model");
  check->add_option("model", model_path, "model file")->required();
  check->add_flag("--print", print, "emit the canonical model text");

  auto* compose =
      app.add_subcommand("compose", "print the rows of a relation");
  compose->add_option("model", model_path, "model file")->required();
  compose->add_option("name", name, "relation name")->required();

  auto* feedback = app.add_subcommand(
      "feedback", "print the instantaneous feedback of a declaration");
  feedback->add_option("model", model_path, "model file")->required();
  feedback->add_option("name", name, "feedback declaration")->required();
  feedback->add_flag("--hide", hide, "hide the feedback bundle");

  auto* refine = app.add_subcommand(
      "refine", "exit 0 iff the second component refines the first");
  refine->add_option("model", model_path, "model file")->required();
  refine->add_option("a", a, "refined component")->required();
  refine->add_option("b", b, "refining component")->required();

  auto* simulate = app.add_subcommand(
      "simulate", "print the horizon semantics of a stateful system");
  simulate->add_option("model", model_path, "model file")->required();
  simulate->add_option("name", name, "system name")->required();
  simulate->add_option("--horizon", horizon, "prefix length")->required();

  auto* tree =
      app.add_subcommand("tree", "emit the feedback tree for one input");
  tree->add_option("model", model_path, "model file")->required();
  tree->add_option("name", name, "feedback declaration")->required();
  tree->add_option("--input", input, "free input tuple, e.g. (false)")
      ->required();
  tree->add_option("--dot", dot_path, "write DOT to this file");
  tree->add_option("--format", format, "table or dot")
      ->check(CLI::IsMember({"table", "dot"}));

  auto* wp_cmd = app.add_subcommand(
      "wp", "print the predicate transformer of a relation");
  wp_cmd->add_option("model", model_path, "model file")->required();
  wp_cmd->add_option("name", name, "relation name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (check->parsed()) return run_check(model_path, print);
    if (compose->parsed()) return run_compose(model_path, name);
    if (feedback->parsed()) return run_feedback(model_path, name, hide);
    if (refine->parsed()) return run_refine(model_path, a, b);
    if (simulate->parsed()) return run_simulate(model_path, name, horizon);
    if (tree->parsed()) {
      return run_tree(model_path, name, input, dot_path, format);
    }
    if (wp_cmd->parsed()) return run_wp(model_path, name);
  } catch (const feedkit::Error& e) {
    std::cerr << e.what();
    std::string msg = e.what();
    if (!msg.empty() && msg.back() != '\n') std::cerr << "\n";
    return kUsage;
  }
  return kUsage;
}
