#include "feedkit/dot.hpp"

#include <algorithm>
#include <numeric>

namespace feedkit {

namespace {

int tag_rank(FeedbackTree::Tag t) {
  switch (t) {
    case FeedbackTree::Tag::Pending:
      return 0;
    case FeedbackTree::Tag::Output:
      return 1;
    case FeedbackTree::Tag::Fail:
      return 2;
  }
  return 3;
}

std::string label(const FeedbackTree& tree, const FeedbackTree::Node& n) {
  switch (n.tag) {
    case FeedbackTree::Tag::Pending:
      return "(" + point_text(tree.bundle_sig, n.u) + ",?)";
    case FeedbackTree::Tag::Output:
      return "(" + point_text(tree.bundle_sig, n.u) + "," +
             point_text(tree.free_out_sig, n.y) + ")";
    case FeedbackTree::Tag::Fail:
      return "•";
  }
  return "?";
}

}  // namespace

std::string emit_dot(const FeedbackTree& tree) {
  const auto& nodes = tree.nodes;
  // Canonical ids: sort node labels by (tag, u, y).
  std::vector<std::size_t> order(nodes.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& na = nodes[a];
    const auto& nb = nodes[b];
    if (tag_rank(na.tag) != tag_rank(nb.tag)) {
      return tag_rank(na.tag) < tag_rank(nb.tag);
    }
    if (na.u != nb.u) return na.u < nb.u;
    return na.y < nb.y;
  });
  std::vector<std::size_t> id(nodes.size());
  for (std::size_t i = 0; i < order.size(); ++i) id[order[i]] = i;

  std::string out = "digraph feedback_tree {\n";
  for (std::size_t i : order) {
    out += "  n" + std::to_string(id[i]) + " [label=\"" +
           label(tree, nodes[i]) + "\"];\n";
  }
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t c : nodes[i].children) edges.emplace_back(id[i], id[c]);
  }
  std::sort(edges.begin(), edges.end());
  for (const auto& [a, b] : edges) {
    out += "  n" + std::to_string(a) + " -> n" + std::to_string(b) + ";\n";
  }
  out += "}\n";
  return out;
}

}  // namespace feedkit
