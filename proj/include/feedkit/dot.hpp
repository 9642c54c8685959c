#pragma once

#include <string>

#include "feedkit/feedback.hpp"

namespace feedkit {

/// Renders a feedback tree as a DOT digraph. Node ids follow the canonical
/// label order, so the output is byte-identical across runs.
std::string emit_dot(const FeedbackTree& tree);

}  // namespace feedkit
