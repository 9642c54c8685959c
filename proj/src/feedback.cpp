#include "feedkit/feedback.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace feedkit {

namespace {

Point permute(const Point& p, const std::vector<std::size_t>& perm) {
  std::vector<Value> vals(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    vals[i] = p.values()[perm[i]];
  }
  return Point::tuple(std::move(vals));
}

Signature permute(const Signature& s, const std::vector<std::size_t>& perm) {
  Signature out;
  out.reserve(perm.size());
  for (std::size_t i : perm) out.push_back(s[i]);
  return out;
}

void check_perm(const std::vector<std::size_t>& perm, std::size_t n) {
  if (perm.size() != n) throw Error("wire permutation has wrong size");
  std::vector<bool> seen(n, false);
  for (std::size_t i : perm) {
    if (i >= n || seen[i]) throw Error("wire permutation is not a bijection");
    seen[i] = true;
  }
}

// Shape with the feedback bundle moved to the front of both signatures.
struct Arranged {
  Rfu r;
  std::size_t k;
  std::vector<std::size_t> out_perm;  // arranged output -> original output
};

std::vector<std::size_t> front_perm(std::size_t n, std::size_t begin,
                                    std::size_t end) {
  std::vector<std::size_t> perm;
  for (std::size_t i = begin; i < end; ++i) perm.push_back(i);
  for (std::size_t i = 0; i < n; ++i) {
    if (i < begin || i >= end) perm.push_back(i);
  }
  return perm;
}

Arranged arrange(const FeedbackShape& s) {
  auto in_perm = front_perm(s.rfu.in_sig().size(), s.fb_in_begin, s.fb_in_end);
  auto out_perm =
      front_perm(s.rfu.out_sig().size(), s.fb_out_begin, s.fb_out_end);
  return {permute_wires(s.rfu, in_perm, out_perm), s.fb_in_end - s.fb_in_begin,
          out_perm};
}

}  // namespace

Rfu permute_wires(const Rfu& r, const std::vector<std::size_t>& in_perm,
                  const std::vector<std::size_t>& out_perm) {
  check_perm(in_perm, r.in_sig().size());
  check_perm(out_perm, r.out_sig().size());
  std::vector<Rfu::Pair> pairs;
  pairs.reserve(r.pairs().size());
  for (const auto& [x, z] : r.pairs()) {
    pairs.emplace_back(permute(x, in_perm),
                       z.is_fail() ? z : permute(z, out_perm));
  }
  return Rfu(permute(r.in_sig(), in_perm), permute(r.out_sig(), out_perm),
             std::move(pairs));
}

FeedbackShape make_shape(Rfu rfu, std::size_t fb_in_begin,
                         std::size_t fb_in_end, std::size_t fb_out_begin,
                         std::size_t fb_out_end) {
  if (fb_in_begin > fb_in_end || fb_in_end > rfu.in_sig().size() ||
      fb_out_begin > fb_out_end || fb_out_end > rfu.out_sig().size()) {
    throw Error("feedback wire range out of bounds");
  }
  Signature a_in = slice(rfu.in_sig(), fb_in_begin, fb_in_end);
  Signature a_out = slice(rfu.out_sig(), fb_out_begin, fb_out_end);
  if (!same_signature(a_in, a_out)) {
    throw Error("feedback input and output bundles differ");
  }
  for (const auto& w : a_in) {
    if (!w->lifted()) {
      throw Error("feedback wire '" + w->name() + "' is not lifted");
    }
  }
  return {std::move(rfu), fb_in_begin, fb_in_end, fb_out_begin, fb_out_end};
}

FeedbackStages feedback_stages(const FeedbackShape& shape) {
  Arranged ar = arrange(shape);
  const Rfu& r = ar.r;
  std::size_t k = ar.k;
  Signature a_sig = slice(r.in_sig(), 0, k);
  Signature b_sig = slice(r.in_sig(), k, r.in_sig().size());
  Signature c_sig = slice(r.out_sig(), k, r.out_sig().size());

  std::vector<Rfu::Pair> begin_pairs;
  Point bot = bottom(a_sig);
  for (const auto& x : all_points(b_sig)) {
    begin_pairs.emplace_back(x, concat(bot, x));
  }
  Rfu begin(b_sig, r.in_sig(), std::move(begin_pairs));

  std::vector<Rfu::Pair> a_pairs, b_pairs;
  for (const auto& [ux, vy] : r.pairs()) {
    auto [u, x] = split(ux, k);
    if (vy.is_fail()) {
      a_pairs.emplace_back(ux, Point::fail());
      b_pairs.emplace_back(ux, Point::fail());
      continue;
    }
    auto [v, y] = split(vy, k);
    if (lt(u, v)) a_pairs.emplace_back(ux, concat(v, x));
    if (u == v) b_pairs.emplace_back(ux, vy);
  }
  Rfu a(r.in_sig(), r.in_sig(), std::move(a_pairs));
  Rfu b(r.in_sig(), r.out_sig(), std::move(b_pairs));

  std::vector<Rfu::Pair> end_pairs;
  for (const auto& uy : all_points(r.out_sig())) {
    auto [u, y] = split(uy, k);
    end_pairs.emplace_back(uy, maximal(u) ? y : Point::fail());
  }
  Rfu end(r.out_sig(), c_sig, std::move(end_pairs));

  return {std::move(begin), std::move(a), std::move(b), std::move(end)};
}

Rfu inst_feedback(const FeedbackShape& shape) {
  FeedbackStages st = feedback_stages(shape);
  std::size_t k = shape.fb_in_end - shape.fb_in_begin;
  Signature a_sig = slice(st.a.in_sig(), 0, k);
  return compose_serial(
      compose_serial(st.begin, star_bounded(st.a, chain_bound(a_sig))), st.b);
}

Rfu fb_hide(const FeedbackShape& shape) {
  FeedbackStages st = feedback_stages(shape);
  std::size_t k = shape.fb_in_end - shape.fb_in_begin;
  Signature a_sig = slice(st.a.in_sig(), 0, k);
  Rfu inner = compose_serial(
      compose_serial(st.begin, star_bounded(st.a, chain_bound(a_sig))), st.b);
  return compose_serial(inner, st.end);
}

FeedbackTree feedback_tree(const FeedbackShape& shape, const Point& x) {
  if (x.is_fail()) throw Error("feedback tree input must be proper");
  Arranged ar = arrange(shape);
  const Rfu& r = ar.r;
  std::size_t k = ar.k;
  Signature a_sig = slice(r.in_sig(), 0, k);
  Signature b_sig = slice(r.in_sig(), k, r.in_sig().size());
  Signature c_sig = slice(r.out_sig(), k, r.out_sig().size());
  require_conforms(x, b_sig, "feedback tree input");

  FeedbackTree tree;
  tree.bundle_sig = a_sig;
  tree.free_out_sig = c_sig;
  std::map<Point, std::size_t> pending_ids, fail_ids;
  std::map<std::pair<Point, Point>, std::size_t> output_ids;

  tree.nodes.push_back({bottom(a_sig), FeedbackTree::Tag::Pending, {}, {}});
  pending_ids[bottom(a_sig)] = 0;
  std::deque<std::size_t> work{0};

  while (!work.empty()) {
    std::size_t id = work.front();
    work.pop_front();
    Point u = tree.nodes[id].u;
    Point in = concat(u, x);
    std::vector<std::size_t> children;
    if (r.fails_at(in)) {
      auto it = fail_ids.find(u);
      if (it == fail_ids.end()) {
        it = fail_ids.emplace(u, tree.nodes.size()).first;
        tree.nodes.push_back({u, FeedbackTree::Tag::Fail, {}, {}});
      }
      children.push_back(it->second);
    }
    for (const auto& vy : r.outputs_at(in)) {
      auto [v, y] = split(vy, k);
      if (lt(u, v)) {
        auto it = pending_ids.find(v);
        if (it == pending_ids.end()) {
          it = pending_ids.emplace(v, tree.nodes.size()).first;
          tree.nodes.push_back({v, FeedbackTree::Tag::Pending, {}, {}});
          work.push_back(it->second);
        }
        children.push_back(it->second);
      } else if (v == u) {
        auto key = std::make_pair(u, y);
        auto it = output_ids.find(key);
        if (it == output_ids.end()) {
          it = output_ids.emplace(key, tree.nodes.size()).first;
          tree.nodes.push_back({u, FeedbackTree::Tag::Output, y, {}});
        }
        children.push_back(it->second);
      }
    }
    std::sort(children.begin(), children.end());
    children.erase(std::unique(children.begin(), children.end()),
                   children.end());
    tree.nodes[id].children = std::move(children);
  }
  return tree;
}

DetFixpoint det_fixpoint(const FeedbackShape& shape, const Point& x) {
  Arranged ar = arrange(shape);
  const Rfu& r = ar.r;
  std::size_t k = ar.k;
  Signature a_sig = slice(r.in_sig(), 0, k);
  Signature b_sig = slice(r.in_sig(), k, r.in_sig().size());
  require_conforms(x, b_sig, "deterministic feedback input");

  // The relation must be the graph of total functions: exactly one proper
  // output per input, never fail.
  std::map<Point, std::pair<Point, Point>> fn;  // (u,x') -> (f, g)
  for (const auto& in : all_points(r.in_sig())) {
    if (r.fails_at(in)) {
      throw Error("relation is not the graph of total functions");
    }
    auto outs = r.outputs_at(in);
    if (outs.size() != 1) {
      throw Error("relation is not the graph of total functions");
    }
    fn[in] = split(outs[0], k);
  }
  auto f = [&](const Point& u) { return fn.at(concat(u, x)).first; };

  auto a_points = all_points(a_sig);
  for (const auto& u : a_points) {
    for (const auto& v : a_points) {
      if (leq(u, v) && !leq(f(u), f(v))) {
        throw Error("feedback function is not monotone at the given input");
      }
    }
  }

  Point u = bottom(a_sig);
  for (std::size_t i = 0; i <= chain_bound(a_sig); ++i) {
    Point next = f(u);
    if (next == u) break;
    u = next;
  }
  return {u, fn.at(concat(u, x)).second};
}

DoubleShape make_double_shape(Rfu rfu, std::size_t a_wires,
                              std::size_t b_wires) {
  std::size_t ab = a_wires + b_wires;
  if (ab > rfu.in_sig().size() || ab > rfu.out_sig().size()) {
    throw Error("double feedback bundles out of bounds");
  }
  if (!same_signature(slice(rfu.in_sig(), 0, ab), slice(rfu.out_sig(), 0, ab))) {
    throw Error("double feedback bundles differ between input and output");
  }
  for (std::size_t i = 0; i < ab; ++i) {
    if (!rfu.in_sig()[i]->lifted()) {
      throw Error("double feedback wire '" + rfu.in_sig()[i]->name() +
                  "' is not lifted");
    }
  }
  return {std::move(rfu), a_wires, b_wires};
}

Rfu seq_feedback(const DoubleShape& shape) {
  const Rfu& r = shape.rfu;
  std::size_t a = shape.a_wires, b = shape.b_wires;
  // Feedback on the A bundle; the flat adapt_1 rewiring is the identity.
  Rfu first = inst_feedback(make_shape(r, 0, a, 0, a));
  // adapt_2 swaps the A and B output blocks so B leads.
  std::size_t n_out = first.out_sig().size();
  std::vector<std::size_t> swap_ab;
  for (std::size_t i = 0; i < b; ++i) swap_ab.push_back(a + i);
  for (std::size_t i = 0; i < a; ++i) swap_ab.push_back(i);
  for (std::size_t i = a + b; i < n_out; ++i) swap_ab.push_back(i);
  std::vector<std::size_t> id_in(first.in_sig().size());
  for (std::size_t i = 0; i < id_in.size(); ++i) id_in[i] = i;
  Rfu swapped = permute_wires(first, id_in, swap_ab);
  // Feedback on the B bundle, then adapt_3 restores the (A, B) block order.
  Rfu second = inst_feedback(make_shape(swapped, 0, b, 0, b));
  std::vector<std::size_t> swap_back;
  for (std::size_t i = 0; i < a; ++i) swap_back.push_back(b + i);
  for (std::size_t i = 0; i < b; ++i) swap_back.push_back(i);
  for (std::size_t i = a + b; i < second.out_sig().size(); ++i) {
    swap_back.push_back(i);
  }
  std::vector<std::size_t> id_in2(second.in_sig().size());
  for (std::size_t i = 0; i < id_in2.size(); ++i) id_in2[i] = i;
  return permute_wires(second, id_in2, swap_back);
}

SideConditions side_conditions(const DoubleShape& shape) {
  const Rfu& r = shape.rfu;
  std::size_t a = shape.a_wires, b = shape.b_wires;
  std::size_t ab = a + b;
  Signature ab_sig = slice(r.in_sig(), 0, ab);
  Signature c_sig = slice(r.in_sig(), ab, r.in_sig().size());
  auto ab_points = all_points(ab_sig);

  SideConditions sc{true, true, true, true};

  // mono: every proper row survives lowering the input bundle.
  for (const auto& [in, out] : r.pairs()) {
    if (out.is_fail()) continue;
    auto [u1, x] = split(in, ab);
    for (const auto& u0 : ab_points) {
      if (leq(u0, u1) && !r.contains(concat(u0, x), out)) {
        sc.mono = false;
        break;
      }
    }
    if (!sc.mono) break;
  }

  // mono_fail: fail rows survive raising the input bundle.
  for (const auto& [in, out] : r.pairs()) {
    if (!out.is_fail()) continue;
    auto [u0, x] = split(in, ab);
    for (const auto& u1 : ab_points) {
      if (leq(u0, u1) && !r.fails_at(concat(u1, x))) {
        sc.mono_fail = false;
        break;
      }
    }
    if (!sc.mono_fail) break;
  }

  Point bots = bottom(ab_sig);
  auto rows_at_bottom = [&]() {
    std::vector<Rfu::Pair> rows;
    for (const auto& z : all_points(c_sig)) {
      Point in = concat(bots, z);
      for (const auto& out : r.outputs_at(in)) rows.emplace_back(in, out);
    }
    return rows;
  };

  // indep1: a row at (bot,bot) is reachable with either half already fixed.
  for (const auto& [in, out] : rows_at_bottom()) {
    auto [u, z] = split(in, ab);
    (void)u;
    auto [vw, zp] = split(out, ab);
    (void)zp;
    auto [xv, yv] = split(vw, a);
    Point fixed_x = concat(xv, bottom(slice(ab_sig, a, ab)));
    Point fixed_y = concat(bottom(slice(ab_sig, 0, a)), yv);
    bool found_x = false, found_y = false;
    for (const auto& o : r.outputs_at(concat(fixed_x, z))) {
      if (split(o, ab).first == vw) {
        found_x = true;
        break;
      }
    }
    for (const auto& o : r.outputs_at(concat(fixed_y, z))) {
      if (split(o, ab).first == vw) {
        found_y = true;
        break;
      }
    }
    if (!found_x || !found_y) {
      sc.indep1 = false;
      break;
    }
  }

  // indep2: bundle halves of rows at (bot,bot) recombine.
  for (const auto& z : all_points(c_sig)) {
    Point in = concat(bots, z);
    auto outs = r.outputs_at(in);
    for (const auto& o1 : outs) {
      auto [ab1, y1] = split(o1, ab);
      auto a1 = split(ab1, a).first;
      for (const auto& o2 : outs) {
        auto [ab2, y2] = split(o2, ab);
        auto b2 = split(ab2, a).second;
        Point mixed = concat(a1, b2);
        bool found = false;
        for (const auto& o : outs) {
          if (split(o, ab).first == mixed) {
            found = true;
            break;
          }
        }
        if (!found) {
          sc.indep2 = false;
          break;
        }
      }
      if (!sc.indep2) break;
    }
    if (!sc.indep2) break;
  }

  return sc;
}

}  // namespace feedkit
