#include "feedkit/spec.hpp"

#include <algorithm>
#include <set>

namespace feedkit {

namespace {
void require_same(const Signature& a, const Signature& b, const char* what) {
  if (!same_signature(a, b)) {
    throw Error(std::string("signature mismatch in ") + what);
  }
}
}  // namespace

Spec::Spec(Signature in_sig, Signature out_sig, std::vector<Point> legal,
           std::vector<Pair> rel)
    : in_(std::move(in_sig)), out_(std::move(out_sig)) {
  std::set<Point> legal_set;
  for (const auto& p : legal) {
    require_conforms(p, in_, "legal input");
    legal_set.insert(p);
  }
  std::set<Pair> rel_set;
  for (const auto& [x, y] : rel) {
    require_conforms(x, in_, "relation input");
    require_conforms(y, out_, "relation output");
    if (legal_set.count(x)) rel_set.emplace(x, y);  // canonical form
  }
  legal_.assign(legal_set.begin(), legal_set.end());
  rel_.assign(rel_set.begin(), rel_set.end());
}

Spec Spec::skip(const Signature& sig) {
  std::vector<Pair> rel;
  for (const auto& p : all_points(sig)) rel.emplace_back(p, p);
  return Spec(sig, sig, all_points(sig), std::move(rel));
}

Spec Spec::fail(const Signature& in_sig, const Signature& out_sig) {
  return Spec(in_sig, out_sig, {}, {});
}

Spec Spec::magic(const Signature& in_sig, const Signature& out_sig) {
  return Spec(in_sig, out_sig, all_points(in_sig), {});
}

Spec Spec::havoc(const Signature& in_sig, const Signature& out_sig) {
  std::vector<Pair> rel;
  for (const auto& x : all_points(in_sig)) {
    for (const auto& y : all_points(out_sig)) rel.emplace_back(x, y);
  }
  return Spec(in_sig, out_sig, all_points(in_sig), std::move(rel));
}

Spec Spec::assert_legal(const Signature& sig, std::vector<Point> legal) {
  std::vector<Pair> rel;
  for (const auto& p : legal) rel.emplace_back(p, p);
  return Spec(sig, sig, std::move(legal), std::move(rel));
}

Spec Spec::update(const Signature& in_sig, const Signature& out_sig,
                  std::vector<Pair> rel) {
  return Spec(in_sig, out_sig, all_points(in_sig), std::move(rel));
}

bool Spec::is_legal(const Point& x) const {
  return std::binary_search(legal_.begin(), legal_.end(), x);
}

std::vector<Point> Spec::outputs_at(const Point& x) const {
  std::vector<Point> outs;
  auto it = std::lower_bound(rel_.begin(), rel_.end(), x,
                             [](const Pair& p, const Point& key) {
                               return p.first < key;
                             });
  for (; it != rel_.end() && it->first == x; ++it) outs.push_back(it->second);
  return outs;
}

bool operator==(const Spec& a, const Spec& b) {
  return same_signature(a.in_, b.in_) && same_signature(a.out_, b.out_) &&
         a.legal_ == b.legal_ && a.rel_ == b.rel_;
}

Spec seq_spec(const Spec& s, const Spec& t) {
  require_same(s.out_sig(), t.in_sig(), "serial composition");
  std::vector<Point> legal;
  for (const auto& x : s.legal()) {
    bool ok = true;
    for (const auto& y : s.outputs_at(x)) {
      if (!t.is_legal(y)) {
        ok = false;
        break;
      }
    }
    if (ok) legal.push_back(x);
  }
  std::vector<Spec::Pair> rel;
  for (const auto& [x, y] : s.rel()) {
    for (const auto& z : t.outputs_at(y)) rel.emplace_back(x, z);
  }
  return Spec(s.in_sig(), t.out_sig(), std::move(legal), std::move(rel));
}

bool refine_spec(const Spec& s, const Spec& t) {
  require_same(s.in_sig(), t.in_sig(), "refinement");
  require_same(s.out_sig(), t.out_sig(), "refinement");
  for (const auto& x : s.legal()) {
    if (!t.is_legal(x)) return false;
    for (const auto& y : t.outputs_at(x)) {
      if (!std::binary_search(s.rel().begin(), s.rel().end(),
                              Spec::Pair(x, y))) {
        return false;
      }
    }
  }
  return true;
}

Spec fuse_specs(std::span<const Spec> specs) {
  if (specs.empty()) throw Error("fusion of an empty list");
  for (const auto& s : specs) {
    require_same(specs[0].in_sig(), s.in_sig(), "fusion");
    require_same(specs[0].out_sig(), s.out_sig(), "fusion");
  }
  std::vector<Point> legal = specs[0].legal();
  std::vector<Spec::Pair> rel = specs[0].rel();
  for (std::size_t i = 1; i < specs.size(); ++i) {
    std::vector<Point> l2;
    std::set_intersection(legal.begin(), legal.end(),
                          specs[i].legal().begin(), specs[i].legal().end(),
                          std::back_inserter(l2));
    legal = std::move(l2);
    std::vector<Spec::Pair> r2;
    std::set_intersection(rel.begin(), rel.end(), specs[i].rel().begin(),
                          specs[i].rel().end(), std::back_inserter(r2));
    rel = std::move(r2);
  }
  return Spec(specs[0].in_sig(), specs[0].out_sig(), std::move(legal),
              std::move(rel));
}

Spec product_spec(const Spec& s, const Spec& t) {
  Signature in = concat(s.in_sig(), t.in_sig());
  Signature out = concat(s.out_sig(), t.out_sig());
  std::vector<Point> legal;
  for (const auto& x : s.legal()) {
    for (const auto& y : t.legal()) legal.push_back(concat(x, y));
  }
  std::vector<Spec::Pair> rel;
  for (const auto& [x, xo] : s.rel()) {
    for (const auto& [y, yo] : t.rel()) {
      rel.emplace_back(concat(x, y), concat(xo, yo));
    }
  }
  return Spec(std::move(in), std::move(out), std::move(legal), std::move(rel));
}

Spec demonic_spec(const Spec& s, const Spec& t) {
  require_same(s.in_sig(), t.in_sig(), "demonic choice");
  require_same(s.out_sig(), t.out_sig(), "demonic choice");
  std::vector<Point> legal;
  std::set_intersection(s.legal().begin(), s.legal().end(),
                        t.legal().begin(), t.legal().end(),
                        std::back_inserter(legal));
  std::vector<Spec::Pair> rel = s.rel();
  rel.insert(rel.end(), t.rel().begin(), t.rel().end());
  return Spec(s.in_sig(), s.out_sig(), std::move(legal), std::move(rel));
}

bool miracle_free(const Spec& s) {
  for (const auto& x : s.legal()) {
    if (s.outputs_at(x).empty()) return false;
  }
  return true;
}

namespace {
void require_bundle(const Signature& sig, std::size_t k, const char* what) {
  if (k > sig.size()) throw Error(std::string(what) + ": bundle too wide");
  for (std::size_t i = 0; i < k; ++i) {
    if (!sig[i]->lifted()) {
      throw Error(std::string(what) + ": feedback wire '" + sig[i]->name() +
                  "' is not lifted");
    }
  }
}
}  // namespace

Spec fb_begin_spec(const Signature& bundle, const Signature& free_in) {
  require_bundle(bundle, bundle.size(), "fb_begin");
  Point bot = bottom(bundle);
  std::vector<Spec::Pair> rel;
  for (const auto& x : all_points(free_in)) {
    rel.emplace_back(x, concat(bot, x));
  }
  return Spec::update(free_in, concat(bundle, free_in), std::move(rel));
}

Spec fb_end_spec(const Signature& bundle, const Signature& free_out) {
  Signature in = concat(bundle, free_out);
  std::vector<Point> legal;
  std::vector<Spec::Pair> rel;
  for (const auto& p : all_points(in)) {
    auto [v, y] = split(p, bundle.size());
    if (maximal(v)) {
      legal.push_back(p);
      rel.emplace_back(p, y);
    }
  }
  return Spec(std::move(in), free_out, std::move(legal), std::move(rel));
}

Spec fb_a_spec(const Spec& s, std::size_t bundle_wires) {
  require_bundle(s.in_sig(), bundle_wires, "fb_a");
  require_bundle(s.out_sig(), bundle_wires, "fb_a");
  Signature a = slice(s.in_sig(), 0, bundle_wires);
  Signature b = slice(s.in_sig(), bundle_wires, s.in_sig().size());
  Signature c = slice(s.out_sig(), bundle_wires, s.out_sig().size());
  if (!same_signature(a, slice(s.out_sig(), 0, bundle_wires))) {
    throw Error("fb_a: input and output bundles differ");
  }

  // [u,x ~> (u,x),x]
  std::vector<Spec::Pair> dup;
  for (const auto& ux : all_points(s.in_sig())) {
    auto [u, x] = split(ux, bundle_wires);
    dup.emplace_back(ux, concat(ux, x));
  }
  Spec copy_in = Spec::update(s.in_sig(), concat(s.in_sig(), b), std::move(dup));

  // [u,x ~> v,y | u < v]
  std::vector<Spec::Pair> inc;
  for (const auto& ux : all_points(s.in_sig())) {
    auto [u, x] = split(ux, bundle_wires);
    for (const auto& vy : all_points(s.out_sig())) {
      auto [v, y] = split(vy, bundle_wires);
      if (lt(u, v)) inc.emplace_back(ux, vy);
    }
  }
  Spec strict_increase = Spec::update(s.in_sig(), s.out_sig(), std::move(inc));

  std::vector<Spec> fused{s, strict_increase};
  Spec stepped = product_spec(fuse_specs(fused), Spec::skip(b));

  // [(v,y),x ~> (v,x)]
  std::vector<Spec::Pair> drop;
  for (const auto& p : all_points(concat(s.out_sig(), b))) {
    auto [vy, x] = split(p, s.out_sig().size());
    auto [v, y] = split(vy, bundle_wires);
    drop.emplace_back(p, concat(v, x));
  }
  Spec rewire = Spec::update(concat(s.out_sig(), b), s.in_sig(),
                             std::move(drop));

  return seq_spec(seq_spec(copy_in, stepped), rewire);
}

Spec fb_b_spec(const Spec& s, std::size_t bundle_wires) {
  require_bundle(s.in_sig(), bundle_wires, "fb_b");
  // [u,x ~> v,y | v = u]
  std::vector<Spec::Pair> keep;
  for (const auto& ux : all_points(s.in_sig())) {
    auto [u, x] = split(ux, bundle_wires);
    for (const auto& vy : all_points(s.out_sig())) {
      auto [v, y] = split(vy, bundle_wires);
      if (v == u) keep.emplace_back(ux, vy);
    }
  }
  std::vector<Spec> fused{s, Spec::update(s.in_sig(), s.out_sig(),
                                          std::move(keep))};
  return fuse_specs(fused);
}

Spec inst_feedback_pt(const Spec& s, std::size_t bundle_wires) {
  require_bundle(s.in_sig(), bundle_wires, "instantaneous feedback");
  require_bundle(s.out_sig(), bundle_wires, "instantaneous feedback");
  Signature a = slice(s.in_sig(), 0, bundle_wires);
  Signature b = slice(s.in_sig(), bundle_wires, s.in_sig().size());
  if (!same_signature(a, slice(s.out_sig(), 0, bundle_wires))) {
    throw Error("instantaneous feedback: input and output bundles differ");
  }
  Spec step = fb_a_spec(s, bundle_wires);
  Spec star = Spec::skip(s.in_sig());
  Spec power = star;
  for (std::size_t i = 1; i <= chain_bound(a); ++i) {
    power = seq_spec(power, step);
    star = demonic_spec(star, power);
  }
  return seq_spec(seq_spec(fb_begin_spec(a, b), star),
                  fb_b_spec(s, bundle_wires));
}

std::string spec_table(const Spec& s) {
  std::string out = "legal:\n";
  for (const auto& x : s.legal()) {
    out += point_text(s.in_sig(), x);
    out += "\n";
  }
  out += "rel:\n";
  for (const auto& [x, y] : s.rel()) {
    out += point_text(s.in_sig(), x);
    out += " -> ";
    out += point_text(s.out_sig(), y);
    out += "\n";
  }
  return out;
}

}  // namespace feedkit
