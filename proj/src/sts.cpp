#include "feedkit/sts.hpp"

#include <algorithm>
#include <set>

namespace feedkit {

Sts::Sts(Signature state_sig, Signature in_sig, Signature out_sig,
         std::vector<Point> init, std::vector<Point> legal,
         std::vector<Pair> trans)
    : state_(std::move(state_sig)),
      in_(std::move(in_sig)),
      out_(std::move(out_sig)) {
  std::set<Point> init_set, legal_set;
  for (const auto& p : init) {
    require_conforms(p, state_, "initial state");
    init_set.insert(p);
  }
  Signature si = concat(state_, in_);
  Signature so = concat(state_, out_);
  for (const auto& p : legal) {
    require_conforms(p, si, "legal predicate point");
    legal_set.insert(p);
  }
  std::set<Pair> trans_set;
  for (const auto& [a, b] : trans) {
    require_conforms(a, si, "transition source");
    require_conforms(b, so, "transition target");
    trans_set.emplace(a, b);
  }
  init_.assign(init_set.begin(), init_set.end());
  legal_.assign(legal_set.begin(), legal_set.end());
  trans_.assign(trans_set.begin(), trans_set.end());
}

bool Sts::is_legal(const Point& state, const Point& input) const {
  return std::binary_search(legal_.begin(), legal_.end(),
                            concat(state, input));
}

std::vector<Sts::Pair> Sts::successors(const Point& state,
                                       const Point& input) const {
  std::vector<Pair> out;
  Point key = concat(state, input);
  auto it = std::lower_bound(trans_.begin(), trans_.end(), key,
                             [](const Pair& p, const Point& k) {
                               return p.first < k;
                             });
  for (; it != trans_.end() && it->first == key; ++it) {
    out.push_back(split(it->second, state_.size()));
  }
  return out;
}

Spec Sts::one_step_spec() const {
  return Spec(concat(state_, in_), concat(state_, out_), legal_, trans_);
}

StepResult sts_step(const Sts& s, const Point& state, const Point& input) {
  require_conforms(state, s.state_sig(), "state");
  require_conforms(input, s.in_sig(), "input");
  if (!s.is_legal(state, input)) return {true, {}};
  return {false, s.successors(state, input)};
}

namespace {

std::vector<Prefix> all_prefixes(const Signature& sig, std::size_t horizon) {
  std::vector<Prefix> out{{}};
  auto points = all_points(sig);
  for (std::size_t i = 0; i < horizon; ++i) {
    std::vector<Prefix> next;
    next.reserve(out.size() * points.size());
    for (const auto& pre : out) {
      for (const auto& p : points) {
        Prefix e = pre;
        e.push_back(p);
        next.push_back(std::move(e));
      }
    }
    out = std::move(next);
  }
  return out;
}

// Forward exploration of reachable states per position: the prefix is
// illegal iff some realizable chain from init reaches a violated assertion.
bool prefix_is_legal(const Sts& s, const Prefix& x) {
  std::set<Point> layer(s.init().begin(), s.init().end());
  for (const auto& xi : x) {
    std::set<Point> next;
    for (const auto& u : layer) {
      if (!s.is_legal(u, xi)) return false;
      for (const auto& [u2, y] : s.successors(u, xi)) next.insert(u2);
    }
    layer = std::move(next);
  }
  return true;
}

}  // namespace

std::vector<Prefix> legal_prefixes(const Sts& s, std::size_t horizon) {
  std::vector<Prefix> out;
  for (const auto& x : all_prefixes(s.in_sig(), horizon)) {
    if (prefix_is_legal(s, x)) out.push_back(x);
  }
  return out;
}

PrefixSemantics::PrefixSemantics(Signature in_sig, Signature out_sig,
                                 std::size_t horizon,
                                 std::vector<Prefix> legal,
                                 std::vector<IoPair> io)
    : in_(std::move(in_sig)), out_(std::move(out_sig)), horizon_(horizon) {
  std::set<Prefix> legal_set;
  for (auto& p : legal) {
    if (p.size() != horizon_) throw Error("legal prefix of wrong length");
    legal_set.insert(std::move(p));
  }
  std::set<IoPair> io_set;
  for (auto& [x, y] : io) {
    if (x.size() != horizon_ || y.size() != horizon_) {
      throw Error("io prefix of wrong length");
    }
    if (legal_set.count(x)) io_set.emplace(std::move(x), std::move(y));
  }
  legal_.assign(legal_set.begin(), legal_set.end());
  io_.assign(io_set.begin(), io_set.end());
}

bool PrefixSemantics::is_legal(const Prefix& x) const {
  return std::binary_search(legal_.begin(), legal_.end(), x);
}

std::vector<Prefix> PrefixSemantics::outputs_at(const Prefix& x) const {
  std::vector<Prefix> out;
  auto it = std::lower_bound(io_.begin(), io_.end(), x,
                             [](const IoPair& p, const Prefix& k) {
                               return p.first < k;
                             });
  for (; it != io_.end() && it->first == x; ++it) out.push_back(it->second);
  return out;
}

bool operator==(const PrefixSemantics& a, const PrefixSemantics& b) {
  return same_signature(a.in_, b.in_) && same_signature(a.out_, b.out_) &&
         a.horizon_ == b.horizon_ && a.legal_ == b.legal_ && a.io_ == b.io_;
}

PrefixSemantics delay_feedback(const Sts& s, std::size_t horizon) {
  std::vector<Prefix> legal;
  std::vector<PrefixSemantics::IoPair> io;
  for (const auto& x : all_prefixes(s.in_sig(), horizon)) {
    if (!prefix_is_legal(s, x)) continue;
    legal.push_back(x);
    // Breadth-first layering over (state, output-prefix) pairs with
    // per-layer deduplication.
    std::set<std::pair<Point, Prefix>> layer;
    for (const auto& u0 : s.init()) layer.insert({u0, {}});
    for (const auto& xi : x) {
      std::set<std::pair<Point, Prefix>> next;
      for (const auto& [u, ys] : layer) {
        for (const auto& [u2, y] : s.successors(u, xi)) {
          Prefix ys2 = ys;
          ys2.push_back(y);
          next.insert({u2, std::move(ys2)});
        }
      }
      layer = std::move(next);
    }
    std::set<Prefix> ys;
    for (const auto& [u, y] : layer) ys.insert(y);
    for (const auto& y : ys) io.emplace_back(x, y);
  }
  return PrefixSemantics(s.in_sig(), s.out_sig(), horizon, std::move(legal),
                         std::move(io));
}

bool refine_sts_onestep(const Sts& s, const Sts& t) {
  return refine_spec(s.one_step_spec(), t.one_step_spec());
}

bool refine_prefix(const PrefixSemantics& s, const PrefixSemantics& t) {
  if (s.horizon() != t.horizon()) throw Error("horizon mismatch");
  if (!same_signature(s.in_sig(), t.in_sig()) ||
      !same_signature(s.out_sig(), t.out_sig())) {
    throw Error("signature mismatch in prefix refinement");
  }
  for (const auto& x : s.legal()) {
    if (!t.is_legal(x)) return false;
    auto s_outs = s.outputs_at(x);
    for (const auto& y : t.outputs_at(x)) {
      if (!std::binary_search(s_outs.begin(), s_outs.end(), y)) return false;
    }
  }
  return true;
}

bool ltl_always(std::size_t len, const IndexPred& p) {
  for (std::size_t i = 0; i < len; ++i) {
    if (!p(i)) return false;
  }
  return true;
}

bool ltl_next(std::size_t len, const IndexPred& p) {
  if (len < 2) throw Error("prefix too short for the next operator");
  return p(1);
}

bool ltl_lead(std::size_t len, const IndexPred& p, const IndexPred& q) {
  for (std::size_t n = 0; n < len; ++n) {
    bool held = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (!p(i)) {
        held = false;
        break;
      }
    }
    if (held && !q(n)) return false;
  }
  return true;
}

std::string prefix_text(const Signature& sig, const Prefix& p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ",";
    if (sig.size() == 1) {
      out += value_text(*sig[0], p[i].values()[0]);
    } else {
      out += point_text(sig, p[i]);
    }
  }
  out += ")";
  return out;
}

std::string semantics_table(const PrefixSemantics& sem) {
  std::string out = "legal:\n";
  for (const auto& x : sem.legal()) {
    out += prefix_text(sem.in_sig(), x);
    out += "\n";
  }
  out += "io:\n";
  for (const auto& [x, y] : sem.io()) {
    out += prefix_text(sem.in_sig(), x);
    out += " -> ";
    out += prefix_text(sem.out_sig(), y);
    out += "\n";
  }
  return out;
}

}  // namespace feedkit
