#include "feedkit/rfu.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "feedkit/spec.hpp"

namespace feedkit {

namespace {

struct RowSet {
  bool fails = false;
  std::set<Point> outs;
};

// Groups raw pairs by input and applies the normalization convention: a fail
// row absorbs the proper rows at the same input.
std::map<Point, RowSet> group_rows(const Signature& in, const Signature& out,
                                   const std::vector<Rfu::Pair>& raw) {
  std::map<Point, RowSet> rows;
  for (const auto& [x, z] : raw) {
    if (x.is_fail()) {
      if (!z.is_fail()) {
        throw Error("relation maps fail to a proper output");
      }
      continue;  // (fail, fail) is implicit
    }
    require_conforms(x, in, "relation input");
    auto& row = rows[x];
    if (z.is_fail()) {
      row.fails = true;
    } else {
      require_conforms(z, out, "relation output");
      row.outs.insert(z);
    }
  }
  return rows;
}

void require_same(const Signature& a, const Signature& b, const char* what) {
  if (!same_signature(a, b)) {
    throw Error(std::string("signature mismatch in ") + what);
  }
}

}  // namespace

Rfu::Rfu(Signature in_sig, Signature out_sig, std::vector<Pair> raw_pairs)
    : in_(std::move(in_sig)), out_(std::move(out_sig)) {
  auto rows = group_rows(in_, out_, raw_pairs);
  for (auto& [x, row] : rows) {
    if (row.fails) {
      pairs_.emplace_back(x, Point::fail());
    } else {
      for (const auto& z : row.outs) pairs_.emplace_back(x, z);
    }
  }
}

Rfu Rfu::identity(const Signature& sig) {
  std::vector<Pair> pairs;
  for (const auto& p : all_points(sig)) pairs.emplace_back(p, p);
  return Rfu(sig, sig, std::move(pairs));
}

Rfu Rfu::fail_all(const Signature& in_sig, const Signature& out_sig) {
  std::vector<Pair> pairs;
  for (const auto& p : all_points(in_sig)) pairs.emplace_back(p, Point::fail());
  return Rfu(in_sig, out_sig, std::move(pairs));
}

Rfu Rfu::total(const Signature& in_sig, const Signature& out_sig) {
  std::vector<Pair> pairs;
  for (const auto& x : all_points(in_sig)) {
    for (const auto& z : all_points(out_sig)) pairs.emplace_back(x, z);
  }
  return Rfu(in_sig, out_sig, std::move(pairs));
}

bool Rfu::fails_at(const Point& x) const {
  return std::binary_search(pairs_.begin(), pairs_.end(),
                            Pair(x, Point::fail()));
}

std::vector<Point> Rfu::outputs_at(const Point& x) const {
  std::vector<Point> outs;
  auto it = std::lower_bound(pairs_.begin(), pairs_.end(), x,
                             [](const Pair& p, const Point& key) {
                               return p.first < key;
                             });
  for (; it != pairs_.end() && it->first == x; ++it) {
    if (!it->second.is_fail()) outs.push_back(it->second);
  }
  return outs;
}

bool Rfu::contains(const Point& x, const Point& z) const {
  if (x.is_fail()) return z.is_fail();
  return std::binary_search(pairs_.begin(), pairs_.end(), Pair(x, z));
}

std::vector<Point> Rfu::legal_inputs() const {
  std::vector<Point> out;
  for (const auto& x : all_points(in_)) {
    if (!fails_at(x)) out.push_back(x);
  }
  return out;
}

bool operator==(const Rfu& a, const Rfu& b) {
  return same_signature(a.in_, b.in_) && same_signature(a.out_, b.out_) &&
         a.pairs_ == b.pairs_;
}

Rfu compose_serial(const Rfu& r, const Rfu& s) {
  require_same(r.out_sig(), s.in_sig(), "serial composition");
  std::vector<Rfu::Pair> out;
  for (const auto& [x, m] : r.pairs()) {
    if (m.is_fail()) {
      out.emplace_back(x, Point::fail());
      continue;
    }
    if (s.fails_at(m)) out.emplace_back(x, Point::fail());
    for (const auto& z : s.outputs_at(m)) out.emplace_back(x, z);
  }
  return Rfu(r.in_sig(), s.out_sig(), std::move(out));
}

Rfu demonic_choice(const Rfu& r, const Rfu& s) {
  require_same(r.in_sig(), s.in_sig(), "demonic choice");
  require_same(r.out_sig(), s.out_sig(), "demonic choice");
  std::vector<Rfu::Pair> out = r.pairs();
  out.insert(out.end(), s.pairs().begin(), s.pairs().end());
  return Rfu(r.in_sig(), r.out_sig(), std::move(out));
}

Rfu parallel(const Rfu& r, const Rfu& s) {
  Signature in = concat(r.in_sig(), s.in_sig());
  Signature out = concat(r.out_sig(), s.out_sig());
  std::vector<Rfu::Pair> pairs;
  for (const auto& [x, y] : r.pairs()) {
    if (y.is_fail()) continue;
    for (const auto& [u, v] : s.pairs()) {
      if (v.is_fail()) continue;
      pairs.emplace_back(concat(x, u), concat(y, v));
    }
  }
  // An input illegal for either operand is illegal for the pair, whatever
  // the other component sees.
  for (const auto& [x, y] : r.pairs()) {
    if (!y.is_fail()) continue;
    for (const auto& u : all_points(s.in_sig())) {
      pairs.emplace_back(concat(x, u), Point::fail());
    }
  }
  for (const auto& [u, v] : s.pairs()) {
    if (!v.is_fail()) continue;
    for (const auto& x : all_points(r.in_sig())) {
      pairs.emplace_back(concat(x, u), Point::fail());
    }
  }
  return Rfu(std::move(in), std::move(out), std::move(pairs));
}

Rfu cross(const Rfu& r, const Rfu& s) {
  Signature in = concat(s.in_sig(), r.in_sig());
  Signature out = concat(r.out_sig(), s.out_sig());
  std::vector<Rfu::Pair> pairs;
  for (const auto& [x, v] : r.pairs()) {
    if (v.is_fail()) continue;
    for (const auto& [u, y] : s.pairs()) {
      if (y.is_fail()) continue;
      pairs.emplace_back(concat(u, x), concat(v, y));
    }
  }
  for (const auto& [x, v] : r.pairs()) {
    if (!v.is_fail()) continue;
    for (const auto& u : all_points(s.in_sig())) {
      pairs.emplace_back(concat(u, x), Point::fail());
    }
  }
  for (const auto& [u, y] : s.pairs()) {
    if (!y.is_fail()) continue;
    for (const auto& x : all_points(r.in_sig())) {
      pairs.emplace_back(concat(u, x), Point::fail());
    }
  }
  return Rfu(std::move(in), std::move(out), std::move(pairs));
}

std::optional<Point> refine_witness(const Rfu& r, const Rfu& s) {
  require_same(r.in_sig(), s.in_sig(), "refinement");
  require_same(r.out_sig(), s.out_sig(), "refinement");
  // Only inputs with rows in s can violate s.x <= r.x; everywhere else the
  // inclusion is vacuous.
  const Point* last = nullptr;
  for (const auto& [x, z] : s.pairs()) {
    if (last && *last == x) continue;
    if (r.fails_at(x)) continue;
    if (s.fails_at(x)) return x;
    bool ok = true;
    for (const auto& out : s.outputs_at(x)) {
      if (!r.contains(x, out)) {
        ok = false;
        break;
      }
    }
    if (!ok) return x;
    last = &x;
  }
  return std::nullopt;
}

bool refines(const Rfu& r, const Rfu& s) {
  return !refine_witness(r, s).has_value();
}

bool equivalent(const Rfu& r, const Rfu& s) {
  return refines(r, s) && refines(s, r);
}

Rfu star_bounded(const Rfu& r, std::size_t k) {
  require_same(r.in_sig(), r.out_sig(), "bounded star");
  Rfu acc = Rfu::identity(r.in_sig());
  Rfu power = acc;
  for (std::size_t i = 1; i <= k; ++i) {
    power = compose_serial(power, r);
    acc = demonic_choice(acc, power);
  }
  return acc;
}

Spec wp(const Rfu& r) {
  std::vector<Point> legal = r.legal_inputs();
  std::vector<Spec::Pair> rel;
  for (const auto& [x, z] : r.pairs()) {
    if (!z.is_fail()) rel.emplace_back(x, z);
  }
  return Spec(r.in_sig(), r.out_sig(), std::move(legal), std::move(rel));
}

std::string rfu_table(const Rfu& r) {
  std::string out;
  for (const auto& [x, z] : r.pairs()) {
    out += point_text(r.in_sig(), x);
    out += " -> ";
    out += z.is_fail() ? "fail" : point_text(r.out_sig(), z);
    out += "\n";
  }
  return out;
}

}  // namespace feedkit
