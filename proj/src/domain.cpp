#include "feedkit/domain.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace feedkit {

WireDomain::WireDomain(std::string name, std::vector<std::string> atoms,
                       bool lifted, std::size_t atom_cap)
    : name_(std::move(name)), atoms_(std::move(atoms)), lifted_(lifted) {
  if (atoms_.empty()) {
    throw Error("wire domain '" + name_ + "' has no atoms");
  }
  if (atoms_.size() > atom_cap) {
    throw Error("wire domain '" + name_ + "' exceeds the atom cap of " +
                std::to_string(atom_cap));
  }
  std::set<std::string> seen;
  for (const auto& a : atoms_) {
    if (!seen.insert(a).second) {
      throw Error("wire domain '" + name_ + "' repeats atom '" + a + "'");
    }
  }
}

Value WireDomain::atom(const std::string& atom_name) const {
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (atoms_[i] == atom_name) return static_cast<Value>(i);
  }
  throw Error("domain '" + name_ + "' has no atom '" + atom_name + "'");
}

const std::string& WireDomain::atom_name(Value v) const {
  if (v < 0 || static_cast<std::size_t>(v) >= atoms_.size()) {
    throw Error("atom index out of range in domain '" + name_ + "'");
  }
  return atoms_[static_cast<std::size_t>(v)];
}

bool same_wire(const WireDomain& a, const WireDomain& b) {
  return a.name() == b.name() && a.lifted() == b.lifted() &&
         a.atoms() == b.atoms();
}

bool same_signature(const Signature& a, const Signature& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!same_wire(*a[i], *b[i])) return false;
  }
  return true;
}

Signature concat(const Signature& a, const Signature& b) {
  Signature r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

Signature slice(const Signature& s, std::size_t begin, std::size_t end) {
  if (begin > end || end > s.size()) throw Error("bad signature slice");
  return Signature(s.begin() + static_cast<std::ptrdiff_t>(begin),
                   s.begin() + static_cast<std::ptrdiff_t>(end));
}

Point Point::fail() {
  Point p;
  p.fail_ = true;
  return p;
}

Point Point::tuple(std::vector<Value> values) {
  Point p;
  p.vals_ = std::move(values);
  return p;
}

const std::vector<Value>& Point::values() const {
  if (fail_) throw Error("fail point has no values");
  return vals_;
}

std::size_t Point::arity() const {
  if (fail_) throw Error("fail point has no arity");
  return vals_.size();
}

Point bottom(const Signature& sig) {
  for (const auto& w : sig) {
    if (!w->lifted()) {
      throw Error("bottom is undefined: wire '" + w->name() +
                  "' is not lifted");
    }
  }
  return Point::tuple(std::vector<Value>(sig.size(), kBot));
}

namespace {
void require_proper_same_arity(const Point& a, const Point& b,
                               const char* what) {
  if (a.is_fail() || b.is_fail()) {
    throw Error(std::string(what) + " is not defined on fail");
  }
  if (a.arity() != b.arity()) {
    throw Error(std::string(what) + " applied to tuples of different arity");
  }
}
}  // namespace

bool leq(const Point& a, const Point& b) {
  require_proper_same_arity(a, b, "the CPO order");
  for (std::size_t i = 0; i < a.values().size(); ++i) {
    Value x = a.values()[i];
    if (x != kBot && x != b.values()[i]) return false;
  }
  return true;
}

bool lt(const Point& a, const Point& b) { return leq(a, b) && !(a == b); }

bool maximal(const Point& a) {
  if (a.is_fail()) throw Error("maximal is not defined on fail");
  return std::none_of(a.values().begin(), a.values().end(),
                      [](Value v) { return v == kBot; });
}

std::size_t chain_bound(const Signature& sig) {
  std::size_t k = 0;
  for (const auto& w : sig) {
    if (w->lifted()) ++k;
  }
  return k;
}

bool conforms(const Point& p, const Signature& sig) {
  if (p.is_fail()) return false;
  if (p.values().size() != sig.size()) return false;
  for (std::size_t i = 0; i < sig.size(); ++i) {
    Value v = p.values()[i];
    if (v == kBot) {
      if (!sig[i]->lifted()) return false;
    } else if (v < 0 || static_cast<std::size_t>(v) >= sig[i]->atom_count()) {
      return false;
    }
  }
  return true;
}

void require_conforms(const Point& p, const Signature& sig, const char* what) {
  if (!conforms(p, sig)) {
    throw Error(std::string(what) + " does not conform to its signature");
  }
}

std::vector<Point> all_points(const Signature& sig) {
  std::vector<Point> out;
  std::vector<Value> vals(sig.size());
  std::vector<std::vector<Value>> carriers(sig.size());
  std::size_t total = 1;
  for (std::size_t i = 0; i < sig.size(); ++i) {
    if (sig[i]->lifted()) carriers[i].push_back(kBot);
    for (std::size_t a = 0; a < sig[i]->atom_count(); ++a) {
      carriers[i].push_back(static_cast<Value>(a));
    }
    total *= carriers[i].size();
  }
  out.reserve(total);
  std::vector<std::size_t> idx(sig.size(), 0);
  for (std::size_t n = 0; n < total; ++n) {
    for (std::size_t i = 0; i < sig.size(); ++i) vals[i] = carriers[i][idx[i]];
    out.push_back(Point::tuple(vals));
    for (std::size_t i = sig.size(); i-- > 0;) {
      if (++idx[i] < carriers[i].size()) break;
      idx[i] = 0;
    }
  }
  return out;
}

Point concat(const Point& a, const Point& b) {
  if (a.is_fail() || b.is_fail()) throw Error("cannot concatenate fail points");
  std::vector<Value> vals = a.values();
  vals.insert(vals.end(), b.values().begin(), b.values().end());
  return Point::tuple(std::move(vals));
}

std::pair<Point, Point> split(const Point& p, std::size_t k) {
  if (p.is_fail()) throw Error("cannot split a fail point");
  if (k > p.values().size()) throw Error("split index out of range");
  std::vector<Value> a(p.values().begin(),
                       p.values().begin() + static_cast<std::ptrdiff_t>(k));
  std::vector<Value> b(p.values().begin() + static_cast<std::ptrdiff_t>(k),
                       p.values().end());
  return {Point::tuple(std::move(a)), Point::tuple(std::move(b))};
}

std::string value_text(const WireDomain& w, Value v) {
  return v == kBot ? std::string("bot") : w.atom_name(v);
}

std::string point_text(const Signature& sig, const Point& p) {
  if (p.is_fail()) return "fail";
  if (p.values().size() != sig.size()) {
    throw Error("point arity does not match signature");
  }
  std::string out = "(";
  for (std::size_t i = 0; i < sig.size(); ++i) {
    if (i) out += ",";
    out += value_text(*sig[i], p.values()[i]);
  }
  out += ")";
  return out;
}

Point parse_point(const Signature& sig, const std::string& text) {
  std::string s = text;
  std::erase(s, ' ');
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') {
    throw Error("expected a parenthesized tuple, got '" + text + "'");
  }
  s = s.substr(1, s.size() - 2);
  std::vector<std::string> parts;
  if (!s.empty()) {
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(item);
    if (!s.empty() && s.back() == ',') parts.push_back("");
  }
  if (parts.size() != sig.size()) {
    throw Error("tuple '" + text + "' has arity " +
                std::to_string(parts.size()) + ", expected " +
                std::to_string(sig.size()));
  }
  std::vector<Value> vals(sig.size());
  for (std::size_t i = 0; i < sig.size(); ++i) {
    if (parts[i] == "bot") {
      if (!sig[i]->lifted()) {
        throw Error("wire '" + sig[i]->name() + "' is not lifted");
      }
      vals[i] = kBot;
    } else {
      vals[i] = sig[i]->atom(parts[i]);
    }
  }
  return Point::tuple(std::move(vals));
}

}  // namespace feedkit
