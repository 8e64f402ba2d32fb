#ifndef ARITH_TQFT_COBORDISM_HPP
#define ARITH_TQFT_COBORDISM_HPP

// Morphisms of the pro-p cobordism category as strict monoidal words in the
// generators, their text form, and their classifying invariants.

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "arith_tqft/units.hpp"
#include "json.hpp"

namespace arith_tqft {

enum class Gen { P21, P12, Cup, Cap, Cyl, Twist, Swap, Torus };

/// One generator occurrence. Twist carries a unit, Torus carries a level.
class Token {
 public:
  static Token p21() { return Token(Gen::P21); }
  static Token p12() { return Token(Gen::P12); }
  static Token cup() { return Token(Gen::Cup); }
  static Token cap() { return Token(Gen::Cap); }
  static Token cyl() { return Token(Gen::Cyl); }
  static Token swap() { return Token(Gen::Swap); }
  static Token twist(const PadicUnit& u) {
    Token t(Gen::Twist);
    t.unit_ = u;
    return t;
  }
  static Token torus(Level r) {
    Token t(Gen::Torus);
    t.level_ = r;
    return t;
  }

  Gen kind() const noexcept { return kind_; }
  const PadicUnit& unit() const {
    if (!unit_) throw Error("bad-token", "token carries no unit");
    return *unit_;
  }
  Level level() const noexcept { return level_; }

  unsigned in_arity() const noexcept {
    switch (kind_) {
      case Gen::P21: return 2;
      case Gen::Cap: return 0;
      case Gen::Swap: return 2;
      default: return 1;
    }
  }
  unsigned out_arity() const noexcept {
    switch (kind_) {
      case Gen::P12: return 2;
      case Gen::Cup: return 0;
      case Gen::Swap: return 2;
      default: return 1;
    }
  }

  /// Euler characteristic contributed to the surface.
  int euler() const noexcept {
    switch (kind_) {
      case Gen::P21:
      case Gen::P12: return -1;
      case Gen::Cup:
      case Gen::Cap: return 1;
      case Gen::Torus: return -2;
      default: return 0;
    }
  }

  friend bool operator==(const Token& a, const Token& b) {
    if (a.kind_ != b.kind_) return false;
    if (a.kind_ == Gen::Twist) return *a.unit_ == *b.unit_;
    if (a.kind_ == Gen::Torus) return a.level_ == b.level_;
    return true;
  }

  std::string str() const {
    switch (kind_) {
      case Gen::P21: return "m";
      case Gen::P12: return "d";
      case Gen::Cup: return "cup";
      case Gen::Cap: return "cap";
      case Gen::Cyl: return "id";
      case Gen::Swap: return "swap";
      case Gen::Twist: return "tw(" + unit_->str() + ")";
      case Gen::Torus: return "tor(" + level_.str() + ")";
    }
    return "?";
  }

 private:
  explicit Token(Gen k) : kind_(k) {}
  Gen kind_;
  std::optional<PadicUnit> unit_;
  Level level_ = Level::inf();
};

using Slice = std::vector<Token>;

inline unsigned slice_in(const Slice& s) {
  unsigned n = 0;
  for (const auto& t : s) n += t.in_arity();
  return n;
}
inline unsigned slice_out(const Slice& s) {
  unsigned n = 0;
  for (const auto& t : s) n += t.out_arity();
  return n;
}

/// A word in the generators: slices applied top to bottom, each slice a
/// left-to-right tensor of tokens over ordered strands.
class Diagram {
 public:
  Diagram(unsigned in_arity, unsigned out_arity, std::vector<Slice> slices)
      : in_(in_arity), out_(out_arity), slices_(std::move(slices)) {
    validate();
  }

  static Diagram identity(unsigned width) { return Diagram(width, width, {}); }
  static Diagram of(const Token& t) { return Diagram(t.in_arity(), t.out_arity(), {Slice{t}}); }
  /// Builds a diagram from slices, inferring the arities.
  static Diagram from_slices(std::vector<Slice> slices) {
    if (slices.empty()) throw Error("arity-mismatch", "from_slices needs at least one slice");
    unsigned in = slice_in(slices.front()), out = slice_out(slices.back());
    return Diagram(in, out, std::move(slices));
  }

  unsigned in_arity() const noexcept { return in_; }
  unsigned out_arity() const noexcept { return out_; }
  const std::vector<Slice>& slices() const noexcept { return slices_; }

  friend bool operator==(const Diagram& a, const Diagram& b) {
    return a.in_ == b.in_ && a.out_ == b.out_ && a.slices_ == b.slices_;
  }

 private:
  void validate() const {
    if (slices_.empty()) {
      if (in_ != out_) throw Error("arity-mismatch", "empty diagram must have equal in and out arity");
      return;
    }
    unsigned width = in_;
    for (std::size_t i = 0; i < slices_.size(); ++i) {
      if (slices_[i].empty()) throw Error("arity-mismatch", "slice " + std::to_string(i) + " is empty");
      if (slice_in(slices_[i]) != width)
        throw Error("arity-mismatch", "slice " + std::to_string(i) + " consumes " + std::to_string(slice_in(slices_[i])) +
                                          " strands but " + std::to_string(width) + " are available");
      width = slice_out(slices_[i]);
    }
    if (width != out_)
      throw Error("arity-mismatch", "last slice emits " + std::to_string(width) + " strands, expected " + std::to_string(out_));
  }

  unsigned in_;
  unsigned out_;
  std::vector<Slice> slices_;
};

// ---------------------------------------------------------------------------
// Text form

namespace detail {

class DslScanner {
 public:
  explicit DslScanner(const std::string& text) : s_(text) {}

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) advance();
  }
  bool at_end() {
    skip_ws();
    return pos_ >= s_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      advance();
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  std::string word() {
    skip_ws();
    std::string w;
    while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) {
      w += s_[pos_];
      advance();
    }
    return w;
  }
  u64 integer() {
    skip_ws();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected integer");
    u64 v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + static_cast<u64>(s_[pos_] - '0');
      advance();
    }
    return v;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error("parse-error", "line " + std::to_string(line_) + ", column " + std::to_string(col_) + ": " + msg);
  }
  std::pair<unsigned, unsigned> where() const { return {line_, col_}; }

 private:
  void advance() {
    if (s_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  const std::string& s_;
  std::size_t pos_ = 0;
  unsigned line_ = 1, col_ = 1;
};

inline Token parse_item(DslScanner& sc) {
  std::string w = sc.word();
  if (w == "id") return Token::cyl();
  if (w == "cup") return Token::cup();
  if (w == "cap") return Token::cap();
  if (w == "swap") return Token::swap();
  if (w == "m") return Token::p21();
  if (w == "d") return Token::p12();
  if (w == "tw") {
    sc.expect('(');
    u64 res = sc.integer();
    if (sc.word() != "mod") sc.fail("expected 'mod'");
    u64 p = sc.integer();
    sc.expect('^');
    u64 k = sc.integer();
    sc.expect(')');
    try {
      return Token::twist(PadicUnit(p, static_cast<unsigned>(k), res));
    } catch (const Error& e) {
      sc.fail(e.what());
    }
  }
  if (w == "tor") {
    sc.expect('(');
    Level r = Level::inf();
    if (std::isdigit(static_cast<unsigned char>(sc.peek()))) {
      u64 v = sc.integer();
      if (v == 0) sc.fail("torus level must be positive");
      r = Level(static_cast<unsigned>(v));
    } else if (sc.word() != "inf") {
      sc.fail("expected level or 'inf'");
    }
    sc.expect(')');
    return Token::torus(r);
  }
  sc.fail(w.empty() ? "expected item" : "unknown item '" + w + "'");
}

}  // namespace detail

/// Parses the diagram DSL: slices separated by ';', items within a slice by ','.
inline Diagram parse_diagram(const std::string& text) {
  detail::DslScanner sc(text);
  std::vector<Slice> slices;
  do {
    Slice s;
    do {
      s.push_back(detail::parse_item(sc));
    } while (sc.accept(','));
    slices.push_back(std::move(s));
  } while (sc.accept(';'));
  if (!sc.at_end()) sc.fail("unexpected trailing input");
  for (std::size_t i = 1; i < slices.size(); ++i)
    if (slice_in(slices[i]) != slice_out(slices[i - 1]))
      throw Error("arity-mismatch", "slice " + std::to_string(i) + " consumes " + std::to_string(slice_in(slices[i])) +
                                        " strands but slice " + std::to_string(i - 1) + " emits " +
                                        std::to_string(slice_out(slices[i - 1])));
  return Diagram::from_slices(std::move(slices));
}

/// Inverse of parse_diagram. An empty-slice identity prints as a slice of ids.
inline std::string print_diagram(const Diagram& d) {
  std::vector<Slice> slices = d.slices();
  if (slices.empty()) slices.push_back(Slice(d.in_arity(), Token::cyl()));
  std::string out;
  for (std::size_t i = 0; i < slices.size(); ++i) {
    if (i) out += " ; ";
    for (std::size_t j = 0; j < slices[i].size(); ++j) {
      if (j) out += ", ";
      out += slices[i][j].str();
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Composition and tensor

/// d1 followed by d2.
inline Diagram compose(const Diagram& d1, const Diagram& d2) {
  if (d1.out_arity() != d2.in_arity())
    throw Error("arity-mismatch", "cannot compose: " + std::to_string(d1.out_arity()) + " outputs into " +
                                      std::to_string(d2.in_arity()) + " inputs");
  std::vector<Slice> s = d1.slices();
  s.insert(s.end(), d2.slices().begin(), d2.slices().end());
  return Diagram(d1.in_arity(), d2.out_arity(), std::move(s));
}

/// Side-by-side placement, d1 on the left. Shorter words are padded with ids.
inline Diagram tensor(const Diagram& d1, const Diagram& d2) {
  const std::size_t h = std::max(d1.slices().size(), d2.slices().size());
  if (h == 0) return Diagram::identity(d1.in_arity() + d2.in_arity());
  std::vector<Slice> s(h);
  for (std::size_t i = 0; i < h; ++i) {
    auto fill = [&](const Diagram& d) {
      if (i < d.slices().size())
        s[i].insert(s[i].end(), d.slices()[i].begin(), d.slices()[i].end());
      else
        s[i].insert(s[i].end(), d.out_arity(), Token::cyl());
    };
    fill(d1);
    fill(d2);
  }
  // A zero-width side contributes nothing in padded slices; drop empties.
  std::vector<Slice> kept;
  for (auto& sl : s)
    if (!sl.empty()) kept.push_back(std::move(sl));
  if (kept.empty()) return Diagram::identity(0);
  return Diagram(d1.in_arity() + d2.in_arity(), d1.out_arity() + d2.out_arity(), std::move(kept));
}

/// Diagram realising a permutation of strands: input strand i leaves at
/// output position perm[i]. Built from adjacent swaps.
inline Diagram permutation_diagram(const std::vector<unsigned>& perm) {
  const unsigned w = static_cast<unsigned>(perm.size());
  std::vector<unsigned> cur = perm;  // cur[pos] = destination of the strand at pos
  std::vector<Slice> slices;
  bool changed = true;
  while (changed) {
    changed = false;
    for (unsigned i = 0; i + 1 < w; ++i) {
      if (cur[i] > cur[i + 1]) {
        Slice s;
        for (unsigned j = 0; j < i; ++j) s.push_back(Token::cyl());
        s.push_back(Token::swap());
        for (unsigned j = i + 2; j < w; ++j) s.push_back(Token::cyl());
        slices.push_back(std::move(s));
        std::swap(cur[i], cur[i + 1]);
        changed = true;
      }
    }
  }
  return Diagram(w, w, std::move(slices));
}

// ---------------------------------------------------------------------------
// Invariants

/// Leg of a diagram: an input strand or an output strand.
struct Leg {
  bool is_out = false;
  unsigned index = 0;
  friend auto operator<=>(const Leg&, const Leg&) = default;
};

/// Classifying data of one connected component: genus g, orientability level r,
/// in/out leg counts, and the boundary twists of each leg relative to the
/// component's first leg, reduced mod p^min(r, precision).
struct ComponentInvariant {
  unsigned g = 0;
  Level r = Level::inf();
  unsigned n = 0;
  unsigned u = 0;
  std::vector<Leg> legs;           // in-legs by index, then out-legs
  std::vector<u64> twists;         // aligned with legs; 1 is trivial
  u64 twist_modulus = 0;           // p^min(r,k); 0 when the diagram has no twists
  u64 p = 0;

  auto key() const { return std::tie(g, r, n, u, legs, twists); }
};

inline bool twists_equal(const ComponentInvariant& a, const ComponentInvariant& b) {
  if (a.twists.size() != b.twists.size()) return false;
  if (a.twist_modulus == b.twist_modulus) return a.twists == b.twists;
  if (a.twist_modulus != 0 && b.twist_modulus != 0) {
    if (a.p != b.p) return false;
    u64 m = std::min(a.twist_modulus, b.twist_modulus);
    for (std::size_t i = 0; i < a.twists.size(); ++i)
      if (a.twists[i] % m != b.twists[i] % m) return false;
    return true;
  }
  // One side carries no unit context: equal only if every twist is trivial.
  auto trivial = [](const ComponentInvariant& c) {
    return std::all_of(c.twists.begin(), c.twists.end(), [&](u64 t) { return c.twist_modulus == 0 || t == 1 % c.twist_modulus; });
  };
  return trivial(a) && trivial(b);
}

inline bool operator==(const ComponentInvariant& a, const ComponentInvariant& b) {
  return a.g == b.g && a.r == b.r && a.n == b.n && a.u == b.u && a.legs == b.legs && twists_equal(a, b);
}

struct CanonicalForm {
  unsigned in_arity = 0;
  unsigned out_arity = 0;
  std::vector<ComponentInvariant> components;
  friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
};

namespace detail {

/// Union-find over strand segments with a frame potential in the unit group:
/// frame(x) = frame(parent(x)) * weight(x).
class FrameUnionFind {
 public:
  FrameUnionFind(u64 p, unsigned k) : p_(p), k_(k), mod_(p ? checked_pow(p, k) : 0) {}

  std::size_t add() {
    parent_.push_back(parent_.size());
    weight_.push_back(1);
    level_.push_back(Level::inf());
    chi_.push_back(0);
    return parent_.size() - 1;
  }

  /// Root and frame(x)/frame(root).
  std::pair<std::size_t, u64> find(std::size_t x) {
    if (parent_[x] == x) return {x, 1};
    auto [root, w] = find(parent_[x]);
    weight_[x] = mul(weight_[x], w);
    parent_[x] = root;
    return {root, weight_[x]};
  }

  /// Imposes frame(b) = frame(a) * u.
  void unite(std::size_t a, std::size_t b, u64 u) {
    auto [ra, fa] = find(a);
    auto [rb, fb] = find(b);
    if (ra == rb) {
      u64 hol = mul(mul(fa, u), inv(fb));
      if (hol != 1) level_[ra] = min(level_[ra], PadicUnit(p_, k_, hol).level());
      return;
    }
    parent_[rb] = ra;
    weight_[rb] = mul(mul(fa, u), inv(fb));
    level_[ra] = min(level_[ra], level_[rb]);
    chi_[ra] += chi_[rb];
  }

  void add_chi(std::size_t x, int c) { chi_[find(x).first] += c; }
  void add_level(std::size_t x, Level r) {
    auto root = find(x).first;
    level_[root] = min(level_[root], r);
  }
  Level level(std::size_t root) const { return level_[root]; }
  int chi(std::size_t root) const { return chi_[root]; }
  std::size_t size() const { return parent_.size(); }

  u64 mul(u64 a, u64 b) const { return mod_ ? mulmod(a, b, mod_) : 1; }
  u64 inv(u64 a) const { return mod_ ? invmod(a, mod_) : 1; }
  u64 modulus() const { return mod_; }

 private:
  u64 p_;
  unsigned k_;
  u64 mod_;
  std::vector<std::size_t> parent_;
  std::vector<u64> weight_;
  std::vector<Level> level_;
  std::vector<int> chi_;
};

/// Common (p, precision) of all twist units in d, or (0, 0) if there are none.
inline std::pair<u64, unsigned> unit_context(const Diagram& d) {
  std::optional<PadicUnit> first;
  for (const auto& s : d.slices())
    for (const auto& t : s)
      if (t.kind() == Gen::Twist) {
        if (!first)
          first = t.unit();
        else
          require_compatible(*first, t.unit());
      }
  if (!first) return {0, 0};
  return {first->p(), first->precision()};
}

}  // namespace detail

/// Connected components of d with their invariants, in canonical order:
/// components with legs ordered by their first leg, then closed components by
/// (g, r).
inline std::vector<ComponentInvariant> invariant_of(const Diagram& d) {
  auto [p, k] = detail::unit_context(d);
  detail::FrameUnionFind uf(p, k);

  std::vector<std::size_t> layer;
  for (unsigned i = 0; i < d.in_arity(); ++i) layer.push_back(uf.add());
  const std::vector<std::size_t> in_segs = layer;

  for (const auto& slice : d.slices()) {
    std::vector<std::size_t> next;
    std::size_t pos = 0;
    for (const auto& t : slice) {
      std::vector<std::size_t> ins(layer.begin() + static_cast<long>(pos), layer.begin() + static_cast<long>(pos + t.in_arity()));
      pos += t.in_arity();
      std::vector<std::size_t> outs;
      for (unsigned j = 0; j < t.out_arity(); ++j) outs.push_back(uf.add());
      switch (t.kind()) {
        case Gen::Cyl: uf.unite(ins[0], outs[0], 1); break;
        case Gen::Twist: uf.unite(ins[0], outs[0], t.unit().residue()); break;
        case Gen::Torus:
          uf.unite(ins[0], outs[0], 1);
          uf.add_level(ins[0], t.level());
          break;
        case Gen::P21:
          uf.unite(ins[0], outs[0], 1);
          uf.unite(ins[1], outs[0], 1);
          break;
        case Gen::P12:
          uf.unite(ins[0], outs[0], 1);
          uf.unite(ins[0], outs[1], 1);
          break;
        case Gen::Swap:
          uf.unite(ins[0], outs[1], 1);
          uf.unite(ins[1], outs[0], 1);
          break;
        case Gen::Cup:
        case Gen::Cap: break;
      }
      const std::size_t anchor = !ins.empty() ? ins[0] : outs[0];
      uf.add_chi(anchor, t.euler());
      next.insert(next.end(), outs.begin(), outs.end());
    }
    layer = std::move(next);
  }
  const std::vector<std::size_t> out_segs = layer;

  struct Acc {
    std::vector<std::pair<Leg, std::size_t>> legs;
  };
  std::map<std::size_t, Acc> comps;
  for (std::size_t s = 0; s < uf.size(); ++s) comps[uf.find(s).first];
  for (unsigned i = 0; i < in_segs.size(); ++i) comps[uf.find(in_segs[i]).first].legs.push_back({Leg{false, i}, in_segs[i]});
  for (unsigned j = 0; j < out_segs.size(); ++j) comps[uf.find(out_segs[j]).first].legs.push_back({Leg{true, j}, out_segs[j]});

  std::vector<ComponentInvariant> result;
  for (auto& [root, acc] : comps) {
    ComponentInvariant c;
    c.p = p;
    c.r = uf.level(root);
    for (const auto& [leg, seg] : acc.legs) (leg.is_out ? c.u : c.n)++;
    const int twice_g = 2 - uf.chi(root) - static_cast<int>(c.n + c.u);
    if (twice_g < 0 || twice_g % 2 != 0) throw Error("internal", "inconsistent Euler characteristic");
    c.g = static_cast<unsigned>(twice_g / 2);
    std::sort(acc.legs.begin(), acc.legs.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    if (p != 0) {
      const unsigned e = c.r.is_inf() ? k : std::min(c.r.value(), k);
      c.twist_modulus = checked_pow(p, e);
    }
    u64 ref = 1;
    for (std::size_t i = 0; i < acc.legs.size(); ++i) {
      c.legs.push_back(acc.legs[i].first);
      u64 f = uf.find(acc.legs[i].second).second;
      if (i == 0) ref = f;
      u64 t = uf.mul(f, uf.inv(ref));
      c.twists.push_back(c.twist_modulus ? t % c.twist_modulus : 1);
    }
    result.push_back(std::move(c));
  }
  std::sort(result.begin(), result.end(), [](const ComponentInvariant& a, const ComponentInvariant& b) {
    const bool ca = a.legs.empty(), cb = b.legs.empty();
    if (ca != cb) return cb;
    if (!ca) return a.legs.front() < b.legs.front();
    return std::tie(a.g, a.r) < std::tie(b.g, b.r);
  });
  return result;
}

inline CanonicalForm canonicalize(const Diagram& d) { return CanonicalForm{d.in_arity(), d.out_arity(), invariant_of(d)}; }

inline bool diagrams_equal(const Diagram& a, const Diagram& b) { return canonicalize(a) == canonicalize(b); }

// ---------------------------------------------------------------------------
// Normal forms

/// Connected diagram with invariant (g, r, n, u) assembled as in the
/// generation argument: a merge comb, g-1 orientable tori and one torus of
/// level r, then a split comb. Caps/cups close off n = 0 or u = 0.
inline Diagram generator_construction(unsigned g, Level r, unsigned n, unsigned u) {
  if (g == 0 && !r.is_inf()) throw Error("invalid-invariant", "genus 0 forces level INF");
  std::vector<Slice> s;
  if (n == 0) s.push_back({Token::cap()});
  for (unsigned width = n; width > 1; --width) {
    Slice sl{Token::p21()};
    sl.insert(sl.end(), width - 2, Token::cyl());
    s.push_back(std::move(sl));
  }
  for (unsigned i = 0; i + 1 < g; ++i) s.push_back({Token::torus(Level::inf())});
  if (g >= 1) s.push_back({Token::torus(r)});
  for (unsigned width = 1; width < u; ++width) {
    Slice sl{Token::p12()};
    sl.insert(sl.end(), width - 1, Token::cyl());
    s.push_back(std::move(sl));
  }
  if (u == 0) s.push_back({Token::cup()});
  if (s.empty()) return Diagram::identity(1);
  return Diagram(n, u, std::move(s));
}

/// A diagram whose canonical form is cf: each component is realised by
/// generator_construction with its leg twists restored, and legs are routed to
/// their global positions with swaps.
inline Diagram realize(const CanonicalForm& cf) {
  Diagram body = Diagram::identity(0);
  std::vector<unsigned> in_order, out_order;  // global leg index per body position
  for (const auto& c : cf.components) {
    Diagram comp = generator_construction(c.g, c.r, c.n, c.u);
    std::vector<Token> in_tw, out_tw;
    bool any = false;
    for (std::size_t i = 0; i < c.legs.size(); ++i) {
      std::optional<PadicUnit> t;
      if (c.twist_modulus != 0 && c.twists[i] != 1 % c.twist_modulus) {
        unsigned k = 0;
        for (u64 m = c.twist_modulus; m > 1; m /= c.p) ++k;
        t = PadicUnit(c.p, k, c.twists[i]);
        any = true;
      }
      if (!c.legs[i].is_out) {
        in_tw.push_back(t ? Token::twist(t->inverse()) : Token::cyl());
        in_order.push_back(c.legs[i].index);
      } else {
        out_tw.push_back(t ? Token::twist(*t) : Token::cyl());
        out_order.push_back(c.legs[i].index);
      }
    }
    if (any) {
      if (!in_tw.empty()) comp = compose(Diagram(c.n, c.n, {in_tw}), comp);
      if (!out_tw.empty()) comp = compose(comp, Diagram(c.u, c.u, {out_tw}));
    }
    body = tensor(body, comp);
  }
  // Input strand at global position i must travel to body position pos_of[i].
  std::vector<unsigned> in_perm(cf.in_arity), out_perm(cf.out_arity);
  for (unsigned pos = 0; pos < in_order.size(); ++pos) in_perm[in_order[pos]] = pos;
  for (unsigned pos = 0; pos < out_order.size(); ++pos) out_perm[pos] = out_order[pos];
  return compose(compose(permutation_diagram(in_perm), body), permutation_diagram(out_perm));
}

// ---------------------------------------------------------------------------
// JSON

inline nlohmann::ordered_json level_json(Level r) {
  if (r.is_inf()) return "inf";
  return r.value();
}

inline nlohmann::ordered_json to_json(const ComponentInvariant& c) {
  nlohmann::ordered_json j;
  j["g"] = c.g;
  j["r"] = level_json(c.r);
  j["n"] = c.n;
  j["u"] = c.u;
  std::vector<unsigned> ins, outs;
  for (const auto& l : c.legs) (l.is_out ? outs : ins).push_back(l.index);
  j["in_legs"] = ins;
  j["out_legs"] = outs;
  j["twists"] = c.twists;
  j["twist_modulus"] = c.twist_modulus;
  return j;
}

inline nlohmann::ordered_json to_json(const CanonicalForm& cf) {
  nlohmann::ordered_json j;
  j["in_arity"] = cf.in_arity;
  j["out_arity"] = cf.out_arity;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : cf.components) arr.push_back(to_json(c));
  j["components"] = arr;
  return j;
}

}  // namespace arith_tqft

#endif  // ARITH_TQFT_COBORDISM_HPP
