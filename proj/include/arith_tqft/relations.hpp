#ifndef ARITH_TQFT_RELATIONS_HPP
#define ARITH_TQFT_RELATIONS_HPP

// Local rewriting of diagrams by the defining relations of the cobordism
// category. A rule is a pair of slice patterns; either side may be matched
// and is replaced by the other.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arith_tqft/cobordism.hpp"

namespace arith_tqft {

enum class Rule {
  R1a, R1b, R2a, R2b, R3, R4, R5a, R5b,
  R6, R7, R8, R9, R10, R11, R12a, R12b,
  RS_twist, RS_inv, RS_comm, RS_cocomm, RS_braid, RS_nat_m
};

inline const std::vector<Rule>& all_rules() {
  static const std::vector<Rule> rules = {
      Rule::R1a, Rule::R1b, Rule::R2a, Rule::R2b, Rule::R3, Rule::R4, Rule::R5a, Rule::R5b,
      Rule::R6, Rule::R7, Rule::R8, Rule::R9, Rule::R10, Rule::R11, Rule::R12a, Rule::R12b,
      Rule::RS_twist, Rule::RS_inv, Rule::RS_comm, Rule::RS_cocomm, Rule::RS_braid, Rule::RS_nat_m};
  return rules;
}

inline std::string rule_name(Rule r) {
  static const char* names[] = {"R1a", "R1b", "R2a", "R2b", "R3", "R4", "R5a", "R5b",
                                "R6", "R7", "R8", "R9", "R10", "R11", "R12a", "R12b",
                                "RS_twist", "RS_inv", "RS_comm", "RS_cocomm", "RS_braid", "RS_nat_m"};
  return names[static_cast<int>(r)];
}

inline Rule parse_rule(const std::string& s) {
  for (Rule r : all_rules())
    if (rule_name(r) == s) return r;
  throw Error("unknown-rule", "no rule named '" + s + "'");
}

enum class Direction { Forward, Backward };

/// Where a pattern starts: slice index and index of the first token of the run.
struct Position {
  std::size_t slice = 0;
  std::size_t token = 0;
  friend bool operator==(const Position&, const Position&) = default;
};

/// Values for rule parameters that the matched side does not determine.
/// Twist parameters left unset default to the identity unit, levels to INF.
struct RuleParams {
  std::optional<PadicUnit> alpha;
  std::optional<PadicUnit> beta;
  std::optional<Level> r;
  std::optional<Level> r2;
};

namespace detail {

// Twist items carry a variable ('a', 'b'); torus items a variable ('r', 's',
// 'm') or 0 for the literal tor(inf).
struct PatItem {
  Gen kind;
  char var = 0;
};
using PatSide = std::vector<std::vector<PatItem>>;

inline PatItem I(Gen g, char v = 0) { return PatItem{g, v}; }

struct RuleDef {
  PatSide lhs, rhs;
};

inline RuleDef rule_def(Rule r) {
  using G = Gen;
  const PatItem id = I(G::Cyl), m = I(G::P21), d = I(G::P12), cup = I(G::Cup), cap = I(G::Cap), sw = I(G::Swap);
  const PatItem ta = I(G::Twist, 'a'), tb = I(G::Twist, 'b');
  switch (r) {
    case Rule::R1a: return {{{cap, id}, {m}}, {{id}}};
    case Rule::R1b: return {{{id, cap}, {m}}, {{id}}};
    case Rule::R2a: return {{{d}, {id, cup}}, {{id}}};
    case Rule::R2b: return {{{d}, {cup, id}}, {{id}}};
    case Rule::R3: return {{{m, id}, {m}}, {{id, m}, {m}}};
    case Rule::R4: return {{{d}, {d, id}}, {{d}, {id, d}}};
    case Rule::R5a: return {{{d, id}, {id, m}}, {{m}, {d}}};
    case Rule::R5b: return {{{id, d}, {m, id}}, {{m}, {d}}};
    case Rule::R6: return {{{cap}, {ta}}, {{cap}}};
    case Rule::R7: return {{{ta}, {cup}}, {{cup}}};
    case Rule::R8: return {{{ta, ta}, {m}}, {{m}, {ta}}};
    case Rule::R9: return {{{d}, {ta, ta}}, {{ta}, {d}}};
    // The right side depends on whether b is trivial; see rewrite().
    case Rule::R10: return {{{d}, {ta, tb}, {m}}, {{tb}, {I(G::Torus, 'r')}}};
    case Rule::R11: return {{{I(G::Torus, 'r')}, {I(G::Torus, 's')}}, {{I(G::Torus)}, {I(G::Torus, 'm')}}};
    case Rule::R12a: return {{{ta}, {I(G::Torus, 'r')}}, {{I(G::Torus, 'r')}}};
    case Rule::R12b: return {{{I(G::Torus, 'r')}, {ta}}, {{I(G::Torus, 'r')}}};
    case Rule::RS_twist: return {{{ta, tb}, {sw}}, {{sw}, {tb, ta}}};
    case Rule::RS_inv: return {{{sw}, {sw}}, {{id, id}}};
    case Rule::RS_comm: return {{{sw}, {m}}, {{m}}};
    case Rule::RS_cocomm: return {{{d}, {sw}}, {{d}}};
    case Rule::RS_braid: return {{{sw, id}, {id, sw}, {sw, id}}, {{id, sw}, {sw, id}, {id, sw}}};
    case Rule::RS_nat_m: return {{{m, id}, {sw}}, {{id, sw}, {sw, id}, {id, m}}};
  }
  throw Error("unknown-rule", "unhandled rule");
}

struct Bindings {
  std::map<char, std::optional<PadicUnit>> units;  // nullopt is the identity
  std::map<char, Level> levels;
};

inline std::string pat_str(const PatItem& it) {
  switch (it.kind) {
    case Gen::Twist: return std::string("tw(") + it.var + ")";
    case Gen::Torus: return it.var ? std::string("tor(") + it.var + ")" : "tor(inf)";
    case Gen::P21: return "m";
    case Gen::P12: return "d";
    case Gen::Cup: return "cup";
    case Gen::Cap: return "cap";
    case Gen::Swap: return "swap";
    case Gen::Cyl: return "id";
  }
  return "?";
}

inline bool same_unit(const std::optional<PadicUnit>& a, const std::optional<PadicUnit>& b) {
  auto trivial = [](const std::optional<PadicUnit>& u) { return !u || u->is_one(); };
  if (trivial(a) || trivial(b)) return trivial(a) && trivial(b);
  return *a == *b;
}

inline bool match_item(const PatItem& it, const Token& t, Bindings& b) {
  if (it.kind == Gen::Twist) {
    std::optional<PadicUnit> u;
    if (t.kind() == Gen::Twist)
      u = t.unit();
    else if (t.kind() != Gen::Cyl)
      return false;
    auto [pos, fresh] = b.units.emplace(it.var, u);
    return fresh || same_unit(pos->second, u);
  }
  if (it.kind != t.kind()) return false;
  if (it.kind == Gen::Torus) {
    if (!it.var) return t.level().is_inf();
    auto [pos, fresh] = b.levels.emplace(it.var, t.level());
    return fresh || pos->second == t.level();
  }
  return true;
}

// Strand offset at which token j of a slice starts (inputs and outputs).
inline unsigned in_offset(const Slice& s, std::size_t j) {
  unsigned o = 0;
  for (std::size_t i = 0; i < j; ++i) o += s[i].in_arity();
  return o;
}
inline unsigned out_offset(const Slice& s, std::size_t j) {
  unsigned o = 0;
  for (std::size_t i = 0; i < j; ++i) o += s[i].out_arity();
  return o;
}

struct Match {
  std::vector<std::size_t> starts;  // first token of the run in each matched slice
  Bindings bindings;
};

inline std::string describe_run(const Slice& s, std::size_t j, std::size_t len) {
  std::string out;
  for (std::size_t i = j; i < std::min(s.size(), j + len); ++i) out += (out.empty() ? "" : ", ") + s[i].str();
  return out.empty() ? "(nothing)" : out;
}

inline std::string describe_pat(const std::vector<PatItem>& p) {
  std::string out;
  for (const auto& it : p) out += (out.empty() ? "" : ", ") + pat_str(it);
  return out;
}

/// Matches side at pos; on failure returns nullopt and fills why.
inline std::optional<Match> match_side(const Diagram& d, const PatSide& side, Position pos, std::string& why) {
  const auto& sl = d.slices();
  if (pos.slice + side.size() > sl.size()) {
    why = "pattern needs " + std::to_string(side.size()) + " slices from slice " + std::to_string(pos.slice);
    return std::nullopt;
  }
  Match mt;
  std::size_t j = pos.token;
  for (std::size_t t = 0; t < side.size(); ++t) {
    const Slice& s = sl[pos.slice + t];
    const auto& pat = side[t];
    std::vector<std::size_t> candidates;
    if (t == 0) {
      candidates.push_back(j);
    } else {
      const Slice& prev = sl[pos.slice + t - 1];
      const unsigned want = out_offset(prev, mt.starts.back());
      for (std::size_t c = 0; c <= s.size(); ++c)
        if (in_offset(s, c) == want) candidates.push_back(c);
    }
    bool ok = false;
    for (std::size_t c : candidates) {
      if (c + pat.size() > s.size()) continue;
      Bindings trial = mt.bindings;
      bool good = true;
      for (std::size_t i = 0; i < pat.size() && good; ++i) good = match_item(pat[i], s[c + i], trial);
      if (good && t > 0) {
        const Slice& prev = sl[pos.slice + t - 1];
        unsigned prev_width = 0, width = 0;
        for (std::size_t i = 0; i < side[t - 1].size(); ++i) prev_width += prev[mt.starts.back() + i].out_arity();
        for (std::size_t i = 0; i < pat.size(); ++i) width += s[c + i].in_arity();
        good = prev_width == width;
      }
      if (good) {
        mt.bindings = std::move(trial);
        mt.starts.push_back(c);
        ok = true;
        break;
      }
    }
    if (!ok) {
      why = "slice " + std::to_string(pos.slice + t) + ": expected [" + describe_pat(pat) + "], found [" +
            describe_run(s, candidates.empty() ? 0 : candidates.front(), pat.size()) + "]";
      return std::nullopt;
    }
  }
  return mt;
}

inline std::optional<std::pair<u64, unsigned>> context_of(const Bindings& b, const RuleParams& params, const Diagram& d) {
  for (const auto& [v, u] : b.units)
    if (u) return std::make_pair(u->p(), u->precision());
  if (params.alpha) return std::make_pair(params.alpha->p(), params.alpha->precision());
  if (params.beta) return std::make_pair(params.beta->p(), params.beta->precision());
  auto ctx = unit_context(d);
  if (ctx.first) return ctx;
  return std::nullopt;
}

inline Level unit_level(const std::optional<PadicUnit>& u) { return u ? u->level() : Level::inf(); }

}  // namespace detail

/// Rewrites the occurrence of one side of `rule` starting at `pos`.
/// Forward matches the left side, Backward the right side.
inline Diagram apply_relation(const Diagram& d, Rule rule, Position pos, Direction dir = Direction::Forward,
                              const RuleParams& params = {}) {
  using namespace detail;
  RuleDef def = rule_def(rule);
  if (rule == Rule::R10 && dir == Direction::Backward) {
    // Two shapes for the right side: tor(r) alone (b trivial) or tw(b); tor(r).
    if (pos.slice < d.slices().size() && pos.token < d.slices()[pos.slice].size() &&
        d.slices()[pos.slice][pos.token].kind() == Gen::Torus)
      def.rhs = {{I(Gen::Torus, 'r')}};
  }
  const PatSide& from = dir == Direction::Forward ? def.lhs : def.rhs;
  std::string why;
  auto mt = match_side(d, from, pos, why);
  if (!mt) throw Error("pattern-mismatch", rule_name(rule) + ": " + why);
  Bindings b = mt->bindings;

  auto fill_unit = [&](char v, const std::optional<PadicUnit>& given) {
    if (!b.units.count(v)) b.units[v] = given;
  };
  fill_unit('a', params.alpha);
  fill_unit('b', params.beta);
  if (!b.levels.count('r')) b.levels['r'] = params.r.value_or(Level::inf());
  if (!b.levels.count('s')) b.levels['s'] = params.r2.value_or(b.levels['r']);

  PatSide to = dir == Direction::Forward ? def.rhs : def.lhs;
  switch (rule) {
    case Rule::R10:
      if (dir == Direction::Forward) {
        const auto& a = b.units['a'];
        const auto& bb = b.units['b'];
        std::optional<PadicUnit> ratio;
        if (a && bb)
          ratio = unit_mul(*a, bb->inverse());
        else if (a)
          ratio = a;
        else if (bb)
          ratio = bb->inverse();
        b.levels['r'] = unit_level(ratio);
        if (!bb || bb->is_one()) to = {{I(Gen::Torus, 'r')}};
      } else {
        const Level r = b.levels['r'];
        if (!params.alpha) {
          auto ctx = context_of(b, params, d);
          if (!r.is_inf()) {
            if (!ctx) throw Error("invalid-parameters", "R10: a finite level needs a unit context (pass alpha)");
            PadicUnit step = PadicUnit::of_level(ctx->first, ctx->second, r);
            b.units['a'] = b.units['b'] ? unit_mul(*b.units['b'], step) : step;
          } else {
            b.units['a'] = b.units['b'];
          }
        }
        const auto& a = b.units['a'];
        const auto& bb = b.units['b'];
        Level got = a && bb ? ratio_level(*a, *bb) : a ? a->level() : bb ? bb->level() : Level::inf();
        if (got != r) throw Error("invalid-parameters", "R10: level(alpha/beta) = " + got.str() + " but the torus has level " + r.str());
      }
      break;
    case Rule::R11:
      if (dir == Direction::Forward) {
        b.levels['m'] = min(b.levels['r'], b.levels['s']);
      } else {
        const Level mm = b.levels['m'];
        if (!params.r) b.levels['r'] = mm;
        if (!params.r2) b.levels['s'] = mm;
        if (min(b.levels['r'], b.levels['s']) != mm)
          throw Error("invalid-parameters", "R11: min(r, r') must equal " + mm.str());
      }
      break;
    case Rule::R12a:
    case Rule::R12b:
      if (unit_level(b.units['a']) < b.levels['r'])
        throw Error(dir == Direction::Forward ? "pattern-mismatch" : "invalid-parameters",
                    rule_name(rule) + ": twist level " + unit_level(b.units['a']).str() + " is below torus level " +
                        b.levels['r'].str());
      break;
    default: break;
  }

  // Instantiate the replacement.
  std::vector<Slice> repl;
  for (const auto& ps : to) {
    Slice s;
    for (const auto& it : ps) {
      switch (it.kind) {
        case Gen::Twist: {
          const auto& u = b.units[it.var];
          s.push_back(u && !u->is_one() ? Token::twist(*u) : Token::cyl());
          break;
        }
        case Gen::Torus: s.push_back(Token::torus(it.var ? b.levels[it.var] : Level::inf())); break;
        case Gen::P21: s.push_back(Token::p21()); break;
        case Gen::P12: s.push_back(Token::p12()); break;
        case Gen::Cup: s.push_back(Token::cup()); break;
        case Gen::Cap: s.push_back(Token::cap()); break;
        case Gen::Cyl: s.push_back(Token::cyl()); break;
        case Gen::Swap: s.push_back(Token::swap()); break;
      }
    }
    repl.push_back(std::move(s));
  }

  // Factor the matched region as L (x) P (x) R and emit the contexts first,
  // then the replacement of P.
  const auto& sl = d.slices();
  const std::size_t h = from.size();
  const Slice& first = sl[pos.slice];
  unsigned p_in = 0;
  for (std::size_t i = 0; i < from[0].size(); ++i) p_in += first[mt->starts[0] + i].in_arity();

  std::vector<Slice> out(sl.begin(), sl.begin() + static_cast<long>(pos.slice));
  unsigned left_out = 0, right_out = 0;
  for (std::size_t t = 0; t < h; ++t) {
    const Slice& s = sl[pos.slice + t];
    const std::size_t a = mt->starts[t], e = a + from[t].size();
    Slice ns(s.begin(), s.begin() + static_cast<long>(a));
    ns.insert(ns.end(), p_in, Token::cyl());
    ns.insert(ns.end(), s.begin() + static_cast<long>(e), s.end());
    out.push_back(std::move(ns));
    if (t + 1 == h) {
      left_out = out_offset(s, a);
      right_out = slice_out(s) - out_offset(s, e);
    }
  }
  for (auto& r : repl) {
    Slice ns(left_out, Token::cyl());
    ns.insert(ns.end(), r.begin(), r.end());
    ns.insert(ns.end(), right_out, Token::cyl());
    out.push_back(std::move(ns));
  }
  out.insert(out.end(), sl.begin() + static_cast<long>(pos.slice + h), sl.end());

  std::vector<Slice> kept;
  for (auto& s : out)
    if (!std::all_of(s.begin(), s.end(), [](const Token& t) { return t.kind() == Gen::Cyl; })) kept.push_back(std::move(s));
  return Diagram(d.in_arity(), d.out_arity(), std::move(kept));
}

/// Every position at which the given side of `rule` matches d.
inline std::vector<Position> find_matches(const Diagram& d, Rule rule, Direction dir) {
  std::vector<Position> found;
  for (std::size_t i = 0; i < d.slices().size(); ++i)
    for (std::size_t j = 0; j < d.slices()[i].size(); ++j) {
      try {
        apply_relation(d, rule, {i, j}, dir);
        found.push_back({i, j});
      } catch (const Error&) {
      }
    }
  return found;
}

/// The left side of `rule` as a standalone diagram, with twist and torus
/// parameters taken from params (identity / INF when unset).
inline Diagram rule_lhs(Rule rule, const RuleParams& params) {
  const detail::RuleDef def = detail::rule_def(rule);
  std::vector<Slice> slices;
  for (const auto& ps : def.lhs) {
    Slice s;
    for (const auto& it : ps) {
      switch (it.kind) {
        case Gen::Twist: {
          const auto& u = it.var == 'a' ? params.alpha : params.beta;
          s.push_back(u && !u->is_one() ? Token::twist(*u) : Token::cyl());
          break;
        }
        case Gen::Torus:
          s.push_back(Token::torus(!it.var ? Level::inf() : it.var == 'r' ? params.r.value_or(Level::inf()) : params.r2.value_or(Level::inf())));
          break;
        case Gen::P21: s.push_back(Token::p21()); break;
        case Gen::P12: s.push_back(Token::p12()); break;
        case Gen::Cup: s.push_back(Token::cup()); break;
        case Gen::Cap: s.push_back(Token::cap()); break;
        case Gen::Cyl: s.push_back(Token::cyl()); break;
        case Gen::Swap: s.push_back(Token::swap()); break;
      }
    }
    slices.push_back(std::move(s));
  }
  return Diagram::from_slices(std::move(slices));
}

}  // namespace arith_tqft

#endif  // ARITH_TQFT_RELATIONS_HPP
