#include "rules.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "rules_data.h"

namespace cf {
namespace {

const std::pair<const char*, MoveKind> kKindNames[] = {
    {"CI-generic", MoveKind::CIGeneric}, {"CI-M1", MoveKind::CIM1},
    {"CI-M2", MoveKind::CIM2},           {"CI-R2", MoveKind::CIR2},
    {"CI-R3", MoveKind::CIR3},           {"CI-M4", MoveKind::CIM4},
    {"C-II", MoveKind::CII},             {"C-III", MoveKind::CIII},
    {"CutEdge-macro", MoveKind::CutEdge}, {"NewDisk-pass", MoveKind::NewDisk},
};

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream is{std::string(line)};
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

bool parse_label_expr(const std::string& s, LabelExpr& out) {
  if (s.empty()) return false;
  if (s == "k" || s == "l" || s == "m") {
    out = {s[0], 0};
    return true;
  }
  if (s.size() >= 3 && (s[0] == 'k' || s[0] == 'l' || s[0] == 'm') &&
      (s[1] == '+' || s[1] == '-')) {
    char* end = nullptr;
    long v = std::strtol(s.c_str() + 1, &end, 10);
    if (end == nullptr || *end != '\0') return false;
    out = {s[0], static_cast<int>(v)};
    return true;
  }
  char* end = nullptr;
  long v = std::strtol(s.c_str(), &end, 10);
  if (end == nullptr || *end != '\0') return false;
  out = {0, static_cast<int>(v)};
  return true;
}

bool parse_endpoint(const std::string& s, std::string& id, int& port) {
  if (!s.empty() && s[0] == '@') {
    char* end = nullptr;
    long v = std::strtol(s.c_str() + 1, &end, 10);
    if (end == nullptr || *end != '\0' || v < 1) return false;
    id.clear();
    port = static_cast<int>(v);
    return true;
  }
  id = s;
  port = 0;
  return true;
}

std::optional<VertexKind> parse_kind_word(const std::string& s) {
  if (s == "white") return VertexKind::White;
  if (s == "black") return VertexKind::Black;
  if (s == "cross") return VertexKind::Crossing;
  if (s == "anchor") return VertexKind::Anchor;
  return std::nullopt;
}

struct Validator {
  const MoveRule& r;
  std::string err;

  bool fail(const std::string& m) {
    err = "rule " + r.name + ": " + m;
    return false;
  }

  // Representative binding honouring the guards.
  LabelBinding binding() const {
    LabelBinding b;
    b.k = 10;
    b.l = r.has_guard("adjacent-labels") ? 11 : 13;
    b.m = 16;
    return b;
  }

  // End token -> (edge id, is_head); false on bad syntax.
  static bool split_end(const std::string& tok, std::string& eid, bool& head) {
    auto dot = tok.rfind('.');
    if (dot == std::string::npos || dot + 2 != tok.size()) return false;
    char c = tok[dot + 1];
    if (c != 't' && c != 'h') return false;
    eid = tok.substr(0, dot);
    head = c == 'h';
    return true;
  }

  bool check_fragment(const Fragment& f, const char* which) {
    const LabelBinding bind = binding();
    // Edge endpoints resolve; ports used exactly once; port signature.
    std::map<int, int> port_uses;
    for (const auto& e : f.edges) {
      for (int side = 0; side < 2; ++side) {
        const std::string& vid = side ? e.to : e.from;
        int port = side ? e.to_port : e.from_port;
        if (port > 0) {
          if (port > static_cast<int>(r.ports.size()))
            return fail(std::string(which) + ": port @" + std::to_string(port) +
                        " out of range");
          ++port_uses[port];
          const FragmentPort& p = r.ports[port - 1];
          if (!(p.label == e.label))
            return fail(std::string(which) + ": edge " + e.id +
                        " label does not match port @" + std::to_string(port));
          // from=@i means the strand arrow enters the disk at i.
          bool into = side == 0;
          if (into != p.into_disk)
            return fail(std::string(which) + ": edge " + e.id +
                        " direction does not match port @" + std::to_string(port));
        } else if (f.vertex(vid) == nullptr) {
          return fail(std::string(which) + ": edge " + e.id +
                      " references unknown vertex " + vid);
        }
      }
    }
    for (std::size_t i = 0; i < r.ports.size(); ++i) {
      auto it = port_uses.find(static_cast<int>(i) + 1);
      if (it == port_uses.end() || it->second != 1)
        return fail(std::string(which) + ": port @" + std::to_string(i + 1) +
                    " must be used exactly once");
    }
    // Incident end multiset per vertex.
    std::map<std::string, std::vector<std::pair<std::string, bool>>> inc;
    for (const auto& e : f.edges) {
      if (e.from_port == 0) inc[e.from].push_back({e.id, false});
      if (e.to_port == 0) inc[e.to].push_back({e.id, true});
    }
    for (const auto& v : f.vertices) {
      auto ends = inc[v.id];
      std::size_t want = 0;
      switch (v.kind) {
        case VertexKind::White: want = 6; break;
        case VertexKind::Black: want = 1; break;
        case VertexKind::Crossing: want = 4; break;
        case VertexKind::Anchor: want = 2; break;
      }
      if (ends.size() != want)
        return fail(std::string(which) + ": vertex " + v.id + " has degree " +
                    std::to_string(ends.size()) + ", expected " + std::to_string(want));
      // Rotation: required unless degree 1 (blacks may omit it).
      std::vector<std::pair<std::string, bool>> rot;
      if (v.rot.empty()) {
        if (ends.size() > 1)
          return fail(std::string(which) + ": vertex " + v.id + " needs a rot line");
        rot = ends;
      } else {
        for (const auto& tok : v.rot) {
          std::string eid;
          bool head = false;
          if (!split_end(tok, eid, head))
            return fail(std::string(which) + ": bad end token " + tok);
          rot.push_back({eid, head});
        }
      }
      auto sorted = [](std::vector<std::pair<std::string, bool>> v2) {
        std::sort(v2.begin(), v2.end());
        return v2;
      };
      if (sorted(rot) != sorted(ends))
        return fail(std::string(which) + ": rot of " + v.id +
                    " does not list its incident ends");
      auto label_at = [&](std::size_t i) {
        return bind.eval(f.edge(rot[i].first)->label);
      };
      // "in" = arrow toward the vertex = head end.
      auto is_in = [&](std::size_t i) { return rot[i].second; };
      if (v.kind == VertexKind::White) {
        int flips = 0, ins = 0;
        for (std::size_t i = 0; i < 6; ++i) {
          if (std::abs(label_at(i) - label_at((i + 1) % 6)) != 1)
            return fail(std::string(which) + ": white " + v.id +
                        " labels do not alternate");
          if (is_in(i) != is_in((i + 1) % 6)) ++flips;
          if (is_in(i)) ++ins;
        }
        if (ins != 3 || flips != 2)
          return fail(std::string(which) + ": white " + v.id +
                      " does not have three consecutive inward ends");
      } else if (v.kind == VertexKind::Crossing) {
        for (int i = 0; i < 2; ++i) {
          if (label_at(i) != label_at(i + 2) || is_in(i) == is_in(i + 2))
            return fail(std::string(which) + ": crossing " + v.id +
                        " opposite ends must continue one strand");
        }
        if (std::abs(label_at(0) - label_at(1)) < 2)
          return fail(std::string(which) + ": crossing " + v.id +
                      " labels are not distant");
      } else if (v.kind == VertexKind::Anchor) {
        if (rot[0].first != rot[1].first || rot[0].second == rot[1].second)
          return fail(std::string(which) + ": anchor " + v.id +
                      " must carry both ends of one hoop edge");
      }
    }
    // Every rot token references a known edge.
    for (const auto& v : f.vertices)
      for (const auto& tok : v.rot) {
        std::string eid;
        bool head = false;
        if (split_end(tok, eid, head) && f.edge(eid) == nullptr)
          return fail(std::string(which) + ": rot of " + v.id +
                      " references unknown edge " + eid);
      }
    return true;
  }

  bool run() {
    static const std::set<std::string> known_guards = {
        "far-labels", "adjacent-labels", "pairwise-far", "not-middle"};
    for (const auto& g : r.guards)
      if (known_guards.find(g) == known_guards.end())
        return fail("unknown guard " + g);
    if (!check_fragment(r.before, "before") || !check_fragment(r.after, "after"))
      return false;
    if (r.after.white_count() - r.before.white_count() != r.dw)
      return fail("declared white delta does not match the fragments");
    switch (r.kind) {
      case MoveKind::CIM1:
      case MoveKind::CIM2:
      case MoveKind::CIR2:
      case MoveKind::CIR3:
      case MoveKind::CIM4:
        if (r.before.black_count() != 0 || r.after.black_count() != 0)
          return fail("C-I fragments must not contain black vertices");
        break;
      case MoveKind::CII:
        if (r.before.black_count() != 1 || r.after.black_count() != 1)
          return fail("C-II fragments carry exactly one black vertex");
        if (!r.has_guard("far-labels")) return fail("C-II requires guard far-labels");
        break;
      case MoveKind::CIII:
        if (r.before.white_count() != 1 || r.before.black_count() != 1 ||
            r.after.white_count() != 0 || r.after.black_count() != 1)
          return fail("C-III cancels one white against one black");
        if (!r.has_guard("adjacent-labels") || !r.has_guard("not-middle"))
          return fail("C-III requires guards adjacent-labels and not-middle");
        break;
      case MoveKind::CutEdge:
        if (!r.literature_derived)
          return fail("the cut-edge macro must be flagged literature-derived");
        if (!r.has_guard("adjacent-labels"))
          return fail("cut-edge requires guard adjacent-labels");
        break;
      default:
        return fail("rule files cannot define this kind");
    }
    return true;
  }
};

}  // namespace

int LabelBinding::eval(const LabelExpr& e) const {
  switch (e.var) {
    case 'k': return k + e.off;
    case 'l': return l + e.off;
    case 'm': return m + e.off;
    default: return e.off;
  }
}

const char* move_kind_name(MoveKind k) {
  for (const auto& [name, kind] : kKindNames)
    if (kind == k) return name;
  return "?";
}

std::optional<MoveKind> move_kind_from_name(std::string_view s) {
  for (const auto& [name, kind] : kKindNames)
    if (s == name) return kind;
  return std::nullopt;
}

const FragmentVertex* Fragment::vertex(std::string_view id) const {
  for (const auto& v : vertices)
    if (v.id == id) return &v;
  return nullptr;
}

const FragmentEdge* Fragment::edge(std::string_view id) const {
  for (const auto& e : edges)
    if (e.id == id) return &e;
  return nullptr;
}

int Fragment::white_count() const {
  int n = 0;
  for (const auto& v : vertices) n += v.kind == VertexKind::White;
  return n;
}

int Fragment::black_count() const {
  int n = 0;
  for (const auto& v : vertices) n += v.kind == VertexKind::Black;
  return n;
}

bool MoveRule::has_guard(std::string_view g) const {
  return std::find(guards.begin(), guards.end(), g) != guards.end();
}

const MoveRule* RuleSet::find(MoveKind k) const {
  for (const auto& r : rules)
    if (r.kind == k) return &r;
  return nullptr;
}

RuleLoadResult parse_move_rules(std::string_view text) {
  RuleLoadResult res;
  res.rules.source_text = std::string(text);

  enum class S { Top, Rule, Before, After } state = S::Top;
  MoveRule cur;
  int lineno = 0;
  std::istringstream is{std::string(text)};
  std::string raw;

  auto fail = [&](const std::string& m) {
    res.ok = false;
    res.error = "moves.rules:" + std::to_string(lineno) + ": " + m;
    return res;
  };

  while (std::getline(is, raw)) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    auto toks = split_ws(raw);
    if (toks.empty()) continue;
    const std::string& head = toks[0];

    if (state == S::Top) {
      if (head != "rule" || toks.size() != 2) return fail("expected 'rule <name>'");
      cur = MoveRule{};
      cur.name = toks[1];
      state = S::Rule;
      continue;
    }

    if (state == S::Before || state == S::After) {
      Fragment& f = state == S::Before ? cur.before : cur.after;
      if (head == "end") {
        state = S::Rule;
      } else if (head == "v" && toks.size() == 3) {
        auto k = parse_kind_word(toks[2]);
        if (!k) return fail("bad vertex kind " + toks[2]);
        f.vertices.push_back({toks[1], *k, {}});
      } else if (head == "e" && toks.size() == 5) {
        FragmentEdge e;
        e.id = toks[1];
        if (!parse_label_expr(toks[2], e.label)) return fail("bad label " + toks[2]);
        if (!parse_endpoint(toks[3], e.from, e.from_port) ||
            !parse_endpoint(toks[4], e.to, e.to_port))
          return fail("bad endpoint on edge " + e.id);
        f.edges.push_back(std::move(e));
      } else if (head == "rot" && toks.size() >= 3) {
        bool found = false;
        for (auto& v : f.vertices)
          if (v.id == toks[1]) {
            v.rot.assign(toks.begin() + 2, toks.end());
            found = true;
          }
        if (!found) return fail("rot for unknown vertex " + toks[1]);
      } else {
        return fail("bad fragment line");
      }
      continue;
    }

    // state == S::Rule
    if (head == "kind" && toks.size() == 2) {
      auto k = move_kind_from_name(toks[1]);
      if (!k) return fail("unknown kind " + toks[1]);
      cur.kind = *k;
    } else if (head == "delta" && toks.size() == 3) {
      cur.dw = std::atoi(toks[1].c_str());
      if (toks[2] == "*")
        cur.df = std::nullopt;
      else
        cur.df = std::atoi(toks[2].c_str());
    } else if (head == "ports" && toks.size() == 2) {
      cur.ports.assign(static_cast<std::size_t>(std::atoi(toks[1].c_str())),
                       FragmentPort{});
    } else if (head == "port" && toks.size() == 4) {
      int i = std::atoi(toks[1].c_str());
      if (i < 1 || i > static_cast<int>(cur.ports.size()))
        return fail("port index out of range");
      FragmentPort p;
      if (!parse_label_expr(toks[2], p.label)) return fail("bad port label " + toks[2]);
      if (toks[3] == "in")
        p.into_disk = true;
      else if (toks[3] == "out")
        p.into_disk = false;
      else
        return fail("port direction must be in or out");
      cur.ports[static_cast<std::size_t>(i - 1)] = p;
    } else if (head == "guard" && toks.size() == 2) {
      cur.guards.push_back(toks[1]);
    } else if (head == "flag" && toks.size() == 2 && toks[1] == "literature-derived") {
      cur.literature_derived = true;
    } else if (head == "note") {
      std::string rest;
      for (std::size_t i = 1; i < toks.size(); ++i) {
        if (i > 1) rest += ' ';
        rest += toks[i];
      }
      if (!cur.note.empty()) cur.note += ' ';
      cur.note += rest;
    } else if (head == "before") {
      state = S::Before;
    } else if (head == "after") {
      state = S::After;
    } else if (head == "endrule") {
      Validator v{cur, {}};
      if (!v.run()) {
        res.ok = false;
        res.error = v.err;
        return res;
      }
      for (const auto& prev : res.rules.rules) {
        if (prev.kind == cur.kind) return fail("duplicate rule for kind");
        if (prev.name == cur.name) return fail("duplicate rule name");
      }
      res.rules.rules.push_back(std::move(cur));
      state = S::Top;
    } else {
      return fail("unexpected line in rule");
    }
  }
  if (state != S::Top) {
    res.ok = false;
    res.error = "moves.rules: unterminated rule " + cur.name;
    return res;
  }
  res.ok = true;
  return res;
}

RuleLoadResult load_move_rules(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    RuleLoadResult res;
    res.error = "cannot open " + path;
    return res;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_move_rules(ss.str());
}

const RuleSet& default_move_rules() {
  static const RuleSet rules = [] {
    auto res = parse_move_rules(kMovesRulesText);
    if (!res.ok) {
      // The embedded catalog is validated by the test suite; a parse failure
      // here is a build defect, not a runtime condition.
      std::fprintf(stderr, "embedded move catalog invalid: %s\n", res.error.c_str());
      std::abort();
    }
    return res.rules;
  }();
  return rules;
}

std::string_view default_move_rules_text() { return kMovesRulesText; }

}  // namespace cf
