#pragma once

// Move rule catalog. Each named move is stored as a before/after fragment
// pair over a disk with numbered boundary attachment points (ports). Rules
// are data: they are parsed from rules/moves.rules and validated against
// the generic legality predicates at load time. The engine instantiates
// fragments of the catalog where the surgery is itself fragment-shaped and
// uses the declared deltas and guards everywhere else.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chart.hpp"

namespace cf {

enum class MoveKind {
  CIGeneric,  // arbitrary disk swap; exposed through the splice API only
  CIM1,
  CIM2,
  CIR2,
  CIR3,
  CIM4,
  CII,
  CIII,
  CutEdge,
  NewDisk,
};

const char* move_kind_name(MoveKind k);
std::optional<MoveKind> move_kind_from_name(std::string_view s);

// Labels inside fragments: var in {0:'none', 'k', 'l', 'm'} plus offset.
struct LabelExpr {
  char var = 0;  // 0 = constant
  int off = 0;

  bool operator==(const LabelExpr& o) const { return var == o.var && off == o.off; }
};

struct LabelBinding {
  int k = 0, l = 0, m = 0;
  int eval(const LabelExpr& e) const;
};

struct FragmentPort {
  LabelExpr label;
  bool into_disk = false;  // arrow sense at the boundary
};

struct FragmentVertex {
  std::string id;
  VertexKind kind = VertexKind::Black;
  std::vector<std::string> rot;  // end tokens "edge.t" / "edge.h"
};

struct FragmentEdge {
  std::string id;
  LabelExpr label;
  // Endpoint: vertex id, or port number (1-based) with empty id.
  std::string from, to;
  int from_port = 0, to_port = 0;
};

struct Fragment {
  std::vector<FragmentVertex> vertices;
  std::vector<FragmentEdge> edges;

  const FragmentVertex* vertex(std::string_view id) const;
  const FragmentEdge* edge(std::string_view id) const;
  int white_count() const;
  int black_count() const;
};

struct MoveRule {
  std::string name;
  MoveKind kind = MoveKind::CIGeneric;
  int dw = 0;
  std::optional<int> df;  // nullopt = instance-dependent
  std::vector<FragmentPort> ports;
  std::vector<std::string> guards;
  bool literature_derived = false;
  Fragment before, after;
  std::string note;

  bool has_guard(std::string_view g) const;
};

struct RuleSet {
  std::vector<MoveRule> rules;
  std::string source_text;  // verbatim catalog text (report hashing)

  const MoveRule* find(MoveKind k) const;
};

struct RuleLoadResult {
  bool ok = false;
  std::string error;
  RuleSet rules;
};

RuleLoadResult parse_move_rules(std::string_view text);
RuleLoadResult load_move_rules(const std::string& path);

// The catalog compiled into the library (mirrors rules/moves.rules).
const RuleSet& default_move_rules();
std::string_view default_move_rules_text();

}  // namespace cf
