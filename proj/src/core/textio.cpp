#include "textio.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <vector>

namespace cf {

namespace {

struct Cursor {
  int line = 0;
  std::string message;
  bool failed = false;
  void fail(int ln, std::string msg) {
    if (failed) return;
    failed = true;
    line = ln;
    message = std::move(msg);
  }
};

std::vector<std::string> tokens_of(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == '#') break;
    if (ch == ' ' || ch == '\t' || ch == '\r') {
      if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
    } else
      cur.push_back(ch);
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

// "key=value" -> value, else empty.
std::string_view keyed(std::string_view tok, std::string_view key) {
  if (tok.size() > key.size() + 1 && tok.substr(0, key.size()) == key && tok[key.size()] == '=')
    return tok.substr(key.size() + 1);
  return {};
}

bool parse_int(std::string_view s, int& out) {
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size();
}

}  // namespace

ParseResult parse_chart(std::string_view text) {
  ParseResult r;
  Chart& c = r.chart;
  Cursor err;
  std::unordered_map<std::string, std::int32_t> vid, eid;
  std::vector<char> end_used;
  std::vector<char> has_rot;
  bool saw_header = false, saw_inf = false;

  auto vertex_of = [&](int ln, const std::string& s) -> std::int32_t {
    auto it = vid.find(s);
    if (it == vid.end()) {
      err.fail(ln, "unknown vertex '" + s + "'");
      return -1;
    }
    return it->second;
  };
  // "<eid>.t" / "<eid>.h" -> end/dart number (same encoding).
  auto end_of = [&](int ln, std::string_view s) -> std::int32_t {
    auto dot = s.rfind('.');
    if (dot == std::string_view::npos || dot + 2 != s.size() ||
        (s[dot + 1] != 't' && s[dot + 1] != 'h')) {
      err.fail(ln, "expected <edge>.t or <edge>.h, got '" + std::string(s) + "'");
      return -1;
    }
    auto it = eid.find(std::string(s.substr(0, dot)));
    if (it == eid.end()) {
      err.fail(ln, "unknown edge '" + std::string(s.substr(0, dot)) + "'");
      return -1;
    }
    return make_end(it->second, s[dot + 1] == 'h');
  };
  // Keyed dart+side pair -> the dart whose left face is designated.
  auto face_dart = [&](int ln, const std::vector<std::string>& toks, std::string_view at_key,
                       std::string_view side_key, bool required) -> std::int32_t {
    std::string_view at, side;
    for (const auto& t : toks) {
      if (auto v = keyed(t, at_key); !v.empty()) at = v;
      if (auto v = keyed(t, side_key); !v.empty()) side = v;
    }
    if (at.empty() && !required) return -1;
    if (at.empty() || side.empty()) {
      err.fail(ln, std::string("missing ") + std::string(at_key) + "=/" +
                       std::string(side_key) + "= pair");
      return -1;
    }
    std::int32_t d = end_of(ln, at);
    if (d < 0) return -1;
    if (side == "left") return d;
    if (side == "right") return dart_reverse(d);
    err.fail(ln, "side must be left or right");
    return -1;
  };

  int ln = 0;
  std::size_t pos = 0;
  while (pos <= text.size() && !err.failed) {
    auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos
                                                                          : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++ln;
    auto toks = tokens_of(line);
    if (toks.empty()) continue;
    const std::string& head = toks[0];

    if (head == "chart") {
      if (saw_header) {
        err.fail(ln, "duplicate chart header");
        continue;
      }
      saw_header = true;
      if (toks.size() < 3) {
        err.fail(ln, "chart header needs a name and degree=<n>");
        continue;
      }
      c.name = toks[1];
      auto deg = keyed(toks[2], "degree");
      int n = 0;
      if (deg.empty() || !parse_int(deg, n))
        err.fail(ln, "chart header needs degree=<n>");
      else
        c.degree = n;
    } else if (head == "v") {
      if (toks.size() != 3) {
        err.fail(ln, "vertex line: v <id> kind=<kind>");
        continue;
      }
      if (toks[1].find('.') != std::string::npos) {
        err.fail(ln, "ids may not contain '.'");
        continue;
      }
      if (vid.count(toks[1])) {
        err.fail(ln, "duplicate vertex id '" + toks[1] + "'");
        continue;
      }
      auto k = keyed(toks[2], "kind");
      VertexKind kind;
      if (k == "white")
        kind = VertexKind::White;
      else if (k == "black")
        kind = VertexKind::Black;
      else if (k == "cross")
        kind = VertexKind::Crossing;
      else if (k == "anchor")
        kind = VertexKind::Anchor;
      else {
        err.fail(ln, "kind must be white|black|cross|anchor");
        continue;
      }
      vid[toks[1]] = c.nv();
      c.vertices.push_back({toks[1], kind, {}});
      has_rot.push_back(0);
    } else if (head == "e") {
      if (toks.size() != 5) {
        err.fail(ln, "edge line: e <id> label=<k> from=<vid> to=<vid>");
        continue;
      }
      if (toks[1].find('.') != std::string::npos) {
        err.fail(ln, "ids may not contain '.'");
        continue;
      }
      if (eid.count(toks[1])) {
        err.fail(ln, "duplicate edge id '" + toks[1] + "'");
        continue;
      }
      int label = 0;
      if (!parse_int(keyed(toks[2], "label"), label)) {
        err.fail(ln, "edge needs label=<int>");
        continue;
      }
      auto from = keyed(toks[3], "from"), to = keyed(toks[4], "to");
      if (from.empty() || to.empty()) {
        err.fail(ln, "edge needs from=<vid> to=<vid>");
        continue;
      }
      std::int32_t tv = vertex_of(ln, std::string(from)), hv = vertex_of(ln, std::string(to));
      if (err.failed) continue;
      eid[toks[1]] = c.ne();
      c.edges.push_back({toks[1], label, tv, hv});
      end_used.push_back(0);
      end_used.push_back(0);
    } else if (head == "rot") {
      if (toks.size() < 2 || toks[1].empty() || toks[1].back() != ':') {
        err.fail(ln, "rotation line: rot <vid>: <end> <end> ...");
        continue;
      }
      std::int32_t v = vertex_of(ln, toks[1].substr(0, toks[1].size() - 1));
      if (v < 0) continue;
      if (has_rot[v]) {
        err.fail(ln, "duplicate rotation for vertex '" + c.vertices[v].id + "'");
        continue;
      }
      has_rot[v] = 1;
      for (std::size_t i = 2; i < toks.size() && !err.failed; ++i) {
        std::int32_t x = end_of(ln, toks[i]);
        if (x < 0) break;
        if (end_used[x]) {
          err.fail(ln, "edge end '" + toks[i] + "' listed in two rotations");
          break;
        }
        end_used[x] = 1;
        c.vertices[v].rot.push_back(x);
      }
    } else if (head == "embed") {
      if (toks.size() < 2) {
        err.fail(ln, "embed line: embed <vid> in=<end> side=<s> [out=... out-side=...]");
        continue;
      }
      std::int32_t child = vertex_of(ln, toks[1]);
      if (child < 0) continue;
      std::int32_t in_dart = face_dart(ln, toks, "in", "side", true);
      std::int32_t out_dart = face_dart(ln, toks, "out", "out-side", false);
      if (err.failed) continue;
      c.embeds.push_back({child, in_dart, out_dart});
    } else if (head == "inf") {
      if (saw_inf) {
        err.fail(ln, "duplicate inf line");
        continue;
      }
      saw_inf = true;
      if (toks.size() == 2 && toks[1] == "everywhere") {
        c.inf_dart = -1;
      } else {
        c.inf_dart = face_dart(ln, toks, "at", "side", true);
      }
    } else {
      err.fail(ln, "unknown directive '" + head + "'");
    }
  }

  if (err.failed) {
    r.ok = false;
    r.error = {err.line, err.message};
    return r;
  }
  r.ok = true;
  return r;
}

ParseResult parse_chart_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    ParseResult r;
    r.ok = false;
    r.error = {0, "cannot open '" + path + "'"};
    return r;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_chart(ss.str());
}

namespace {

std::string end_token(const Chart& c, std::int32_t x) {
  return c.edges[end_edge(x)].id + (end_is_head(x) ? ".h" : ".t");
}

// Emit a face designator as forward dart + side.
std::string face_token(const Chart& c, std::string_view at_key, std::string_view side_key,
                       std::int32_t dart) {
  std::string s;
  s += at_key;
  s += '=';
  s += c.edges[dart_edge(dart)].id + ".t ";
  s += side_key;
  s += dart_is_backward(dart) ? "=right" : "=left";
  return s;
}

}  // namespace

std::string serialize_chart(const Chart& c) {
  std::ostringstream o;
  o << "chart " << c.name << " degree=" << c.degree << "\n";
  for (const auto& v : c.vertices) o << "v " << v.id << " kind=" << kind_name(v.kind) << "\n";
  for (const auto& e : c.edges)
    o << "e " << e.id << " label=" << e.label << " from=" << c.vertices[e.tail].id
      << " to=" << c.vertices[e.head].id << "\n";
  for (const auto& v : c.vertices) {
    if (v.rot.empty()) continue;
    o << "rot " << v.id << ":";
    for (std::int32_t x : v.rot) o << " " << end_token(c, x);
    o << "\n";
  }
  for (const auto& em : c.embeds) {
    o << "embed " << c.vertices[em.child_vertex].id << " "
      << face_token(c, "in", "side", em.in_dart);
    if (em.out_dart >= 0) o << " " << face_token(c, "out", "out-side", em.out_dart);
    o << "\n";
  }
  if (c.inf_dart >= 0)
    o << "inf " << face_token(c, "at", "side", c.inf_dart) << "\n";
  else if (c.ne() == 0)
    o << "inf everywhere\n";
  return o.str();
}

}  // namespace cf
