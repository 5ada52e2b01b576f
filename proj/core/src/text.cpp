#include "medforge/text.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "medforge/error.hpp"

namespace medforge {

std::string to_text(const NodeSet& w) {
  std::string out;
  if (w.kind() == NodeSetKind::kFinite) {
    out = "finite(";
    bool first = true;
    for (const auto& s : w.finite_nodes()) {
      if (!first) out += ',';
      first = false;
      out += '"' + s.str() + '"';
    }
    return out + ')';
  }
  return "branchoff(" + to_text(w.source()) + "," + std::to_string(w.start()) + "," +
         std::to_string(w.step()) + "," + std::to_string(w.tail()) + ")";
}

std::string to_text(const StreamFun& f) {
  switch (f.kind()) {
    case StreamKind::kTable: {
      std::string out = "table(default=" + to_literal(f.table_default());
      bool first = true;
      for (const auto& [k, v] : f.table_exceptions()) {
        out += first ? "; " : ", ";
        first = false;
        out += '"' + k.str() + "\"=" + to_literal(v);
      }
      return out + ')';
    }
    case StreamKind::kLevelConst: {
      const auto& s = f.schedule();
      std::string out = "levelconst(period=" + std::to_string(s.size()) + "; ";
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ',';
        out += to_literal(s[i]);
      }
      return out + ')';
    }
    case StreamKind::kF1Of:
      return "f1(" + to_text(f.f1_source()) + ")";
    case StreamKind::kPatch:
      return "patch(" + to_text(f.patch_base()) + "; w=" + to_text(f.patch_set()) + "; " +
             to_text(f.patch_override()) + ")";
  }
  return {};
}

namespace {

class Parser {
 public:
  Parser(std::string_view s, int line) : s_(s), line_(line) {}

  bool at_end() {
    skip_ws();
    return pos_ == s_.size();
  }

  void expect_end() {
    if (!at_end()) fail("trailing input");
  }

  StreamFun stream() {
    const std::string word = ident();
    expect('(');
    if (word == "table") {
      expect_word("default");
      expect('=');
      HfSet def = hf();
      std::map<BinStr, HfSet> exc;
      if (accept(';')) {
        do {
          BinStr k = quoted_node();
          expect('=');
          HfSet v = hf();
          if (!exc.emplace(k, v).second) fail("duplicate table key \"" + k.str() + "\"");
        } while (accept(','));
      }
      expect(')');
      return StreamFun::table(def, std::move(exc));
    }
    if (word == "levelconst") {
      expect_word("period");
      expect('=');
      const std::size_t p = number();
      expect(';');
      std::vector<HfSet> vals;
      do {
        vals.push_back(hf());
      } while (accept(','));
      if (vals.size() != p || p == 0) fail("levelconst period does not match value count");
      expect(')');
      return StreamFun::levelconst(std::move(vals));
    }
    if (word == "f1") {
      StreamFun p = stream();
      expect(')');
      return StreamFun::f1_of(p);
    }
    if (word == "patch") {
      StreamFun base = stream();
      expect(';');
      expect_word("w");
      expect('=');
      NodeSet w = nodeset();
      expect(';');
      StreamFun over = stream();
      expect(')');
      return StreamFun::patch(base, w, over);
    }
    fail("unknown stream constructor '" + word + "'");
  }

  NodeSet nodeset() {
    const std::string word = ident();
    expect('(');
    if (word == "finite") {
      std::vector<BinStr> nodes;
      skip_ws();
      if (!accept(')')) {
        do {
          nodes.push_back(quoted_node());
        } while (accept(','));
        expect(')');
      }
      return NodeSet::finite(std::move(nodes));
    }
    if (word == "branchoff") {
      StreamFun src = stream();
      expect(',');
      const std::size_t start = number();
      expect(',');
      const std::size_t step = number();
      expect(',');
      const std::size_t tail = number();
      expect(')');
      if (step == 0) fail("branchoff step must be >= 1");
      return NodeSet::branch_off(src, start, step, tail);
    }
    fail("unknown node set constructor '" + word + "'");
  }

  HfSet hf() {
    skip_ws();
    const std::size_t start = pos_;
    int depth = 0;
    if (pos_ < s_.size() && s_[pos_] == '#') {
      ++pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    } else {
      do {
        if (pos_ >= s_.size()) fail("unterminated HF literal");
        const char c = s_[pos_++];
        if (c == '{') {
          ++depth;
        } else if (c == '}') {
          --depth;
        } else if (c == '#') {
          while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        } else if (c != ',' && !std::isspace(static_cast<unsigned char>(c))) {
          pos_ = pos_ - 1;
          fail("unexpected character in HF literal");
        }
      } while (depth > 0);
    }
    try {
      return parse_hf(s_.substr(start, pos_ - start));
    } catch (const ParseError& e) {
      throw ParseError(std::string("bad HF literal: ") + e.what(), line_,
                       static_cast<int>(start) + e.column());
    }
  }

  void fail_public(const std::string& msg) { fail(msg); }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  std::string ident() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    if (start == pos_) fail("expected identifier");
    return std::string(s_.substr(start, pos_ - start));
  }
  void expect_word(const char* w) {
    const std::size_t at = pos_;
    if (ident() != w) {
      pos_ = at;
      fail(std::string("expected '") + w + "'");
    }
  }
  std::size_t number() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected number");
    return std::stoull(std::string(s_.substr(start, pos_ - start)));
  }
  BinStr quoted_node() {
    expect('"');
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (s_[pos_] == '0' || s_[pos_] == '1')) ++pos_;
    BinStr s(s_.substr(start, pos_ - start));
    if (pos_ >= s_.size() || s_[pos_] != '"') fail("expected closing '\"' of node");
    ++pos_;
    return s;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, line_, static_cast<int>(pos_) + 1);
  }

  std::string_view s_;
  int line_;
  std::size_t pos_ = 0;
};

template <typename F>
void for_each_line(std::string_view text, F&& fn) {
  int line = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++line;
    std::string_view l = text.substr(pos, end - pos);
    std::size_t a = l.find_first_not_of(" \t\r");
    if (a != std::string_view::npos && l.substr(a, 2) != "//") fn(l, line);
    if (end == text.size()) break;
    pos = end + 1;
  }
}

}  // namespace

StreamFun parse_stream(std::string_view text) {
  Parser p(text, 1);
  StreamFun f = p.stream();
  p.expect_end();
  return f;
}

NodeSet parse_nodeset(std::string_view text) {
  Parser p(text, 1);
  NodeSet w = p.nodeset();
  p.expect_end();
  return w;
}

std::vector<StreamFun> parse_stream_lines(std::string_view text) {
  std::vector<StreamFun> out;
  for_each_line(text, [&](std::string_view l, int line) {
    Parser p(l, line);
    out.push_back(p.stream());
    p.expect_end();
  });
  return out;
}

std::map<BinStr, HfSet> parse_region(std::string_view text) {
  std::map<BinStr, HfSet> out;
  for_each_line(text, [&](std::string_view l, int line) {
    const std::size_t eq = l.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected '\"node\"=<hf>'", line, 1);
    std::string_view key = l.substr(0, eq);
    const std::size_t q1 = key.find('"');
    const std::size_t q2 = key.rfind('"');
    if (q1 == std::string_view::npos || q2 == q1) throw ParseError("expected quoted node", line, 1);
    BinStr node(key.substr(q1 + 1, q2 - q1 - 1));
    Parser p(l.substr(eq + 1), line);
    HfSet v = p.hf();
    p.expect_end();
    if (!out.emplace(node, v).second) throw ParseError("duplicate node", line, 1);
  });
  return out;
}

std::string region_to_text(const std::map<BinStr, HfSet>& region) {
  std::string out;
  for (const auto& [k, v] : region) out += '"' + k.str() + "\"=" + to_literal(v) + "\n";
  return out;
}

std::string canonicalize(std::string_view text) {
  std::size_t a = text.find_first_not_of(" \t\r\n");
  if (a == std::string_view::npos) throw ParseError("empty input", 1, 1);
  const char c = text[a];
  if (c == '{' || c == '#') return to_literal(parse_hf(text));
  if (text.substr(a, 6) == "finite" || text.substr(a, 9) == "branchoff") return to_text(parse_nodeset(text));
  return to_text(parse_stream(text));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kInvalidArgument, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace medforge
