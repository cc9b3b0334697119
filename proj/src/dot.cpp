#include "ntm/dot.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>

#include "ntm/error.hpp"
#include "ntm/tree.hpp"

namespace ntm {

RenderFormat render_format_from_string(std::string_view text) {
  if (text == "dot") return RenderFormat::Dot;
  if (text == "tree") return RenderFormat::Tree;
  throw Error(Errc::InvalidArgument, "unknown format '" + std::string(text) + "' (expected dot or tree)");
}

namespace {

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}

}  // namespace

std::string to_dot(const Graph& g, const RenderConfig& cfg) {
  std::ostringstream os;
  os << "digraph " << quote(cfg.graph_name) << " {\n";
  for (const auto& n : g.nodes) {
    os << "  " << quote(n.key) << " [shape=" << (n.kind == NodeKind::Procedure ? "box" : "ellipse")
       << ", label=" << quote(n.key + ": " + n.label) << "];\n";
  }
  for (const auto& e : g.edges) os << "  " << quote(e.from) << " -> " << quote(e.to) << ";\n";
  os << "}\n";
  return os.str();
}

std::string render(const Graph& g, const RenderConfig& cfg) {
  if (cfg.format == RenderFormat::Dot) return to_dot(g, cfg);
  return to_tree(g).dump(2) + "\n";
}

const DotNode* DotGraph::find(const std::string& id) const {
  for (const auto& n : nodes) {
    if (n.id == id) return &n;
  }
  return nullptr;
}

namespace {

enum class Tok { Id, Punct, EdgeOp, End };

struct Token {
  Tok kind;
  std::string text;
  bool quoted = false;
  std::size_t line;
};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  Token next() {
    skip();
    if (i_ >= s_.size()) return {Tok::End, "", false, line_};
    const char c = s_[i_];
    if (c == '"') return quoted();
    if (c == '<') fail("HTML strings are not supported");
    if (c == '-' && i_ + 1 < s_.size() && (s_[i_ + 1] == '>' || s_[i_ + 1] == '-')) {
      i_ += 2;
      return {Tok::EdgeOp, std::string(s_.substr(i_ - 2, 2)), false, line_};
    }
    if (std::string_view("{}[];,=:").find(c) != std::string_view::npos) {
      ++i_;
      return {Tok::Punct, std::string(1, c), false, line_};
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || static_cast<unsigned char>(c) >= 0x80) {
      const std::size_t start = i_;
      while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_' ||
                                static_cast<unsigned char>(s_[i_]) >= 0x80)) {
        ++i_;
      }
      return {Tok::Id, std::string(s_.substr(start, i_ - start)), false, line_};
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '-') {
      const std::size_t start = i_;
      if (s_[i_] == '-') ++i_;
      while (i_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '.')) ++i_;
      return {Tok::Id, std::string(s_.substr(start, i_ - start)), false, line_};
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(Errc::FormatError, "dot line " + std::to_string(line_) + ": " + msg);
  }

 private:
  void skip() {
    bool line_start = i_ == 0 || s_[i_ - 1] == '\n';
    while (i_ < s_.size()) {
      const char c = s_[i_];
      if (c == '\n') {
        ++line_;
        ++i_;
        line_start = true;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++i_;
      } else if (c == '#' && line_start) {
        while (i_ < s_.size() && s_[i_] != '\n') ++i_;
      } else if (s_.substr(i_).starts_with("//")) {
        while (i_ < s_.size() && s_[i_] != '\n') ++i_;
      } else if (s_.substr(i_).starts_with("/*")) {
        const auto end = s_.find("*/", i_ + 2);
        if (end == std::string_view::npos) fail("unterminated comment");
        line_ += static_cast<std::size_t>(std::count(s_.begin() + static_cast<std::ptrdiff_t>(i_),
                                                     s_.begin() + static_cast<std::ptrdiff_t>(end), '\n'));
        i_ = end + 2;
        line_start = false;
      } else {
        return;
      }
    }
  }

  Token quoted() {
    const std::size_t line = line_;
    std::string out;
    ++i_;
    while (true) {
      if (i_ >= s_.size()) fail("unterminated string");
      const char c = s_[i_++];
      if (c == '"') break;
      if (c == '\n') ++line_;
      if (c == '\\' && i_ < s_.size()) {
        const char n = s_[i_++];
        if (n == '"') out += '"';
        else if (n == '\n') ++line_;  // line continuation
        else {
          out += '\\';
          out += n;
        }
        continue;
      }
      out += c;
    }
    // "a" + "b" concatenation
    const std::size_t save = i_, save_line = line_;
    skip();
    if (i_ < s_.size() && s_[i_] == '+') {
      ++i_;
      skip();
      if (i_ < s_.size() && s_[i_] == '"') return {Tok::Id, out + quoted().text, true, line};
    }
    i_ = save;
    line_ = save_line;
    return {Tok::Id, out, true, line};
  }

  std::string_view s_;
  std::size_t i_ = 0;
  std::size_t line_ = 1;
};

void assign(DotAttributes& into, const DotAttributes& from) {
  for (const auto& [k, v] : from) into[k] = v;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

class DotParser {
 public:
  explicit DotParser(std::string_view text) : lex_(text) { advance(); }

  DotGraph parse() {
    if (keyword("strict")) {
      g_.strict = true;
      advance();
    }
    if (keyword("digraph")) g_.directed = true;
    else if (keyword("graph")) g_.directed = false;
    else lex_.fail("expected 'graph' or 'digraph'");
    advance();
    if (tok_.kind == Tok::Id) {
      g_.name = tok_.text;
      advance();
    }
    expect("{");
    while (!is("}")) {
      if (tok_.kind == Tok::End) lex_.fail("missing '}'");
      statement();
      if (is(";")) advance();
    }
    advance();
    if (tok_.kind != Tok::End) lex_.fail("text after the graph");
    return std::move(g_);
  }

 private:
  void statement() {
    if (keyword("subgraph") || is("{")) lex_.fail("subgraphs are not supported");
    if (keyword("graph") || keyword("node") || keyword("edge")) {
      const std::string which = lower(tok_.text);
      advance();
      DotAttributes attrs = attr_lists();
      if (which == "graph") assign(g_.graph_attributes, attrs);
      else if (which == "node") assign(node_defaults_, attrs);
      return;
    }
    if (tok_.kind != Tok::Id) lex_.fail("expected a statement, got '" + tok_.text + "'");
    std::string first = tok_.text;
    advance();
    if (is("=")) {
      advance();
      g_.graph_attributes[first] = id("attribute value");
      return;
    }
    port();
    if (tok_.kind != Tok::EdgeOp) {
      assign(touch(first).attributes, attr_lists());
      return;
    }
    std::vector<std::string> chain{first};
    touch(first);
    while (tok_.kind == Tok::EdgeOp) {
      if ((tok_.text == "->") != g_.directed) lex_.fail("edge operator '" + tok_.text + "' does not match graph kind");
      advance();
      chain.push_back(id("node id"));
      port();
      touch(chain.back());
    }
    const DotAttributes attrs = attr_lists();
    for (std::size_t k = 0; k + 1 < chain.size(); ++k) g_.edges.push_back({chain[k], chain[k + 1], attrs});
  }

  DotNode& touch(const std::string& node_id) {
    for (auto& n : g_.nodes) {
      if (n.id == node_id) return n;
    }
    g_.nodes.push_back({node_id, node_defaults_});
    return g_.nodes.back();
  }

  void port() {
    for (int k = 0; k < 2 && is(":"); ++k) {
      advance();
      id("port");
    }
  }

  DotAttributes attr_lists() {
    DotAttributes attrs;
    while (is("[")) {
      advance();
      while (!is("]")) {
        const std::string key = id("attribute name");
        expect("=");
        attrs[key] = id("attribute value");
        if (is(",") || is(";")) advance();
      }
      advance();
    }
    return attrs;
  }

  std::string id(const char* what) {
    if (tok_.kind != Tok::Id) lex_.fail(std::string("expected ") + what);
    std::string out = tok_.text;
    advance();
    return out;
  }

  void expect(const char* p) {
    if (!is(p)) lex_.fail(std::string("expected '") + p + "'");
    advance();
  }
  bool is(const char* p) const { return tok_.kind == Tok::Punct && tok_.text == p; }
  bool keyword(const char* k) const { return tok_.kind == Tok::Id && !tok_.quoted && lower(tok_.text) == k; }
  void advance() { tok_ = lex_.next(); }

  Lexer lex_;
  Token tok_{Tok::End, "", false, 0};
  DotGraph g_;
  DotAttributes node_defaults_;
};

}  // namespace

DotGraph read_dot(std::string_view text) { return DotParser(text).parse(); }

Graph graph_from_dot(const DotGraph& dot) {
  if (!dot.directed) throw Error(Errc::FormatError, "expected a digraph");
  Graph g;
  for (const auto& n : dot.nodes) {
    auto attr = [&n](const char* key) -> std::string {
      auto it = n.attributes.find(key);
      if (it == n.attributes.end()) throw Error(Errc::FormatError, "node '" + n.id + "' has no " + key);
      return it->second;
    };
    const std::string shape = attr("shape");
    const std::string label = attr("label");
    const std::string prefix = n.id + ": ";
    if (!label.starts_with(prefix)) throw Error(Errc::FormatError, "node '" + n.id + "' label is not '<key>: <label>'");
    GraphNode node;
    if (shape == "box") node.kind = NodeKind::Procedure;
    else if (shape == "ellipse") node.kind = NodeKind::Context;
    else throw Error(Errc::FormatError, "node '" + n.id + "' has unknown shape '" + shape + "'");
    node.key = n.id;
    node.label = label.substr(prefix.size());
    g.nodes.push_back(std::move(node));
  }
  for (const auto& e : dot.edges) g.edges.push_back({e.from, e.to});
  return g;
}

}  // namespace ntm
