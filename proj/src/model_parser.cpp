#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>

#include "ntm/error.hpp"
#include "ntm/model.hpp"

namespace ntm {

namespace {

enum class Section { None, Abstract, Procedures, Context, Connections, Graph };

std::optional<Section> section_named(std::string_view name) {
  if (name == "abstract") return Section::Abstract;
  if (name == "procedures") return Section::Procedures;
  if (name == "context") return Section::Context;
  if (name == "connections") return Section::Connections;
  if (name == "graph" || name == "graphs") return Section::Graph;
  return std::nullopt;
}

const char* doc_section(Section s) {
  switch (s) {
    case Section::Procedures: return "procedures";
    case Section::Context: return "context";
    case Section::Connections: return "connections";
    default: return "";
  }
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

bool is_label_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

struct Header {
  std::string name;
  std::size_t column;
  std::string_view rest;
};

// `^\s*([a-z]+)\.(\s|$)`
std::optional<Header> match_header(std::string_view line) {
  std::size_t i = 0;
  while (i < line.size() && is_space(line[i])) ++i;
  const std::size_t start = i;
  while (i < line.size() && line[i] >= 'a' && line[i] <= 'z') ++i;
  if (i == start || i >= line.size() || line[i] != '.') return std::nullopt;
  if (i + 1 < line.size() && !is_space(line[i + 1])) return std::nullopt;
  return Header{std::string(line.substr(start, i - start)), start + 1, line.substr(i + 1)};
}

class Cursor {
 public:
  Cursor(std::string_view text, std::size_t line) : text_(text), line_(line) {}

  void skip_ws() {
    while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  bool starts_with(std::string_view s) const { return text_.substr(pos_).starts_with(s); }
  bool accept(std::string_view s) {
    if (!starts_with(s)) return false;
    pos_ += s.size();
    return true;
  }
  void expect(std::string_view s, std::string_view what) {
    skip_ws();
    if (!accept(s)) fail("expected " + std::string(what));
  }

  template <class Pred>
  std::string take_while(Pred pred) {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && pred(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string label() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_label_char(text_[pos_])) ++pos_;
    if (pos_ == start) fail("expected a label [A-Za-z0-9_]+");
    return std::string(text_.substr(start, pos_ - start));
  }

  /// Optional trailing `// comment`, then end of line.
  std::string trailer() {
    skip_ws();
    if (at_end()) return {};
    if (!accept("//")) fail("unexpected text");
    std::string comment(trim(text_.substr(pos_)));
    pos_ = text_.size();
    return comment;
  }

  std::size_t column() const { return pos_ + 1; }
  std::size_t line() const { return line_; }

  [[noreturn]] void fail(const std::string& msg, Errc code = Errc::SyntaxError) const {
    std::string near(text_.substr(pos_, 12));
    throw ParseError(code, line_, column(), at_end() ? msg + " at end of line" : msg + " near '" + near + "'");
  }

 private:
  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

ProcedureDecl parse_procedure(Cursor& c) {
  ProcedureDecl d;
  d.line = c.line();
  c.skip_ws();
  const std::size_t col = c.column();
  const std::string digits = c.take_while([](char ch) { return ch >= '0' && ch <= '9'; });
  if (digits.empty()) c.fail("expected a numeric procedure id");
  if (digits.size() > 9) throw ParseError(Errc::SyntaxError, d.line, col, "procedure id too large");
  d.id = static_cast<unsigned>(std::stoul(digits));
  c.expect(":", "':'");
  c.expect("[", "'[' before a procedure label");
  d.label = c.label();
  c.expect("]", "']'");
  d.comment = c.trailer();
  return d;
}

ContextDecl parse_context(Cursor& c) {
  ContextDecl d;
  d.line = c.line();
  c.skip_ws();
  d.id = c.take_while([](char ch) { return ch >= 'a' && ch <= 'z'; });
  if (d.id.empty()) c.fail("expected a context letter id");
  c.expect(":", "':'");
  c.expect("(", "'(' before a context label");
  d.label = c.label();
  c.expect(")", "')'");
  d.comment = c.trailer();
  return d;
}

Endpoint parse_endpoint(Cursor& c) {
  c.skip_ws();
  Endpoint e;
  if (c.accept("[")) {
    e.kind = EndpointKind::Procedure;
    e.label = c.label();
    c.expect("]", "']'");
  } else if (c.accept("(")) {
    e.kind = EndpointKind::Context;
    e.label = c.label();
    c.expect(")", "')'");
  } else {
    c.fail("expected [procedure] or (context)");
  }
  return e;
}

Arrow parse_arrow(Cursor& c) {
  c.skip_ws();
  if (c.accept("<->") || c.accept("↔")) return Arrow::Both;
  if (c.accept("->") || c.accept("→")) return Arrow::Right;
  if (c.accept("<-") || c.accept("←")) return Arrow::Left;
  c.fail("expected an arrow (-> <- <-> or Unicode)");
}

ConnectionStmt parse_connection(Cursor& c) {
  ConnectionStmt s;
  s.line = c.line();
  c.skip_ws();
  if (c.starts_with("con")) {
    while (true) {
      c.expect("con", "'con'");
      c.expect("(", "'('");
      ConTerm t;
      t.from = c.label();
      c.expect(",", "','");
      t.to = c.label();
      c.expect(")", "')'");
      s.con_clause.push_back(std::move(t));
      c.skip_ws();
      if (c.accept("∧") || c.accept("/\\") || c.accept("&")) continue;
      break;
    }
    c.expect(":", "':' after the con-clause");
  }
  s.left = parse_endpoint(c);
  s.arrow = parse_arrow(c);
  s.right = parse_endpoint(c);
  s.comment = c.trailer();
  return s;
}

std::string normalize_paragraphs(const std::vector<std::string_view>& lines) {
  std::string out;
  std::string paragraph;
  auto flush = [&] {
    if (paragraph.empty()) return;
    if (!out.empty()) out += "\n\n";
    out += paragraph;
    paragraph.clear();
  };
  for (auto raw : lines) {
    const auto line = trim(raw);
    if (line.empty()) {
      flush();
      continue;
    }
    if (!paragraph.empty()) paragraph += ' ';
    paragraph += line;
  }
  flush();
  return out;
}

std::string normalize_block(const std::vector<std::string_view>& lines) {
  std::vector<std::string_view> kept;
  for (auto raw : lines) kept.push_back(trim(raw));
  while (!kept.empty() && kept.back().empty()) kept.pop_back();
  auto first = std::find_if(kept.begin(), kept.end(), [](auto l) { return !l.empty(); });
  std::string out;
  for (auto it = first; it != kept.end(); ++it) {
    if (it != first) out += '\n';
    out += *it;
  }
  return out;
}

void append_comment(std::string& target, std::string_view comment) {
  if (comment.empty()) return;
  if (!target.empty()) target += ' ';
  target += comment;
}

class Parser {
 public:
  SystemModel parse(std::string_view doc) {
    std::size_t line_no = 0;
    std::size_t fence_line = 0;
    bool in_fence = false;
    std::vector<std::string_view> fence;
    while (!doc.empty()) {
      const auto nl = doc.find('\n');
      std::string_view line = doc.substr(0, nl);
      doc = nl == std::string_view::npos ? std::string_view{} : doc.substr(nl + 1);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      ++line_no;

      if (in_fence) {
        if (trim(line).starts_with("```")) {
          std::string text;
          for (std::size_t i = 0; i < fence.size(); ++i) {
            if (i) text += '\n';
            text += fence[i];
          }
          model_.documentation.push_back({doc_section(section_), std::move(text)});
          fence.clear();
          in_fence = false;
        } else {
          fence.push_back(line);
        }
        continue;
      }

      if (auto h = match_header(line)) {
        if (auto s = section_named(h->name)) {
          enter(*s);
          if (*s == Section::Abstract || *s == Section::Graph) {
            text_.push_back(h->rest);
          } else if (!trim(h->rest).empty() && !trim(h->rest).starts_with("//")) {
            throw ParseError(Errc::SyntaxError, line_no, h->column + h->name.size() + 1,
                             "unexpected text after section header");
          }
          continue;
        }
        if (section_ != Section::Abstract && section_ != Section::Graph) {
          throw ParseError(Errc::UnknownSection, line_no, h->column, "unknown section '" + h->name + "'");
        }
      }

      if (section_ == Section::Abstract || section_ == Section::Graph) {
        text_.push_back(line);
        continue;
      }

      const auto body = trim(line);
      if (body.empty()) {
        last_comment_ = nullptr;
        continue;
      }
      if (body.starts_with("```")) {
        in_fence = true;
        fence_line = line_no;
        last_comment_ = nullptr;
        continue;
      }
      if (body.starts_with("//")) {
        const auto comment = trim(body.substr(2));
        if (last_comment_) append_comment(*last_comment_, comment);
        else model_.documentation.push_back({doc_section(section_), std::string(body)});
        continue;
      }

      Cursor c(line, line_no);
      switch (section_) {
        case Section::None:
          throw ParseError(Errc::SyntaxError, line_no, 1, "text before the first section header");
        case Section::Procedures: add(parse_procedure(c)); break;
        case Section::Context: add(parse_context(c)); break;
        case Section::Connections: {
          model_.connections.push_back(parse_connection(c));
          last_comment_ = &model_.connections.back().comment;
          break;
        }
        default: break;
      }
    }
    if (in_fence) throw ParseError(Errc::SyntaxError, fence_line, 1, "unterminated ``` block");
    enter(Section::None);
    return std::move(model_);
  }

 private:
  void enter(Section s) {
    if (section_ == Section::Abstract) {
      const auto text = normalize_paragraphs(text_);
      if (!text.empty()) {
        if (!model_.abstract_text.empty()) model_.abstract_text += "\n\n";
        model_.abstract_text += text;
      }
    } else if (section_ == Section::Graph) {
      model_.graphs.push_back(normalize_block(text_));
    }
    text_.clear();
    last_comment_ = nullptr;
    section_ = s;
  }

  void claim_label(const std::string& label, std::size_t line) {
    if (!labels_.insert(label).second) {
      throw ParseError(Errc::DuplicateLabel, line, 1, "label '" + label + "' declared twice");
    }
  }

  void add(ProcedureDecl d) {
    claim_label(d.label, d.line);
    if (!procedure_ids_.insert(d.id).second) {
      throw ParseError(Errc::DuplicateLabel, d.line, 1, "procedure id " + std::to_string(d.id) + " declared twice");
    }
    model_.procedures.push_back(std::move(d));
    last_comment_ = &model_.procedures.back().comment;
  }

  void add(ContextDecl d) {
    claim_label(d.label, d.line);
    if (!context_ids_.insert(d.id).second) {
      throw ParseError(Errc::DuplicateLabel, d.line, 1, "context id '" + d.id + "' declared twice");
    }
    model_.contexts.push_back(std::move(d));
    last_comment_ = &model_.contexts.back().comment;
  }

  SystemModel model_;
  Section section_ = Section::None;
  std::vector<std::string_view> text_;
  std::string* last_comment_ = nullptr;
  std::set<std::string> labels_;
  std::set<unsigned> procedure_ids_;
  std::set<std::string> context_ids_;
};

}  // namespace

SystemModel parse_model(std::string_view document) { return Parser{}.parse(document); }

}  // namespace ntm
