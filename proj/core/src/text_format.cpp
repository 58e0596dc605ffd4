#include "relim/text_format.hpp"

#include <cctype>
#include <charconv>
#include <optional>
#include <vector>

#include "relim/errors.hpp"

namespace relim {
namespace {

class ConfigParser {
 public:
  ConfigParser(std::string_view text, std::size_t line, std::size_t column_offset)
      : text_(text), line_(line), offset_(column_offset) {}

  CondensedConfig parse() {
    std::vector<Item> items;
    skip_spaces();
    if (done()) fail("empty configuration");
    while (!done()) {
      items.push_back(item());
      if (!done() && text_[pos_] != ' ' && text_[pos_] != '\t') fail("expected space between items");
      skip_spaces();
    }
    return CondensedConfig(std::move(items));
  }

 private:
  bool done() const { return pos_ >= text_.size(); }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(line_, offset_ + pos_ + 1, message);
  }

  void skip_spaces() {
    while (!done() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  Label label() {
    if (done() || text_[pos_] < 'A' || text_[pos_] > 'Z') fail("expected a label [A-Z][A-Z0-9']*");
    std::size_t start = pos_++;
    while (!done()) {
      char c = text_[pos_];
      if ((c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '\'') {
        ++pos_;
      } else {
        break;
      }
    }
    return Label(text_.substr(start, pos_ - start));
  }

  Item item() {
    Group group;
    if (text_[pos_] == '[') {
      ++pos_;
      LabelSet members;
      skip_spaces();
      while (!done() && text_[pos_] != ']') {
        members.push_back(label());
        skip_spaces();
      }
      if (done()) fail("unterminated '['");
      if (members.empty()) fail("empty disjunction");
      ++pos_;
      group = Group(std::move(members));
    } else {
      group = Group(label());
    }
    int multiplicity = 1;
    if (!done() && text_[pos_] == '^') {
      ++pos_;
      std::size_t start = pos_;
      while (!done() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected an exponent after '^'");
      auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, multiplicity);
      if (ec != std::errc() || multiplicity <= 0) {
        pos_ = start;
        fail("exponent must be a positive integer");
      }
    }
    return {std::move(group), multiplicity};
  }

  std::string_view text_;
  std::size_t line_;
  std::size_t offset_;
  std::size_t pos_ = 0;
};

std::string_view trim(std::string_view s, std::size_t* leading = nullptr) {
  std::size_t b = 0;
  while (b < s.size() && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  std::size_t e = s.size();
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  if (leading != nullptr) *leading = b;
  return s.substr(b, e - b);
}

}  // namespace

CondensedConfig parse_config(std::string_view text, std::size_t line) {
  std::size_t lead = 0;
  auto body = trim(text, &lead);
  return ConfigParser(body, line, lead).parse();
}

Problem parse_problem(std::string_view text) {
  enum class Section { header, nodes, edges };
  Section section = Section::header;
  std::optional<int> delta;
  std::string note;
  bool seen_nodes = false;
  bool seen_edges = false;
  std::vector<std::pair<CondensedConfig, std::size_t>> nodes;
  std::vector<std::pair<CondensedConfig, std::size_t>> edges;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);

    std::size_t hash = raw.find('#');
    if (hash != std::string_view::npos) {
      if (!delta && trim(raw.substr(0, hash)).empty()) {
        auto comment = raw.substr(hash + 1);
        if (!comment.empty() && comment.front() == ' ') comment.remove_prefix(1);
        if (!note.empty()) note += '\n';
        note += std::string(comment);
        continue;
      }
      raw = raw.substr(0, hash);
    }
    std::size_t lead = 0;
    auto line = trim(raw, &lead);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }

    if (!delta) {
      constexpr std::string_view kDelta = "delta:";
      if (line.substr(0, kDelta.size()) != kDelta) {
        throw ParseError(line_no, lead + 1, "expected 'delta: <int>' on the first line");
      }
      auto value = trim(line.substr(kDelta.size()));
      int d = 0;
      auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), d);
      if (ec != std::errc() || ptr != value.data() + value.size()) {
        throw ParseError(line_no, lead + kDelta.size() + 1, "delta must be an integer");
      }
      if (d < 2) throw ParseError(line_no, lead + 1, "delta must be at least 2");
      delta = d;
      continue;
    }
    if (line == "nodes:") {
      if (seen_nodes || seen_edges) throw ParseError(line_no, lead + 1, "unexpected 'nodes:' section");
      seen_nodes = true;
      section = Section::nodes;
      continue;
    }
    if (line == "edges:") {
      if (seen_edges) throw ParseError(line_no, lead + 1, "duplicate 'edges:' section");
      seen_edges = true;
      section = Section::edges;
      continue;
    }
    if (section == Section::header) {
      throw ParseError(line_no, lead + 1, "configuration outside a 'nodes:' or 'edges:' section");
    }
    auto config = ConfigParser(line, line_no, lead).parse();
    (section == Section::nodes ? nodes : edges).emplace_back(std::move(config), line_no);
    if (end == text.size()) break;
  }

  if (!delta) throw ParseError(line_no, 1, "missing 'delta:' line");
  if (!seen_nodes) throw ParseError(line_no, 1, "missing 'nodes:' section");
  if (!seen_edges) throw ParseError(line_no, 1, "missing 'edges:' section");

  auto collect = [](const std::vector<std::pair<CondensedConfig, std::size_t>>& in, int arity) {
    std::vector<CondensedConfig> out;
    for (const auto& [config, line] : in) {
      if (config.arity() != arity) {
        throw ParseError(line, 1, "configuration '" + config.to_string() + "' has length " +
                                      std::to_string(config.arity()) + ", expected " +
                                      std::to_string(arity));
      }
      out.push_back(config);
    }
    return Constraint(arity, std::move(out));
  };
  return Problem(*delta, collect(nodes, *delta), collect(edges, 2), std::move(note));
}

std::string serialize_problem(const Problem& problem) {
  std::string out;
  if (!problem.note().empty()) {
    std::size_t start = 0;
    const auto& note = problem.note();
    while (start <= note.size()) {
      std::size_t end = note.find('\n', start);
      if (end == std::string::npos) end = note.size();
      out += "# " + note.substr(start, end - start) + '\n';
      start = end + 1;
    }
  }
  out += "delta: " + std::to_string(problem.delta()) + "\nnodes:\n";
  for (const auto& c : problem.nodes().configs()) out += c.to_string() + '\n';
  out += "edges:\n";
  for (const auto& c : problem.edges().configs()) out += c.to_string() + '\n';
  return out;
}

}  // namespace relim
