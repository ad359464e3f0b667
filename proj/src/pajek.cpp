#include "oa2net/pajek.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

#include "oa2net/error.hpp"

namespace oa2net::pajek {

namespace {

std::string quote(std::string_view label) {
  std::string out = "\"";
  for (char c : label) {
    if (c == '\n' || c == '\r') {
      fail(ErrorKind::InvalidArgument, "vertex label contains a line break: \"" + std::string(label) + "\"");
    }
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void append_vertices(std::string& out, const std::vector<std::string>& labels, std::size_t offset = 0) {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out += std::to_string(offset + i + 1);
    out += ' ';
    out += quote(labels[i]);
    out += '\n';
  }
}

void append_link(std::string& out, std::size_t s, std::size_t t, double w) {
  out += std::to_string(s);
  out += ' ';
  out += std::to_string(t);
  out += ' ';
  out += format_number(w);
  out += '\n';
}

std::vector<Link> sorted(std::span<const Link> links) {
  std::vector<Link> out(links.begin(), links.end());
  std::sort(out.begin(), out.end(), [](const Link& a, const Link& b) {
    return std::tie(a.source, a.target) < std::tie(b.source, b.target);
  });
  return out;
}

// Line-oriented reader that skips blank and `%` comment lines.
class LineReader {
 public:
  LineReader(std::string_view text, std::string_view origin) : text_(text), origin_(origin) {}

  // Next significant line, trimmed, or nullopt at end of input.
  std::optional<std::string_view> next() {
    while (pos_ < text_.size()) {
      auto end = text_.find('\n', pos_);
      if (end == std::string_view::npos) end = text_.size();
      std::string_view line = text_.substr(pos_, end - pos_);
      pos_ = end + 1;
      ++lineno_;
      line = trim(line);
      if (line.empty() || line.front() == '%') continue;
      return line;
    }
    return std::nullopt;
  }

  std::size_t lineno() const { return lineno_; }

  [[noreturn]] void error(const std::string& message) const {
    fail(ErrorKind::Parse, std::string(origin_) + ":" + std::to_string(lineno_) + ": " + message);
  }

  static std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\xEF' ||
                          s.front() == '\xBB' || s.front() == '\xBF')) {
      s.remove_prefix(1);
    }
    return s;
  }

 private:
  std::string_view text_;
  std::string_view origin_;
  std::size_t pos_ = 0;
  std::size_t lineno_ = 0;
};

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    auto start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

bool keyword_is(std::string_view line, std::string_view keyword) {
  if (line.size() < keyword.size()) return false;
  for (std::size_t i = 0; i < keyword.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(line[i])) != keyword[i]) return false;
  }
  return line.size() == keyword.size() || line[keyword.size()] == ' ' || line[keyword.size()] == '\t';
}

template <typename T>
std::optional<T> parse_num(std::string_view token) {
  T value{};
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) return std::nullopt;
  return value;
}

std::pair<std::size_t, std::string> parse_vertex_line(std::string_view line, LineReader& reader) {
  auto sp = line.find_first_of(" \t");
  auto index = parse_num<std::size_t>(line.substr(0, sp));
  if (!index) reader.error("expected a vertex line, got \"" + std::string(line) + "\"");
  std::string_view rest = sp == std::string_view::npos ? std::string_view{} : LineReader::trim(line.substr(sp));
  while (!rest.empty() && (rest.front() == ' ' || rest.front() == '\t')) rest.remove_prefix(1);
  std::string label;
  if (!rest.empty() && rest.front() == '"') {
    std::size_t i = 1;
    bool closed = false;
    while (i < rest.size()) {
      if (rest[i] == '"') {
        if (i + 1 < rest.size() && rest[i + 1] == '"') {
          label += '"';
          i += 2;
          continue;
        }
        closed = true;
        break;
      }
      label += rest[i++];
    }
    if (!closed) reader.error("unterminated vertex label");
  } else {
    auto tokens = split_ws(rest);
    label = tokens.empty() ? std::to_string(*index) : std::string(tokens.front());
  }
  return {*index, std::move(label)};
}

struct Header {
  std::size_t line = 0;
  std::size_t n = 0;
  std::optional<std::size_t> n1;
};

Header parse_vertices_header(std::string_view line, LineReader& reader) {
  if (!keyword_is(line, "*vertices")) reader.error("expected *Vertices header");
  auto tokens = split_ws(line);
  if (tokens.size() < 2 || tokens.size() > 3) reader.error("malformed *Vertices header");
  Header h;
  h.line = reader.lineno();
  auto n = parse_num<std::size_t>(tokens[1]);
  if (!n) reader.error("malformed vertex count");
  h.n = *n;
  if (tokens.size() == 3) {
    auto n1 = parse_num<std::size_t>(tokens[2]);
    if (!n1 || *n1 > h.n) reader.error("malformed two-mode vertex count");
    h.n1 = *n1;
  }
  return h;
}

std::vector<std::string> parse_vertex_block(const Header& h, LineReader& reader) {
  std::vector<std::optional<std::string>> labels(h.n);
  std::size_t seen = 0;
  while (seen < h.n) {
    auto line = reader.next();
    if (!line || line->front() == '*') {
      reader.error("*Vertices header on line " + std::to_string(h.line) + " declares " +
                   std::to_string(h.n) + " vertices but lists " + std::to_string(seen));
    }
    auto [index, label] = parse_vertex_line(*line, reader);
    if (index == 0 || index > h.n) reader.error("vertex number " + std::to_string(index) + " out of range");
    if (labels[index - 1]) reader.error("vertex " + std::to_string(index) + " listed twice");
    labels[index - 1] = std::move(label);
    ++seen;
  }
  std::vector<std::string> out;
  out.reserve(h.n);
  for (auto& l : labels) out.push_back(std::move(*l));
  return out;
}

struct RawLink {
  std::size_t source;
  std::size_t target;
  double weight;
  bool arc;
  std::size_t line;
};

}  // namespace

std::string format_number(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) fail(ErrorKind::InvalidArgument, "cannot format number");
  return std::string(buf, ptr);
}

std::string format_network(const WeightedNetwork& net) {
  std::string out = "*Vertices " + std::to_string(net.vertex_count()) + "\n";
  if (net.vertex_count() == 0) return out;
  append_vertices(out, net.labels());
  out += net.directed() ? "*Arcs\n" : "*Edges\n";
  for (const Link& l : sorted(net.links())) append_link(out, l.source.value(), l.target.value(), l.weight);
  return out;
}

std::string format_network(const TwoModeNetwork& net) {
  auto n1 = net.mode1_labels().size();
  auto n = n1 + net.mode2_labels().size();
  std::string out = "*Vertices " + std::to_string(n) + " " + std::to_string(n1) + "\n";
  append_vertices(out, net.mode1_labels());
  append_vertices(out, net.mode2_labels(), n1);
  out += "*Edges\n";
  for (const Link& l : sorted(net.links())) append_link(out, l.source.value(), n1 + l.target.value(), l.weight);
  return out;
}

std::string format_skeleton(const WeightedNetwork& skeleton, bool merge_mutual) {
  if (!merge_mutual || !skeleton.directed()) return format_network(skeleton);
  std::string out = "*Vertices " + std::to_string(skeleton.vertex_count()) + "\n";
  if (skeleton.vertex_count() == 0) return out;
  append_vertices(out, skeleton.labels());
  std::string arcs = "*Arcs\n";
  std::string edges = "*Edges\n";
  for (const Link& l : sorted(skeleton.links())) {
    auto back = l.source == l.target ? std::nullopt : skeleton.weight(l.target, l.source);
    if (!back) {
      append_link(arcs, l.source.value(), l.target.value(), l.weight);
    } else if (l.source < l.target) {
      append_link(edges, l.source.value(), l.target.value(), std::max(l.weight, *back));
    }
  }
  return out + arcs + edges;
}

AnyNetwork parse_network(std::string_view text, std::string_view origin) {
  LineReader reader(text, origin);
  auto first = reader.next();
  if (!first) reader.error("empty file, expected *Vertices header");
  Header h = parse_vertices_header(*first, reader);
  auto labels = parse_vertex_block(h, reader);

  std::vector<RawLink> links;
  bool has_arcs = false;
  std::optional<bool> section_is_arc;
  while (auto line = reader.next()) {
    if (line->front() == '*') {
      if (keyword_is(*line, "*arcs")) {
        section_is_arc = true;
        has_arcs = true;
      } else if (keyword_is(*line, "*edges")) {
        section_is_arc = false;
      } else {
        reader.error("unsupported section " + std::string(*line));
      }
      continue;
    }
    if (!section_is_arc) reader.error("unexpected line outside a link section");
    auto tokens = split_ws(*line);
    if (tokens.size() < 2) reader.error("link line needs two vertex numbers");
    auto s = parse_num<std::size_t>(tokens[0]);
    auto t = parse_num<std::size_t>(tokens[1]);
    if (!s || !t) reader.error("malformed vertex number in link line");
    double w = 1.0;
    if (tokens.size() >= 3) {
      auto parsed = parse_num<double>(tokens[2]);
      if (!parsed) reader.error("malformed weight \"" + std::string(tokens[2]) + "\"");
      w = *parsed;
    }
    if (*s == 0 || *s > h.n || *t == 0 || *t > h.n) {
      reader.error("link " + std::to_string(*s) + " " + std::to_string(*t) + " refers to a missing vertex");
    }
    if (!(w > 0) || !std::isfinite(w)) reader.error("link weights must be positive");
    if (h.n1) {
      bool s_first = *s <= *h.n1;
      bool t_first = *t <= *h.n1;
      if (s_first == t_first) reader.error("two-mode link must join mode 1 to mode 2");
    }
    links.push_back({*s, *t, w, *section_is_arc, reader.lineno()});
  }

  // Model-level violations (duplicate links, duplicate labels) become parse
  // errors; `line` is the offending link line or 0 for vertex problems.
  std::size_t line = 0;
  auto add_checked = [&](auto& net, auto&& add) {
    try {
      add(net);
    } catch (const Error& e) {
      fail(ErrorKind::Parse, std::string(origin) + ":" + std::to_string(line) + ": " + e.what());
    }
  };

  if (h.n1) {
    std::vector<std::string> mode1(labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>(*h.n1));
    std::vector<std::string> mode2(labels.begin() + static_cast<std::ptrdiff_t>(*h.n1), labels.end());
    TwoModeNetwork net;
    add_checked(net, [&](TwoModeNetwork& n) {
      n = TwoModeNetwork(std::move(mode1), std::move(mode2));
      for (const auto& l : links) {
        line = l.line;
        auto a = std::min(l.source, l.target);
        auto b = std::max(l.source, l.target);
        n.add_link(NodeId(a), NodeId(b - *h.n1), l.weight);
      }
    });
    return net;
  }

  bool directed = has_arcs;
  WeightedNetwork net;
  add_checked(net, [&](WeightedNetwork& n) {
    n = WeightedNetwork(std::move(labels), directed ? Directedness::Directed : Directedness::Undirected);
    for (const auto& l : links) {
      line = l.line;
      n.add_link(NodeId(l.source), NodeId(l.target), l.weight);
      if (directed && !l.arc && l.source != l.target) n.add_link(NodeId(l.target), NodeId(l.source), l.weight);
    }
  });
  return net;
}

AnyNetwork read_network(const std::filesystem::path& path) {
  return parse_network(read_text_file(path), path.string());
}

WeightedNetwork read_one_mode(const std::filesystem::path& path) {
  auto any = read_network(path);
  if (auto* net = std::get_if<WeightedNetwork>(&any)) return std::move(*net);
  fail(ErrorKind::Parse, path.string() + ": expected a one-mode network, found a two-mode one");
}

void write_network(const WeightedNetwork& net, const std::filesystem::path& path) {
  write_text_file(path, format_network(net));
}

void write_network(const TwoModeNetwork& net, const std::filesystem::path& path) {
  write_text_file(path, format_network(net));
}

std::string format_partition(const NodePartition& partition) {
  std::string out = "*Partition\n*Vertices " + std::to_string(partition.classes.size()) + "\n";
  for (auto c : partition.classes) {
    out += std::to_string(c);
    out += '\n';
  }
  return out;
}

std::string format_vector(const NodeVector& vector) {
  std::string out = "*Vector\n*Vertices " + std::to_string(vector.values.size()) + "\n";
  for (double v : vector.values) {
    out += format_number(v);
    out += '\n';
  }
  return out;
}

std::string format_project(const Named<WeightedNetwork>& network,
                           const std::vector<Named<NodePartition>>& partitions,
                           const std::vector<Named<NodeVector>>& vectors) {
  const std::size_t n = network.value.vertex_count();
  std::string out = "*Network " + network.name + "\n" + format_network(network.value);
  auto section = [&](std::string_view keyword, const std::string& name, std::size_t size, std::string body) {
    if (size != n) {
      fail(ErrorKind::InvalidArgument, std::string(keyword) + " " + name + " has " + std::to_string(size) +
                                           " values for " + std::to_string(n) + " vertices");
    }
    // Replace the bare keyword line with a named one.
    out += "\n";
    out += keyword;
    out += " " + name + body.substr(body.find('\n'));
  };
  for (const auto& p : partitions) section("*Partition", p.name, p.value.classes.size(), format_partition(p.value));
  for (const auto& v : vectors) section("*Vector", v.name, v.value.values.size(), format_vector(v.value));
  return out;
}

namespace {

template <typename T>
std::vector<T> parse_value_file(std::string_view text, std::string_view origin, std::string_view kind) {
  LineReader reader(text, origin);
  auto line = reader.next();
  if (line && keyword_is(*line, kind)) line = reader.next();
  if (!line) reader.error("missing *Vertices header");
  auto tokens = split_ws(*line);
  if (tokens.size() != 2 || !keyword_is(*line, "*vertices")) reader.error("expected *Vertices n");
  auto n = parse_num<std::size_t>(tokens[1]);
  if (!n) reader.error("malformed vertex count");
  std::vector<T> values;
  values.reserve(*n);
  while (values.size() < *n) {
    auto value_line = reader.next();
    if (!value_line) reader.error("header declares " + std::to_string(*n) + " values but lists " + std::to_string(values.size()));
    auto value = parse_num<T>(split_ws(*value_line).front());
    if (!value) reader.error("malformed value \"" + std::string(*value_line) + "\"");
    values.push_back(*value);
  }
  if (reader.next()) reader.error("more values than declared");
  return values;
}

}  // namespace

NodePartition parse_partition(std::string_view text, std::string_view origin) {
  return NodePartition{parse_value_file<std::int64_t>(text, origin, "*partition"), {}};
}

NodeVector parse_vector(std::string_view text, std::string_view origin) {
  return NodeVector{parse_value_file<double>(text, origin, "*vector")};
}

void write_partition(const NodePartition& partition, const std::filesystem::path& path) {
  write_text_file(path, format_partition(partition));
}

void write_vector(const NodeVector& vector, const std::filesystem::path& path) {
  write_text_file(path, format_vector(vector));
}

NodePartition read_partition(const std::filesystem::path& path) {
  return parse_partition(read_text_file(path), path.string());
}

NodeVector read_vector(const std::filesystem::path& path) {
  return parse_vector(read_text_file(path), path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::Io, "cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) fail(ErrorKind::Io, "short write to " + path.string());
}

}  // namespace oa2net::pajek
