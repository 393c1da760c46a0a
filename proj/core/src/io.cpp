#include "lrmr/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "lrmr/errors.hpp"

namespace lrmr {

namespace {

// Whitespace tokenizer that drops '#' comments and remembers line numbers.
class Tokens {
 public:
  explicit Tokens(std::string_view text) : text_(text) {}

  bool next(std::string_view& out) {
    while (pos_ < text_.size()) {
      const char ch = text_[pos_];
      if (ch == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (ch == '\n') {
        ++line_;
        ++pos_;
      } else if (ch == ' ' || ch == '\t' || ch == '\r') {
        ++pos_;
      } else {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && !is_break(text_[pos_])) ++pos_;
        out = text_.substr(start, pos_ - start);
        return true;
      }
    }
    return false;
  }

  std::string_view need(const char* what) {
    std::string_view tok;
    if (!next(tok)) fail(std::string("unexpected end of input, expected ") + what);
    return tok;
  }

  std::uint64_t need_count(const char* what) {
    const std::string_view tok = need(what);
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
      fail(std::string("expected ") + what + ", got '" + std::string(tok) + "'");
    }
    return value;
  }

  Rational need_weight() {
    const std::string_view tok = need("weight");
    try {
      return Rational::parse(tok);
    } catch (const InvalidInput& e) {
      fail(e.what());
    }
  }

  void expect_end() {
    std::string_view tok;
    if (next(tok)) fail("trailing data '" + std::string(tok) + "'");
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw InvalidInput("line " + std::to_string(line_) + ": " + msg);
  }

 private:
  static bool is_break(char ch) { return ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n' || ch == '#'; }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::string to_text(const Graph& g) {
  std::string out = std::to_string(g.n()) + " " + std::to_string(g.m()) + "\n";
  for (const Edge& e : g.edges()) {
    out += std::to_string(e.u);
    out += ' ';
    out += std::to_string(e.v);
    out += ' ';
    out += e.w.str();
    out += '\n';
  }
  return out;
}

std::string to_text(const SetCoverInstance& inst) {
  std::string out = std::to_string(inst.n()) + " " + std::to_string(inst.m()) + "\n";
  for (std::size_t i = 0; i < inst.n(); ++i) {
    out += inst.weight(static_cast<SetId>(i)).str();
    out += ' ';
    out += std::to_string(inst.set(static_cast<SetId>(i)).size());
    for (ElementId j : inst.set(static_cast<SetId>(i))) {
      out += ' ';
      out += std::to_string(j);
    }
    out += '\n';
  }
  return out;
}

Graph parse_graph(std::string_view text) {
  Tokens tk(text);
  const std::uint64_t n = tk.need_count("vertex count");
  const std::uint64_t m = tk.need_count("edge count");
  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::uint64_t k = 0; k < m; ++k) {
    Edge e;
    const std::uint64_t u = tk.need_count("vertex id");
    const std::uint64_t v = tk.need_count("vertex id");
    if (u >= n || v >= n) tk.fail("vertex id out of range");
    e.u = static_cast<VertexId>(u);
    e.v = static_cast<VertexId>(v);
    e.w = tk.need_weight();
    edges.push_back(std::move(e));
  }
  tk.expect_end();
  return Graph(n, std::move(edges));
}

SetCoverInstance parse_set_cover(std::string_view text) {
  Tokens tk(text);
  const std::uint64_t n = tk.need_count("set count");
  const std::uint64_t m = tk.need_count("element count");
  std::vector<std::vector<ElementId>> sets(n);
  std::vector<Rational> weights;
  weights.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    weights.push_back(tk.need_weight());
    const std::uint64_t k = tk.need_count("set size");
    if (k > m) tk.fail("set larger than the ground set");
    sets[i].reserve(k);
    for (std::uint64_t t = 0; t < k; ++t) {
      const std::uint64_t j = tk.need_count("element id");
      if (j >= m) tk.fail("element id out of range");
      sets[i].push_back(static_cast<ElementId>(j));
    }
  }
  tk.expect_end();
  return SetCoverInstance(m, std::move(sets), std::move(weights));
}

Graph load_graph(const std::filesystem::path& path) { return parse_graph(read_file(path)); }

SetCoverInstance load_set_cover(const std::filesystem::path& path) { return parse_set_cover(read_file(path)); }

void save(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path.string());
  out << text;
  if (!out) throw InvalidInput("write failed for " + path.string());
}

std::string digest(std::string_view canonical_text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical_text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = hex[h & 0xf];
    h >>= 4;
  }
  return out;
}

}  // namespace lrmr
