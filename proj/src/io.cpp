#include "shadowlab/io.hpp"

#include <openssl/evp.h>

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "shadowlab/errors.hpp"

namespace shadowlab {

namespace {

struct Token {
  std::string_view text;
  std::size_t column;
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' && line[i] != '#') ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

long long to_int(const Token& t, std::size_t line) {
  long long v = 0;
  const auto* end = t.text.data() + t.text.size();
  const auto [p, ec] = std::from_chars(t.text.data(), end, v);
  if (ec != std::errc() || p != end)
    throw ParseError(line, t.column, "expected an integer, got '" + std::string(t.text) + "'");
  return v;
}

}  // namespace

Hypergraph parse_edge_list(std::string_view text) {
  int r = 0;
  int n = 0;
  bool have_header = false;
  std::vector<Edge> edges;
  std::map<Edge, std::size_t> seen;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    const auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    if (!have_header) {
      if (tokens.size() != 2) throw ParseError(lineno, tokens[0].column, "header must be 'r n'");
      const auto rr = to_int(tokens[0], lineno);
      const auto nn = to_int(tokens[1], lineno);
      if (rr < 1 || rr > 64) throw ParseError(lineno, tokens[0].column, "uniformity r must lie in [1, 64]");
      if (nn < 0 || nn > 1 << 20) throw ParseError(lineno, tokens[1].column, "vertex count n out of range");
      r = static_cast<int>(rr);
      n = static_cast<int>(nn);
      have_header = true;
      continue;
    }
    if (tokens.size() != static_cast<std::size_t>(r)) {
      const auto col = tokens.size() > static_cast<std::size_t>(r) ? tokens[static_cast<std::size_t>(r)].column
                                                                  : tokens[0].column;
      throw ParseError(lineno, col,
                       "edge has " + std::to_string(tokens.size()) + " vertices, expected " + std::to_string(r));
    }
    Edge e(n);
    for (const auto& t : tokens) {
      const auto v = to_int(t, lineno);
      if (v < 0 || v >= n)
        throw ParseError(lineno, t.column, "vertex " + std::to_string(v) + " outside 0.." + std::to_string(n - 1));
      if (e.contains(static_cast<Vertex>(v)))
        throw ParseError(lineno, t.column, "repeated vertex " + std::to_string(v) + " in edge");
      e.insert(static_cast<Vertex>(v));
    }
    const auto [it, fresh] = seen.emplace(e, lineno);
    if (!fresh)
      throw ParseError(lineno, tokens[0].column,
                       "duplicate edge " + e.to_string() + " (first on line " + std::to_string(it->second) + ")");
    edges.push_back(std::move(e));
  }
  if (!have_header) throw ParseError(lineno == 0 ? 1 : lineno, 1, "missing 'r n' header");
  return Hypergraph(r, n, std::move(edges));
}

std::string serialize_edge_list(const Hypergraph& h) {
  std::ostringstream os;
  os << h.r() << ' ' << h.n() << '\n';
  for (const auto& e : h.edges()) {
    bool first = true;
    e.for_each([&](Vertex v) {
      if (!first) os << ' ';
      os << v;
      first = false;
    });
    os << '\n';
  }
  return os.str();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParameterError("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Hypergraph read_edge_list(const std::filesystem::path& path) { return parse_edge_list(read_file(path)); }

void write_edge_list(const std::filesystem::path& path, const Hypergraph& h) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParameterError("cannot write " + path.string());
  out << serialize_edge_list(h);
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 computation failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 15]);
  }
  return out;
}

}  // namespace shadowlab
