#include "hopcut/instance_io.hpp"

#include <fstream>
#include <sstream>

namespace hopcut {

namespace {

std::string format_message(const std::string& source, int line,
                           const std::string& what) {
  std::ostringstream os;
  os << source << ":" << line << ": " << what;
  return os.str();
}

bool is_blank(const std::string& s) {
  return s.find_first_not_of(" \t\r") == std::string::npos;
}

}  // namespace

ParseError::ParseError(const std::string& source, int line,
                       const std::string& what)
    : std::runtime_error(format_message(source, line, what)), line(line) {}

Graph read_instance(std::istream& in, const std::string& source) {
  std::string raw;
  int line_no = 0;
  int n = -1;
  long long m = -1;
  long long edges_seen = 0;
  std::vector<Edge> edges;
  std::optional<OptimumInfo> optimum;

  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (is_blank(raw)) continue;
    if (raw[0] == '#') {
      std::istringstream cs(raw.substr(1));
      std::string key;
      if (cs >> key && key == "optimum") {
        long long value;
        std::string kind;
        if (!(cs >> value >> kind))
          throw ParseError(source, line_no, "malformed optimum comment");
        try {
          optimum = OptimumInfo{value, optimum_kind_from_string(kind)};
        } catch (const std::invalid_argument& e) {
          throw ParseError(source, line_no, e.what());
        }
      }
      continue;
    }
    std::istringstream ls(raw);
    if (n < 0) {
      std::string trailing;
      if (!(ls >> n >> m) || (ls >> trailing))
        throw ParseError(source, line_no, "expected header line 'n m'");
      if (n < 1) throw ParseError(source, line_no, "node count must be positive");
      if (m < 0) throw ParseError(source, line_no, "edge count must be non-negative");
      edges.reserve(static_cast<std::size_t>(m));
      continue;
    }
    if (edges_seen == m)
      throw ParseError(source, line_no, "unexpected line after last edge");
    long long i, j, w;
    std::string trailing;
    if (!(ls >> i >> j >> w) || (ls >> trailing))
      throw ParseError(source, line_no, "expected edge line 'i j w'");
    if (i < 1 || i > n || j < 1 || j > n)
      throw ParseError(source, line_no, "node index out of range");
    if (i == j) throw ParseError(source, line_no, "self-loop not allowed");
    edges.push_back({static_cast<int>(i - 1), static_cast<int>(j - 1), w});
    ++edges_seen;
  }
  if (n < 0) throw ParseError(source, line_no, "missing header line 'n m'");
  if (edges_seen != m)
    throw ParseError(source, line_no, "edge count does not match header");
  try {
    return Graph(n, std::move(edges), optimum);
  } catch (const std::invalid_argument& e) {
    // duplicate edges surface here after canonicalization
    throw ParseError(source, line_no, e.what());
  }
}

Graph read_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file: " + path.string());
  return read_instance(in, path.string());
}

void write_instance(const Graph& g, std::ostream& out) {
  if (g.optimum()) {
    out << "# optimum " << g.optimum()->value << " "
        << to_string(g.optimum()->kind) << "\n";
  }
  out << g.n() << " " << g.edges().size() << "\n";
  for (const auto& e : g.edges()) {
    out << (e.i + 1) << " " << (e.j + 1) << " " << e.w << "\n";
  }
}

void write_instance(const Graph& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write instance file: " + path.string());
  write_instance(g, out);
}

}  // namespace hopcut
