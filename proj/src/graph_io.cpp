#include "coverspec/graph_io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "coverspec/errors.hpp"

namespace coverspec {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::string body = line.substr(0, line.find('#'));
  std::istringstream ss(body);
  std::vector<std::string> out;
  for (std::string tok; ss >> tok;) out.push_back(tok);
  return out;
}

}  // namespace

Multigraph parse_graph(std::istream& in) {
  Multigraph g;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto tok = tokenize(line);
    if (tok.empty()) continue;
    try {
      if (tok[0] == "vertex") {
        if (tok.size() != 2 && !(tok.size() == 4 && tok[2] == "potential")) {
          throw ParseError(lineno, "expected 'vertex <name> [potential <p/q>]'");
        }
        if (g.find_vertex(tok[1])) throw ParseError(lineno, "duplicate vertex '" + tok[1] + "'");
        g.add_vertex(tok[1], tok.size() == 4 ? parse_rational(tok[3]) : Rational(0));
      } else if (tok[0] == "edge") {
        if (tok.size() != 5 || tok[3] != "weight") {
          throw ParseError(lineno, "expected 'edge <u> <v> weight <w>'");
        }
        auto u = g.find_vertex(tok[1]);
        auto v = g.find_vertex(tok[2]);
        if (!u) throw ParseError(lineno, "unknown vertex '" + tok[1] + "'");
        if (!v) throw ParseError(lineno, "unknown vertex '" + tok[2] + "'");
        g.add_edge(*u, *v, parse_gaussian(tok[4]));
      } else {
        throw ParseError(lineno, "unknown declaration '" + tok[0] + "'");
      }
    } catch (const ParseError& e) {
      if (e.line() != 0) throw;
      throw ParseError(lineno, e.what());
    }
  }
  return g;
}

Multigraph parse_graph_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_graph(in);
}

Multigraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return parse_graph(in);
}

std::string serialize_graph(const Multigraph& g) {
  std::ostringstream out;
  for (const Vertex& v : g.vertices()) {
    out << "vertex " << v.name;
    if (sgn(v.potential) != 0) out << " potential " << to_string(v.potential);
    out << '\n';
  }
  for (EdgeId e : g.pair_representatives()) {
    const Edge& ed = g.edge(e);
    out << "edge " << g.vertex(ed.source).name << ' ' << g.vertex(ed.target).name << " weight "
        << to_string(ed.weight) << '\n';
  }
  return out.str();
}

void write_graph_file(const Multigraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << serialize_graph(g);
}

}  // namespace coverspec
