#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cfp/errors.hpp"
#include "cfp/graph.hpp"
#include "cfp/structure.hpp"

namespace cfp::io {

struct ParseError : InputError {
  ParseError(int line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line(line) {}
  int line;
};

struct Instance {
  Graph g;
  std::optional<ListAssignment> lists;

  bool operator==(const Instance&) const = default;
};

// Everything a generator or recognizer can say about how an instance is built.
struct Certificate {
  std::optional<ElementaryStructure> structure;
  std::optional<PeculiarPartition> peculiar;
  std::vector<VertexSet> glue_parts;

  bool operator==(const Certificate&) const = default;
};

namespace detail {

struct Tokens {
  std::vector<std::string> t;
  int line = 0;

  std::size_t size() const { return t.size(); }
  const std::string& operator[](std::size_t i) const { return t[i]; }

  long long integer(std::size_t i) const {
    if (i >= t.size()) throw ParseError(line, "missing field " + std::to_string(i));
    const std::string& s = t[i];
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw ParseError(line, "expected an integer, got '" + s + "'");
    return v;
  }

  int vertex(std::size_t i, int n) const {
    long long v = integer(i);
    if (v < 0 || v >= n) throw ParseError(line, "vertex id " + t[i] + " out of range [0, " + std::to_string(n) + ")");
    return static_cast<int>(v);
  }
};

// Splits the stream into non-empty, non-comment lines of whitespace-separated tokens.
inline std::vector<Tokens> tokenize(std::istream& in) {
  std::vector<Tokens> out;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::istringstream ls(raw);
    Tokens tk;
    tk.line = line;
    for (std::string w; ls >> w;) tk.t.push_back(w);
    if (tk.t.empty() || tk.t[0] == "c") continue;
    out.push_back(std::move(tk));
  }
  return out;
}

inline int header(const Tokens& tk, std::string_view kind) {
  if (tk.size() != 3 || tk[0] != "p" || tk[1] != kind)
    throw ParseError(tk.line, "expected 'p " + std::string(kind) + " <n>'");
  long long n = tk.integer(2);
  if (n < 0 || n > 1'000'000) throw ParseError(tk.line, "vertex count out of range");
  return static_cast<int>(n);
}

inline ColorSet list_of(const Tokens& tk, std::size_t from) {
  ColorSet s;
  for (std::size_t i = from; i < tk.size(); ++i) {
    long long c = tk.integer(i);
    if (c < 0 || c > 1'000'000'000) throw ParseError(tk.line, "color out of range");
    s.push_back(static_cast<Color>(c));
  }
  ColorSet norm = colors::normalized(s);
  if (norm.size() != s.size()) throw ParseError(tk.line, "repeated color in list");
  return norm;
}

inline void read_list_line(const Tokens& tk, int n, std::vector<std::optional<ColorSet>>& lists) {
  int v = tk.vertex(1, n);
  if (lists[v]) throw ParseError(tk.line, "second list for vertex " + std::to_string(v));
  lists[v] = list_of(tk, 2);
}

inline ListAssignment finish_lists(std::vector<std::optional<ColorSet>>& lists, int last_line) {
  ListAssignment l(static_cast<int>(lists.size()));
  for (std::size_t v = 0; v < lists.size(); ++v) {
    if (!lists[v]) throw ParseError(last_line, "no list for vertex " + std::to_string(v));
    l.set(static_cast<int>(v), *lists[v]);
  }
  return l;
}

inline void write_ids(std::ostream& os, const VertexSet& s) {
  for (int v : s) os << ' ' << v;
}

inline VertexSet read_ids(const Tokens& tk, std::size_t& i, std::string_view stop) {
  VertexSet s;
  while (i < tk.size() && tk[i] != stop) s.push_back(static_cast<int>(tk.integer(i++)));
  return s;
}

}  // namespace detail

// ---------------------------------------------------------------- instances

inline Instance parse_instance(std::istream& in) {
  auto lines = detail::tokenize(in);
  if (lines.empty()) throw ParseError(0, "empty instance");
  int n = detail::header(lines[0], "graph");
  Instance inst{Graph(n), std::nullopt};
  std::vector<std::optional<ColorSet>> lists(static_cast<std::size_t>(n));
  bool any_list = false;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& tk = lines[i];
    if (tk[0] == "e") {
      if (tk.size() != 3) throw ParseError(tk.line, "expected 'e <u> <v>'");
      int u = tk.vertex(1, n), v = tk.vertex(2, n);
      if (u == v) throw ParseError(tk.line, "self-loop on vertex " + std::to_string(u));
      inst.g.add_edge(u, v);
    } else if (tk[0] == "l") {
      detail::read_list_line(tk, n, lists);
      any_list = true;
    } else {
      throw ParseError(tk.line, "unknown record '" + tk[0] + "'");
    }
  }
  if (any_list) inst.lists = detail::finish_lists(lists, lines.back().line);
  return inst;
}

// A lists file holds `l` records for every vertex of an n-vertex graph; a `p lists <n>` header is optional.
inline ListAssignment parse_lists(std::istream& in, int n) {
  auto lines = detail::tokenize(in);
  std::vector<std::optional<ColorSet>> lists(static_cast<std::size_t>(n));
  std::size_t i = 0;
  if (!lines.empty() && lines[0][0] == "p") {
    int m = detail::header(lines[0], "lists");
    if (m != n) throw ParseError(lines[0].line, "lists file is for " + std::to_string(m) + " vertices, graph has " + std::to_string(n));
    i = 1;
  }
  for (; i < lines.size(); ++i) {
    const auto& tk = lines[i];
    if (tk[0] != "l") throw ParseError(tk.line, "unknown record '" + tk[0] + "'");
    detail::read_list_line(tk, n, lists);
  }
  return detail::finish_lists(lists, lines.empty() ? 0 : lines.back().line);
}

inline void write_lists(std::ostream& os, const ListAssignment& l) {
  for (int v = 0; v < l.size(); ++v) {
    os << "l " << v;
    for (Color c : l[v]) os << ' ' << c;
    os << '\n';
  }
}

inline void write_instance(std::ostream& os, const Graph& g, const ListAssignment* l = nullptr) {
  os << "p graph " << g.n() << '\n';
  for (auto [u, v] : g.edges()) os << "e " << u << ' ' << v << '\n';
  if (l) write_lists(os, *l);
}

inline void write_instance(std::ostream& os, const Instance& inst) {
  write_instance(os, inst.g, inst.lists ? &*inst.lists : nullptr);
}

// ---------------------------------------------------------------- colorings

inline void write_coloring(std::ostream& os, const Coloring& f) {
  os << "p coloring " << f.size() << '\n';
  for (int v = 0; v < f.size(); ++v) os << "f " << v << ' ' << f[v] << '\n';
}

inline Coloring parse_coloring(std::istream& in) {
  auto lines = detail::tokenize(in);
  if (lines.empty()) throw ParseError(0, "empty coloring");
  int n = detail::header(lines[0], "coloring");
  Coloring f(n);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& tk = lines[i];
    if (tk[0] != "f" || tk.size() != 3) throw ParseError(tk.line, "expected 'f <v> <color>'");
    int v = tk.vertex(1, n);
    if (f.has(v)) throw ParseError(tk.line, "second color for vertex " + std::to_string(v));
    f[v] = static_cast<Color>(tk.integer(2));
  }
  return f;
}

// ---------------------------------------------------------------- certificates

// Root vertices are written left side first; the writer renumbers them if needed.
inline void write_certificate(std::ostream& os, const Certificate& c) {
  if (c.structure) {
    const auto& s = *c.structure;
    const auto& b = s.root;
    std::vector<int> id(static_cast<std::size_t>(b.num_vertices()));
    int next = 0;
    for (Side side : {Side::left, Side::right})
      for (int v = 0; v < b.num_vertices(); ++v)
        if (b.side(v) == side) id[v] = next++;
    os << "root " << b.count_side(Side::left) << ' ' << b.count_side(Side::right) << '\n';
    for (int e = 0; e < b.num_edges(); ++e)
      os << "redge " << e << ' ' << id[b.edge(e).left] << ' ' << id[b.edge(e).right] << '\n';
    for (std::size_t e = 0; e < s.edge_to_vertex.size(); ++e)
      if (s.edge_to_vertex[e] >= 0) os << "map " << e << ' ' << s.edge_to_vertex[e] << '\n';
    for (std::size_t k = 0; k < s.augments.size(); ++k) {
      const auto& a = s.augments[k];
      os << "aug " << k << " edges: " << a.edge_x << ' ' << a.edge_y << " x:";
      detail::write_ids(os, a.x);
      os << " y:";
      detail::write_ids(os, a.y);
      os << " xy-edges:";
      for (auto [u, v] : a.xy_edges) os << ' ' << u << '-' << v;
      os << '\n';
    }
  }
  if (c.peculiar)
    for (int i = 0; i < 9; ++i) {
      os << "peculiar " << i;
      detail::write_ids(os, c.peculiar->sets[i]);
      os << '\n';
    }
  for (std::size_t i = 0; i < c.glue_parts.size(); ++i) {
    os << "glue " << i;
    detail::write_ids(os, c.glue_parts[i]);
    os << '\n';
  }
}

inline Certificate parse_certificate(std::istream& in) {
  Certificate c;
  ElementaryStructure s;
  bool have_root = false;
  int peculiar_seen = 0;
  PeculiarPartition pec;
  auto expect_index = [](const detail::Tokens& tk, std::size_t want) {
    if (tk.integer(1) != static_cast<long long>(want))
      throw ParseError(tk.line, "expected index " + std::to_string(want));
  };
  for (const auto& tk : detail::tokenize(in)) {
    const std::string& kind = tk[0];
    if (kind == "root") {
      if (have_root || tk.size() != 3) throw ParseError(tk.line, "expected a single 'root <left> <right>'");
      long long left = tk.integer(1), right = tk.integer(2);
      if (left < 0 || right < 0 || left + right > 1'000'000) throw ParseError(tk.line, "bad root size");
      for (long long v = 0; v < left + right; ++v) s.root.add_vertex(v < left ? Side::left : Side::right);
      have_root = true;
    } else if (kind == "redge") {
      if (!have_root || tk.size() != 4) throw ParseError(tk.line, "expected 'redge <id> <u> <v>' after root");
      expect_index(tk, static_cast<std::size_t>(s.root.num_edges()));
      int nv = s.root.num_vertices();
      int u = tk.vertex(2, nv), v = tk.vertex(3, nv);
      if (s.root.side(u) == s.root.side(v)) throw ParseError(tk.line, "root edge inside one side");
      s.root.add_edge(u, v);
      s.edge_to_vertex.push_back(-1);
    } else if (kind == "map") {
      if (tk.size() != 3) throw ParseError(tk.line, "expected 'map <edgeid> <vertexid>'");
      int e = tk.vertex(1, s.root.num_edges());
      long long v = tk.integer(2);
      if (v < 0) throw ParseError(tk.line, "negative vertex id");
      s.edge_to_vertex[e] = static_cast<int>(v);
    } else if (kind == "aug") {
      expect_index(tk, s.augments.size());
      Augment a;
      std::size_t i = 2;
      auto keyword = [&](std::string_view k) {
        if (i >= tk.size() || tk[i] != k) throw ParseError(tk.line, "expected '" + std::string(k) + "'");
        ++i;
      };
      keyword("edges:");
      a.edge_x = tk.vertex(i++, s.root.num_edges());
      a.edge_y = tk.vertex(i++, s.root.num_edges());
      keyword("x:");
      a.x = detail::read_ids(tk, i, "y:");
      keyword("y:");
      a.y = detail::read_ids(tk, i, "xy-edges:");
      keyword("xy-edges:");
      for (; i < tk.size(); ++i) {
        const std::string& p = tk[i];
        auto dash = p.find('-');
        detail::Tokens pair{{p.substr(0, dash), dash == std::string::npos ? "" : p.substr(dash + 1)}, tk.line};
        a.xy_edges.emplace_back(static_cast<int>(pair.integer(0)), static_cast<int>(pair.integer(1)));
      }
      s.augments.push_back(std::move(a));
    } else if (kind == "peculiar") {
      expect_index(tk, static_cast<std::size_t>(peculiar_seen));
      if (peculiar_seen == 9) throw ParseError(tk.line, "more than nine peculiar sets");
      std::size_t i = 2;
      pec.sets[peculiar_seen++] = detail::read_ids(tk, i, "");
    } else if (kind == "glue") {
      expect_index(tk, c.glue_parts.size());
      std::size_t i = 2;
      c.glue_parts.push_back(detail::read_ids(tk, i, ""));
    } else {
      throw ParseError(tk.line, "unknown record '" + kind + "'");
    }
  }
  if (have_root) c.structure = std::move(s);
  if (peculiar_seen == 9)
    c.peculiar = pec;
  else if (peculiar_seen != 0)
    throw ParseError(0, "incomplete peculiar partition");
  return c;
}

// ---------------------------------------------------------------- manifests

inline std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ull) {
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

// Key-value run record; fields keep insertion order.
class Manifest {
 public:
  template <class T>
  void set(const std::string& key, const T& value) {
    std::ostringstream os;
    os << value;
    for (auto& [k, v] : fields_)
      if (k == key) {
        v = os.str();
        return;
      }
    fields_.emplace_back(key, os.str());
  }

  const std::vector<std::pair<std::string, std::string>>& fields() const { return fields_; }

  void write(std::ostream& os) const {
    for (const auto& [k, v] : fields_) os << k << '=' << v << '\n';
  }

 private:
  std::vector<std::pair<std::string, std::string>> fields_;
};

// ---------------------------------------------------------------- files

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Writes through a temporary sibling and renames it into place.
inline void write_file(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + path);
    out << content;
    if (!out) throw InputError("write failed for " + path);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) throw InputError("cannot move output into " + path);
}

template <class Writer>
std::string to_text(Writer&& w) {
  std::ostringstream os;
  w(os);
  return os.str();
}

}  // namespace cfp::io
