#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cfp/cfp.hpp"

namespace {

using namespace cfp;

constexpr int kOk = 0;
constexpr int kInput = 2;
constexpr int kInternal = 3;

struct Loaded {
  io::Instance inst;
  std::string bytes;
};

Loaded load_instance(const std::string& path) {
  Loaded out;
  out.bytes = io::read_file(path);
  std::istringstream in(out.bytes);
  out.inst = io::parse_instance(in);
  return out;
}

std::string ids(const VertexSet& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? " " : "") + std::to_string(s[i]);
  return out;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-")
    std::cout << text;
  else
    io::write_file(path, text);
}

// ---------------------------------------------------------------- solve

struct SolveArgs {
  std::string instance;
  std::string lists;
  std::vector<int> uniform;
  std::uint64_t seed = 0;
  bool verify = false;
  std::string out;
  std::string manifest;
};

void record_stats(io::Manifest& m, const SolveStats& s) {
  m.set("components", s.components);
  m.set("simplicial", s.simplicial);
  m.set("peculiar", s.peculiar);
  m.set("atoms", s.atoms);
  m.set("cutsets", s.cutsets);
  m.set("case1", s.case1);
  m.set("case1_pins", s.case1_pins);
  m.set("case2_c4", s.case2_c4);
  m.set("case2_w1", s.case2_w1);
  m.set("case2_wc", s.case2_wc);
  m.set("case2_c3b", s.case2_c3b);
  m.set("elem_merges", s.elementary.merges);
  m.set("elem_case1", s.elementary.case1);
  m.set("elem_case2", s.elementary.case2);
  m.set("elem_case3", s.elementary.case3);
  m.set("badf_rerolls", s.elementary.badf_rerolls);
  m.set("badf2_rerolls", s.elementary.badf2_rerolls);
  m.set("peculiar_sdr", s.peculiar_branches.sdr);
  m.set("peculiar_merges", s.peculiar_branches.merge_ab + s.peculiar_branches.merge_q);
}

int cmd_solve(const SolveArgs& a) {
  auto start = std::chrono::steady_clock::now();
  io::Manifest m;
  m.set("command", "solve");
  m.set("seed", a.seed);
  auto finish = [&](int code) {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    m.set("exit_code", code);
    m.set("wall_time_ms", ms.count());
    if (!a.manifest.empty()) io::write_file(a.manifest, io::to_text([&](std::ostream& os) { m.write(os); }));
    return code;
  };
  try {
    auto [inst, bytes] = load_instance(a.instance);
    std::uint64_t hash = io::fnv1a(bytes);
    ListAssignment l;
    if (!a.lists.empty()) {
      std::string lb = io::read_file(a.lists);
      hash = io::fnv1a(lb, hash);
      std::istringstream in(lb);
      l = io::parse_lists(in, inst.g.n());
    } else if (!a.uniform.empty()) {
      gen::Rng rng(a.seed);
      l = gen::uniform_lists(rng, inst.g.n(), a.uniform[0], a.uniform[1]);
    } else if (inst.lists) {
      l = *inst.lists;
    } else {
      throw InputError("no lists: give --lists, --uniform-lists or inline 'l' records");
    }
    m.set("input_hash", io::hex64(hash));
    m.set("n", inst.g.n());
    m.set("m", inst.g.num_edges());
    SolveStats st;
    Coloring f = solve(inst.g, l, &st);
    m.set("outcome", "colored");
    record_stats(m, st);
    if (a.verify) {
      auto v = oracle::validate_coloring(inst.g, l, f);
      if (!v.ok()) throw InternalError("verification failed: " + v.describe());
      std::string check = "validator";
      if (inst.g.n() <= 12) {
        auto r = oracle::brute_l_color(inst.g, l);
        if (r.status == oracle::Status::no) throw InternalError("oracle finds no coloring but solve returned one");
        check += "+oracle";
      }
      m.set("verified", check);
    }
    emit(a.out, io::to_text([&](std::ostream& os) { io::write_coloring(os, f); }));
    (a.out.empty() ? std::cerr : std::cout)
        << "colored " << inst.g.n() << " vertices: " << st.atoms << " atoms, " << st.cutsets << " cutset extensions, "
        << st.peculiar << " peculiar\n";
    return finish(kOk);
  } catch (const InternalError& e) {
    m.set("outcome", "internal-failure");
    std::cerr << "internal failure: " << e.what() << '\n';
    return finish(kInternal);
  } catch (const Error& e) {
    m.set("outcome", "rejected");
    std::cerr << "rejected: " << e.what() << '\n';
    return finish(kInput);
  }
}

// ---------------------------------------------------------------- decompose

void print_tree(std::ostream& os, const DecompositionTree& t, int node, int depth) {
  const auto& nd = t.nodes[node];
  os << std::string(static_cast<std::size_t>(2 * depth), ' ');
  if (nd.virtual_root)
    os << "components\n";
  else if (nd.is_leaf())
    os << "atom {" << ids(nd.vertices) << "}\n";
  else
    os << "cut {" << ids(nd.cutset) << "} over {" << ids(nd.vertices) << "}\n";
  for (int c : nd.children) print_tree(os, t, c, depth + 1);
}

int cmd_decompose(const std::string& path, const std::string& dot) {
  auto [inst, bytes] = load_instance(path);
  auto t = decompose_full(inst.g);
  print_tree(std::cout, t, t.root, 0);
  std::cout << "leaves " << t.leaves().size() << " (n = " << inst.g.n() << ")\n";
  if (dot.empty())
    std::cout << to_dot(t);
  else
    io::write_file(dot, to_dot(t));
  return kOk;
}

// ---------------------------------------------------------------- recognize

int cmd_recognize(const std::string& path, const std::string& cert_path) {
  auto [inst, bytes] = load_instance(path);
  const Graph& g = inst.g;
  if (auto claw = find_claw(g)) {
    std::cout << "rejected: claw center " << claw->center << " leaves " << claw->leaves[0] << ' ' << claw->leaves[1]
              << ' ' << claw->leaves[2] << '\n';
    return kOk;
  }
  if (auto q = maximum_clique(g); q.size() > 4) {
    std::cout << "rejected: clique of size " << q.size() << " {" << ids(q) << "}\n";
    return kOk;
  }
  if (g.n() <= 12) {
    auto p = oracle::is_perfect_small(g);
    if (p.status == oracle::Status::no) {
      std::cout << "rejected: not perfect, chi > omega on {" << ids(p.imperfect_subgraph) << "}\n";
      return kOk;
    }
  }
  io::Certificate cert;
  if (g.n() == 9)
    if (auto p = find_peculiar_partition(g)) {
      cert.peculiar = *p;
      std::cout << "peculiar\n";
      emit(cert_path, io::to_text([&](std::ostream& os) { io::write_certificate(os, cert); }));
      return kOk;
    }
  if (!is_connected(g)) {
    std::cout << "atom-with-cutset: disconnected (empty cutset), " << connected_components(g).size()
              << " components\n";
    return kOk;
  }
  if (auto c = find_clique_cutset(g)) {
    std::cout << "atom-with-cutset: clique cutset {" << ids(*c) << "}\n";
    return kOk;
  }
  if (auto cyc = odd_conflict_cycle(g)) {
    std::cout << "rejected: odd conflict cycle";
    for (auto [u, v] : *cyc) std::cout << ' ' << u << '-' << v;
    std::cout << '\n';
    return kOk;
  }
  try {
    cert.structure = recover_structure(g);
  } catch (const StructureError& e) {
    std::cout << "rejected: " << e.what() << '\n';
    return kOk;
  }
  std::cout << "elementary: root " << cert.structure->root.num_vertices() << " vertices, "
            << cert.structure->root.num_edges() << " edges, " << cert.structure->h() << " augments\n";
  emit(cert_path, io::to_text([&](std::ostream& os) { io::write_certificate(os, cert); }));
  return kOk;
}

// ---------------------------------------------------------------- gen

struct GenArgs {
  std::string kind;
  std::uint64_t seed = 0;
  std::string out;
  std::string cert;
  int max_vertices = 30;
  int augments = 1;
  std::vector<int> lists;
};

int cmd_gen(const GenArgs& a) {
  gen::Rng rng(a.seed);
  Graph g;
  io::Certificate cert;
  if (a.kind == "peculiar") {
    g = gen::gen_peculiar();
    cert.peculiar = find_peculiar_partition(g);
  } else if (a.kind == "elementary" || a.kind == "cobipartite") {
    gen::ElementaryParams p;
    p.cobipartite = a.kind == "cobipartite";
    p.augments = p.cobipartite ? 1 : a.augments;
    p.max_vertices = a.max_vertices;
    auto e = gen::gen_elementary(a.seed, p);
    g = e.g;
    cert.structure = e.structure;
  } else if (a.kind == "glued") {
    gen::GluedParams p;
    p.max_vertices = a.max_vertices;
    auto r = gen::gen_glued(a.seed, p);
    g = r.g;
    cert.glue_parts = r.parts;
  } else {
    throw InputError("unknown generator kind '" + a.kind + "'");
  }
  std::optional<ListAssignment> l;
  if (!a.lists.empty()) l = gen::uniform_lists(rng, g.n(), a.lists[0], a.lists[1]);
  emit(a.out, io::to_text([&](std::ostream& os) { io::write_instance(os, g, l ? &*l : nullptr); }));
  if (!a.cert.empty()) io::write_file(a.cert, io::to_text([&](std::ostream& os) { io::write_certificate(os, cert); }));
  std::cerr << a.kind << ": n = " << g.n() << ", m = " << g.num_edges() << '\n';
  return kOk;
}

// ---------------------------------------------------------------- oracle

struct OracleArgs {
  std::string query;
  std::string instance;
  int k = 4;
  int universe = 5;
  std::uint64_t node_limit = oracle::Budget{}.node_limit;
};

int cmd_oracle(const OracleArgs& a) {
  auto [inst, bytes] = load_instance(a.instance);
  const Graph& g = inst.g;
  oracle::Budget budget;
  budget.node_limit = a.node_limit;
  auto unknown = [] {
    std::cout << "unknown (budget exhausted)\n";
    return kOk;
  };
  if (a.query == "omega") {
    std::cout << omega(g) << '\n';
  } else if (a.query == "chromatic") {
    auto r = oracle::chromatic_number(g, budget);
    if (r.status == oracle::Status::exhausted) return unknown();
    std::cout << r.chi << '\n';
  } else if (a.query == "perfect") {
    auto r = oracle::is_perfect_small(g, budget);
    if (r.status == oracle::Status::exhausted) return unknown();
    if (r.status == oracle::Status::yes)
      std::cout << "true\n";
    else
      std::cout << "false: chi > omega on {" << ids(r.imperfect_subgraph) << "}\n";
  } else if (a.query == "color") {
    if (!inst.lists) throw InputError("color query needs inline lists");
    auto r = oracle::brute_l_color(g, *inst.lists, budget);
    if (r.status == oracle::Status::exhausted) return unknown();
    if (r.status == oracle::Status::no) {
      std::cout << "false\n";
    } else {
      std::cout << "true\n";
      io::write_coloring(std::cout, *r.coloring);
    }
  } else if (a.query == "choosable") {
    if (g.n() > 9 || a.universe > 6 || a.k < 1 || a.k > a.universe)
      throw InputError("choosability enumeration needs n <= 9, U <= 6, 1 <= k <= U");
    auto r = oracle::check_choosable(g, a.k, a.universe, budget);
    if (r.status == oracle::Status::exhausted) return unknown();
    if (r.status == oracle::Status::yes) {
      std::cout << "true (at U=" << a.universe << ")\n";
    } else {
      std::cout << "false (at U=" << a.universe << ")\n";
      io::write_lists(std::cout, *r.counterexample);
    }
  } else {
    throw InputError("unknown oracle query '" + a.query + "'");
  }
  return kOk;
}

template <class F>
int guarded(F&& f) {
  try {
    return f();
  } catch (const InternalError& e) {
    std::cerr << "internal failure: " << e.what() << '\n';
    return kInternal;
  } catch (const gen::Exhausted& e) {
    std::cerr << "generator: " << e.what() << '\n';
    return kInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "internal failure: " << e.what() << '\n';
    return kInternal;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"List coloring for claw-free perfect graphs with clique number at most 4"};
  app.require_subcommand(1);

  SolveArgs sa;
  auto* solve_cmd = app.add_subcommand("solve", "color an instance from its lists");
  solve_cmd->add_option("instance", sa.instance, "instance file")->required();
  solve_cmd->add_option("--lists", sa.lists, "separate lists file");
  solve_cmd->add_option("--uniform-lists", sa.uniform, "random k-subsets of {1..U}")->expected(2);
  solve_cmd->add_option("--seed", sa.seed, "seed for generated lists");
  solve_cmd->add_flag("--verify", sa.verify, "validate the coloring; cross-check with the oracle when n <= 12");
  solve_cmd->add_option("-o,--output", sa.out, "coloring file (default stdout)");
  solve_cmd->add_option("--manifest", sa.manifest, "run manifest file");

  std::string dec_path, dec_dot;
  auto* dec_cmd = app.add_subcommand("decompose", "clique-cutset decomposition tree");
  dec_cmd->add_option("instance", dec_path, "instance file")->required();
  dec_cmd->add_option("--dot", dec_dot, "write DOT here instead of stdout");

  std::string rec_path, rec_cert;
  auto* rec_cmd = app.add_subcommand("recognize", "classify an instance and print a certificate");
  rec_cmd->add_option("instance", rec_path, "instance file")->required();
  rec_cmd->add_option("--cert", rec_cert, "certificate file (default stdout)");

  GenArgs ga;
  auto* gen_cmd = app.add_subcommand("gen", "generate an instance with its certificate");
  gen_cmd->add_option("kind", ga.kind, "peculiar | elementary | cobipartite | glued")->required();
  gen_cmd->add_option("--seed", ga.seed, "64-bit seed")->required();
  gen_cmd->add_option("-o,--output", ga.out, "instance file (default stdout)");
  gen_cmd->add_option("--cert", ga.cert, "certificate file");
  gen_cmd->add_option("--max-vertices", ga.max_vertices, "size bound");
  gen_cmd->add_option("--augments", ga.augments, "augment count for elementary instances");
  gen_cmd->add_option("--lists", ga.lists, "inline random k-subsets of {1..U}")->expected(2);

  OracleArgs oa;
  auto* or_cmd = app.add_subcommand("oracle", "exhaustive ground truth");
  or_cmd->add_option("query", oa.query, "omega | chromatic | perfect | color | choosable")->required();
  or_cmd->add_option("instance", oa.instance, "instance file")->required();
  or_cmd->add_option("-k", oa.k, "list size for choosable");
  or_cmd->add_option("-U", oa.universe, "color universe for choosable");
  or_cmd->add_option("--node-limit", oa.node_limit, "search budget");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  if (*solve_cmd) {
    if (!sa.uniform.empty() && !sa.lists.empty()) {
      std::cerr << "error: --lists and --uniform-lists are exclusive\n";
      return kInput;
    }
    return guarded([&] { return cmd_solve(sa); });
  }
  if (*dec_cmd) return guarded([&] { return cmd_decompose(dec_path, dec_dot); });
  if (*rec_cmd) return guarded([&] { return cmd_recognize(rec_path, rec_cert); });
  if (*gen_cmd) return guarded([&] { return cmd_gen(ga); });
  return guarded([&] { return cmd_oracle(oa); });
}
