#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "cfp/gen.hpp"
#include "cfp/io.hpp"
#include "cfp/structure.hpp"

using namespace cfp;

namespace {

template <class F>
int parse_error_line(const std::string& text, F&& parse) {
  std::istringstream in(text);
  try {
    parse(in);
  } catch (const io::ParseError& e) {
    return e.line;
  }
  return -1;
}

}  // namespace

TEST(Instance, RoundTripIsByteIdentical) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    auto r = gen::gen_glued(seed, {.max_vertices = 20});
    gen::Rng rng(seed);
    auto l = gen::uniform_lists(rng, r.g.n(), 4, 7);
    std::string text = io::to_text([&](std::ostream& os) { io::write_instance(os, r.g, &l); });
    std::istringstream in(text);
    auto inst = io::parse_instance(in);
    EXPECT_EQ(inst.g, r.g);
    ASSERT_TRUE(inst.lists);
    EXPECT_EQ(inst.lists->lists(), l.lists());
    EXPECT_EQ(io::to_text([&](std::ostream& os) { io::write_instance(os, inst); }), text);
  }
}

TEST(Instance, CommentsAndBlankLinesAreSkipped) {
  std::istringstream in("c a triangle\n\np graph 3\ne 0 1\nc inline comment line\ne 1 2\ne 0 2\n");
  auto inst = io::parse_instance(in);
  EXPECT_EQ(inst.g, complete_graph(3));
  EXPECT_FALSE(inst.lists);
}

TEST(Instance, ParseErrorsCarryLineNumbers) {
  auto inst = [](std::istream& in) { io::parse_instance(in); };
  EXPECT_EQ(parse_error_line("p graph 3\ne 0 1\ne 1 3\n", inst), 3);
  EXPECT_EQ(parse_error_line("p graph 3\ne 1 1\n", inst), 2);
  EXPECT_EQ(parse_error_line("p graph 3\nc note\ne 0 x\n", inst), 3);
  EXPECT_EQ(parse_error_line("p graph 2\nq 0 1\n", inst), 2);
  EXPECT_EQ(parse_error_line("p graph 2\nl 0 1 2\nl 1 3 3\n", inst), 3);
  EXPECT_EQ(parse_error_line("p nope 2\n", inst), 1);
  EXPECT_NE(parse_error_line("p graph 2\nl 0 1 2\n", inst), -1);  // missing list for vertex 1
  std::istringstream bad("p graph 2\ne 0 5\n");
  try {
    io::parse_instance(bad);
    FAIL();
  } catch (const InputError& e) {
    EXPECT_EQ(std::string(e.what()).rfind("line 2: ", 0), 0u);
  }
}

TEST(Lists, SeparateFileWithOptionalHeader) {
  std::istringstream with("p lists 2\nl 0 4 3 2 1\nl 1 5 6 7 8\n");
  auto l = io::parse_lists(with, 2);
  EXPECT_EQ(l[0], (ColorSet{1, 2, 3, 4}));
  std::istringstream without("l 1 5 6 7 8\nl 0 1 2 3 4\n");
  EXPECT_EQ(io::parse_lists(without, 2).lists(), l.lists());
  std::istringstream wrong("p lists 3\nl 0 1\n");
  EXPECT_THROW(io::parse_lists(wrong, 2), io::ParseError);
}

TEST(Coloring, RoundTrip) {
  Coloring f(4);
  f[0] = 3;
  f[1] = 1;
  f[2] = 4;
  f[3] = 2;
  std::string text = io::to_text([&](std::ostream& os) { io::write_coloring(os, f); });
  EXPECT_EQ(text, "p coloring 4\nf 0 3\nf 1 1\nf 2 4\nf 3 2\n");
  std::istringstream in(text);
  EXPECT_EQ(io::parse_coloring(in), f);
  auto col = [](std::istream& in) { io::parse_coloring(in); };
  EXPECT_EQ(parse_error_line("p coloring 2\nf 0 1\nf 0 2\n", col), 3);
}

TEST(Certificate, RoundTripIsByteIdentical) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    auto e = gen::gen_elementary(seed, {.augments = static_cast<int>(seed % 3)});
    io::Certificate c;
    c.structure = e.structure;
    c.glue_parts = {{0, 1, 2}, {2, 3}};
    std::string text = io::to_text([&](std::ostream& os) { io::write_certificate(os, c); });
    std::istringstream in(text);
    auto back = io::parse_certificate(in);
    ASSERT_TRUE(back.structure);
    EXPECT_TRUE(verify_structure(e.g, *back.structure)) << text;
    EXPECT_EQ(back.glue_parts, c.glue_parts);
    EXPECT_EQ(io::to_text([&](std::ostream& os) { io::write_certificate(os, back); }), text);
  }
}

TEST(Certificate, PeculiarPartition) {
  io::Certificate c;
  c.peculiar = find_peculiar_partition(peculiar_graph());
  std::string text = io::to_text([&](std::ostream& os) { io::write_certificate(os, c); });
  std::istringstream in(text);
  auto back = io::parse_certificate(in);
  EXPECT_EQ(back, c);
  auto cert = [](std::istream& in) { io::parse_certificate(in); };
  EXPECT_EQ(parse_error_line("glue 0 1 2\nglue 2 3\n", cert), 2);
}

TEST(Manifest, KeepsInsertionOrderAndOverwrites) {
  io::Manifest m;
  m.set("command", "solve");
  m.set("seed", 7);
  m.set("n", 12);
  m.set("seed", 8);
  EXPECT_EQ(io::to_text([&](std::ostream& os) { m.write(os); }), "command=solve\nseed=8\nn=12\n");
}

TEST(Fnv1a, KnownVectors) {
  EXPECT_EQ(io::hex64(io::fnv1a("")), "cbf29ce484222325");
  EXPECT_EQ(io::hex64(io::fnv1a("a")), "af63dc4c8601ec8c");
  EXPECT_EQ(io::hex64(io::fnv1a("foobar")), "85944171f73967e8");
}

TEST(Files, AtomicWriteAndRead) {
  auto dir = std::filesystem::temp_directory_path() / "cfp_io_test";
  std::filesystem::create_directories(dir);
  auto path = (dir / "out.txt").string();
  io::write_file(path, "first\n");
  io::write_file(path, "second\n");
  EXPECT_EQ(io::read_file(path), "second\n");
  EXPECT_FALSE(std::filesystem::exists(path + ".tmp"));
  EXPECT_THROW(io::read_file((dir / "missing").string()), InputError);
  std::filesystem::remove_all(dir);
}
