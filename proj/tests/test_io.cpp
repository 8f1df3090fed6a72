#include <gtest/gtest.h>

#include <filesystem>

#include "shadowlab/constructions.hpp"
#include "shadowlab/errors.hpp"
#include "shadowlab/forbidden.hpp"
#include "shadowlab/io.hpp"
#include "shadowlab/rng.hpp"

using namespace shadowlab;

namespace {
void expect_parse_error(const std::string& text, std::size_t line, std::size_t column, const std::string& needle) {
  try {
    parse_edge_list(text);
    FAIL() << "parsed: " << text;
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), line) << e.what();
    EXPECT_EQ(e.column(), column) << e.what();
    EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
  }
}
}  // namespace

TEST(EdgeList, Examples) {
  const std::string text = "3 4\n0 1 2\n0 1 3\n";
  const auto h = parse_edge_list(text);
  EXPECT_EQ(h.r(), 3);
  EXPECT_EQ(h.n(), 4);
  EXPECT_EQ(h.size(), 2u);
  EXPECT_EQ(serialize_edge_list(h), text);
  expect_parse_error("3 4\n0 1 1\n", 2, 5, "repeated vertex");
  expect_parse_error("3 4\n0 1 5\n", 2, 5, "vertex 5");
}

TEST(EdgeList, CommentsAndBlankLines) {
  const auto h = parse_edge_list("# header next\n\n3 5  # r n\n  2 1 0\n\n# edge\n4 3 2 # tail\n");
  EXPECT_EQ(h.size(), 2u);
  EXPECT_TRUE(h.contains(VertexSet(5, {0, 1, 2})));
  EXPECT_TRUE(h.contains(VertexSet(5, {2, 3, 4})));
  EXPECT_EQ(parse_edge_list("3 0\n").n(), 0);
}

TEST(EdgeList, Errors) {
  expect_parse_error("", 1, 1, "header");
  expect_parse_error("3\n", 1, 1, "header");
  expect_parse_error("3 4 5\n", 1, 1, "header");
  expect_parse_error("0 4\n", 1, 1, "uniformity");
  expect_parse_error("3 4\n0 1\n", 2, 1, "expected 3");
  expect_parse_error("3 4\n0 1 2 3\n", 2, 7, "expected 3");
  expect_parse_error("3 4\n0 x 2\n", 2, 3, "integer");
  expect_parse_error("3 4\n0 1 -2\n", 2, 5, "vertex -2");
  expect_parse_error("3 4\n0 1 2\n2 1 0\n", 3, 1, "duplicate");
}

TEST(EdgeList, RoundTrip) {
  Xorshift64Star rng(61);
  for (int i = 0; i < 100; ++i) {
    const int n = 3 + static_cast<int>(rng.below(12));
    const auto h = random_free(n, 3, Family::none(), rng.next(), rng.below(40));
    const auto text = serialize_edge_list(h);
    EXPECT_EQ(parse_edge_list(text), h);
    EXPECT_EQ(serialize_edge_list(parse_edge_list(text)), text);
  }
}

TEST(EdgeList, Files) {
  const auto path = std::filesystem::temp_directory_path() / "shadowlab-io-test.hg";
  write_edge_list(path, fano());
  EXPECT_EQ(read_edge_list(path), fano());
  std::filesystem::remove(path);
  EXPECT_THROW(read_edge_list(path), ParameterError);
}

TEST(Sha256, KnownVectors) {
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
