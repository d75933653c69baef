#include <gtest/gtest.h>

#include <filesystem>

#include "fixtures.hpp"
#include "minvec/errors.hpp"
#include "minvec/io.hpp"

using namespace minvec;
namespace fs = std::filesystem;

namespace {

int parse_error_line(const std::string& text) {
  try {
    io::parse_datum(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

const char* kBase =
    "id = x\n"
    "p = 3\n"
    "n = 2\n"
    "e = 2\n"
    "scale = -1\n"
    "beta = 0 1; 3 0\n";

}  // namespace

TEST(Io, ShippedFilesRoundTrip) {
  int datums = 0, queries = 0;
  for (const auto& ent : fs::directory_iterator(test::data_path("datums"))) {
    const auto d = io::read_datum(ent.path().string());
    EXPECT_EQ(io::parse_datum(io::format_datum(d)), d) << ent.path();
    EXPECT_EQ(io::format_datum(io::parse_datum(io::format_datum(d))), io::format_datum(d));
    ++datums;
  }
  for (const auto& ent : fs::directory_iterator(test::data_path("queries"))) {
    const auto q = io::read_query(ent.path().string());
    const auto text = io::format_query(q);
    EXPECT_EQ(io::format_query(io::parse_query(text)), text) << ent.path();
    ++queries;
  }
  EXPECT_EQ(datums, 7);
  EXPECT_EQ(queries, 5);
}

TEST(Io, ParabolicBlocks) {
  const auto d = io::read_datum(test::data_path("datums/n4-parabolic-p2.datum"));
  EXPECT_TRUE(d.parabolic);
  EXPECT_TRUE(d.inequivalent_asserted);
  ASSERT_EQ(d.blocks.size(), 2u);
  EXPECT_EQ(d.blocks[1].id, "sigma2");
  EXPECT_EQ(d.blocks[1].unit, ModMat::from_rows({{0, 1}, {6, 0}}));
  EXPECT_EQ(io::to_data(d).size(), 2u);
}

TEST(Io, Errors) {
  EXPECT_NO_THROW(io::parse_datum(kBase));
  EXPECT_EQ(parse_error_line(std::string(kBase) + "colour = red\n"), 7);
  EXPECT_EQ(parse_error_line(std::string(kBase) + "p = 5\n"), 7);
  EXPECT_EQ(parse_error_line(std::string(kBase) + "garbage line\n"), 7);
  EXPECT_THROW(io::parse_datum("id = x\np = 3\nn = 2\ne = 2\nscale = -1\n"), ParseError);  // no beta
  EXPECT_THROW(io::parse_datum("id = x\np = 3\nn = 3\ne = 2\nscale = -1\nbeta = 1 0 0; 0 1 0; 0 0 1\n"), ParseError);
  EXPECT_THROW(io::parse_datum("id = x\np = 3\nn = 2\ne = 2\nscale = -1\nbeta = 0 1; 3\n"), ParseError);
  EXPECT_THROW(io::parse_query("n = 2\n"), ParseError);
  EXPECT_THROW(io::read_datum("/nonexistent/file.datum"), ParseError);
}

TEST(Io, MatrixText) {
  const auto m = io::parse_matrix("1 -2; 3 40");
  EXPECT_EQ(m, ModMat::from_rows({{1, -2}, {3, 40}}));
  EXPECT_EQ(io::parse_matrix(io::format_matrix(m)), m);
  EXPECT_THROW(io::parse_matrix("1 2; 3"), ParseError);
  EXPECT_THROW(io::parse_matrix("1 x; 3 4"), ParseError);
}
