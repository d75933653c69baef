#pragma once

// Line-oriented "key = value" files for induction data and lattice queries.
// Matrices are written as rows separated by ';'. Lines starting with '#'
// are comments. Parabolic data list their blocks in [block] sections.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "minvec/counting.hpp"
#include "minvec/modmat.hpp"
#include "minvec/orders.hpp"

namespace minvec::io {

struct BlockSpec {
  std::string id;
  int n = 0;
  int e = 0;
  std::optional<int> j;
  int scale = 0;
  ModMat unit;
  bool defer_field = false;  // field = defer

  friend bool operator==(const BlockSpec&, const BlockSpec&) = default;
};

struct DatumFile {
  std::string id;
  std::int64_t p = 0;
  int n = 0;
  bool parabolic = false;
  std::optional<int> c;
  bool inequivalent_asserted = false;
  std::vector<BlockSpec> blocks;

  friend bool operator==(const DatumFile&, const DatumFile&) = default;
};

/// Throws ParseError (with the line number) on malformed input, unknown or
/// repeated keys, missing keys and e not dividing n.
DatumFile parse_datum(const std::string& text);
DatumFile read_datum(const std::string& path);
/// Canonical text; parse_datum(format_datum(d)) == d.
std::string format_datum(const DatumFile& d);
/// Builds the induction data (DatumInvalid on mathematical problems).
std::vector<orders::InductionDatum> to_data(const DatumFile& d);

counting::LatticeQuery parse_query(const std::string& text);
counting::LatticeQuery read_query(const std::string& path);
std::string format_query(const counting::LatticeQuery& q);

ModMat parse_matrix(const std::string& s, int line = 0);
std::string format_matrix(const ModMat& m);

std::string read_file(const std::string& path);

}  // namespace minvec::io
