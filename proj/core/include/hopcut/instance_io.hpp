#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "hopcut/graph.hpp"

namespace hopcut {

struct ParseError : std::runtime_error {
  ParseError(const std::string& source, int line, const std::string& what);
  int line;
};

// Edge-list instance format (rudy style). UTF-8 text, LF line endings,
// whitespace-separated fields, 1-indexed node ids:
//
//   # free-form comments anywhere
//   # optimum <value> <exact|best-known>     (recognized metadata)
//   n m
//   i j w                                    (m lines, i != j)
//
// write_instance emits the canonical form; write followed by read is the
// identity on canonicalized graphs.
Graph read_instance(std::istream& in, const std::string& source = "<stream>");
Graph read_instance(const std::filesystem::path& path);
void write_instance(const Graph& g, std::ostream& out);
void write_instance(const Graph& g, const std::filesystem::path& path);

}  // namespace hopcut
