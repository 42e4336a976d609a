#pragma once

#include <set>
#include <string>
#include <vector>

#include "hdlab/cli.hpp"

namespace hdlab::cli {

// Integers are JSON numbers when they fit in 64 bits and decimal strings otherwise.
linalg::Int json_int(const Json& j);
linalg::IntVec json_int_vec(const Json& j);
linalg::IntMatrix json_matrix(const Json& j);
Json int_json(const linalg::Int& x);
Json vec_json(const linalg::IntVec& v);
Json matrix_json(const linalg::IntMatrix& m);

// "a,b,c" -> {a, b, c}; empty items are dropped.
std::vector<std::string> split_list(const std::string& s);
// Throws InvalidArgument for a non-prime.
std::set<long> parse_primes(const std::vector<std::string>& items);

}  // namespace hdlab::cli
