#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "ua/algebra.hpp"
#include "ua/formula.hpp"
#include "ua/sheaf.hpp"

namespace ua::io {

/// Algebra text format, one directive per line, '#' starts a comment:
///   algebra NAME
///   size N
///   tuple-length K
///   op NAME ARITY   followed by N^ARITY integers, row-major
///   zero T1 ... TK
///   one T1 ... TK
FiniteAlgebra parse_algebra(std::string_view text);
FiniteAlgebra load_algebra(const std::filesystem::path& path);
std::string write_algebra(const FiniteAlgebra& a);

/// `hom SRC DST` then one `i -> j` line per source element. SRC and DST are
/// algebra files resolved relative to `base_dir` (".alg" is appended when the
/// bare name does not exist). Totality and range are checked here;
/// compatibility with the operations is left to is_homomorphism.
Homomorphism parse_homomorphism(std::string_view text, const std::filesystem::path& base_dir);
Homomorphism load_homomorphism(const std::filesystem::path& path);

/// `lattice NAME` / `size N` / `meet` N*N integers / `join` N*N integers.
FiniteLatticeSite parse_lattice(std::string_view text);
FiniteLatticeSite load_lattice(const std::filesystem::path& path);

/// A formula file: the formula text, '#' comments stripped.
Formula load_formula(const std::filesystem::path& path, const Signature& sig);

std::string read_file(const std::filesystem::path& path);

}  // namespace ua::io
