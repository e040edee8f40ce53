#pragma once

#include <iosfwd>
#include <string>

#include "qdf/operator.hpp"

namespace qdf {

// Binary layout: magic "QDFO", u32 version, u32 flags (bit0 hermitian,
// bit1 psd, valid only if the corresponding known bit2/bit3 is set),
// u32 factor count, u32 dims..., then row-major complex entries as pairs
// of IEEE-754 doubles.
void save_operator_binary(const Operator& op, std::ostream& os);
Operator load_operator_binary(std::istream& is);
void save_operator_binary(const Operator& op, const std::string& path);
Operator load_operator_binary(const std::string& path);

// Text layout: first line "dims: d1 d2 ...", then one row per line of
// "re,im" pairs separated by spaces.
void save_operator_text(const Operator& op, std::ostream& os);
Operator load_operator_text(std::istream& is);

}  // namespace qdf
