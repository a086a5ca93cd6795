#pragma once

#include <string>
#include <variant>

#include "wka/kernel.hpp"

namespace wka {

/// JSON interchange document for kernels. Doubles serialize shortest-round-trip,
/// so write-then-read reproduces a kernel bit-exactly.
///
/// invariant:  {"group","coeff_dim","representation":"invariant",
///              "entries":[{"gamma":"(1,0)","matrix":[[re,im],...]} ...]}
/// windowed:   {"group","coeff_dim","representation":"windowed","window_radius":R,
///              "entries":[{"i":0,"j":3,"matrix":[[re,im],...]} ...]}
/// The matrix field is the row-major list of [re, im] pairs.
using AnyKernel = std::variant<InvariantKernel, WindowedKernel>;

std::string write_kernel(const InvariantKernel& k);
std::string write_kernel(const WindowedKernel& k);

AnyKernel read_kernel(const std::string& text);
InvariantKernel read_invariant_kernel(const std::string& text);

/// Kernel mini-language for the CLI:
///   expr    := term ('+' term)*
///   term    := [scalar '*'] atom
///   atom    := 'I' | 'shift' | 'random(R,s,seed)'
/// 'shift' is the delta kernel at the group's first generator with identity
/// coefficient. Anything richer must come through the interchange format.
InvariantKernel parse_kernel_expr(const std::string& expr, GroupPtr group, int coeff_dim);

}  // namespace wka
