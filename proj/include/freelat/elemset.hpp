#pragma once

#include <bit>
#include <cstdint>

namespace freelat {

// Subset of the elements of a partially defined lattice. PDLs are capped at
// kMaxPdlElements elements so a subset fits in one machine word.
using ElemSet = std::uint64_t;
inline constexpr int kMaxPdlElements = 64;

inline constexpr ElemSet elem_bit(int i) { return ElemSet{1} << i; }
inline constexpr bool contains(ElemSet s, int i) { return (s >> i) & 1U; }
inline constexpr bool subset_of(ElemSet a, ElemSet b) { return (a & ~b) == 0; }
inline int count(ElemSet s) { return std::popcount(s); }
inline constexpr ElemSet first_n(int n) { return n >= 64 ? ~ElemSet{0} : elem_bit(n) - 1; }

template <class F>
void for_each_elem(ElemSet s, F&& f) {
  while (s) {
    const int i = std::countr_zero(s);
    f(i);
    s &= s - 1;
  }
}

}  // namespace freelat
