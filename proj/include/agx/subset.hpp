// agx - finite magma identity checking and enumeration
//
// Subsets of a magma's carrier as 64-bit masks.

#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "agx/magma.hpp"

namespace agx {

  class SubsetMask {
   public:
    constexpr SubsetMask() noexcept = default;
    constexpr explicit SubsetMask(std::uint64_t bits) noexcept : _bits(bits) {}

    static constexpr SubsetMask full(std::size_t n) noexcept {
      return SubsetMask(n >= 64 ? ~std::uint64_t{0}
                                : (std::uint64_t{1} << n) - 1);
    }

    static constexpr SubsetMask singleton(Element e) noexcept {
      return SubsetMask(std::uint64_t{1} << e);
    }

    static SubsetMask of(std::initializer_list<Element> elems) noexcept {
      SubsetMask s;
      for (Element e : elems) {
        s.insert(e);
      }
      return s;
    }

    constexpr std::uint64_t bits() const noexcept {
      return _bits;
    }

    constexpr bool empty() const noexcept {
      return _bits == 0;
    }

    constexpr std::size_t size() const noexcept {
      return static_cast<std::size_t>(std::popcount(_bits));
    }

    constexpr bool contains(Element e) const noexcept {
      return (_bits >> e) & 1U;
    }

    constexpr void insert(Element e) noexcept {
      _bits |= std::uint64_t{1} << e;
    }

    constexpr bool is_subset_of(SubsetMask other) const noexcept {
      return (_bits & ~other._bits) == 0;
    }

    std::vector<Element> elements() const {
      std::vector<Element> out;
      for (std::uint64_t b = _bits; b != 0; b &= b - 1) {
        out.push_back(static_cast<Element>(std::countr_zero(b)));
      }
      return out;
    }

    constexpr SubsetMask operator|(SubsetMask o) const noexcept {
      return SubsetMask(_bits | o._bits);
    }
    constexpr SubsetMask operator&(SubsetMask o) const noexcept {
      return SubsetMask(_bits & o._bits);
    }

    friend constexpr bool operator==(SubsetMask, SubsetMask) = default;
    friend constexpr auto operator<=>(SubsetMask, SubsetMask) = default;

   private:
    std::uint64_t _bits = 0;
  };

  // "{1, 2, 3}" using 1-based element names.
  inline std::string to_string(SubsetMask s) {
    std::string out = "{";
    bool        sep = false;
    for (Element e : s.elements()) {
      if (sep) {
        out += ", ";
      }
      out += std::to_string(e + 1);
      sep = true;
    }
    return out + "}";
  }

}  // namespace agx
