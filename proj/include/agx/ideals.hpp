// agx - finite magma identity checking and enumeration
//
// Subset products, one- and two-sided ideals, connected pairs of subsets,
// principal sets aS, Sa, a(Sa), (aS)a, and the idempotent intersection
// identities for left and right ideals.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "agx/identities.hpp"
#include "agx/magma.hpp"
#include "agx/subset.hpp"

namespace agx {

  // { a * b : a in A, b in B }
  inline SubsetMask set_product(Magma const& m, SubsetMask A, SubsetMask B) {
    SubsetMask out;
    for (std::uint64_t x = A.bits(); x != 0; x &= x - 1) {
      auto const a = static_cast<Element>(std::countr_zero(x));
      for (std::uint64_t y = B.bits(); y != 0; y &= y - 1) {
        out.insert(m(a, static_cast<Element>(std::countr_zero(y))));
      }
    }
    return out;
  }

  inline SubsetMask whole(Magma const& m) {
    return SubsetMask::full(m.order());
  }

  // SA within A. The empty set is vacuously an ideal.
  inline bool is_left_ideal(Magma const& m, SubsetMask A) {
    return set_product(m, whole(m), A).is_subset_of(A);
  }

  // AS within A.
  inline bool is_right_ideal(Magma const& m, SubsetMask A) {
    return set_product(m, A, whole(m)).is_subset_of(A);
  }

  inline bool is_ideal(Magma const& m, SubsetMask A) {
    return is_left_ideal(m, A) && is_right_ideal(m, A);
  }

  struct Connectedness {
    bool left  = false;  // SA within B and SB within A
    bool right = false;  // AS within B and BS within A

    bool connected() const noexcept {
      return left && right;
    }
  };

  inline Connectedness connectedness(Magma const& m,
                                     SubsetMask   A,
                                     SubsetMask   B) {
    SubsetMask const S = whole(m);
    return {set_product(m, S, A).is_subset_of(B)
                && set_product(m, S, B).is_subset_of(A),
            set_product(m, A, S).is_subset_of(B)
                && set_product(m, B, S).is_subset_of(A)};
  }

  struct PrincipalSets {
    SubsetMask aS;
    SubsetMask Sa;
    SubsetMask a_Sa;  // a(Sa)
    SubsetMask aS_a;  // (aS)a
    bool       idempotent = false;
  };

  inline PrincipalSets principal_sets(Magma const& m, Element a) {
    if (a >= m.order()) {
      throw std::invalid_argument("element " + std::to_string(a + 1)
                                  + " is not in the magma");
    }
    SubsetMask const S    = whole(m);
    SubsetMask const self = SubsetMask::singleton(a);
    PrincipalSets    p;
    p.aS         = set_product(m, self, S);
    p.Sa         = set_product(m, S, self);
    p.a_Sa       = set_product(m, self, p.Sa);
    p.aS_a       = set_product(m, p.aS, self);
    p.idempotent = m(a, a) == a;
    return p;
  }

  // Every two-sided ideal of m, in increasing mask order. Exponential in the
  // order, intended for n <= 8.
  inline std::vector<SubsetMask> all_ideals(Magma const& m) {
    std::vector<SubsetMask> out;
    std::uint64_t const     limit = std::uint64_t{1} << m.order();
    for (std::uint64_t bits = 0; bits < limit; ++bits) {
      if (is_ideal(m, SubsetMask(bits))) {
        out.emplace_back(bits);
      }
    }
    return out;
  }

  // True iff A lies inside every ideal that contains a. A must itself be an
  // ideal.
  inline bool is_minimal_ideal_for(Magma const& m, Element a, SubsetMask A) {
    if (a >= m.order()) {
      throw std::invalid_argument("element " + std::to_string(a + 1)
                                  + " is not in the magma");
    }
    if (!is_ideal(m, A)) {
      throw std::invalid_argument(to_string(A) + " is not an ideal");
    }
    for (SubsetMask L : all_ideals(m)) {
      if (L.contains(a) && !A.is_subset_of(L)) {
        return false;
      }
    }
    return true;
  }

  struct IdempotentIntersections {
    // Preconditions, reported rather than enforced.
    bool left_ideal    = false;  // L is a left ideal
    bool right_ideal   = false;  // R is a right ideal
    bool x_idempotent  = false;
    bool y_idempotent  = false;
    bool stein_ag      = false;
    // xL = L n xS
    bool left_holds    = false;
    // Rx = Sx n R
    bool right_holds   = false;
    // Sy n xS = x(Sy)
    bool mixed_holds   = false;

    bool preconditions() const noexcept {
      return left_ideal && right_ideal && x_idempotent && y_idempotent
             && stein_ag;
    }

    bool all_hold() const noexcept {
      return left_holds && right_holds && mixed_holds;
    }

    std::vector<std::string> violated_preconditions() const {
      std::vector<std::string> out;
      if (!left_ideal) {
        out.emplace_back("L is not a left ideal");
      }
      if (!right_ideal) {
        out.emplace_back("R is not a right ideal");
      }
      if (!x_idempotent) {
        out.emplace_back("x is not idempotent");
      }
      if (!y_idempotent) {
        out.emplace_back("y is not idempotent");
      }
      if (!stein_ag) {
        out.emplace_back("the magma is not a Stein AG-groupoid");
      }
      return out;
    }
  };

  inline IdempotentIntersections idempotent_intersections(Magma const& m,
                                                          SubsetMask   L,
                                                          SubsetMask   R,
                                                          Element      x,
                                                          Element      y) {
    if (x >= m.order() || y >= m.order()) {
      throw std::invalid_argument("element is not in the magma");
    }
    SubsetMask const S  = whole(m);
    SubsetMask const sx = SubsetMask::singleton(x);
    SubsetMask const sy = SubsetMask::singleton(y);

    IdempotentIntersections r;
    r.left_ideal   = is_left_ideal(m, L);
    r.right_ideal  = is_right_ideal(m, R);
    r.x_idempotent = m(x, x) == x;
    r.y_idempotent = m(y, y) == y;
    r.stein_ag     = is_member(m, MagmaClass::SteinAG);

    SubsetMask const xS  = set_product(m, sx, S);
    SubsetMask const Sx  = set_product(m, S, sx);
    SubsetMask const Sy  = set_product(m, S, sy);
    r.left_holds         = set_product(m, sx, L) == (L & xS);
    r.right_holds        = set_product(m, R, sx) == (Sx & R);
    r.mixed_holds        = (Sy & xS) == set_product(m, sx, Sy);
    return r;
  }

}  // namespace agx
