// agx - finite magma identity checking and enumeration
//
// Exhaustive verification of implications between AG-groupoid classes over
// enumerated universes, and search for counterexamples to converses.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "agx/enumerate.hpp"
#include "agx/identities.hpp"
#include "agx/ideals.hpp"
#include "agx/magma.hpp"

namespace agx {

  enum class ImplicationId : std::uint8_t {
    Prop1a,
    Prop1b,
    Prop1c,
    Prop1d,
    Prop1e,
    Prop1f,
    Prop1g,
    Prop1h,
    Prop1i,
    Lemma1,
    Lemma2,
    Lemma3,
    SemigroupAGStar,
    SemigroupAG3Band,
    SemigroupT4,
    SemigroupCancellative,
    MedialAlways,
    ConnectedLemma,
    L2Ideal,
    IdealThmA,
    IdealThmB,
    IdealThmC,
    IdempotentThm,
  };

  inline constexpr std::size_t kImplicationCount = 23;

  // A failed check on one magma, described in 1-based notation.
  using Refutation = std::optional<std::string>;

  struct Implication {
    ImplicationId           id;
    std::string_view        name;
    std::string_view        statement;
    // Laws defining the enumerated universe.
    std::vector<IdentityId> universe;
    // Extra hypothesis applied to each model of the universe.
    std::function<bool(Magma const&)>       hypothesis;
    std::function<Refutation(Magma const&)> conclusion;
  };

  namespace detail {

    inline std::string tuple_string(std::vector<Element> const& v) {
      std::string s = "(";
      for (std::size_t i = 0; i < v.size(); ++i) {
        s += (i ? ", " : "") + std::to_string(v[i] + 1);
      }
      return s + ")";
    }

    inline std::function<Refutation(Magma const&)> satisfies(IdentityId id) {
      return [id](Magma const& m) -> Refutation {
        auto const v = check_identity(m, id);
        if (v.holds) {
          return std::nullopt;
        }
        return std::string(name(id)) + " fails at "
               + tuple_string(v.witness->elements) + ": "
               + std::to_string(v.witness->lhs + 1)
               + " != " + std::to_string(v.witness->rhs + 1);
      };
    }

    inline std::function<Refutation(Magma const&)>
    satisfies_all(std::vector<IdentityId> ids) {
      return [ids](Magma const& m) -> Refutation {
        for (IdentityId id : ids) {
          if (auto r = satisfies(id)(m)) {
            return r;
          }
        }
        return std::nullopt;
      };
    }

    inline std::string containment_failure(std::string_view lhs_name,
                                           SubsetMask       lhs,
                                           std::string_view rhs_name,
                                           SubsetMask       rhs) {
      return std::string(lhs_name) + " = " + to_string(lhs) + " is not within "
             + std::string(rhs_name) + " = " + to_string(rhs);
    }

    inline std::uint64_t subset_count(Magma const& m) {
      return std::uint64_t{1} << m.order();
    }

    // S(AB) in BA, S(BA) in AB, (AB)S in BA, (BA)S in AB for all A, B.
    inline Refutation connected_lemma(Magma const& m) {
      SubsetMask const S = whole(m);
      for (std::uint64_t a = 0; a < subset_count(m); ++a) {
        for (std::uint64_t b = 0; b < subset_count(m); ++b) {
          SubsetMask const A(a), B(b);
          SubsetMask const AB = set_product(m, A, B);
          SubsetMask const BA = set_product(m, B, A);
          auto const       c  = connectedness(m, AB, BA);
          if (c.connected()) {
            continue;
          }
          std::string const where
              = "A = " + to_string(A) + ", B = " + to_string(B) + ": ";
          if (!set_product(m, S, AB).is_subset_of(BA)) {
            return where
                   + containment_failure("S(AB)", set_product(m, S, AB), "BA",
                                         BA);
          }
          if (!set_product(m, S, BA).is_subset_of(AB)) {
            return where
                   + containment_failure("S(BA)", set_product(m, S, BA), "AB",
                                         AB);
          }
          if (!set_product(m, AB, S).is_subset_of(BA)) {
            return where
                   + containment_failure("(AB)S", set_product(m, AB, S), "BA",
                                         BA);
          }
          return where
                 + containment_failure("(BA)S", set_product(m, BA, S), "AB",
                                       AB);
        }
      }
      return std::nullopt;
    }

    inline Refutation square_of_left_ideal(Magma const& m) {
      for (std::uint64_t bits = 0; bits < subset_count(m); ++bits) {
        SubsetMask const L(bits);
        if (!is_left_ideal(m, L)) {
          continue;
        }
        SubsetMask const LL = set_product(m, L, L);
        if (!is_ideal(m, LL)) {
          return "L = " + to_string(L) + ": L^2 = " + to_string(LL)
                 + " is not an ideal";
        }
      }
      return std::nullopt;
    }

    inline Refutation principal_ideal(Magma const& m, char which) {
      for (std::size_t i = 0; i < m.order(); ++i) {
        auto const       a = static_cast<Element>(i);
        auto const       p = principal_sets(m, a);
        std::string const at = "a = " + std::to_string(i + 1) + ": ";
        switch (which) {
          case 'a':
            if (!is_ideal(m, p.aS)) {
              return at + "aS = " + to_string(p.aS) + " is not an ideal";
            }
            break;
          case 'b':
            if (!is_ideal(m, p.a_Sa)) {
              return at + "a(Sa) = " + to_string(p.a_Sa) + " is not an ideal";
            }
            if (!is_minimal_ideal_for(m, a, p.a_Sa)) {
              return at + "a(Sa) = " + to_string(p.a_Sa)
                     + " is not contained in every ideal containing a";
            }
            break;
          default:
            if (!is_ideal(m, p.aS_a)) {
              return at + "(aS)a = " + to_string(p.aS_a) + " is not an ideal";
            }
            break;
        }
      }
      return std::nullopt;
    }

    // xL = L n xS, Rx = Sx n R and Sy n xS = x(Sy) for every left ideal L,
    // right ideal R and idempotents x, y. Each identity involves only part
    // of (L, R, x, y), and S is always both a left and a right ideal, so the
    // three are checked separately.
    inline Refutation idempotent_identities(Magma const& m) {
      SubsetMask const     S = whole(m);
      std::vector<Element> idempotents;
      for (std::size_t i = 0; i < m.order(); ++i) {
        auto const e = static_cast<Element>(i);
        if (m(e, e) == e) {
          idempotents.push_back(e);
        }
      }
      for (Element x : idempotents) {
        SubsetMask const sx = SubsetMask::singleton(x);
        SubsetMask const xS = set_product(m, sx, S);
        SubsetMask const Sx = set_product(m, S, sx);
        std::string const at = "x = " + std::to_string(x + 1) + ", ";
        for (std::uint64_t bits = 0; bits < subset_count(m); ++bits) {
          SubsetMask const T(bits);
          if (is_left_ideal(m, T)
              && set_product(m, sx, T) != (T & xS)) {
            return at + "L = " + to_string(T) + ": xL = "
                   + to_string(set_product(m, sx, T)) + " but L n xS = "
                   + to_string(T & xS);
          }
          if (is_right_ideal(m, T)
              && set_product(m, T, sx) != (Sx & T)) {
            return at + "R = " + to_string(T) + ": Rx = "
                   + to_string(set_product(m, T, sx)) + " but Sx n R = "
                   + to_string(Sx & T);
          }
        }
        for (Element y : idempotents) {
          SubsetMask const Sy = set_product(m, S, SubsetMask::singleton(y));
          SubsetMask const xSy = set_product(m, sx, Sy);
          if ((Sy & xS) != xSy) {
            return at + "y = " + std::to_string(y + 1) + ": Sy n xS = "
                   + to_string(Sy & xS) + " but x(Sy) = " + to_string(xSy);
          }
        }
      }
      return std::nullopt;
    }

    inline bool has_one_sided_cancellative_element(Magma const& m) {
      return !(left_cancellative_elements(m) | right_cancellative_elements(m))
                  .empty();
    }

    inline std::array<Implication, kImplicationCount> make_implications() {
      using I = IdentityId;
      using J = ImplicationId;
      std::vector<IdentityId> const stein{I::LeftInvertive, I::Stein};
      auto const any = [](Magma const&) { return true; };
      auto prop1 = [&](J id, std::string_view nm, std::string_view st,
                       IdentityId target) {
        return Implication{id, nm, st, stein, any, satisfies(target)};
      };
      return {
          prop1(J::Prop1a, "Prop1a", "Stein AG => locally associative",
                I::LocallyAssociative),
          prop1(J::Prop1b, "Prop1b", "Stein AG => right alternative",
                I::RightAlternative),
          prop1(J::Prop1c, "Prop1c", "Stein AG => AG**", I::AGStarStar),
          prop1(J::Prop1d, "Prop1d", "Stein AG => Bol*", I::BolStar),
          prop1(J::Prop1e, "Prop1e", "Stein AG => paramedial", I::Paramedial),
          prop1(J::Prop1f, "Prop1f", "Stein AG => left nuclear square",
                I::LeftNuclearSquare),
          prop1(J::Prop1g, "Prop1g", "Stein AG => right nuclear square",
                I::RightNuclearSquare),
          prop1(J::Prop1h, "Prop1h", "Stein AG => middle nuclear square",
                I::MiddleNuclearSquare),
          Implication{J::Prop1i, "Prop1i", "Stein AG => nuclear square", stein,
                      any,
                      satisfies_all({I::LeftNuclearSquare,
                                     I::MiddleNuclearSquare,
                                     I::RightNuclearSquare})},
          Implication{J::Lemma1, "Lemma1", "AG** => Bol*",
                      {I::LeftInvertive, I::AGStarStar}, any,
                      satisfies(I::BolStar)},
          Implication{J::Lemma2, "Lemma2", "Bol* AG => paramedial",
                      {I::LeftInvertive, I::BolStar}, any,
                      satisfies(I::Paramedial)},
          Implication{J::Lemma3, "Lemma3", "AG** => left nuclear square",
                      {I::LeftInvertive, I::AGStarStar}, any,
                      satisfies(I::LeftNuclearSquare)},
          Implication{J::SemigroupAGStar, "SemigroupAGStar",
                      "Stein AG and AG* => associative",
                      {I::LeftInvertive, I::Stein, I::AGStar}, any,
                      satisfies(I::Associative)},
          Implication{J::SemigroupAG3Band, "SemigroupAG3Band",
                      "Stein AG and AG-3-band => associative",
                      {I::LeftInvertive, I::Stein, I::AG3Band}, any,
                      satisfies(I::Associative)},
          Implication{J::SemigroupT4, "SemigroupT4",
                      "Stein AG and (T4f or T4b) => associative", stein,
                      [](Magma const& m) {
                        return holds(m, I::T4f) || holds(m, I::T4b);
                      },
                      satisfies(I::Associative)},
          Implication{J::SemigroupCancellative, "SemigroupCancellative",
                      "Stein AG with a left or right cancellative element => "
                      "associative",
                      stein, has_one_sided_cancellative_element,
                      satisfies(I::Associative)},
          Implication{J::MedialAlways, "MedialAlways", "AG => medial",
                      {I::LeftInvertive}, any, satisfies(I::Medial)},
          Implication{J::ConnectedLemma, "ConnectedLemma",
                      "Stein AG => AB and BA are left and right connected",
                      stein, any, connected_lemma},
          Implication{J::L2Ideal, "L2Ideal",
                      "Stein AG => L^2 is an ideal for every left ideal L",
                      stein, any, square_of_left_ideal},
          Implication{J::IdealThmA, "IdealThmA", "Stein AG => aS is an ideal",
                      stein, any,
                      [](Magma const& m) { return principal_ideal(m, 'a'); }},
          Implication{J::IdealThmB, "IdealThmB",
                      "Stein AG => a(Sa) is an ideal inside every ideal "
                      "containing a",
                      stein, any,
                      [](Magma const& m) { return principal_ideal(m, 'b'); }},
          Implication{J::IdealThmC, "IdealThmC",
                      "Stein AG => (aS)a is an ideal", stein, any,
                      [](Magma const& m) { return principal_ideal(m, 'c'); }},
          Implication{J::IdempotentThm, "IdempotentThm",
                      "Stein AG, x = xx, y = yy => xL = L n xS, Rx = Sx n R, "
                      "Sy n xS = x(Sy)",
                      stein, any, idempotent_identities},
      };
    }
  }  // namespace detail

  inline Implication const& implication(ImplicationId id) {
    static std::array<Implication, kImplicationCount> const all
        = detail::make_implications();
    return all[static_cast<std::size_t>(id)];
  }

  inline std::vector<ImplicationId> all_implications() {
    std::vector<ImplicationId> out;
    for (std::size_t i = 0; i < kImplicationCount; ++i) {
      out.push_back(static_cast<ImplicationId>(i));
    }
    return out;
  }

  inline std::optional<ImplicationId> implication_from_name(std::string_view s) {
    for (ImplicationId id : all_implications()) {
      if (implication(id).name == s) {
        return id;
      }
    }
    return std::nullopt;
  }

  // Named groups used by the command line.
  inline std::optional<std::vector<ImplicationId>>
  implication_group(std::string_view group) {
    using J = ImplicationId;
    if (group == "prop1") {
      return std::vector{J::Prop1a, J::Prop1b, J::Prop1c, J::Prop1d, J::Prop1e,
                         J::Prop1f, J::Prop1g, J::Prop1h, J::Prop1i};
    }
    if (group == "semigroup") {
      return std::vector{J::SemigroupAGStar, J::SemigroupAG3Band,
                         J::SemigroupT4, J::SemigroupCancellative};
    }
    if (group == "ideals") {
      return std::vector{J::ConnectedLemma, J::L2Ideal, J::IdealThmA,
                         J::IdealThmB, J::IdealThmC, J::IdempotentThm};
    }
    if (group == "lemmas") {
      return std::vector{J::Lemma1, J::Lemma2, J::Lemma3, J::MedialAlways};
    }
    if (group == "all") {
      return all_implications();
    }
    return std::nullopt;
  }

  ////////////////////////////////////////////////////////////////////////
  // Suite
  ////////////////////////////////////////////////////////////////////////

  struct SuiteViolation {
    std::size_t order;
    Magma       magma;  // canonical form
    std::string witness;
  };

  struct ImplicationReport {
    ImplicationId               id;
    std::uint64_t               universe_size = 0;  // models meeting the hypothesis
    std::vector<SuiteViolation> violations;
    bool                        complete = true;

    bool verified() const noexcept {
      return complete && violations.empty();
    }
  };

  struct SuiteReport {
    std::vector<std::size_t>       orders;
    std::vector<ImplicationReport> implications;

    bool complete() const noexcept {
      for (auto const& r : implications) {
        if (!r.complete) {
          return false;
        }
      }
      return true;
    }

    bool has_violations() const noexcept {
      for (auto const& r : implications) {
        if (!r.violations.empty()) {
          return true;
        }
      }
      return false;
    }

    bool verified() const noexcept {
      return complete() && !has_violations();
    }
  };

  struct SuiteOptions {
    Budget      budget;
    std::size_t worker_count   = 1;
    std::size_t max_violations = 10;  // per implication
  };

  // Enumerations shared between implications with the same universe.
  class UniverseCache {
   public:
    explicit UniverseCache(SuiteOptions opts) : _opts(opts) {}

    EnumerationResult const& get(std::size_t                    order,
                                 std::vector<IdentityId> const& laws) {
      auto key = std::pair{order, laws};
      auto it  = _cache.find(key);
      if (it == _cache.end()) {
        EnumerationSpec spec;
        spec.order        = order;
        spec.required     = laws;
        spec.mode         = EnumerationMode::Collect;
        spec.worker_count = _opts.worker_count;
        spec.budget       = _opts.budget;
        it = _cache.emplace(std::move(key), enumerate(spec)).first;
      }
      return it->second;
    }

   private:
    SuiteOptions                                                     _opts;
    std::map<std::pair<std::size_t, std::vector<IdentityId>>, EnumerationResult>
        _cache;
  };

  inline SuiteReport run_suite(std::vector<std::size_t> const&   orders,
                               std::vector<ImplicationId> const& implications,
                               SuiteOptions const&               opts = {}) {
    SuiteReport   report;
    UniverseCache cache(opts);
    report.orders = orders;
    for (ImplicationId id : implications) {
      Implication const& imp = implication(id);
      ImplicationReport  r;
      r.id = id;
      for (std::size_t n : orders) {
        auto const& universe = cache.get(n, imp.universe);
        if (!universe.complete()) {
          r.complete = false;
        }
        for (Magma const& m : *universe.models) {
          if (!imp.hypothesis(m)) {
            continue;
          }
          ++r.universe_size;
          if (auto why = imp.conclusion(m);
              why && r.violations.size() < opts.max_violations) {
            r.violations.push_back({n, m, *why});
          }
        }
      }
      report.implications.push_back(std::move(r));
    }
    return report;
  }

  ////////////////////////////////////////////////////////////////////////
  // Converse counterexamples
  ////////////////////////////////////////////////////////////////////////

  struct ConverseResult {
    std::optional<Magma> witness;  // canonical form
    bool                 complete = true;
  };

  // The smallest, then canonically least, AG-groupoid satisfying `from` but
  // not `to` among the given orders.
  inline ConverseResult find_converse_counterexample(
      std::vector<std::size_t> orders,
      IdentityId               from,
      IdentityId               to,
      SuiteOptions const&      opts = {}) {
    std::sort(orders.begin(), orders.end());
    ConverseResult          result;
    std::vector<IdentityId> laws{IdentityId::LeftInvertive};
    if (!is_implication(from) && from != IdentityId::LeftInvertive) {
      laws.push_back(from);
    }
    for (std::size_t n : orders) {
      EnumerationSpec spec;
      spec.order        = n;
      spec.required     = laws;
      spec.mode         = EnumerationMode::Collect;
      spec.worker_count = opts.worker_count;
      spec.budget       = opts.budget;
      auto const r      = enumerate(spec);
      // An interrupted search may have missed a smaller witness.
      result.complete = r.complete();
      for (Magma const& m : *r.models) {
        if (holds(m, from) && !holds(m, to)) {
          result.witness = m;
          return result;
        }
      }
      if (!result.complete) {
        return result;
      }
    }
    return result;
  }

}  // namespace agx
