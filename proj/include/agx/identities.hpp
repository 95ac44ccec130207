// agx - finite magma identity checking and enumeration
//
// The catalogue of AG-groupoid identities, exhaustive membership checks with
// counterexample witnesses, and the extended-table Stein test.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "agx/magma.hpp"
#include "agx/subset.hpp"

namespace agx {

  enum class IdentityId : std::uint8_t {
    LeftInvertive,
    Stein,
    Medial,
    Paramedial,
    AGStar,
    AGStarStar,
    BolStar,
    LeftNuclearSquare,
    MiddleNuclearSquare,
    RightNuclearSquare,
    RightAlternative,
    AG3Band,
    LocallyAssociative,
    T4f,
    T4b,
    Associative,
    Commutative,
  };

  inline constexpr std::size_t kIdentityCount = 17;

  inline constexpr std::array<IdentityId, kIdentityCount> kAllIdentities{
      IdentityId::LeftInvertive,       IdentityId::Stein,
      IdentityId::Medial,              IdentityId::Paramedial,
      IdentityId::AGStar,              IdentityId::AGStarStar,
      IdentityId::BolStar,             IdentityId::LeftNuclearSquare,
      IdentityId::MiddleNuclearSquare, IdentityId::RightNuclearSquare,
      IdentityId::RightAlternative,    IdentityId::AG3Band,
      IdentityId::LocallyAssociative,  IdentityId::T4f,
      IdentityId::T4b,                 IdentityId::Associative,
      IdentityId::Commutative};

  constexpr std::size_t index(IdentityId id) noexcept {
    return static_cast<std::size_t>(id);
  }

  ////////////////////////////////////////////////////////////////////////
  // Terms
  ////////////////////////////////////////////////////////////////////////

  // A term over variables 0..3 built from var() and operator*, stored in
  // post-order so that children always precede their parent and the root is
  // the last node.
  class Term {
   public:
    struct Node {
      bool         is_var;
      std::uint8_t left;   // variable index when is_var
      std::uint8_t right;
    };

    static Term var(std::uint8_t i) {
      Term t;
      t._nodes.push_back({true, i, 0});
      return t;
    }

    friend Term operator*(Term const& x, Term const& y) {
      Term t;
      t._nodes = x._nodes;
      auto const offset = static_cast<std::uint8_t>(x._nodes.size());
      for (Node n : y._nodes) {
        if (!n.is_var) {
          n.left  = static_cast<std::uint8_t>(n.left + offset);
          n.right = static_cast<std::uint8_t>(n.right + offset);
        }
        t._nodes.push_back(n);
      }
      t._nodes.push_back({false,
                          static_cast<std::uint8_t>(offset - 1),
                          static_cast<std::uint8_t>(t._nodes.size() - 1)});
      return t;
    }

    std::vector<Node> const& nodes() const noexcept {
      return _nodes;
    }

    Element evaluate(Magma const& m, Element const* vars) const noexcept {
      std::array<Element, 16> slot{};
      for (std::size_t i = 0; i < _nodes.size(); ++i) {
        Node const& n = _nodes[i];
        slot[i] = n.is_var ? vars[n.left] : m(slot[n.left], slot[n.right]);
      }
      return slot[_nodes.size() - 1];
    }

   private:
    std::vector<Node> _nodes;
  };

  // An equational law lhs = rhs, or for implications
  // premise_lhs = premise_rhs => lhs = rhs.
  struct Law {
    IdentityId       id;
    std::string_view name;
    std::string_view text;
    std::size_t      arity;
    bool             implication;
    Term             lhs;
    Term             rhs;
    Term             premise_lhs;
    Term             premise_rhs;
  };

  namespace detail {
    inline std::array<Law, kIdentityCount> make_catalog() {
      Term const a = Term::var(0);
      Term const b = Term::var(1);
      Term const c = Term::var(2);
      Term const d = Term::var(3);
      auto eq      = [](IdentityId       id,
                   std::string_view name,
                   std::string_view text,
                   std::size_t      arity,
                   Term             l,
                   Term             r) {
        return Law{id, name, text, arity, false, l, r, Term(), Term()};
      };
      using I = IdentityId;
      return {
          eq(I::LeftInvertive, "LeftInvertive", "(ab)c = (cb)a", 3,
             (a * b) * c, (c * b) * a),
          eq(I::Stein, "Stein", "a(bc) = (bc)a", 3, a * (b * c), (b * c) * a),
          eq(I::Medial, "Medial", "(ab)(cd) = (ac)(bd)", 4, (a * b) * (c * d),
             (a * c) * (b * d)),
          eq(I::Paramedial, "Paramedial", "(ab)(cd) = (db)(ca)", 4,
             (a * b) * (c * d), (d * b) * (c * a)),
          eq(I::AGStar, "AGStar", "(ab)c = b(ac)", 3, (a * b) * c,
             b * (a * c)),
          eq(I::AGStarStar, "AGStarStar", "a(bc) = b(ac)", 3, a * (b * c),
             b * (a * c)),
          eq(I::BolStar, "BolStar", "a((bc)d) = ((ab)c)d", 4,
             a * ((b * c) * d), ((a * b) * c) * d),
          eq(I::LeftNuclearSquare, "LeftNuclearSquare", "((aa)b)c = (aa)(bc)",
             3, ((a * a) * b) * c, (a * a) * (b * c)),
          eq(I::MiddleNuclearSquare, "MiddleNuclearSquare",
             "(a(bb))c = a((bb)c)", 3, (a * (b * b)) * c,
             a * ((b * b) * c)),
          eq(I::RightNuclearSquare, "RightNuclearSquare",
             "(ab)(cc) = a(b(cc))", 3, (a * b) * (c * c), a * (b * (c * c))),
          eq(I::RightAlternative, "RightAlternative", "a(bb) = (ab)b", 2,
             a * (b * b), (a * b) * b),
          eq(I::AG3Band, "AG3Band", "a(aa) = a", 1, a * (a * a), a),
          eq(I::LocallyAssociative, "LocallyAssociative", "a(aa) = (aa)a", 1,
             a * (a * a), (a * a) * a),
          Law{I::T4f, "T4f", "ab = cd => ad = cb", 4, true, a * d, c * b,
              a * b, c * d},
          Law{I::T4b, "T4b", "ab = cd => da = bc", 4, true, d * a, b * c,
              a * b, c * d},
          eq(I::Associative, "Associative", "(ab)c = a(bc)", 3, (a * b) * c,
             a * (b * c)),
          eq(I::Commutative, "Commutative", "ab = ba", 2, a * b, b * a),
      };
    }
  }  // namespace detail

  inline Law const& law(IdentityId id) {
    static std::array<Law, kIdentityCount> const catalog
        = detail::make_catalog();
    return catalog[index(id)];
  }

  inline std::string_view name(IdentityId id) {
    return law(id).name;
  }

  inline std::optional<IdentityId> identity_from_name(std::string_view s) {
    for (IdentityId id : kAllIdentities) {
      if (name(id) == s) {
        return id;
      }
    }
    return std::nullopt;
  }

  inline bool is_implication(IdentityId id) {
    return law(id).implication;
  }

  ////////////////////////////////////////////////////////////////////////
  // Checking
  ////////////////////////////////////////////////////////////////////////

  // A violating assignment of the law's variables together with the two
  // sides of the (conclusion) equation, which differ.
  struct Witness {
    std::vector<Element> elements;
    Element              lhs;
    Element              rhs;

    friend bool operator==(Witness const&, Witness const&) = default;
  };

  struct Verdict {
    bool                   holds = true;
    std::optional<Witness> witness;
  };

  namespace detail {
    // Visits all tuples in lexicographic order (first variable most
    // significant) until `f` returns false.
    template <typename F>
    void for_each_tuple(std::size_t n, std::size_t arity, F&& f) {
      std::array<Element, 4> v{};
      while (true) {
        if (!f(v.data())) {
          return;
        }
        std::size_t k = arity;
        while (k > 0) {
          --k;
          if (++v[k] < n) {
            break;
          }
          v[k] = 0;
          if (k == 0) {
            return;
          }
        }
        if (arity == 0) {
          return;
        }
      }
    }
  }  // namespace detail

  // Exhaustively checks the law; on failure returns the lexicographically
  // first violating tuple.
  inline Verdict check_identity(Magma const& m, IdentityId id) {
    Law const& l = law(id);
    Verdict    v;
    detail::for_each_tuple(m.order(), l.arity, [&](Element const* t) {
      if (l.implication
          && l.premise_lhs.evaluate(m, t) != l.premise_rhs.evaluate(m, t)) {
        return true;
      }
      Element const x = l.lhs.evaluate(m, t);
      Element const y = l.rhs.evaluate(m, t);
      if (x != y) {
        v.holds   = false;
        v.witness = Witness{std::vector<Element>(t, t + l.arity), x, y};
        return false;
      }
      return true;
    });
    return v;
  }

  inline bool holds(Magma const& m, IdentityId id) {
    return check_identity(m, id).holds;
  }

  // Re-evaluates a witness; true if it exhibits a violation of the law.
  inline bool witness_violates(Magma const&   m,
                               IdentityId     id,
                               Witness const& w) {
    Law const& l = law(id);
    if (w.elements.size() != l.arity) {
      return false;
    }
    for (Element e : w.elements) {
      if (e >= m.order()) {
        return false;
      }
    }
    std::array<Element, 4> t{};
    std::copy(w.elements.begin(), w.elements.end(), t.begin());
    if (l.implication
        && l.premise_lhs.evaluate(m, t.data())
               != l.premise_rhs.evaluate(m, t.data())) {
      return false;
    }
    Element const x = l.lhs.evaluate(m, t.data());
    Element const y = l.rhs.evaluate(m, t.data());
    return x != y && x == w.lhs && y == w.rhs;
  }

  ////////////////////////////////////////////////////////////////////////
  // Cancellative elements
  ////////////////////////////////////////////////////////////////////////

  // x is left cancellative when a -> x * a is injective.
  inline SubsetMask left_cancellative_elements(Magma const& m) {
    SubsetMask        out;
    std::size_t const n = m.order();
    for (std::size_t x = 0; x < n; ++x) {
      SubsetMask image;
      for (std::size_t a = 0; a < n; ++a) {
        image.insert(m(static_cast<Element>(x), static_cast<Element>(a)));
      }
      if (image.size() == n) {
        out.insert(static_cast<Element>(x));
      }
    }
    return out;
  }

  // x is right cancellative when a -> a * x is injective.
  inline SubsetMask right_cancellative_elements(Magma const& m) {
    SubsetMask        out;
    std::size_t const n = m.order();
    for (std::size_t x = 0; x < n; ++x) {
      SubsetMask image;
      for (std::size_t a = 0; a < n; ++a) {
        image.insert(m(static_cast<Element>(a), static_cast<Element>(x)));
      }
      if (image.size() == n) {
        out.insert(static_cast<Element>(x));
      }
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Classification
  ////////////////////////////////////////////////////////////////////////

  struct ClassificationReport {
    std::size_t                           order = 0;
    std::array<Verdict, kIdentityCount>   verdicts;
    SubsetMask                            left_cancellative;
    SubsetMask                            right_cancellative;
    SubsetMask                            cancellative;

    Verdict const& operator[](IdentityId id) const noexcept {
      return verdicts[index(id)];
    }

    bool is_cancellative() const noexcept {
      return cancellative == SubsetMask::full(order);
    }
  };

  inline ClassificationReport classify(Magma const& m) {
    ClassificationReport r;
    r.order = m.order();
    for (IdentityId id : kAllIdentities) {
      r.verdicts[index(id)] = check_identity(m, id);
    }
    r.left_cancellative  = left_cancellative_elements(m);
    r.right_cancellative = right_cancellative_elements(m);
    r.cancellative       = r.left_cancellative & r.right_cancellative;
    // Every AG-groupoid is medial.
    if (r[IdentityId::LeftInvertive].holds && !r[IdentityId::Medial].holds) {
      throw std::logic_error(
          "internal error: left invertive magma reported as non-medial:\n"
          + serialize_table(m));
    }
    return r;
  }

  enum class MagmaClass { AG, SteinAG };

  inline bool is_member(Magma const& m, MagmaClass c) {
    if (!holds(m, IdentityId::LeftInvertive)) {
      return false;
    }
    return c == MagmaClass::AG || holds(m, IdentityId::Stein);
  }

  ////////////////////////////////////////////////////////////////////////
  // Extended-table Stein test
  ////////////////////////////////////////////////////////////////////////

  // For a fixed x: circle(a, b) = a(bx) and triangle(a, b) = (bx)a, both
  // row-major in a.
  struct SteinTables {
    Element              x;
    std::vector<Element> circle;
    std::vector<Element> triangle;
  };

  struct SteinTestResult {
    bool                     holds = true;
    // elements = {a, b, x}; lhs = a o b, rhs = a ^ b.
    std::optional<Witness>   witness;
    std::vector<SteinTables> tables;
  };

  // Builds both derived tables for every x and compares them; the first
  // mismatch is taken in order of x, then a, then b.
  inline SteinTestResult stein_test(Magma const& m, bool emit_tables = false) {
    std::size_t const n = m.order();
    SteinTestResult   result;
    for (std::size_t xi = 0; xi < n; ++xi) {
      auto const  x = static_cast<Element>(xi);
      SteinTables t{x, std::vector<Element>(n * n), std::vector<Element>(n * n)};
      for (std::size_t ai = 0; ai < n; ++ai) {
        for (std::size_t bi = 0; bi < n; ++bi) {
          auto const    a  = static_cast<Element>(ai);
          auto const    b  = static_cast<Element>(bi);
          Element const bx = m(b, x);
          Element const l  = m(a, bx);
          Element const r  = m(bx, a);
          t.circle[ai * n + bi]   = l;
          t.triangle[ai * n + bi] = r;
          if (l != r && result.holds) {
            result.holds   = false;
            result.witness = Witness{{a, b, x}, l, r};
          }
        }
      }
      if (emit_tables) {
        result.tables.push_back(std::move(t));
      } else if (!result.holds) {
        break;
      }
    }
    return result;
  }

  // Renders the extended table: the operation table, the o-tables for each x
  // to its right, and below it one block per x whose index column is the
  // x-column of the table (the values bx) and whose row bx holds (bx)a, so
  // that each lower block can be read against the matching right block.
  inline std::string render_stein_tables(Magma const&           m,
                                         SteinTestResult const& r) {
    std::size_t const n     = m.order();
    std::size_t const width = std::to_string(n).size();
    auto cell = [&](std::size_t v) {
      std::string s = std::to_string(v);
      return std::string(width - s.size(), ' ') + s;
    };
    auto row_of = [&](std::vector<Element> const& tab, std::size_t row) {
      std::string s;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != 0) {
          s += ' ';
        }
        s += cell(tab[row * n + j] + 1u);
      }
      return s;
    };
    std::size_t const block = n * width + (n - 1);
    std::string       rule  = std::string(width, '-') + "-+-"
                       + std::string(block, '-') + "-+";
    std::string out;

    out += std::string(width - 1, ' ') + "* | ";
    for (std::size_t j = 0; j < n; ++j) {
      if (j != 0) {
        out += ' ';
      }
      out += cell(j + 1);
    }
    out += " |\n";
    std::string full_rule = rule;
    for (std::size_t x = 0; x < r.tables.size(); ++x) {
      full_rule += std::string(block + 2, '-') + "+";
    }
    out += full_rule + "\n";
    for (std::size_t a = 0; a < n; ++a) {
      out += cell(a + 1) + " | " + row_of(m.table(), a) + " |";
      for (auto const& t : r.tables) {
        out += " " + row_of(t.circle, a) + " |";
      }
      out += "\n";
    }
    for (auto const& t : r.tables) {
      out += rule + "\n";
      for (std::size_t b = 0; b < n; ++b) {
        Element const bx = m(static_cast<Element>(b), t.x);
        std::string   s;
        for (std::size_t a = 0; a < n; ++a) {
          if (a != 0) {
            s += ' ';
          }
          s += cell(t.triangle[a * n + b] + 1u);
        }
        out += cell(bx + 1u) + " | " + s + " |\n";
      }
    }
    out += rule + "\n";
    if (r.holds) {
      out += "tables coincide for every x\n";
    } else {
      auto const& w = *r.witness;
      out += "tables differ at x = " + std::to_string(w.elements[2] + 1)
             + ", a = " + std::to_string(w.elements[0] + 1)
             + ", b = " + std::to_string(w.elements[1] + 1)
             + ": a o b = " + std::to_string(w.lhs + 1)
             + ", a ^ b = " + std::to_string(w.rhs + 1) + "\n";
    }
    return out;
  }

}  // namespace agx
