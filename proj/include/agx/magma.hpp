// agx - finite magma identity checking and enumeration
//
// Finite magmas stored as dense Cayley tables, the relabelling action of the
// symmetric group on them, minlex canonical forms, and the .tbl text format.

#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace agx {

  using Element = std::uint8_t;

  // Subsets are 64-bit masks, so no magma may exceed this order.
  inline constexpr std::size_t kMaxOrder = 64;

  // canonical_form scans all n! relabellings.
  inline constexpr std::size_t kMaxCanonicalOrder = 8;

  class ParseError : public std::runtime_error {
   public:
    ParseError(std::size_t line, std::size_t column, std::string const& what)
        : std::runtime_error("line " + std::to_string(line) + ", column "
                             + std::to_string(column) + ": " + what),
          _line(line),
          _column(column) {}

    std::size_t line() const noexcept {
      return _line;
    }
    std::size_t column() const noexcept {
      return _column;
    }

   private:
    std::size_t _line;
    std::size_t _column;
  };

  ////////////////////////////////////////////////////////////////////////
  // Magma
  ////////////////////////////////////////////////////////////////////////

  // A finite set {0, ..., n - 1} with a total binary operation. The table is
  // row-major: entry a * n + b holds the product a * b.
  class Magma {
   public:
    Magma() : _order(1), _table{0} {}

    Magma(std::size_t order, std::vector<Element> table)
        : _order(order), _table(std::move(table)) {
      if (_order == 0 || _order > kMaxOrder) {
        throw std::invalid_argument("magma order must be in [1, "
                                    + std::to_string(kMaxOrder) + "], got "
                                    + std::to_string(_order));
      }
      if (_table.size() != _order * _order) {
        throw std::invalid_argument("table has " + std::to_string(_table.size())
                                    + " entries, expected "
                                    + std::to_string(_order * _order));
      }
      for (Element e : _table) {
        if (e >= _order) {
          throw std::invalid_argument("table entry " + std::to_string(e)
                                      + " is not an element of the magma");
        }
      }
    }

    template <typename Op>
    static Magma from_function(std::size_t order, Op&& op) {
      std::vector<Element> table(order * order);
      for (std::size_t a = 0; a < order; ++a) {
        for (std::size_t b = 0; b < order; ++b) {
          table[a * order + b] = static_cast<Element>(
              op(static_cast<Element>(a), static_cast<Element>(b)));
        }
      }
      return Magma(order, std::move(table));
    }

    static Magma constant(std::size_t order, Element value = 0) {
      return Magma(order, std::vector<Element>(order * order, value));
    }

    std::size_t order() const noexcept {
      return _order;
    }

    Element operator()(Element a, Element b) const noexcept {
      return _table[a * _order + b];
    }

    std::vector<Element> const& table() const noexcept {
      return _table;
    }

    friend bool operator==(Magma const&, Magma const&) = default;

    // Orders first by size, then lexicographically by row-major table.
    friend std::strong_ordering operator<=>(Magma const& x, Magma const& y) {
      if (auto c = x._order <=> y._order; c != 0) {
        return c;
      }
      return std::lexicographical_compare_three_way(x._table.begin(),
                                                    x._table.end(),
                                                    y._table.begin(),
                                                    y._table.end());
    }

   private:
    std::size_t          _order;
    std::vector<Element> _table;
  };

  inline Element product(Magma const& m, Element a, Element b) noexcept {
    return m(a, b);
  }

  ////////////////////////////////////////////////////////////////////////
  // Permutation
  ////////////////////////////////////////////////////////////////////////

  class Permutation {
   public:
    explicit Permutation(std::vector<Element> mapping)
        : _mapping(std::move(mapping)) {
      std::vector<bool> seen(_mapping.size(), false);
      for (Element e : _mapping) {
        if (e >= _mapping.size() || seen[e]) {
          throw std::invalid_argument("mapping is not a bijection");
        }
        seen[e] = true;
      }
    }

    static Permutation identity(std::size_t n) {
      std::vector<Element> v(n);
      std::iota(v.begin(), v.end(), Element{0});
      return Permutation(std::move(v));
    }

    std::size_t size() const noexcept {
      return _mapping.size();
    }

    Element operator[](Element i) const noexcept {
      return _mapping[i];
    }

    std::vector<Element> const& mapping() const noexcept {
      return _mapping;
    }

    Permutation inverse() const {
      std::vector<Element> inv(_mapping.size());
      for (std::size_t i = 0; i < _mapping.size(); ++i) {
        inv[_mapping[i]] = static_cast<Element>(i);
      }
      return Permutation(std::move(inv));
    }

    friend bool operator==(Permutation const&, Permutation const&) = default;

   private:
    std::vector<Element> _mapping;
  };

  // Returns m' with m'(p(a), p(b)) = p(m(a, b)).
  inline Magma apply_permutation(Magma const& m, Permutation const& p) {
    std::size_t const n = m.order();
    if (p.size() != n) {
      throw std::invalid_argument("permutation has length "
                                  + std::to_string(p.size())
                                  + " but magma has order "
                                  + std::to_string(n));
    }
    std::vector<Element> table(n * n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        auto const x = static_cast<Element>(a);
        auto const y = static_cast<Element>(b);
        table[p[x] * n + p[y]] = p[m(x, y)];
      }
    }
    return Magma(n, std::move(table));
  }

  ////////////////////////////////////////////////////////////////////////
  // Canonical forms
  ////////////////////////////////////////////////////////////////////////

  // The lexicographically least row-major table among all relabellings.
  struct CanonicalForm {
    Magma magma;

    friend bool operator==(CanonicalForm const&, CanonicalForm const&)
        = default;
    friend std::strong_ordering operator<=>(CanonicalForm const& x,
                                            CanonicalForm const& y) {
      return x.magma <=> y.magma;
    }
  };

  namespace detail {
    // Compares the image of m under the relabelling with inverse `inv` and
    // forward map `fwd` against `best`, writing the image into `best` when
    // it is smaller. Aborts at the first cell where the image is larger.
    inline bool improve_minlex(Magma const&               m,
                               std::vector<Element> const& fwd,
                               std::vector<Element> const& inv,
                               std::vector<Element>&       best) {
      std::size_t const n     = m.order();
      bool              less  = false;
      std::size_t       start = 0;
      for (std::size_t i = 0; i < n && !less; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          Element const img = fwd[m(inv[i], inv[j])];
          Element const cur = best[i * n + j];
          if (img < cur) {
            less  = true;
            start = i * n + j;
            break;
          }
          if (img > cur) {
            return false;
          }
        }
      }
      if (!less) {
        return false;
      }
      for (std::size_t k = start; k < n * n; ++k) {
        best[k] = fwd[m(inv[k / n], inv[k % n])];
      }
      return true;
    }
  }  // namespace detail

  inline CanonicalForm canonical_form(Magma const& m) {
    std::size_t const n = m.order();
    if (n > kMaxCanonicalOrder) {
      throw std::invalid_argument(
          "canonical_form scans all relabellings and supports order <= "
          + std::to_string(kMaxCanonicalOrder) + ", got "
          + std::to_string(n));
    }
    std::vector<Element> best = m.table();
    std::vector<Element> fwd(n);
    std::vector<Element> inv(n);
    std::iota(fwd.begin(), fwd.end(), Element{0});
    do {
      for (std::size_t i = 0; i < n; ++i) {
        inv[fwd[i]] = static_cast<Element>(i);
      }
      detail::improve_minlex(m, fwd, inv, best);
    } while (std::next_permutation(fwd.begin(), fwd.end()));
    return CanonicalForm{Magma(n, std::move(best))};
  }

  inline bool is_isomorphic(Magma const& x, Magma const& y) {
    if (x.order() != y.order()) {
      return false;
    }
    return canonical_form(x) == canonical_form(y);
  }

  ////////////////////////////////////////////////////////////////////////
  // .tbl text format
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    struct Token {
      std::string_view text;
      std::size_t      column;
    };

    inline std::vector<Token> split_whitespace(std::string_view line) {
      std::vector<Token> out;
      std::size_t        i = 0;
      while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) {
          ++i;
        }
        std::size_t const start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') {
          ++i;
        }
        if (i > start) {
          out.push_back({line.substr(start, i - start), start + 1});
        }
      }
      return out;
    }

    inline std::size_t parse_positive(Token const& tok, std::size_t line) {
      std::size_t value = 0;
      for (char c : tok.text) {
        if (c < '0' || c > '9') {
          throw ParseError(line,
                           tok.column,
                           "malformed integer '" + std::string(tok.text)
                               + "'");
        }
        value = value * 10 + static_cast<std::size_t>(c - '0');
        if (value > 1'000'000) {
          throw ParseError(line, tok.column, "integer too large");
        }
      }
      return value;
    }
  }  // namespace detail

  // Reads the .tbl format: '#' comment lines, the order n, then n rows of n
  // 1-based entries. Blank lines are ignored; CRLF is accepted.
  inline Magma parse_table(std::istream& in) {
    std::string          raw;
    std::size_t          lineno = 0;
    std::size_t          n      = 0;
    std::size_t          rows   = 0;
    std::vector<Element> table;
    while (std::getline(in, raw)) {
      ++lineno;
      std::string_view line(raw);
      if (!line.empty() && line.back() == '\r') {
        line.remove_suffix(1);
      }
      auto const first = line.find_first_not_of(" \t");
      if (first == std::string_view::npos) {
        continue;
      }
      if (line[first] == '#') {
        continue;
      }
      auto const tokens = detail::split_whitespace(line);
      if (n == 0) {
        if (tokens.size() != 1) {
          throw ParseError(lineno, tokens[1].column,
                           "expected a single integer order");
        }
        n = detail::parse_positive(tokens[0], lineno);
        if (n == 0 || n > kMaxOrder) {
          throw ParseError(lineno, tokens[0].column,
                           "order must be in [1, " + std::to_string(kMaxOrder)
                               + "]");
        }
        table.reserve(n * n);
        continue;
      }
      if (rows == n) {
        throw ParseError(lineno, tokens[0].column,
                         "unexpected row beyond the " + std::to_string(n)
                             + " table rows");
      }
      if (tokens.size() != n) {
        std::size_t const col = tokens.size() > n ? tokens[n].column
                                                  : line.size() + 1;
        throw ParseError(lineno, col,
                         "expected " + std::to_string(n) + " entries, got "
                             + std::to_string(tokens.size()));
      }
      for (auto const& tok : tokens) {
        std::size_t const v = detail::parse_positive(tok, lineno);
        if (v < 1 || v > n) {
          throw ParseError(lineno, tok.column,
                           "entry " + std::to_string(v) + " out of range [1, "
                               + std::to_string(n) + "]");
        }
        table.push_back(static_cast<Element>(v - 1));
      }
      ++rows;
    }
    if (n == 0) {
      throw ParseError(lineno + 1, 1, "missing order line");
    }
    if (rows != n) {
      throw ParseError(lineno + 1, 1,
                       "expected " + std::to_string(n) + " rows, got "
                           + std::to_string(rows));
    }
    return Magma(n, std::move(table));
  }

  inline Magma parse_table(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_table(in);
  }

  inline std::string serialize_table(Magma const& m) {
    std::string       out = std::to_string(m.order()) + "\n";
    std::size_t const n   = m.order();
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (b != 0) {
          out += ' ';
        }
        out += std::to_string(m(static_cast<Element>(a),
                                static_cast<Element>(b))
                              + 1);
      }
      out += '\n';
    }
    return out;
  }

}  // namespace agx
