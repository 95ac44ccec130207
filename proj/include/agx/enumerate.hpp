// agx - finite magma identity checking and enumeration
//
// Backtracking enumeration of finite magmas satisfying a set of equational
// laws from the catalogue, either labelled or up to isomorphism.
//
// Cells are filled in row-major order with values tried in increasing order.
// After every assignment each required law is unit-propagated to a fixpoint:
// any instance whose two sides are known and differ refutes the node, and any
// instance with one side known and the other one lookup away forces that
// cell. Isomorphic copies are pruned with a lex-leader test: a node is
// discarded as soon as some relabelling of its assigned cells is provably
// lexicographically smaller, so every complete table reached is the minlex
// representative of its isomorphism class.

#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "agx/identities.hpp"
#include "agx/magma.hpp"

namespace agx {

  inline constexpr std::size_t kMaxEnumerationOrder = 8;

  ////////////////////////////////////////////////////////////////////////
  // PartialTable
  ////////////////////////////////////////////////////////////////////////

  // An n x n table in which each cell is either assigned or unknown with a
  // non-empty set of candidate values.
  class PartialTable {
   public:
    static constexpr Element kUnknown = 0xFF;

    explicit PartialTable(std::size_t n) : _order(static_cast<std::uint8_t>(n)) {
      if (n == 0 || n > kMaxEnumerationOrder) {
        throw std::invalid_argument("partial tables support order 1 to "
                                    + std::to_string(kMaxEnumerationOrder));
      }
      _value.fill(kUnknown);
      _candidates.fill(static_cast<std::uint16_t>((1U << n) - 1));
    }

    static PartialTable from_magma(Magma const& m) {
      PartialTable pt(m.order());
      for (std::size_t c = 0; c < m.table().size(); ++c) {
        pt.assign(c, m.table()[c]);
      }
      return pt;
    }

    std::size_t order() const noexcept {
      return _order;
    }

    std::size_t cells() const noexcept {
      return std::size_t{_order} * _order;
    }

    std::size_t cell(Element a, Element b) const noexcept {
      return std::size_t{a} * _order + b;
    }

    bool assigned(std::size_t c) const noexcept {
      return _value[c] != kUnknown;
    }

    Element value(std::size_t c) const noexcept {
      return _value[c];
    }

    std::uint16_t candidates(std::size_t c) const noexcept {
      return _candidates[c];
    }

    // Fixes cell c to v. Returns false, leaving the table unchanged, if v is
    // not a candidate of c.
    bool assign(std::size_t c, Element v) noexcept {
      if (v >= _order || !((_candidates[c] >> v) & 1U)) {
        return false;
      }
      _value[c]      = v;
      _candidates[c] = static_cast<std::uint16_t>(1U << v);
      return true;
    }

    // Removes v from the candidates of an unknown cell. Returns false if that
    // empties the candidate set.
    bool exclude(std::size_t c, Element v) noexcept {
      _candidates[c] = static_cast<std::uint16_t>(_candidates[c] & ~(1U << v));
      return _candidates[c] != 0;
    }

    std::optional<std::size_t> first_unknown() const noexcept {
      for (std::size_t c = 0; c < cells(); ++c) {
        if (_value[c] == kUnknown) {
          return c;
        }
      }
      return std::nullopt;
    }

    bool complete() const noexcept {
      return !first_unknown().has_value();
    }

    Magma to_magma() const {
      if (!complete()) {
        throw std::logic_error("partial table is not complete");
      }
      return Magma(_order, std::vector<Element>(_value.begin(),
                                                _value.begin() + cells()));
    }

    friend bool operator==(PartialTable const& x, PartialTable const& y) {
      return x._order == y._order
             && std::equal(x._value.begin(),
                           x._value.begin() + x.cells(),
                           y._value.begin())
             && std::equal(x._candidates.begin(),
                           x._candidates.begin() + x.cells(),
                           y._candidates.begin());
    }

   private:
    std::uint8_t                _order;
    std::array<Element, 64>       _value;
    std::array<std::uint16_t, 64> _candidates;
  };

  ////////////////////////////////////////////////////////////////////////
  // Propagation
  ////////////////////////////////////////////////////////////////////////

  enum class PropagationStatus { Consistent, Contradiction };

  class Propagator {
   public:
    Propagator(std::size_t n, std::span<IdentityId const> required) : _order(n) {
      for (IdentityId id : required) {
        if (is_implication(id)) {
          throw std::invalid_argument(std::string(name(id))
                                      + " is an implication and cannot be "
                                        "propagated");
        }
        if (std::find(_laws.begin(), _laws.end(), &law(id)) == _laws.end()) {
          _laws.push_back(&law(id));
        }
      }
    }

    // Narrows pt to the fixpoint of unit propagation. Cells forced by an
    // instance are assigned; the table is left in an unspecified state on
    // contradiction.
    PropagationStatus operator()(PartialTable& pt) const {
      bool changed = true;
      while (changed) {
        changed = false;
        for (Law const* l : _laws) {
          if (!propagate_law(*l, pt, changed)) {
            return PropagationStatus::Contradiction;
          }
        }
      }
      return PropagationStatus::Consistent;
    }

   private:
    static constexpr int kBlocked = -1;

    struct Side {
      Element value;  // kUnknown unless fully evaluated
      int     cell;   // the single missing lookup, or kBlocked
    };

    Side evaluate(Term const&         t,
                  PartialTable const& pt,
                  Element const*      vars) const noexcept {
      auto const&             nodes = t.nodes();
      std::array<Element, 16> slot{};
      std::size_t const       last = nodes.size() - 1;
      for (std::size_t i = 0; i <= last; ++i) {
        auto const& nd = nodes[i];
        if (nd.is_var) {
          slot[i] = vars[nd.left];
          continue;
        }
        Element const l = slot[nd.left];
        Element const r = slot[nd.right];
        if (l == PartialTable::kUnknown || r == PartialTable::kUnknown) {
          return {PartialTable::kUnknown, kBlocked};
        }
        std::size_t const c = std::size_t{l} * _order + r;
        slot[i]             = pt.value(c);
        if (slot[i] == PartialTable::kUnknown) {
          return {PartialTable::kUnknown,
                  i == last ? static_cast<int>(c) : kBlocked};
        }
      }
      return {slot[last], kBlocked};
    }

    bool propagate_law(Law const& l, PartialTable& pt, bool& changed) const {
      bool ok = true;
      detail::for_each_tuple(_order, l.arity, [&](Element const* t) {
        Side const x = evaluate(l.lhs, pt, t);
        Side const y = evaluate(l.rhs, pt, t);
        bool const xk = x.value != PartialTable::kUnknown;
        bool const yk = y.value != PartialTable::kUnknown;
        if (xk && yk) {
          ok = x.value == y.value;
        } else if (xk && y.cell != kBlocked) {
          ok      = pt.assign(static_cast<std::size_t>(y.cell), x.value);
          changed = true;
        } else if (yk && x.cell != kBlocked) {
          ok      = pt.assign(static_cast<std::size_t>(x.cell), y.value);
          changed = true;
        }
        return ok;
      });
      return ok;
    }

    std::size_t              _order;
    std::vector<Law const*> _laws;
  };

  // Unit propagation of the required laws to a fixpoint; nullopt when some
  // instance is refuted.
  inline std::optional<PartialTable>
  propagate(PartialTable pt, std::span<IdentityId const> required) {
    Propagator const prop(pt.order(), required);
    if (prop(pt) == PropagationStatus::Contradiction) {
      return std::nullopt;
    }
    return pt;
  }

  ////////////////////////////////////////////////////////////////////////
  // Lex-leader test
  ////////////////////////////////////////////////////////////////////////

  class LexLeader {
   public:
    explicit LexLeader(std::size_t n) : _order(n) {
      std::vector<Element> fwd(n);
      std::iota(fwd.begin(), fwd.end(), Element{0});
      while (std::next_permutation(fwd.begin(), fwd.end())) {
        Relabelling r{};
        for (std::size_t i = 0; i < n; ++i) {
          r.fwd[i]      = fwd[i];
          r.inv[fwd[i]] = static_cast<Element>(i);
        }
        _perms.push_back(r);
      }
    }

    // False if some relabelling maps the determined part of pt to a table
    // that is lexicographically smaller on every completion.
    bool operator()(PartialTable const& pt) const noexcept {
      std::size_t const n = _order;
      for (auto const& r : _perms) {
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < n; ++j) {
            Element const cur = pt.value(i * n + j);
            Element const src = pt.value(std::size_t{r.inv[i]} * n + r.inv[j]);
            if (src == PartialTable::kUnknown) {
              goto next;
            }
            Element const img = r.fwd[src];
            if (cur == PartialTable::kUnknown) {
              // The image is smaller whatever cur becomes.
              if (img < std::countr_zero(pt.candidates(i * n + j))) {
                return false;
              }
              goto next;
            }
            if (img < cur) {
              return false;
            }
            if (img > cur) {
              goto next;
            }
          }
        }
      next:;
      }
      return true;
    }

   private:
    struct Relabelling {
      std::array<Element, kMaxEnumerationOrder> fwd;
      std::array<Element, kMaxEnumerationOrder> inv;
    };

    std::size_t              _order;
    std::vector<Relabelling> _perms;
  };

  ////////////////////////////////////////////////////////////////////////
  // Enumeration
  ////////////////////////////////////////////////////////////////////////

  enum class AssociativityFilter { Any, Require, Forbid };
  enum class EnumerationMode { CountOnly, Collect };
  enum class Counting { UpToIsomorphism, Labeled };
  enum class EnumerationStatus { Complete, BudgetExceeded };

  struct Budget {
    std::uint64_t max_nodes   = 1'000'000'000;
    double        max_seconds = 3600.0;
  };

  struct EnumerationSpec {
    std::size_t             order = 1;
    std::vector<IdentityId> required{IdentityId::LeftInvertive};
    AssociativityFilter     associativity = AssociativityFilter::Any;
    EnumerationMode         mode          = EnumerationMode::CountOnly;
    Counting                counting      = Counting::UpToIsomorphism;
    std::size_t             worker_count  = 1;
    Budget                  budget;
    // Number of branching levels expanded before work is handed to the
    // workers; 0 picks a default.
    std::size_t split_depth = 0;
  };

  struct EnumerationStats {
    std::uint64_t nodes              = 0;
    std::uint64_t propagation_prunes = 0;
    std::uint64_t symmetry_prunes    = 0;
    double        seconds            = 0.0;
  };

  struct EnumerationResult {
    EnumerationStatus status = EnumerationStatus::Complete;
    // Models passing the associativity filter.
    std::uint64_t count = 0;
    // Split of all models satisfying the required laws, before filtering.
    std::uint64_t associative     = 0;
    std::uint64_t non_associative = 0;
    // Sorted, strictly increasing; canonical forms when counting up to
    // isomorphism. Only filled in Collect mode.
    std::optional<std::vector<Magma>> models;
    EnumerationStats                  stats;

    bool complete() const noexcept {
      return status == EnumerationStatus::Complete;
    }
  };

  namespace detail {

    inline void validate(EnumerationSpec const& spec) {
      if (spec.order == 0 || spec.order > kMaxEnumerationOrder) {
        throw std::invalid_argument("enumeration order must be in [1, "
                                    + std::to_string(kMaxEnumerationOrder)
                                    + "]");
      }
      if (spec.worker_count == 0) {
        throw std::invalid_argument("worker_count must be positive");
      }
      for (IdentityId id : spec.required) {
        if (is_implication(id)) {
          throw std::invalid_argument(
              std::string(name(id))
              + " is an implication; apply it as a post-filter");
        }
      }
    }

    struct SearchShared {
      EnumerationSpec const&     spec;
      Propagator                 propagate;
      std::optional<LexLeader>   lex;
      std::chrono::steady_clock::time_point start;
      std::atomic<std::uint64_t> nodes{0};
      std::atomic<bool>          stop{false};

      explicit SearchShared(EnumerationSpec const& s)
          : spec(s),
            propagate(s.order, s.required),
            start(std::chrono::steady_clock::now()) {
        if (s.counting == Counting::UpToIsomorphism) {
          lex.emplace(s.order);
        }
      }
    };

    struct SearchLocal {
      std::uint64_t      count           = 0;
      std::uint64_t      associative     = 0;
      std::uint64_t      non_associative = 0;
      std::uint64_t      nodes           = 0;
      std::uint64_t      propagation_prunes = 0;
      std::uint64_t      symmetry_prunes    = 0;
      std::vector<Magma> models;
    };

    class Search {
     public:
      Search(SearchShared& shared, SearchLocal& local)
          : _shared(shared), _local(local) {}

      // Expands pt. When frontier is non-null, nodes reached after `depth`
      // branching decisions are appended there instead of being explored.
      void run(PartialTable const&        pt,
               std::size_t                depth,
               std::vector<PartialTable>* frontier) {
        if (_shared.stop.load(std::memory_order_relaxed)) {
          return;
        }
        ++_local.nodes;
        if ((_local.nodes & 0xFFF) == 0 && over_budget()) {
          return;
        }
        auto const next = pt.first_unknown();
        if (!next) {
          leaf(pt);
          return;
        }
        if (frontier != nullptr && depth == 0) {
          frontier->push_back(pt);
          return;
        }
        std::size_t const   c    = *next;
        std::uint16_t const cand = pt.candidates(c);
        for (std::size_t v = 0; v < pt.order(); ++v) {
          if (!((cand >> v) & 1U)) {
            continue;
          }
          PartialTable child = pt;
          child.assign(c, static_cast<Element>(v));
          if (!settle(child)) {
            continue;
          }
          run(child, depth == 0 ? 0 : depth - 1, frontier);
        }
      }

      // Propagates and applies the symmetry test; false if pt is dead.
      bool settle(PartialTable& pt) {
        if (_shared.propagate(pt) == PropagationStatus::Contradiction) {
          ++_local.propagation_prunes;
          return false;
        }
        if (_shared.lex && !(*_shared.lex)(pt)) {
          ++_local.symmetry_prunes;
          return false;
        }
        return true;
      }

     private:
      bool over_budget() {
        std::uint64_t const total
            = _shared.nodes.fetch_add(0x1000, std::memory_order_relaxed)
              + 0x1000;
        double const secs = std::chrono::duration<double>(
                                std::chrono::steady_clock::now()
                                - _shared.start)
                                .count();
        if (total > _shared.spec.budget.max_nodes
            || secs > _shared.spec.budget.max_seconds) {
          _shared.stop.store(true);
          return true;
        }
        return false;
      }

      void leaf(PartialTable const& pt) {
        Magma m = pt.to_magma();
        for (IdentityId id : _shared.spec.required) {
          if (!holds(m, id)) {
            throw std::logic_error("internal error: enumerated model violates "
                                   + std::string(name(id)) + ":\n"
                                   + serialize_table(m));
          }
        }
        if (_shared.lex && canonical_form(m).magma != m) {
          throw std::logic_error(
              "internal error: lex-leader model is not canonical:\n"
              + serialize_table(m));
        }
        bool const assoc = holds(m, IdentityId::Associative);
        ++(assoc ? _local.associative : _local.non_associative);
        auto const filter = _shared.spec.associativity;
        if ((filter == AssociativityFilter::Require && !assoc)
            || (filter == AssociativityFilter::Forbid && assoc)) {
          return;
        }
        ++_local.count;
        if (_shared.spec.mode == EnumerationMode::Collect) {
          _local.models.push_back(std::move(m));
        }
      }

      SearchShared& _shared;
      SearchLocal&  _local;
    };

  }  // namespace detail

  inline EnumerationResult enumerate(EnumerationSpec const& spec) {
    detail::validate(spec);
    detail::SearchShared shared(spec);

    std::vector<detail::SearchLocal> locals(spec.worker_count);
    PartialTable                     root(spec.order);
    detail::SearchLocal              seed;
    detail::Search                   root_search(shared, seed);

    if (root_search.settle(root)) {
      if (spec.worker_count == 1) {
        root_search.run(root, 0, nullptr);
      } else {
        std::size_t const depth = spec.split_depth != 0
                                      ? spec.split_depth
                                      : std::min<std::size_t>(spec.order, 4);
        std::vector<PartialTable> frontier;
        root_search.run(root, depth, &frontier);
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> workers;
        for (std::size_t w = 0; w < spec.worker_count; ++w) {
          workers.emplace_back([&, w] {
            detail::Search s(shared, locals[w]);
            for (std::size_t i = next++; i < frontier.size(); i = next++) {
              s.run(frontier[i], 0, nullptr);
            }
          });
        }
        for (auto& t : workers) {
          t.join();
        }
      }
    }
    locals.push_back(std::move(seed));

    EnumerationResult result;
    std::vector<Magma> models;
    for (auto& l : locals) {
      result.count += l.count;
      result.associative += l.associative;
      result.non_associative += l.non_associative;
      result.stats.nodes += l.nodes;
      result.stats.propagation_prunes += l.propagation_prunes;
      result.stats.symmetry_prunes += l.symmetry_prunes;
      std::move(l.models.begin(), l.models.end(), std::back_inserter(models));
    }
    if (spec.mode == EnumerationMode::Collect) {
      std::sort(models.begin(), models.end());
      if (std::adjacent_find(models.begin(), models.end()) != models.end()) {
        throw std::logic_error("internal error: duplicate model enumerated");
      }
      result.models = std::move(models);
    }
    result.stats.seconds = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - shared.start)
                               .count();
    if (shared.stop.load()) {
      result.status = EnumerationStatus::BudgetExceeded;
    }
    return result;
  }

  ////////////////////////////////////////////////////////////////////////
  // Census against the published counts
  ////////////////////////////////////////////////////////////////////////

  enum class CensusRow {
    NonAssociativeAG,
    AssociativeAG,
    NonAssociativeStein,
    AssociativeStein,
  };

  inline constexpr std::array<CensusRow, 4> kCensusRows{
      CensusRow::NonAssociativeAG,
      CensusRow::AssociativeAG,
      CensusRow::NonAssociativeStein,
      CensusRow::AssociativeStein};

  inline std::string_view row_label(CensusRow r) {
    switch (r) {
      case CensusRow::NonAssociativeAG:
        return "Non-associative AG-groupoids";
      case CensusRow::AssociativeAG:
        return "Associative AG-groupoids";
      case CensusRow::NonAssociativeStein:
        return "Non-associative Stein AG-groupoids";
      case CensusRow::AssociativeStein:
        return "Associative Stein AG-groupoids";
    }
    return "";
  }

  // Published counts for orders 3 to 6, up to isomorphism.
  inline std::optional<std::uint64_t> published_count(CensusRow   r,
                                                      std::size_t order) {
    static constexpr std::uint64_t table[4][4] = {
        {8, 269, 31467, 40104513},
        {12, 62, 446, 7510},
        {0, 0, 16, 931},
        {5, 14, 46, 173},
    };
    if (order < 3 || order > 6) {
      return std::nullopt;
    }
    return table[static_cast<std::size_t>(r)][order - 3];
  }

  enum class CellStatus { Match, Mismatch, Incomplete };

  inline std::string_view to_string(CellStatus s) {
    switch (s) {
      case CellStatus::Match:
        return "MATCH";
      case CellStatus::Mismatch:
        return "MISMATCH";
      case CellStatus::Incomplete:
        return "INCOMPLETE";
    }
    return "";
  }

  struct CensusCell {
    CensusRow                    row;
    std::size_t                  order;
    std::uint64_t                expected;
    std::optional<std::uint64_t> computed;  // absent when INCOMPLETE
    CellStatus                   status;
    double                       seconds;
  };

  struct CensusOptions {
    Budget      budget;
    std::size_t worker_count = 1;
    // Rows to compute; the AG rows share one search and so do the Stein rows.
    bool ag_rows    = true;
    bool stein_rows = true;
  };

  inline std::vector<CensusCell> verify_counts(std::vector<std::size_t> const& orders,
                                               CensusOptions const& opts = {}) {
    std::vector<CensusCell> cells;
    for (std::size_t n : orders) {
      if (n < 3 || n > 6) {
        throw std::invalid_argument("census orders must be in {3, 4, 5, 6}");
      }
      for (bool stein : {false, true}) {
        if ((stein && !opts.stein_rows) || (!stein && !opts.ag_rows)) {
          continue;
        }
        EnumerationSpec spec;
        spec.order        = n;
        spec.required     = stein ? std::vector{IdentityId::LeftInvertive,
                                                IdentityId::Stein}
                                  : std::vector{IdentityId::LeftInvertive};
        spec.worker_count = opts.worker_count;
        spec.budget       = opts.budget;
        auto const r      = enumerate(spec);
        CensusRow const na = stein ? CensusRow::NonAssociativeStein
                                   : CensusRow::NonAssociativeAG;
        CensusRow const as = stein ? CensusRow::AssociativeStein
                                   : CensusRow::AssociativeAG;
        for (auto [row, value] : {std::pair{na, r.non_associative},
                                  std::pair{as, r.associative}}) {
          CensusCell cell{row, n, *published_count(row, n), std::nullopt,
                          CellStatus::Incomplete, r.stats.seconds};
          if (r.complete()) {
            cell.computed = value;
            cell.status   = value == cell.expected ? CellStatus::Match
                                                   : CellStatus::Mismatch;
          }
          cells.push_back(cell);
        }
      }
    }
    std::stable_sort(cells.begin(), cells.end(), [](auto const& x, auto const& y) {
      return static_cast<int>(x.row) < static_cast<int>(y.row);
    });
    return cells;
  }

}  // namespace agx
