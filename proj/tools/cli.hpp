// agx - finite magma identity checking and enumeration
//
// The agx command line. Kept as a header so the test suite can drive it
// in-process.

#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "agx/agx.hpp"

namespace agx::cli {

  enum ExitCode : int {
    kSuccess        = 0,
    kInputError     = 1,
    kBudgetExceeded = 2,
    kViolation      = 3,
  };

  struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
  };

  inline Magma read_magma(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw InputError("cannot open " + path);
    }
    try {
      return parse_table(in);
    } catch (ParseError const& e) {
      throw InputError(path + ": " + e.what());
    }
  }

  inline std::string tuple_text(std::vector<Element> const& v) {
    return detail::tuple_string(v);
  }

  inline std::string yes_no(bool b) {
    return b ? "yes" : "no";
  }

  inline std::string class_line(ClassificationReport const& r) {
    if (!r[IdentityId::LeftInvertive].holds) {
      return "not an AG-groupoid";
    }
    std::string const assoc = r[IdentityId::Associative].holds
                                  ? "associative "
                                  : "non-associative ";
    return assoc
           + (r[IdentityId::Stein].holds ? "Stein AG-groupoid" : "AG-groupoid");
  }

  ////////////////////////////////////////////////////////////////////////
  // Commands
  ////////////////////////////////////////////////////////////////////////

  struct BudgetFlags {
    std::uint64_t max_nodes   = Budget{}.max_nodes;
    double        max_seconds = Budget{}.max_seconds;

    void attach(CLI::App* cmd) {
      cmd->add_option("--max-nodes", max_nodes, "Search node budget");
      cmd->add_option("--max-seconds", max_seconds, "Wall-clock budget");
    }

    Budget budget() const {
      return {max_nodes, max_seconds};
    }
  };

  inline int check(std::string const& file, bool as_json, std::ostream& out) {
    Magma const m = read_magma(file);
    auto const  r = classify(m);
    if (as_json) {
      out << to_json(r).dump(2) << "\n";
      return kSuccess;
    }
    out << "order " << m.order() << "\n";
    for (IdentityId id : kAllIdentities) {
      auto const& v = r[id];
      std::string nm(name(id));
      out << "  " << nm << std::string(22 - nm.size(), ' ') << yes_no(v.holds)
          << (v.holds ? "   " : "    ") << law(id).text;
      if (!v.holds) {
        out << "   fails at " << tuple_text(v.witness->elements) << ": "
            << v.witness->lhs + 1 << " != " << v.witness->rhs + 1;
      }
      out << "\n";
    }
    out << "left cancellative: " << to_string(r.left_cancellative) << "\n"
        << "right cancellative: " << to_string(r.right_cancellative) << "\n"
        << "cancellative: " << to_string(r.cancellative) << "\n"
        << "class: " << class_line(r) << "\n";
    return kSuccess;
  }

  inline int stein(std::string const& file, bool show, std::ostream& out) {
    Magma const m  = read_magma(file);
    auto const  st = stein_test(m, show);
    if (show) {
      out << render_stein_tables(m, st);
    }
    auto const li = check_identity(m, IdentityId::LeftInvertive);
    out << "STEIN AG-GROUPOID: " << yes_no(li.holds && st.holds) << "\n";
    if (!li.holds) {
      out << "left invertive law fails at "
          << tuple_text(li.witness->elements) << ": " << li.witness->lhs + 1
          << " != " << li.witness->rhs + 1 << "\n";
    }
    if (!st.holds) {
      auto const& w = *st.witness;
      out << "Stein identity fails at x = " << w.elements[2] + 1
          << ", a = " << w.elements[0] + 1 << ", b = " << w.elements[1] + 1
          << ": a o b = " << w.lhs + 1 << ", a ^ b = " << w.rhs + 1 << "\n";
    }
    return kSuccess;
  }

  struct EnumerateFlags {
    std::size_t order = 0;
    std::string cls   = "ag";
    std::string associative = "any";
    bool        count_only  = false;
    bool        labeled     = false;
    std::size_t jobs        = 1;
    std::string out_file;
    std::string format = "tbl";
    BudgetFlags budget;
  };

  inline int enumerate_cmd(EnumerateFlags const& f,
                           std::ostream&         out,
                           std::ostream&         err) {
    EnumerationSpec spec;
    spec.order    = f.order;
    spec.required = f.cls == "stein-ag"
                        ? std::vector{IdentityId::LeftInvertive,
                                      IdentityId::Stein}
                        : std::vector{IdentityId::LeftInvertive};
    spec.associativity = f.associative == "yes"  ? AssociativityFilter::Require
                         : f.associative == "no" ? AssociativityFilter::Forbid
                                                 : AssociativityFilter::Any;
    spec.mode     = f.count_only ? EnumerationMode::CountOnly
                                 : EnumerationMode::Collect;
    spec.counting = f.labeled ? Counting::Labeled : Counting::UpToIsomorphism;
    spec.worker_count = f.jobs;
    spec.budget       = f.budget.budget();
    auto const r      = enumerate(spec);

    if (!r.complete()) {
      err << "budget exceeded after " << r.stats.nodes
          << " nodes; partial count " << r.count << " is INCOMPLETE\n";
      return kBudgetExceeded;
    }
    if (f.count_only) {
      out << r.count << "\n";
      return kSuccess;
    }
    std::ofstream file;
    if (!f.out_file.empty()) {
      file.open(f.out_file);
      if (!file) {
        throw InputError("cannot write " + f.out_file);
      }
    }
    std::ostream& sink  = f.out_file.empty() ? out : file;
    bool          first = true;
    for (Magma const& m : *r.models) {
      if (f.format == "jsonl") {
        sink << model_json(m, !f.labeled).dump() << "\n";
      } else {
        sink << (first ? "" : "\n") << serialize_table(m);
      }
      first = false;
    }
    if (!f.out_file.empty()) {
      out << r.count << "\n";
    }
    return kSuccess;
  }

  inline int ideals(std::string const& file,
                    std::size_t        element,
                    bool               all,
                    bool               as_json,
                    std::ostream&      out) {
    Magma const m = read_magma(file);
    if (element < 1 || element > m.order()) {
      throw InputError("element " + std::to_string(element)
                       + " is not in a magma of order "
                       + std::to_string(m.order()));
    }
    auto const a = static_cast<Element>(element - 1);
    auto const p = principal_sets(m, a);
    std::optional<bool> minimal;
    if (is_ideal(m, p.a_Sa)) {
      minimal = is_minimal_ideal_for(m, a, p.a_Sa);
    }
    std::vector<SubsetMask> left, right, both;
    if (all) {
      for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << m.order());
           ++bits) {
        SubsetMask const s(bits);
        bool const       l = is_left_ideal(m, s);
        bool const       r = is_right_ideal(m, s);
        if (l) {
          left.push_back(s);
        }
        if (r) {
          right.push_back(s);
        }
        if (l && r) {
          both.push_back(s);
        }
      }
    }
    if (as_json) {
      json j            = to_json(p);
      j["element"]      = element;
      j["ideal"]        = {{"aS", is_ideal(m, p.aS)},
                           {"a(Sa)", is_ideal(m, p.a_Sa)},
                           {"(aS)a", is_ideal(m, p.aS_a)}};
      j["a(Sa) minimal"] = minimal ? json(*minimal) : json(nullptr);
      if (all) {
        auto list = [](std::vector<SubsetMask> const& v) {
          json arr = json::array();
          for (auto s : v) {
            arr.push_back(to_json(s));
          }
          return arr;
        };
        j["left ideals"]  = list(left);
        j["right ideals"] = list(right);
        j["ideals"]       = list(both);
      }
      out << j.dump(2) << "\n";
      return kSuccess;
    }
    out << "a = " << element << "\n"
        << "aS = " << to_string(p.aS) << "  ideal: " << yes_no(is_ideal(m, p.aS))
        << "\n"
        << "Sa = " << to_string(p.Sa) << "\n"
        << "a(Sa) = " << to_string(p.a_Sa)
        << "  ideal: " << yes_no(is_ideal(m, p.a_Sa)) << "  minimal for a: "
        << (minimal ? yes_no(*minimal) : "n/a") << "\n"
        << "(aS)a = " << to_string(p.aS_a)
        << "  ideal: " << yes_no(is_ideal(m, p.aS_a)) << "\n"
        << "idempotent: " << yes_no(p.idempotent) << "\n";
    if (all) {
      auto print = [&](std::string_view label,
                       std::vector<SubsetMask> const& v) {
        out << label << ":";
        for (auto s : v) {
          out << " " << to_string(s);
        }
        out << "\n";
      };
      print("left ideals", left);
      print("right ideals", right);
      print("ideals", both);
    }
    return kSuccess;
  }

  inline int verify(std::vector<std::size_t> const& orders,
                    std::string const&              suite,
                    bool                            as_json,
                    std::size_t                     jobs,
                    BudgetFlags const&              budget,
                    std::ostream&                   out) {
    auto const group = implication_group(suite);
    if (!group) {
      throw InputError("unknown suite " + suite);
    }
    for (std::size_t n : orders) {
      if (n < 1 || n > kMaxEnumerationOrder) {
        throw InputError("orders must be in [1, "
                         + std::to_string(kMaxEnumerationOrder) + "]");
      }
    }
    SuiteOptions opts;
    opts.budget       = budget.budget();
    opts.worker_count = jobs;
    auto const r      = run_suite(orders, *group, opts);
    if (as_json) {
      out << to_json(r).dump(2) << "\n";
    } else {
      for (auto const& ir : r.implications) {
        auto const& imp = implication(ir.id);
        std::string nm(imp.name);
        out << nm << std::string(24 - nm.size(), ' ')
            << (ir.violations.empty()
                    ? (ir.complete ? "VERIFIED  " : "INCOMPLETE")
                    : "VIOLATED  ")
            << "  universe " << ir.universe_size << "  " << imp.statement
            << "\n";
        for (auto const& v : ir.violations) {
          out << "  counterexample: " << v.witness << "\n";
          std::string const tbl = serialize_table(v.magma);
          std::size_t       pos = 0;
          while (pos < tbl.size()) {
            auto const nl = tbl.find('\n', pos);
            out << "    " << tbl.substr(pos, nl - pos) << "\n";
            pos = nl + 1;
          }
        }
      }
    }
    if (r.has_violations()) {
      return kViolation;
    }
    return r.complete() ? kSuccess : kBudgetExceeded;
  }

  inline int counts(std::vector<std::size_t> const& orders,
                    bool                            as_json,
                    std::size_t                     jobs,
                    BudgetFlags const&              budget,
                    std::ostream&                   out) {
    CensusOptions opts;
    opts.budget       = budget.budget();
    opts.worker_count = jobs;
    std::vector<CensusCell> cells;
    try {
      cells = verify_counts(orders, opts);
    } catch (std::invalid_argument const& e) {
      throw InputError(e.what());
    }
    bool incomplete = false;
    for (auto const& c : cells) {
      incomplete = incomplete || c.status == CellStatus::Incomplete;
    }
    if (as_json) {
      out << to_json(cells).dump(2) << "\n";
      return incomplete ? kBudgetExceeded : kSuccess;
    }
    out << "Order";
    for (std::size_t n : orders) {
      out << "\t" << n;
    }
    out << "\n";
    for (CensusRow row : kCensusRows) {
      out << row_label(row);
      for (std::size_t n : orders) {
        for (auto const& c : cells) {
          if (c.row != row || c.order != n) {
            continue;
          }
          out << "\t";
          if (c.computed) {
            out << *c.computed << " " << to_string(c.status);
            if (c.status == CellStatus::Mismatch) {
              out << " (published " << c.expected << ")";
            }
          } else {
            out << "INCOMPLETE (published " << c.expected << ")";
          }
        }
      }
      out << "\n";
    }
    return incomplete ? kBudgetExceeded : kSuccess;
  }

  ////////////////////////////////////////////////////////////////////////
  // Dispatch
  ////////////////////////////////////////////////////////////////////////

  inline int run(std::vector<std::string> args,
                 std::ostream&            out,
                 std::ostream&            err) {
    CLI::App app{"Identity checking and enumeration for finite AG-groupoids",
                 "agx"};
    app.require_subcommand(1);

    std::string file;
    bool        as_json = false;

    auto* check_cmd = app.add_subcommand("check", "Classify a .tbl magma");
    check_cmd->add_option("file", file, "Table file")->required();
    check_cmd->add_flag("--json", as_json, "JSON report");

    bool  show_tables = false;
    auto* stein_cmd   = app.add_subcommand(
        "stein-test", "Extended-table test for the Stein identity");
    stein_cmd->add_option("file", file, "Table file")->required();
    stein_cmd->add_flag("--show-tables", show_tables,
                        "Print the extended tables");

    EnumerateFlags ef;
    auto*          enum_cmd = app.add_subcommand(
        "enumerate", "Enumerate AG-groupoids or Stein AG-groupoids");
    enum_cmd->add_option("--order", ef.order, "Order")
        ->required()
        ->check(CLI::Range(std::size_t{1}, kMaxEnumerationOrder));
    enum_cmd->add_option("--class", ef.cls, "ag or stein-ag")
        ->check(CLI::IsMember({"ag", "stein-ag"}));
    enum_cmd->add_option("--associative", ef.associative, "yes, no or any")
        ->check(CLI::IsMember({"yes", "no", "any"}));
    enum_cmd->add_flag("--count-only", ef.count_only, "Print only the count");
    enum_cmd->add_flag("--labeled", ef.labeled,
                       "Count labelled tables instead of isomorphism classes");
    enum_cmd->add_option("--jobs", ef.jobs, "Worker threads")
        ->check(CLI::PositiveNumber);
    enum_cmd->add_option("--out", ef.out_file, "Write models to this file");
    enum_cmd->add_option("--format", ef.format, "tbl or jsonl")
        ->check(CLI::IsMember({"tbl", "jsonl"}));
    ef.budget.attach(enum_cmd);

    std::size_t element = 0;
    bool        all     = false;
    auto*       ideals_cmd
        = app.add_subcommand("ideals", "Principal sets and ideals");
    ideals_cmd->add_option("file", file, "Table file")->required();
    ideals_cmd->add_option("--element", element, "Element (1-based)")
        ->required();
    ideals_cmd->add_flag("--all", all, "Also list all one- and two-sided ideals");
    ideals_cmd->add_flag("--json", as_json, "JSON output");

    std::vector<std::size_t> orders;
    std::string              suite;
    std::size_t              jobs = 1;
    BudgetFlags              budget;
    auto* verify_cmd = app.add_subcommand(
        "verify", "Check implications over enumerated universes");
    verify_cmd->add_option("--orders", orders, "Comma-separated orders")
        ->required()
        ->delimiter(',');
    verify_cmd->add_option("--suite", suite, "prop1|semigroup|ideals|lemmas|all")
        ->required()
        ->check(CLI::IsMember({"prop1", "semigroup", "ideals", "lemmas", "all"}));
    verify_cmd->add_flag("--json", as_json, "JSON report");
    verify_cmd->add_option("--jobs", jobs, "Worker threads")
        ->check(CLI::PositiveNumber);
    budget.attach(verify_cmd);

    auto* counts_cmd = app.add_subcommand(
        "counts", "Census of (Stein) AG-groupoids against published counts");
    counts_cmd->add_option("--orders", orders, "Comma-separated orders in 3..6")
        ->required()
        ->delimiter(',');
    counts_cmd->add_flag("--json", as_json, "JSON output");
    counts_cmd->add_option("--jobs", jobs, "Worker threads")
        ->check(CLI::PositiveNumber);
    budget.attach(counts_cmd);

    try {
      std::reverse(args.begin(), args.end());
      app.parse(args);
    } catch (CLI::ParseError const& e) {
      if (e.get_exit_code() == 0) {
        out << app.help();
        return kSuccess;
      }
      err << "agx: " << e.what() << "\n";
      return kInputError;
    }

    try {
      if (check_cmd->parsed()) {
        return check(file, as_json, out);
      }
      if (stein_cmd->parsed()) {
        return stein(file, show_tables, out);
      }
      if (enum_cmd->parsed()) {
        return enumerate_cmd(ef, out, err);
      }
      if (ideals_cmd->parsed()) {
        return ideals(file, element, all, as_json, out);
      }
      if (verify_cmd->parsed()) {
        return verify(orders, suite, as_json, jobs, budget, out);
      }
      if (counts_cmd->parsed()) {
        return counts(orders, as_json, jobs, budget, out);
      }
    } catch (InputError const& e) {
      err << "agx: " << e.what() << "\n";
      return kInputError;
    }
    return kInputError;
  }

}  // namespace agx::cli
