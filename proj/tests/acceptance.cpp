// Acceptance checks. Prints one PASS/FAIL line per criterion.
//
//   acceptance          run every criterion
//   acceptance N ...    run the listed criteria
//
// Exits non-zero if any criterion that ran failed.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "agx/agx.hpp"
#include "oracles.hpp"

using agx::Element;
using agx::IdentityId;
using agx::Magma;

namespace {

  // Counts are compared exactly.
  constexpr std::uint64_t kCountTolerance = 0;
  // Identity checks allow no discrepancies.
  constexpr std::uint64_t kMaxDiscrepancies = 0;

  constexpr double kCriterion1Seconds = 30;
  constexpr double kCriterion2Seconds = 5 * 60;
  constexpr double kStretchSeconds    = 30 * 60;
  constexpr double kCriterion3Seconds = 60 * 60;
  constexpr double kCriterion4Seconds = 60;
  constexpr double kCriterion6Seconds = 2 * 60;
  constexpr double kCriterion7Seconds = 2 * 60;
  constexpr double kCriterion8Seconds = 5 * 60;

  constexpr std::size_t kRandomStein     = 10000;
  constexpr std::size_t kRelabelings     = 100;
  constexpr std::size_t kSampledMagmas   = 60;

  class Criterion {
   public:
    explicit Criterion(std::string title) : _title(std::move(title)) {}

    // Records one sub-check; details are printed beneath the verdict line.
    void expect(bool ok, std::string const& what) {
      _ok = _ok && ok;
      _details.push_back((ok ? "    ok    " : "    FAIL  ") + what);
    }

    void note(std::string const& what) {
      _details.push_back("    note  " + what);
    }

    bool report(std::size_t index) const {
      double const secs = std::chrono::duration<double>(
                              std::chrono::steady_clock::now() - _start)
                              .count();
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.1f", secs);
      std::cout << (_ok ? "PASS" : "FAIL") << " criterion " << index << ": "
                << _title << " (" << buf << " s)\n";
      for (auto const& d : _details) {
        std::cout << d << "\n";
      }
      std::cout.flush();
      return _ok;
    }

    double elapsed() const {
      return std::chrono::duration<double>(std::chrono::steady_clock::now()
                                           - _start)
          .count();
    }

   private:
    std::string                           _title;
    bool                                  _ok = true;
    std::vector<std::string>              _details;
    std::chrono::steady_clock::time_point _start
        = std::chrono::steady_clock::now();
  };

  std::string seconds_text(double s) {
    std::ostringstream o;
    o.precision(1);
    o << std::fixed << s << " s";
    return o.str();
  }

  void within(Criterion& c, double limit) {
    double const t = c.elapsed();
    c.expect(t <= limit, "runtime " + seconds_text(t) + " within "
                             + seconds_text(limit));
  }

  std::size_t workers() {
    return std::max(1u, std::thread::hardware_concurrency());
  }

  struct Cell {
    std::string   label;
    std::size_t   order;
    std::uint64_t expected;
  };

  agx::EnumerationResult count(std::size_t             n,
                               std::vector<IdentityId> laws,
                               std::size_t             jobs,
                               double                  seconds) {
    agx::EnumerationSpec s;
    s.order               = n;
    s.required            = std::move(laws);
    s.mode                = agx::EnumerationMode::CountOnly;
    s.worker_count        = jobs;
    s.budget.max_seconds  = seconds;
    return agx::enumerate(s);
  }

  std::uint64_t distance(std::uint64_t x, std::uint64_t y) {
    return x > y ? x - y : y - x;
  }

  void expect_count(Criterion&         c,
                    std::string const& label,
                    std::size_t        n,
                    std::uint64_t      computed,
                    std::uint64_t      expected) {
    c.expect(distance(computed, expected) <= kCountTolerance,
             label + ", order " + std::to_string(n) + ": computed "
                 + std::to_string(computed) + ", expected "
                 + std::to_string(expected));
  }

  std::vector<IdentityId> const kAG{IdentityId::LeftInvertive};
  std::vector<IdentityId> const kStein{IdentityId::LeftInvertive,
                                       IdentityId::Stein};

  Magma const kSection2 = agx::parse_table("5\n"
                                           "1 1 1 1 1\n"
                                           "1 1 1 1 1\n"
                                           "1 1 1 2 2\n"
                                           "1 1 2 2 3\n"
                                           "1 1 2 2 3\n");

  Magma const kSection3 = agx::parse_table("5\n"
                                           "1 1 1 1 1\n"
                                           "1 1 1 1 1\n"
                                           "1 1 1 1 1\n"
                                           "1 1 1 1 2\n"
                                           "1 1 4 2 1\n");

  ////////////////////////////////////////////////////////////////////////

  bool criterion1() {
    Criterion c("census, orders 3 and 4");
    std::uint64_t const na_ag[]    = {8, 269};
    std::uint64_t const as_ag[]    = {12, 62};
    std::uint64_t const na_stein[] = {0, 0};
    std::uint64_t const as_stein[] = {5, 14};
    for (std::size_t n : {3u, 4u}) {
      auto const ag = count(n, kAG, 1, kCriterion1Seconds);
      auto const st = count(n, kStein, 1, kCriterion1Seconds);
      c.expect(ag.complete() && st.complete(),
               "order " + std::to_string(n) + " searches complete");
      expect_count(c, "non-associative AG", n, ag.non_associative,
                   na_ag[n - 3]);
      expect_count(c, "associative AG", n, ag.associative, as_ag[n - 3]);
      expect_count(c, "non-associative Stein AG", n, st.non_associative,
                   na_stein[n - 3]);
      expect_count(c, "associative Stein AG", n, st.associative,
                   as_stein[n - 3]);
    }
    within(c, kCriterion1Seconds);
    return c.report(1);
  }

  bool criterion2() {
    Criterion  c("census, order 5");
    auto const st = count(5, kStein, 1, kCriterion2Seconds);
    c.expect(st.complete(), "Stein search complete");
    expect_count(c, "non-associative Stein AG", 5, st.non_associative, 16);
    expect_count(c, "associative Stein AG", 5, st.associative, 46);
    within(c, kCriterion2Seconds);

    // Stretch cells: a budget overrun is reported but does not fail.
    auto const ag = count(5, kAG, 1, kStretchSeconds);
    if (ag.complete()) {
      expect_count(c, "non-associative AG (stretch)", 5, ag.non_associative,
                   31467);
      expect_count(c, "associative AG (stretch)", 5, ag.associative, 446);
    } else {
      c.note("AG order 5 (stretch): INCOMPLETE after "
             + seconds_text(ag.stats.seconds));
    }
    return c.report(2);
  }

  bool criterion3() {
    Criterion  c("census, order 6 Stein rows");
    auto const st = count(6, kStein, workers(), kCriterion3Seconds);
    if (!st.complete()) {
      c.expect(false, "order 6 Stein search INCOMPLETE after "
                          + seconds_text(st.stats.seconds));
    } else {
      expect_count(c, "non-associative Stein AG", 6, st.non_associative, 931);
      expect_count(c, "associative Stein AG", 6, st.associative, 173);
    }
    within(c, kCriterion3Seconds);
    return c.report(3);
  }

  bool criterion4() {
    Criterion     c("stein-test agrees with the Stein law");
    std::uint64_t discrepancies = 0;
    std::uint64_t checked       = 0;
    auto          compare       = [&](Magma const& m) {
      discrepancies += agx::stein_test(m).holds != oracle::stein(m);
      ++checked;
    };
    for (std::uint64_t k = 0; k < oracle::table_count(3); ++k) {
      compare(oracle::nth_table(3, k));
    }
    c.expect(checked == 19683, "all 19683 order 3 magmas checked");
    std::mt19937_64 rng(2024);
    for (std::size_t n : {4u, 5u}) {
      for (std::size_t i = 0; i < kRandomStein; ++i) {
        compare(oracle::random_magma(n, rng));
      }
    }
    c.expect(discrepancies <= kMaxDiscrepancies,
             std::to_string(discrepancies) + " discrepancies over "
                 + std::to_string(checked) + " magmas");
    within(c, kCriterion4Seconds);
    return c.report(4);
  }

  bool criterion5() {
    Criterion  c("worked examples");
    auto const r = agx::classify(kSection2);
    c.expect(r[IdentityId::LeftInvertive].holds && r[IdentityId::Stein].holds,
             "order 5 example is a Stein AG-groupoid");
    auto const& assoc = r[IdentityId::Associative];
    c.expect(!assoc.holds && assoc.witness
                 && assoc.witness->elements == std::vector<Element>{3, 3, 4}
                 && agx::witness_violates(kSection2, IdentityId::Associative,
                                          *assoc.witness),
             "associativity fails, first witness (4, 4, 5)");

    auto const st = agx::stein_test(kSection3, true);
    c.expect(st.holds && agx::holds(kSection3, IdentityId::LeftInvertive),
             "extended-table example passes stein-test");
    std::ifstream      in(AGX_TEST_DATA "/example2_tables.golden");
    std::ostringstream golden;
    golden << in.rdbuf();
    c.expect(agx::render_stein_tables(kSection3, st)
                     + "STEIN AG-GROUPOID: yes\n"
                 == golden.str(),
             "rendering matches the golden file");
    return c.report(5);
  }

  void expect_suite(Criterion&                                c,
                    std::vector<agx::ImplicationId> const& ids) {
    agx::SuiteOptions opts;
    opts.worker_count = 1;
    auto const report = agx::run_suite({1, 2, 3, 4, 5}, ids, opts);
    for (auto const& r : report.implications) {
      auto const&       imp = agx::implication(r.id);
      std::string const head
          = std::string(imp.name) + " (" + std::string(imp.statement)
            + "), universe " + std::to_string(r.universe_size) + ": ";
      if (r.violations.empty()) {
        c.expect(r.complete, head + (r.complete ? "0 violations"
                                                : "INCOMPLETE"));
      } else {
        auto const& v = r.violations.front();
        c.expect(false, head + std::to_string(r.violations.size())
                            + "+ violations; first at order "
                            + std::to_string(v.order) + ", " + v.witness);
      }
    }
  }

  bool criterion6() {
    Criterion c("Stein AG identities, orders 1 to 5");
    expect_suite(c, *agx::implication_group("prop1"));
    within(c, kCriterion6Seconds);
    return c.report(6);
  }

  bool criterion7() {
    Criterion c("conditions forcing associativity, orders 1 to 5");
    expect_suite(c, *agx::implication_group("semigroup"));
    within(c, kCriterion7Seconds);
    return c.report(7);
  }

  bool criterion8() {
    Criterion c("subsets and ideals, orders 1 to 5");
    expect_suite(c, *agx::implication_group("ideals"));
    within(c, kCriterion8Seconds);
    return c.report(8);
  }

  bool criterion9() {
    Criterion c("structural invariants");

    std::vector<Magma> ag;
    for (std::size_t n = 1; n <= 5; ++n) {
      agx::EnumerationSpec s;
      s.order = n;
      s.mode  = agx::EnumerationMode::Collect;
      auto r  = agx::enumerate(s);
      ag.insert(ag.end(), r.models->begin(), r.models->end());
    }
    std::uint64_t non_medial = 0;
    for (Magma const& m : ag) {
      non_medial += !oracle::medial(m);
    }
    c.expect(non_medial <= kMaxDiscrepancies,
             std::to_string(non_medial) + " non-medial among "
                 + std::to_string(ag.size()) + " AG-groupoids of order <= 5");

    std::mt19937_64    rng(99);
    std::vector<Magma> sample{kSection2, kSection3};
    std::uniform_int_distribution<std::size_t> pick(0, ag.size() - 1);
    while (sample.size() < kSampledMagmas) {
      sample.push_back(sample.size() % 2 == 0 ? ag[pick(rng)]
                                              : oracle::random_magma(4, rng));
    }
    std::uint64_t changed = 0;
    for (Magma const& m : sample) {
      auto const           base = agx::classify(m);
      std::vector<Element> p(m.order());
      std::iota(p.begin(), p.end(), Element{0});
      for (std::size_t k = 0; k < kRelabelings; ++k) {
        std::shuffle(p.begin(), p.end(), rng);
        auto const other
            = agx::classify(agx::apply_permutation(m, agx::Permutation(p)));
        for (IdentityId id : agx::kAllIdentities) {
          changed += base[id].holds != other[id].holds;
        }
        changed += base.left_cancellative.size()
                   != other.left_cancellative.size();
        changed += base.right_cancellative.size()
                   != other.right_cancellative.size();
      }
    }
    c.expect(changed <= kMaxDiscrepancies,
             std::to_string(changed) + " verdict changes over "
                 + std::to_string(kRelabelings) + " relabelings of "
                 + std::to_string(sample.size()) + " magmas");

    // Every AG-groupoid of order <= 4 together with a relabelled copy and
    // some random magmas; canonical forms must agree exactly on isomorphic
    // pairs.
    std::uint64_t canon_errors = 0;
    std::uint64_t pairs        = 0;
    for (std::size_t n = 1; n <= 4; ++n) {
      std::vector<Magma> pool;
      for (Magma const& m : ag) {
        if (m.order() != n) {
          continue;
        }
        std::vector<Element> p(n);
        std::iota(p.begin(), p.end(), Element{0});
        std::shuffle(p.begin(), p.end(), rng);
        pool.push_back(m);
        pool.push_back(agx::apply_permutation(m, agx::Permutation(p)));
      }
      for (int i = 0; i < 100; ++i) {
        pool.push_back(oracle::random_magma(n, rng));
      }
      std::vector<Magma> canon;
      for (Magma const& m : pool) {
        canon.push_back(agx::canonical_form(m).magma);
        canon_errors += agx::canonical_form(canon.back()).magma != canon.back();
      }
      for (std::size_t i = 0; i < pool.size(); ++i) {
        for (std::size_t j = i + 1; j < pool.size(); ++j) {
          canon_errors
              += (canon[i] == canon[j]) != oracle::isomorphic(pool[i], pool[j]);
          ++pairs;
        }
      }
    }
    c.expect(canon_errors <= kMaxDiscrepancies,
             std::to_string(canon_errors)
                 + " canonical form errors (idempotence and " + std::to_string(pairs)
                 + " pairwise isomorphism checks, orders 1 to 4)");
    return c.report(9);
  }

  std::vector<std::function<bool()>> const kCriteria{
      criterion1, criterion2, criterion3, criterion4, criterion5,
      criterion6, criterion7, criterion8, criterion9};

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::size_t> which;
  for (int i = 1; i < argc; ++i) {
    std::size_t k = 0;
    try {
      k = std::stoul(argv[i]);
    } catch (std::exception const&) {
    }
    if (k < 1 || k > kCriteria.size()) {
      std::cerr << "usage: acceptance [1-" << kCriteria.size() << "]...\n";
      return 2;
    }
    which.push_back(k);
  }
  if (which.empty()) {
    for (std::size_t k = 1; k <= kCriteria.size(); ++k) {
      which.push_back(k);
    }
  }
  bool ok = true;
  for (std::size_t k : which) {
    ok = kCriteria[k - 1]() && ok;
  }
  return ok ? 0 : 1;
}
