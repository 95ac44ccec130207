// agx - finite magma identity checking and enumeration
//
// JSON renderings of reports. Elements and sets are 1-based throughout.

#pragma once

#include <string>
#include <vector>

#include "agx/enumerate.hpp"
#include "agx/identities.hpp"
#include "agx/ideals.hpp"
#include "agx/magma.hpp"
#include "agx/theorems.hpp"
#include "json.hpp"

namespace agx {

  using json = nlohmann::json;

  inline json to_json(SubsetMask s) {
    json out = json::array();
    for (Element e : s.elements()) {
      out.push_back(e + 1);
    }
    return out;
  }

  inline json table_json(Magma const& m) {
    json rows = json::array();
    for (std::size_t a = 0; a < m.order(); ++a) {
      json row = json::array();
      for (std::size_t b = 0; b < m.order(); ++b) {
        row.push_back(m(static_cast<Element>(a), static_cast<Element>(b)) + 1);
      }
      rows.push_back(std::move(row));
    }
    return rows;
  }

  inline json to_json(Witness const& w) {
    json elems = json::array();
    for (Element e : w.elements) {
      elems.push_back(e + 1);
    }
    return {{"elements", elems}, {"lhs", w.lhs + 1}, {"rhs", w.rhs + 1}};
  }

  inline json to_json(ClassificationReport const& r) {
    json verdicts = json::object();
    for (IdentityId id : kAllIdentities) {
      auto const& v = r[id];
      verdicts[std::string(name(id))]
          = {{"holds", v.holds},
             {"witness", v.witness ? to_json(*v.witness) : json(nullptr)}};
    }
    return {{"order", r.order},
            {"verdicts", verdicts},
            {"cancellative",
             {{"left", to_json(r.left_cancellative)},
              {"right", to_json(r.right_cancellative)},
              {"both", to_json(r.cancellative)}}}};
  }

  // One line of newline-delimited model output.
  inline json model_json(Magma const& m, bool canonical) {
    return {{"table", table_json(m)}, {"canonical", canonical}};
  }

  inline json to_json(PrincipalSets const& p) {
    return {{"aS", to_json(p.aS)},
            {"Sa", to_json(p.Sa)},
            {"a(Sa)", to_json(p.a_Sa)},
            {"(aS)a", to_json(p.aS_a)},
            {"idempotent", p.idempotent}};
  }

  inline json to_json(std::vector<CensusCell> const& cells) {
    json rows = json::array();
    for (CensusRow row : kCensusRows) {
      json entry = {{"row", row_label(row)}, {"cells", json::array()}};
      for (auto const& c : cells) {
        if (c.row != row) {
          continue;
        }
        entry["cells"].push_back(
            {{"order", c.order},
             {"expected", c.expected},
             {"computed", c.computed ? json(*c.computed) : json(nullptr)},
             {"status", to_string(c.status)}});
      }
      if (!entry["cells"].empty()) {
        rows.push_back(std::move(entry));
      }
    }
    return {{"rows", rows}};
  }

  inline json to_json(SuiteReport const& r) {
    json imps = json::array();
    for (auto const& ir : r.implications) {
      json viol = json::array();
      for (auto const& v : ir.violations) {
        viol.push_back({{"order", v.order},
                        {"table", table_json(v.magma)},
                        {"witness", v.witness}});
      }
      auto const& imp = implication(ir.id);
      imps.push_back({{"implication", imp.name},
                      {"statement", imp.statement},
                      {"universe_size", ir.universe_size},
                      {"complete", ir.complete},
                      {"violations", viol}});
    }
    return {{"orders", r.orders},
            {"implications", imps},
            {"verified", r.verified()}};
  }

}  // namespace agx
