#pragma once

#include <json.hpp>

#include <optional>
#include <string>

namespace spencer {

using Json = nlohmann::ordered_json;

constexpr const char* kToolVersion = "0.1.0";

struct ReportOptions {
    bool timings = false; // wall-clock fields break byte-identical reruns
};

// Per-degree dimensions, basis rendering and (where available) the
// highest-weight decomposition, plus grading/Jacobi self-checks.
Json cmd_algebra(const std::string& spec, int deg_lo, int deg_hi,
                 const ReportOptions& opt = {});

// Cohomology dimension table with representatives where nonzero.
// parity: "even" | "odd" | "both"; invariant: "" | "a" (the family's
// reductive subalgebra).
Json cmd_cohomology(const std::string& spec, int j, int l_lo, int l_hi,
                    const std::string& parity, bool invariant,
                    const ReportOptions& opt = {});

// Deformation verification: Jacobi report, cocycle/invariance record, and
// the isomorphism/centrality checks where applicable.
Json cmd_deform(const std::string& variant, const std::string& base, int n, int cap,
                const ReportOptions& opt = {});

// Property battery over one family (or the default battery when empty).
Json cmd_selfcheck(const std::string& spec, const ReportOptions& opt = {});

// True iff every boolean "passed"/"ok" field in the document is true.
bool report_passed(const Json& doc);

std::string to_csv(const Json& doc); // flat dimension tables only

} // namespace spencer
