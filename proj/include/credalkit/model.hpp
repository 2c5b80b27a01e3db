#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "credalkit/frame.hpp"

namespace credalkit {

// Declarations as written in a model file; validated on parse, built into
// library objects when a run starts.

struct PriorDecl {
  std::string name;
  std::vector<std::string> contexts;
  std::vector<geom::Vec> extremes;

  bool operator==(const PriorDecl&) const = default;
};

// Exactly one of the three forms: a precise likelihood, an interval box, or
// explicit extreme vectors.
struct EvidenceDecl {
  std::string name;
  std::optional<geom::Vec> likelihood;
  std::optional<geom::Vec> lower, upper;
  std::optional<std::vector<geom::Vec>> extremes;

  bool operator==(const EvidenceDecl&) const = default;
};

struct QueryRecord {
  std::string op;  // envelope | conjunction | disjunction | fuse-obs |
                   // combine | condition | compare | verify
  std::string prior;
  std::vector<std::string> priors;    // conjunction / disjunction operands
  std::vector<std::string> evidence;  // folded with `mode` when more than one
  std::string mode;                   // "frechet" | "independent" | ""
  std::string method;                 // "choquet" | "upperlower" | "both" | ""
  std::string then;                   // fuse-obs: "intervals" | ""
  bool assume_no_interaction = false;
  bool events_absent = true;  // no "events" key: render all events
  bool events_all = false;    // explicit "events": "all"
  std::vector<std::vector<std::string>> events;
  std::optional<long long> trials;
  std::optional<long long> seed;

  bool operator==(const QueryRecord&) const = default;
};

struct ModelFile {
  Frame frame;
  std::vector<PriorDecl> priors;
  std::vector<EvidenceDecl> evidence;
  std::vector<QueryRecord> queries;

  bool operator==(const ModelFile&) const = default;
};

// Parses and fully validates a model document. Diagnostics carry distinct
// codes: ParseError (with line and column), UnknownReference,
// VectorLengthMismatch, InvalidBounds, InvalidInput, FrameTooLarge.
ModelFile parse_model(const std::string& text);

// Canonical JSON rendering; parse_model(serialize_model(m)) == m.
std::string serialize_model(const ModelFile& m);

struct RunOptions {
  std::uint64_t seed = 0;
  int decimals = 4;
  bool pretty = false;
};

// Executes the queries in order, writing one interval table per query (TSV
// columns: query-id, event, lower, upper) to `out` and warnings to `diag`.
// Output is byte-identical for identical model + options. Errors are
// rethrown tagged with the originating query index.
void run_model(const ModelFile& m, const RunOptions& opts, std::ostream& out,
               std::ostream& diag);

// Stable process exit code for a diagnostic category (0 = success is not a
// category; all codes here are nonzero).
int exit_code_for(errc code);

}  // namespace credalkit
