#include "credalkit/model.hpp"

#include <cstdio>
#include <map>
#include <ostream>
#include <set>

#include "json.hpp"

#include "credalkit/credal.hpp"
#include "credalkit/evidential.hpp"
#include "credalkit/fusion.hpp"
#include "credalkit/oracle.hpp"

namespace credalkit {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// --- parsing -----------------------------------------------------------

void syntax_error(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  fail(errc::parse_error, "syntax error at line " + std::to_string(line) + ", column " +
                              std::to_string(col));
}

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) {
      fail(errc::invalid_input, where + ": unknown key '" + item.key() + "'");
    }
  }
}

std::string want_string(const json& v, const std::string& where) {
  if (!v.is_string()) fail(errc::invalid_input, where + ": expected a string");
  return v.get<std::string>();
}

geom::Vec want_vector(const json& v, const std::string& where) {
  if (!v.is_array()) fail(errc::invalid_input, where + ": expected an array of numbers");
  geom::Vec out;
  out.reserve(v.size());
  for (const json& x : v) {
    if (!x.is_number()) fail(errc::invalid_input, where + ": expected a number");
    out.push_back(x.get<double>());
  }
  return out;
}

void check_length(const geom::Vec& v, std::size_t m, const std::string& where) {
  if (v.size() != m) {
    fail(errc::vector_length_mismatch, where + ": has length " + std::to_string(v.size()) +
                                           ", frame has " + std::to_string(m));
  }
}

// Rethrows a library error with added context, preserving the code.
template <typename Fn>
void with_context(const std::string& where, Fn&& fn) {
  try {
    fn();
  } catch (const Error& err) {
    fail(err.code(), where + ": " + err.detail());
  }
}

std::vector<std::string> want_name_list(const json& v, const std::string& where) {
  std::vector<std::string> out;
  if (v.is_string()) {
    out.push_back(v.get<std::string>());
  } else if (v.is_array()) {
    for (const json& x : v) out.push_back(want_string(x, where));
  } else {
    fail(errc::invalid_input, where + ": expected a name or an array of names");
  }
  return out;
}

void parse_events(const json& v, QueryRecord& q, const std::string& where) {
  q.events_absent = false;
  if (v.is_string()) {
    if (v.get<std::string>() != "all") {
      fail(errc::invalid_input, where + ": events must be \"all\" or an array");
    }
    q.events_all = true;
    return;
  }
  if (!v.is_array()) fail(errc::invalid_input, where + ": events must be \"all\" or an array");
  for (const json& ev : v) {
    if (ev.is_string()) {
      q.events.push_back({ev.get<std::string>()});
    } else if (ev.is_array()) {
      std::vector<std::string> labels;
      for (const json& l : ev) labels.push_back(want_string(l, where + ": event label"));
      q.events.push_back(std::move(labels));
    } else {
      fail(errc::invalid_input, where + ": each event is a label or an array of labels");
    }
  }
}

void forbid(bool present, const std::string& where, const std::string& key) {
  if (present) fail(errc::invalid_input, where + ": field '" + key + "' does not apply");
}

void validate_query(const ModelFile& m, const QueryRecord& q, const std::string& where) {
  const std::set<std::string> ops = {"envelope", "conjunction", "disjunction", "fuse-obs",
                                     "combine",  "condition",   "compare",     "verify"};
  if (!ops.count(q.op)) fail(errc::invalid_input, where + ": unknown op '" + q.op + "'");

  auto check_prior_ref = [&](const std::string& name) {
    for (const PriorDecl& p : m.priors) {
      if (p.name == name) return;
    }
    fail(errc::unknown_reference, where + ": no prior named '" + name + "'");
  };
  auto check_evidence_ref = [&](const std::string& name) {
    for (const EvidenceDecl& e : m.evidence) {
      if (e.name == name) return;
    }
    fail(errc::unknown_reference, where + ": no evidence named '" + name + "'");
  };

  const bool has_prior = !q.prior.empty();
  const bool has_priors = !q.priors.empty();
  const bool has_evidence = !q.evidence.empty();
  const bool has_mode = !q.mode.empty();
  const bool has_method = !q.method.empty();
  const bool has_then = !q.then.empty();

  if (has_mode && q.mode != "frechet" && q.mode != "independent") {
    fail(errc::invalid_input, where + ": mode must be 'frechet' or 'independent'");
  }

  if (q.op == "envelope") {
    if (!has_prior) fail(errc::invalid_input, where + ": needs a prior");
    forbid(has_priors, where, "priors");
    forbid(has_evidence, where, "evidence");
    forbid(has_mode, where, "mode");
    forbid(has_method, where, "method");
    forbid(has_then, where, "then");
    forbid(q.assume_no_interaction, where, "assume_no_interaction");
    forbid(q.trials.has_value(), where, "trials");
    forbid(q.seed.has_value(), where, "seed");
    check_prior_ref(q.prior);
  } else if (q.op == "conjunction" || q.op == "disjunction") {
    if (q.priors.size() != 2) fail(errc::invalid_input, where + ": needs exactly two priors");
    forbid(has_prior, where, "prior");
    forbid(has_evidence, where, "evidence");
    forbid(has_mode, where, "mode");
    forbid(has_method, where, "method");
    forbid(has_then, where, "then");
    forbid(q.trials.has_value(), where, "trials");
    forbid(q.seed.has_value(), where, "seed");
    if (q.op == "disjunction") forbid(q.assume_no_interaction, where, "assume_no_interaction");
    for (const std::string& p : q.priors) check_prior_ref(p);
  } else if (q.op == "fuse-obs") {
    if (q.evidence.size() < 2) fail(errc::invalid_input, where + ": needs at least two evidence sets");
    if (!has_mode) fail(errc::invalid_input, where + ": needs a mode");
    forbid(has_prior, where, "prior");
    forbid(has_priors, where, "priors");
    forbid(has_method, where, "method");
    forbid(q.assume_no_interaction, where, "assume_no_interaction");
    forbid(q.trials.has_value(), where, "trials");
    forbid(q.seed.has_value(), where, "seed");
    if (has_then && q.then != "intervals") {
      fail(errc::invalid_input, where + ": then must be 'intervals'");
    }
    for (const std::string& e : q.evidence) check_evidence_ref(e);
  } else {  // combine, condition, compare, verify
    if (!has_prior) fail(errc::invalid_input, where + ": needs a prior");
    if (!has_evidence) fail(errc::invalid_input, where + ": needs evidence");
    forbid(has_priors, where, "priors");
    forbid(has_then, where, "then");
    forbid(q.assume_no_interaction, where, "assume_no_interaction");
    if (q.evidence.size() > 1 && !has_mode) {
      fail(errc::invalid_input, where + ": multiple evidence sets need a mode");
    }
    if (q.op == "condition") {
      if (has_method && q.method != "choquet" && q.method != "upperlower" && q.method != "both") {
        fail(errc::invalid_input, where + ": method must be 'choquet', 'upperlower' or 'both'");
      }
    } else {
      forbid(has_method, where, "method");
    }
    if (q.op == "verify") {
      if (q.trials && *q.trials < 1) fail(errc::invalid_input, where + ": trials must be >= 1");
      if (q.seed && *q.seed < 0) fail(errc::invalid_input, where + ": seed must be >= 0");
    } else {
      forbid(q.trials.has_value(), where, "trials");
      forbid(q.seed.has_value(), where, "seed");
    }
    check_prior_ref(q.prior);
    for (const std::string& e : q.evidence) check_evidence_ref(e);
  }

  // Event references and table-size limits.
  if (q.events_absent || q.events_all) {
    if (m.frame.size() > 16) {
      fail(errc::frame_too_large, where + ": events \"all\" needs a frame of at most 16 outcomes");
    }
  } else {
    with_context(where, [&] {
      for (const std::vector<std::string>& labels : q.events) m.frame.event_of(labels);
    });
  }
}

// --- rendering ---------------------------------------------------------

std::string format_value(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s = buf;
  if (s.size() > 1 && s[0] == '-' && s.find_first_not_of("0.", 1) == std::string::npos) {
    s.erase(0, 1);  // normalize "-0.0000" to "0.0000"
  }
  return s;
}

class Emitter {
 public:
  Emitter(std::ostream& out, const RunOptions& opts) : out_(out), opts_(opts) {}

  void table(const std::string& qid, const std::string& title, const Frame& frame,
             const std::vector<IntervalTable::Row>& rows) {
    if (opts_.pretty) {
      out_ << "query " << qid << ": " << title << "\n";
      std::size_t w = 5;  // "event"
      for (const auto& r : rows) w = std::max(w, display_width(frame.event_label(r.event)));
      pretty_row("event", "lower", "upper", w);
      for (const auto& r : rows) {
        pretty_row(frame.event_label(r.event), format_value(r.lower, opts_.decimals),
                   format_value(r.upper, opts_.decimals), w);
      }
      out_ << "\n";
    } else {
      for (const auto& r : rows) {
        out_ << qid << '\t' << frame.event_label(r.event) << '\t'
             << format_value(r.lower, opts_.decimals) << '\t'
             << format_value(r.upper, opts_.decimals) << '\n';
      }
    }
  }

 private:
  // Column width in code points, so multi-byte labels such as "∅" pad evenly.
  static std::size_t display_width(const std::string& s) {
    std::size_t n = 0;
    for (unsigned char b : s) {
      if ((b & 0xC0) != 0x80) ++n;
    }
    return n;
  }

  void pretty_row(const std::string& a, const std::string& b, const std::string& c,
                  std::size_t w) {
    out_ << "  " << a;
    for (std::size_t i = display_width(a); i < w + 2; ++i) out_ << ' ';
    for (std::size_t i = b.size(); i < 10; ++i) out_ << ' ';
    out_ << b;
    for (std::size_t i = c.size(); i < 10; ++i) out_ << ' ';
    out_ << c << "\n";
  }

  std::ostream& out_;
  const RunOptions& opts_;
};

// --- execution ---------------------------------------------------------

struct BuiltModel {
  std::map<std::string, CredalSet> priors;
  std::map<std::string, EvidenceSet> evidence;
};

BuiltModel build_model(const ModelFile& m) {
  BuiltModel built;
  for (const PriorDecl& p : m.priors) {
    with_context("prior '" + p.name + "'", [&] {
      built.priors.emplace(
          p.name, make_credal_set(m.frame, p.extremes,
                                  std::set<std::string>(p.contexts.begin(), p.contexts.end())));
    });
  }
  for (const EvidenceDecl& e : m.evidence) {
    with_context("evidence '" + e.name + "'", [&] {
      if (e.likelihood) {
        built.evidence.emplace(e.name, make_evidence_set(m.frame, {*e.likelihood}));
      } else if (e.lower) {
        built.evidence.emplace(e.name, interval_evidence(make_likelihood(m.frame, *e.lower),
                                                         make_likelihood(m.frame, *e.upper)));
      } else {
        built.evidence.emplace(e.name, make_evidence_set(m.frame, *e.extremes));
      }
    });
  }
  return built;
}

std::vector<Event> resolve_events(const Frame& frame, const QueryRecord& q) {
  if (q.events_absent || q.events_all) return all_events_by_size(frame.size());
  std::vector<Event> out;
  out.reserve(q.events.size());
  for (const std::vector<std::string>& labels : q.events) out.push_back(frame.event_of(labels));
  return out;
}

EvidenceSet fold_evidence(const BuiltModel& built, const QueryRecord& q) {
  EvidenceSet acc = built.evidence.at(q.evidence[0]);
  for (std::size_t i = 1; i < q.evidence.size(); ++i) {
    const EvidenceSet& next = built.evidence.at(q.evidence[i]);
    acc = q.mode == "frechet" ? observe_and_frechet(acc, next)
                              : observe_and_independent(acc, next);
  }
  return acc;
}

std::vector<IntervalTable::Row> rows_from_table(const EventTable& t,
                                                const std::vector<Event>& events) {
  std::vector<IntervalTable::Row> rows;
  rows.reserve(events.size());
  for (Event e : events) rows.push_back({e, t.lo(e), t.up(e)});
  return rows;
}

std::string joined(const std::vector<std::string>& names) {
  std::string s;
  for (const std::string& n : names) {
    if (!s.empty()) s += '+';
    s += n;
  }
  return s;
}

void run_query(const ModelFile& m, const BuiltModel& built, const QueryRecord& q,
               std::size_t index, const RunOptions& opts, Emitter& em, std::ostream& diag) {
  const std::string qid = std::to_string(index);
  const std::vector<Event> events = resolve_events(m.frame, q);

  auto conditional_tables = [&](const std::string& suffix_base, bool choquet_side,
                                bool upperlower_side) {
    const EvidenceSet folded = fold_evidence(built, q);
    const ConditionalEnsemble ens = ensemble_of(combine(built.priors.at(q.prior), folded));
    if (ens.tiny_normalizer()) {
      diag << "warning: query " << index << ": ensemble normalizer " << ens.normalizer
           << " is below 1e-6; prior and evidence are nearly in total conflict\n";
    }
    const std::string src = q.prior + "|" + joined(q.evidence);
    if (choquet_side) {
      const IntervalTable t = conditional_intervals(ens, events);
      em.table(qid + suffix_base + (upperlower_side ? ":choquet" : ""),
               "conditionals of " + src + " (choquet)", m.frame, t.rows);
    }
    if (upperlower_side) {
      const IntervalTable t = upper_lower_conditioning(ens, events);
      em.table(qid + suffix_base + (choquet_side ? ":upperlower" : ""),
               "conditionals of " + src + " (upper-lower)", m.frame, t.rows);
    }
  };

  if (q.op == "envelope") {
    const Envelope env = envelope_of(built.priors.at(q.prior));
    em.table(qid, "envelope of " + q.prior, m.frame, rows_from_table(env, events));
  } else if (q.op == "conjunction" || q.op == "disjunction") {
    const CredalSet& a = built.priors.at(q.priors[0]);
    const CredalSet& b = built.priors.at(q.priors[1]);
    const CredalSet r = q.op == "conjunction" ? conjunction(a, b, q.assume_no_interaction)
                                              : disjunction(a, b);
    const Envelope env = envelope_of(r);  // EmptySet when a conjunction came up empty
    em.table(qid, q.op + " of " + q.priors[0] + " and " + q.priors[1], m.frame,
             rows_from_table(env, events));
  } else if (q.op == "fuse-obs") {
    const EvidenceSet folded = fold_evidence(built, q);
    const ConsistencyTable t = consistency_table(possibility_of(folded));
    em.table(qid, "consistency of " + joined(q.evidence) + " (" + q.mode + ")", m.frame,
             rows_from_table(t, events));
  } else if (q.op == "combine") {
    conditional_tables("", true, false);
  } else if (q.op == "condition") {
    const std::string method = q.method.empty() ? "choquet" : q.method;
    conditional_tables("", method != "upperlower", method != "choquet");
  } else if (q.op == "compare") {
    const Envelope env = envelope_of(built.priors.at(q.prior));
    em.table(qid + ":prior", "envelope of " + q.prior, m.frame, rows_from_table(env, events));
    const EvidenceSet folded = fold_evidence(built, q);
    const ConsistencyTable ct = consistency_table(possibility_of(folded));
    em.table(qid + ":evidence", "consistency of " + joined(q.evidence), m.frame,
             rows_from_table(ct, events));
    conditional_tables("", true, true);
  } else {  // verify
    const EvidenceSet folded = fold_evidence(built, q);
    const CredalSet& c = built.priors.at(q.prior);
    const long long trials = q.trials.value_or(10000);
    const std::uint64_t seed =
        q.seed ? static_cast<std::uint64_t>(*q.seed) : opts.seed;
    std::vector<IntervalTable::Row> rows;
    std::vector<Event> violated;
    for (std::size_t j = 0; j < events.size(); ++j) {
      const std::uint64_t event_seed = seed + 0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(j);
      const SimulationReport rep =
          check_possibility_bound(c, folded, events[j], trials, event_seed);
      rows.push_back({events[j], rep.empirical_consistency, rep.bound});
      if (rep.violated) violated.push_back(events[j]);
    }
    em.table(qid, "verify " + q.prior + "|" + joined(q.evidence) + " (empirical vs bound, " +
                      std::to_string(trials) + " trials)",
             m.frame, rows);
    if (!violated.empty()) {
      fail(errc::bound_violated, "empirical consistency exceeds the possibility bound for event '" +
                                     m.frame.event_label(violated[0]) + "'");
    }
  }
}

}  // namespace

ModelFile parse_model(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& pe) {
    syntax_error(text, pe.byte);
  }
  if (!doc.is_object()) fail(errc::invalid_input, "model: top level must be an object");
  check_keys(doc, {"frame", "priors", "evidence", "queries"}, "model");
  if (!doc.contains("frame")) fail(errc::invalid_input, "model: missing 'frame'");

  ModelFile m;
  {
    if (!doc["frame"].is_array()) fail(errc::invalid_input, "model: frame must be an array");
    std::vector<std::string> labels;
    for (const json& l : doc["frame"]) labels.push_back(want_string(l, "frame label"));
    with_context("frame", [&] { m.frame = Frame(std::move(labels)); });
  }
  const std::size_t fsize = m.frame.size();

  if (doc.contains("priors")) {
    if (!doc["priors"].is_array()) fail(errc::invalid_input, "model: priors must be an array");
    for (const json& pj : doc["priors"]) {
      if (!pj.is_object()) fail(errc::invalid_input, "prior: expected an object");
      check_keys(pj, {"name", "contexts", "extremes"}, "prior");
      PriorDecl p;
      if (!pj.contains("name")) fail(errc::invalid_input, "prior: missing 'name'");
      p.name = want_string(pj["name"], "prior name");
      const std::string where = "prior '" + p.name + "'";
      for (const PriorDecl& prev : m.priors) {
        if (prev.name == p.name) fail(errc::invalid_input, where + ": duplicate name");
      }
      if (pj.contains("contexts")) {
        for (const json& c : pj["contexts"]) p.contexts.push_back(want_string(c, where));
      }
      if (!pj.contains("extremes") || !pj["extremes"].is_array() || pj["extremes"].empty()) {
        fail(errc::invalid_input, where + ": needs a nonempty 'extremes' array");
      }
      std::size_t k = 0;
      for (const json& vj : pj["extremes"]) {
        geom::Vec v = want_vector(vj, where);
        check_length(v, fsize, where + ": extreme " + std::to_string(++k));
        p.extremes.push_back(std::move(v));
      }
      with_context(where, [&] { make_credal_set(m.frame, p.extremes); });
      m.priors.push_back(std::move(p));
    }
  }

  if (doc.contains("evidence")) {
    if (!doc["evidence"].is_array()) fail(errc::invalid_input, "model: evidence must be an array");
    for (const json& ej : doc["evidence"]) {
      if (!ej.is_object()) fail(errc::invalid_input, "evidence: expected an object");
      check_keys(ej, {"name", "likelihood", "lower", "upper", "extremes"}, "evidence");
      EvidenceDecl e;
      if (!ej.contains("name")) fail(errc::invalid_input, "evidence: missing 'name'");
      e.name = want_string(ej["name"], "evidence name");
      const std::string where = "evidence '" + e.name + "'";
      for (const EvidenceDecl& prev : m.evidence) {
        if (prev.name == e.name) fail(errc::invalid_input, where + ": duplicate name");
      }
      const int forms = int(ej.contains("likelihood")) +
                        int(ej.contains("lower") || ej.contains("upper")) +
                        int(ej.contains("extremes"));
      if (forms != 1) {
        fail(errc::invalid_input,
             where + ": give exactly one of 'likelihood', 'lower'+'upper', 'extremes'");
      }
      if (ej.contains("likelihood")) {
        e.likelihood = want_vector(ej["likelihood"], where);
        check_length(*e.likelihood, fsize, where);
        with_context(where, [&] { make_likelihood(m.frame, *e.likelihood); });
      } else if (ej.contains("lower") || ej.contains("upper")) {
        if (!ej.contains("lower") || !ej.contains("upper")) {
          fail(errc::invalid_input, where + ": needs both 'lower' and 'upper'");
        }
        e.lower = want_vector(ej["lower"], where + " lower");
        e.upper = want_vector(ej["upper"], where + " upper");
        check_length(*e.lower, fsize, where + " lower");
        check_length(*e.upper, fsize, where + " upper");
        with_context(where, [&] {
          interval_evidence(make_likelihood(m.frame, *e.lower), make_likelihood(m.frame, *e.upper));
        });
      } else {
        if (!ej["extremes"].is_array() || ej["extremes"].empty()) {
          fail(errc::invalid_input, where + ": needs a nonempty 'extremes' array");
        }
        e.extremes.emplace();
        std::size_t k = 0;
        for (const json& vj : ej["extremes"]) {
          geom::Vec v = want_vector(vj, where);
          check_length(v, fsize, where + ": extreme " + std::to_string(++k));
          e.extremes->push_back(std::move(v));
        }
        with_context(where, [&] { make_evidence_set(m.frame, *e.extremes); });
      }
      m.evidence.push_back(std::move(e));
    }
  }

  if (doc.contains("queries")) {
    if (!doc["queries"].is_array()) fail(errc::invalid_input, "model: queries must be an array");
    std::size_t qi = 0;
    for (const json& qj : doc["queries"]) {
      ++qi;
      const std::string where = "query " + std::to_string(qi);
      if (!qj.is_object()) fail(errc::invalid_input, where + ": expected an object");
      check_keys(qj,
                 {"op", "prior", "priors", "evidence", "mode", "method", "then",
                  "assume_no_interaction", "events", "trials", "seed"},
                 where);
      QueryRecord q;
      if (!qj.contains("op")) fail(errc::invalid_input, where + ": missing 'op'");
      q.op = want_string(qj["op"], where + " op");
      if (qj.contains("prior")) q.prior = want_string(qj["prior"], where + " prior");
      if (qj.contains("priors")) q.priors = want_name_list(qj["priors"], where + " priors");
      if (qj.contains("evidence")) q.evidence = want_name_list(qj["evidence"], where + " evidence");
      if (qj.contains("mode")) q.mode = want_string(qj["mode"], where + " mode");
      if (qj.contains("method")) q.method = want_string(qj["method"], where + " method");
      if (qj.contains("then")) q.then = want_string(qj["then"], where + " then");
      if (qj.contains("assume_no_interaction")) {
        if (!qj["assume_no_interaction"].is_boolean()) {
          fail(errc::invalid_input, where + ": assume_no_interaction must be a boolean");
        }
        q.assume_no_interaction = qj["assume_no_interaction"].get<bool>();
      }
      if (qj.contains("events")) parse_events(qj["events"], q, where);
      if (qj.contains("trials")) {
        if (!qj["trials"].is_number_integer()) {
          fail(errc::invalid_input, where + ": trials must be an integer");
        }
        q.trials = qj["trials"].get<long long>();
      }
      if (qj.contains("seed")) {
        if (!qj["seed"].is_number_integer()) {
          fail(errc::invalid_input, where + ": seed must be an integer");
        }
        q.seed = qj["seed"].get<long long>();
      }
      validate_query(m, q, where);
      m.queries.push_back(std::move(q));
    }
  }
  return m;
}

std::string serialize_model(const ModelFile& m) {
  ordered_json doc;
  doc["frame"] = m.frame.labels();
  doc["priors"] = ordered_json::array();
  for (const PriorDecl& p : m.priors) {
    ordered_json pj;
    pj["name"] = p.name;
    if (!p.contexts.empty()) pj["contexts"] = p.contexts;
    pj["extremes"] = p.extremes;
    doc["priors"].push_back(std::move(pj));
  }
  doc["evidence"] = ordered_json::array();
  for (const EvidenceDecl& e : m.evidence) {
    ordered_json ej;
    ej["name"] = e.name;
    if (e.likelihood) ej["likelihood"] = *e.likelihood;
    if (e.lower) ej["lower"] = *e.lower;
    if (e.upper) ej["upper"] = *e.upper;
    if (e.extremes) ej["extremes"] = *e.extremes;
    doc["evidence"].push_back(std::move(ej));
  }
  doc["queries"] = ordered_json::array();
  for (const QueryRecord& q : m.queries) {
    ordered_json qj;
    qj["op"] = q.op;
    if (!q.prior.empty()) qj["prior"] = q.prior;
    if (!q.priors.empty()) qj["priors"] = q.priors;
    if (!q.evidence.empty()) qj["evidence"] = q.evidence;
    if (!q.mode.empty()) qj["mode"] = q.mode;
    if (!q.method.empty()) qj["method"] = q.method;
    if (!q.then.empty()) qj["then"] = q.then;
    if (q.assume_no_interaction) qj["assume_no_interaction"] = true;
    if (!q.events_absent) {
      if (q.events_all) {
        qj["events"] = "all";
      } else {
        ordered_json evs = ordered_json::array();
        for (const auto& labels : q.events) evs.push_back(labels);
        qj["events"] = std::move(evs);
      }
    }
    if (q.trials) qj["trials"] = *q.trials;
    if (q.seed) qj["seed"] = *q.seed;
    doc["queries"].push_back(std::move(qj));
  }
  return doc.dump(2) + "\n";
}

void run_model(const ModelFile& m, const RunOptions& opts, std::ostream& out,
               std::ostream& diag) {
  const BuiltModel built = build_model(m);
  Emitter em(out, opts);
  for (std::size_t i = 0; i < m.queries.size(); ++i) {
    const QueryRecord& q = m.queries[i];
    try {
      run_query(m, built, q, i + 1, opts, em, diag);
    } catch (const Error& err) {
      fail(err.code(), "query " + std::to_string(i + 1) + " (" + q.op + "): " + err.detail());
    }
  }
}

int exit_code_for(errc code) {
  switch (code) {
    case errc::parse_error: return 10;
    case errc::unknown_reference: return 11;
    case errc::vector_length_mismatch: return 12;
    case errc::invalid_bounds: return 13;
    case errc::dimension_mismatch: return 14;
    case errc::context_mismatch: return 15;
    case errc::empty_set: return 16;
    case errc::total_conflict: return 17;
    case errc::frame_too_large: return 18;
    case errc::invalid_input: return 19;
    case errc::empty_input: return 20;
    case errc::bound_violated: return 21;
    case errc::numeric_failure: return 22;
  }
  return 1;
}

}  // namespace credalkit
