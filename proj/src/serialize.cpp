#include "qdc/serialize.hpp"

namespace qdc {
namespace {

const Json& require(const Json& j, const char* key, const char* context) {
  if (!j.is_object() || !j.contains(key)) {
    throw std::invalid_argument(std::string(context) + ": missing field \"" + key + "\"");
  }
  return j.at(key);
}

double require_number(const Json& j, const char* key, const char* context) {
  const Json& v = require(j, key, context);
  if (!v.is_number()) {
    throw std::invalid_argument(std::string(context) + ": field \"" + key +
                                "\" must be a number");
  }
  return v.get<double>();
}

int require_int(const Json& j, const char* key, const char* context) {
  const Json& v = require(j, key, context);
  if (!v.is_number_integer()) {
    throw std::invalid_argument(std::string(context) + ": field \"" + key +
                                "\" must be an integer");
  }
  return v.get<int>();
}

std::string require_string(const Json& j, const char* key, const char* context) {
  const Json& v = require(j, key, context);
  if (!v.is_string()) {
    throw std::invalid_argument(std::string(context) + ": field \"" + key +
                                "\" must be a string");
  }
  return v.get<std::string>();
}

std::vector<std::string> string_list(const Json& j, const char* context) {
  if (!j.is_array()) throw std::invalid_argument(std::string(context) + ": expected an array");
  std::vector<std::string> out;
  for (const Json& item : j) {
    if (!item.is_string()) {
      throw std::invalid_argument(std::string(context) + ": expected strings");
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}

template <std::size_t N>
std::array<std::string, N> string_array(const Json& j, const char* context) {
  std::vector<std::string> items = string_list(j, context);
  if (items.size() != N) {
    throw std::invalid_argument(std::string(context) + ": expected exactly " +
                                std::to_string(N) + " labels");
  }
  std::array<std::string, N> out;
  std::copy(items.begin(), items.end(), out.begin());
  return out;
}

Json parties_to_json(const std::vector<Party>& parties) {
  Json out = Json::array();
  for (const Party& p : parties) out.push_back(Json::array({p.label, p.dim}));
  return out;
}

std::vector<Party> parties_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) {
    throw std::invalid_argument("state spec: \"parties\" must be a non-empty array");
  }
  std::vector<Party> parties;
  for (const Json& item : j) {
    if (!item.is_array() || item.size() != 2 || !item.at(0).is_string() ||
        !item.at(1).is_number_integer()) {
      throw std::invalid_argument("state spec: each party must be a [label, dim] pair");
    }
    parties.push_back({item.at(0).get<std::string>(), item.at(1).get<Eigen::Index>()});
  }
  return parties;
}

Verdict verdict_from_name(const std::string& name) {
  if (name == "yes") return Verdict::yes;
  if (name == "no") return Verdict::no;
  if (name == "unknown") return Verdict::unknown;
  throw std::invalid_argument("classification: unknown verdict \"" + name + "\"");
}

Shell shell_from_name(const std::string& name) {
  for (Shell s : {Shell::SeparableOrPpt, Shell::NptUndetermined, Shell::Distillable,
                  Shell::GlobalDenseCoding, Shell::LoccDenseCoding, Shell::LoDenseCoding}) {
    if (shell_name(s) == name) return s;
  }
  throw std::invalid_argument("classification: unknown shell \"" + name + "\"");
}

MultipartiteState state_from_constructor(const std::string& name, const Json& params,
                                         double tol);

MultipartiteState state_from_spec(const Json& j, double tol) {
  if (!j.is_object()) throw std::invalid_argument("state spec: expected a JSON object");
  if (j.contains("constructor")) {
    const std::string name = require_string(j, "constructor", "state spec");
    const Json params = j.contains("params") ? j.at("params") : Json::object();
    if (!params.is_object()) {
      throw std::invalid_argument("state spec: \"params\" must be an object");
    }
    return state_from_constructor(name, params, tol);
  }
  if (j.contains("parties")) {
    std::vector<Party> parties = parties_from_json(j.at("parties"));
    CMat m = matrix_from_json(require(j, "matrix", "state spec"));
    return MultipartiteState(std::move(parties), std::move(m), tol);
  }
  throw std::invalid_argument("state spec: need \"constructor\" or \"parties\"");
}

MultipartiteState state_from_constructor(const std::string& name, const Json& params,
                                         double tol) {
  if (name == "bell") {
    const int k = require_int(params, "k", "bell spec");
    if (params.contains("labels")) {
      return bell(k, string_array<2>(params.at("labels"), "bell spec labels"));
    }
    return bell(k);
  }
  if (name == "singlet") return singlet();
  if (name == "werner") {
    const double p = require_number(params, "p", "werner spec");
    if (params.contains("labels")) {
      return werner(p, string_array<2>(params.at("labels"), "werner spec labels"));
    }
    return werner(p);
  }
  if (name == "ghz") return ghz(require_int(params, "n", "ghz spec"));
  if (name == "noisy_ghz") {
    return noisy_ghz(require_int(params, "n", "noisy_ghz spec"),
                     require_number(params, "p", "noisy_ghz spec"));
  }
  if (name == "smolin") return smolin();
  if (name == "frank") {
    if (params.contains("labels")) {
      return frank_state(string_array<4>(params.at("labels"), "frank spec labels"));
    }
    return frank_state();
  }
  if (name == "tensor") {
    const Json& factors = require(params, "factors", "tensor spec");
    if (!factors.is_array() || factors.size() < 2) {
      throw std::invalid_argument("tensor spec: \"factors\" needs at least two entries");
    }
    MultipartiteState out = state_from_spec(factors.at(0), tol);
    for (std::size_t i = 1; i < factors.size(); ++i) {
      out = tensor_states(out, state_from_spec(factors.at(i), tol));
    }
    return out;
  }
  if (name == "explicit") {
    std::vector<Party> parties = parties_from_json(require(params, "parties", "explicit spec"));
    CMat m = matrix_from_json(require(params, "matrix", "explicit spec"));
    return MultipartiteState(std::move(parties), std::move(m), tol);
  }
  throw std::invalid_argument("state spec: unknown constructor \"" + name + "\"");
}

}  // namespace

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j.at(0).is_number() || !j.at(1).is_number()) {
    throw std::invalid_argument("complex: expected a [re, im] pair");
  }
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

Json matrix_to_json(const CMat& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMat matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) {
    throw std::invalid_argument("matrix: expected a non-empty array of rows");
  }
  const std::size_t n_rows = j.size();
  std::size_t n_cols = 0;
  CMat m;
  for (std::size_t r = 0; r < n_rows; ++r) {
    const Json& row = j.at(r);
    if (!row.is_array()) throw std::invalid_argument("matrix: rows must be arrays");
    if (r == 0) {
      n_cols = row.size();
      m = CMat::Zero(static_cast<Eigen::Index>(n_rows), static_cast<Eigen::Index>(n_cols));
    }
    if (row.size() != n_cols) throw std::invalid_argument("matrix: ragged rows");
    for (std::size_t c = 0; c < n_cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          complex_from_json(row.at(c));
    }
  }
  return m;
}

Json state_to_json(const MultipartiteState& s) {
  return Json{{"parties", parties_to_json(s.parties())},
              {"matrix", matrix_to_json(s.matrix())}};
}

MultipartiteState parse_state_spec(const Json& j, double tol) {
  return state_from_spec(j, tol);
}

Json layout_to_json(const DenseCodingLayout& layout) {
  Json routing = Json::object();
  for (const auto& [sender, receiver] : layout.routing) routing[sender] = receiver;
  return Json{{"senders", layout.senders},
              {"receivers", layout.receivers},
              {"routing", std::move(routing)}};
}

DenseCodingLayout parse_layout_spec(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("layout spec: expected a JSON object");
  DenseCodingLayout layout;
  layout.senders = string_list(require(j, "senders", "layout spec"), "layout spec senders");
  layout.receivers =
      string_list(require(j, "receivers", "layout spec"), "layout spec receivers");
  if (j.contains("routing")) {
    const Json& routing = j.at("routing");
    if (!routing.is_object()) {
      throw std::invalid_argument("layout spec: \"routing\" must be an object");
    }
    for (const auto& [sender, receiver] : routing.items()) {
      if (!receiver.is_string()) {
        throw std::invalid_argument("layout spec: routing targets must be strings");
      }
      layout.routing[sender] = receiver.get<std::string>();
    }
  }
  layout.validate();
  return layout;
}

Json capacity_report_to_json(const CapacityReport& report) {
  Json out{{"layout", layout_to_json(report.layout)},
           {"classical_baseline", report.classical_baseline},
           {"capacity", report.capacity},
           {"raw_excess", report.raw_excess},
           {"state_entropy", report.state_entropy},
           {"receivers_entropy", report.receivers_entropy}};
  if (report.split_entropies) {
    out["split_entropies"] = Json{{"receiver_one", report.split_entropies->receiver_one},
                                  {"receiver_two", report.split_entropies->receiver_two},
                                  {"side_one", report.split_entropies->side_one},
                                  {"side_two", report.split_entropies->side_two}};
  }
  if (report.locc_upper_bound) out["locc_upper_bound"] = *report.locc_upper_bound;
  if (report.lo_capacity) out["lo_capacity"] = *report.lo_capacity;
  if (report.lo_capacity_raw) out["lo_capacity_raw"] = *report.lo_capacity_raw;
  return out;
}

CapacityReport capacity_report_from_json(const Json& j) {
  CapacityReport report;
  report.layout = parse_layout_spec(require(j, "layout", "capacity report"));
  report.classical_baseline = require_number(j, "classical_baseline", "capacity report");
  report.capacity = require_number(j, "capacity", "capacity report");
  report.raw_excess = require_number(j, "raw_excess", "capacity report");
  report.state_entropy = require_number(j, "state_entropy", "capacity report");
  report.receivers_entropy = require_number(j, "receivers_entropy", "capacity report");
  if (j.contains("split_entropies")) {
    const Json& split = j.at("split_entropies");
    report.split_entropies =
        SplitEntropies{require_number(split, "receiver_one", "split entropies"),
                       require_number(split, "receiver_two", "split entropies"),
                       require_number(split, "side_one", "split entropies"),
                       require_number(split, "side_two", "split entropies")};
  }
  if (j.contains("locc_upper_bound")) {
    report.locc_upper_bound = require_number(j, "locc_upper_bound", "capacity report");
  }
  if (j.contains("lo_capacity")) {
    report.lo_capacity = require_number(j, "lo_capacity", "capacity report");
  }
  if (j.contains("lo_capacity_raw")) {
    report.lo_capacity_raw = require_number(j, "lo_capacity_raw", "capacity report");
  }
  return report;
}

Json classification_to_json(const ClassificationReport& report) {
  Json evidence = Json::object();
  for (const auto& [name, item] : report.evidence) {
    evidence[name] = Json{{"verdict", verdict_name(item.verdict)},
                          {"value", item.value},
                          {"source", item.source}};
  }
  Json cuts = Json::array();
  for (const CutResult& cut : report.cut_results) {
    cuts.push_back(Json{
        {"cut", Json{{"side_one", cut.cut.side_one}, {"side_two", cut.cut.side_two}}},
        {"ppt", Json{{"ppt", cut.ppt.ppt}, {"min_eigenvalue", cut.ppt.min_eigenvalue}}},
        {"reduction",
         Json{{"violated", cut.reduction.violated},
              {"min_eigenvalue_side_one", cut.reduction.min_eigenvalue_side_one},
              {"min_eigenvalue_side_two", cut.reduction.min_eigenvalue_side_two}}}});
  }
  return Json{{"shell", shell_name(report.shell)},
              {"evidence", std::move(evidence)},
              {"cut_results", std::move(cuts)}};
}

ClassificationReport classification_from_json(const Json& j) {
  ClassificationReport report;
  report.shell = shell_from_name(require_string(j, "shell", "classification"));
  const Json& evidence = require(j, "evidence", "classification");
  if (!evidence.is_object()) {
    throw std::invalid_argument("classification: \"evidence\" must be an object");
  }
  for (const auto& [name, item] : evidence.items()) {
    report.evidence.emplace(
        name, Evidence{verdict_from_name(require_string(item, "verdict", "evidence")),
                       require_number(item, "value", "evidence"),
                       require_string(item, "source", "evidence")});
  }
  const Json& cuts = require(j, "cut_results", "classification");
  if (!cuts.is_array()) {
    throw std::invalid_argument("classification: \"cut_results\" must be an array");
  }
  for (const Json& item : cuts) {
    const Json& cut = require(item, "cut", "cut result");
    const Json& ppt = require(item, "ppt", "cut result");
    const Json& reduction = require(item, "reduction", "cut result");
    CutResult out{
        {string_list(require(cut, "side_one", "cut"), "cut side_one"),
         string_list(require(cut, "side_two", "cut"), "cut side_two")},
        {require(ppt, "ppt", "ppt result").get<bool>(),
         require_number(ppt, "min_eigenvalue", "ppt result")},
        {require(reduction, "violated", "reduction result").get<bool>(),
         require_number(reduction, "min_eigenvalue_side_one", "reduction result"),
         require_number(reduction, "min_eigenvalue_side_two", "reduction result")}};
    report.cut_results.push_back(std::move(out));
  }
  return report;
}

Json threshold_to_json(const ThresholdResult& result) {
  return Json{{"root", result.root},
              {"lower", result.lower},
              {"upper", result.upper},
              {"residual", result.residual},
              {"iterations", result.iterations}};
}

ThresholdResult threshold_from_json(const Json& j) {
  return {require_number(j, "root", "threshold"), require_number(j, "lower", "threshold"),
          require_number(j, "upper", "threshold"),
          require_number(j, "residual", "threshold"),
          require_int(j, "iterations", "threshold")};
}

Json decode_record_to_json(const MeasurementOutcomeRecord& record) {
  Json outcomes = Json::array();
  for (const RoundOutcome& out : record.outcomes) {
    outcomes.push_back(Json{{"round", out.round},
                            {"side", out.side},
                            {"projector_index", out.projector_index},
                            {"probability", out.probability}});
  }
  return Json{{"message", record.message},
              {"outcomes", std::move(outcomes)},
              {"decoded", record.decoded},
              {"post_state", state_to_json(record.post_state)},
              {"probability", record.probability}};
}

MeasurementOutcomeRecord decode_record_from_json(const Json& j) {
  const Json& outcomes = require(j, "outcomes", "decode record");
  if (!outcomes.is_array()) {
    throw std::invalid_argument("decode record: \"outcomes\" must be an array");
  }
  std::vector<RoundOutcome> rounds;
  for (const Json& item : outcomes) {
    rounds.push_back({require_int(item, "round", "round outcome"),
                      require_string(item, "side", "round outcome"),
                      require_int(item, "projector_index", "round outcome"),
                      require_number(item, "probability", "round outcome")});
  }
  return {require_int(j, "message", "decode record"), std::move(rounds),
          require_int(j, "decoded", "decode record"),
          parse_state_spec(require(j, "post_state", "decode record")),
          require_number(j, "probability", "decode record")};
}

}  // namespace qdc
