// Command-line front end: state/layout specs in, capacity, classification,
// protocol simulation and threshold reports out, as JSON (default) or tables.

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "qdc/serialize.hpp"

namespace {

using qdc::Json;

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open " + path.string());
  }
  return Json::parse(in);
}

std::string fmt6(double x) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(6) << x;
  return out.str();
}

void print_row(const std::string& key, const std::string& value) {
  std::cout << "  " << std::left << std::setw(24) << key << value << "\n";
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += ",";
    out += items[i];
  }
  return out;
}

void print_capacity_table(const qdc::CapacityReport& report) {
  std::cout << "capacity report\n";
  print_row("senders", join(report.layout.senders));
  print_row("receivers", join(report.layout.receivers));
  print_row("classical_baseline", fmt6(report.classical_baseline));
  print_row("capacity", fmt6(report.capacity));
  print_row("raw_excess", fmt6(report.raw_excess));
  print_row("state_entropy", fmt6(report.state_entropy));
  print_row("receivers_entropy", fmt6(report.receivers_entropy));
  if (report.split_entropies) {
    print_row("receiver_one_entropy", fmt6(report.split_entropies->receiver_one));
    print_row("receiver_two_entropy", fmt6(report.split_entropies->receiver_two));
    print_row("side_one_entropy", fmt6(report.split_entropies->side_one));
    print_row("side_two_entropy", fmt6(report.split_entropies->side_two));
  }
  if (report.locc_upper_bound) print_row("locc_upper_bound", fmt6(*report.locc_upper_bound));
  if (report.lo_capacity) print_row("lo_capacity", fmt6(*report.lo_capacity));
  if (report.lo_capacity_raw) print_row("lo_capacity_raw", fmt6(*report.lo_capacity_raw));
}

std::string cut_name(const qdc::Bipartition& cut) {
  return join(cut.side_one) + ":" + join(cut.side_two);
}

void print_classification_table(const qdc::ClassificationReport& report) {
  std::cout << "classification\n";
  print_row("shell", qdc::shell_name(report.shell));
  for (const auto& [name, item] : report.evidence) {
    print_row("evidence " + name, qdc::verdict_name(item.verdict) + "  " +
                                      fmt6(item.value) + "  (" + item.source + ")");
  }
  for (const qdc::CutResult& cut : report.cut_results) {
    print_row("cut " + cut_name(cut.cut),
              std::string(cut.ppt.ppt ? "PPT" : "NPT") + "  min_pt_eig " +
                  fmt6(cut.ppt.min_eigenvalue) + "  reduction " +
                  (cut.reduction.violated ? "violated" : "intact") + "  min_eig " +
                  fmt6(std::min(cut.reduction.min_eigenvalue_side_one,
                                cut.reduction.min_eigenvalue_side_two)));
  }
}

struct SimulationSummary {
  std::vector<qdc::MeasurementOutcomeRecord> records;
  int messages_total = 0;
  int messages_correct = 0;
  double mutual_information = 0.0;
};

SimulationSummary simulate(bool all, int message) {
  SimulationSummary out;
  std::vector<int> messages;
  if (all) {
    for (int m = 0; m < 8; ++m) messages.push_back(m);
  } else {
    messages.push_back(message);
  }
  for (int m : messages) {
    bool correct = true;
    for (qdc::MeasurementOutcomeRecord& rec : qdc::ghz4_locc_decode(m)) {
      correct = correct && rec.decoded == rec.message;
      out.records.push_back(std::move(rec));
    }
    out.messages_total += 1;
    out.messages_correct += correct ? 1 : 0;
  }
  out.mutual_information = qdc::mutual_information(qdc::ghz4_transcript_distribution());
  return out;
}

Json simulation_to_json(const SimulationSummary& summary) {
  Json records = Json::array();
  for (const qdc::MeasurementOutcomeRecord& rec : summary.records) {
    records.push_back(qdc::decode_record_to_json(rec));
  }
  return Json{{"records", std::move(records)},
              {"messages_total", summary.messages_total},
              {"messages_correct", summary.messages_correct},
              {"mutual_information_bits", summary.mutual_information}};
}

void print_simulation_table(const SimulationSummary& summary) {
  for (const qdc::MeasurementOutcomeRecord& rec : summary.records) {
    std::cout << "message " << rec.message << "\n";
    for (const qdc::RoundOutcome& out : rec.outcomes) {
      print_row("round " + std::to_string(out.round) + " " + out.side,
                "outcome " + std::to_string(out.projector_index) + "  p " +
                    fmt6(out.probability));
    }
    print_row("decoded", std::to_string(rec.decoded) + "  branch p " +
                             fmt6(rec.probability));
  }
  std::cout << "decoded correctly " << summary.messages_correct << "/"
            << summary.messages_total << "\n";
  std::cout << "I = " << fmt6(summary.mutual_information) << " bits\n";
}

Json run_batch_entry(const Json& entry, const std::filesystem::path& base) {
  Json out{{"state", entry.at("state")},
           {"layout", entry.at("layout")},
           {"command", entry.at("command")}};
  try {
    const qdc::MultipartiteState state =
        qdc::parse_state_spec(read_json_file(base / entry.at("state").get<std::string>()));
    const qdc::DenseCodingLayout layout =
        qdc::parse_layout_spec(read_json_file(base / entry.at("layout").get<std::string>()));
    const std::string command = entry.at("command").get<std::string>();
    if (command == "capacity") {
      out["report"] = qdc::capacity_report_to_json(qdc::capacity_report(state, layout));
    } else {
      const bool all_cuts = entry.value("all_cuts", false);
      out["report"] = qdc::classification_to_json(
          qdc::classify(state, layout, qdc::ProtocolRegistry::standard(), all_cuts));
    }
  } catch (const std::exception& e) {
    out["error"] = e.what();
  }
  return out;
}

int run_batch(const std::filesystem::path& manifest_path, int jobs) {
  const Json manifest = read_json_file(manifest_path);
  if (!manifest.is_array()) {
    throw std::invalid_argument("batch manifest must be a JSON array");
  }
  for (const Json& entry : manifest) {
    if (!entry.is_object()) {
      throw std::invalid_argument("batch manifest entries must be objects");
    }
    for (const char* key : {"state", "layout", "command"}) {
      if (!entry.contains(key) || !entry.at(key).is_string()) {
        throw std::invalid_argument(std::string("batch manifest entry needs string \"") +
                                    key + "\"");
      }
    }
    const std::string command = entry.at("command").get<std::string>();
    if (command != "capacity" && command != "classify") {
      throw std::invalid_argument("batch manifest command must be capacity or classify");
    }
  }

  const std::filesystem::path base = manifest_path.parent_path();
  std::vector<Json> results(manifest.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= results.size()) break;
      results[i] = run_batch_entry(manifest.at(i), base);
    }
  };
  const int thread_count = std::max(1, std::min<int>(jobs, static_cast<int>(results.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < thread_count; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  Json out = Json::array();
  for (Json& r : results) out.push_back(std::move(r));
  std::cout << out.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dense coding capacities, entanglement criteria and protocol simulation"};
  app.require_subcommand(1);

  std::string state_path;
  std::string layout_path;
  bool table = false;
  bool json_flag = false;
  bool all_cuts = false;
  double tol = qdc::kDefaultTol;

  auto add_io_flags = [&](CLI::App* sub) {
    CLI::Option* j = sub->add_flag("--json", json_flag, "JSON output (default)");
    CLI::Option* t = sub->add_flag("--table", table, "aligned table output");
    j->excludes(t);
    t->excludes(j);
  };

  CLI::App* capacity = app.add_subcommand("capacity", "capacity report for a state and layout");
  capacity->add_option("state", state_path, "state spec JSON file")->required();
  capacity->add_option("layout", layout_path, "layout spec JSON file")->required();
  capacity->add_option("--tol", tol, "validation tolerance");
  add_io_flags(capacity);

  CLI::App* classify = app.add_subcommand("classify", "shell classification report");
  classify->add_option("state", state_path, "state spec JSON file")->required();
  classify->add_option("layout", layout_path, "layout spec JSON file")->required();
  classify->add_option("--tol", tol, "criterion tolerance");
  classify->add_flag("--all-cuts", all_cuts, "evaluate criteria on every bipartition");
  add_io_flags(classify);

  int message = 0;
  bool all_messages = false;
  CLI::App* simulate_cmd =
      app.add_subcommand("simulate-ghz4", "run the four-qubit GHZ decoding protocol");
  CLI::Option* msg_opt = simulate_cmd->add_option("--message", message, "message index 0..7");
  CLI::Option* all_opt = simulate_cmd->add_flag("--all", all_messages, "all eight messages");
  msg_opt->excludes(all_opt);
  all_opt->excludes(msg_opt);
  add_io_flags(simulate_cmd);

  std::string family;
  std::string params_text = "{}";
  CLI::App* threshold = app.add_subcommand("threshold", "bisection threshold for a family");
  threshold->add_option("--family", family, "werner or noisy-ghz")->required();
  threshold->add_option("--params", params_text, "family parameters as JSON");
  add_io_flags(threshold);

  std::string manifest_path;
  int jobs = 1;
  CLI::App* batch = app.add_subcommand("batch", "run a manifest of capacity/classify jobs");
  batch->add_option("manifest", manifest_path, "manifest JSON file")->required();
  batch->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1, 64));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand(capacity)) {
      const qdc::MultipartiteState state =
          qdc::parse_state_spec(read_json_file(state_path), tol);
      const qdc::DenseCodingLayout layout = qdc::parse_layout_spec(read_json_file(layout_path));
      const qdc::CapacityReport report = qdc::capacity_report(state, layout);
      if (table) {
        print_capacity_table(report);
      } else {
        std::cout << qdc::capacity_report_to_json(report).dump(2) << "\n";
      }
    } else if (app.got_subcommand(classify)) {
      const qdc::MultipartiteState state =
          qdc::parse_state_spec(read_json_file(state_path), tol);
      const qdc::DenseCodingLayout layout = qdc::parse_layout_spec(read_json_file(layout_path));
      const qdc::ClassificationReport report =
          qdc::classify(state, layout, qdc::ProtocolRegistry::standard(), all_cuts, tol);
      if (table) {
        print_classification_table(report);
      } else {
        std::cout << qdc::classification_to_json(report).dump(2) << "\n";
      }
    } else if (app.got_subcommand(simulate_cmd)) {
      if (!all_messages && msg_opt->count() == 0) {
        throw std::invalid_argument("simulate-ghz4 needs --message or --all");
      }
      const SimulationSummary summary = simulate(all_messages, message);
      if (table) {
        print_simulation_table(summary);
      } else {
        std::cout << simulation_to_json(summary).dump(2) << "\n";
      }
    } else if (app.got_subcommand(threshold)) {
      const Json params = Json::parse(params_text);
      qdc::ThresholdResult result{0.0, 0.0, 0.0, 0.0, 0};
      if (family == "werner") {
        result = qdc::werner_dc_threshold(params.value("x_tol", 1e-7),
                                          params.value("lo", 1.0 / 3.0),
                                          params.value("hi", 1.0));
      } else if (family == "noisy-ghz") {
        if (!params.contains("n")) {
          throw std::invalid_argument("noisy-ghz threshold needs params.n");
        }
        const int n = params.at("n").get<int>();
        result = qdc::noisy_ghz_dc_threshold(n, qdc::ghz_layout(n),
                                             params.value("x_tol", 1e-7),
                                             params.value("lo", 0.0),
                                             params.value("hi", 1.0));
      } else {
        throw std::invalid_argument("unknown threshold family \"" + family + "\"");
      }
      if (table) {
        std::cout << "threshold " << family << "\n";
        {
          std::ostringstream root;
          root << std::fixed << std::setprecision(7) << result.root;
          print_row("root", root.str());
          std::ostringstream bracket;
          bracket << std::fixed << std::setprecision(7) << "[" << result.lower << ", "
                  << result.upper << "]";
          print_row("bracket", bracket.str());
        }
        print_row("residual", fmt6(result.residual));
        print_row("iterations", std::to_string(result.iterations));
      } else {
        Json out = qdc::threshold_to_json(result);
        out["family"] = family;
        std::cout << out.dump(2) << "\n";
      }
    } else if (app.got_subcommand(batch)) {
      return run_batch(manifest_path, jobs);
    }
    return 0;
  } catch (const qdc::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 2;
  } catch (const Json::exception& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
