/*
 * Copyright 2026 The Tomaco Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "tomaco/cli.h"

#include <pthread.h>
#include <signal.h>

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <httplib.h>

#include "tomaco/corpus.h"
#include "tomaco/errors.h"
#include "tomaco/evaluation_harness.h"
#include "tomaco/http_api.h"
#include "tomaco/matching_engine.h"
#include "tomaco/registry_service.h"
#include "tomaco/sawsdl_document.h"

namespace tomaco {
namespace {

namespace fs = std::filesystem;

// Thrown inside subcommands for bad flag combinations CLI11 cannot express.
class UsageError : public Error {
 public:
  using Error::Error;
};

std::string Join(const std::set<std::string>& items) {
  std::string out;
  for (const auto& item : items) {
    if (!out.empty()) out += ' ';
    out += item;
  }
  return out;
}

std::string Join(const std::vector<std::string>& items, const char* sep) {
  std::string out;
  for (const auto& item : items) {
    if (!out.empty()) out += sep;
    out += item;
  }
  return out;
}

void PrintWarnings(const std::vector<std::string>& warnings, std::ostream& err) {
  for (const auto& w : warnings) err << "warning: " << w << '\n';
}

// ---- inspect ---------------------------------------------------------------

struct InspectArgs {
  std::string file;
  std::string format = "text";
};

void PrintTree(const ElementTree& tree, std::ostream& out) {
  for (const auto& node : tree.nodes) {
    out << std::string(6 + 2 * node.depth, ' ') << NodeKindName(node.node_kind)
        << ' ' << (node.local_name.empty() ? "(anonymous)" : node.local_name);
    if (!node.annotations.empty()) {
      out << " [" << Join(node.annotations, " ") << ']';
    }
    out << '\n';
  }
}

int Inspect(const InspectArgs& args, std::ostream& out, std::ostream& err) {
  const std::string bytes = ReadFileBytes(args.file);
  const ServiceDescription service =
      ParseDocument(bytes, fs::path(args.file).filename().string());
  PrintWarnings(service.warnings, err);

  if (args.format == "tsv") {
    out << "interface\toperation\tinput_annotations\toutput_annotations\t"
           "input_names\toutput_names\n";
    for (const auto& iface : service.interfaces) {
      for (const auto& op : iface.operations) {
        const IoSets io = ExtractIo(op);
        out << iface.name << '\t' << op.name << '\t'
            << Join(io.input_annotations) << '\t'
            << Join(io.output_annotations) << '\t' << Join(io.input_names)
            << '\t' << Join(io.output_names) << '\n';
      }
    }
    return kExitOk;
  }

  out << "service " << service.service_name << " (" << service.source_id
      << ")\n";
  for (const auto& iface : service.interfaces) {
    out << "  interface " << iface.name << '\n';
    for (const auto& op : iface.operations) {
      const IoSets io = ExtractIo(op);
      out << "    operation " << op.name << '\n';
      if (!op.annotations.empty()) {
        out << "      annotations: " << Join(op.annotations, " ") << '\n';
      }
      out << "    input\n";
      PrintTree(op.input_tree, out);
      out << "    output\n";
      PrintTree(op.output_tree, out);
      out << "    input annotations:  " << Join(io.input_annotations) << '\n'
          << "    output annotations: " << Join(io.output_annotations) << '\n'
          << "    input names:        " << Join(io.input_names) << '\n'
          << "    output names:       " << Join(io.output_names) << '\n';
    }
  }
  return kExitOk;
}

// ---- match -----------------------------------------------------------------

struct MatchArgs {
  std::string collection;
  std::string ontologies;
  std::string strategy = "hybrid";
  std::string sim = "monge-elkan";
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  double weight = 0.5;
  double threshold = 0.0;
  std::optional<std::string> query_name;
};

MatchConfig ConfigFromFlags(const std::string& strategy_name,
                            const std::string& sim_name, double weight,
                            double threshold) {
  MatchConfig cfg;
  const auto strategy = ParseStrategy(strategy_name);
  if (!strategy) throw UsageError("unknown strategy '" + strategy_name + "'");
  cfg.strategy = *strategy;
  const auto sim = ParseSimKind(sim_name);
  if (!sim) throw UsageError("unknown similarity '" + sim_name + "'");
  cfg.sim = *sim == SimKind::kJaro ? SimAlgorithm::Jaro()
                                   : SimAlgorithm::MongeElkan();
  cfg.weight = weight;
  cfg.rating_threshold = threshold;
  try {
    cfg.Validate();
  } catch (const InvalidConfigError& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

int RunMatch(const MatchArgs& args, std::ostream& out, std::ostream& err) {
  if (args.inputs.empty() && args.outputs.empty()) {
    throw UsageError("at least one --input or --output concept is required");
  }
  const MatchConfig cfg =
      ConfigFromFlags(args.strategy, args.sim, args.weight, args.threshold);

  std::vector<std::string> warnings;
  ClassGraph graph;
  if (!args.ontologies.empty()) {
    graph = BuildClassGraph(ReadDocuments(args.ontologies, kOntologyExtensions),
                            &warnings);
  }
  const auto index = BuildCollectionIndex(
      ReadDocuments(args.collection, kServiceExtensions), &warnings);

  Query query;
  query.inputs = args.inputs;
  query.outputs = args.outputs;
  query.name = args.query_name;
  const auto results = Match(query, index, graph, cfg, &warnings);
  PrintWarnings(warnings, err);

  out << "rank\trating\ttier\tservice\tinterface\toperation\n";
  size_t rank = 0;
  for (const auto& r : results) {
    out << ++rank << '\t' << FormatFixed(r.rating, 4) << '\t'
        << TierName(r.tier) << '\t' << r.service_id << '\t'
        << r.interface_name << '\t' << r.operation_name << '\n';
  }
  return kExitOk;
}

// ---- eval ------------------------------------------------------------------

struct EvalArgs {
  std::string collection;
  std::string ontologies;
  std::string queries;
  std::string judgments;
  std::string config;
  std::string out_dir = "tomaco-eval";
  int binary_cutoff = 1;
  bool allow_missing = false;
};

std::vector<NamedQuery> LoadQueries(const fs::path& path,
                                    std::vector<std::string>* warnings) {
  if (!fs::is_directory(path)) return ParseQueryFile(ReadFileBytes(path));
  std::vector<NamedQuery> queries;
  for (const auto& doc : ReadDocuments(path, kServiceExtensions)) {
    try {
      queries.push_back(QueryFromDocument(doc));
    } catch (const Error& e) {
      warnings->push_back("query " + doc.id + ": " + e.what());
    }
  }
  return queries;
}

int RunEval(const EvalArgs& args, std::ostream& out, std::ostream& err) {
  EvaluationInput input;
  input.services = ReadDocuments(args.collection, kServiceExtensions);
  if (!args.ontologies.empty()) {
    input.ontologies = ReadDocuments(args.ontologies, kOntologyExtensions);
  }
  std::vector<std::string> load_warnings;
  input.queries = LoadQueries(args.queries, &load_warnings);
  input.judgments = RelevanceJudgments::ParseTsv(ReadFileBytes(args.judgments),
                                                 args.binary_cutoff);
  input.configs = ParseConfigList(ReadFileBytes(args.config));

  const EvaluationReport report = RunEvaluation(input);
  PrintWarnings(load_warnings, err);
  PrintWarnings(report.warnings, err);
  WriteReport(report, input.levels, args.out_dir);

  out << "config\tap\tndcg\tq\n";
  for (const auto& s : report.strategies) {
    out << s.name << '\t' << FormatFixed(s.average_precision, 4) << '\t'
        << FormatFixed(s.ndcg, 4) << '\t' << FormatFixed(s.q_measure, 4)
        << '\n';
  }
  if (!report.skipped_queries.empty()) {
    err << "queries without relevance judgments: "
        << Join(report.skipped_queries, " ") << '\n';
    if (!args.allow_missing) return kExitRuntime;
  }
  return kExitOk;
}

// ---- serve -----------------------------------------------------------------

struct ServeArgs {
  std::string data_dir;
  std::string listen = "127.0.0.1:8080";
  int fetch_timeout = 30;
};

std::pair<std::string, int> ParseListen(const std::string& listen) {
  const auto colon = listen.rfind(':');
  std::string host = colon == std::string::npos ? "127.0.0.1" : listen.substr(0, colon);
  const std::string port_text =
      colon == std::string::npos ? listen : listen.substr(colon + 1);
  if (host.empty()) host = "0.0.0.0";
  int port = -1;
  const auto [ptr, ec] = std::from_chars(
      port_text.data(), port_text.data() + port_text.size(), port);
  if (ec != std::errc() || ptr != port_text.data() + port_text.size() ||
      port < 0 || port > 65535) {
    throw UsageError("invalid --listen address '" + listen + "'");
  }
  return {host, port};
}

int RunServe(const ServeArgs& args, std::ostream& err) {
  if (args.data_dir.empty()) {
    throw UsageError("--data or TOMACO_DATA_DIR is required");
  }
  if (args.fetch_timeout <= 0) throw UsageError("--fetch-timeout must be positive");
  const auto [host, port] = ParseListen(args.listen);

  RegistryOptions options;
  options.data_dir = args.data_dir;
  options.fetch_timeout = std::chrono::seconds(args.fetch_timeout);
  Registry registry(options);
  PrintWarnings(registry.startup_warnings(), err);

  // Signals are taken synchronously by a dedicated thread; every other
  // thread, including the server's workers, inherits the blocked mask.
  sigset_t stop_signals, previous;
  sigemptyset(&stop_signals);
  sigaddset(&stop_signals, SIGTERM);
  sigaddset(&stop_signals, SIGINT);
  pthread_sigmask(SIG_BLOCK, &stop_signals, &previous);

  httplib::Server server;
  // The library default adds SO_REUSEPORT, which would let a second server
  // share a busy port instead of failing.
  server.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
  });
  RegisterHttpApi(server, registry);
  int bound = port;
  bool ok = true;
  if (port == 0) {
    bound = server.bind_to_any_port(host);
    ok = bound > 0;
  } else {
    ok = server.bind_to_port(host, port);
  }
  if (!ok) {
    pthread_sigmask(SIG_SETMASK, &previous, nullptr);
    err << "error: cannot listen on " << host << ':' << port << '\n';
    return kExitRuntime;
  }
  err << "listening on http://" << host << ':' << bound << std::endl;

  std::thread waiter([&server, stop_signals] {
    int signal = 0;
    sigwait(&stop_signals, &signal);
    server.stop();
  });
  const bool clean = server.listen_after_bind();
  // Wakes the waiter if the server stopped on its own.
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  pthread_sigmask(SIG_SETMASK, &previous, nullptr);
  err << "stopped" << std::endl;
  return clean ? kExitOk : kExitRuntime;
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Tomaco semantic web service matchmaker", "tomaco"};
  app.require_subcommand(1);

  InspectArgs inspect;
  auto* inspect_cmd = app.add_subcommand(
      "inspect", "Print interfaces, operations and extracted concept sets");
  inspect_cmd->add_option("file", inspect.file, "WSDL / SAWSDL document")
      ->required()
      ->check(CLI::ExistingFile);
  inspect_cmd->add_option("--format", inspect.format, "text or tsv")
      ->check(CLI::IsMember({"text", "tsv"}));

  MatchArgs match;
  auto* match_cmd =
      app.add_subcommand("match", "Rank a directory of services for a query");
  match_cmd->add_option("--collection", match.collection, "service directory")
      ->required()
      ->check(CLI::ExistingDirectory);
  match_cmd->add_option("--ontologies", match.ontologies, "ontology directory")
      ->check(CLI::ExistingDirectory);
  match_cmd->add_option("--strategy", match.strategy,
                        "logic, syn-on-sem, syn-on-syn, hybrid or tomaco-s3");
  match_cmd->add_option("--sim", match.sim, "monge-elkan or jaro");
  match_cmd->add_option("--input", match.inputs, "requested input concept IRI")
      ->take_all();
  match_cmd->add_option("--output", match.outputs, "requested output concept IRI")
      ->take_all();
  match_cmd->add_option("--weight", match.weight, "input weight");
  match_cmd->add_option("--threshold", match.threshold, "rating threshold");
  match_cmd->add_option("--query-name", match.query_name,
                        "service name compared by tomaco-s3");

  EvalArgs eval;
  auto* eval_cmd =
      app.add_subcommand("eval", "Evaluate strategies against judgments");
  eval_cmd->add_option("--collection", eval.collection, "service directory")
      ->required()
      ->check(CLI::ExistingDirectory);
  eval_cmd->add_option("--ontologies", eval.ontologies, "ontology directory")
      ->check(CLI::ExistingDirectory);
  eval_cmd->add_option("--queries", eval.queries,
                       "query document directory or query TSV file")
      ->required()
      ->check(CLI::ExistingPath);
  eval_cmd->add_option("--judgments", eval.judgments, "relevance TSV")
      ->required()
      ->check(CLI::ExistingFile);
  eval_cmd->add_option("--config", eval.config, "JSON list of configurations")
      ->required()
      ->check(CLI::ExistingFile);
  eval_cmd->add_option("--out", eval.out_dir, "report directory");
  eval_cmd->add_option("--binary-cutoff", eval.binary_cutoff,
                       "minimum grade counted as relevant")
      ->check(CLI::PositiveNumber);
  eval_cmd->add_flag("--allow-missing", eval.allow_missing,
                     "exit 0 even if some queries have no judgments");

  ServeArgs serve;
  auto* serve_cmd = app.add_subcommand("serve", "Run the registry HTTP API");
  serve_cmd->add_option("--data", serve.data_dir, "data directory")
      ->envname("TOMACO_DATA_DIR");
  serve_cmd->add_option("--listen", serve.listen, "host:port");
  serve_cmd->add_option("--fetch-timeout", serve.fetch_timeout,
                        "URL fetch timeout in seconds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*inspect_cmd) return Inspect(inspect, out, err);
    if (*match_cmd) return RunMatch(match, out, err);
    if (*eval_cmd) return RunEval(eval, out, err);
    if (*serve_cmd) return RunServe(serve, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidQueryError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const EmptyServiceError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace tomaco
