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

#include "tomaco/http_api.h"

#include <algorithm>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "tomaco/errors.h"

namespace tomaco {
namespace {

using nlohmann::json;

constexpr char kJson[] = "application/json";
constexpr size_t kMaxPayload = size_t{32} << 20;

[[noreturn]] void Invalid(const std::string& field, const std::string& message) {
  throw RegistryError(RegistryErrorCode::kValidation, message, field);
}

std::string_view ErrorCodeName(RegistryErrorCode code) {
  switch (code) {
    case RegistryErrorCode::kNotFound:
      return "not_found";
    case RegistryErrorCode::kUnprocessable:
      return "unprocessable";
    case RegistryErrorCode::kDuplicate:
      return "duplicate";
    case RegistryErrorCode::kFetch:
      return "fetch_failed";
    case RegistryErrorCode::kValidation:
      return "validation";
    case RegistryErrorCode::kStorage:
      return "storage";
  }
  return "error";
}

int HttpStatus(RegistryErrorCode code) {
  switch (code) {
    case RegistryErrorCode::kNotFound:
      return 404;
    case RegistryErrorCode::kUnprocessable:
      return 422;
    case RegistryErrorCode::kDuplicate:
      return 409;
    case RegistryErrorCode::kFetch:
      return 502;
    case RegistryErrorCode::kValidation:
      return 400;
    case RegistryErrorCode::kStorage:
      return 500;
  }
  return 500;
}

void Reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), kJson);
}

void ReplyError(httplib::Response& res, RegistryErrorCode code,
                const std::string& message, const std::string& field = {}) {
  json body = {{"error", std::string(ErrorCodeName(code))},
               {"message", message}};
  if (code == RegistryErrorCode::kValidation) body["field"] = field;
  Reply(res, HttpStatus(code), body);
}

// Runs `handler`, turning library errors into JSON error responses.
template <typename F>
httplib::Server::Handler Guard(F handler) {
  return [handler](const httplib::Request& req, httplib::Response& res) {
    try {
      handler(req, res);
    } catch (const RegistryError& e) {
      ReplyError(res, e.code(), e.what(), e.field());
    } catch (const InvalidQueryError& e) {
      ReplyError(res, RegistryErrorCode::kValidation, e.what(), "inputs");
    } catch (const InvalidConfigError& e) {
      ReplyError(res, RegistryErrorCode::kValidation, e.what(), "config");
    } catch (const json::exception& e) {
      ReplyError(res, RegistryErrorCode::kValidation,
                 std::string("malformed JSON body: ") + e.what(), "body");
    } catch (const std::exception& e) {
      ReplyError(res, RegistryErrorCode::kStorage, e.what());
    }
  };
}

json ParseBody(const httplib::Request& req) {
  json body = json::parse(req.body, nullptr, /*allow_exceptions=*/false);
  if (!body.is_object()) Invalid("body", "request body must be a JSON object");
  return body;
}

std::string OptionalString(const json& body, const char* field) {
  if (!body.contains(field) || body[field].is_null()) return {};
  if (!body[field].is_string()) Invalid(field, "must be a string");
  return body[field].get<std::string>();
}

std::vector<std::string> ConceptList(const json& body, const char* field) {
  std::vector<std::string> out;
  if (!body.contains(field) || body[field].is_null()) return out;
  if (!body[field].is_array()) Invalid(field, "must be an array of IRIs");
  for (const auto& item : body[field]) {
    if (!item.is_string() || item.get<std::string>().empty()) {
      Invalid(field, "must be an array of non-empty IRI strings");
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}

double ClampedNumber(const json& body, const char* field, double fallback) {
  double value = fallback;
  if (body.contains(field) && !body[field].is_null()) {
    if (!body[field].is_number()) Invalid(field, "must be a number");
    value = body[field].get<double>();
  }
  return std::clamp(value, kApiMinParameter, kApiMaxParameter);
}

json CollectionJson(const CollectionInfo& c) {
  return {{"id", c.id},
          {"name", c.name},
          {"description", c.description},
          {"uploader", c.uploader},
          {"created", c.created},
          {"service_count", c.service_count}};
}

json ServiceJson(const ServiceInfo& s) {
  return {{"id", s.id},
          {"collection_id", s.collection_id},
          {"source", s.source},
          {"service_name", s.service_name},
          {"digest", s.digest},
          {"created", s.created},
          {"operation_count", s.operation_count},
          {"warnings", s.warnings}};
}

json OntologyJson(const OntologyInfo& o) {
  return {{"id", o.id},
          {"source", o.source},
          {"digest", o.digest},
          {"created", o.created},
          {"class_count", o.class_count}};
}

json ClassNodeJson(const ClassNode& node) {
  json children = json::array();
  for (const auto& child : node.children) children.push_back(ClassNodeJson(child));
  return {{"iri", node.iri},
          {"label", node.label},
          {"equivalents", node.equivalents},
          {"children", std::move(children)}};
}

// Rebuilds the nesting of a pre-order tree from node depths.
json TreeJson(const ElementTree& tree) {
  json roots = json::array();
  std::vector<json*> stack;
  for (const auto& node : tree.nodes) {
    json j = {{"name", node.local_name},
              {"kind", std::string(NodeKindName(node.node_kind))},
              {"annotations", node.annotations},
              {"children", json::array()}};
    const size_t depth = static_cast<size_t>(std::max(node.depth, 0));
    if (stack.size() > depth) stack.resize(depth);
    json& parent_list = stack.empty() ? roots : (*stack.back())["children"];
    parent_list.push_back(std::move(j));
    stack.push_back(&parent_list.back());
  }
  return roots;
}

json ServiceTreeJson(const ServiceInfo& info, const ServiceDescription& service) {
  json interfaces = json::array();
  for (const auto& iface : service.interfaces) {
    json ops = json::array();
    for (const auto& op : iface.operations) {
      ops.push_back({{"name", op.name},
                     {"annotations", op.annotations},
                     {"input", TreeJson(op.input_tree)},
                     {"output", TreeJson(op.output_tree)}});
    }
    interfaces.push_back({{"name", iface.name}, {"operations", std::move(ops)}});
  }
  json out = ServiceJson(info);
  out["interfaces"] = std::move(interfaces);
  return out;
}

json ResultJson(const MatchResult& r) {
  json justifications = json::array();
  for (const auto& j : r.justifications) {
    json item = {{"requested_concept", j.requested_concept},
                 {"side", std::string(SideName(j.side))},
                 {"matched_element", j.matched_element_name},
                 {"pair_rating", j.pair_rating},
                 {"match_case", std::string(MatchCaseName(j.match_case))}};
    item["matched_element_kind"] =
        j.matched_element_kind
            ? json(std::string(NodeKindName(*j.matched_element_kind)))
            : json(nullptr);
    item["matched_annotation"] =
        j.matched_annotation ? json(*j.matched_annotation) : json(nullptr);
    justifications.push_back(std::move(item));
  }
  return {{"service_id", r.service_id},
          {"service", r.service_name},
          {"interface", r.interface_name},
          {"operation", r.operation_name},
          {"rating", r.rating},
          {"tier", std::string(TierName(r.tier))},
          {"justifications", std::move(justifications)}};
}

struct Upload {
  bool is_file = false;
  std::string bytes;  // file content or URL
  std::string source;
};

Upload ReadUpload(const httplib::Request& req) {
  Upload up;
  if (req.is_multipart_form_data()) {
    if (!req.has_file("file")) Invalid("file", "multipart upload needs a 'file' part");
    const auto file = req.get_file_value("file");
    up.is_file = true;
    up.bytes = file.content;
    up.source = file.filename.empty() ? "upload" : file.filename;
    return up;
  }
  const json body = ParseBody(req);
  up.bytes = OptionalString(body, "url");
  if (up.bytes.empty()) Invalid("url", "either a multipart file or a url is required");
  up.source = up.bytes;
  return up;
}

}  // namespace

MatchRequest ParseMatchRequest(std::string_view text) {
  json body = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (!body.is_object()) Invalid("body", "request body must be a JSON object");

  MatchRequest req;
  if (!body.contains("collection_id") || body["collection_id"].is_null()) {
    Invalid("collection_id", "is required");
  }
  if (body["collection_id"].is_string()) {
    req.collection_id = body["collection_id"].get<std::string>();
  } else if (body["collection_id"].is_number_integer()) {
    req.collection_id = std::to_string(body["collection_id"].get<long long>());
  } else {
    Invalid("collection_id", "must be a string");
  }

  const std::string strategy = OptionalString(body, "strategy");
  if (!strategy.empty()) {
    const auto parsed = ParseStrategy(strategy);
    if (!parsed) Invalid("strategy", "unknown strategy '" + strategy + "'");
    req.config.strategy = *parsed;
  }
  const std::string sim = OptionalString(body, "sim_algorithm");
  if (!sim.empty()) {
    const auto parsed = ParseSimKind(sim);
    if (!parsed) Invalid("sim_algorithm", "unknown similarity '" + sim + "'");
    req.config.sim = *parsed == SimKind::kJaro ? SimAlgorithm::Jaro()
                                                : SimAlgorithm::MongeElkan();
  }
  req.query.inputs = ConceptList(body, "inputs");
  req.query.outputs = ConceptList(body, "outputs");
  if (req.query.inputs.empty() && req.query.outputs.empty()) {
    Invalid("inputs", "at least one input or output concept is required");
  }
  const std::string name = OptionalString(body, "query_name");
  if (!name.empty()) req.query.name = name;
  req.config.weight = ClampedNumber(body, "weight", req.config.weight);
  req.config.rating_threshold =
      ClampedNumber(body, "rating_threshold", req.config.rating_threshold);
  return req;
}

void RegisterHttpApi(httplib::Server& server, Registry& registry) {
  server.set_payload_max_length(kMaxPayload);

  server.Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
    Reply(res, 200, {{"status", "ok"}});
  });

  server.Post("/collections", Guard([&registry](const httplib::Request& req,
                                                httplib::Response& res) {
    const json body = ParseBody(req);
    const auto info = registry.CreateCollection(
        OptionalString(body, "name"), OptionalString(body, "description"),
        OptionalString(body, "uploader"));
    Reply(res, 201, CollectionJson(info));
  }));

  server.Get("/collections", Guard([&registry](const httplib::Request&,
                                               httplib::Response& res) {
    json out = json::array();
    for (const auto& c : registry.ListCollections()) out.push_back(CollectionJson(c));
    Reply(res, 200, out);
  }));

  server.Get(R"(/collections/([^/]+))",
             Guard([&registry](const httplib::Request& req, httplib::Response& res) {
               Reply(res, 200, CollectionJson(registry.GetCollection(req.matches[1].str())));
             }));

  server.Get(R"(/collections/([^/]+)/services)",
             Guard([&registry](const httplib::Request& req, httplib::Response& res) {
               json out = json::array();
               for (const auto& s : registry.ListServices(req.matches[1].str())) {
                 out.push_back(ServiceJson(s));
               }
               Reply(res, 200, out);
             }));

  server.Post(R"(/collections/([^/]+)/services)",
              Guard([&registry](const httplib::Request& req, httplib::Response& res) {
                const std::string collection = req.matches[1].str();
                registry.GetCollection(collection);
                Upload up = ReadUpload(req);
                const ServiceInfo info =
                    up.is_file ? registry.UploadService(collection, std::move(up.bytes),
                                                        std::move(up.source))
                               : registry.UploadServiceFromUrl(collection, up.bytes);
                Reply(res, 201, ServiceJson(info));
              }));

  server.Get(R"(/services/([^/]+))",
             Guard([&registry](const httplib::Request& req, httplib::Response& res) {
               const std::string id = req.matches[1].str();
               const ServiceInfo info = registry.GetService(id);
               Reply(res, 200, ServiceTreeJson(info, registry.ParsedService(id)));
             }));

  server.Get(R"(/services/([^/]+)/document)",
             Guard([&registry](const httplib::Request& req, httplib::Response& res) {
               res.status = 200;
               res.set_content(registry.ServiceDocument(req.matches[1].str()),
                               "application/xml");
             }));

  server.Post("/ontologies", Guard([&registry](const httplib::Request& req,
                                               httplib::Response& res) {
    Upload up = ReadUpload(req);
    const OntologyInfo info =
        up.is_file ? registry.UploadOntology(std::move(up.bytes), std::move(up.source))
                   : registry.UploadOntologyFromUrl(up.bytes);
    Reply(res, 201, OntologyJson(info));
  }));

  server.Get("/ontologies", Guard([&registry](const httplib::Request&,
                                              httplib::Response& res) {
    json out = json::array();
    for (const auto& o : registry.ListOntologies()) out.push_back(OntologyJson(o));
    Reply(res, 200, out);
  }));

  server.Get(R"(/ontologies/([^/]+)/classes)",
             Guard([&registry](const httplib::Request& req, httplib::Response& res) {
               json out = json::array();
               for (const auto& node : registry.OntologyClasses(req.matches[1].str())) {
                 out.push_back(ClassNodeJson(node));
               }
               Reply(res, 200, out);
             }));

  server.Post("/match", Guard([&registry](const httplib::Request& req,
                                          httplib::Response& res) {
    const MatchRequest request = ParseMatchRequest(req.body);
    std::vector<std::string> warnings;
    const auto results = registry.Match(request.collection_id, request.query,
                                        request.config, &warnings);
    json out = json::array();
    for (const auto& r : results) out.push_back(ResultJson(r));
    Reply(res, 200, out);
    if (!warnings.empty()) {
      std::string joined;
      for (const auto& w : warnings) joined += (joined.empty() ? "" : "; ") + w;
      res.set_header("X-Tomaco-Warnings", joined);
    }
  }));

  server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (!res.body.empty()) return;
    json body = {{"error", res.status == 404 ? "not_found" : "error"},
                 {"message", httplib::status_message(res.status)}};
    res.set_content(body.dump(), kJson);
  });
}

}  // namespace tomaco
