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

// Persistent store of service collections and ontologies. Documents live on
// disk under their SHA-256 digest, metadata and the per-service operation
// index in an SQLite database. The index is a cache: it can always be
// rebuilt from the stored documents.
//
// Reads run against immutable snapshots (class graph plus one index per
// collection); writers serialize per collection and publish a new snapshot.

#ifndef TOMACO_REGISTRY_SERVICE_H_
#define TOMACO_REGISTRY_SERVICE_H_

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tomaco/errors.h"
#include "tomaco/matching_engine.h"
#include "tomaco/ontology_store.h"
#include "tomaco/operation_index.h"
#include "tomaco/sawsdl_document.h"

struct sqlite3;

namespace tomaco {

enum class RegistryErrorCode {
  kNotFound,
  kUnprocessable,  // document could not be parsed
  kDuplicate,
  kFetch,
  kValidation,
  kStorage,
};

class RegistryError : public Error {
 public:
  RegistryError(RegistryErrorCode code, const std::string& message,
                std::string field = {})
      : Error(message), code_(code), field_(std::move(field)) {}

  RegistryErrorCode code() const { return code_; }
  // Offending request field for kValidation.
  const std::string& field() const { return field_; }

 private:
  RegistryErrorCode code_;
  std::string field_;
};

struct CollectionInfo {
  std::string id;
  std::string name;
  std::string description;
  std::string uploader;
  std::string created;  // ISO 8601, UTC
  size_t service_count = 0;
};

struct ServiceInfo {
  std::string id;
  std::string collection_id;
  std::string source;  // file name or URL
  std::string service_name;
  std::string digest;
  std::string created;
  size_t operation_count = 0;
  std::vector<std::string> warnings;
};

struct OntologyInfo {
  std::string id;
  std::string source;
  std::string digest;
  std::string created;
  size_t class_count = 0;
};

// One equivalence group of an ontology's class hierarchy. A class with
// several direct superclasses appears below each of them.
struct ClassNode {
  std::string iri;
  std::string label;
  std::vector<std::string> equivalents;
  std::vector<ClassNode> children;
};

struct RegistryOptions {
  std::filesystem::path data_dir;
  std::chrono::seconds fetch_timeout{30};
  size_t max_fetch_bytes = size_t{16} << 20;
};

// Downloads an http(s) URL. Throws RegistryError(kFetch).
std::string FetchUrl(std::string_view url, std::chrono::seconds timeout,
                     size_t max_bytes);

std::string Sha256Hex(std::string_view bytes);

class Registry {
 public:
  // Opens or creates the store. Index rows whose cache is unreadable are
  // rebuilt from their documents; services whose document is gone are
  // reported in startup_warnings() and left out of matching.
  explicit Registry(RegistryOptions options);
  ~Registry();
  Registry(const Registry&) = delete;
  Registry& operator=(const Registry&) = delete;

  CollectionInfo CreateCollection(std::string name, std::string description,
                                  std::string uploader);
  std::vector<CollectionInfo> ListCollections() const;
  CollectionInfo GetCollection(std::string_view id) const;

  ServiceInfo UploadService(std::string_view collection_id,
                            std::string bytes, std::string source);
  ServiceInfo UploadServiceFromUrl(std::string_view collection_id,
                                   const std::string& url);
  std::vector<ServiceInfo> ListServices(std::string_view collection_id) const;
  ServiceInfo GetService(std::string_view id) const;
  // The stored bytes, unchanged.
  std::string ServiceDocument(std::string_view id) const;
  ServiceDescription ParsedService(std::string_view id) const;
  std::vector<OperationIndexEntry> ServiceIndex(std::string_view id) const;
  // Index entries recomputed from the stored document, bypassing the cache.
  std::vector<OperationIndexEntry> RebuildServiceIndex(
      std::string_view id) const;

  OntologyInfo UploadOntology(std::string bytes, std::string source);
  OntologyInfo UploadOntologyFromUrl(const std::string& url);
  std::vector<OntologyInfo> ListOntologies() const;
  std::vector<ClassNode> OntologyClasses(std::string_view id) const;

  // Matches against the collection's current snapshot.
  std::vector<MatchResult> Match(std::string_view collection_id,
                                 const Query& query, const MatchConfig& cfg,
                                 std::vector<std::string>* warnings) const;
  std::shared_ptr<const ClassGraph> graph() const;

  const std::vector<std::string>& startup_warnings() const {
    return startup_warnings_;
  }
  const RegistryOptions& options() const { return options_; }

 private:
  struct Snapshot {
    std::shared_ptr<const ClassGraph> graph;
    std::map<std::string, std::shared_ptr<const std::vector<OperationIndexEntry>>,
             std::less<>>
        collections;
  };

  std::shared_ptr<const Snapshot> snapshot() const;
  // Copies the current snapshot, lets `edit` change the copy and publishes
  // it; edits are serialized so concurrent writers never lose updates.
  void UpdateSnapshot(const std::function<void(Snapshot&)>& edit);
  std::mutex& CollectionMutex(const std::string& collection_id);
  std::filesystem::path DocumentPath(const std::string& digest) const;
  void StoreDocument(const std::string& digest, const std::string& bytes);
  std::string LoadDocument(const std::string& digest) const;
  void LoadState();

  RegistryOptions options_;
  sqlite3* db_ = nullptr;
  mutable std::mutex db_mutex_;
  mutable std::mutex snapshot_mutex_;
  std::shared_ptr<const Snapshot> snapshot_;
  std::mutex writers_mutex_;  // guards collection_mutexes_
  std::map<std::string, std::unique_ptr<std::mutex>> collection_mutexes_;
  std::mutex publish_mutex_;
  mutable std::mutex ontology_mutex_;  // uploads and ontology_axioms_
  std::map<std::string, OntologyAxioms> ontology_axioms_;
  std::vector<std::string> startup_warnings_;
};

}  // namespace tomaco

#endif  // TOMACO_REGISTRY_SERVICE_H_
