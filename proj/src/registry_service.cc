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

#include "tomaco/registry_service.h"

#include <openssl/evp.h>
#include <sqlite3.h>

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <regex>
#include <set>
#include <unistd.h>

#include <httplib.h>
#include <json.hpp>

#include "tomaco/corpus.h"
#include "tomaco/text_similarity.h"

namespace tomaco {
namespace {

using nlohmann::json;

// Bumped whenever the cached index layout or BuildIndexEntries changes;
// a mismatch triggers a rebuild from the stored documents.
constexpr int kIndexVersion = 1;

constexpr char kSchema[] = R"sql(
PRAGMA foreign_keys = ON;
CREATE TABLE IF NOT EXISTS meta(
  key TEXT PRIMARY KEY,
  value TEXT NOT NULL);
CREATE TABLE IF NOT EXISTS collections(
  id INTEGER PRIMARY KEY AUTOINCREMENT,
  name TEXT NOT NULL,
  description TEXT NOT NULL,
  uploader TEXT NOT NULL,
  created TEXT NOT NULL);
CREATE TABLE IF NOT EXISTS services(
  id INTEGER PRIMARY KEY AUTOINCREMENT,
  collection_id INTEGER NOT NULL REFERENCES collections(id),
  source TEXT NOT NULL,
  digest TEXT NOT NULL,
  service_name TEXT NOT NULL,
  created TEXT NOT NULL,
  warnings TEXT NOT NULL,
  index_json TEXT,
  UNIQUE(collection_id, digest));
CREATE TABLE IF NOT EXISTS ontologies(
  id INTEGER PRIMARY KEY AUTOINCREMENT,
  source TEXT NOT NULL,
  digest TEXT NOT NULL UNIQUE,
  created TEXT NOT NULL,
  class_count INTEGER NOT NULL);
)sql";

[[noreturn]] void Fail(RegistryErrorCode code, const std::string& message,
                       std::string field = {}) {
  throw RegistryError(code, message, std::move(field));
}

class Statement {
 public:
  Statement(sqlite3* db, const char* sql) : db_(db) {
    if (sqlite3_prepare_v2(db, sql, -1, &stmt_, nullptr) != SQLITE_OK) {
      Fail(RegistryErrorCode::kStorage,
           std::string("sqlite prepare: ") + sqlite3_errmsg(db));
    }
  }
  ~Statement() { sqlite3_finalize(stmt_); }
  Statement(const Statement&) = delete;
  Statement& operator=(const Statement&) = delete;

  Statement& Bind(int index, std::string_view text) {
    sqlite3_bind_text(stmt_, index, text.data(), static_cast<int>(text.size()),
                      SQLITE_TRANSIENT);
    return *this;
  }
  Statement& Bind(int index, int64_t value) {
    sqlite3_bind_int64(stmt_, index, value);
    return *this;
  }
  Statement& BindNull(int index) {
    sqlite3_bind_null(stmt_, index);
    return *this;
  }

  // True while rows are available.
  bool Step() {
    const int rc = sqlite3_step(stmt_);
    if (rc == SQLITE_ROW) return true;
    if (rc == SQLITE_DONE) return false;
    if (rc == SQLITE_CONSTRAINT) {
      Fail(RegistryErrorCode::kDuplicate,
           std::string("constraint violated: ") + sqlite3_errmsg(db_));
    }
    Fail(RegistryErrorCode::kStorage,
         std::string("sqlite step: ") + sqlite3_errmsg(db_));
  }

  int64_t Int(int col) const { return sqlite3_column_int64(stmt_, col); }
  bool IsNull(int col) const {
    return sqlite3_column_type(stmt_, col) == SQLITE_NULL;
  }
  std::string Text(int col) const {
    const auto* p = sqlite3_column_text(stmt_, col);
    if (!p) return {};
    return std::string(reinterpret_cast<const char*>(p),
                       sqlite3_column_bytes(stmt_, col));
  }

 private:
  sqlite3* db_;
  sqlite3_stmt* stmt_ = nullptr;
};

void Exec(sqlite3* db, const char* sql) {
  char* err = nullptr;
  if (sqlite3_exec(db, sql, nullptr, nullptr, &err) != SQLITE_OK) {
    std::string message = err ? err : "unknown error";
    sqlite3_free(err);
    Fail(RegistryErrorCode::kStorage, "sqlite: " + message);
  }
}

class Transaction {
 public:
  explicit Transaction(sqlite3* db) : db_(db) { Exec(db_, "BEGIN IMMEDIATE"); }
  ~Transaction() {
    if (!committed_) sqlite3_exec(db_, "ROLLBACK", nullptr, nullptr, nullptr);
  }
  void Commit() {
    Exec(db_, "COMMIT");
    committed_ = true;
  }

 private:
  sqlite3* db_;
  bool committed_ = false;
};

std::string NowIso() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::optional<int64_t> ParseId(std::string_view id) {
  int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(id.data(), id.data() + id.size(), value);
  if (ec != std::errc() || ptr != id.data() + id.size() || value <= 0) {
    return std::nullopt;
  }
  return value;
}

int64_t RequireId(std::string_view id, std::string_view what) {
  const auto value = ParseId(id);
  if (!value) {
    Fail(RegistryErrorCode::kNotFound,
         std::string(what) + " '" + std::string(id) + "' not found");
  }
  return *value;
}

json ItemToJson(const IndexItem& item) {
  json j = {{"name", item.element_name},
            {"kind", std::string(NodeKindName(item.node_kind))}};
  if (item.annotation) j["annotation"] = *item.annotation;
  return j;
}

NodeKind ParseNodeKind(const std::string& name) {
  for (NodeKind k : {NodeKind::kPart, NodeKind::kElement, NodeKind::kSimpleType,
                     NodeKind::kComplexType, NodeKind::kMessage,
                     NodeKind::kInput, NodeKind::kOutput,
                     NodeKind::kOperation}) {
    if (NodeKindName(k) == name) return k;
  }
  throw std::invalid_argument("unknown node kind " + name);
}

IndexItem ItemFromJson(const json& j) {
  IndexItem item;
  item.element_name = j.at("name").get<std::string>();
  item.node_kind = ParseNodeKind(j.at("kind").get<std::string>());
  if (j.contains("annotation")) item.annotation = j["annotation"].get<std::string>();
  return item;
}

std::string SerializeIndex(const std::vector<OperationIndexEntry>& entries) {
  json out = json::array();
  for (const auto& e : entries) {
    json in = json::array(), outs = json::array();
    for (const auto& item : e.inputs) in.push_back(ItemToJson(item));
    for (const auto& item : e.outputs) outs.push_back(ItemToJson(item));
    out.push_back({{"service_name", e.service_name},
                   {"interface", e.interface_name},
                   {"operation", e.operation_name},
                   {"inputs", std::move(in)},
                   {"outputs", std::move(outs)}});
  }
  return out.dump();
}

std::vector<OperationIndexEntry> DeserializeIndex(const std::string& text,
                                                  const std::string& service_id) {
  std::vector<OperationIndexEntry> entries;
  for (const auto& j : json::parse(text)) {
    OperationIndexEntry e;
    e.service_id = service_id;
    e.service_name = j.at("service_name").get<std::string>();
    e.interface_name = j.at("interface").get<std::string>();
    e.operation_name = j.at("operation").get<std::string>();
    for (const auto& item : j.at("inputs")) e.inputs.push_back(ItemFromJson(item));
    for (const auto& item : j.at("outputs")) e.outputs.push_back(ItemFromJson(item));
    entries.push_back(std::move(e));
  }
  return entries;
}

struct ParsedUpload {
  ServiceDescription service;
  std::vector<OperationIndexEntry> entries;
};

ParsedUpload ParseService(const std::string& bytes, const std::string& source,
                          const std::string& service_id) {
  ParsedUpload out;
  try {
    out.service = ParseDocument(bytes, source);
  } catch (const Error& e) {
    Fail(RegistryErrorCode::kUnprocessable, e.what());
  }
  out.entries = BuildIndexEntries(out.service);
  for (auto& e : out.entries) e.service_id = service_id;
  return out;
}

ServiceInfo ServiceFromRow(const Statement& row) {
  ServiceInfo info;
  info.id = std::to_string(row.Int(0));
  info.collection_id = std::to_string(row.Int(1));
  info.source = row.Text(2);
  info.digest = row.Text(3);
  info.service_name = row.Text(4);
  info.created = row.Text(5);
  info.warnings = json::parse(row.Text(6)).get<std::vector<std::string>>();
  if (!row.IsNull(7)) info.operation_count = json::parse(row.Text(7)).size();
  return info;
}

constexpr char kServiceColumns[] =
    "SELECT id, collection_id, source, digest, service_name, created, "
    "warnings, index_json FROM services ";

}  // namespace

std::string Sha256Hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(),
                 nullptr) != 1) {
    Fail(RegistryErrorCode::kStorage, "sha256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(length * 2);
  for (unsigned int i = 0; i < length; ++i) {
    hex += kHex[digest[i] >> 4];
    hex += kHex[digest[i] & 0xf];
  }
  return hex;
}

std::string FetchUrl(std::string_view url, std::chrono::seconds timeout,
                     size_t max_bytes) {
  static const std::regex kUrl(R"(^(https?://[^/?#]+)([^#]*))",
                               std::regex::icase);
  std::match_results<std::string_view::const_iterator> m;
  if (!std::regex_search(url.begin(), url.end(), m, kUrl)) {
    Fail(RegistryErrorCode::kValidation,
         "only http and https URLs can be fetched", "url");
  }
  const std::string origin = m[1].str();
  std::string path = m[2].str();
  if (path.empty()) path = "/";

  httplib::Client client(origin);
  client.set_follow_location(true);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);

  std::string body;
  bool too_large = false;
  const auto deadline = std::chrono::steady_clock::now() + timeout;
  bool timed_out = false;
  auto result = client.Get(
      path, httplib::Headers{},
      [&](const httplib::Response& response) {
        return response.status < 300 || response.status >= 400 ||
               !response.has_header("Location");
      },
      [&](const char* data, size_t length) {
        if (body.size() + length > max_bytes) {
          too_large = true;
          return false;
        }
        if (std::chrono::steady_clock::now() > deadline) {
          timed_out = true;
          return false;
        }
        body.append(data, length);
        return true;
      });
  if (too_large) {
    Fail(RegistryErrorCode::kFetch, "fetch " + std::string(url) +
                                        ": document exceeds " +
                                        std::to_string(max_bytes) + " bytes");
  }
  if (timed_out) {
    Fail(RegistryErrorCode::kFetch, "fetch " + std::string(url) + ": timed out");
  }
  if (!result) {
    Fail(RegistryErrorCode::kFetch, "fetch " + std::string(url) + ": " +
                                        httplib::to_string(result.error()));
  }
  if (result->status != 200) {
    Fail(RegistryErrorCode::kFetch, "fetch " + std::string(url) + ": HTTP " +
                                        std::to_string(result->status));
  }
  return body;
}

Registry::Registry(RegistryOptions options) : options_(std::move(options)) {
  if (options_.data_dir.empty()) {
    Fail(RegistryErrorCode::kValidation, "data directory is required",
         "data_dir");
  }
  std::error_code ec;
  std::filesystem::create_directories(options_.data_dir / "documents", ec);
  if (ec) {
    Fail(RegistryErrorCode::kStorage, "cannot create " +
                                          options_.data_dir.string() + ": " +
                                          ec.message());
  }
  const std::string db_path = (options_.data_dir / "registry.db").string();
  if (sqlite3_open_v2(db_path.c_str(), &db_,
                      SQLITE_OPEN_READWRITE | SQLITE_OPEN_CREATE |
                          SQLITE_OPEN_FULLMUTEX,
                      nullptr) != SQLITE_OK) {
    std::string message = db_ ? sqlite3_errmsg(db_) : "out of memory";
    sqlite3_close(db_);
    db_ = nullptr;
    Fail(RegistryErrorCode::kStorage, "cannot open " + db_path + ": " + message);
  }
  sqlite3_busy_timeout(db_, 5000);
  Exec(db_, kSchema);
  LoadState();
}

Registry::~Registry() { sqlite3_close(db_); }

std::filesystem::path Registry::DocumentPath(const std::string& digest) const {
  return options_.data_dir / "documents" / digest;
}

void Registry::StoreDocument(const std::string& digest,
                             const std::string& bytes) {
  const auto path = DocumentPath(digest);
  if (std::filesystem::exists(path)) return;
  auto tmp = path;
  tmp += ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) Fail(RegistryErrorCode::kStorage, "cannot write " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    Fail(RegistryErrorCode::kStorage,
         "cannot store document " + digest + ": " + ec.message());
  }
}

std::string Registry::LoadDocument(const std::string& digest) const {
  try {
    return ReadFileBytes(DocumentPath(digest));
  } catch (const Error& e) {
    Fail(RegistryErrorCode::kStorage, e.what());
  }
}

void Registry::LoadState() {
  auto next = std::make_shared<Snapshot>();
  std::lock_guard db_lock(db_mutex_);

  OntologyAxioms all;
  {
    Statement rows(db_, "SELECT id, digest, source FROM ontologies ORDER BY id");
    while (rows.Step()) {
      const std::string id = std::to_string(rows.Int(0));
      try {
        OntologyAxioms ax = LoadOntology(LoadDocument(rows.Text(1)));
        all.Merge(ax);
        ontology_axioms_[id] = std::move(ax);
      } catch (const Error& e) {
        startup_warnings_.push_back("ontology " + id + " (" + rows.Text(2) +
                                    "): " + e.what());
      }
    }
  }
  next->graph = std::make_shared<const ClassGraph>(std::move(all));

  bool version_ok = false;
  {
    Statement meta(db_, "SELECT value FROM meta WHERE key = 'index_version'");
    if (meta.Step()) version_ok = meta.Text(0) == std::to_string(kIndexVersion);
  }

  std::map<std::string, std::vector<OperationIndexEntry>> by_collection;
  {
    Statement collections(db_, "SELECT id FROM collections ORDER BY id");
    while (collections.Step()) {
      by_collection[std::to_string(collections.Int(0))];
    }
  }
  std::vector<std::pair<int64_t, std::string>> rewrites;
  {
    Statement rows(db_,
                   "SELECT id, collection_id, digest, source, index_json "
                   "FROM services ORDER BY id");
    while (rows.Step()) {
      const std::string id = std::to_string(rows.Int(0));
      std::vector<OperationIndexEntry> entries;
      bool cached = false;
      if (version_ok && !rows.IsNull(4)) {
        try {
          entries = DeserializeIndex(rows.Text(4), id);
          cached = true;
        } catch (const std::exception&) {
        }
      }
      if (!cached) {
        try {
          entries = ParseService(LoadDocument(rows.Text(2)), rows.Text(3), id)
                        .entries;
          rewrites.emplace_back(rows.Int(0), SerializeIndex(entries));
        } catch (const Error& e) {
          startup_warnings_.push_back("service " + id + " (" + rows.Text(3) +
                                      "): " + e.what());
          continue;
        }
      }
      auto& list = by_collection[std::to_string(rows.Int(1))];
      list.insert(list.end(), entries.begin(), entries.end());
    }
  }
  if (!rewrites.empty() || !version_ok) {
    Transaction tx(db_);
    for (const auto& [id, text] : rewrites) {
      Statement update(db_, "UPDATE services SET index_json = ? WHERE id = ?");
      update.Bind(1, text).Bind(2, id).Step();
    }
    Statement meta(db_,
                   "INSERT OR REPLACE INTO meta(key, value) "
                   "VALUES('index_version', ?)");
    meta.Bind(1, std::to_string(kIndexVersion)).Step();
    tx.Commit();
  }
  for (auto& [id, entries] : by_collection) {
    next->collections[id] =
        std::make_shared<const std::vector<OperationIndexEntry>>(
            std::move(entries));
  }
  std::lock_guard lock(snapshot_mutex_);
  snapshot_ = std::move(next);
}

std::shared_ptr<const Registry::Snapshot> Registry::snapshot() const {
  std::lock_guard lock(snapshot_mutex_);
  return snapshot_;
}

std::shared_ptr<const ClassGraph> Registry::graph() const {
  return snapshot()->graph;
}

void Registry::UpdateSnapshot(const std::function<void(Snapshot&)>& edit) {
  std::lock_guard publish(publish_mutex_);
  auto next = std::make_shared<Snapshot>(*snapshot());
  edit(*next);
  std::lock_guard lock(snapshot_mutex_);
  snapshot_ = std::move(next);
}

std::mutex& Registry::CollectionMutex(const std::string& collection_id) {
  std::lock_guard lock(writers_mutex_);
  auto& slot = collection_mutexes_[collection_id];
  if (!slot) slot = std::make_unique<std::mutex>();
  return *slot;
}

CollectionInfo Registry::CreateCollection(std::string name,
                                          std::string description,
                                          std::string uploader) {
  if (name.find_first_not_of(" \t\r\n") == std::string::npos) {
    Fail(RegistryErrorCode::kValidation, "name must not be empty", "name");
  }
  CollectionInfo info;
  info.name = std::move(name);
  info.description = std::move(description);
  info.uploader = std::move(uploader);
  info.created = NowIso();
  {
    std::lock_guard db_lock(db_mutex_);
    Statement insert(db_,
                     "INSERT INTO collections(name, description, uploader, "
                     "created) VALUES(?, ?, ?, ?)");
    insert.Bind(1, info.name)
        .Bind(2, info.description)
        .Bind(3, info.uploader)
        .Bind(4, info.created)
        .Step();
    info.id = std::to_string(sqlite3_last_insert_rowid(db_));
  }
  UpdateSnapshot([&](Snapshot& s) {
    s.collections[info.id] =
        std::make_shared<const std::vector<OperationIndexEntry>>();
  });
  return info;
}

std::vector<CollectionInfo> Registry::ListCollections() const {
  std::lock_guard db_lock(db_mutex_);
  Statement rows(db_,
                 "SELECT c.id, c.name, c.description, c.uploader, c.created, "
                 "(SELECT COUNT(*) FROM services s WHERE s.collection_id = "
                 "c.id) FROM collections c ORDER BY c.id");
  std::vector<CollectionInfo> out;
  while (rows.Step()) {
    out.push_back({std::to_string(rows.Int(0)), rows.Text(1), rows.Text(2),
                   rows.Text(3), rows.Text(4),
                   static_cast<size_t>(rows.Int(5))});
  }
  return out;
}

CollectionInfo Registry::GetCollection(std::string_view id) const {
  const int64_t key = RequireId(id, "collection");
  std::lock_guard db_lock(db_mutex_);
  Statement row(db_,
                "SELECT c.id, c.name, c.description, c.uploader, c.created, "
                "(SELECT COUNT(*) FROM services s WHERE s.collection_id = "
                "c.id) FROM collections c WHERE c.id = ?");
  row.Bind(1, key);
  if (!row.Step()) {
    Fail(RegistryErrorCode::kNotFound,
         "collection '" + std::string(id) + "' not found");
  }
  return {std::to_string(row.Int(0)), row.Text(1), row.Text(2), row.Text(3),
          row.Text(4), static_cast<size_t>(row.Int(5))};
}

ServiceInfo Registry::UploadService(std::string_view collection_id,
                                    std::string bytes, std::string source) {
  const CollectionInfo collection = GetCollection(collection_id);
  std::lock_guard writer(CollectionMutex(collection.id));

  const std::string digest = Sha256Hex(bytes);
  {
    std::lock_guard db_lock(db_mutex_);
    Statement dup(db_,
                  "SELECT id FROM services WHERE collection_id = ? AND "
                  "digest = ?");
    dup.Bind(1, *ParseId(collection.id)).Bind(2, digest);
    if (dup.Step()) {
      Fail(RegistryErrorCode::kDuplicate,
           "document already uploaded to collection " + collection.id +
               " as service " + std::to_string(dup.Int(0)));
    }
  }
  // Parse before touching the store so rejected documents leave no trace.
  ParsedUpload parsed = ParseService(bytes, source, "");

  ServiceInfo info;
  info.collection_id = collection.id;
  info.source = std::move(source);
  info.digest = digest;
  info.service_name = parsed.service.service_name;
  info.created = NowIso();
  info.operation_count = parsed.entries.size();
  info.warnings = parsed.service.warnings;

  StoreDocument(digest, bytes);
  {
    std::lock_guard db_lock(db_mutex_);
    Transaction tx(db_);
    Statement insert(db_,
                     "INSERT INTO services(collection_id, source, digest, "
                     "service_name, created, warnings, index_json) "
                     "VALUES(?, ?, ?, ?, ?, ?, ?)");
    insert.Bind(1, *ParseId(collection.id))
        .Bind(2, info.source)
        .Bind(3, digest)
        .Bind(4, info.service_name)
        .Bind(5, info.created)
        .Bind(6, json(info.warnings).dump())
        .Bind(7, SerializeIndex(parsed.entries))
        .Step();
    info.id = std::to_string(sqlite3_last_insert_rowid(db_));
    tx.Commit();
  }
  for (auto& e : parsed.entries) e.service_id = info.id;

  UpdateSnapshot([&](Snapshot& s) {
    auto& slot = s.collections[collection.id];
    auto list = slot ? std::make_shared<std::vector<OperationIndexEntry>>(*slot)
                     : std::make_shared<std::vector<OperationIndexEntry>>();
    list->insert(list->end(), parsed.entries.begin(), parsed.entries.end());
    slot = std::move(list);
  });
  return info;
}

ServiceInfo Registry::UploadServiceFromUrl(std::string_view collection_id,
                                           const std::string& url) {
  GetCollection(collection_id);
  std::string bytes =
      FetchUrl(url, options_.fetch_timeout, options_.max_fetch_bytes);
  return UploadService(collection_id, std::move(bytes), url);
}

std::vector<ServiceInfo> Registry::ListServices(
    std::string_view collection_id) const {
  const CollectionInfo collection = GetCollection(collection_id);
  std::lock_guard db_lock(db_mutex_);
  const std::string sql =
      std::string(kServiceColumns) + "WHERE collection_id = ? ORDER BY id";
  Statement rows(db_, sql.c_str());
  rows.Bind(1, *ParseId(collection.id));
  std::vector<ServiceInfo> out;
  while (rows.Step()) out.push_back(ServiceFromRow(rows));
  return out;
}

ServiceInfo Registry::GetService(std::string_view id) const {
  const int64_t key = RequireId(id, "service");
  std::lock_guard db_lock(db_mutex_);
  const std::string sql = std::string(kServiceColumns) + "WHERE id = ?";
  Statement row(db_, sql.c_str());
  row.Bind(1, key);
  if (!row.Step()) {
    Fail(RegistryErrorCode::kNotFound,
         "service '" + std::string(id) + "' not found");
  }
  return ServiceFromRow(row);
}

std::string Registry::ServiceDocument(std::string_view id) const {
  return LoadDocument(GetService(id).digest);
}

ServiceDescription Registry::ParsedService(std::string_view id) const {
  const ServiceInfo info = GetService(id);
  return ParseService(LoadDocument(info.digest), info.source, info.id).service;
}

std::vector<OperationIndexEntry> Registry::ServiceIndex(
    std::string_view id) const {
  const int64_t key = RequireId(id, "service");
  std::lock_guard db_lock(db_mutex_);
  Statement row(db_, "SELECT index_json FROM services WHERE id = ?");
  row.Bind(1, key);
  if (!row.Step()) {
    Fail(RegistryErrorCode::kNotFound,
         "service '" + std::string(id) + "' not found");
  }
  return DeserializeIndex(row.Text(0), std::to_string(key));
}

std::vector<OperationIndexEntry> Registry::RebuildServiceIndex(
    std::string_view id) const {
  const ServiceInfo info = GetService(id);
  return ParseService(LoadDocument(info.digest), info.source, info.id).entries;
}

OntologyInfo Registry::UploadOntology(std::string bytes, std::string source) {
  std::lock_guard writer(ontology_mutex_);
  const std::string digest = Sha256Hex(bytes);
  {
    std::lock_guard db_lock(db_mutex_);
    Statement dup(db_, "SELECT id FROM ontologies WHERE digest = ?");
    dup.Bind(1, digest);
    if (dup.Step()) {
      Fail(RegistryErrorCode::kDuplicate,
           "ontology already uploaded as " + std::to_string(dup.Int(0)));
    }
  }
  OntologyAxioms axioms;
  try {
    axioms = LoadOntology(bytes);
  } catch (const Error& e) {
    Fail(RegistryErrorCode::kUnprocessable, e.what());
  }

  OntologyInfo info;
  info.source = std::move(source);
  info.digest = digest;
  info.created = NowIso();
  info.class_count = axioms.classes.size();
  StoreDocument(digest, bytes);
  {
    std::lock_guard db_lock(db_mutex_);
    Statement insert(db_,
                     "INSERT INTO ontologies(source, digest, created, "
                     "class_count) VALUES(?, ?, ?, ?)");
    insert.Bind(1, info.source)
        .Bind(2, digest)
        .Bind(3, info.created)
        .Bind(4, static_cast<int64_t>(info.class_count))
        .Step();
    info.id = std::to_string(sqlite3_last_insert_rowid(db_));
  }
  UpdateSnapshot([&](Snapshot& s) {
    s.graph = std::make_shared<const ClassGraph>(Merge(*s.graph, axioms));
  });
  ontology_axioms_[info.id] = std::move(axioms);
  return info;
}

OntologyInfo Registry::UploadOntologyFromUrl(const std::string& url) {
  std::string bytes =
      FetchUrl(url, options_.fetch_timeout, options_.max_fetch_bytes);
  return UploadOntology(std::move(bytes), url);
}

std::vector<OntologyInfo> Registry::ListOntologies() const {
  std::lock_guard db_lock(db_mutex_);
  Statement rows(db_,
                 "SELECT id, source, digest, created, class_count FROM "
                 "ontologies ORDER BY id");
  std::vector<OntologyInfo> out;
  while (rows.Step()) {
    out.push_back({std::to_string(rows.Int(0)), rows.Text(1), rows.Text(2),
                   rows.Text(3), static_cast<size_t>(rows.Int(4))});
  }
  return out;
}

namespace {

ClassNode BuildClassNode(const ClassGraph& graph, const std::string& iri,
                         std::set<std::string>& path) {
  ClassNode node;
  node.iri = iri;
  node.label = Unfold(iri);
  for (auto& member : graph.EquivalenceGroup(iri)) {
    if (member != iri) node.equivalents.push_back(std::move(member));
  }
  path.insert(iri);
  for (const auto& child : graph.DirectSubs(iri)) {
    if (!path.count(child)) {
      node.children.push_back(BuildClassNode(graph, child, path));
    }
  }
  path.erase(iri);
  return node;
}

}  // namespace

std::vector<ClassNode> Registry::OntologyClasses(std::string_view id) const {
  const int64_t key = RequireId(id, "ontology");
  OntologyAxioms axioms;
  {
    std::lock_guard lock(ontology_mutex_);
    auto it = ontology_axioms_.find(std::to_string(key));
    if (it == ontology_axioms_.end()) {
      Fail(RegistryErrorCode::kNotFound,
           "ontology '" + std::string(id) + "' not found");
    }
    axioms = it->second;
  }
  const ClassGraph graph(std::move(axioms));
  std::vector<ClassNode> roots;
  std::set<std::string> path;
  for (const auto& root : graph.Roots()) {
    roots.push_back(BuildClassNode(graph, root, path));
  }
  return roots;
}

std::vector<MatchResult> Registry::Match(std::string_view collection_id,
                                         const Query& query,
                                         const MatchConfig& cfg,
                                         std::vector<std::string>* warnings) const {
  const auto snap = snapshot();
  auto it = snap->collections.find(collection_id);
  if (it == snap->collections.end()) {
    Fail(RegistryErrorCode::kNotFound,
         "collection '" + std::string(collection_id) + "' not found");
  }
  return tomaco::Match(query, *it->second, *snap->graph, cfg, warnings);
}

}  // namespace tomaco
