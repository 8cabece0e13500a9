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

#include <gtest/gtest.h>
#include <httplib.h>
#include <sqlite3.h>

#include <atomic>
#include <thread>

#include "test_util.h"

namespace tomaco {
namespace {

using ::tomaco::testing::TempDir;
using ::tomaco::testing::Testdata;

constexpr char kBooks[] = "http://127.0.0.1/ontology/books.owl#";

RegistryErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const RegistryError& e) {
    return e.code();
  }
  ADD_FAILURE() << "no RegistryError thrown";
  return RegistryErrorCode::kStorage;
}

Query OutputQuery(const std::string& iri) {
  Query q;
  q.outputs = {iri};
  return q;
}

class RegistryTest : public ::testing::Test {
 protected:
  RegistryOptions Options() const { return {dir_.path(), std::chrono::seconds(5)}; }

  TempDir dir_;
};

TEST_F(RegistryTest, CollectionsPersist) {
  std::string id;
  {
    Registry registry(Options());
    const auto c = registry.CreateCollection("TC3 sample", "books", "alice");
    id = c.id;
    EXPECT_FALSE(c.created.empty());
    EXPECT_EQ(CodeOf([&] { registry.CreateCollection("  ", "", ""); }),
              RegistryErrorCode::kValidation);
  }
  Registry reopened(Options());
  const auto all = reopened.ListCollections();
  ASSERT_EQ(all.size(), 1u);
  EXPECT_EQ(all[0].id, id);
  EXPECT_EQ(all[0].name, "TC3 sample");
  EXPECT_EQ(all[0].uploader, "alice");
  EXPECT_EQ(CodeOf([&] { reopened.GetCollection("42"); }),
            RegistryErrorCode::kNotFound);
  EXPECT_EQ(CodeOf([&] { reopened.GetCollection("abc"); }),
            RegistryErrorCode::kNotFound);
}

TEST_F(RegistryTest, UploadedServiceIsImmediatelyMatchable) {
  Registry registry(Options());
  registry.UploadOntology(Testdata("books.owl"), "books.owl");
  const auto c = registry.CreateCollection("c", "", "");
  const auto s = registry.UploadService(c.id, Testdata("author_genre_service.wsdl"),
                                        "author_genre_service.wsdl");
  EXPECT_EQ(s.service_name, "NovelAuthorGenreService");
  EXPECT_EQ(s.operation_count, 1u);

  const auto results =
      registry.Match(c.id, OutputQuery(std::string(kBooks) + "Genre"), MatchConfig{}, nullptr);
  ASSERT_EQ(results.size(), 1u);
  EXPECT_EQ(results[0].service_id, s.id);
  EXPECT_EQ(results[0].operation_name, "get_AUTHOR_GENRE");
  EXPECT_EQ(results[0].rating, 1.0);
}

TEST_F(RegistryTest, DuplicatesRejectedPerCollection) {
  Registry registry(Options());
  const auto a = registry.CreateCollection("a", "", "");
  const auto b = registry.CreateCollection("b", "", "");
  const std::string bytes = Testdata("book_price_service.wsdl");
  registry.UploadService(a.id, bytes, "x.wsdl");
  EXPECT_EQ(CodeOf([&] { registry.UploadService(a.id, bytes, "y.wsdl"); }),
            RegistryErrorCode::kDuplicate);
  EXPECT_NO_THROW(registry.UploadService(b.id, bytes, "x.wsdl"));
  EXPECT_EQ(registry.ListServices(a.id).size(), 1u);
}

TEST_F(RegistryTest, RejectedUploadsLeaveNoTrace) {
  Registry registry(Options());
  const auto c = registry.CreateCollection("c", "", "");
  EXPECT_EQ(CodeOf([&] {
              registry.UploadService(c.id, Testdata("malformed.wsdl"), "bad.wsdl");
            }),
            RegistryErrorCode::kUnprocessable);
  EXPECT_EQ(CodeOf([&] { registry.UploadService("999", "<x/>", "x"); }),
            RegistryErrorCode::kNotFound);
  EXPECT_TRUE(registry.ListServices(c.id).empty());
  EXPECT_TRUE(std::filesystem::is_empty(dir_.path() / "documents"));
}

TEST_F(RegistryTest, PlainWsdlOnlyRankedByNames) {
  Registry registry(Options());
  const auto c = registry.CreateCollection("c", "", "");
  registry.UploadService(c.id, Testdata("plain_weather.wsdl"), "plain_weather.wsdl");
  Query q;
  q.outputs = {"http://example.org/weather.owl#Forecast"};
  MatchConfig logic;
  logic.strategy = Strategy::kLogic;
  for (const auto& r : registry.Match(c.id, q, logic, nullptr)) {
    EXPECT_EQ(r.rating, 0.0);
  }
  MatchConfig syn;
  syn.strategy = Strategy::kSynOnSyn;
  double best = 0.0;
  for (const auto& r : registry.Match(c.id, q, syn, nullptr)) best = std::max(best, r.rating);
  EXPECT_GT(best, 0.0);
}

TEST_F(RegistryTest, StoreRoundTripAndIndexRebuild) {
  Registry registry(Options());
  const auto c = registry.CreateCollection("c", "", "");
  for (const char* f : {"book_price_service.wsdl", "tc3_part_annotation.wsdl",
                        "wsdl20_geo.wsdl", "multi_iri.wsdl"}) {
    const std::string bytes = Testdata(f);
    const auto s = registry.UploadService(c.id, bytes, f);
    EXPECT_EQ(registry.ServiceDocument(s.id), bytes);
    EXPECT_EQ(s.digest, Sha256Hex(bytes));
    const auto cached = registry.ServiceIndex(s.id);
    EXPECT_FALSE(cached.empty());
    EXPECT_EQ(cached, registry.RebuildServiceIndex(s.id)) << f;
  }
  const auto multi = registry.ListServices(c.id).back();
  EXPECT_FALSE(multi.warnings.empty());
}

TEST_F(RegistryTest, RestartReproducesMatches) {
  std::vector<MatchResult> before;
  std::string cid;
  Query q;
  q.inputs = {std::string(kBooks) + "Novel"};
  q.outputs = {std::string(kBooks) + "Writer"};
  {
    Registry registry(Options());
    registry.UploadOntology(Testdata("books.owl"), "books.owl");
    cid = registry.CreateCollection("c", "", "").id;
    registry.UploadService(cid, Testdata("tc3_part_annotation.wsdl"), "a.wsdl");
    registry.UploadService(cid, Testdata("author_genre_service.wsdl"), "b.wsdl");
    registry.UploadService(cid, Testdata("book_price_service.wsdl"), "c.wsdl");
    before = registry.Match(cid, q, MatchConfig{}, nullptr);
  }
  Registry reopened(Options());
  EXPECT_TRUE(reopened.startup_warnings().empty());
  const auto after = reopened.Match(cid, q, MatchConfig{}, nullptr);
  ASSERT_EQ(before.size(), 3u);
  ASSERT_EQ(after.size(), before.size());
  for (size_t i = 0; i < after.size(); ++i) {
    EXPECT_EQ(after[i].service_id, before[i].service_id);
    EXPECT_EQ(after[i].rating, before[i].rating);
  }
  EXPECT_EQ(after[0].rating, 1.0);
}

TEST_F(RegistryTest, StaleCacheIsRebuiltFromDocuments) {
  std::string sid;
  std::vector<OperationIndexEntry> original;
  {
    Registry registry(Options());
    const auto c = registry.CreateCollection("c", "", "");
    sid = registry.UploadService(c.id, Testdata("book_price_service.wsdl"), "a.wsdl").id;
    original = registry.ServiceIndex(sid);
  }
  sqlite3* db = nullptr;
  ASSERT_EQ(sqlite3_open((dir_.path() / "registry.db").c_str(), &db), SQLITE_OK);
  ASSERT_EQ(sqlite3_exec(db,
                         "UPDATE services SET index_json = 'garbage';"
                         "UPDATE meta SET value = '0' WHERE key = 'index_version';",
                         nullptr, nullptr, nullptr),
            SQLITE_OK);
  sqlite3_close(db);
  Registry reopened(Options());
  EXPECT_EQ(reopened.ServiceIndex(sid), original);
}

TEST_F(RegistryTest, MissingDocumentIsReportedAtStartup) {
  std::string digest;
  {
    Registry registry(Options());
    const auto c = registry.CreateCollection("c", "", "");
    digest = registry.UploadService(c.id, Testdata("book_price_service.wsdl"), "a.wsdl").digest;
  }
  std::filesystem::remove(dir_.path() / "documents" / digest);
  // Force the rebuild path so the document is needed.
  sqlite3* db = nullptr;
  ASSERT_EQ(sqlite3_open((dir_.path() / "registry.db").c_str(), &db), SQLITE_OK);
  sqlite3_exec(db, "UPDATE services SET index_json = NULL", nullptr, nullptr, nullptr);
  sqlite3_close(db);
  Registry reopened(Options());
  ASSERT_EQ(reopened.startup_warnings().size(), 1u);
}

TEST_F(RegistryTest, OntologyUploadsMergeIntoGraph) {
  Registry registry(Options());
  registry.UploadOntology(Testdata("concept.owl"), "concept.owl");
  const std::string price = "http://127.0.0.1/ontology/concept.owl#Price";
  const std::string cost = std::string(kBooks) + "Cost";
  EXPECT_EQ(registry.graph()->Relate(cost, price), ClassRelation::kUnrelated);
  const auto held = registry.graph();

  registry.UploadOntology(Testdata("bridge.owl"), "bridge.owl");
  EXPECT_EQ(registry.graph()->Relate(cost, price), ClassRelation::kEquivalent);
  // Readers holding an older snapshot keep a consistent view.
  EXPECT_EQ(held->Relate(cost, price), ClassRelation::kUnrelated);

  const size_t size = registry.graph()->size();
  EXPECT_EQ(CodeOf([&] { registry.UploadOntology(Testdata("bridge.owl"), "again.owl"); }),
            RegistryErrorCode::kDuplicate);
  EXPECT_EQ(registry.graph()->size(), size);
  EXPECT_EQ(registry.ListOntologies().size(), 2u);
  EXPECT_EQ(CodeOf([&] { registry.UploadOntology("<rdf:RDF", "x.owl"); }),
            RegistryErrorCode::kUnprocessable);
}

TEST_F(RegistryTest, ClassTreeNestsChain) {
  Registry registry(Options());
  const auto o = registry.UploadOntology(Testdata("chain.owl"), "chain.owl");
  EXPECT_EQ(o.class_count, 3u);
  const auto roots = registry.OntologyClasses(o.id);
  ASSERT_EQ(roots.size(), 1u);
  EXPECT_EQ(roots[0].label, "Vehicle");
  ASSERT_EQ(roots[0].children.size(), 1u);
  EXPECT_EQ(roots[0].children[0].label, "Car");
  ASSERT_EQ(roots[0].children[0].children.size(), 1u);
  EXPECT_EQ(roots[0].children[0].children[0].label, "SportsCar");
  EXPECT_TRUE(roots[0].children[0].children[0].children.empty());

  const auto books = registry.UploadOntology(Testdata("books.owl"), "books.owl");
  bool found_writer = false;
  for (const auto& root : registry.OntologyClasses(books.id)) {
    if (root.iri == std::string(kBooks) + "Person") {
      ASSERT_EQ(root.children.size(), 1u);
      EXPECT_EQ(root.children[0].iri, std::string(kBooks) + "Author");
      EXPECT_EQ(root.children[0].equivalents,
                std::vector<std::string>{std::string(kBooks) + "Writer"});
      found_writer = true;
    }
  }
  EXPECT_TRUE(found_writer);
  // Classes of one ontology do not leak into another's tree.
  EXPECT_EQ(registry.OntologyClasses(o.id).size(), 1u);
}

TEST_F(RegistryTest, ConcurrentMatchesAgree) {
  Registry registry(Options());
  registry.UploadOntology(Testdata("books.owl"), "books.owl");
  const auto c = registry.CreateCollection("c", "", "");
  for (const char* f : {"book_price_service.wsdl", "tc3_part_annotation.wsdl",
                        "author_genre_service.wsdl", "plain_weather.wsdl"}) {
    registry.UploadService(c.id, Testdata(f), f);
  }
  Query q;
  q.inputs = {std::string(kBooks) + "Book"};
  q.outputs = {std::string(kBooks) + "Genre", std::string(kBooks) + "Person"};
  const auto baseline = registry.Match(c.id, q, MatchConfig{}, nullptr);

  std::vector<std::thread> threads;
  std::atomic<int> mismatches{0};
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&] {
      for (int i = 0; i < 25; ++i) {
        const auto got = registry.Match(c.id, q, MatchConfig{}, nullptr);
        bool same = got.size() == baseline.size();
        for (size_t k = 0; same && k < got.size(); ++k) {
          same = got[k].service_id == baseline[k].service_id &&
                 got[k].rating == baseline[k].rating;
        }
        if (!same) ++mismatches;
      }
    });
  }
  for (auto& t : threads) t.join();
  EXPECT_EQ(mismatches.load(), 0);
}

TEST_F(RegistryTest, ConcurrentUploadsToDifferentCollections) {
  Registry registry(Options());
  const std::vector<std::string> files = {"book_price_service.wsdl",
                                          "tc3_part_annotation.wsdl",
                                          "author_genre_service.wsdl",
                                          "plain_weather.wsdl"};
  std::vector<std::string> ids;
  for (int i = 0; i < 4; ++i) ids.push_back(registry.CreateCollection("c", "", "").id);
  std::vector<std::thread> threads;
  for (int i = 0; i < 4; ++i) {
    threads.emplace_back([&, i] {
      for (const auto& f : files) registry.UploadService(ids[i], Testdata(f), f);
    });
  }
  for (auto& t : threads) t.join();
  Query q;
  q.inputs = {std::string(kBooks) + "Novel"};
  for (const auto& id : ids) {
    const auto services = registry.ListServices(id);
    EXPECT_EQ(services.size(), 4u);
    size_t operations = 0;
    for (const auto& s : services) operations += s.operation_count;
    EXPECT_EQ(registry.Match(id, q, MatchConfig{}, nullptr).size(), operations);
  }
}

class FetchTest : public ::testing::Test {
 protected:
  void SetUp() override {
    server_.Get("/doc.wsdl", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(Testdata("book_price_service.wsdl"), "application/xml");
    });
    server_.Get("/big", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(std::string(4096, 'x'), "text/plain");
    });
    server_.Get("/moved", [](const httplib::Request&, httplib::Response& res) {
      res.set_redirect("/doc.wsdl");
    });
    server_.Get("/slow", [](const httplib::Request&, httplib::Response& res) {
      std::this_thread::sleep_for(std::chrono::milliseconds(2500));
      res.set_content("late", "text/plain");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  void TearDown() override {
    server_.stop();
    thread_.join();
  }
  std::string Url(const std::string& path) const {
    return "http://127.0.0.1:" + std::to_string(port_) + path;
  }

  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
};

TEST_F(FetchTest, FetchesAndFollowsRedirects) {
  const std::string expected = Testdata("book_price_service.wsdl");
  EXPECT_EQ(FetchUrl(Url("/doc.wsdl"), std::chrono::seconds(5), 1 << 20), expected);
  EXPECT_EQ(FetchUrl(Url("/moved"), std::chrono::seconds(5), 1 << 20), expected);
}

TEST_F(FetchTest, Failures) {
  EXPECT_EQ(CodeOf([&] { FetchUrl(Url("/big"), std::chrono::seconds(5), 1000); }),
            RegistryErrorCode::kFetch);
  EXPECT_EQ(CodeOf([&] { FetchUrl(Url("/nothing"), std::chrono::seconds(5), 1000); }),
            RegistryErrorCode::kFetch);
  EXPECT_EQ(CodeOf([&] { FetchUrl(Url("/slow"), std::chrono::seconds(1), 1000); }),
            RegistryErrorCode::kFetch);
  EXPECT_EQ(CodeOf([&] { FetchUrl("ftp://example.org/x", std::chrono::seconds(1), 10); }),
            RegistryErrorCode::kValidation);
}

TEST_F(FetchTest, UploadFromUrlStoresLocalCopy) {
  TempDir dir;
  Registry registry({dir.path(), std::chrono::seconds(5)});
  const auto c = registry.CreateCollection("c", "", "");
  const auto s = registry.UploadServiceFromUrl(c.id, Url("/doc.wsdl"));
  EXPECT_EQ(s.source, Url("/doc.wsdl"));
  EXPECT_TRUE(std::filesystem::exists(dir.path() / "documents" / s.digest));
  EXPECT_EQ(registry.ServiceDocument(s.id), Testdata("book_price_service.wsdl"));
}

}  // namespace
}  // namespace tomaco
