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

// Loading collections, ontologies and queries from files.

#ifndef TOMACO_CORPUS_H_
#define TOMACO_CORPUS_H_

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tomaco/matching_engine.h"
#include "tomaco/ontology_store.h"
#include "tomaco/operation_index.h"

namespace tomaco {

struct SourceDocument {
  std::string id;  // file name
  std::string bytes;
};

struct NamedQuery {
  std::string id;
  Query query;
};

// Throws Error when the file cannot be read.
std::string ReadFileBytes(const std::filesystem::path& path);

// Regular files directly inside `dir` whose extension (case-insensitive)
// is one of `extensions`, sorted by file name. Throws Error if `dir` is not
// a readable directory.
std::vector<SourceDocument> ReadDocuments(
    const std::filesystem::path& dir,
    std::span<const std::string_view> extensions);

inline constexpr std::string_view kServiceExtensions[] = {".wsdl", ".sawsdl",
                                                          ".xml"};
inline constexpr std::string_view kOntologyExtensions[] = {".owl", ".rdf",
                                                           ".xml"};

// Merges every readable ontology; unreadable ones are reported in
// `warnings` and skipped.
ClassGraph BuildClassGraph(std::span<const SourceDocument> ontologies,
                           std::vector<std::string>* warnings);

// Parses and indexes every service; unparseable ones are reported in
// `warnings` and skipped. Parser warnings are forwarded with the file name.
std::vector<OperationIndexEntry> BuildCollectionIndex(
    std::span<const SourceDocument> services,
    std::vector<std::string>* warnings);

// A query written as a service description: requested inputs/outputs are
// the annotations under all of its operations' inputs/outputs, the query
// name is its service name. Throws like ParseDocument.
NamedQuery QueryFromDocument(const SourceDocument& doc);

// Line format: `query_id<TAB>field<TAB>field...` where each field is
// `I:<iri> <iri>...`, `O:<iri> <iri>...` or `N:<query name>`. Throws
// ParseError with the offending line number.
std::vector<NamedQuery> ParseQueryFile(std::string_view text);

// Fixed-point rendering independent of the C locale.
std::string FormatFixed(double value, int decimals);

}  // namespace tomaco

#endif  // TOMACO_CORPUS_H_
