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

#include "tomaco/corpus.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "tomaco/errors.h"
#include "tomaco/sawsdl_document.h"

namespace tomaco {
namespace fs = std::filesystem;

namespace {

std::string Lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return s;
}

std::vector<std::string_view> SplitOn(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

std::string ReadFileBytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return std::move(buffer).str();
}

std::vector<SourceDocument> ReadDocuments(
    const fs::path& dir, std::span<const std::string_view> extensions) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw Error("'" + dir.string() + "' is not a directory");
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string ext = Lowercase(entry.path().extension().string());
    if (std::find(extensions.begin(), extensions.end(), ext) !=
        extensions.end()) {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) {
              return a.filename().string() < b.filename().string();
            });
  std::vector<SourceDocument> docs;
  docs.reserve(files.size());
  for (const auto& path : files) {
    docs.push_back({path.filename().string(), ReadFileBytes(path)});
  }
  return docs;
}

ClassGraph BuildClassGraph(std::span<const SourceDocument> ontologies,
                           std::vector<std::string>* warnings) {
  OntologyAxioms all;
  for (const SourceDocument& doc : ontologies) {
    try {
      all.Merge(LoadOntology(doc.bytes));
    } catch (const Error& e) {
      if (warnings) warnings->push_back(doc.id + ": " + e.what());
    }
  }
  return ClassGraph(std::move(all));
}

std::vector<OperationIndexEntry> BuildCollectionIndex(
    std::span<const SourceDocument> services,
    std::vector<std::string>* warnings) {
  std::vector<OperationIndexEntry> index;
  for (const SourceDocument& doc : services) {
    try {
      const ServiceDescription service = ParseDocument(doc.bytes, doc.id);
      if (warnings) {
        for (const auto& w : service.warnings) {
          warnings->push_back(doc.id + ": " + w);
        }
      }
      auto entries = BuildIndexEntries(service);
      std::move(entries.begin(), entries.end(), std::back_inserter(index));
    } catch (const Error& e) {
      if (warnings) warnings->push_back(doc.id + ": " + e.what());
    }
  }
  return index;
}

NamedQuery QueryFromDocument(const SourceDocument& doc) {
  const ServiceDescription service = ParseDocument(doc.bytes, doc.id);
  std::set<std::string> inputs;
  std::set<std::string> outputs;
  for (const Interface& iface : service.interfaces) {
    for (const Operation& op : iface.operations) {
      IoSets sets = ExtractIo(op);
      inputs.merge(sets.input_annotations);
      outputs.merge(sets.output_annotations);
    }
  }
  NamedQuery q;
  q.id = doc.id;
  q.query.inputs.assign(inputs.begin(), inputs.end());
  q.query.outputs.assign(outputs.begin(), outputs.end());
  q.query.name = service.service_name;
  return q;
}

std::vector<NamedQuery> ParseQueryFile(std::string_view text) {
  std::vector<NamedQuery> queries;
  int line_no = 0;
  for (std::string_view line : SplitOn(text, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    const auto fields = SplitOn(line, '\t');
    NamedQuery q;
    q.id = std::string(fields[0]);
    if (q.id.empty()) {
      throw ParseError("query file line " + std::to_string(line_no) +
                       ": empty query id");
    }
    for (size_t i = 1; i < fields.size(); ++i) {
      std::string_view f = fields[i];
      if (f.empty()) continue;
      if (f.size() < 2 || f[1] != ':' ||
          (f[0] != 'I' && f[0] != 'O' && f[0] != 'N')) {
        throw ParseError("query file line " + std::to_string(line_no) +
                         ": field '" + std::string(f) +
                         "' must start with I:, O: or N:");
      }
      const std::string_view value = f.substr(2);
      if (f[0] == 'N') {
        q.query.name = std::string(value);
        continue;
      }
      auto& target = f[0] == 'I' ? q.query.inputs : q.query.outputs;
      for (auto& iri : SplitModelReference(value)) {
        target.push_back(std::move(iri));
      }
    }
    queries.push_back(std::move(q));
  }
  return queries;
}

std::string FormatFixed(double value, int decimals) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value,
                                 std::chars_format::fixed, decimals);
  if (ec != std::errc()) return "nan";
  std::string s(buf, end);
  // Avoid "-0.0000" for tiny negative noise.
  if (s.front() == '-' &&
      s.find_first_not_of("-0.") == std::string::npos) {
    s.erase(0, 1);
  }
  return s;
}

}  // namespace tomaco
