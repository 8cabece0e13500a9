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

#ifndef TOMACO_OPERATION_INDEX_H_
#define TOMACO_OPERATION_INDEX_H_

#include <optional>
#include <string>
#include <vector>

#include "tomaco/sawsdl_document.h"

namespace tomaco {

// One offered concept below an operation's input or output: an annotated
// node yields one item per annotation; an unannotated node yields a single
// name-only item.
struct IndexItem {
  std::optional<std::string> annotation;
  std::string element_name;
  NodeKind node_kind = NodeKind::kElement;

  friend bool operator==(const IndexItem&, const IndexItem&) = default;
  friend auto operator<=>(const IndexItem&, const IndexItem&) = default;
};

// The search unit: one operation of one service.
struct OperationIndexEntry {
  std::string service_id;
  std::string service_name;
  std::string interface_name;
  std::string operation_name;
  std::vector<IndexItem> inputs;   // DFS order, duplicates removed
  std::vector<IndexItem> outputs;

  friend bool operator==(const OperationIndexEntry&,
                         const OperationIndexEntry&) = default;
};

std::vector<OperationIndexEntry> BuildIndexEntries(
    const ServiceDescription& service);

}  // namespace tomaco

#endif  // TOMACO_OPERATION_INDEX_H_
