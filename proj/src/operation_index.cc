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

#include "tomaco/operation_index.h"

#include <algorithm>

#include "tomaco/text_similarity.h"

namespace tomaco {
namespace {

void AddUnique(std::vector<IndexItem>& items, IndexItem item) {
  if (std::find(items.begin(), items.end(), item) == items.end()) {
    items.push_back(std::move(item));
  }
}

std::vector<IndexItem> ItemsOf(const ElementTree& tree,
                               const std::vector<std::string>& op_annotations) {
  std::vector<IndexItem> items;
  for (const ElementNode& node : tree.nodes) {
    if (node.annotations.empty()) {
      if (!node.local_name.empty()) {
        AddUnique(items, {std::nullopt, node.local_name, node.node_kind});
      }
      continue;
    }
    for (const std::string& iri : node.annotations) {
      AddUnique(items, {iri, node.local_name, node.node_kind});
    }
  }
  for (const std::string& iri : op_annotations) {
    std::string name = Unfold(iri);
    if (!name.empty()) {
      AddUnique(items, {std::nullopt, std::move(name), NodeKind::kOperation});
    }
  }
  return items;
}

}  // namespace

std::vector<OperationIndexEntry> BuildIndexEntries(
    const ServiceDescription& service) {
  std::vector<OperationIndexEntry> entries;
  for (const Interface& iface : service.interfaces) {
    for (const Operation& op : iface.operations) {
      OperationIndexEntry& entry = entries.emplace_back();
      entry.service_id = service.source_id;
      entry.service_name = service.service_name;
      entry.interface_name = iface.name;
      entry.operation_name = op.name;
      entry.inputs = ItemsOf(op.input_tree, op.annotations);
      entry.outputs = ItemsOf(op.output_tree, op.annotations);
    }
  }
  return entries;
}

}  // namespace tomaco
