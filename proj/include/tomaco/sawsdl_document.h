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

// Structural model of WSDL 1.1 / WSDL 2.0 service descriptions carrying
// SAWSDL modelReference annotations, and the depth-first extraction of the
// annotation IRIs and element names below every operation's input and
// output.

#ifndef TOMACO_SAWSDL_DOCUMENT_H_
#define TOMACO_SAWSDL_DOCUMENT_H_

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace tomaco {

inline constexpr std::string_view kSawsdlNamespace =
    "http://www.w3.org/ns/sawsdl";
inline constexpr std::string_view kWsdl11Namespace =
    "http://schemas.xmlsoap.org/wsdl/";
inline constexpr std::string_view kWsdl20Namespace =
    "http://www.w3.org/ns/wsdl";
inline constexpr std::string_view kXsdNamespace =
    "http://www.w3.org/2001/XMLSchema";

enum class NodeKind {
  kPart,
  kElement,
  kSimpleType,
  kComplexType,
  kMessage,
  kInput,
  kOutput,
  // Only used for index items derived from annotations placed on the
  // operation element itself; never appears inside an ElementTree.
  kOperation,
};

std::string_view NodeKindName(NodeKind kind);

struct ElementNode {
  std::string local_name;  // may be empty for anonymous types
  NodeKind node_kind = NodeKind::kElement;
  std::vector<std::string> annotations;  // absolute IRIs, document order
  int depth = 0;

  friend bool operator==(const ElementNode&, const ElementNode&) = default;
};

// Nodes in DFS pre-order; depth lets a display layer rebuild the nesting.
struct ElementTree {
  std::vector<ElementNode> nodes;

  bool empty() const { return nodes.empty(); }
  friend bool operator==(const ElementTree&, const ElementTree&) = default;
};

struct Operation {
  std::string name;
  ElementTree input_tree;
  ElementTree output_tree;
  // modelReference values found on the operation element itself.
  std::vector<std::string> annotations;

  friend bool operator==(const Operation&, const Operation&) = default;
};

struct Interface {
  std::string name;
  std::vector<Operation> operations;

  friend bool operator==(const Interface&, const Interface&) = default;
};

struct ServiceDescription {
  std::string source_id;
  std::string service_name;
  std::vector<Interface> interfaces;
  // Non-fatal irregularities such as dangling type references.
  std::vector<std::string> warnings;

  friend bool operator==(const ServiceDescription&,
                         const ServiceDescription&) = default;
};

// Parses a WSDL 1.1 or WSDL 2.0 document. Both vocabularies normalise into
// Interface/Operation. Messages, parts, elements and types are resolved
// against the same document only.
//
// Throws ParseError for malformed XML and EmptyServiceError when the
// document has no interface (or portType) with at least one operation.
// Unresolvable references become warnings; the referring node is kept with
// an empty subtree.
ServiceDescription ParseDocument(std::string_view bytes,
                                 std::string source_id);

struct IoSets {
  std::set<std::string> input_annotations;
  std::set<std::string> output_annotations;
  std::set<std::string> input_names;
  std::set<std::string> output_names;

  friend bool operator==(const IoSets&, const IoSets&) = default;
};

// Flattens both trees of an operation into annotation and name sets; depth
// is discarded. Operation-level annotations contribute their unfolded local
// name to both name sets and to neither annotation set.
IoSets ExtractIo(const Operation& op);

// Splits a modelReference attribute value on whitespace.
std::vector<std::string> SplitModelReference(std::string_view value);

}  // namespace tomaco

#endif  // TOMACO_SAWSDL_DOCUMENT_H_
