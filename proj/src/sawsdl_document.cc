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

#include "tomaco/sawsdl_document.h"

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <utility>

#include "tomaco/errors.h"
#include "tomaco/text_similarity.h"
#include "tomaco/xml_document.h"

namespace tomaco {
namespace {

using xml::Element;
using xml::Name;

// Recursive schema types are cut here as well as on revisits.
constexpr int kMaxDepth = 64;

bool IsAbsoluteIri(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) {
    return false;
  }
  for (size_t i = 1; i < s.size(); ++i) {
    const unsigned char c = s[i];
    if (c == ':') return i + 1 < s.size();
    if (!std::isalnum(c) && c != '+' && c != '-' && c != '.') return false;
  }
  return false;
}

std::string AttrOr(const Element& e, std::string_view local,
                   std::string fallback = {}) {
  const std::string* v = e.FindAttribute("", local);
  return v ? *v : std::move(fallback);
}

class DocumentReader {
 public:
  DocumentReader(const Element& root, ServiceDescription& out)
      : root_(root), out_(out) {
    if (root.name.Is(kWsdl11Namespace, "definitions")) {
      wsdl_ns_ = kWsdl11Namespace;
    } else if (root.name.Is(kWsdl20Namespace, "description")) {
      wsdl_ns_ = kWsdl20Namespace;
      wsdl20_ = true;
    } else {
      throw EmptyServiceError("'" + out.source_id +
                              "' has no WSDL definitions/description root");
    }
    target_ns_ = AttrOr(root, "targetNamespace");
    IndexComponents();
  }

  void Read() {
    out_.service_name = ServiceName();
    const std::string_view interface_tag = wsdl20_ ? "interface" : "portType";
    size_t operation_count = 0;
    for (const Element& child : root_.children) {
      if (!child.name.Is(wsdl_ns_, interface_tag)) continue;
      Interface& iface = out_.interfaces.emplace_back();
      iface.name = AttrOr(child, "name");
      std::set<std::string> seen;
      for (const Element& op_el : child.children) {
        if (!op_el.name.Is(wsdl_ns_, "operation")) continue;
        Operation op = ReadOperation(op_el);
        if (!seen.insert(op.name).second) {
          Warn("duplicate operation '" + op.name + "' in interface '" +
               iface.name + "' ignored");
          continue;
        }
        iface.operations.push_back(std::move(op));
        ++operation_count;
      }
    }
    if (operation_count == 0) {
      throw EmptyServiceError("'" + out_.source_id +
                              "' declares no interface operation");
    }
  }

 private:
  void Warn(std::string message) { out_.warnings.push_back(std::move(message)); }

  std::vector<std::string> Annotations(const Element& e) {
    std::vector<std::string> result;
    auto add = [&](const std::string& value) {
      for (auto& token : SplitModelReference(value)) {
        if (IsAbsoluteIri(token)) {
          result.push_back(std::move(token));
        } else {
          Warn("non-absolute modelReference '" + token + "' at line " +
               std::to_string(e.line) + " ignored");
        }
      }
    };
    if (const auto* v = e.FindAttribute(kSawsdlNamespace, "modelReference")) {
      add(*v);
    }
    // WSDL 1.1 carries operation-level references in attrExtensions.
    for (const Element& child : e.children) {
      if (!child.name.Is(kSawsdlNamespace, "attrExtensions")) continue;
      if (const auto* v =
              child.FindAttribute(kSawsdlNamespace, "modelReference")) {
        add(*v);
      }
    }
    return result;
  }

  std::string ServiceName() const {
    for (const Element& child : root_.children) {
      if (child.name.Is(wsdl_ns_, "service")) {
        if (auto name = AttrOr(child, "name"); !name.empty()) return name;
      }
    }
    if (auto name = AttrOr(root_, "name"); !name.empty()) return name;
    return out_.source_id;
  }

  void IndexComponents() {
    for (const Element& child : root_.children) {
      if (!wsdl20_ && child.name.Is(wsdl_ns_, "message")) {
        Register(messages_, Name{target_ns_, AttrOr(child, "name")}, child);
      } else if (child.name.Is(wsdl_ns_, "types")) {
        for (const Element& schema : child.children) {
          if (schema.name.Is(kXsdNamespace, "schema")) IndexSchema(schema);
        }
      }
    }
  }

  void IndexSchema(const Element& schema) {
    const std::string tns = AttrOr(schema, "targetNamespace");
    for (const Element& decl : schema.children) {
      if (decl.name.ns != kXsdNamespace) continue;
      const Name qname{tns, AttrOr(decl, "name")};
      if (decl.name.local == "element") {
        Register(elements_, qname, decl);
      } else if (decl.name.local == "complexType" ||
                 decl.name.local == "simpleType") {
        Register(types_, qname, decl);
      }
    }
  }

  static void Register(std::map<Name, const Element*>& table, Name qname,
                       const Element& decl) {
    if (qname.local.empty()) return;
    table.emplace(std::move(qname), &decl);
  }

  // Exact namespace match first; falls back to a unique local-name match,
  // which tolerates documents with sloppy prefix bindings.
  static const Element* Lookup(const std::map<Name, const Element*>& table,
                               const Name& qname) {
    if (auto it = table.find(qname); it != table.end()) return it->second;
    const Element* found = nullptr;
    for (const auto& [key, decl] : table) {
      if (key.local != qname.local) continue;
      if (found) return nullptr;
      found = decl;
    }
    return found;
  }

  enum class Ref { kBuiltin, kFound, kDangling };

  Ref Resolve(const Element& ctx, const std::string& qname,
              const std::map<Name, const Element*>& table,
              const Element** decl) {
    auto name = ctx.ResolveQName(qname);
    if (name && name->ns == kXsdNamespace) return Ref::kBuiltin;
    if (name) *decl = Lookup(table, *name);
    if (!name || *decl == nullptr) {
      Warn("dangling reference '" + qname + "' at line " +
           std::to_string(ctx.line));
      return Ref::kDangling;
    }
    return Ref::kFound;
  }

  Operation ReadOperation(const Element& op_el) {
    Operation op;
    op.name = AttrOr(op_el, "name");
    op.annotations = Annotations(op_el);
    for (const Element& child : op_el.children) {
      if (child.name.Is(wsdl_ns_, "input") && op.input_tree.empty()) {
        ReadDirection(child, NodeKind::kInput, op.input_tree);
      } else if (child.name.Is(wsdl_ns_, "output") && op.output_tree.empty()) {
        ReadDirection(child, NodeKind::kOutput, op.output_tree);
      }
    }
    return op;
  }

  void ReadDirection(const Element& dir, NodeKind kind, ElementTree& tree) {
    tree_ = &tree;
    visiting_.clear();
    Emit(AttrOr(dir, "name"), kind, Annotations(dir), 0);
    if (wsdl20_) {
      const std::string element = AttrOr(dir, "element");
      if (!element.empty() && element[0] != '#') {
        EmitElementRef(dir, element, 1);
      }
      return;
    }
    const std::string message = AttrOr(dir, "message");
    if (message.empty()) return;
    const Element* msg = nullptr;
    if (Resolve(dir, message, messages_, &msg) != Ref::kFound) return;
    Emit(AttrOr(*msg, "name"), NodeKind::kMessage, Annotations(*msg), 1);
    for (const Element& part : msg->children) {
      if (!part.name.Is(wsdl_ns_, "part")) continue;
      Emit(AttrOr(part, "name"), NodeKind::kPart, Annotations(part), 2);
      if (const auto element = AttrOr(part, "element"); !element.empty()) {
        EmitElementRef(part, element, 3);
      } else if (const auto type = AttrOr(part, "type"); !type.empty()) {
        EmitTypeRef(part, type, 3);
      }
    }
  }

  void Emit(std::string name, NodeKind kind, std::vector<std::string> anns,
            int depth) {
    tree_->nodes.push_back({std::move(name), kind, std::move(anns), depth});
  }

  void EmitElementRef(const Element& ctx, const std::string& qname,
                      int depth) {
    const Element* decl = nullptr;
    if (Resolve(ctx, qname, elements_, &decl) == Ref::kFound) {
      EmitElementDecl(*decl, depth, {});
    }
  }

  void EmitTypeRef(const Element& ctx, const std::string& qname, int depth) {
    const Element* decl = nullptr;
    if (Resolve(ctx, qname, types_, &decl) == Ref::kFound) {
      EmitTypeDecl(*decl, depth);
    }
  }

  bool Enter(const Element& decl, int depth) {
    return depth <= kMaxDepth && visiting_.insert(&decl).second;
  }
  void Leave(const Element& decl) { visiting_.erase(&decl); }

  void EmitElementDecl(const Element& decl, int depth,
                       std::vector<std::string> extra_annotations) {
    auto anns = Annotations(decl);
    anns.insert(anns.end(), extra_annotations.begin(),
                extra_annotations.end());
    Emit(AttrOr(decl, "name"), NodeKind::kElement, std::move(anns), depth);
    if (!Enter(decl, depth)) return;
    if (const auto type = AttrOr(decl, "type"); !type.empty()) {
      EmitTypeRef(decl, type, depth + 1);
    } else {
      for (const Element& child : decl.children) {
        if (child.name.Is(kXsdNamespace, "complexType") ||
            child.name.Is(kXsdNamespace, "simpleType")) {
          EmitTypeDecl(child, depth + 1);
        }
      }
    }
    Leave(decl);
  }

  void EmitTypeDecl(const Element& decl, int depth) {
    const bool complex = decl.name.local == "complexType";
    Emit(AttrOr(decl, "name"),
         complex ? NodeKind::kComplexType : NodeKind::kSimpleType,
         Annotations(decl), depth);
    if (!Enter(decl, depth)) return;
    WalkContent(decl, depth + 1);
    Leave(decl);
  }

  // Model groups and content wrappers are transparent: their particles
  // appear at the depth of the enclosing type's children.
  void WalkContent(const Element& parent, int depth) {
    for (const Element& child : parent.children) {
      if (child.name.ns != kXsdNamespace) continue;
      const std::string& tag = child.name.local;
      if (tag == "element" || tag == "attribute") {
        EmitLocalParticle(child, depth);
      } else if (tag == "sequence" || tag == "all" || tag == "choice" ||
                 tag == "complexContent" || tag == "simpleContent") {
        WalkContent(child, depth);
      } else if (tag == "extension" || tag == "restriction") {
        if (const auto base = AttrOr(child, "base"); !base.empty()) {
          EmitTypeRef(child, base, depth);
        }
        WalkContent(child, depth);
      } else if (tag == "complexType" || tag == "simpleType") {
        EmitTypeDecl(child, depth);
      }
    }
  }

  void EmitLocalParticle(const Element& particle, int depth) {
    const std::string ref = AttrOr(particle, "ref");
    if (!ref.empty() && AttrOr(particle, "name").empty()) {
      const Element* decl = nullptr;
      if (Resolve(particle, ref, elements_, &decl) == Ref::kFound) {
        if (visiting_.contains(decl)) {
          Emit(AttrOr(*decl, "name"), NodeKind::kElement,
               Annotations(particle), depth);
        } else {
          EmitElementDecl(*decl, depth, Annotations(particle));
        }
      }
      return;
    }
    EmitElementDecl(particle, depth, {});
  }

  const Element& root_;
  ServiceDescription& out_;
  std::string_view wsdl_ns_;
  bool wsdl20_ = false;
  std::string target_ns_;
  std::map<Name, const Element*> messages_;
  std::map<Name, const Element*> elements_;
  std::map<Name, const Element*> types_;
  ElementTree* tree_ = nullptr;
  std::set<const Element*> visiting_;
};

void Flatten(const ElementTree& tree, std::set<std::string>& annotations,
             std::set<std::string>& names) {
  for (const ElementNode& node : tree.nodes) {
    annotations.insert(node.annotations.begin(), node.annotations.end());
    if (!node.local_name.empty()) names.insert(node.local_name);
  }
}

}  // namespace

std::string_view NodeKindName(NodeKind kind) {
  switch (kind) {
    case NodeKind::kPart:
      return "part";
    case NodeKind::kElement:
      return "element";
    case NodeKind::kSimpleType:
      return "simpleType";
    case NodeKind::kComplexType:
      return "complexType";
    case NodeKind::kMessage:
      return "message";
    case NodeKind::kInput:
      return "input";
    case NodeKind::kOutput:
      return "output";
    case NodeKind::kOperation:
      return "operation";
  }
  return "unknown";
}

std::vector<std::string> SplitModelReference(std::string_view value) {
  std::vector<std::string> tokens;
  size_t i = 0;
  while (i < value.size()) {
    while (i < value.size() && std::isspace(static_cast<unsigned char>(value[i]))) ++i;
    size_t j = i;
    while (j < value.size() && !std::isspace(static_cast<unsigned char>(value[j]))) ++j;
    if (j > i) tokens.emplace_back(value.substr(i, j - i));
    i = j;
  }
  return tokens;
}

ServiceDescription ParseDocument(std::string_view bytes,
                                 std::string source_id) {
  const Element root = xml::Parse(bytes);
  ServiceDescription service;
  service.source_id = std::move(source_id);
  DocumentReader(root, service).Read();
  return service;
}

IoSets ExtractIo(const Operation& op) {
  IoSets sets;
  Flatten(op.input_tree, sets.input_annotations, sets.input_names);
  Flatten(op.output_tree, sets.output_annotations, sets.output_names);
  for (const std::string& iri : op.annotations) {
    std::string name = Unfold(iri);
    if (name.empty()) continue;
    sets.input_names.insert(name);
    sets.output_names.insert(std::move(name));
  }
  return sets;
}

}  // namespace tomaco
