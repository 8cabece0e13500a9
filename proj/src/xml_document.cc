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

#include "tomaco/xml_document.h"

#include <expat.h>

#include <utility>

#include "tomaco/errors.h"

namespace tomaco::xml {
namespace {

constexpr char kSeparator = ' ';

Name SplitExpandedName(const char* raw) {
  std::string_view s(raw);
  const auto pos = s.find(kSeparator);
  if (pos == std::string_view::npos) return Name{"", std::string(s)};
  return Name{std::string(s.substr(0, pos)), std::string(s.substr(pos + 1))};
}

class TreeBuilder {
 public:
  explicit TreeBuilder(XML_Parser parser) : parser_(parser) {
    scopes_.push_back(std::make_shared<const NamespaceScope>(NamespaceScope{
        {"xml", std::string(kXmlNamespace)}}));
  }

  static void OnStart(void* data, const char* name, const char** attrs) {
    static_cast<TreeBuilder*>(data)->Start(name, attrs);
  }
  static void OnEnd(void* data, const char*) {
    static_cast<TreeBuilder*>(data)->End();
  }
  static void OnText(void* data, const char* s, int len) {
    auto* self = static_cast<TreeBuilder*>(data);
    if (!self->open_.empty()) self->open_.back()->text.append(s, len);
  }
  static void OnNamespaceStart(void* data, const char* prefix,
                               const char* uri) {
    static_cast<TreeBuilder*>(data)->pending_.emplace_back(
        prefix ? prefix : "", uri ? uri : "");
  }

  std::optional<Element> TakeRoot() { return std::move(root_); }

 private:
  void Start(const char* name, const char** attrs) {
    Element* element = nullptr;
    if (open_.empty()) {
      root_.emplace();
      element = &*root_;
    } else {
      element = &open_.back()->children.emplace_back();
    }
    element->name = SplitExpandedName(name);
    element->line = static_cast<int>(XML_GetCurrentLineNumber(parser_));
    for (const char** a = attrs; *a != nullptr; a += 2) {
      element->attributes.push_back({SplitExpandedName(a[0]), a[1]});
    }
    if (pending_.empty()) {
      element->scope = scopes_.back();
    } else {
      auto scope = std::make_shared<NamespaceScope>(*scopes_.back());
      for (auto& [prefix, uri] : pending_) (*scope)[prefix] = uri;
      pending_.clear();
      element->scope = std::move(scope);
    }
    scopes_.push_back(element->scope);
    open_.push_back(element);
  }

  void End() {
    open_.pop_back();
    scopes_.pop_back();
  }

  XML_Parser parser_;
  std::optional<Element> root_;
  std::vector<Element*> open_;
  std::vector<std::shared_ptr<const NamespaceScope>> scopes_;
  std::vector<std::pair<std::string, std::string>> pending_;
};

struct ParserDeleter {
  void operator()(XML_Parser p) const { XML_ParserFree(p); }
};

}  // namespace

const std::string* Element::FindAttribute(std::string_view ns,
                                          std::string_view local) const {
  for (const auto& attr : attributes) {
    if (attr.name.Is(ns, local)) return &attr.value;
  }
  return nullptr;
}

std::optional<Name> Element::ResolveQName(std::string_view qname) const {
  std::string_view prefix;
  std::string_view local = qname;
  if (const auto colon = qname.find(':'); colon != std::string_view::npos) {
    prefix = qname.substr(0, colon);
    local = qname.substr(colon + 1);
  }
  if (scope) {
    if (auto it = scope->find(prefix); it != scope->end()) {
      return Name{it->second, std::string(local)};
    }
  }
  if (prefix.empty()) return Name{"", std::string(local)};
  return std::nullopt;
}

Element Parse(std::string_view bytes) {
  std::unique_ptr<XML_ParserStruct, ParserDeleter> parser(
      XML_ParserCreateNS(nullptr, kSeparator));
  if (!parser) throw ParseError("unable to allocate XML parser");
  TreeBuilder builder(parser.get());
  XML_SetUserData(parser.get(), &builder);
  XML_SetElementHandler(parser.get(), &TreeBuilder::OnStart,
                        &TreeBuilder::OnEnd);
  XML_SetCharacterDataHandler(parser.get(), &TreeBuilder::OnText);
  XML_SetStartNamespaceDeclHandler(parser.get(),
                                   &TreeBuilder::OnNamespaceStart);
  if (XML_Parse(parser.get(), bytes.data(), static_cast<int>(bytes.size()),
                /*isFinal=*/1) == XML_STATUS_ERROR) {
    throw ParseError(
        "malformed XML at line " +
        std::to_string(XML_GetCurrentLineNumber(parser.get())) + ": " +
        XML_ErrorString(XML_GetErrorCode(parser.get())));
  }
  auto root = builder.TakeRoot();
  if (!root) throw ParseError("malformed XML: no root element");
  return std::move(*root);
}

}  // namespace tomaco::xml
