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

// Minimal namespace-aware XML DOM built on expat. Only what the WSDL and
// RDF/XML readers need: element names, attributes, children, character data
// and in-scope prefix bindings for resolving QName-valued attributes.

#ifndef TOMACO_XML_DOCUMENT_H_
#define TOMACO_XML_DOCUMENT_H_

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tomaco::xml {

inline constexpr std::string_view kXmlNamespace =
    "http://www.w3.org/XML/1998/namespace";

struct Name {
  std::string ns;  // empty for unqualified names
  std::string local;

  bool Is(std::string_view ns_uri, std::string_view local_name) const {
    return ns == ns_uri && local == local_name;
  }
  friend bool operator==(const Name&, const Name&) = default;
  friend auto operator<=>(const Name&, const Name&) = default;
};

struct Attribute {
  Name name;
  std::string value;
};

// Prefix -> namespace URI. The empty prefix holds the default namespace.
using NamespaceScope = std::map<std::string, std::string, std::less<>>;

class Element {
 public:
  Name name;
  std::vector<Attribute> attributes;
  std::vector<Element> children;
  std::string text;
  int line = 0;
  std::shared_ptr<const NamespaceScope> scope;

  // Returns nullptr when the attribute is absent.
  const std::string* FindAttribute(std::string_view ns,
                                   std::string_view local) const;

  // Resolves "prefix:local" (or "local" against the default namespace)
  // using the bindings in scope at this element. An unbound prefix yields
  // nullopt.
  std::optional<Name> ResolveQName(std::string_view qname) const;
};

// Parses a complete document and returns its root element. Throws
// tomaco::ParseError on malformed input.
Element Parse(std::string_view bytes);

}  // namespace tomaco::xml

#endif  // TOMACO_XML_DOCUMENT_H_
