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

#include <gtest/gtest.h>

#include "test_util.h"
#include "tomaco/errors.h"

namespace tomaco {
namespace {

using ::tomaco::testing::Testdata;

const ElementNode* FindNode(const ElementTree& tree, const std::string& name) {
  for (const auto& node : tree.nodes) {
    if (node.local_name == name) return &node;
  }
  return nullptr;
}

TEST(ParseDocumentTest, PartAnnotationSingleOperation) {
  const auto service =
      ParseDocument(Testdata("tc3_part_annotation.wsdl"), "tc3.wsdl");
  EXPECT_EQ(service.source_id, "tc3.wsdl");
  EXPECT_EQ(service.service_name, "NovelAuthorService");
  ASSERT_EQ(service.interfaces.size(), 1u);
  ASSERT_EQ(service.interfaces[0].operations.size(), 1u);
  const Operation& op = service.interfaces[0].operations[0];
  EXPECT_EQ(op.name, "get_AUTHOR");

  const ElementNode* part = FindNode(op.input_tree, "_NOVEL");
  ASSERT_NE(part, nullptr);
  EXPECT_EQ(part->node_kind, NodeKind::kPart);
  EXPECT_EQ(part->depth, 2);
  EXPECT_EQ(part->annotations,
            std::vector<std::string>{"http://127.0.0.1/ontology/books.owl#Novel"});
  // input -> message -> part; xsd:string adds nothing.
  ASSERT_EQ(op.input_tree.nodes.size(), 3u);
  EXPECT_EQ(op.input_tree.nodes[0].node_kind, NodeKind::kInput);
  EXPECT_EQ(op.input_tree.nodes[1].node_kind, NodeKind::kMessage);
  EXPECT_EQ(op.input_tree.nodes[1].local_name, "get_AUTHORRequest");
  EXPECT_TRUE(service.warnings.empty());
}

TEST(ParseDocumentTest, PlainWsdlHasNoAnnotations) {
  const auto service = ParseDocument(Testdata("plain_weather.wsdl"), "w.wsdl");
  for (const auto& iface : service.interfaces) {
    for (const auto& op : iface.operations) {
      for (const auto* tree : {&op.input_tree, &op.output_tree}) {
        for (const auto& node : tree->nodes) {
          EXPECT_TRUE(node.annotations.empty()) << node.local_name;
        }
      }
    }
  }
  // No <service> element: the definitions name is used.
  EXPECT_EQ(service.service_name, "WeatherService");
}

TEST(ParseDocumentTest, SplitsMultiIriModelReference) {
  const auto service = ParseDocument(Testdata("multi_iri.wsdl"), "m.wsdl");
  const Operation& op = service.interfaces.at(0).operations.at(0);
  const ElementNode* thing = FindNode(op.input_tree, "Thing");
  ASSERT_NE(thing, nullptr);
  EXPECT_EQ(thing->annotations,
            (std::vector<std::string>{"http://a#X", "http://b#Y"}));
}

TEST(ParseDocumentTest, DanglingTypeReferenceWarnsAndKeepsNode) {
  const auto service = ParseDocument(Testdata("multi_iri.wsdl"), "m.wsdl");
  const Operation& op = service.interfaces.at(0).operations.at(0);
  const ElementNode* result = FindNode(op.output_tree, "Result");
  ASSERT_NE(result, nullptr);
  EXPECT_EQ(&op.output_tree.nodes.back(), result);  // empty subtree
  ASSERT_EQ(service.warnings.size(), 1u);
  EXPECT_NE(service.warnings[0].find("tns:Missing"), std::string::npos);
}

TEST(ParseDocumentTest, OperationLevelAnnotationsFromAttrExtensions) {
  const auto service = ParseDocument(Testdata("multi_iri.wsdl"), "m.wsdl");
  const Operation& op = service.interfaces.at(0).operations.at(0);
  EXPECT_EQ(op.annotations, std::vector<std::string>{"http://c#ConvertAction"});
  const IoSets sets = ExtractIo(op);
  EXPECT_TRUE(sets.input_names.contains("ConvertAction"));
  EXPECT_TRUE(sets.output_names.contains("ConvertAction"));
  EXPECT_FALSE(sets.input_annotations.contains("http://c#ConvertAction"));
  EXPECT_FALSE(sets.output_annotations.contains("http://c#ConvertAction"));
}

TEST(ParseDocumentTest, NestedTypesFollowDocumentOrder) {
  const auto service =
      ParseDocument(Testdata("book_price_service.wsdl"), "bp.wsdl");
  const Operation& op = service.interfaces.at(0).operations.at(0);
  std::vector<std::string> names;
  std::vector<int> depths;
  for (const auto& node : op.input_tree.nodes) {
    names.push_back(node.local_name);
    depths.push_back(node.depth);
  }
  EXPECT_EQ(names, (std::vector<std::string>{"", "get_PRICERequest", "_BOOK",
                                             "BOOK", "BookType", "title"}));
  EXPECT_EQ(depths, (std::vector<int>{0, 1, 2, 3, 4, 5}));
  const ElementNode& type = op.input_tree.nodes[4];
  EXPECT_EQ(type.node_kind, NodeKind::kComplexType);
  EXPECT_EQ(type.annotations,
            std::vector<std::string>{"http://127.0.0.1/ontology/books.owl#Book"});
}

TEST(ParseDocumentTest, Wsdl20Interface) {
  const auto service = ParseDocument(Testdata("wsdl20_geo.wsdl"), "geo.wsdl");
  EXPECT_EQ(service.service_name, "GeoService");
  ASSERT_EQ(service.interfaces.size(), 1u);
  const Interface& iface = service.interfaces[0];
  EXPECT_EQ(iface.name, "GeoInterface");
  ASSERT_EQ(iface.operations.size(), 2u);
  const Operation& locate = iface.operations[0];
  const IoSets sets = ExtractIo(locate);
  EXPECT_EQ(sets.input_annotations,
            std::set<std::string>{"http://127.0.0.1/ontology/travel.owl#City"});
  EXPECT_EQ(sets.output_annotations,
            std::set<std::string>{"http://127.0.0.1/ontology/geo.owl#Longitude"});
  EXPECT_EQ(sets.output_names,
            (std::set<std::string>{"Location", "Latitude", "Longitude"}));
  const Operation& ping = iface.operations[1];
  EXPECT_EQ(ping.input_tree.nodes.size(), 1u);
  EXPECT_TRUE(ping.output_tree.empty());
  EXPECT_TRUE(service.warnings.empty());
}

TEST(ParseDocumentTest, MalformedXmlIsParseError) {
  EXPECT_THROW(ParseDocument(Testdata("malformed.wsdl"), "bad"), ParseError);
}

TEST(ParseDocumentTest, NoInterfaceIsEmptyServiceError) {
  const std::string doc =
      R"(<wsdl:definitions xmlns:wsdl="http://schemas.xmlsoap.org/wsdl/">)"
      R"(<wsdl:message name="m"/></wsdl:definitions>)";
  EXPECT_THROW(ParseDocument(doc, "x"), EmptyServiceError);
  EXPECT_THROW(ParseDocument("<root/>", "x"), EmptyServiceError);
}

TEST(ParseDocumentTest, RecursiveTypesTerminate) {
  const std::string doc = R"(<definitions xmlns="http://schemas.xmlsoap.org/wsdl/"
      xmlns:xsd="http://www.w3.org/2001/XMLSchema" xmlns:tns="urn:t"
      targetNamespace="urn:t">
    <types><xsd:schema targetNamespace="urn:t">
      <xsd:complexType name="Node"><xsd:sequence>
        <xsd:element name="next" type="tns:Node"/>
      </xsd:sequence></xsd:complexType>
    </xsd:schema></types>
    <message name="m"><part name="p" type="tns:Node"/></message>
    <portType name="P"><operation name="op"><input message="tns:m"/></operation></portType>
  </definitions>)";
  const auto service = ParseDocument(doc, "rec");
  const auto& tree = service.interfaces[0].operations[0].input_tree;
  // input, message, part, Node, next, Node (revisit cut).
  ASSERT_EQ(tree.nodes.size(), 6u);
  EXPECT_EQ(tree.nodes[5].local_name, "Node");
}

TEST(ExtractIoTest, DepthIsIrrelevantAndDuplicatesCollapse) {
  const auto service =
      ParseDocument(Testdata("book_price_service.wsdl"), "bp.wsdl");
  const IoSets sets = ExtractIo(service.interfaces[0].operations[0]);
  EXPECT_EQ(sets.input_annotations,
            std::set<std::string>{"http://127.0.0.1/ontology/books.owl#Book"});
  EXPECT_EQ(sets.output_annotations,
            std::set<std::string>{"http://127.0.0.1/ontology/concept.owl#Price"});
  EXPECT_EQ(sets.input_names,
            (std::set<std::string>{"get_PRICERequest", "_BOOK", "BOOK",
                                   "BookType", "title"}));
}

TEST(ExtractIoTest, SameIriOnTwoNodesAppearsOnce) {
  Operation op;
  op.input_tree.nodes = {
      {"a", NodeKind::kPart, {"http://x#C"}, 0},
      {"b", NodeKind::kSimpleType, {"http://x#C", "http://x#D"}, 3},
  };
  const IoSets sets = ExtractIo(op);
  EXPECT_EQ(sets.input_annotations,
            (std::set<std::string>{"http://x#C", "http://x#D"}));
  EXPECT_TRUE(sets.output_annotations.empty());
  EXPECT_TRUE(sets.output_names.empty());
}

TEST(ExtractIoTest, AnnotationOnPartOrDeepSimpleTypeIsEquivalent) {
  const auto wrap = [](const std::string& part_attr,
                       const std::string& type_attr) {
    return R"(<definitions xmlns="http://schemas.xmlsoap.org/wsdl/"
        xmlns:xsd="http://www.w3.org/2001/XMLSchema" xmlns:tns="urn:t"
        xmlns:sawsdl="http://www.w3.org/ns/sawsdl" targetNamespace="urn:t">
      <types><xsd:schema targetNamespace="urn:t">
        <xsd:element name="E"><xsd:complexType><xsd:sequence>
          <xsd:element name="F"><xsd:simpleType )" + type_attr + R"(>
            <xsd:restriction base="xsd:string"/></xsd:simpleType></xsd:element>
        </xsd:sequence></xsd:complexType></xsd:element>
      </xsd:schema></types>
      <message name="m"><part name="p" element="tns:E" )" + part_attr + R"(/></message>
      <portType name="P"><operation name="op"><input message="tns:m"/></operation></portType>
    </definitions>)";
  };
  const std::string ref = R"(sawsdl:modelReference="http://x#Concept")";
  const auto shallow = ParseDocument(wrap(ref, ""), "a");
  const auto deep = ParseDocument(wrap("", ref), "b");
  EXPECT_EQ(ExtractIo(shallow.interfaces[0].operations[0]).input_annotations,
            ExtractIo(deep.interfaces[0].operations[0]).input_annotations);
}

TEST(ParseDocumentTest, DeterministicAndAnnotationsAppearVerbatim) {
  for (const char* name : {"book_price_service.wsdl", "tc3_part_annotation.wsdl",
                           "multi_iri.wsdl", "wsdl20_geo.wsdl"}) {
    const std::string bytes = Testdata(name);
    const auto first = ParseDocument(bytes, name);
    const auto second = ParseDocument(bytes, name);
    EXPECT_EQ(first, second) << name;
    for (size_t i = 0; i < first.interfaces.size(); ++i) {
      const auto& ops = first.interfaces[i].operations;
      for (size_t j = 0; j < ops.size(); ++j) {
        const Operation& op = ops[j];
        EXPECT_EQ(ExtractIo(op),
                  ExtractIo(second.interfaces[i].operations[j]));
        for (const auto* tree : {&op.input_tree, &op.output_tree}) {
          for (const auto& node : tree->nodes) {
            for (const auto& iri : node.annotations) {
              EXPECT_NE(bytes.find(iri), std::string::npos) << iri;
            }
          }
        }
      }
    }
  }
}

TEST(SplitModelReferenceTest, Whitespace) {
  EXPECT_EQ(SplitModelReference("  http://a#X\n\thttp://b#Y "),
            (std::vector<std::string>{"http://a#X", "http://b#Y"}));
  EXPECT_TRUE(SplitModelReference("   ").empty());
}

}  // namespace
}  // namespace tomaco
