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

// Asserted OWL/RDFS class taxonomy: named classes, rdfs:subClassOf and
// owl:equivalentClass between named classes, and a precomputed strict
// subsumption closure over equivalence-collapsed classes.

#ifndef TOMACO_ONTOLOGY_STORE_H_
#define TOMACO_ONTOLOGY_STORE_H_

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tomaco {

inline constexpr std::string_view kRdfNamespace =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfsNamespace =
    "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kOwlNamespace =
    "http://www.w3.org/2002/07/owl#";

struct OntologyAxioms {
  std::set<std::string> classes;
  std::set<std::pair<std::string, std::string>> subclass_of;  // (sub, super)
  std::set<std::pair<std::string, std::string>> equivalent;

  void Merge(const OntologyAxioms& other);
  bool empty() const { return classes.empty(); }
  friend bool operator==(const OntologyAxioms&,
                         const OntologyAxioms&) = default;
};

// Reads class declarations and named-class axioms from RDF/XML. Relative
// rdf:about / rdf:ID values resolve against xml:base, then `base_iri`.
// Anonymous superclasses (restrictions, boolean class expressions) are
// skipped. Throws ParseError or EmptyOntologyError.
OntologyAxioms LoadOntology(std::string_view bytes,
                            std::string_view base_iri = {});

enum class ClassRelation { kEquivalent, kOfferedIsSuper, kOfferedIsSub, kUnrelated };

std::string_view ClassRelationName(ClassRelation relation);

class ClassGraph {
 public:
  ClassGraph() = default;
  explicit ClassGraph(OntologyAxioms axioms);

  // Relation of `offered` to `requested`. Unknown IRIs are Unrelated unless
  // the two strings are identical.
  ClassRelation Relate(std::string_view offered,
                       std::string_view requested) const;

  bool Contains(std::string_view iri) const;
  size_t size() const { return iris_.size(); }
  const OntologyAxioms& axioms() const { return axioms_; }

  // Classes sharing the equivalence group of `iri`, sorted, including
  // `iri` itself. Empty for unknown IRIs.
  std::vector<std::string> EquivalenceGroup(std::string_view iri) const;

  // Transitively reduced parents and children, as group representatives
  // (the smallest IRI of each group).
  std::vector<std::string> DirectSupers(std::string_view iri) const;
  std::vector<std::string> DirectSubs(std::string_view iri) const;
  // Group representatives without any strict superclass.
  std::vector<std::string> Roots() const;

 private:
  int Id(std::string_view iri) const;
  bool IsStrictSub(int sub_group, int super_group) const;
  std::vector<std::string> GroupNames(const std::vector<int>& groups) const;

  OntologyAxioms axioms_;
  std::vector<std::string> iris_;  // sorted
  std::vector<int> group_of_;      // iri id -> group
  std::vector<std::vector<int>> members_;  // group -> sorted iri ids
  size_t words_ = 0;
  // ancestors_[g] has bit h set iff g is a strict subclass of h.
  std::vector<std::vector<std::uint64_t>> ancestors_;
  std::vector<std::vector<int>> direct_supers_;
  std::vector<std::vector<int>> direct_subs_;
};

// Union of both axiom sets with the closure rebuilt. Idempotent and
// order-independent.
ClassGraph Merge(const ClassGraph& graph, const OntologyAxioms& axioms);

}  // namespace tomaco

#endif  // TOMACO_ONTOLOGY_STORE_H_
