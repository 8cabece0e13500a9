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

#include "tomaco/ontology_store.h"

#include <algorithm>
#include <bit>
#include <cctype>
#include <functional>
#include <numeric>
#include <optional>

#include "tomaco/errors.h"
#include "tomaco/xml_document.h"

namespace tomaco {
namespace {

using xml::Element;

std::string Trim(std::string_view s) {
  const auto is_space = [](char c) {
    return std::isspace(static_cast<unsigned char>(c)) != 0;
  };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return std::string(s);
}

bool HasScheme(std::string_view s) {
  const auto colon = s.find(':');
  if (colon == std::string_view::npos || colon == 0) return false;
  return std::all_of(s.begin(), s.begin() + colon, [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '+' ||
           c == '-' || c == '.';
  });
}

std::string_view StripFragment(std::string_view iri) {
  return iri.substr(0, iri.find('#'));
}

std::string ResolveIri(std::string_view raw, std::string_view base) {
  std::string value = Trim(raw);
  if (HasScheme(value) || base.empty()) return value;
  const std::string_view doc = StripFragment(base);
  if (value.empty()) return std::string(doc);
  if (value[0] == '#') return std::string(doc) + value;
  const auto slash = doc.rfind('/');
  if (slash == std::string_view::npos) return value;
  return std::string(doc.substr(0, slash + 1)) + value;
}

bool IsClassTypeIri(std::string_view iri) {
  return iri == std::string(kOwlNamespace) + "Class" ||
         iri == std::string(kRdfsNamespace) + "Class";
}

class RdfReader {
 public:
  explicit RdfReader(OntologyAxioms& out) : out_(out) {}

  void ReadDocument(const Element& root, std::string base) {
    base = BaseOf(root, std::move(base));
    if (root.name.Is(kRdfNamespace, "RDF")) {
      for (const Element& child : root.children) ReadNode(child, base);
    } else {
      ReadNode(root, base);
    }
  }

 private:
  static std::string BaseOf(const Element& e, std::string inherited) {
    if (const auto* b = e.FindAttribute(xml::kXmlNamespace, "base")) {
      return ResolveIri(*b, inherited);
    }
    return inherited;
  }

  // Returns the node's IRI, or nullopt for blank nodes.
  std::optional<std::string> ReadNode(const Element& node, std::string base) {
    base = BaseOf(node, std::move(base));
    std::optional<std::string> subject;
    if (const auto* about = node.FindAttribute(kRdfNamespace, "about")) {
      subject = ResolveIri(*about, base);
    } else if (const auto* id = node.FindAttribute(kRdfNamespace, "ID")) {
      subject = std::string(StripFragment(base)) + "#" + Trim(*id);
    }
    if (subject && subject->empty()) subject.reset();

    bool is_class = node.name.Is(kOwlNamespace, "Class") ||
                    node.name.Is(kRdfsNamespace, "Class");
    if (const auto* type = node.FindAttribute(kRdfNamespace, "type")) {
      is_class = is_class || IsClassTypeIri(ResolveIri(*type, base));
    }

    for (const Element& prop : node.children) {
      const std::string prop_base = BaseOf(prop, base);
      const std::string* resource =
          prop.FindAttribute(kRdfNamespace, "resource");
      if (prop.name.Is(kRdfNamespace, "type") && resource) {
        is_class = is_class || IsClassTypeIri(ResolveIri(*resource, prop_base));
        continue;
      }
      const bool subclass = prop.name.Is(kRdfsNamespace, "subClassOf");
      const bool equivalent = prop.name.Is(kOwlNamespace, "equivalentClass");
      if (const auto* parse_type =
              prop.FindAttribute(kRdfNamespace, "parseType");
          parse_type && *parse_type == "Literal") {
        continue;
      }
      std::optional<std::string> object;
      if (resource) {
        object = ResolveIri(*resource, prop_base);
        if (object->empty()) object.reset();
      }
      for (const Element& nested : prop.children) {
        auto nested_iri = ReadNode(nested, prop_base);
        if (!object) object = std::move(nested_iri);
      }
      if ((subclass || equivalent) && subject && object) {
        out_.classes.insert(*subject);
        out_.classes.insert(*object);
        if (*subject == *object) continue;
        if (subclass) {
          out_.subclass_of.emplace(*subject, *object);
        } else {
          out_.equivalent.emplace(std::min(*subject, *object),
                                  std::max(*subject, *object));
        }
      }
    }
    if (is_class && subject) out_.classes.insert(*subject);
    return subject;
  }

  OntologyAxioms& out_;
};

int Find(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

void Unite(std::vector<int>& parent, int a, int b) {
  a = Find(parent, a);
  b = Find(parent, b);
  if (a != b) parent[std::max(a, b)] = std::min(a, b);
}

}  // namespace

void OntologyAxioms::Merge(const OntologyAxioms& other) {
  classes.insert(other.classes.begin(), other.classes.end());
  subclass_of.insert(other.subclass_of.begin(), other.subclass_of.end());
  equivalent.insert(other.equivalent.begin(), other.equivalent.end());
}

OntologyAxioms LoadOntology(std::string_view bytes, std::string_view base_iri) {
  const Element root = xml::Parse(bytes);
  OntologyAxioms axioms;
  RdfReader(axioms).ReadDocument(root, std::string(base_iri));
  if (axioms.empty()) throw EmptyOntologyError("ontology declares no classes");
  return axioms;
}

std::string_view ClassRelationName(ClassRelation relation) {
  switch (relation) {
    case ClassRelation::kEquivalent:
      return "equivalent";
    case ClassRelation::kOfferedIsSuper:
      return "offered-is-super";
    case ClassRelation::kOfferedIsSub:
      return "offered-is-sub";
    case ClassRelation::kUnrelated:
      return "unrelated";
  }
  return "unrelated";
}

ClassGraph::ClassGraph(OntologyAxioms axioms) : axioms_(std::move(axioms)) {
  for (const auto& [a, b] : axioms_.subclass_of) {
    axioms_.classes.insert(a);
    axioms_.classes.insert(b);
  }
  for (const auto& [a, b] : axioms_.equivalent) {
    axioms_.classes.insert(a);
    axioms_.classes.insert(b);
  }
  iris_.assign(axioms_.classes.begin(), axioms_.classes.end());
  const int n = static_cast<int>(iris_.size());

  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& [a, b] : axioms_.equivalent) Unite(parent, Id(a), Id(b));

  // Subclass cycles imply equivalence; collapse every strongly connected
  // component of the subclass graph before computing the closure.
  std::vector<std::vector<int>> up(n);
  for (const auto& [sub, super] : axioms_.subclass_of) {
    const int s = Find(parent, Id(sub));
    const int p = Find(parent, Id(super));
    if (s != p) up[s].push_back(p);
  }
  {
    std::vector<int> index(n, -1), low(n, 0), stack;
    std::vector<bool> on_stack(n, false);
    int counter = 0;
    std::function<void(int)> strongconnect = [&](int v) {
      index[v] = low[v] = counter++;
      stack.push_back(v);
      on_stack[v] = true;
      for (int w : up[v]) {
        if (index[w] < 0) {
          strongconnect(w);
          low[v] = std::min(low[v], low[w]);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
      }
      if (low[v] == index[v]) {
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          Unite(parent, v, w);
        } while (w != v);
      }
    };
    for (int v = 0; v < n; ++v) {
      if (Find(parent, v) == v && index[v] < 0) strongconnect(v);
    }
  }

  // Groups numbered by their smallest member, which is also their
  // representative name.
  group_of_.assign(n, -1);
  std::vector<int> group_of_root(n, -1);
  for (int v = 0; v < n; ++v) {
    const int r = Find(parent, v);
    if (group_of_root[r] < 0) {
      group_of_root[r] = static_cast<int>(members_.size());
      members_.emplace_back();
    }
    group_of_[v] = group_of_root[r];
    members_[group_of_[v]].push_back(v);
  }
  const int groups = static_cast<int>(members_.size());

  std::vector<std::set<int>> asserted(groups);
  for (const auto& [sub, super] : axioms_.subclass_of) {
    const int s = group_of_[Id(sub)];
    const int p = group_of_[Id(super)];
    if (s != p) asserted[s].insert(p);
  }

  words_ = (static_cast<size_t>(groups) + 63) / 64;
  ancestors_.assign(groups, std::vector<std::uint64_t>(words_, 0));
  std::vector<int> state(groups, 0);  // 0 new, 1 done
  std::function<void(int)> close = [&](int g) {
    if (state[g]) return;
    state[g] = 1;
    for (int p : asserted[g]) {
      close(p);
      ancestors_[g][p / 64] |= std::uint64_t{1} << (p % 64);
      for (size_t w = 0; w < words_; ++w) ancestors_[g][w] |= ancestors_[p][w];
    }
  };
  for (int g = 0; g < groups; ++g) close(g);

  direct_supers_.assign(groups, {});
  direct_subs_.assign(groups, {});
  for (int g = 0; g < groups; ++g) {
    for (int p : asserted[g]) {
      const bool implied = std::any_of(
          asserted[g].begin(), asserted[g].end(),
          [&](int q) { return q != p && IsStrictSub(q, p); });
      if (!implied) {
        direct_supers_[g].push_back(p);
        direct_subs_[p].push_back(g);
      }
    }
  }
}

int ClassGraph::Id(std::string_view iri) const {
  auto it = std::lower_bound(iris_.begin(), iris_.end(), iri);
  if (it == iris_.end() || *it != iri) return -1;
  return static_cast<int>(it - iris_.begin());
}

bool ClassGraph::IsStrictSub(int sub_group, int super_group) const {
  return (ancestors_[sub_group][super_group / 64] >> (super_group % 64)) & 1U;
}

bool ClassGraph::Contains(std::string_view iri) const {
  return Id(Trim(iri)) >= 0;
}

ClassRelation ClassGraph::Relate(std::string_view offered,
                                 std::string_view requested) const {
  const std::string o = Trim(offered);
  const std::string r = Trim(requested);
  if (o == r) return ClassRelation::kEquivalent;
  const int oi = Id(o);
  const int ri = Id(r);
  if (oi < 0 || ri < 0) return ClassRelation::kUnrelated;
  const int og = group_of_[oi];
  const int rg = group_of_[ri];
  if (og == rg) return ClassRelation::kEquivalent;
  if (IsStrictSub(rg, og)) return ClassRelation::kOfferedIsSuper;
  if (IsStrictSub(og, rg)) return ClassRelation::kOfferedIsSub;
  return ClassRelation::kUnrelated;
}

std::vector<std::string> ClassGraph::EquivalenceGroup(
    std::string_view iri) const {
  const int id = Id(Trim(iri));
  if (id < 0) return {};
  std::vector<std::string> out;
  for (int m : members_[group_of_[id]]) out.push_back(iris_[m]);
  return out;
}

std::vector<std::string> ClassGraph::GroupNames(
    const std::vector<int>& groups) const {
  std::vector<std::string> out;
  out.reserve(groups.size());
  for (int g : groups) out.push_back(iris_[members_[g].front()]);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> ClassGraph::DirectSupers(std::string_view iri) const {
  const int id = Id(Trim(iri));
  if (id < 0) return {};
  return GroupNames(direct_supers_[group_of_[id]]);
}

std::vector<std::string> ClassGraph::DirectSubs(std::string_view iri) const {
  const int id = Id(Trim(iri));
  if (id < 0) return {};
  return GroupNames(direct_subs_[group_of_[id]]);
}

std::vector<std::string> ClassGraph::Roots() const {
  std::vector<int> roots;
  for (int g = 0; g < static_cast<int>(members_.size()); ++g) {
    if (direct_supers_[g].empty()) roots.push_back(g);
  }
  return GroupNames(roots);
}

ClassGraph Merge(const ClassGraph& graph, const OntologyAxioms& axioms) {
  OntologyAxioms merged = graph.axioms();
  merged.Merge(axioms);
  return ClassGraph(std::move(merged));
}

}  // namespace tomaco
