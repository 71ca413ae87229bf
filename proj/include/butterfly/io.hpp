#pragma once

#include <functional>
#include <string>

#include "json.hpp"

#include "butterfly/extension.hpp"

namespace bfly {

  using json = nlohmann::json;

  // Turns a string reference (a store hash) into the referenced document.
  using Resolver = std::function<json(std::string const&)>;

  // Nested objects are written inline; "kind" is always present on output.
  json to_json(Group const& G);
  json to_json(CrossedModule const& X);
  json to_json(Strict2Group const& T);
  json to_json(XModMorphism const& P);
  json to_json(XModTwoCell const& C);
  json to_json(Butterfly const& B);
  json to_json(ButterflyMorphism const& M);
  json to_json(MonoidalFunctor const& M);
  json to_json(FactorSet const& F);
  json to_json(Report const& R);

  // "group", "xmod", "2group", "morphism", "two_cell", "butterfly",
  // "butterfly_morphism", "monoidal", "factor_set". Taken from "kind" when
  // present, otherwise inferred from the keys. Throws UnknownKind.
  std::string kind_of(json const& j);

  // Loaders throw ParseError on malformed input. A group whose identity is not
  // at index 0 is relabeled, and every map touching it is carried along.
  struct LoadedGroup {
    Group            group;
    std::vector<int> relabel;  // old index -> new index
  };
  LoadedGroup       load_group(json const& j, Resolver const& r = {});
  CrossedModule     load_xmod(json const& j, Resolver const& r = {});
  Strict2Group      load_2group(json const& j, Resolver const& r = {});
  XModMorphism      load_morphism(json const& j, Resolver const& r = {});
  Butterfly         load_butterfly(json const& j, Resolver const& r = {});
  MonoidalFunctor   load_monoidal(json const& j, Resolver const& r = {});

  // Sorted keys, no whitespace.
  std::string canonical_dump(json const& j);

  // Parses text, mapping parser errors to ParseError.
  json parse_json(std::string const& text);

}  // namespace bfly
