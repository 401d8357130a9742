#pragma once

#include <deque>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "cubical/anodyne.hpp"
#include "cubical/cubical_set.hpp"

namespace cubical {

using json = nlohmann::json;

inline json theory_to_json(const Theory& t) { return json(t.symbol_names()); }

inline Theory theory_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("theory: expected an array of symbol names");
  return Theory::from_symbol_names(j.get<std::vector<std::string>>());
}

// {"m": 2, "n": 1, "table": ["0", "1", "1", "1"]} with n-bit strings in
// lexicographic domain order, coordinate 1 first.
inline json cube_map_to_json(const CubeMap& f) {
  json t = json::array();
  for (std::uint32_t v = 0; v < f.table().size(); ++v)
    t.push_back(Vertex(f.codomain_dim(), f(v)).to_string());
  return json{{"m", f.domain_dim()}, {"n", f.codomain_dim()}, {"table", std::move(t)}};
}

inline CubeMap cube_map_from_json(const json& j) {
  if (!j.is_object() || !j.contains("m") || !j.contains("n") || !j.contains("table"))
    throw std::invalid_argument("cube map: expected {m, n, table}");
  const int m = j.at("m").get<int>();
  const int n = j.at("n").get<int>();
  check_dim(m, "cube map m");
  check_dim(n, "cube map n");
  const auto& t = j.at("table");
  if (!t.is_array() || t.size() != (std::size_t{1} << m))
    throw std::invalid_argument("cube map: table must list every domain vertex");
  std::vector<std::uint32_t> table;
  for (const auto& entry : t) {
    const std::string s = entry.get<std::string>();
    if (static_cast<int>(s.size()) != n) throw std::invalid_argument("cube map: bad vertex width");
    std::uint32_t v = 0;
    for (char c : s) {
      if (c != '0' && c != '1') throw std::invalid_argument("cube map: bad vertex bit");
      v = (v << 1) | static_cast<std::uint32_t>(c - '0');
    }
    table.push_back(v);
  }
  return CubeMap(m, n, std::move(table));
}

inline json face_list_to_json(const FaceList& k) {
  json out = json::array();
  for (const auto& [i, eps] : k.entries) out.push_back(json::array({i, eps}));
  return out;
}

inline FaceList face_list_from_json(const json& j, int target_dim) {
  if (!j.is_array()) throw std::invalid_argument("kappa: expected an array of [index, side] pairs");
  std::vector<std::pair<int, int>> entries;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2) throw std::invalid_argument("kappa: bad entry");
    entries.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  return FaceList(std::move(entries), target_dim);
}

inline json subcomplex_spec_to_json(const SubcomplexSpec& s) {
  json out{{"kind", s.kind == SubcomplexSpec::Kind::unit
                        ? "unit"
                        : (s.kind == SubcomplexSpec::Kind::full ? "full" : "cartesian")}};
  if (s.kind == SubcomplexSpec::Kind::cartesian) out["m"] = s.m;
  return out;
}

inline SubcomplexSpec subcomplex_spec_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind")) throw std::invalid_argument("subcomplex: expected {kind}");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "unit") return {SubcomplexSpec::Kind::unit, -1};
  if (kind == "full") return {SubcomplexSpec::Kind::full, -1};
  if (kind == "cartesian") return {SubcomplexSpec::Kind::cartesian, j.at("m").get<int>()};
  throw std::invalid_argument("subcomplex: unknown kind " + kind);
}

inline json certificate_to_json(const FillingCertificate& c) {
  json steps = json::array();
  for (const FillingStep& s : c.steps)
    steps.push_back(json{{"i", s.i},
                         {"j", s.j},
                         {"k", s.k},
                         {"kappa", face_list_to_json(s.kappa)},
                         {"phi", cube_map_to_json(s.phi)},
                         {"missingFace", json::array({s.missing_face.first, s.missing_face.second})},
                         {"inner", s.inner}});
  return json{{"theoryA", theory_to_json(c.A)},
              {"theoryB", theory_to_json(c.B)},
              {"flavor", flavor_name(c.flavor)},
              {"n", c.n},
              {"truncation", c.D},
              {"source", subcomplex_spec_to_json(c.source)},
              {"target", subcomplex_spec_to_json(c.target)},
              {"steps", std::move(steps)},
              {"allInner", c.all_inner}};
}

inline FillingCertificate certificate_from_json(const json& j) {
  FillingCertificate c;
  c.A = theory_from_json(j.at("theoryA"));
  c.B = theory_from_json(j.at("theoryB"));
  const std::string fl = j.at("flavor").get<std::string>();
  if (fl == "meet") c.flavor = Flavor::meet;
  else if (fl == "join") c.flavor = Flavor::join;
  else throw std::invalid_argument("certificate: unknown flavor " + fl);
  c.n = j.at("n").get<int>();
  c.D = j.at("truncation").get<int>();
  if (c.n < 0 || c.D < 0 || c.n > enum_limits().max_dim || c.D > enum_limits().max_dim)
    throw std::invalid_argument("certificate: dimensions out of range");
  c.source = subcomplex_spec_from_json(j.at("source"));
  c.target = subcomplex_spec_from_json(j.at("target"));
  for (const auto& js : j.at("steps")) {
    FillingStep s;
    s.i = js.at("i").get<int>();
    s.j = js.at("j").get<int>();
    s.k = js.at("k").get<int>();
    s.kappa = face_list_from_json(js.at("kappa"), c.n);
    s.phi = cube_map_from_json(js.at("phi"));
    const auto& mf = js.at("missingFace");
    if (!mf.is_array() || mf.size() != 2) throw std::invalid_argument("certificate: bad missingFace");
    s.missing_face = {mf[0].get<int>(), mf[1].get<int>()};
    s.inner = js.at("inner").get<bool>();
    // The interior is derived data, reconstructed rather than transmitted.
    s.interior = compose(faces_map(s.kappa), standard_decomposition(s.phi, s.k, c.flavor));
    c.steps.push_back(std::move(s));
  }
  c.all_inner = j.at("allInner").get<bool>();
  return c;
}

// ---------------------------------------------------------------------------
// Cubical set serialization
//
// The action is listed over elementary generators when the theory admits
// recovering arbitrary members as generator words inside the truncation
// (extendByComposition = true, any theory without diagonals); otherwise the
// full action table is emitted.

namespace detail {

inline std::vector<CubeMap> elementary_maps_with_codomain(const Theory& t, int d, int D) {
  std::vector<CubeMap> out;
  if (d >= 1 && d - 1 <= D)
    for (int i = 1; i <= d; ++i)
      for (int eps = 0; eps <= 1; ++eps) out.push_back(face_map(d, i, eps));
  if (d >= 2 && t.has(Symbol::delta))
    for (int i = 1; i <= d - 1; ++i) out.push_back(diagonal_map(d, i));
  if (d + 1 <= D) {
    for (int i = 1; i <= d + 1; ++i) out.push_back(projection_map(d, i));
    for (int i = 1; i <= d; ++i) {
      if (t.has(Symbol::meet)) out.push_back(connection_map(d, i, 1));
      if (t.has(Symbol::join)) out.push_back(connection_map(d, i, 0));
    }
  }
  if (t.has(Symbol::sigma))
    for (int i = 1; i <= d - 1; ++i) out.push_back(transposition_map(d, i));
  if (t.has(Symbol::rho))
    for (int i = 1; i <= d; ++i) out.push_back(reversal_map(d, i));
  return out;
}

inline std::vector<CubeMap> elementary_maps_with_domain(const Theory& t, int d, int D) {
  std::vector<CubeMap> out;
  if (d + 1 <= D)
    for (int i = 1; i <= d + 1; ++i)
      for (int eps = 0; eps <= 1; ++eps) out.push_back(face_map(d + 1, i, eps));
  if (d + 1 <= D && t.has(Symbol::delta))
    for (int i = 1; i <= d; ++i) out.push_back(diagonal_map(d + 1, i));
  if (d >= 1) {
    for (int i = 1; i <= d; ++i) out.push_back(projection_map(d - 1, i));
    for (int i = 1; i <= d - 1; ++i) {
      if (t.has(Symbol::meet)) out.push_back(connection_map(d - 1, i, 1));
      if (t.has(Symbol::join)) out.push_back(connection_map(d - 1, i, 0));
    }
  }
  if (t.has(Symbol::sigma))
    for (int i = 1; i <= d - 1; ++i) out.push_back(transposition_map(d, i));
  if (t.has(Symbol::rho))
    for (int i = 1; i <= d; ++i) out.push_back(reversal_map(d, i));
  return out;
}

// A word of elementary generators composing to f, with every prefix staying
// within the truncation. The word is returned outermost first, which is the
// order in which a presheaf action applies it.
inline std::vector<CubeMap> generator_word(const Theory& t, const CubeMap& f, int D) {
  if (f.is_identity()) return {};
  const CubeMap id = CubeMap::identity(f.domain_dim());
  std::unordered_map<CubeMap, std::pair<CubeMap, CubeMap>, CubeMapHash> parent;  // map -> (prev, gen)
  std::deque<CubeMap> work;
  work.push_back(id);
  parent.emplace(id, std::make_pair(id, id));
  while (!work.empty()) {
    CubeMap cur = std::move(work.front());
    work.pop_front();
    for (const CubeMap& g : elementary_maps_with_domain(t, cur.codomain_dim(), D)) {
      CubeMap next = compose(g, cur);
      const bool fresh = parent.emplace(next, std::make_pair(cur, g)).second;
      if (fresh) {
        if (next == f) {
          std::vector<CubeMap> word;
          CubeMap walk = std::move(next);
          while (!(walk == id)) {
            auto it = parent.find(walk);
            word.push_back(it->second.second);
            walk = it->second.first;
          }
          return word;  // outermost generator first
        }
        work.push_back(std::move(next));
      }
    }
  }
  throw std::runtime_error("generator_word: map not reachable within the truncation");
}

}  // namespace detail

inline json cubical_set_to_json(const CSet& X) {
  const int D = X->truncation;
  json cubes = json::array();
  for (int d = 0; d <= D; ++d) cubes.push_back(X->labels[static_cast<std::size_t>(d)]);
  const bool elementary_only = !X->theory.has(Symbol::delta);
  json actions = json::array();
  for (int d = 0; d <= D; ++d) {
    std::vector<CubeMap> maps;
    if (elementary_only) {
      for (const CubeMap& g : detail::elementary_maps_with_codomain(X->theory, d, D))
        if (g.codomain_dim() == d && g.domain_dim() <= D) maps.push_back(g);
    } else {
      for (int e = 0; e <= D; ++e)
        for (const CubeMap& g : enumerate_hom(X->theory, e, d)) maps.push_back(g);
    }
    for (const CubeMap& g : maps)
      for (std::size_t i = 0; i < X->size(d); ++i)
        actions.push_back(json{{"dim", d},
                               {"cube", i},
                               {"map", cube_map_to_json(g)},
                               {"image", X->action(d, i, g)}});
  }
  return json{{"theory", theory_to_json(X->theory)},
              {"truncation", D},
              {"cubes", std::move(cubes)},
              {"action", std::move(actions)},
              {"extendByComposition", elementary_only}};
}

inline CSet cubical_set_from_json(const json& j) {
  auto set = std::make_shared<CubicalSet>();
  set->theory = theory_from_json(j.at("theory"));
  set->truncation = j.at("truncation").get<int>();
  const int D = set->truncation;
  for (const auto& row : j.at("cubes")) set->labels.push_back(row.get<std::vector<std::string>>());
  if (static_cast<int>(set->labels.size()) != D + 1)
    throw std::invalid_argument("cubical set: cube rows must match the truncation");
  const bool extend = j.at("extendByComposition").get<bool>();
  if (extend && set->theory.has(Symbol::delta))
    throw std::invalid_argument("cubical set: cannot extend by composition with diagonals");

  struct EntryKey {
    int dim;
    std::size_t cube;
    CubeMap map;
    bool operator==(const EntryKey& o) const { return dim == o.dim && cube == o.cube && map == o.map; }
  };
  struct EntryHash {
    std::size_t operator()(const EntryKey& k) const {
      return CubeMapHash{}(k.map) ^ (static_cast<std::size_t>(k.dim) << 32) ^ k.cube;
    }
  };
  auto table = std::make_shared<std::unordered_map<EntryKey, std::size_t, EntryHash>>();
  for (const auto& e : j.at("action"))
    table->emplace(EntryKey{e.at("dim").get<int>(), e.at("cube").get<std::size_t>(),
                            cube_map_from_json(e.at("map"))},
                   e.at("image").get<std::size_t>());

  const Theory t = set->theory;
  set->action_fn = [table, t, D](int d, std::size_t i, const CubeMap& f) -> std::size_t {
    if (f.is_identity()) return i;
    auto direct = table->find(EntryKey{d, i, f});
    if (direct != table->end()) return direct->second;
    // extend by composition along a generator word, outermost first
    std::size_t cur = i;
    int cd = d;
    for (const CubeMap& g : detail::generator_word(t, f, D)) {
      auto step = table->find(EntryKey{cd, cur, g});
      if (step == table->end()) throw std::runtime_error("cubical set action: missing table entry");
      cur = step->second;
      cd = g.domain_dim();
    }
    return cur;
  };
  return set;
}

}  // namespace cubical
