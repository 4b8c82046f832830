#include "incidence_braid/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace incidence_braid {

namespace {

void require(bool cond, const char* what) {
  if (!cond) throw std::invalid_argument(what);
}

}  // namespace

nlohmann::json field_to_json(const Field& f) {
  if (f.kind() == Field::Kind::Rationals) return nlohmann::json{{"kind", "rationals"}};
  return nlohmann::json{{"kind", "prime"}, {"p", f.modulus()}};
}

Field field_from_json(const nlohmann::json& j) {
  require(j.is_object() && j.contains("kind"), "field descriptor must carry a kind");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "rationals") return Field::rationals();
  if (kind == "prime") {
    require(j.contains("p") && j.at("p").is_number_unsigned(), "prime field needs a modulus p");
    return Field::prime(j.at("p").get<std::uint64_t>());
  }
  throw std::invalid_argument("unknown field kind: " + kind);
}

nlohmann::json poset_to_json(const Poset& p) {
  nlohmann::json covers = nlohmann::json::array();
  for (auto [a, b] : p.cover_pairs()) covers.push_back({p.label(a), p.label(b)});
  return nlohmann::json{{"elements", p.labels()}, {"covers", covers}};
}

Poset poset_from_json(const nlohmann::json& j) {
  require(j.is_object() && j.contains("elements") && j.contains("covers"),
          "poset needs elements and covers");
  std::vector<std::string> elements = j.at("elements").get<std::vector<std::string>>();
  std::vector<std::pair<std::string, std::string>> covers;
  for (const auto& item : j.at("covers")) {
    require(item.is_array() && item.size() == 2, "each cover must be a pair");
    covers.emplace_back(item[0].get<std::string>(), item[1].get<std::string>());
  }
  return Poset::from_covers(std::move(elements), covers);
}

nlohmann::json table_to_json(const LambdaTable& lt) {
  const Poset& p = lt.poset();
  const CoalgebraBasis& bas = lt.basis();
  const SetSolution& ls = lt.solution();

  nlohmann::json left = nlohmann::json::array(), right = nlohmann::json::array();
  for (int a = 0; a < p.size(); ++a) {
    nlohmann::json lrow = nlohmann::json::array(), rrow = nlohmann::json::array();
    for (int c = 0; c < p.size(); ++c) {
      lrow.push_back(p.label(ls.left(a, c)));
      rrow.push_back(p.label(ls.right(a, c)));
    }
    left.push_back(lrow);
    right.push_back(rrow);
  }

  auto iv = [&](Interval i) { return nlohmann::json::array({p.label(i.lo), p.label(i.hi)}); };
  nlohmann::json entries = nlohmann::json::array();
  for (std::size_t src = 0; src < bas.dim2(); ++src) {
    auto [y1, y2] = bas.split2(src);
    for (const auto& entry : lt.column(src)) {
      auto [ye, yg] = bas.split2(entry.dst);
      entries.push_back(nlohmann::json{
          {"src", nlohmann::json::array({iv(bas.pair_at(y1)), iv(bas.pair_at(y2))})},
          {"dst", nlohmann::json::array({iv(bas.pair_at(ye)), iv(bas.pair_at(yg))})},
          {"coeff", entry.value.str()}});
    }
  }
  return nlohmann::json{{"schema", kSchemaTag},
                        {"field", field_to_json(lt.field())},
                        {"poset", poset_to_json(p)},
                        {"r0", {{"left", left}, {"right", right}}},
                        {"entries", entries}};
}

LambdaTable table_from_json(const nlohmann::json& j) {
  require(j.is_object(), "table file must be a JSON object");
  if (j.contains("schema")) {
    require(j.at("schema").get<std::string>() == kSchemaTag, "unsupported schema tag");
  }
  Field f = field_from_json(j.at("field"));
  Poset p = poset_from_json(j.at("poset"));

  require(j.contains("r0") && j.at("r0").contains("left") && j.at("r0").contains("right"),
          "table needs the induced set map");
  const auto& r0 = j.at("r0");
  std::vector<std::vector<int>> left(p.size(), std::vector<int>(p.size()));
  std::vector<std::vector<int>> right(p.size(), std::vector<int>(p.size()));
  require(r0.at("left").size() == static_cast<std::size_t>(p.size()) &&
              r0.at("right").size() == static_cast<std::size_t>(p.size()),
          "set map tables must be square over the carrier");
  for (int a = 0; a < p.size(); ++a) {
    const auto& lrow = r0.at("left").at(a);
    const auto& rrow = r0.at("right").at(a);
    require(lrow.size() == static_cast<std::size_t>(p.size()) &&
                rrow.size() == static_cast<std::size_t>(p.size()),
            "set map tables must be square over the carrier");
    for (int c = 0; c < p.size(); ++c) {
      left[a][c] = p.index_of(lrow.at(c).get<std::string>());
      right[a][c] = p.index_of(rrow.at(c).get<std::string>());
    }
  }
  SetSolution sol = SetSolution::create(p, std::move(left), std::move(right));

  LambdaTable lt(std::move(p), f, std::move(sol));
  const Poset& pp = lt.poset();
  auto iv = [&](const nlohmann::json& item) {
    require(item.is_array() && item.size() == 2, "interval must be a label pair");
    return Interval{pp.index_of(item[0].get<std::string>()), pp.index_of(item[1].get<std::string>())};
  };
  require(j.contains("entries") && j.at("entries").is_array(), "table needs an entries array");
  for (const auto& item : j.at("entries")) {
    require(item.contains("src") && item.contains("dst") && item.contains("coeff"),
            "entry needs src, dst and coeff");
    const auto& src = item.at("src");
    const auto& dst = item.at("dst");
    require(src.is_array() && src.size() == 2 && dst.is_array() && dst.size() == 2,
            "entry src and dst must be pair arrays");
    lt.set_entry(iv(src[0]), iv(src[1]), iv(dst[0]), iv(dst[1]),
                 Scalar::parse(f, item.at("coeff").get<std::string>()));
  }
  return lt;
}

nlohmann::json spec_params_to_json(const BipartiteSpec& spec, const FamilyParams& params) {
  return nlohmann::json{{"schema", kSchemaTag},
                        {"u", spec.u},
                        {"v", spec.v},
                        {"sigma_a", spec.sigma_a},
                        {"tau_a", spec.tau_a},
                        {"sigma_b", spec.sigma_b},
                        {"tau_b", spec.tau_b},
                        {"field", field_to_json(params.field)},
                        {"epsilon", params.eps.str()},
                        {"alpha", params.alpha.str()},
                        {"beta_a", params.beta_a.str()},
                        {"beta_b", params.beta_b.str()},
                        {"gamma", params.gamma.str()}};
}

BipartiteSpec spec_from_json(const nlohmann::json& j) {
  require(j.is_object() && j.contains("u") && j.contains("v"), "spec needs u and v");
  BipartiteSpec spec;
  spec.u = j.at("u").get<int>();
  spec.v = j.at("v").get<int>();
  auto perm = [&](const char* key, int n) -> std::vector<int> {
    if (!j.contains(key)) {
      std::vector<int> identity(n);
      for (int i = 0; i < n; ++i) identity[i] = i;
      return identity;
    }
    return j.at(key).get<std::vector<int>>();
  };
  spec.sigma_a = perm("sigma_a", spec.u);
  spec.tau_a = perm("tau_a", spec.u);
  spec.sigma_b = perm("sigma_b", spec.v);
  spec.tau_b = perm("tau_b", spec.v);
  spec.validate();
  return spec;
}

std::pair<BipartiteSpec, FamilyParams> spec_params_from_json(const nlohmann::json& j) {
  BipartiteSpec spec = spec_from_json(j);
  Field f = field_from_json(j.at("field"));
  auto scalar = [&](const char* key) {
    require(j.contains(key), "params file is missing a parameter");
    return Scalar::parse(f, j.at(key).get<std::string>());
  };
  FamilyParams params = FamilyParams::make(f, scalar("epsilon"), scalar("alpha"), scalar("beta_a"),
                                           scalar("beta_b"), scalar("gamma"));
  return {std::move(spec), std::move(params)};
}

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  nlohmann::json j;
  in >> j;  // throws nlohmann::json::parse_error on malformed input
  return j;
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open file for writing: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace incidence_braid
