#include "nmf/model.hpp"

#include <algorithm>

#include "nmf/csv.hpp"
#include "json.hpp"

namespace nmf {

using ordered_json = nlohmann::ordered_json;

int Attribute::index_of(int code) const {
  auto it = std::lower_bound(categories.begin(), categories.end(), code,
                             [](const Category& c, int v) { return c.code < v; });
  if (it == categories.end() || it->code != code) return -1;
  return static_cast<int>(it - categories.begin());
}

const Category& Attribute::category_at(int code) const {
  int idx = index_of(code);
  if (idx < 0)
    throw ValidationError("attribute '" + name + "' has no category code " +
                          std::to_string(code));
  return categories[static_cast<std::size_t>(idx)];
}

const Attribute* Codebook::find(std::string_view name) const {
  for (const auto& a : attributes)
    if (a.name == name) return &a;
  return nullptr;
}

int Codebook::attribute_index(std::string_view name) const {
  for (std::size_t i = 0; i < attributes.size(); ++i)
    if (attributes[i].name == name) return static_cast<int>(i);
  return -1;
}

void Codebook::validate() const {
  std::set<std::string> seen;
  for (const auto& a : attributes) {
    if (a.name.empty()) throw ValidationError("codebook: empty attribute name");
    if (!seen.insert(a.name).second)
      throw ValidationError("codebook: duplicate attribute '" + a.name + "'");
    if (a.categories.size() < 2)
      throw ValidationError("attribute '" + a.name + "' needs at least 2 categories");
    for (std::size_t i = 1; i < a.categories.size(); ++i)
      if (a.categories[i].code <= a.categories[i - 1].code)
        throw ValidationError("attribute '" + a.name +
                              "': category codes must be strictly increasing");
  }
}

std::size_t QuerySpec::bin_count(const Codebook& cb) const {
  std::size_t n = 1;
  for (const auto& attr : attributes) {
    const Attribute* a = cb.find(attr);
    if (!a) throw ValidationError("query '" + name + "': unknown attribute '" + attr + "'");
    n *= a->size();
  }
  return n;
}

const QuerySpec* Workload::find(std::string_view name) const {
  for (const auto& q : queries)
    if (q.name == name) return &q;
  return nullptr;
}

const QuerySpec& Workload::at(std::string_view name) const {
  const QuerySpec* q = find(name);
  if (!q) throw ValidationError("unknown query '" + std::string(name) + "'");
  return *q;
}

void Workload::validate(const Codebook& cb) const {
  std::set<std::string> seen;
  for (const auto& q : queries) {
    if (!q.name.ends_with("_dpq"))
      throw ValidationError("query '" + q.name + "': name must end in _dpq");
    if (!seen.insert(q.name).second)
      throw ValidationError("workload: duplicate query '" + q.name + "'");
    // attributes must be a sublist of the canonical order
    int last = -1;
    for (const auto& attr : q.attributes) {
      int idx = cb.attribute_index(attr);
      if (idx < 0)
        throw ValidationError("query '" + q.name + "': unknown attribute '" + attr + "'");
      if (idx <= last)
        throw ValidationError("query '" + q.name +
                              "': attributes must follow the codebook's canonical order");
      last = idx;
    }
  }
}

std::size_t bin_index(const QuerySpec& query, const Codebook& cb,
                      std::span<const int> codes) {
  if (codes.size() != query.attributes.size())
    throw ValidationError("query '" + query.name + "': expected " +
                          std::to_string(query.attributes.size()) + " codes, got " +
                          std::to_string(codes.size()));
  std::size_t idx = 0;
  for (std::size_t i = 0; i < query.attributes.size(); ++i) {
    const Attribute* a = cb.find(query.attributes[i]);
    if (!a)
      throw ValidationError("query '" + query.name + "': unknown attribute '" +
                            query.attributes[i] + "'");
    int pos = a->index_of(codes[i]);
    if (pos < 0)
      throw ValidationError("attribute '" + a->name + "' has no category code " +
                            std::to_string(codes[i]));
    idx = idx * a->size() + static_cast<std::size_t>(pos);
  }
  return idx;
}

std::vector<BinLabel> bin_labels(const QuerySpec& query, const Codebook& cb) {
  std::vector<const Attribute*> attrs;
  attrs.reserve(query.attributes.size());
  std::size_t total = 1;
  for (const auto& name : query.attributes) {
    const Attribute* a = cb.find(name);
    if (!a) throw ValidationError("query '" + query.name + "': unknown attribute '" + name + "'");
    attrs.push_back(a);
    total *= a->size();
  }
  std::vector<BinLabel> out(total);
  for (std::size_t bin = 0; bin < total; ++bin) {
    BinLabel& bl = out[bin];
    bl.codes.resize(attrs.size());
    bl.labels.resize(attrs.size());
    std::size_t rem = bin;
    for (std::size_t i = attrs.size(); i-- > 0;) {
      std::size_t pos = rem % attrs[i]->size();
      rem /= attrs[i]->size();
      bl.codes[i] = attrs[i]->categories[pos].code;
      bl.labels[i] = attrs[i]->categories[pos].label;
    }
  }
  return out;
}

namespace {

// Predicate sets equal to an attribute's full code set are not constraints.
bool is_proper_subset(const std::set<int>& codes, const Attribute& attr) {
  return codes.size() < attr.size();
}

}  // namespace

bool statistic_supported_by(const StatisticSpec& stat, const QuerySpec& query,
                            const Codebook& cb) {
  for (const auto& [attr, codes] : stat.predicate) {
    const Attribute* a = cb.find(attr);
    if (!a)
      throw ValidationError("statistic '" + stat.name + "': unknown attribute '" + attr + "'");
    if (!is_proper_subset(codes, *a)) continue;
    if (std::find(query.attributes.begin(), query.attributes.end(), attr) ==
        query.attributes.end())
      return false;
  }
  return true;
}

bool bin_matches(const StatisticSpec& stat, const QuerySpec& query, const Codebook& cb,
                 std::span<const int> codes) {
  for (const auto& [attr, allowed] : stat.predicate) {
    auto it = std::find(query.attributes.begin(), query.attributes.end(), attr);
    if (it == query.attributes.end()) {
      const Attribute* a = cb.find(attr);
      if (a && !is_proper_subset(allowed, *a)) continue;
      throw ValidationError("statistic '" + stat.name + "' not supported by query '" +
                            query.name + "': missing dimension '" + attr + "'");
    }
    std::size_t i = static_cast<std::size_t>(it - query.attributes.begin());
    if (!allowed.contains(codes[i])) return false;
  }
  return true;
}

namespace {

const char* kRaceNames[6] = {"White", "Black", "AIAN", "Asian", "NHPI", "Other"};

std::string race_label(int code) {
  std::string label;
  for (int bit = 0; bit < 6; ++bit) {
    if (code & (1 << bit)) {
      if (!label.empty()) label += '-';
      label += kRaceNames[bit];
    }
  }
  return label;
}

}  // namespace

Codebook default_codebook() {
  Codebook cb;
  cb.version = "pl94-default-1";
  cb.attributes.push_back(
      {"voting_age", {{0, "Under 18"}, {1, "18 and over"}}});
  cb.attributes.push_back(
      {"hispanic", {{0, "Not Hispanic"}, {1, "Hispanic"}}});
  Attribute race{"race", {}};
  for (int code = 1; code <= 63; ++code) race.categories.push_back({code, race_label(code)});
  cb.attributes.push_back(std::move(race));
  cb.attributes.push_back({"hhgq",
                           {{0, "Household"},
                            {1, "Correctional GQ"},
                            {2, "Juvenile GQ"},
                            {3, "Nursing GQ"},
                            {4, "Other institutional GQ"},
                            {5, "College housing GQ"},
                            {6, "Military GQ"},
                            {7, "Other noninstitutional GQ"}}});
  return cb;
}

Workload default_workload() {
  Workload wl;
  wl.name = "pl94-default";
  wl.queries = {
      {"total_dpq", {}},
      {"votingage_dpq", {"voting_age"}},
      {"hispanic_dpq", {"hispanic"}},
      {"race_dpq", {"race"}},
      {"hhgq_dpq", {"hhgq"}},
      {"votingage_hispanic_dpq", {"voting_age", "hispanic"}},
      {"votingage_race_dpq", {"voting_age", "race"}},
      {"hispanic_race_dpq", {"hispanic", "race"}},
      {"votingage_hispanic_race_dpq", {"voting_age", "hispanic", "race"}},
      {"hhgq_votingage_dpq", {"voting_age", "hhgq"}},
      {"detailed_dpq", {"voting_age", "hispanic", "race", "hhgq"}},
  };
  return wl;
}

std::vector<StatisticSpec> default_statistics(const Codebook& cb) {
  std::vector<StatisticSpec> stats;
  stats.push_back({"total_pop", {}});
  stats.push_back({"vap", {{"voting_age", {1}}}});
  stats.push_back({"hispanic_pop", {{"hispanic", {1}}}});
  stats.push_back({"hispanic_vap", {{"voting_age", {1}}, {"hispanic", {1}}}});
  const Attribute* race = cb.find("race");
  if (race) {
    for (int bit = 0; bit < 6; ++bit) {
      int code = 1 << bit;
      if (race->index_of(code) < 0) continue;
      std::string base = race_label(code);
      std::transform(base.begin(), base.end(), base.begin(),
                     [](unsigned char c) { return std::tolower(c); });
      stats.push_back({base + "_alone_pop", {{"race", {code}}}});
    }
  }
  return stats;
}

namespace {

ordered_json codebook_json(const Codebook& cb) {
  ordered_json j;
  j["version"] = cb.version;
  j["attributes"] = ordered_json::array();
  for (const auto& a : cb.attributes) {
    ordered_json ja;
    ja["name"] = a.name;
    ja["categories"] = ordered_json::array();
    for (const auto& c : a.categories)
      ja["categories"].push_back({{"code", c.code}, {"label", c.label}});
    j["attributes"].push_back(std::move(ja));
  }
  return j;
}

ordered_json parse_json(std::string_view text, const char* what) {
  ordered_json j = ordered_json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError(std::string(what) + ": invalid JSON");
  return j;
}

}  // namespace

std::string codebook_to_json(const Codebook& cb) { return codebook_json(cb).dump(2) + "\n"; }

Codebook codebook_from_json(std::string_view text) {
  ordered_json j = parse_json(text, "codebook");
  Codebook cb;
  try {
    cb.version = j.at("version").get<std::string>();
    for (const auto& ja : j.at("attributes")) {
      Attribute a;
      a.name = ja.at("name").get<std::string>();
      for (const auto& jc : ja.at("categories"))
        a.categories.push_back({jc.at("code").get<int>(), jc.at("label").get<std::string>()});
      cb.attributes.push_back(std::move(a));
    }
  } catch (const ordered_json::exception& e) {
    throw ParseError(std::string("codebook: ") + e.what());
  }
  cb.validate();
  return cb;
}

std::string workload_to_json(const Workload& wl) {
  ordered_json j;
  j["name"] = wl.name;
  j["queries"] = ordered_json::array();
  for (const auto& q : wl.queries)
    j["queries"].push_back({{"name", q.name}, {"attributes", q.attributes}});
  return j.dump(2) + "\n";
}

Workload workload_from_json(std::string_view text) {
  ordered_json j = parse_json(text, "workload");
  Workload wl;
  try {
    wl.name = j.at("name").get<std::string>();
    for (const auto& jq : j.at("queries")) {
      QuerySpec q;
      q.name = jq.at("name").get<std::string>();
      q.attributes = jq.at("attributes").get<std::vector<std::string>>();
      wl.queries.push_back(std::move(q));
    }
  } catch (const ordered_json::exception& e) {
    throw ParseError(std::string("workload: ") + e.what());
  }
  return wl;
}

Codebook load_codebook(const std::filesystem::path& path) {
  return codebook_from_json(read_file(path));
}

void save_codebook(const Codebook& cb, const std::filesystem::path& path) {
  write_file(path, codebook_to_json(cb));
}

Workload load_workload(const std::filesystem::path& path) {
  return workload_from_json(read_file(path));
}

void save_workload(const Workload& wl, const std::filesystem::path& path) {
  write_file(path, workload_to_json(wl));
}

std::vector<StatisticSpec> load_statistics(const std::filesystem::path& path,
                                           const Codebook& cb) {
  ordered_json j = parse_json(read_file(path), "statistics");
  std::vector<StatisticSpec> stats;
  try {
    for (const auto& js : j.at("statistics")) {
      StatisticSpec s;
      s.name = js.at("name").get<std::string>();
      for (const auto& [attr, codes] : js.at("predicate").items()) {
        const Attribute* a = cb.find(attr);
        if (!a)
          throw ValidationError("statistic '" + s.name + "': unknown attribute '" + attr + "'");
        std::set<int> set;
        for (const auto& c : codes) {
          int code = c.get<int>();
          if (a->index_of(code) < 0)
            throw ValidationError("statistic '" + s.name + "': attribute '" + attr +
                                  "' has no code " + std::to_string(code));
          set.insert(code);
        }
        if (set.size() < a->size()) s.predicate[attr] = std::move(set);
      }
      stats.push_back(std::move(s));
    }
  } catch (const ordered_json::exception& e) {
    throw ParseError(std::string("statistics: ") + e.what());
  }
  return stats;
}

void save_statistics(std::span<const StatisticSpec> stats,
                     const std::filesystem::path& path) {
  ordered_json j;
  j["statistics"] = ordered_json::array();
  for (const auto& s : stats) {
    ordered_json js;
    js["name"] = s.name;
    js["predicate"] = ordered_json::object();
    for (const auto& [attr, codes] : s.predicate)
      js["predicate"][attr] = std::vector<int>(codes.begin(), codes.end());
    j["statistics"].push_back(std::move(js));
  }
  write_file(path, j.dump(2) + "\n");
}

}  // namespace nmf
