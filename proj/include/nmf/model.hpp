#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nmf/errors.hpp"

namespace nmf {

struct Category {
  int code;
  std::string label;
};

// One attribute of the person-level codebook. Categories are kept in
// strictly increasing code order; bin computations index by position.
struct Attribute {
  std::string name;
  std::vector<Category> categories;

  std::size_t size() const { return categories.size(); }
  // Position of a code in the category list, or -1.
  int index_of(int code) const;
  const Category& category_at(int code) const;  // throws ValidationError
};

struct Codebook {
  std::string version;
  std::vector<Attribute> attributes;  // canonical order, fixed per version

  const Attribute* find(std::string_view name) const;
  int attribute_index(std::string_view name) const;  // -1 if absent
  void validate() const;
};

// A noisy query: a contingency table over a subset of codebook attributes.
// Bins are ordered row-major with the last attribute varying fastest.
struct QuerySpec {
  std::string name;                     // always ends in "_dpq"
  std::vector<std::string> attributes;  // ordered sublist of the canonical order

  std::size_t bin_count(const Codebook& cb) const;
};

struct Workload {
  std::string name;
  std::vector<QuerySpec> queries;

  const QuerySpec* find(std::string_view name) const;
  const QuerySpec& at(std::string_view name) const;  // throws ValidationError
  void validate(const Codebook& cb) const;
};

// A tabulated statistic: for each constrained attribute, the set of
// category codes it admits. Attributes absent from the predicate admit
// every code. Predicates equal to the full code set are normalized away.
struct StatisticSpec {
  std::string name;
  std::map<std::string, std::set<int>> predicate;
};

// 0-based bin position of a code tuple (one code per query attribute,
// in query attribute order). Row-major, last attribute fastest.
std::size_t bin_index(const QuerySpec& query, const Codebook& cb, std::span<const int> codes);

struct BinLabel {
  std::vector<int> codes;           // one per query attribute
  std::vector<std::string> labels;  // matching human-readable labels
};

// All bins of a query in bin_index order, fully labeled.
std::vector<BinLabel> bin_labels(const QuerySpec& query, const Codebook& cb);

// True iff every attribute the statistic constrains is a dimension of
// the query, i.e. the statistic can be aggregated from the query's bins.
bool statistic_supported_by(const StatisticSpec& stat, const QuerySpec& query,
                            const Codebook& cb);

// Whether a single bin's code tuple satisfies the statistic's predicate.
bool bin_matches(const StatisticSpec& stat, const QuerySpec& query, const Codebook& cb,
                 std::span<const int> codes);

// Built-in defaults: the (2, 2, 63, 8) P.L.94-171 person codebook, the
// 11-query workload, and the statistics used by the worked examples.
Codebook default_codebook();
Workload default_workload();
std::vector<StatisticSpec> default_statistics(const Codebook& cb);

// JSON files are the source of truth when given on the command line;
// the built-ins above match data/codebook.json and data/workload.json.
Codebook load_codebook(const std::filesystem::path& path);
void save_codebook(const Codebook& cb, const std::filesystem::path& path);
Workload load_workload(const std::filesystem::path& path);
void save_workload(const Workload& wl, const std::filesystem::path& path);
std::vector<StatisticSpec> load_statistics(const std::filesystem::path& path,
                                           const Codebook& cb);
void save_statistics(std::span<const StatisticSpec> stats,
                     const std::filesystem::path& path);

std::string codebook_to_json(const Codebook& cb);
std::string workload_to_json(const Workload& wl);
Codebook codebook_from_json(std::string_view text);
Workload workload_from_json(std::string_view text);

}  // namespace nmf
