#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "oa2net/country_codes.hpp"
#include "oa2net/error.hpp"
#include "oa2net/netmodel.hpp"
#include "oa2net/openalex.hpp"

namespace oa2net {

/// Square symmetric country x country co-authorship counts. A cell is either
/// a count or absent (no link, NA).
class CoMatrix {
 public:
  CoMatrix() = default;
  explicit CoMatrix(std::vector<CountryCode> codes);

  std::size_t size() const { return codes_.size(); }
  bool empty() const { return codes_.empty(); }
  const std::vector<CountryCode>& codes() const { return codes_; }
  std::vector<std::string> labels() const;
  std::optional<std::size_t> index_of(CountryCode code) const;

  std::optional<std::uint64_t> at(std::size_t row, std::size_t col) const { return cells_[row * size() + col]; }
  std::optional<std::uint64_t> at(CountryCode a, CountryCode b) const;
  /// Sets cell[a,b] and cell[b,a] together.
  void set(std::size_t row, std::size_t col, std::optional<std::uint64_t> value);

  /// Row sums R, column sums Q and total T over present cells, diagonal
  /// included. R == Q for every matrix this class can hold.
  struct Marginals {
    std::vector<std::uint64_t> row;
    std::vector<std::uint64_t> col;
    std::uint64_t total = 0;
  };
  Marginals marginals() const;

  bool operator==(const CoMatrix&) const = default;

 private:
  std::vector<CountryCode> codes_;
  std::vector<std::optional<std::uint64_t>> cells_;
};

struct CoBuildReport {
  std::size_t dropped_codes = 0;
  std::size_t truncated_responses = 0;
  std::vector<std::string> warnings;
};

struct CountrySet {
  std::set<CountryCode> codes;
  std::size_t dropped = 0;
};

/// Distinct valid codes of a work; invalid codes are dropped and counted.
CountrySet countries_of_work(const WorkRecord& record);

/// Co[a,b] = number of works with co-authors from both a and b, over works
/// with at least two distinct countries; Co[a,a] = such works involving a.
CoMatrix co_matrix_from_works(std::span<const WorkRecord> works, CoBuildReport* report = nullptr);

using GroupResponses = std::map<std::string, GroupResponse>;

/// Assembles per-country group-by answers. Entries a response omits are
/// recovered from the partner's response; disagreeing counts keep the larger
/// value and add a warning to the report.
CoMatrix co_matrix_from_groupby(const GroupResponses& responses, CoBuildReport* report = nullptr);

/// Row a of the matrix as the group-by answer for a, counts descending.
GroupResponses group_responses_from_matrix(const CoMatrix& co);

struct YearFailure {
  int year = 0;
  ErrorKind kind = ErrorKind::Transport;
  std::string message;
};

struct TemporalCoSeries {
  int year_from = 0;
  int year_to = 0;
  std::map<int, CoMatrix> years;  // failed years are absent
  std::vector<YearFailure> failures;
  CoBuildReport report;
};

struct SeriesOptions {
  /// Countries queried as focal countries; empty means every known code.
  std::vector<CountryCode> scope;
  /// Adds countries_distinct_count:>1 so diagonals count only
  /// internationally co-authored works.
  bool international_only = false;
};

WorksFilter country_groupby_filter(CountryCode focal, std::optional<int> year, bool international_only);

TemporalCoSeries yearly_series(int year_from, int year_to, GroupCountSource& source,
                               const SeriesOptions& options = {});

/// Undirected network over the matrix codes; diagonal cells become
/// self-loops only when requested. Zero counts produce no link.
WeightedNetwork co_matrix_to_network(const CoMatrix& co, bool include_loops);

/// CSV: header `,C1,C2,...`, one row per code, absent cells empty.
std::string format_co_csv(const CoMatrix& co);
CoMatrix parse_co_csv(std::string_view text, std::string_view origin = "<input>");
void write_co_csv(const CoMatrix& co, const std::filesystem::path& path);
CoMatrix read_co_csv(const std::filesystem::path& path);

/// One co_<year>.csv per year.
void write_series(const TemporalCoSeries& series, const std::filesystem::path& dir);

}  // namespace oa2net
