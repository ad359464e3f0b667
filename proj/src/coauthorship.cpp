#include "oa2net/coauthorship.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "oa2net/error.hpp"
#include "oa2net/pajek.hpp"

namespace oa2net {

CoMatrix::CoMatrix(std::vector<CountryCode> codes) : codes_(std::move(codes)) {
  auto sorted = codes_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    fail(ErrorKind::InvalidArgument, "duplicate country code in matrix");
  }
  cells_.assign(codes_.size() * codes_.size(), std::nullopt);
}

std::vector<std::string> CoMatrix::labels() const {
  std::vector<std::string> out;
  out.reserve(codes_.size());
  for (auto c : codes_) out.push_back(c.str());
  return out;
}

std::optional<std::size_t> CoMatrix::index_of(CountryCode code) const {
  auto it = std::find(codes_.begin(), codes_.end(), code);
  if (it == codes_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - codes_.begin());
}

std::optional<std::uint64_t> CoMatrix::at(CountryCode a, CountryCode b) const {
  auto i = index_of(a);
  auto j = index_of(b);
  if (!i || !j) return std::nullopt;
  return at(*i, *j);
}

void CoMatrix::set(std::size_t row, std::size_t col, std::optional<std::uint64_t> value) {
  if (row >= size() || col >= size()) fail(ErrorKind::InvalidArgument, "matrix index out of range");
  cells_[row * size() + col] = value;
  cells_[col * size() + row] = value;
}

CoMatrix::Marginals CoMatrix::marginals() const {
  Marginals m;
  m.row.assign(size(), 0);
  m.col.assign(size(), 0);
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = 0; j < size(); ++j) {
      if (auto v = at(i, j)) {
        m.row[i] += *v;
        m.col[j] += *v;
        m.total += *v;
      }
    }
  }
  return m;
}

CountrySet countries_of_work(const WorkRecord& record) {
  CountrySet out;
  for (const auto& c : record.countries) {
    if (auto code = CountryCode::parse(c)) {
      out.codes.insert(*code);
    } else {
      ++out.dropped;
    }
  }
  return out;
}

CoMatrix co_matrix_from_works(std::span<const WorkRecord> works, CoBuildReport* report) {
  std::vector<std::set<CountryCode>> international;
  std::set<CountryCode> present;
  for (const auto& w : works) {
    auto cs = countries_of_work(w);
    if (report) report->dropped_codes += cs.dropped;
    if (cs.codes.size() < 2) continue;
    present.insert(cs.codes.begin(), cs.codes.end());
    international.push_back(std::move(cs.codes));
  }
  CoMatrix co(std::vector<CountryCode>(present.begin(), present.end()));
  std::vector<std::uint64_t> counts(co.size() * co.size(), 0);
  for (const auto& codes : international) {
    std::vector<std::size_t> idx;
    for (auto c : codes) idx.push_back(*co.index_of(c));
    for (std::size_t a : idx) {
      for (std::size_t b : idx) ++counts[a * co.size() + b];
    }
  }
  for (std::size_t a = 0; a < co.size(); ++a) {
    for (std::size_t b = a; b < co.size(); ++b) {
      if (auto n = counts[a * co.size() + b]; n > 0) co.set(a, b, n);
    }
  }
  return co;
}

CoMatrix co_matrix_from_groupby(const GroupResponses& responses, CoBuildReport* report) {
  std::map<CountryCode, std::map<CountryCode, std::uint64_t>> observed;
  std::set<CountryCode> present;
  std::size_t dropped = 0;
  for (const auto& [focal_key, response] : responses) {
    auto focal = CountryCode::parse(focal_key);
    if (!focal) {
      ++dropped;
      continue;
    }
    if (report && response.possibly_truncated) ++report->truncated_responses;
    // A focal country with no works in the slice contributes no row.
    if (!response.groups.empty()) present.insert(*focal);
    auto& row = observed[*focal];
    for (const auto& g : response.groups) {
      auto other = CountryCode::parse(g.key);
      if (!other) {
        ++dropped;
        continue;
      }
      present.insert(*other);
      row[*other] = g.count;
    }
  }
  if (report) report->dropped_codes += dropped;

  auto lookup = [&](CountryCode a, CountryCode b) -> std::optional<std::uint64_t> {
    auto row = observed.find(a);
    if (row == observed.end()) return std::nullopt;
    auto cell = row->second.find(b);
    if (cell == row->second.end()) return std::nullopt;
    return cell->second;
  };

  CoMatrix co(std::vector<CountryCode>(present.begin(), present.end()));
  const auto& codes = co.codes();
  for (std::size_t i = 0; i < codes.size(); ++i) {
    co.set(i, i, lookup(codes[i], codes[i]));
    for (std::size_t j = i + 1; j < codes.size(); ++j) {
      auto forward = lookup(codes[i], codes[j]);
      auto backward = lookup(codes[j], codes[i]);
      if (forward && backward && *forward != *backward && report) {
        report->warnings.push_back("asymmetric counts " + codes[i].str() + "->" + codes[j].str() + "=" +
                                   std::to_string(*forward) + ", " + codes[j].str() + "->" +
                                   codes[i].str() + "=" + std::to_string(*backward) +
                                   "; keeping the larger");
      }
      std::optional<std::uint64_t> value = forward ? forward : backward;
      if (forward && backward) value = std::max(*forward, *backward);
      co.set(i, j, value);
    }
  }
  return co;
}

GroupResponses group_responses_from_matrix(const CoMatrix& co) {
  GroupResponses out;
  for (std::size_t i = 0; i < co.size(); ++i) {
    GroupResponse r;
    for (std::size_t j = 0; j < co.size(); ++j) {
      if (auto v = co.at(i, j)) r.groups.push_back({co.codes()[j].str(), *v});
    }
    std::stable_sort(r.groups.begin(), r.groups.end(),
                     [](const GroupCount& a, const GroupCount& b) { return a.count > b.count; });
    r.possibly_truncated = r.groups.size() == kGroupByLimit;
    out.emplace(co.codes()[i].str(), std::move(r));
  }
  return out;
}

WorksFilter country_groupby_filter(CountryCode focal, std::optional<int> year, bool international_only) {
  WorksFilter f;
  f.where("authorships.countries", focal.str());
  if (year) f.where("publication_year", std::to_string(*year));
  if (international_only) f.where("countries_distinct_count", ">1");
  f.group_by = "authorships.countries";
  return f;
}

TemporalCoSeries yearly_series(int year_from, int year_to, GroupCountSource& source,
                               const SeriesOptions& options) {
  if (year_from > year_to) fail(ErrorKind::Precondition, "year_from must not exceed year_to");
  std::vector<CountryCode> scope = options.scope;
  if (scope.empty()) {
    for (auto code : all_country_codes()) scope.push_back(CountryCode::require(code));
  }
  TemporalCoSeries series;
  series.year_from = year_from;
  series.year_to = year_to;
  for (int year = year_from; year <= year_to; ++year) {
    try {
      GroupResponses responses;
      for (auto focal : scope) {
        responses[focal.str()] =
            source.fetch_group_counts(country_groupby_filter(focal, year, options.international_only));
      }
      CoBuildReport year_report;
      auto co = co_matrix_from_groupby(responses, &year_report);
      series.report.dropped_codes += year_report.dropped_codes;
      series.report.truncated_responses += year_report.truncated_responses;
      for (auto& w : year_report.warnings) series.report.warnings.push_back(std::to_string(year) + ": " + w);
      series.years.emplace(year, std::move(co));
    } catch (const Error& e) {
      series.failures.push_back({year, e.kind(), e.what()});
    }
  }
  return series;
}

WeightedNetwork co_matrix_to_network(const CoMatrix& co, bool include_loops) {
  WeightedNetwork net(co.labels(), Directedness::Undirected);
  for (std::size_t i = 0; i < co.size(); ++i) {
    for (std::size_t j = i; j < co.size(); ++j) {
      if (i == j && !include_loops) continue;
      if (auto v = co.at(i, j); v && *v > 0) {
        net.add_link(NodeId::from_offset(i), NodeId::from_offset(j), static_cast<double>(*v));
      }
    }
  }
  return net;
}

std::string format_co_csv(const CoMatrix& co) {
  std::string out;
  for (auto c : co.codes()) out += "," + c.str();
  out += '\n';
  for (std::size_t i = 0; i < co.size(); ++i) {
    out += co.codes()[i].str();
    for (std::size_t j = 0; j < co.size(); ++j) {
      out += ',';
      if (auto v = co.at(i, j)) out += std::to_string(*v);
    }
    out += '\n';
  }
  return out;
}

namespace {

std::vector<std::string> split_csv_line(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    auto comma = line.find(',', start);
    std::string field = line.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    std::erase(field, '"');
    fields.push_back(std::move(field));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return fields;
}

}  // namespace

CoMatrix parse_co_csv(std::string_view text, std::string_view origin) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  auto error = [&](const std::string& msg) -> void {
    fail(ErrorKind::Parse, std::string(origin) + ":" + std::to_string(lineno) + ": " + msg);
  };
  if (!std::getline(in, line)) {
    lineno = 1;
    error("missing header row");
  }
  ++lineno;
  auto header = split_csv_line(line);
  std::vector<CountryCode> codes;
  for (std::size_t k = 1; k < header.size(); ++k) {
    auto code = CountryCode::parse(header[k]);
    if (!code) error("invalid country code \"" + header[k] + "\" in header");
    codes.push_back(*code);
  }
  if (header.size() == 1 && !header[0].empty()) error("malformed header row");
  CoMatrix co;
  try {
    co = CoMatrix(codes);
  } catch (const Error& e) {
    error(e.what());
  }
  std::vector<std::vector<std::optional<std::uint64_t>>> rows;
  while (rows.size() < codes.size() && std::getline(in, line)) {
    ++lineno;
    auto fields = split_csv_line(line);
    if (fields.size() != codes.size() + 1) error("expected " + std::to_string(codes.size() + 1) + " fields");
    if (fields[0] != codes[rows.size()].str()) error("row label " + fields[0] + " out of header order");
    std::vector<std::optional<std::uint64_t>> row;
    for (std::size_t k = 1; k < fields.size(); ++k) {
      if (fields[k].empty() || fields[k] == "NA") {
        row.emplace_back();
        continue;
      }
      std::uint64_t v = 0;
      auto [ptr, ec] = std::from_chars(fields[k].data(), fields[k].data() + fields[k].size(), v);
      if (ec != std::errc() || ptr != fields[k].data() + fields[k].size()) {
        error("malformed count \"" + fields[k] + "\"");
      }
      row.emplace_back(v);
    }
    rows.push_back(std::move(row));
  }
  if (rows.size() != codes.size()) error("expected " + std::to_string(codes.size()) + " rows");
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line != "\r") error("unexpected trailing content");
  }
  for (std::size_t i = 0; i < codes.size(); ++i) {
    for (std::size_t j = i; j < codes.size(); ++j) {
      if (rows[i][j] != rows[j][i]) {
        fail(ErrorKind::Parse, std::string(origin) + ": matrix not symmetric at " + codes[i].str() + "," +
                                   codes[j].str());
      }
      co.set(i, j, rows[i][j]);
    }
  }
  return co;
}

void write_co_csv(const CoMatrix& co, const std::filesystem::path& path) {
  pajek::write_text_file(path, format_co_csv(co));
}

CoMatrix read_co_csv(const std::filesystem::path& path) {
  return parse_co_csv(pajek::read_text_file(path), path.string());
}

void write_series(const TemporalCoSeries& series, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorKind::Io, "cannot create " + dir.string());
  for (const auto& [year, co] : series.years) {
    write_co_csv(co, dir / ("co_" + std::to_string(year) + ".csv"));
  }
}

}  // namespace oa2net
