#pragma once

#include <chrono>
#include <cstdlib>
#include <deque>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oa2net/coauthorship.hpp"
#include "oa2net/netmodel.hpp"
#include "oa2net/openalex.hpp"

namespace testing_support {

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() {
    std::string tmpl = (fs::temp_directory_path() / "oa2net-XXXXXX").string();
    if (mkdtemp(tmpl.data()) == nullptr) throw std::runtime_error("mkdtemp failed");
    path_ = tmpl;
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const { return path_; }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

inline std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline void spit(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path());
  std::ofstream(path, std::ios::binary | std::ios::trunc) << text;
}

// Scripted responses per exact URL; unscripted URLs answer 404.
class MockTransport : public oa2net::HttpTransport {
 public:
  void script(const std::string& url, oa2net::HttpResponse response) {
    std::lock_guard lock(mu_);
    scripted_[url].push_back(std::move(response));
  }
  void ok(const std::string& url, std::string body) { script(url, {200, std::move(body), std::nullopt, {}}); }

  oa2net::HttpResponse get(const std::string& url) override {
    std::lock_guard lock(mu_);
    requests_.push_back(url);
    auto it = scripted_.find(url);
    if (it == scripted_.end() || it->second.empty()) return {404, "", std::nullopt, {}};
    auto resp = it->second.front();
    if (it->second.size() > 1) it->second.pop_front();
    return resp;
  }

  std::vector<std::string> requests() const {
    std::lock_guard lock(mu_);
    return requests_;
  }

 private:
  mutable std::mutex mu_;
  std::map<std::string, std::deque<oa2net::HttpResponse>> scripted_;
  std::vector<std::string> requests_;
};

// Fails loudly if anything asks it for a response.
class ForbiddenTransport : public oa2net::HttpTransport {
 public:
  oa2net::HttpResponse get(const std::string& url) override {
    ++calls;
    last = url;
    return {500, "", std::nullopt, "network access is forbidden in this test"};
  }
  int calls = 0;
  std::string last;
};

class FakeClock : public oa2net::Clock {
 public:
  time_point now() override { return now_; }
  void sleep_for(duration d) override {
    sleeps.push_back(d);
    now_ += d;
  }
  void advance(duration d) { now_ += d; }

  std::vector<duration> sleeps;

 private:
  time_point now_{};
};

struct TableWork {
  const char* id;
  std::vector<std::string> countries;
};

// Table 1 of the co-authorship example: six works and their author countries.
inline std::vector<TableWork> table1() {
  return {
      {"W2001947224", {"SI", "US", "SI"}},
      {"W2021064255", {"ES", "SI", "ES", "ES"}},
      {"W1984191816", {"AU", "SI", "AU", "AU", "AU", "SI"}},
      {"W2096814473", {"SI", "DE", "IT", "IT", "IT", "IT"}},
      {"W2514227811", {"ES", "ES", "ES", "SI", "ES"}},
      {"W1981385379", {"US", "SI", "SI"}},
  };
}

inline std::vector<oa2net::WorkRecord> table1_records() {
  std::vector<oa2net::WorkRecord> out;
  for (const auto& w : table1()) {
    oa2net::WorkRecord r;
    r.id = w.id;
    r.countries = w.countries;
    out.push_back(std::move(r));
  }
  return out;
}

inline oa2net::CoMatrix table1_matrix() { return oa2net::co_matrix_from_works(table1_records()); }

// Random works over a small alphabet of country codes; a share of them are
// single-country works, which the co-authorship matrix must ignore.
inline std::vector<oa2net::WorkRecord> random_works(std::mt19937_64& rng, std::size_t count,
                                                    const std::vector<std::string>& alphabet) {
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::uniform_int_distribution<int> authors(1, 6);
  std::vector<oa2net::WorkRecord> out;
  for (std::size_t i = 0; i < count; ++i) {
    oa2net::WorkRecord r;
    r.id = "W" + std::to_string(1000 + i);
    int a = authors(rng);
    for (int j = 0; j < a; ++j) r.countries.push_back(alphabet[pick(rng)]);
    out.push_back(std::move(r));
  }
  return out;
}

inline oa2net::WeightedNetwork random_undirected(std::mt19937_64& rng, std::size_t n, double density,
                                                 bool integer_weights) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("v" + std::to_string(i + 1));
  oa2net::WeightedNetwork net(labels, oa2net::Directedness::Undirected);
  std::bernoulli_distribution edge(density);
  std::uniform_int_distribution<int> iw(1, 9);
  std::uniform_real_distribution<double> rw(0.1, 10.0);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) {
      if (edge(rng)) {
        net.add_link(oa2net::NodeId(i), oa2net::NodeId(j), integer_weights ? iw(rng) : rw(rng));
      }
    }
  }
  return net;
}

inline const std::vector<std::string>& small_alphabet() {
  static const std::vector<std::string> codes = {"AT", "BR", "CN", "DE", "FR", "GB", "IN", "SI", "US", "ZA"};
  return codes;
}

// Answers country group-by queries from a list of works, the way the API
// would: filter by focal country, optional publication_year and
// countries_distinct_count:>1, then count works per author country, largest
// first, capped at `cap` groups. Years in `failing_years` raise a transport
// error.
class SimulatedGroupApi : public oa2net::GroupCountSource {
 public:
  explicit SimulatedGroupApi(std::vector<oa2net::WorkRecord> works, std::size_t cap = oa2net::kGroupByLimit)
      : works_(std::move(works)), cap_(cap) {}

  std::set<int> failing_years;
  std::size_t calls = 0;

  oa2net::GroupResponse fetch_group_counts(const oa2net::WorksFilter& filter) override {
    ++calls;
    std::string focal;
    std::optional<int> year;
    bool international = false;
    for (const auto& [field, value] : filter.clauses) {
      if (field == "authorships.countries") focal = value;
      if (field == "publication_year") year = std::stoi(value);
      if (field == "countries_distinct_count" && value == ">1") international = true;
    }
    if (year && failing_years.contains(*year)) {
      throw oa2net::Error(oa2net::ErrorKind::Transport, "simulated outage for " + std::to_string(*year));
    }
    std::map<std::string, std::uint64_t> counts;
    for (const auto& w : works_) {
      std::set<std::string> distinct(w.countries.begin(), w.countries.end());
      if (!distinct.contains(focal)) continue;
      if (year && w.publication_year != year) continue;
      if (international && distinct.size() < 2) continue;
      for (const auto& c : distinct) ++counts[c];
    }
    std::vector<oa2net::GroupCount> groups;
    for (const auto& [k, v] : counts) groups.push_back({k, v});
    std::stable_sort(groups.begin(), groups.end(), [](const auto& a, const auto& b) { return a.count > b.count; });
    oa2net::GroupResponse r;
    if (groups.size() > cap_) groups.resize(cap_);
    r.possibly_truncated = groups.size() == cap_;
    r.groups = std::move(groups);
    return r;
  }

 private:
  std::vector<oa2net::WorkRecord> works_;
  std::size_t cap_;
};

}  // namespace testing_support
