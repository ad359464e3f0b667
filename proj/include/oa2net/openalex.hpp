#pragma once

#include <chrono>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace oa2net {

inline constexpr std::string_view kDefaultApiBase = "https://api.openalex.org";
inline constexpr std::size_t kGroupByLimit = 200;

/// Conjunctive list of `field:value` clauses, optionally grouped.
struct WorksFilter {
  std::vector<std::pair<std::string, std::string>> clauses;
  std::optional<std::string> group_by;

  WorksFilter& where(std::string field, std::string value) {
    clauses.emplace_back(std::move(field), std::move(value));
    return *this;
  }
};

struct GroupCount {
  std::string key;
  std::uint64_t count = 0;

  bool operator==(const GroupCount&) const = default;
};

struct GroupResponse {
  std::vector<GroupCount> groups;
  /// Set when the response holds exactly the API's group cap; entries past
  /// the cap may be missing.
  bool possibly_truncated = false;
};

struct WorkRecord {
  std::string id;
  std::optional<int> publication_year;
  std::optional<std::string> type;
  std::optional<std::string> language;
  std::uint64_t cited_by_count = 0;
  std::vector<std::string> referenced_works;
  /// Author country codes in authorship order, repeats kept.
  std::vector<std::string> countries;
  std::vector<std::string> source_ids;
  std::vector<std::string> author_ids;
  std::vector<std::string> keywords;
  std::optional<std::uint64_t> countries_distinct_count;

  bool operator==(const WorkRecord&) const = default;
};

bool is_work_id(std::string_view id);

/// Strips an `https://openalex.org/` style prefix, leaving the short id.
std::string short_openalex_id(std::string_view id);

struct PageRequest {
  std::optional<std::string> cursor;
  std::optional<int> per_page;
};

/// `<base>/works?filter=f1:v1,f2:v2[&group-by=g][&per-page=n][&cursor=c][&mailto=m]`.
/// Throws InvalidArgument on an empty filter or per_page outside [1, 200].
std::string build_query_url(const WorksFilter& filter, const PageRequest& page = {},
                            const std::optional<std::string>& mailto = std::nullopt,
                            std::string_view base_url = kDefaultApiBase);

std::string percent_encode(std::string_view text);

GroupResponse parse_group_response(std::string_view body, const std::string& url);

struct WorksPage {
  std::vector<WorkRecord> records;
  std::size_t skipped = 0;
  std::optional<std::string> next_cursor;
};

WorksPage parse_works_page(std::string_view body, const std::string& url);

/// Normalized one-line JSON form used for works.jsonl files.
std::string work_to_json(const WorkRecord& work);
WorkRecord work_from_json(std::string_view line);

std::vector<WorkRecord> read_works_jsonl(const std::filesystem::path& path);
void write_works_jsonl(std::span<const WorkRecord> works, const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Transport, clock, rate limiting, cache

struct HttpResponse {
  int status = 0;  // 0: no response (connection failure)
  std::string body;
  std::optional<double> retry_after_seconds;
  std::string error;
};

class HttpTransport {
 public:
  virtual ~HttpTransport() = default;
  virtual HttpResponse get(const std::string& url) = 0;
};

/// HTTPS/HTTP GET via cpp-httplib.
std::shared_ptr<HttpTransport> make_http_transport(std::chrono::seconds timeout = std::chrono::seconds(60));

/// Transport that refuses every request; used for cache-only runs.
std::shared_ptr<HttpTransport> make_offline_transport();

class Clock {
 public:
  using time_point = std::chrono::steady_clock::time_point;
  using duration = std::chrono::steady_clock::duration;

  virtual ~Clock() = default;
  virtual time_point now() = 0;
  virtual void sleep_for(duration d) = 0;
};

std::shared_ptr<Clock> make_system_clock();

/// Sliding one-second window: no more than `per_second` acquisitions fall in
/// any half-open one-second interval.
class RateLimiter {
 public:
  RateLimiter(double per_second, std::shared_ptr<Clock> clock);

  void acquire();

 private:
  std::size_t budget_;
  std::chrono::steady_clock::duration window_;
  std::shared_ptr<Clock> clock_;
  std::deque<Clock::time_point> issued_;
};

/// One file per canonical URL, named by its SHA-256, plus a `.meta` sidecar.
class ResponseCache {
 public:
  explicit ResponseCache(std::filesystem::path dir);

  std::optional<std::string> load(const std::string& canonical_url) const;
  void store(const std::string& canonical_url, std::string_view body, int status) const;

  std::filesystem::path body_path(const std::string& canonical_url) const;
  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
};

std::string sha256_hex(std::string_view data);

// ---------------------------------------------------------------------------
// Client

class WorkSource {
 public:
  virtual ~WorkSource() = default;
  virtual std::vector<WorkRecord> fetch_works_by_ids(std::span<const std::string> ids) = 0;
};

class GroupCountSource {
 public:
  virtual ~GroupCountSource() = default;
  virtual GroupResponse fetch_group_counts(const WorksFilter& filter) = 0;
};

struct ClientConfig {
  std::string base_url{kDefaultApiBase};
  std::optional<std::string> mailto;
  double rate_limit = 8.0;
  std::optional<std::filesystem::path> cache_dir;
  bool cache_only = false;
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{500};
};

struct FetchSummary {
  std::size_t records = 0;
  std::size_t skipped = 0;
  std::size_t pages = 0;
};

class OpenAlexClient : public WorkSource, public GroupCountSource {
 public:
  explicit OpenAlexClient(ClientConfig config, std::shared_ptr<HttpTransport> transport = nullptr,
                          std::shared_ptr<Clock> clock = nullptr);

  GroupResponse fetch_group_counts(const WorksFilter& filter) override;

  /// Cursor-paginated listing; `on_record` sees records in API order.
  FetchSummary fetch_works(const WorksFilter& filter, std::optional<std::size_t> limit,
                           const std::function<void(WorkRecord&&)>& on_record);

  std::vector<WorkRecord> fetch_works_by_ids(std::span<const std::string> ids) override;

  /// Body for a canonical URL, from cache when present. Exposed for tests.
  std::string get(const std::string& canonical_url);

  const ClientConfig& config() const { return config_; }

 private:
  template <typename Parse>
  auto get_parsed(const std::string& canonical_url, Parse&& parse);

  std::string fetch_remote(const std::string& canonical_url);

  ClientConfig config_;
  std::shared_ptr<HttpTransport> transport_;
  std::shared_ptr<Clock> clock_;
  std::optional<ResponseCache> cache_;
  std::mutex dispatch_mutex_;
  RateLimiter limiter_;
};

}  // namespace oa2net
