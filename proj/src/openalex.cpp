#include "oa2net/openalex.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_map>

#include <json.hpp>

#include "oa2net/error.hpp"

namespace oa2net {

using nlohmann::json;

namespace {

bool is_field_path(std::string_view field) {
  return !field.empty() && std::all_of(field.begin(), field.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '.' || c == '_' || c == '-';
  });
}

std::string parse_context(const std::string& url) { return " (url: " + url + ")"; }

json parse_json(std::string_view body, const std::string& url) {
  try {
    return json::parse(body);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::Parse, std::string("malformed JSON: ") + e.what() + parse_context(url));
  }
}

std::optional<std::string> opt_string(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) return std::nullopt;
  return it->get<std::string>();
}

std::vector<std::string> string_list(const json& obj, const char* key, bool shorten) {
  std::vector<std::string> out;
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_array()) return out;
  for (const auto& v : *it) {
    if (!v.is_string()) continue;
    out.push_back(shorten ? short_openalex_id(v.get<std::string>()) : v.get<std::string>());
  }
  return out;
}

std::uint64_t distinct_count(const std::vector<std::string>& codes) {
  return std::set<std::string>(codes.begin(), codes.end()).size();
}

// Parses one raw OpenAlex work object. Returns nullopt when the id is missing
// or malformed.
std::optional<WorkRecord> parse_api_work(const json& obj) {
  if (!obj.is_object()) return std::nullopt;
  auto raw_id = opt_string(obj, "id");
  if (!raw_id) return std::nullopt;
  WorkRecord w;
  w.id = short_openalex_id(*raw_id);
  if (!is_work_id(w.id)) return std::nullopt;

  if (auto it = obj.find("publication_year"); it != obj.end() && it->is_number_integer()) {
    w.publication_year = it->get<int>();
  }
  w.type = opt_string(obj, "type");
  w.language = opt_string(obj, "language");
  if (auto it = obj.find("cited_by_count"); it != obj.end() && it->is_number_unsigned()) {
    w.cited_by_count = it->get<std::uint64_t>();
  }
  w.referenced_works = string_list(obj, "referenced_works", true);

  if (auto it = obj.find("authorships"); it != obj.end() && it->is_array()) {
    for (const auto& a : *it) {
      if (!a.is_object()) continue;
      for (auto& c : string_list(a, "countries", false)) w.countries.push_back(std::move(c));
      if (auto au = a.find("author"); au != a.end() && au->is_object()) {
        if (auto id = opt_string(*au, "id")) w.author_ids.push_back(short_openalex_id(*id));
      }
    }
  }
  if (auto loc = obj.find("primary_location"); loc != obj.end() && loc->is_object()) {
    if (auto src = loc->find("source"); src != loc->end() && src->is_object()) {
      if (auto id = opt_string(*src, "id")) w.source_ids.push_back(short_openalex_id(*id));
    }
  }
  if (auto it = obj.find("keywords"); it != obj.end() && it->is_array()) {
    for (const auto& k : *it) {
      if (k.is_string()) {
        w.keywords.push_back(k.get<std::string>());
      } else if (k.is_object()) {
        if (auto name = opt_string(k, "display_name")) {
          w.keywords.push_back(*name);
        } else if (auto id = opt_string(k, "id")) {
          w.keywords.push_back(short_openalex_id(*id));
        }
      }
    }
  }
  if (auto it = obj.find("countries_distinct_count"); it != obj.end() && it->is_number_unsigned()) {
    w.countries_distinct_count = it->get<std::uint64_t>();
  }
  // Keep the record self-consistent: the distinct count follows the country list.
  if (w.countries_distinct_count && !w.countries.empty()) {
    w.countries_distinct_count = distinct_count(w.countries);
  }
  return w;
}

std::string iso_utc_now() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view data) {
  static std::atomic<unsigned> counter{0};
  std::ostringstream suffix;
  suffix << ".tmp." << std::this_thread::get_id() << '.' << counter++;
  auto tmp = path;
  tmp += suffix.str();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::Io, "cannot write " + tmp.string());
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) fail(ErrorKind::Io, "short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    fail(ErrorKind::Io, "cannot rename into " + path.string());
  }
}

class SystemClock final : public Clock {
 public:
  time_point now() override { return std::chrono::steady_clock::now(); }
  void sleep_for(duration d) override { std::this_thread::sleep_for(d); }
};

class OfflineTransport final : public HttpTransport {
 public:
  HttpResponse get(const std::string& url) override {
    fail(ErrorKind::Transport, "network access disabled (cache-only mode): " + url);
  }
};

}  // namespace

bool is_work_id(std::string_view id) {
  return id.size() >= 2 && id.front() == 'W' &&
         std::all_of(id.begin() + 1, id.end(), [](unsigned char c) { return std::isdigit(c); });
}

std::string short_openalex_id(std::string_view id) {
  auto slash = id.rfind('/');
  return std::string(slash == std::string_view::npos ? id : id.substr(slash + 1));
}

std::string percent_encode(std::string_view text) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  out.reserve(text.size());
  for (unsigned char c : text) {
    if (std::isalnum(c) || c == '-' || c == '.' || c == '_' || c == '~' || c == '@' || c == '*') {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(kHex[c >> 4]);
      out.push_back(kHex[c & 0xF]);
    }
  }
  return out;
}

std::string build_query_url(const WorksFilter& filter, const PageRequest& page,
                            const std::optional<std::string>& mailto, std::string_view base_url) {
  if (filter.clauses.empty()) fail(ErrorKind::InvalidArgument, "works filter has no clauses");
  if (page.per_page && (*page.per_page < 1 || *page.per_page > 200)) {
    fail(ErrorKind::InvalidArgument, "per-page must be in [1, 200]");
  }
  std::string url(base_url);
  while (!url.empty() && url.back() == '/') url.pop_back();
  url += "/works?filter=";
  bool first = true;
  for (const auto& [field, value] : filter.clauses) {
    if (!is_field_path(field)) fail(ErrorKind::InvalidArgument, "invalid filter field \"" + field + "\"");
    if (!first) url += ',';
    first = false;
    url += field;
    url += ':';
    url += percent_encode(value);
  }
  if (filter.group_by) {
    if (!is_field_path(*filter.group_by)) {
      fail(ErrorKind::InvalidArgument, "invalid group-by field \"" + *filter.group_by + "\"");
    }
    url += "&group-by=" + *filter.group_by;
  }
  if (page.per_page) url += "&per-page=" + std::to_string(*page.per_page);
  if (page.cursor) url += "&cursor=" + percent_encode(*page.cursor);
  if (mailto && !mailto->empty()) url += "&mailto=" + percent_encode(*mailto);
  return url;
}

GroupResponse parse_group_response(std::string_view body, const std::string& url) {
  json doc = parse_json(body, url);
  if (!doc.is_object()) fail(ErrorKind::Parse, "group-by response is not an object" + parse_context(url));
  auto it = doc.find("group_by");
  if (it == doc.end() || !it->is_array()) {
    fail(ErrorKind::Parse, "group-by response lacks a group_by array" + parse_context(url));
  }
  GroupResponse out;
  std::set<std::string> seen;
  for (const auto& g : *it) {
    if (!g.is_object()) fail(ErrorKind::Parse, "group entry is not an object" + parse_context(url));
    auto key = opt_string(g, "key");
    auto count = g.find("count");
    if (!key || count == g.end() || !count->is_number_integer() || count->get<std::int64_t>() < 0) {
      fail(ErrorKind::Parse, "group entry needs a key and a non-negative count" + parse_context(url));
    }
    std::string short_key = short_openalex_id(*key);
    if (!seen.insert(short_key).second) {
      fail(ErrorKind::Parse, "duplicate group key " + short_key + parse_context(url));
    }
    out.groups.push_back({short_key, count->get<std::uint64_t>()});
  }
  out.possibly_truncated = out.groups.size() == kGroupByLimit;
  return out;
}

WorksPage parse_works_page(std::string_view body, const std::string& url) {
  json doc = parse_json(body, url);
  if (!doc.is_object()) fail(ErrorKind::Parse, "works response is not an object" + parse_context(url));
  auto results = doc.find("results");
  if (results == doc.end() || !results->is_array()) {
    fail(ErrorKind::Parse, "works response lacks a results array" + parse_context(url));
  }
  WorksPage page;
  for (const auto& r : *results) {
    if (auto w = parse_api_work(r)) {
      page.records.push_back(std::move(*w));
    } else {
      ++page.skipped;
    }
  }
  if (auto meta = doc.find("meta"); meta != doc.end() && meta->is_object()) {
    page.next_cursor = opt_string(*meta, "next_cursor");
  }
  return page;
}

std::string work_to_json(const WorkRecord& w) {
  json j;
  j["id"] = w.id;
  j["publication_year"] = w.publication_year ? json(*w.publication_year) : json(nullptr);
  j["type"] = w.type ? json(*w.type) : json(nullptr);
  j["language"] = w.language ? json(*w.language) : json(nullptr);
  j["cited_by_count"] = w.cited_by_count;
  j["referenced_works"] = w.referenced_works;
  j["countries"] = w.countries;
  j["source_ids"] = w.source_ids;
  j["author_ids"] = w.author_ids;
  j["keywords"] = w.keywords;
  j["countries_distinct_count"] =
      w.countries_distinct_count ? json(*w.countries_distinct_count) : json(nullptr);
  return j.dump();
}

WorkRecord work_from_json(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::Parse, std::string("malformed work record: ") + e.what());
  }
  if (!j.is_object()) fail(ErrorKind::Parse, "work record is not an object");
  WorkRecord w;
  auto id = opt_string(j, "id");
  if (!id || !is_work_id(*id)) fail(ErrorKind::Parse, "work record lacks a valid id");
  w.id = *id;
  try {
    if (j.contains("publication_year") && !j["publication_year"].is_null()) {
      w.publication_year = j["publication_year"].get<int>();
    }
    w.type = opt_string(j, "type");
    w.language = opt_string(j, "language");
    w.cited_by_count = j.value("cited_by_count", std::uint64_t{0});
    w.referenced_works = string_list(j, "referenced_works", false);
    w.countries = string_list(j, "countries", false);
    w.source_ids = string_list(j, "source_ids", false);
    w.author_ids = string_list(j, "author_ids", false);
    w.keywords = string_list(j, "keywords", false);
    if (j.contains("countries_distinct_count") && !j["countries_distinct_count"].is_null()) {
      w.countries_distinct_count = j["countries_distinct_count"].get<std::uint64_t>();
    }
  } catch (const json::exception& e) {
    fail(ErrorKind::Parse, "work " + w.id + ": " + e.what());
  }
  return w;
}

std::vector<WorkRecord> read_works_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open " + path.string());
  std::vector<WorkRecord> works;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    try {
      works.push_back(work_from_json(line));
    } catch (const Error& e) {
      fail(e.kind(), path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return works;
}

void write_works_jsonl(std::span<const WorkRecord> works, const std::filesystem::path& path) {
  std::string data;
  for (const auto& w : works) {
    data += work_to_json(w);
    data += '\n';
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::Io, "cannot write " + path.string());
  out << data;
}

std::shared_ptr<HttpTransport> make_offline_transport() { return std::make_shared<OfflineTransport>(); }

std::shared_ptr<Clock> make_system_clock() { return std::make_shared<SystemClock>(); }

RateLimiter::RateLimiter(double per_second, std::shared_ptr<Clock> clock)
    : window_(std::chrono::seconds(1)), clock_(std::move(clock)) {
  if (!(per_second >= 1.0)) fail(ErrorKind::InvalidArgument, "rate limit must be >= 1 request/s");
  budget_ = static_cast<std::size_t>(std::floor(per_second));
}

void RateLimiter::acquire() {
  auto now = clock_->now();
  while (issued_.size() >= budget_) {
    auto oldest = issued_.front();
    if (now - oldest >= window_) {
      issued_.pop_front();
      continue;
    }
    clock_->sleep_for(oldest + window_ - now);
    now = clock_->now();
  }
  issued_.push_back(now);
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    fail(ErrorKind::InvalidArgument, "SHA-256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

ResponseCache::ResponseCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path ResponseCache::body_path(const std::string& canonical_url) const {
  return dir_ / (sha256_hex(canonical_url) + ".json");
}

std::optional<std::string> ResponseCache::load(const std::string& canonical_url) const {
  std::ifstream in(body_path(canonical_url), std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void ResponseCache::store(const std::string& canonical_url, std::string_view body, int status) const {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) fail(ErrorKind::Io, "cannot create cache directory " + dir_.string());
  auto path = body_path(canonical_url);
  write_file_atomic(path, body);
  auto meta = path;
  meta.replace_extension(".meta");
  write_file_atomic(meta, "url=" + canonical_url + "\nstatus=" + std::to_string(status) +
                              "\nfetched_at=" + iso_utc_now() + "\n");
}

OpenAlexClient::OpenAlexClient(ClientConfig config, std::shared_ptr<HttpTransport> transport,
                               std::shared_ptr<Clock> clock)
    : config_(std::move(config)),
      transport_(std::move(transport)),
      clock_(clock ? std::move(clock) : make_system_clock()),
      limiter_(config_.rate_limit, clock_) {
  if (config_.max_attempts < 1) fail(ErrorKind::InvalidArgument, "max_attempts must be >= 1");
  if (config_.cache_only) {
    transport_ = make_offline_transport();
  } else if (!transport_) {
    transport_ = make_http_transport();
  }
  if (config_.cache_dir) cache_.emplace(*config_.cache_dir);
}

std::string OpenAlexClient::fetch_remote(const std::string& canonical_url) {
  if (config_.cache_only) {
    fail(ErrorKind::Transport, "cache miss in cache-only mode: " + canonical_url);
  }
  std::string url = canonical_url;
  if (config_.mailto && !config_.mailto->empty()) url += "&mailto=" + percent_encode(*config_.mailto);

  std::lock_guard lock(dispatch_mutex_);
  auto backoff = std::chrono::duration<double>(config_.initial_backoff);
  std::string last_problem;
  for (int attempt = 1; attempt <= config_.max_attempts; ++attempt) {
    limiter_.acquire();
    HttpResponse resp = transport_->get(url);
    if (resp.status == 200) return std::move(resp.body);
    bool retryable = resp.status == 0 || resp.status == 429 || resp.status >= 500;
    last_problem = resp.status == 0 ? "no response (" + resp.error + ")"
                                    : "HTTP " + std::to_string(resp.status);
    if (!retryable) break;
    if (attempt < config_.max_attempts) {
      std::chrono::duration<double> wait =
          resp.retry_after_seconds ? std::chrono::duration<double>(*resp.retry_after_seconds) : backoff;
      clock_->sleep_for(std::chrono::duration_cast<Clock::duration>(wait));
      backoff *= 2;
    }
  }
  fail(ErrorKind::Transport, last_problem + " for " + canonical_url);
}

template <typename Parse>
auto OpenAlexClient::get_parsed(const std::string& canonical_url, Parse&& parse) {
  if (cache_) {
    if (auto body = cache_->load(canonical_url)) return parse(*body, canonical_url);
  }
  std::string body = fetch_remote(canonical_url);
  auto parsed = parse(body, canonical_url);
  if (cache_) cache_->store(canonical_url, body, 200);
  return parsed;
}

std::string OpenAlexClient::get(const std::string& canonical_url) {
  return get_parsed(canonical_url, [](const std::string& body, const std::string&) { return body; });
}

GroupResponse OpenAlexClient::fetch_group_counts(const WorksFilter& filter) {
  if (!filter.group_by) fail(ErrorKind::Precondition, "fetch_group_counts needs a group-by field");
  auto url = build_query_url(filter, {}, std::nullopt, config_.base_url);
  return get_parsed(url, [](const std::string& body, const std::string& u) {
    return parse_group_response(body, u);
  });
}

FetchSummary OpenAlexClient::fetch_works(const WorksFilter& filter, std::optional<std::size_t> limit,
                                         const std::function<void(WorkRecord&&)>& on_record) {
  if (filter.group_by) fail(ErrorKind::Precondition, "fetch_works does not accept a group-by field");
  FetchSummary summary;
  if (limit && *limit == 0) return summary;
  std::string cursor = "*";
  while (true) {
    auto url = build_query_url(filter, {cursor, 200}, std::nullopt, config_.base_url);
    WorksPage page = get_parsed(url, [](const std::string& body, const std::string& u) {
      return parse_works_page(body, u);
    });
    ++summary.pages;
    summary.skipped += page.skipped;
    for (auto& record : page.records) {
      if (limit && summary.records >= *limit) return summary;
      on_record(std::move(record));
      ++summary.records;
    }
    if (limit && summary.records >= *limit) return summary;
    if (!page.next_cursor || (page.records.empty() && page.skipped == 0)) return summary;
    cursor = *page.next_cursor;
  }
}

std::vector<WorkRecord> OpenAlexClient::fetch_works_by_ids(std::span<const std::string> ids) {
  constexpr std::size_t kChunk = 50;
  std::unordered_map<std::string, WorkRecord> found;
  for (std::size_t start = 0; start < ids.size(); start += kChunk) {
    std::string joined;
    for (std::size_t i = start; i < std::min(ids.size(), start + kChunk); ++i) {
      if (!joined.empty()) joined += '|';
      joined += ids[i];
    }
    WorksFilter filter;
    filter.where("ids.openalex", joined);
    fetch_works(filter, std::nullopt, [&](WorkRecord&& w) {
      auto id = w.id;
      found.try_emplace(std::move(id), std::move(w));
    });
  }
  std::vector<WorkRecord> out;
  for (const auto& id : ids) {
    if (auto it = found.find(id); it != found.end()) out.push_back(it->second);
  }
  return out;
}

}  // namespace oa2net
