// oa2net command line front end. Talks to the library only through the C API.
#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "oa2net/oa2net.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;
constexpr int kExitTransport = 3;
constexpr int kExitData = 4;
constexpr int kExitDomain = 5;

struct CliError : std::runtime_error {
  CliError(int code, std::string kind, const std::string& message, std::string hint = {})
      : std::runtime_error(message), code(code), kind(std::move(kind)), hint(std::move(hint)) {}
  int code;
  std::string kind;
  std::string hint;
};

int exit_code_for(oa2net_status status) {
  switch (status) {
    case OA2NET_OK: return 0;
    case OA2NET_ERR_INVALID_ARGUMENT: return kExitUsage;
    case OA2NET_ERR_TRANSPORT: return kExitTransport;
    case OA2NET_ERR_IO:
    case OA2NET_ERR_PARSE: return kExitData;
    case OA2NET_ERR_INVALID_NODE:
    case OA2NET_ERR_PRECONDITION:
    case OA2NET_ERR_DOMAIN: return kExitDomain;
    case OA2NET_ERR_INTERNAL: return kExitInternal;
  }
  return kExitInternal;
}

void check(oa2net_status status) {
  if (status != OA2NET_OK) throw CliError(exit_code_for(status), oa2net_status_name(status), oa2net_last_error());
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
template <typename T, void (*Free)(T*)>
using Handle = std::unique_ptr<T, Deleter<T, Free>>;

using Network = Handle<oa2net_network, oa2net_network_free>;
using Cores = Handle<oa2net_cores, oa2net_cores_free>;
using CoMatrix = Handle<oa2net_comatrix, oa2net_comatrix_free>;
using Matrix = Handle<oa2net_matrix, oa2net_matrix_free>;
using Dissimilarity = Handle<oa2net_dissimilarity, oa2net_dissimilarity_free>;
using Dendrogram = Handle<oa2net_dendrogram, oa2net_dendrogram_free>;
using Client = Handle<oa2net_client, oa2net_client_free>;
using Works = Handle<oa2net_works, oa2net_works_free>;
using WorkList = Handle<oa2net_worklist, oa2net_worklist_free>;
using Series = Handle<oa2net_series, oa2net_series_free>;

// Takes ownership of a malloc'd buffer from the library.
template <typename T>
struct Buffer {
  T* data = nullptr;
  std::size_t size = 0;
  ~Buffer() { oa2net_free(data); }
};

struct Options {
  std::string out = ".";
  std::string cache;
  std::string mailto;
  std::string api_base;
  double rate = 8.0;
  bool cache_only = false;
  int max_attempts = 3;

  std::string in;
  std::optional<int> year;

  // fetch-works
  std::vector<std::string> filters;
  std::string ids;
  std::optional<std::int64_t> limit;
  // saturate
  std::string seed;
  std::size_t threshold = 0;
  std::size_t max_steps = 1;
  bool print_table = false;
  // build-collection
  bool include_cited = false;
  // coauth
  std::optional<int> from;
  std::optional<int> to;
  std::vector<std::string> countries;
  bool international_only = false;
  bool loops = false;
  // skeleton
  std::size_t k = 1;
  std::optional<double> cut;
  bool merge_mutual = false;
  std::string transform = "none";
  // normalize
  std::string method;
  bool log = false;
  // cluster
  std::string matrix = "co";
  std::string linkage = "ward";
  std::size_t clusters = 13;
};

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

class Manifest {
 public:
  Manifest(std::string command, fs::path out) : command_(std::move(command)), out_(std::move(out)) {}

  void config(const std::string& key, const std::string& value) { config_.emplace_back(key, value); }
  void input(const fs::path& path) { inputs_.push_back(entry(path)); }
  void output(const fs::path& path) { outputs_.push_back(entry(path)); }
  void note(const std::string& key, const std::string& value) { notes_.emplace_back(key, value); }

  void write(const CliError* error) const {
    std::ostringstream os;
    os << "tool=oa2net\n";
    os << "version=" << oa2net_version() << "\n";
    os << "command=" << command_ << "\n";
    for (const auto& [k, v] : config_) os << "config." << k << "=" << v << "\n";
    for (const auto& [k, v] : inputs_) os << "input." << k << "=sha256:" << v << "\n";
    for (const auto& [k, v] : outputs_) os << "output." << k << "=sha256:" << v << "\n";
    for (const auto& [k, v] : notes_) os << "result." << k << "=" << v << "\n";
    if (error) {
      os << "status=error\n";
      os << "error.kind=" << error->kind << "\n";
      os << "error.exit_code=" << error->code << "\n";
    } else {
      os << "status=ok\n";
    }
    std::error_code ec;
    fs::create_directories(out_, ec);
    std::ofstream f(out_ / (command_ + ".manifest"), std::ios::binary | std::ios::trunc);
    f << os.str();
  }

 private:
  std::pair<std::string, std::string> entry(const fs::path& path) const {
    char hex[65] = {};
    check(oa2net_sha256_file(path.string().c_str(), hex));
    return {display(path), hex};
  }

  // Paths under the output directory are recorded relative to it so that
  // manifests do not depend on where the run happened.
  std::string display(const fs::path& path) const {
    auto p = fs::absolute(path).lexically_normal();
    auto base = fs::absolute(out_).lexically_normal();
    auto rel = p.lexically_relative(base);
    if (!rel.empty() && *rel.begin() != "..") return rel.generic_string();
    return path.generic_string();
  }

  std::string command_;
  fs::path out_;
  std::vector<std::pair<std::string, std::string>> config_;
  std::vector<std::pair<std::string, std::string>> inputs_;
  std::vector<std::pair<std::string, std::string>> outputs_;
  std::vector<std::pair<std::string, std::string>> notes_;
};

fs::path resolve_existing(const std::string& given, const fs::path& out, const std::string& hint) {
  fs::path p(given);
  if (fs::exists(p)) return p;
  if (p.is_relative() && fs::exists(out / p)) return out / p;
  throw CliError(kExitUsage, "missing_stage", given + " not found (looked in . and " + out.string() + ")", hint);
}

std::string coauth_hint(std::optional<int> year) {
  std::string y = year ? std::to_string(*year) : "<year>";
  return "run `oa2net coauth --from " + y + " --to " + y + "` first";
}

// Stage input for the co-authorship pipeline: --in, else co_<year><ext>,
// else the single co_<year><ext> present in the output directory.
fs::path co_stage_input(const Options& o, const std::string& ext) {
  fs::path out(o.out);
  if (!o.in.empty()) return resolve_existing(o.in, out, coauth_hint(o.year));
  if (o.year) return resolve_existing("co_" + std::to_string(*o.year) + ext, out, coauth_hint(o.year));
  std::vector<fs::path> found;
  std::regex pattern("co_[0-9]{4}" + std::regex_replace(ext, std::regex(R"(\.)"), R"(\.)"));
  if (fs::is_directory(out)) {
    for (const auto& entry : fs::directory_iterator(out)) {
      if (entry.is_regular_file() && std::regex_match(entry.path().filename().string(), pattern)) {
        found.push_back(entry.path());
      }
    }
  }
  std::sort(found.begin(), found.end());
  if (found.empty()) {
    throw CliError(kExitUsage, "missing_stage", "no co_<year>" + ext + " in " + out.string(), coauth_hint(o.year));
  }
  if (found.size() > 1) {
    std::string names;
    for (const auto& f : found) names += (names.empty() ? "" : ", ") + f.filename().string();
    throw CliError(kExitUsage, "usage", "several stage files found (" + names + ")", "pass --in or --year");
  }
  return found.front();
}

std::string stem_of(const fs::path& path) { return path.stem().string(); }

void record_client_config(const Options& o, Manifest& m) {
  m.config("api_base", o.api_base.empty() ? "https://api.openalex.org" : o.api_base);
  m.config("cache", o.cache);
  m.config("cache_only", o.cache_only ? "true" : "false");
  m.config("rate", format_double(o.rate));
  m.config("max_attempts", std::to_string(o.max_attempts));
  m.config("mailto_set", o.mailto.empty() ? "false" : "true");
}

Client make_client(const Options& o, Manifest& m) {
  if (o.cache_only && o.cache.empty()) {
    throw CliError(kExitUsage, "usage", "--cache-only needs a cache directory", "pass --cache or set OA2NET_CACHE");
  }
  record_client_config(o, m);
  oa2net_client_config cfg;
  oa2net_client_config_init(&cfg);
  if (!o.api_base.empty()) cfg.base_url = o.api_base.c_str();
  if (!o.mailto.empty()) cfg.mailto = o.mailto.c_str();
  if (!o.cache.empty()) cfg.cache_dir = o.cache.c_str();
  cfg.rate_limit = o.rate;
  cfg.cache_only = o.cache_only ? 1 : 0;
  cfg.max_attempts = o.max_attempts;
  oa2net_client* raw = nullptr;
  check(oa2net_client_create(&cfg, &raw));
  return Client(raw);
}

Network read_network(const fs::path& path) {
  oa2net_network* raw = nullptr;
  check(oa2net_network_read(path.string().c_str(), &raw));
  return Network(raw);
}

CoMatrix read_co(const fs::path& path) {
  oa2net_comatrix* raw = nullptr;
  check(oa2net_comatrix_read_csv(path.string().c_str(), &raw));
  return CoMatrix(raw);
}

std::string path_str(const fs::path& p) { return p.string(); }

// ---- subcommands ---------------------------------------------------------

void run_fetch_works(const Options& o, Manifest& m) {
  fs::path out(o.out);
  if (o.filters.empty() && o.ids.empty()) {
    throw CliError(kExitUsage, "usage", "nothing to fetch", "pass --filter field:value or --ids <work list>");
  }
  auto client = make_client(o, m);
  oa2net_works* raw = nullptr;
  std::size_t skipped = 0;
  if (!o.ids.empty()) {
    auto ids_path = resolve_existing(o.ids, out, "run `oa2net saturate` first or pass an existing work list");
    m.input(ids_path);
    oa2net_worklist* list = nullptr;
    check(oa2net_worklist_read(path_str(ids_path).c_str(), &list));
    WorkList ids(list);
    check(oa2net_works_fetch_list(client.get(), ids.get(), &raw));
  } else {
    std::vector<std::string> fields;
    std::vector<std::string> values;
    for (const auto& f : o.filters) {
      auto colon = f.find(':');
      if (colon == std::string::npos || colon == 0 || colon + 1 == f.size()) {
        throw CliError(kExitUsage, "usage", "malformed filter \"" + f + "\"", "use field:value");
      }
      fields.push_back(f.substr(0, colon));
      values.push_back(f.substr(colon + 1));
      m.config("filter." + fields.back(), values.back());
    }
    std::vector<const char*> fp;
    std::vector<const char*> vp;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      fp.push_back(fields[i].c_str());
      vp.push_back(values[i].c_str());
    }
    if (o.limit) m.config("limit", std::to_string(*o.limit));
    check(oa2net_works_fetch(client.get(), fp.data(), vp.data(), fields.size(), o.limit.value_or(-1), &raw,
                             &skipped));
  }
  Works works(raw);
  fs::create_directories(out);
  auto path = out / "works.jsonl";
  check(oa2net_works_write_jsonl(works.get(), path_str(path).c_str()));
  m.output(path);
  m.note("works", std::to_string(oa2net_works_count(works.get())));
  m.note("skipped", std::to_string(skipped));
  std::cerr << "fetched " << oa2net_works_count(works.get()) << " works";
  if (skipped) std::cerr << " (" << skipped << " records without a valid id skipped)";
  std::cerr << "\n";
}

void run_saturate(const Options& o, Manifest& m) {
  fs::path out(o.out);
  if (!o.print_table && o.threshold < 1) {
    throw CliError(kExitUsage, "usage", "--threshold is required", "pass --threshold N (N >= 1) or --print-table");
  }
  auto seed_path = resolve_existing(o.seed, out, "pass an existing work list with --seed");
  m.input(seed_path);
  auto client = make_client(o, m);
  oa2net_worklist* raw = nullptr;
  check(oa2net_worklist_read(path_str(seed_path).c_str(), &raw));
  WorkList current(raw);
  fs::create_directories(out);

  if (o.print_table) {
    m.config("print_table", "true");
    oa2net_worklist* next = nullptr;
    int converged = 0;
    char* table = nullptr;
    check(oa2net_saturation_step(client.get(), current.get(), std::numeric_limits<std::size_t>::max(), &next,
                                 &converged, &table));
    WorkList ignored(next);
    std::unique_ptr<char, decltype(&oa2net_free)> csv(table, &oa2net_free);
    auto path = out / "expansion.csv";
    std::ofstream(path, std::ios::binary) << csv.get();
    m.output(path);
    std::cout << csv.get();
    return;
  }

  m.config("threshold", std::to_string(o.threshold));
  m.config("max_steps", std::to_string(o.max_steps));
  bool converged_any = false;
  std::size_t steps = 0;
  for (std::size_t step = 1; step <= o.max_steps; ++step) {
    oa2net_worklist* next = nullptr;
    int converged = 0;
    char* table = nullptr;
    check(oa2net_saturation_step(client.get(), current.get(), o.threshold, &next, &converged, &table));
    std::unique_ptr<char, decltype(&oa2net_free)> csv(table, &oa2net_free);
    WorkList grown(next);
    auto table_path = out / ("expansion_" + std::to_string(step) + ".csv");
    std::ofstream(table_path, std::ios::binary) << csv.get();
    m.output(table_path);
    std::cerr << "step " << step << ": " << oa2net_worklist_count(current.get()) << " -> "
              << oa2net_worklist_count(grown.get()) << " works\n";
    current = std::move(grown);
    steps = step;
    if (converged) {
      converged_any = true;
      break;
    }
  }
  auto list_path = out / "worklist.csv";
  check(oa2net_worklist_write(current.get(), path_str(list_path).c_str()));
  m.output(list_path);
  m.note("steps", std::to_string(steps));
  m.note("converged", converged_any ? "true" : "false");
  m.note("works", std::to_string(oa2net_worklist_count(current.get())));
  std::cerr << (converged_any ? "converged" : "not converged; run saturate again on worklist.csv") << "\n";
}

void run_build_collection(const Options& o, Manifest& m) {
  fs::path out(o.out);
  auto in = resolve_existing(o.in.empty() ? "works.jsonl" : o.in, out, "run `oa2net fetch-works` first");
  m.input(in);
  m.config("include_cited", o.include_cited ? "true" : "false");
  oa2net_works* raw = nullptr;
  check(oa2net_works_read_jsonl(path_str(in).c_str(), &raw));
  Works works(raw);
  auto dir = out / "collection";
  check(oa2net_collection_write(works.get(), o.include_cited ? 1 : 0, path_str(dir).c_str()));
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) m.output(f);
}

void run_coauth(const Options& o, Manifest& m) {
  fs::path out(o.out);
  if (!o.from || !o.to) throw CliError(kExitUsage, "usage", "--from and --to are required");
  if (*o.from > *o.to) throw CliError(kExitUsage, "usage", "--from must not be after --to");
  auto client = make_client(o, m);
  m.config("from", std::to_string(*o.from));
  m.config("to", std::to_string(*o.to));
  std::string scope;
  for (const auto& c : o.countries) scope += (scope.empty() ? "" : ",") + c;
  m.config("countries", scope.empty() ? "all" : scope);
  m.config("international_only", o.international_only ? "true" : "false");
  m.config("loops", o.loops ? "true" : "false");

  std::vector<const char*> codes;
  for (const auto& c : o.countries) codes.push_back(c.c_str());
  oa2net_series* raw = nullptr;
  check(oa2net_coauth_series(client.get(), *o.from, *o.to, codes.empty() ? nullptr : codes.data(), codes.size(),
                             o.international_only ? 1 : 0, &raw));
  Series series(raw);
  fs::create_directories(out);

  for (std::size_t i = 0; i < oa2net_series_year_count(series.get()); ++i) {
    int year = oa2net_series_year(series.get(), i);
    oa2net_comatrix* co_raw = nullptr;
    check(oa2net_series_matrix(series.get(), year, &co_raw));
    CoMatrix co(co_raw);
    auto csv = out / ("co_" + std::to_string(year) + ".csv");
    auto net_path = out / ("co_" + std::to_string(year) + ".net");
    check(oa2net_comatrix_write_csv(co.get(), path_str(csv).c_str()));
    oa2net_network* net_raw = nullptr;
    check(oa2net_comatrix_to_network(co.get(), o.loops ? 1 : 0, &net_raw));
    Network net(net_raw);
    check(oa2net_network_write(net.get(), path_str(net_path).c_str()));
    m.output(csv);
    m.output(net_path);
    std::cerr << year << ": " << oa2net_comatrix_size(co.get()) << " countries\n";
  }
  for (std::size_t i = 0; i < oa2net_series_warning_count(series.get()); ++i) {
    std::cerr << "warning: " << oa2net_series_warning(series.get(), i) << "\n";
  }
  m.note("warnings", std::to_string(oa2net_series_warning_count(series.get())));
  m.note("dropped_codes", std::to_string(oa2net_series_dropped_codes(series.get())));
  m.note("truncated_responses", std::to_string(oa2net_series_truncated_responses(series.get())));
  if (oa2net_series_truncated_responses(series.get()) > 0) {
    std::cerr << "warning: " << oa2net_series_truncated_responses(series.get())
              << " group-by responses hit the 200-group cap; missing cells were completed from partners\n";
  }

  std::size_t failures = oa2net_series_failure_count(series.get());
  m.note("failed_years", std::to_string(failures));
  if (failures > 0) {
    std::string message;
    int code = kExitInternal;
    std::string kind;
    for (std::size_t i = 0; i < failures; ++i) {
      int year = 0;
      oa2net_status status = OA2NET_OK;
      const char* text = nullptr;
      check(oa2net_series_failure(series.get(), i, &year, &status, &text));
      if (i == 0) {
        code = exit_code_for(status);
        kind = oa2net_status_name(status);
      }
      message += (message.empty() ? "" : "; ") + std::to_string(year) + ": " + text;
    }
    throw CliError(code, kind, std::to_string(failures) + " year(s) failed: " + message,
                   "rerun the failed years once the cause is fixed; finished years were written");
  }
}

void run_cores(const Options& o, Manifest& m) {
  fs::path out(o.out);
  auto in = co_stage_input(o, ".net");
  m.input(in);
  auto net = read_network(in);
  oa2net_cores* raw = nullptr;
  check(oa2net_cores_compute(net.get(), &raw));
  Cores cores(raw);
  fs::create_directories(out);
  auto vec = out / (stem_of(in) + ".cores.vec");
  auto csv = out / (stem_of(in) + ".cores.csv");
  check(oa2net_cores_write(cores.get(), path_str(vec).c_str(), path_str(csv).c_str()));
  m.output(vec);
  m.output(csv);

  double top = 0.0;
  std::size_t n = oa2net_cores_count(cores.get());
  for (std::size_t v = 1; v <= n; ++v) top = std::max(top, oa2net_cores_level(cores.get(), v));
  std::cout << "main core (level " << format_double(top) << "):";
  for (std::size_t v = 1; v <= n; ++v) {
    if (oa2net_cores_level(cores.get(), v) == top) std::cout << " " << oa2net_network_label(net.get(), v);
  }
  std::cout << "\n";
}

std::optional<oa2net_transform> parse_transform(const std::string& name) {
  if (name == "sqrt") return OA2NET_TRANSFORM_SQRT;
  if (name == "log2") return OA2NET_TRANSFORM_LOG2;
  return std::nullopt;
}

void run_skeleton(const Options& o, Manifest& m) {
  fs::path out(o.out);
  auto in = co_stage_input(o, ".net");
  m.input(in);
  m.config("transform", o.transform);
  auto net = read_network(in);
  if (auto fn = parse_transform(o.transform)) {
    oa2net_network* raw = nullptr;
    check(oa2net_network_transform(net.get(), *fn, &raw));
    net.reset(raw);
  }
  fs::create_directories(out);
  oa2net_network* raw = nullptr;
  if (o.cut) {
    m.config("cut", format_double(*o.cut));
    check(oa2net_link_cut(net.get(), *o.cut, &raw));
    Network cut(raw);
    auto path = out / (stem_of(in) + ".cut.net");
    check(oa2net_network_write(cut.get(), path_str(path).c_str()));
    m.output(path);
    return;
  }
  m.config("k", std::to_string(o.k));
  m.config("merge_mutual", o.merge_mutual ? "true" : "false");
  check(oa2net_skeleton_k_neighbor(net.get(), o.k, &raw));
  Network skel(raw);
  auto path = out / (stem_of(in) + ".skeleton.net");
  auto mutual = out / (stem_of(in) + ".skeleton.mutual.csv");
  check(oa2net_skeleton_write(skel.get(), o.merge_mutual ? 1 : 0, path_str(path).c_str()));
  check(oa2net_mutual_pairs_write_csv(skel.get(), path_str(mutual).c_str()));
  m.output(path);
  m.output(mutual);
}

void run_normalize(const Options& o, Manifest& m) {
  fs::path out(o.out);
  static const std::map<std::string, oa2net_index_kind> kinds = {
      {"stochastic", OA2NET_INDEX_STOCHASTIC}, {"jaccard", OA2NET_INDEX_JACCARD},
      {"salton", OA2NET_INDEX_SALTON},         {"expected", OA2NET_INDEX_EXPECTED},
      {"balassa", OA2NET_INDEX_ACTIVITY},
  };
  auto kind = kinds.at(o.method);
  if (o.log && o.method != "balassa") {
    throw CliError(kExitUsage, "usage", "--log only applies to --method balassa");
  }
  if (o.log) kind = OA2NET_INDEX_LOG_ACTIVITY;
  auto in = co_stage_input(o, ".csv");
  m.input(in);
  m.config("method", o.method);
  m.config("log", o.log ? "true" : "false");
  auto co = read_co(in);
  oa2net_matrix* raw = nullptr;
  check(oa2net_index_compute(co.get(), kind, &raw));
  Matrix index(raw);
  fs::create_directories(out);
  std::string name = stem_of(in) + "." + o.method + (o.log ? "_log" : "");
  auto csv = out / (name + ".csv");
  check(oa2net_matrix_write_csv(index.get(), path_str(csv).c_str()));
  m.output(csv);
  if (o.log) {
    auto flags = out / (name + ".imputed.csv");
    check(oa2net_matrix_write_imputed_csv(index.get(), path_str(flags).c_str()));
    m.output(flags);
  }
  std::size_t issues = oa2net_matrix_issue_count(index.get());
  m.note("undefined_cells", std::to_string(issues));
  for (std::size_t i = 0; i < issues; ++i) std::cerr << "note: " << oa2net_matrix_issue(index.get(), i) << "\n";
}

void run_cluster(const Options& o, Manifest& m) {
  fs::path out(o.out);
  static const std::map<std::string, oa2net_linkage> linkages = {
      {"ward", OA2NET_LINKAGE_WARD}, {"complete", OA2NET_LINKAGE_COMPLETE}, {"average", OA2NET_LINKAGE_AVERAGE}};
  auto in = co_stage_input(o, ".csv");
  m.input(in);
  m.config("matrix", o.matrix);
  m.config("linkage", o.linkage);
  auto co = read_co(in);

  Matrix prepared;
  Matrix shown;
  oa2net_matrix* raw = nullptr;
  if (o.matrix == "balassa") {
    check(oa2net_index_compute(co.get(), OA2NET_INDEX_LOG_ACTIVITY, &raw));
    Matrix b(raw);
    check(oa2net_matrix_fill_absent(b.get(), 0.0, &raw));
    prepared.reset(raw);
    check(oa2net_matrix_drop_imputed(b.get(), &raw));
    shown.reset(raw);
  } else {
    check(oa2net_prepare_for_clustering(co.get(), &raw));
    prepared.reset(raw);
    check(oa2net_matrix_fill_absent(prepared.get(), 0.0, &raw));
    shown.reset(raw);
  }

  oa2net_dissimilarity* d_raw = nullptr;
  check(oa2net_corrected_euclidean(prepared.get(), &d_raw));
  Dissimilarity d(d_raw);
  oa2net_dendrogram* dg_raw = nullptr;
  check(oa2net_agglomerate(d.get(), linkages.at(o.linkage), &dg_raw));
  Dendrogram dg(dg_raw);

  std::size_t n = oa2net_dendrogram_leaf_count(dg.get());
  if (n == 0) throw CliError(kExitDomain, "domain", "nothing to cluster: the matrix is empty");
  std::size_t k = std::min(o.clusters, n);
  if (k != o.clusters) std::cerr << "note: only " << n << " countries; using " << k << " clusters\n";
  m.config("clusters", std::to_string(k));

  std::vector<std::size_t> order(n);
  check(oa2net_dendrogram_leaf_order(dg.get(), order.data(), n));
  std::vector<std::int64_t> classes(n);
  check(oa2net_dendrogram_cut(dg.get(), k, classes.data(), n));

  fs::create_directories(out);
  std::string prefix = stem_of(in) + (o.matrix == "balassa" ? ".balassa" : "") + ".cluster";
  auto newick = out / (prefix + ".nwk");
  auto merges = out / (prefix + ".merges.csv");
  auto clu = out / (prefix + ".clu");
  auto ordered = out / (prefix + ".ordered.csv");
  auto meta = out / (prefix + ".ordered.meta");
  check(oa2net_dendrogram_write_newick(dg.get(), path_str(newick).c_str()));
  check(oa2net_dendrogram_write_merges_csv(dg.get(), path_str(merges).c_str()));
  check(oa2net_partition_write(classes.data(), n, path_str(clu).c_str()));
  check(oa2net_ordered_matrix_export(shown.get(), order.data(), n, classes.data(), path_str(ordered).c_str(),
                                     path_str(meta).c_str()));
  for (const auto& p : {newick, merges, clu, ordered, meta}) m.output(p);

  std::map<std::int64_t, std::vector<std::string>> members;
  for (auto leaf : order) members[classes[leaf]].push_back(oa2net_matrix_label(prepared.get(), leaf));
  for (const auto& [c, labels] : members) {
    std::cout << "C" << c << ":";
    for (const auto& l : labels) std::cout << " " << l;
    std::cout << "\n";
  }
}

void run_export_pajek(const Options& o, Manifest& m) {
  fs::path out(o.out);
  auto in = co_stage_input(o, ".net");
  m.input(in);
  auto net = read_network(in);
  std::string stem = stem_of(in);
  auto dir = in.parent_path();

  auto cores_path = resolve_existing((dir / (stem + ".cores.vec")).string(), out,
                                     "run `oa2net cores --in " + in.filename().string() + "` first");
  auto clu_path = resolve_existing((dir / (stem + ".cluster.clu")).string(), out,
                                   "run `oa2net cluster --in " + stem + ".csv` first");
  m.input(cores_path);
  m.input(clu_path);

  Buffer<double> cores;
  check(oa2net_vector_read(path_str(cores_path).c_str(), &cores.data, &cores.size));
  Buffer<std::int64_t> clusters;
  check(oa2net_partition_read(path_str(clu_path).c_str(), &clusters.data, &clusters.size));

  std::vector<std::string> part_names = {"clusters"};
  std::vector<const std::int64_t*> parts = {clusters.data};
  std::vector<std::size_t> part_sizes = {clusters.size};
  Buffer<std::int64_t> balassa;
  auto balassa_path = dir / (stem + ".balassa.cluster.clu");
  if (fs::exists(balassa_path)) {
    m.input(balassa_path);
    check(oa2net_partition_read(path_str(balassa_path).c_str(), &balassa.data, &balassa.size));
    part_names.push_back("balassa_clusters");
    parts.push_back(balassa.data);
    part_sizes.push_back(balassa.size);
  }

  std::size_t n = oa2net_network_vertex_count(net.get());
  auto mismatch = [&](const std::string& what, std::size_t size) {
    if (size != n) {
      throw CliError(kExitData, "parse",
                     what + " has " + std::to_string(size) + " entries but the network has " + std::to_string(n) +
                         " vertices",
                     "rerun the earlier stages on the same co_<year> input");
    }
  };
  mismatch(cores_path.filename().string(), cores.size);
  for (std::size_t i = 0; i < parts.size(); ++i) mismatch(part_names[i], part_sizes[i]);

  std::vector<const char*> pn;
  for (const auto& s : part_names) pn.push_back(s.c_str());
  const char* vn[] = {"cores"};
  const double* vv[] = {cores.data};
  fs::create_directories(out);
  auto paj = out / (stem + ".paj");
  check(oa2net_project_write(net.get(), stem.c_str(), pn.data(), parts.data(), parts.size(), vn, vv, 1,
                             path_str(paj).c_str()));
  m.output(paj);
}

void print_error(const std::string& command, const CliError& e) {
  nlohmann::json summary = {
      {"status", "error"}, {"command", command}, {"kind", e.kind}, {"exit_code", e.code}, {"message", e.what()}};
  if (!e.hint.empty()) summary["hint"] = e.hint;
  std::cerr << summary.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Build Pajek networks and country co-authorship analyses from OpenAlex data", "oa2net"};
  app.set_version_flag("--version", std::string(oa2net_version()));
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--out", o.out, "Output directory for stage files")->capture_default_str();
  app.add_option("--cache", o.cache, "Response cache directory")->envname("OA2NET_CACHE");
  app.add_option("--mailto", o.mailto, "Contact address sent to OpenAlex")->envname("OA2NET_MAILTO");
  app.add_option("--api-base", o.api_base, "API base URL")->envname("OA2NET_API_BASE");
  app.add_option("--rate", o.rate, "Requests per second")->check(CLI::Range(1.0, 1000.0))->capture_default_str();
  app.add_option("--max-attempts", o.max_attempts, "Attempts per request")->check(CLI::Range(1, 20));
  app.add_flag("--cache-only", o.cache_only, "Serve every request from the cache; never touch the network");

  auto* fetch = app.add_subcommand("fetch-works", "Fetch works by filter or id list into works.jsonl");
  fetch->add_option("--filter", o.filters, "OpenAlex filter clause field:value (repeatable)");
  fetch->add_option("--ids", o.ids, "Work list CSV to fetch by id");
  fetch->add_option("--limit", o.limit, "Stop after this many works")->check(CLI::NonNegativeNumber);

  auto* saturate = app.add_subcommand("saturate", "Grow a work list by cited works above a threshold");
  saturate->add_option("--seed", o.seed, "Work list CSV")->required();
  saturate->add_option("--threshold", o.threshold, "Minimum citations from the list")->check(CLI::PositiveNumber);
  saturate->add_option("--max-steps", o.max_steps, "Stop after this many steps")->check(CLI::PositiveNumber);
  saturate->add_flag("--print-table", o.print_table, "Print the expansion table and stop");

  auto* build = app.add_subcommand("build-collection", "Write the Pajek network collection for works.jsonl");
  build->add_option("--in", o.in, "Works JSONL (default works.jsonl)");
  build->add_flag("--include-cited", o.include_cited, "Keep cited works outside the list as boundary nodes");

  auto* coauth = app.add_subcommand("coauth", "Yearly country co-authorship matrices via group-by queries");
  coauth->add_option("--from", o.from, "First year")->required();
  coauth->add_option("--to", o.to, "Last year")->required();
  coauth->add_option("--countries", o.countries, "Focal country codes (default all)")->delimiter(',');
  coauth->add_flag("--international-only", o.international_only, "Count only works with 2+ countries");
  coauth->add_flag("--loops", o.loops, "Keep the diagonal as loops in co_<year>.net");

  auto add_stage_input = [&](CLI::App* sub, const char* what) {
    sub->add_option("--in", o.in, what);
    sub->add_option("--year", o.year, "Pick co_<year> from the output directory");
  };

  auto* cores = app.add_subcommand("cores", "Weighted-degree core levels");
  add_stage_input(cores, "Co-authorship network (co_<year>.net)");

  auto* skeleton = app.add_subcommand("skeleton", "k-neighbor skeleton or link cut");
  add_stage_input(skeleton, "Co-authorship network (co_<year>.net)");
  skeleton->add_option("--k", o.k, "Neighbors kept per node")->check(CLI::PositiveNumber)->capture_default_str();
  skeleton->add_option("--threshold", o.cut, "Link cut: keep links with weight >= threshold");
  skeleton->add_flag("--merge-mutual", o.merge_mutual, "Write reciprocal arcs as edges");
  skeleton->add_option("--transform", o.transform, "Weight transform applied first")
      ->check(CLI::IsMember({"none", "sqrt", "log2"}))
      ->capture_default_str();

  auto* normalize = app.add_subcommand("normalize", "Normalized or expected-value index matrices");
  add_stage_input(normalize, "Co-authorship matrix (co_<year>.csv)");
  normalize->add_option("--method", o.method, "Index to compute")
      ->required()
      ->check(CLI::IsMember({"stochastic", "jaccard", "salton", "expected", "balassa"}));
  normalize->add_flag("--log", o.log, "With balassa: log index, imputed cells flagged in a sidecar");

  auto* cluster = app.add_subcommand("cluster", "Hierarchical clustering and ordered matrix export");
  add_stage_input(cluster, "Co-authorship matrix (co_<year>.csv)");
  cluster->add_option("--matrix", o.matrix, "Matrix to cluster")
      ->check(CLI::IsMember({"co", "balassa"}))
      ->capture_default_str();
  cluster->add_option("--linkage", o.linkage, "Linkage rule")
      ->check(CLI::IsMember({"ward", "complete", "average"}))
      ->capture_default_str();
  cluster->add_option("--k", o.clusters, "Number of clusters (capped at the number of countries)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto* export_pajek = app.add_subcommand("export-pajek", "Pajek project with network, clusters and cores");
  add_stage_input(export_pajek, "Co-authorship network (co_<year>.net)");

  std::string command;
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    print_error(command, CliError(kExitUsage, "usage", e.what()));
    return kExitUsage;
  }
  command = app.get_subcommands().front()->get_name();

  Manifest manifest(command, o.out);
  static const std::map<std::string, void (*)(const Options&, Manifest&)> dispatch = {
      {"fetch-works", run_fetch_works}, {"saturate", run_saturate},   {"build-collection", run_build_collection},
      {"coauth", run_coauth},           {"cores", run_cores},         {"skeleton", run_skeleton},
      {"normalize", run_normalize},     {"cluster", run_cluster},     {"export-pajek", run_export_pajek},
  };
  try {
    try {
      dispatch.at(command)(o, manifest);
      manifest.write(nullptr);
      return 0;
    } catch (const CliError&) {
      throw;
    } catch (const fs::filesystem_error& e) {
      throw CliError(kExitData, "io", e.what());
    } catch (const std::exception& e) {
      throw CliError(kExitInternal, "internal", e.what());
    }
  } catch (const CliError& e) {
    print_error(command, e);
    try {
      manifest.write(&e);
    } catch (...) {
    }
    return e.code;
  }
}
