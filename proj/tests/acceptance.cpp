// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero
// when any criterion fails.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oa2net/clustering.hpp"
#include "oa2net/coauthorship.hpp"
#include "oa2net/normalization.hpp"
#include "oa2net/pajek.hpp"
#include "oa2net/reduction.hpp"
#include "oracles.hpp"
#include "pipeline_fixture.hpp"
#include "support.hpp"

using namespace oa2net;
using namespace oa2net::pajek;
namespace fs = std::filesystem;

namespace {

// Collects failures for one criterion; the first few are reported.
struct Check {
  std::vector<std::string> problems;
  std::string note;

  void expect(bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  }
  bool ok() const { return problems.empty(); }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string secs(double t) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(3);
  os << t << " s";
  return os.str();
}

bool rel_close(double got, double want, double rel = 1e-9) {
  return std::abs(got - want) <= rel * std::max(1.0, std::abs(want));
}

std::string str(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

CountryCode cc(const std::string& s) { return CountryCode::require(s); }

oracle::Dense dense(const WeightedNetwork& net) {
  oracle::Dense g{net.vertex_count(), std::vector<double>(net.vertex_count() * net.vertex_count(), 0.0)};
  for (const Link& l : net.links()) {
    if (l.source == l.target) continue;
    g.w[l.source.offset() * g.n + l.target.offset()] += l.weight;
    g.w[l.target.offset() * g.n + l.source.offset()] += l.weight;
  }
  return g;
}

WeightedNetwork table1_net() { return co_matrix_to_network(testing_support::table1_matrix(), false); }

// Undirected network whose weights are multiples of 1/4, so every sum of
// weights is exact and level comparisons need no tolerance.
WeightedNetwork random_quarter_net(std::mt19937_64& rng, std::size_t n, double density) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("v" + std::to_string(i + 1));
  WeightedNetwork net(labels, Directedness::Undirected);
  std::bernoulli_distribution edge(density);
  std::uniform_int_distribution<int> quarters(1, 40);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j)
      if (edge(rng)) net.add_link(NodeId(i), NodeId(j), quarters(rng) / 4.0);
  return net;
}

std::vector<std::string> arc_list(const WeightedNetwork& net) {
  std::vector<std::string> out;
  for (const Link& l : net.links()) out.push_back(net.label(l.source) + "->" + net.label(l.target));
  std::sort(out.begin(), out.end());
  return out;
}

// ---- 1 ---------------------------------------------------------------------

Check table1_golden() {
  Check c;
  auto start = Clock::now();
  auto co = co_matrix_from_works(testing_support::table1_records());
  std::map<std::pair<std::string, std::string>, std::uint64_t> printed = {
      {{"SI", "SI"}, 6}, {{"SI", "US"}, 2}, {{"SI", "ES"}, 2}, {{"SI", "AU"}, 1}, {{"SI", "DE"}, 1},
      {{"SI", "IT"}, 1}, {{"DE", "IT"}, 1}, {{"AU", "AU"}, 1}, {{"DE", "DE"}, 1}, {{"ES", "ES"}, 2},
      {{"IT", "IT"}, 1}, {{"US", "US"}, 2}};
  c.expect(co.labels() == std::vector<std::string>{"AU", "DE", "ES", "IT", "SI", "US"}, "country order");
  for (const auto& a : co.labels()) {
    for (const auto& b : co.labels()) {
      auto it = printed.find({a, b});
      if (it == printed.end()) it = printed.find({b, a});
      auto got = co.at(cc(a), cc(b));
      if (it == printed.end()) {
        c.expect(!got.has_value(), "cell (" + a + "," + b + ") should be absent");
      } else {
        c.expect(got == it->second, "cell (" + a + "," + b + ") = " + (got ? std::to_string(*got) : "absent"));
      }
    }
  }
  // Independent count straight from the definition.
  std::vector<std::vector<std::string>> sets;
  for (const auto& w : testing_support::table1()) sets.push_back(w.countries);
  auto ref = oracle::co_counts(sets);
  for (const auto& [pair, count] : ref) {
    c.expect(co.at(cc(pair.first), cc(pair.second)) == count, "oracle disagrees at " + pair.first + "," + pair.second);
  }
  double t = seconds_since(start);
  c.expect(t < 1.0, "runtime " + secs(t));
  c.note = "36 cells checked";
  return c;
}

// ---- 2 ---------------------------------------------------------------------

Check log2_range() {
  Check c;
  c.expect(std::abs(transform_weight(69440, WeightTransform::Log2) - 16.0835) <= 5e-5, "69440 -> 16.0835");
  c.expect(transform_weight(1, WeightTransform::Log2) == 0.0, "1 -> 0");
  CoMatrix co({cc("CN"), cc("US")});
  co.set(0, 0, 1);
  co.set(0, 1, 69440);
  co.set(1, 1, 69440);
  auto m = transform_weights(co, WeightTransform::Log2);
  double lo = INFINITY, hi = -INFINITY;
  for (const auto& v : m.cells) {
    if (!v) continue;
    lo = std::min(lo, *v);
    hi = std::max(hi, *v);
  }
  c.expect(lo == 0.0 && std::abs(hi - 16.0835) <= 5e-5, "range " + str(lo) + ":" + str(hi));
  c.note = "range 0:" + str(hi);
  return c;
}

// ---- 3 ---------------------------------------------------------------------

void check_cores_against_oracle(Check& c, const WeightedNetwork& net, const std::string& name) {
  auto dec = weighted_degree_cores(net);
  auto g = dense(net);
  auto levels = oracle::core_levels(g);
  c.expect(dec.level == levels, name + ": levels differ from the subset oracle");
  std::set<double> realized(dec.level.begin(), dec.level.end());
  std::map<double, std::set<std::size_t>> cores;
  for (double t : realized) {
    std::set<std::size_t> got;
    for (auto id : core_at_level(dec, t)) got.insert(id.offset());
    c.expect(got == oracle::core_at(g, t), name + ": core at level " + str(t) + " differs");
    cores[t] = got;
  }
  for (auto lo = cores.begin(); lo != cores.end(); ++lo) {
    for (auto hi = std::next(lo); hi != cores.end(); ++hi) {
      c.expect(std::includes(lo->second.begin(), lo->second.end(), hi->second.begin(), hi->second.end()),
               name + ": core(" + str(hi->first) + ") not inside core(" + str(lo->first) + ")");
    }
  }
}

Check core_oracle() {
  Check c;
  auto start = Clock::now();
  check_cores_against_oracle(c, table1_net(), "table 1");
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> size(1, 8);
  std::uniform_real_distribution<double> density(0.1, 0.9);
  const int rounds = 400;
  for (int round = 0; round < rounds; ++round) {
    auto net = round % 2 ? testing_support::random_undirected(rng, size(rng), density(rng), true)
                         : random_quarter_net(rng, size(rng), density(rng));
    check_cores_against_oracle(c, net, "random #" + std::to_string(round));
  }
  double t = seconds_since(start);
  c.expect(t < 60.0, "runtime " + secs(t));
  c.note = std::to_string(rounds) + " random networks + table 1, " + secs(t);
  return c;
}

// ---- 4 ---------------------------------------------------------------------

void certify(Check& c, const WeightedNetwork& net, const std::string& name) {
  auto dec = weighted_degree_cores(net);
  std::set<double> realized(dec.level.begin(), dec.level.end());
  for (double t : realized) {
    auto core = core_at_level(dec, t);
    for (auto v : core) {
      c.expect(weighted_degree(net, v, core) >= t - 1e-9 * std::max(1.0, t),
               name + ": " + net.label(v) + " below level " + str(t));
    }
  }
}

Check core_certification() {
  Check c;
  certify(c, table1_net(), "table 1");
  for (int y = pipeline_fixture::kFirstYear; y <= pipeline_fixture::kLastYear; ++y) {
    auto co = co_matrix_from_works(pipeline_fixture::works_of_year(y));
    certify(c, co_matrix_to_network(co, false), "fixture " + std::to_string(y));
    certify(c, transform_weights(co_matrix_to_network(co, false), WeightTransform::Sqrt),
            "fixture " + std::to_string(y) + " sqrt");
  }
  std::mt19937_64 rng(4);
  for (int round = 0; round < 100; ++round) {
    certify(c, testing_support::random_undirected(rng, 40, 0.15, round % 2 == 0), "random #" + std::to_string(round));
  }
  c.note = "certification on table 1, pipeline fixtures, 100 random networks";
  return c;
}

// Network-gated; reported but never counted against the run.
void live_main_core() {
  const char* flag = std::getenv("OA2NET_LIVE");
  if (!flag || std::string(flag) != "1") {
    std::cout << "INFO criterion 4 live smoke test skipped (set OA2NET_LIVE=1 to run)\n";
    return;
  }
  try {
    ClientConfig cfg;
    if (const char* mail = std::getenv("OA2NET_MAILTO")) cfg.mailto = mail;
    if (const char* cache = std::getenv("OA2NET_CACHE")) cfg.cache_dir = cache;
    OpenAlexClient client(cfg);
    SeriesOptions opts;
    opts.international_only = true;
    auto series = yearly_series(2023, 2023, client, opts);
    if (!series.failures.empty()) throw std::runtime_error(series.failures.front().message);
    const auto& co = series.years.at(2023);
    auto net = co_matrix_to_network(co, false);
    auto dec = weighted_degree_cores(net);
    double top = *std::max_element(dec.level.begin(), dec.level.end());
    std::set<std::string> main_core;
    for (auto id : core_at_level(dec, top)) main_core.insert(net.label(id));
    bool ok = main_core.contains("US") && main_core.contains("GB") && main_core.contains("CN");
    std::cout << "INFO criterion 4 live smoke test " << (ok ? "passed" : "FAILED") << ": 2023 main core has "
              << main_core.size() << " countries\n";
  } catch (const std::exception& e) {
    std::cout << "INFO criterion 4 live smoke test could not run: " << e.what() << "\n";
  }
}

// ---- 5 ---------------------------------------------------------------------

Check skeleton_properties() {
  Check c;
  auto skel = k_neighbor_skeleton(table1_net(), 1);
  c.expect(arc_list(skel) ==
               std::vector<std::string>{"AU->SI", "DE->IT", "ES->SI", "IT->DE", "SI->ES", "US->SI"},
           "table 1 arc set");
  std::mt19937_64 rng(5);
  for (int round = 0; round < 200; ++round) {
    auto base = testing_support::random_undirected(rng, 25, 0.2, round % 2 == 0);
    // Shift weights above 1 so log2 keeps them positive.
    WeightedNetwork net(base.labels(), Directedness::Undirected);
    for (const Link& l : base.links()) net.add_link(l.source, l.target, l.weight + 1.0);
    auto one = k_neighbor_skeleton(net, 1);
    std::vector<int> out(one.vertex_count(), 0);
    for (const Link& l : one.links()) ++out[l.source.offset()];
    c.expect(*std::max_element(out.begin(), out.end()) <= 1, "out-degree above 1 in round " + std::to_string(round));
    for (std::size_t k : {1u, 2u, 3u}) {
      auto arcs = arc_list(k_neighbor_skeleton(net, k));
      for (auto fn : {WeightTransform::Sqrt, WeightTransform::Log2}) {
        c.expect(arc_list(k_neighbor_skeleton(transform_weights(net, fn), k)) == arcs,
                 "arc set changed under a transform, round " + std::to_string(round) + " k=" + std::to_string(k));
      }
    }
  }
  c.note = "table 1 arcs, 200 random networks, k = 1..3, sqrt and log2";
  return c;
}

// ---- 6 ---------------------------------------------------------------------

Check normalization_identities() {
  Check c;
  // Hand arithmetic from the Table 1 counts: Co[SI,US]=2, Co[SI,SI]=6,
  // Co[US,US]=2, R(SI)=13, R(US)=4, T=29.
  double j_hand = 2.0 / (6 + 2 - 2), s_hand = 2.0 / std::sqrt(6.0 * 2.0), a_hand = 2.0 / (13.0 * 4.0 / 29.0);
  c.expect(j_hand == 1.0 / 3.0, "hand J");
  c.expect(rel_close(s_hand, 2.0 / std::sqrt(12.0)), "hand S");
  c.expect(rel_close(a_hand, 58.0 / 52.0), "hand A");

  auto co = testing_support::table1_matrix();
  auto si = *co.index_of(cc("SI")), us = *co.index_of(cc("US"));
  c.expect(rel_close(*normalize(co, Normalization::Jaccard).at(si, us), j_hand), "J(SI,US)");
  c.expect(rel_close(*normalize(co, Normalization::Salton).at(si, us), s_hand), "S(SI,US)");
  c.expect(rel_close(*activity_index(co).at(si, us), a_hand), "A(SI,US)");

  for (std::size_t n : {1u, 2u, 5u}) {
    for (std::uint64_t v : {1u, 7u}) {
      std::vector<CountryCode> codes;
      for (std::size_t i = 0; i < n; ++i) codes.push_back(cc(pipeline_fixture::countries()[i]));
      CoMatrix u(codes);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) u.set(i, k, v);
      auto a = activity_index(u);
      auto b = log_activity(a);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
          c.expect(rel_close(*a.at(i, k), 1.0), "uniform A != 1");
          c.expect(std::abs(*b.at(i, k)) <= 1e-9, "uniform B != 0");
        }
      }
    }
  }

  std::mt19937_64 rng(6);
  int fixtures = 0;
  for (int round = 0; round < 300; ++round) {
    auto works = testing_support::random_works(rng, 80, testing_support::small_alphabet());
    auto m = co_matrix_from_works(works);
    if (m.empty()) continue;
    ++fixtures;
    auto st = normalize(m, Normalization::Stochastic);
    auto e = expected_matrix(m);
    auto a = activity_index(m);
    double sum_e = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
      double row = 0;
      for (std::size_t k = 0; k < m.size(); ++k) {
        sum_e += *e.at(i, k);
        if (auto v = m.at(i, k)) {
          row += *st.at(i, k);
          c.expect(rel_close(*a.at(i, k) * *e.at(i, k), static_cast<double>(*v)), "A*E != C");
        }
      }
      c.expect(rel_close(row, 1.0), "row of M does not sum to 1");
    }
    c.expect(rel_close(sum_e, static_cast<double>(m.marginals().total)), "sum of E != T");
  }
  c.note = std::to_string(fixtures) + " random matrices, uniform cases, table 1 spot values";
  return c;
}

// ---- 7 ---------------------------------------------------------------------

double hand_distance(const std::vector<std::vector<double>>& v, std::size_t a, std::size_t b) {
  double s = (v[a][b] - v[b][a]) * (v[a][b] - v[b][a]) + (v[a][a] - v[b][b]) * (v[a][a] - v[b][b]);
  for (std::size_t x = 0; x < v.size(); ++x) {
    if (x != a && x != b) s += (v[a][x] - v[b][x]) * (v[a][x] - v[b][x]);
  }
  return std::sqrt(s);
}

void check_metric(Check& c, const DissimilarityMatrix& d, const std::string& name) {
  const std::size_t n = d.size();
  for (std::size_t a = 0; a < n; ++a) {
    c.expect(d.at(a, a) == 0.0, name + ": nonzero diagonal");
    for (std::size_t b = 0; b < n; ++b) {
      c.expect(d.at(a, b) == d.at(b, a), name + ": asymmetric");
      for (std::size_t x = 0; x < n; ++x) {
        c.expect(d.at(a, b) <= d.at(a, x) + d.at(x, b) + 1e-9, name + ": triangle inequality");
      }
    }
  }
}

Check corrected_euclidean_and_agglomeration() {
  Check c;
  // Table 1 counts with absent cells as 0, rows AU DE ES IT SI US.
  std::vector<std::vector<double>> t1 = {{1, 0, 0, 0, 1, 0}, {0, 1, 0, 1, 1, 0}, {0, 0, 2, 0, 2, 0},
                                         {0, 1, 0, 1, 1, 0}, {1, 1, 2, 1, 6, 2}, {0, 0, 0, 0, 2, 2}};
  c.expect(hand_distance(t1, 0, 5) == std::sqrt(2.0), "hand oracle D[AU,US]");
  auto co = testing_support::table1_matrix();
  IndexMatrix raw(co.labels(), IndexKind::Plain);
  for (std::size_t i = 0; i < co.size(); ++i)
    for (std::size_t k = 0; k < co.size(); ++k)
      if (auto v = co.at(i, k)) raw.set(i, k, static_cast<double>(*v));
  auto d = corrected_euclidean(fill_absent(raw));
  c.expect(d.at(0, 5) == std::sqrt(2.0), "D[AU,US] = " + str(d.at(0, 5)));
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = 0; b < 6; ++b)
      c.expect(rel_close(d.at(a, b), a == b ? 0.0 : hand_distance(t1, a, b)), "table 1 distance vs hand oracle");
  check_metric(c, d, "table 1");
  check_metric(c, corrected_euclidean(prepare_for_clustering(co)), "table 1 log2");
  for (int y = pipeline_fixture::kFirstYear; y <= pipeline_fixture::kLastYear; ++y) {
    auto fixture = co_matrix_from_works(pipeline_fixture::works_of_year(y));
    check_metric(c, corrected_euclidean(prepare_for_clustering(fixture)), "fixture " + std::to_string(y));
  }
  std::mt19937_64 works_rng(77);
  for (int round = 0; round < 100; ++round) {
    auto works = testing_support::random_works(works_rng, 60, testing_support::small_alphabet());
    auto m = co_matrix_from_works(works);
    if (m.empty()) continue;
    check_metric(c, corrected_euclidean(prepare_for_clustering(m)), "random co #" + std::to_string(round));
    check_metric(c, corrected_euclidean(fill_absent(log_activity(activity_index(m)))),
                 "random log activity #" + std::to_string(round));
  }

  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::size_t> size(2, 10);
  const int rounds = 150;
  for (int round = 0; round < rounds; ++round) {
    std::size_t n = size(rng);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back("c" + std::to_string(10 + i));
    std::shuffle(labels.begin(), labels.end(), rng);
    DissimilarityMatrix m{labels, std::vector<double>(n * n, 0.0)};
    if (round % 2) {
      // Symmetric, like every matrix the tool clusters; the triangle
      // inequality does not hold for arbitrary asymmetric profiles.
      IndexMatrix pts(labels, IndexKind::Plain);
      std::uniform_int_distribution<int> v(0, 5);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = i; k < n; ++k) {
          double x = v(rng);
          pts.set(i, k, x);
          pts.set(k, i, x);
        }
      m = corrected_euclidean(pts);
      check_metric(c, m, "random #" + std::to_string(round));
    } else {
      std::uniform_real_distribution<double> v(0.1, 10.0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = i + 1; k < n; ++k) m.values[i * n + k] = m.values[k * n + i] = v(rng);
    }
    for (auto [linkage, ref] : {std::pair{Linkage::Ward, oracle::Linkage::Ward},
                                std::pair{Linkage::Complete, oracle::Linkage::Complete},
                                std::pair{Linkage::Average, oracle::Linkage::Average}}) {
      auto dg = agglomerate(m, linkage);
      auto steps = oracle::agglomerate(m.values, m.labels, ref);
      std::vector<std::set<std::size_t>> members(n + dg.merges.size());
      for (std::size_t i = 0; i < n; ++i) members[i] = {i};
      bool same = steps.size() == dg.merges.size();
      for (std::size_t s = 0; same && s < steps.size(); ++s) {
        const auto& mg = dg.merges[s];
        same = members[mg.left] == steps[s].left && members[mg.right] == steps[s].right &&
               rel_close(mg.height, steps[s].height);
        members[n + s] = members[mg.left];
        members[n + s].insert(members[mg.right].begin(), members[mg.right].end());
      }
      c.expect(same, "merge sequence differs from the naive reference, round " + std::to_string(round) + " " +
                         to_string(linkage));
    }
  }
  c.note = "D[AU,US] = " + str(d.at(0, 5)) + ", " + std::to_string(rounds) + " random matrices x 3 linkages";
  return c;
}

// ---- 8 ---------------------------------------------------------------------

std::string random_label(std::mt19937_64& rng) {
  static const std::vector<std::string> pieces = {"a", "Z", " ", "\"", "š", "é", "x y", "9", "'", "*", "%"};
  std::uniform_int_distribution<std::size_t> len(1, 5);
  std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1);
  std::string s;
  for (std::size_t i = len(rng); i > 0; --i) s += pieces[pick(rng)];
  return s;
}

double random_weight(std::mt19937_64& rng) {
  std::bernoulli_distribution coin(0.5);
  std::uniform_real_distribution<double> real(1e-6, 1e6);
  std::uniform_int_distribution<int> integer(1, 100000);
  return coin(rng) ? real(rng) : integer(rng);
}

Check pajek_round_trip() {
  Check c;
  auto start = Clock::now();
  testing_support::TempDir dir;
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<std::size_t> size(1, 15);
  std::bernoulli_distribution edge(0.3);
  const int rounds = 1000;
  for (int round = 0; round < rounds; ++round) {
    std::string tag = "round " + std::to_string(round);
    std::size_t n = size(rng);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i) + random_label(rng));
    std::string text;
    switch (round % 3) {
      case 0:
      case 1: {
        bool directed = round % 3 == 1;
        WeightedNetwork net(labels, directed ? Directedness::Directed : Directedness::Undirected);
        for (std::size_t i = 1; i <= n; ++i)
          for (std::size_t j = directed ? 1 : i; j <= n; ++j)
            if (edge(rng)) net.add_link(NodeId(i), NodeId(j), random_weight(rng));
        text = format_network(net);
        auto path = dir / "net.net";
        write_network(net, path);
        c.expect(read_text_file(path) == text, tag + ": file bytes differ from formatted text");
        auto back = read_one_mode(path);
        c.expect(back == net, tag + ": one-mode network changed on round trip");
        c.expect(format_network(back) == text, tag + ": rewrite not byte-identical");
        break;
      }
      case 2: {
        std::vector<std::string> mode2;
        for (std::size_t i = size(rng); i > 0; --i) mode2.push_back("m" + std::to_string(i) + random_label(rng));
        TwoModeNetwork net(labels, mode2);
        for (std::size_t i = 1; i <= n; ++i)
          for (std::size_t j = 1; j <= mode2.size(); ++j)
            if (edge(rng)) net.add_link(NodeId(i), NodeId(j), random_weight(rng));
        text = format_network(net);
        auto path = dir / "two.net";
        write_network(net, path);
        auto back = read_network(path);
        c.expect(std::holds_alternative<TwoModeNetwork>(back), tag + ": two-mode read as one-mode");
        if (auto* two = std::get_if<TwoModeNetwork>(&back)) {
          c.expect(*two == net, tag + ": two-mode network changed on round trip");
          c.expect(format_network(*two) == text, tag + ": two-mode rewrite not byte-identical");
        }
        break;
      }
    }
    auto reparsed = parse_network(text);
    auto reformatted = std::visit([](const auto& net) { return format_network(net); }, reparsed);
    c.expect(reformatted == text, tag + ": parse/format not stable");

    NodePartition p;
    NodeVector v;
    std::uniform_int_distribution<std::int64_t> cls(-3, 20);
    for (std::size_t i = 0; i < n; ++i) {
      p.classes.push_back(cls(rng));
      v.values.push_back(edge(rng) ? -random_weight(rng) : random_weight(rng));
    }
    write_partition(p, dir / "p.clu");
    write_vector(v, dir / "v.vec");
    c.expect(read_partition(dir / "p.clu").classes == p.classes, tag + ": partition round trip");
    c.expect(read_vector(dir / "v.vec") == v, tag + ": vector round trip");
    c.expect(format_partition(p) == read_text_file(dir / "p.clu") && format_vector(v) == read_text_file(dir / "v.vec"),
             tag + ": partition/vector bytes");
  }
  double t = seconds_since(start);
  c.expect(t < 30.0, "runtime " + secs(t));
  c.note = std::to_string(rounds) + " networks with partitions and vectors, " + secs(t);
  return c;
}

// ---- 9 ---------------------------------------------------------------------

Check symmetry_completion() {
  Check c;
  std::mt19937_64 rng(9);
  int rounds = 0, removed_total = 0;
  for (int round = 0; round < 200; ++round) {
    auto works = testing_support::random_works(rng, 60, testing_support::small_alphabet());
    auto truth = co_matrix_from_works(works);
    testing_support::SimulatedGroupApi api(works);
    GroupResponses responses;
    for (const auto& code : testing_support::small_alphabet()) {
      auto filter = country_groupby_filter(cc(code), std::nullopt, true);
      auto r = api.fetch_group_counts(filter);
      if (!r.groups.empty()) responses[code] = std::move(r);
    }
    // Drop partner entries from one side only, sometimes as a capped tail.
    std::bernoulli_distribution drop(0.4);
    for (std::size_t i = 0; i < truth.size(); ++i) {
      for (std::size_t k = i + 1; k < truth.size(); ++k) {
        if (!truth.at(i, k) || !drop(rng)) continue;
        auto a = truth.codes()[i].str(), b = truth.codes()[k].str();
        if (rng() % 2) std::swap(a, b);
        auto& groups = responses[a].groups;
        std::erase_if(groups, [&](const GroupCount& g) { return g.key == b; });
        ++removed_total;
      }
    }
    CoBuildReport report;
    auto rebuilt = co_matrix_from_groupby(responses, &report);
    c.expect(rebuilt == truth, "round " + std::to_string(round) + ": rebuilt matrix differs from works");
    c.expect(report.warnings.empty(), "round " + std::to_string(round) + ": unexpected conflict warning");
    c.expect(co_matrix_from_groupby(group_responses_from_matrix(rebuilt)) == rebuilt,
             "round " + std::to_string(round) + ": not idempotent");
    ++rounds;
  }

  // Capped responses: every focal sees at most 3 groups.
  std::vector<WorkRecord> works;
  for (const auto& [pair, copies] : std::vector<std::pair<std::vector<std::string>, int>>{
           {{"AT", "BE"}, 5}, {{"AT", "CN"}, 4}, {{"AT", "DE"}, 3}, {{"AT", "FR"}, 2}, {{"AT", "GB"}, 1}}) {
    for (int i = 0; i < copies; ++i) {
      WorkRecord w;
      w.id = "W" + std::to_string(works.size() + 1);
      w.countries = pair;
      works.push_back(w);
    }
  }
  testing_support::SimulatedGroupApi capped(works, 3);
  GroupResponses responses;
  for (const char* code : {"AT", "BE", "CN", "DE", "FR", "GB"}) {
    responses[code] = capped.fetch_group_counts(country_groupby_filter(cc(code), std::nullopt, true));
  }
  CoBuildReport report;
  auto rebuilt = co_matrix_from_groupby(responses, &report);
  c.expect(rebuilt == co_matrix_from_works(works), "capped responses not completed");
  c.expect(report.truncated_responses >= 1, "capped response not reported");
  c.note = std::to_string(rounds) + " random fixtures, " + std::to_string(removed_total) +
           " one-sided entries removed, plus a capped fixture";
  return c;
}

// ---- 10 --------------------------------------------------------------------

std::string shell_quote(const std::string& s) {
  std::string q = "'";
  for (char ch : s) q += ch == '\'' ? std::string("'\\''") : std::string(1, ch);
  return q + "'";
}

int run_cli(const std::vector<std::string>& args, const fs::path& log) {
  std::string cmd = shell_quote(OA2NET_CLI);
  for (const auto& a : args) cmd += " " + shell_quote(a);
  cmd += " >>" + shell_quote(log.string()) + " 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) files[fs::relative(e.path(), dir).generic_string()] = read_text_file(e.path());
  }
  return files;
}

Check offline_pipeline() {
  Check c;
  testing_support::TempDir dir;
  auto cache = dir / "cache";
  pipeline_fixture::seed_cache(cache, true, pipeline_fixture::countries());
  std::string scope;
  for (const auto& code : pipeline_fixture::countries()) scope += (scope.empty() ? "" : ",") + code;

  std::vector<std::vector<std::string>> stages = {
      {"coauth", "--from", "1990", "--to", "1991", "--countries", scope, "--international-only"},
      {"cores", "--year", "1990"},
      {"skeleton", "--year", "1990", "--k", "1", "--merge-mutual"},
      {"normalize", "--year", "1990", "--method", "balassa", "--log"},
      {"cluster", "--year", "1990", "--k", "4"},
      {"export-pajek", "--year", "1990"}};
  for (const char* run : {"run1", "run2"}) {
    for (const auto& stage : stages) {
      std::vector<std::string> args = {"--out", (dir / run).string(), "--cache", cache.string(), "--cache-only"};
      args.insert(args.end(), stage.begin(), stage.end());
      int code = run_cli(args, dir / "log.txt");
      c.expect(code == 0, std::string(run) + " " + stage.front() + " exited " + std::to_string(code));
    }
  }
  if (!c.ok()) {
    c.problems.push_back(read_text_file(dir / "log.txt"));
    return c;
  }
  auto a = snapshot(dir / "run1");
  auto b = snapshot(dir / "run2");
  c.expect(a.size() == b.size(), "different file sets");
  for (const auto& [name, bytes] : a) c.expect(b.contains(name) && b[name] == bytes, name + " differs");
  c.expect(a.contains("co_1990.paj"), "no Pajek project written");
  c.note = std::to_string(a.size()) + " files byte-identical across two cache-only runs";
  return c;
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    const char* title;
    std::function<Check()> run;
  };
  std::vector<Criterion> criteria = {
      {1, "Table 1 golden co-authorship matrix", table1_golden},
      {2, "log2 range 69440 -> 16.0835, 1 -> 0", log2_range},
      {3, "weighted core levels match the exhaustive oracle", core_oracle},
      {4, "core certification (substitute for live tables)", core_certification},
      {5, "skeleton out-degree, transform invariance, table 1 arcs", skeleton_properties},
      {6, "normalization identities and spot values", normalization_identities},
      {7, "corrected Euclidean and agglomeration reference", corrected_euclidean_and_agglomeration},
      {8, "Pajek round trip and byte determinism", pajek_round_trip},
      {9, "group-by symmetry completion", symmetry_completion},
      {10, "offline CLI pipeline is byte-deterministic", offline_pipeline},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Check c;
    try {
      c = cr.run();
    } catch (const std::exception& e) {
      c.problems.push_back(std::string("exception: ") + e.what());
    }
    std::cout << (c.ok() ? "PASS" : "FAIL") << " criterion " << cr.number << ": " << cr.title;
    if (c.ok() && !c.note.empty()) std::cout << " (" << c.note << ")";
    std::cout << "\n";
    for (std::size_t i = 0; i < std::min<std::size_t>(c.problems.size(), 5); ++i) {
      std::cout << "    " << c.problems[i] << "\n";
    }
    if (c.problems.size() > 5) std::cout << "    ... " << c.problems.size() - 5 << " more\n";
    if (cr.number == 4) live_main_core();
    failed += c.ok() ? 0 : 1;
  }
  std::cout << (failed ? "FAILED " : "ALL PASSED ") << criteria.size() - static_cast<std::size_t>(failed) << "/"
            << criteria.size() << "\n";
  return failed ? 1 : 0;
}
