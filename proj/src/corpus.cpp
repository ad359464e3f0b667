#include "oa2net/corpus.hpp"

#include <algorithm>
#include <sstream>

#include "oa2net/collection.hpp"
#include "oa2net/error.hpp"
#include "oa2net/pajek.hpp"

namespace oa2net {

WorkList::WorkList(std::vector<std::string> ids) {
  for (auto& id : ids) {
    if (!add(id)) fail(ErrorKind::InvalidArgument, "duplicate work id " + id);
  }
}

bool WorkList::add(const std::string& id) {
  if (!is_work_id(id)) fail(ErrorKind::InvalidArgument, "malformed work id \"" + id + "\"");
  if (!members_.insert(id).second) return false;
  ids_.push_back(id);
  return true;
}

ExpansionTable expansion_candidates(const WeightedNetwork& cite, const WorkList& known) {
  if (!cite.directed()) fail(ErrorKind::Precondition, "expansion needs a directed citation network");
  std::vector<std::size_t> indegree(cite.vertex_count(), 0);
  std::vector<bool> member(cite.vertex_count(), false);
  for (std::size_t i = 0; i < cite.vertex_count(); ++i) member[i] = known.contains(cite.labels()[i]);
  for (const Link& arc : cite.links()) {
    if (member[arc.source.offset()] && !member[arc.target.offset()]) ++indegree[arc.target.offset()];
  }
  ExpansionTable table;
  for (std::size_t i = 0; i < indegree.size(); ++i) {
    if (indegree[i] > 0) table.push_back({cite.labels()[i], indegree[i]});
  }
  std::sort(table.begin(), table.end(), [](const ExpansionRow& a, const ExpansionRow& b) {
    if (a.indegree != b.indegree) return a.indegree > b.indegree;
    return a.id < b.id;
  });
  return table;
}

WorkList apply_threshold(const ExpansionTable& table, std::size_t min_indegree) {
  if (min_indegree < 1) fail(ErrorKind::Precondition, "threshold must be >= 1");
  WorkList out;
  for (const auto& row : table) {
    if (row.indegree >= min_indegree) out.add(row.id);
  }
  return out;
}

WorkList join_lists(const WorkList& old, const WorkList& added) {
  WorkList out = old;
  for (const auto& id : added.ids()) out.add(id);
  return out;
}

SaturationStep saturation_step(const WorkList& seed, std::size_t threshold, WorkSource& source) {
  if (threshold < 1) fail(ErrorKind::Precondition, "threshold must be >= 1");
  auto records = source.fetch_works_by_ids(seed.ids());
  auto cite = build_citation(records, CitationBoundary::IncludeCited);
  SaturationStep step;
  step.table = expansion_candidates(cite, seed);
  step.works = join_lists(seed, apply_threshold(step.table, threshold));
  step.converged = step.works.size() == seed.size();
  return step;
}

WorkList read_work_list(const std::filesystem::path& path) {
  std::istringstream in(pajek::read_text_file(path));
  WorkList list;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    // First CSV column only; quotes and surrounding blanks are ignored.
    line = line.substr(0, line.find(','));
    std::erase(line, '"');
    std::erase_if(line, [](char c) { return c == '\r' || c == ' ' || c == '\t'; });
    if (line.empty()) continue;
    auto id = short_openalex_id(line);
    if (lineno == 1 && !is_work_id(id) && (id == "id" || id == "ID")) continue;
    if (!is_work_id(id)) {
      fail(ErrorKind::Parse, path.string() + ":" + std::to_string(lineno) + ": not a work id: " + line);
    }
    list.add(id);
  }
  return list;
}

void write_work_list(const WorkList& list, const std::filesystem::path& path) {
  std::string out;
  for (const auto& id : list.ids()) out += id + "\n";
  pajek::write_text_file(path, out);
}

void write_expansion_csv(const ExpansionTable& table, const std::filesystem::path& path) {
  std::string out = "id,indegree\n";
  for (const auto& row : table) out += row.id + "," + std::to_string(row.indegree) + "\n";
  pajek::write_text_file(path, out);
}

}  // namespace oa2net
