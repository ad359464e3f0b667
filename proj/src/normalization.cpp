#include "oa2net/normalization.hpp"

#include <cmath>

#include "oa2net/error.hpp"
#include "oa2net/pajek.hpp"

namespace oa2net {

const char* to_string(IndexKind kind) noexcept {
  switch (kind) {
    case IndexKind::Plain: return "plain";
    case IndexKind::Stochastic: return "stochastic";
    case IndexKind::Jaccard: return "jaccard";
    case IndexKind::Salton: return "salton";
    case IndexKind::Expected: return "expected";
    case IndexKind::Activity: return "activity";
    case IndexKind::LogActivity: return "log-activity";
  }
  return "unknown";
}

IndexMatrix::IndexMatrix(std::vector<std::string> labels_, IndexKind kind_)
    : labels(std::move(labels_)), kind(kind_), cells(labels.size() * labels.size()) {}

double transform_weight(double value, WeightTransform fn) {
  switch (fn) {
    case WeightTransform::Sqrt:
      if (value < 0) fail(ErrorKind::Domain, "sqrt of negative weight " + pajek::format_number(value));
      return std::sqrt(value);
    case WeightTransform::Log2:
      if (value < 1) fail(ErrorKind::Domain, "log2 of weight " + pajek::format_number(value) + " below 1");
      return std::log2(value);
  }
  return value;
}

WeightedNetwork transform_weights(const WeightedNetwork& net, WeightTransform fn) {
  WeightedNetwork out(net.labels(), net.directedness());
  for (const Link& l : net.links()) {
    double w = 0;
    try {
      w = transform_weight(l.weight, fn);
    } catch (const Error& e) {
      fail(ErrorKind::Domain, std::string(e.what()) + " on link " + net.label(l.source) + " - " + net.label(l.target));
    }
    if (!(w > 0)) {
      fail(ErrorKind::Domain, "transformed weight of link " + net.label(l.source) + " - " + net.label(l.target) +
                                  " is not positive");
    }
    out.add_link(l.source, l.target, w);
  }
  return out;
}

IndexMatrix transform_weights(const IndexMatrix& m, WeightTransform fn) {
  IndexMatrix out(m.labels, m.kind);
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      auto v = m.at(i, j);
      if (!v) continue;
      try {
        out.set(i, j, transform_weight(*v, fn));
      } catch (const Error& e) {
        fail(ErrorKind::Domain, std::string(e.what()) + " at cell (" + m.labels[i] + "," + m.labels[j] + ")");
      }
    }
  }
  return out;
}

IndexMatrix transform_weights(const CoMatrix& co, WeightTransform fn) {
  IndexMatrix plain(co.labels(), IndexKind::Plain);
  for (std::size_t i = 0; i < co.size(); ++i) {
    for (std::size_t j = 0; j < co.size(); ++j) {
      if (auto v = co.at(i, j)) plain.set(i, j, static_cast<double>(*v));
    }
  }
  return transform_weights(plain, fn);
}

IndexMatrix normalize(const CoMatrix& co, Normalization method) {
  static constexpr IndexKind kinds[] = {IndexKind::Stochastic, IndexKind::Jaccard, IndexKind::Salton};
  IndexMatrix out(co.labels(), kinds[static_cast<int>(method)]);
  auto m = co.marginals();
  auto issue = [&](std::size_t i, std::size_t j, const std::string& what) {
    out.issues.push_back({i, j, what + " at (" + out.labels[i] + "," + out.labels[j] + ")"});
  };
  for (std::size_t i = 0; i < co.size(); ++i) {
    for (std::size_t j = 0; j < co.size(); ++j) {
      auto c = co.at(i, j);
      if (!c) continue;
      double value = static_cast<double>(*c);
      switch (method) {
        case Normalization::Stochastic:
          if (m.row[i] == 0) {
            issue(i, j, "zero row sum");
            continue;
          }
          out.set(i, j, value / static_cast<double>(m.row[i]));
          break;
        case Normalization::Jaccard:
        case Normalization::Salton: {
          auto di = co.at(i, i);
          auto dj = co.at(j, j);
          if (!di || !dj || *di == 0 || *dj == 0) {
            issue(i, j, "missing or zero diagonal");
            continue;
          }
          double a = static_cast<double>(*di);
          double b = static_cast<double>(*dj);
          double denom = method == Normalization::Jaccard ? a + b - value : std::sqrt(a * b);
          if (!(denom > 0)) {
            issue(i, j, "non-positive denominator");
            continue;
          }
          out.set(i, j, value / denom);
          break;
        }
      }
    }
  }
  return out;
}

IndexMatrix expected_matrix(const CoMatrix& co) {
  auto m = co.marginals();
  if (m.total == 0) fail(ErrorKind::Domain, "expected weights need a positive total");
  IndexMatrix out(co.labels(), IndexKind::Expected);
  const double total = static_cast<double>(m.total);
  for (std::size_t i = 0; i < co.size(); ++i) {
    for (std::size_t j = 0; j < co.size(); ++j) {
      out.set(i, j, static_cast<double>(m.row[i]) * static_cast<double>(m.col[j]) / total);
    }
  }
  return out;
}

IndexMatrix activity_index(const CoMatrix& co) {
  auto m = co.marginals();
  if (m.total == 0) fail(ErrorKind::Domain, "activity index needs a positive total");
  IndexMatrix out(co.labels(), IndexKind::Activity);
  const double total = static_cast<double>(m.total);
  for (std::size_t i = 0; i < co.size(); ++i) {
    for (std::size_t j = 0; j < co.size(); ++j) {
      auto c = co.at(i, j);
      if (!c) continue;
      if (m.row[i] == 0 || m.col[j] == 0) {
        out.issues.push_back({i, j, "zero marginal at (" + out.labels[i] + "," + out.labels[j] + ")"});
        continue;
      }
      out.set(i, j, static_cast<double>(*c) * total /
                        (static_cast<double>(m.row[i]) * static_cast<double>(m.col[j])));
    }
  }
  return out;
}

IndexMatrix log_activity(const IndexMatrix& activity) {
  if (activity.kind != IndexKind::Activity) {
    fail(ErrorKind::InvalidArgument, std::string("log index expects an activity matrix, got ") +
                                         to_string(activity.kind));
  }
  IndexMatrix out(activity.labels, IndexKind::LogActivity);
  out.imputed.assign(out.cells.size(), false);
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t j = 0; j < out.size(); ++j) {
      auto a = activity.at(i, j);
      if (a && *a > 0) {
        out.set(i, j, std::log2(*a));
      } else {
        out.set(i, j, 0.0);
        out.imputed[i * out.size() + j] = true;
      }
    }
  }
  return out;
}

namespace {

template <typename Cell>
std::string format_matrix_csv(const IndexMatrix& m, Cell&& cell) {
  std::string out;
  for (const auto& l : m.labels) out += "," + l;
  out += '\n';
  for (std::size_t i = 0; i < m.size(); ++i) {
    out += m.labels[i];
    for (std::size_t j = 0; j < m.size(); ++j) {
      out += ',';
      out += cell(i, j);
    }
    out += '\n';
  }
  return out;
}

}  // namespace

std::string format_index_csv(const IndexMatrix& m) {
  return format_matrix_csv(m, [&](std::size_t i, std::size_t j) {
    auto v = m.at(i, j);
    return v ? pajek::format_number(*v) : std::string();
  });
}

std::string format_imputed_csv(const IndexMatrix& m) {
  return format_matrix_csv(m, [&](std::size_t i, std::size_t j) {
    return std::string(m.is_imputed(i, j) ? "1" : "0");
  });
}

void write_index_csv(const IndexMatrix& m, const std::filesystem::path& path) {
  pajek::write_text_file(path, format_index_csv(m));
}

void write_imputed_csv(const IndexMatrix& m, const std::filesystem::path& path) {
  pajek::write_text_file(path, format_imputed_csv(m));
}

}  // namespace oa2net
