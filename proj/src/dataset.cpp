#include "accc/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace accc {

int Dataset::num_classes() const {
  int k = 0;
  for (int l : labels) k = std::max(k, l + 1);
  return k;
}

Dataset synthetic_dataset(int n, int k, int dim, double spread, std::mt19937_64& rng) {
  if (k < 1 || n < k) throw std::invalid_argument("synthetic_dataset: need n >= k >= 1");
  if (dim < 1) throw std::invalid_argument("synthetic_dataset: need dim >= 1");
  if (spread < 0.0) throw std::invalid_argument("synthetic_dataset: spread must be nonnegative");

  Dataset data;
  data.n = n;
  data.labels.reserve(static_cast<std::size_t>(n));
  const int base = n / k;
  const int rem = n % k;
  for (int c = 0; c < k; ++c) {
    const int size = base + (c < rem ? 1 : 0);
    data.labels.insert(data.labels.end(), static_cast<std::size_t>(size), c);
  }

  const double side = 10.0 * static_cast<double>(k);
  std::uniform_real_distribution<double> in_box(0.0, side);
  Eigen::MatrixXd means(k, dim);
  for (int c = 0; c < k; ++c) {
    for (int d = 0; d < dim; ++d) means(c, d) = in_box(rng);
  }

  std::normal_distribution<double> unit_normal(0.0, 1.0);
  data.features.resize(n, dim);
  for (int i = 0; i < n; ++i) {
    const int c = data.labels[static_cast<std::size_t>(i)];
    for (int d = 0; d < dim; ++d) {
      data.features(i, d) = means(c, d) + spread * unit_normal(rng);
    }
  }
  return data;
}

namespace {

bool parse_double(const std::string& token, double* out) {
  const char* begin = token.c_str();
  char* end = nullptr;
  errno = 0;
  const double value = std::strtod(begin, &end);
  if (end == begin || errno == ERANGE) return false;
  while (*end == ' ' || *end == '\t') ++end;
  if (*end != '\0') return false;
  *out = value;
  return true;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  fields.push_back(cur);
  for (std::string& f : fields) {
    const auto first = f.find_first_not_of(" \t");
    const auto last = f.find_last_not_of(" \t");
    f = first == std::string::npos ? std::string() : f.substr(first, last - first + 1);
  }
  return fields;
}

[[noreturn]] void load_error(const std::string& path, std::size_t line_no, const std::string& what) {
  throw std::runtime_error(path + ": line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

Dataset load_feature_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);

  Dataset data;
  std::vector<std::vector<double>> rows;
  std::vector<double> raw_labels;
  std::size_t ncols = 0;
  std::size_t line_no = 0;
  bool saw_data = false;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;

    std::vector<std::string> fields = split_csv_line(line);
    if (!saw_data) {
      // Header detection: a first row with any non-numeric field is skipped.
      bool numeric = true;
      double ignored;
      for (const std::string& f : fields) {
        if (!parse_double(f, &ignored)) {
          numeric = false;
          break;
        }
      }
      if (!numeric) continue;
      ncols = fields.size();
      if (ncols < 2) load_error(path, line_no, "need at least one feature column plus a label");
      saw_data = true;
    }
    if (fields.size() != ncols) {
      load_error(path, line_no, "expected " + std::to_string(ncols) + " fields, found " +
                                    std::to_string(fields.size()));
    }

    std::vector<double> values(ncols);
    for (std::size_t j = 0; j < ncols; ++j) {
      if (!parse_double(fields[j], &values[j])) {
        load_error(path, line_no, "cannot parse '" + fields[j] + "' as a number");
      }
      if (!std::isfinite(values[j])) load_error(path, line_no, "non-finite value");
    }
    const double label = values.back();
    if (label != std::floor(label) || std::abs(label) > 1e9) {
      load_error(path, line_no, "class label must be an integer");
    }
    raw_labels.push_back(label);
    values.pop_back();
    rows.push_back(std::move(values));
  }

  if (rows.empty()) throw std::runtime_error(path + ": no data rows");

  data.n = static_cast<int>(rows.size());
  data.features.resize(data.n, static_cast<Eigen::Index>(ncols - 1));
  for (int i = 0; i < data.n; ++i) {
    for (std::size_t j = 0; j + 1 < ncols; ++j) {
      data.features(i, static_cast<Eigen::Index>(j)) = rows[static_cast<std::size_t>(i)][j];
    }
  }

  std::unordered_map<long long, int> remap;
  data.labels.reserve(rows.size());
  for (double l : raw_labels) {
    const auto key = static_cast<long long>(l);
    auto [it, inserted] = remap.try_emplace(key, static_cast<int>(remap.size()));
    data.labels.push_back(it->second);
  }
  return data;
}

Clustering kmeans(const Eigen::MatrixXd& features, int k, int max_iters, std::mt19937_64& rng) {
  const int n = static_cast<int>(features.rows());
  if (features.size() == 0) throw std::invalid_argument("kmeans: features are missing");
  if (k < 1 || k > n) throw std::invalid_argument("kmeans: need 1 <= k <= n");
  if (max_iters < 1) throw std::invalid_argument("kmeans: max_iters must be at least 1");

  const Eigen::Index dim = features.cols();
  Eigen::MatrixXd centers(k, dim);

  // k-means++ seeding
  std::uniform_int_distribution<int> any_point(0, n - 1);
  centers.row(0) = features.row(any_point(rng));
  Eigen::VectorXd d2 = (features.rowwise() - centers.row(0)).rowwise().squaredNorm();
  for (int c = 1; c < k; ++c) {
    const double total = d2.sum();
    int chosen;
    if (total <= 0.0) {
      chosen = any_point(rng);
    } else {
      const double r = std::uniform_real_distribution<double>(0.0, total)(rng);
      double acc = 0.0;
      chosen = n - 1;
      for (int i = 0; i < n; ++i) {
        acc += d2(i);
        if (acc >= r) {
          chosen = i;
          break;
        }
      }
    }
    centers.row(c) = features.row(chosen);
    d2 = d2.cwiseMin((features.rowwise() - centers.row(c)).rowwise().squaredNorm());
  }

  std::vector<int> assign(static_cast<std::size_t>(n), 0);
  std::vector<int> prev(static_cast<std::size_t>(n), -1);
  for (int iter = 0; iter < max_iters; ++iter) {
    for (int i = 0; i < n; ++i) {
      int best = 0;
      double best_d = (features.row(i) - centers.row(0)).squaredNorm();
      for (int c = 1; c < k; ++c) {
        const double d = (features.row(i) - centers.row(c)).squaredNorm();
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      assign[static_cast<std::size_t>(i)] = best;
    }
    if (assign == prev) break;
    prev = assign;

    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, dim);
    std::vector<int> counts(static_cast<std::size_t>(k), 0);
    for (int i = 0; i < n; ++i) {
      sums.row(assign[static_cast<std::size_t>(i)]) += features.row(i);
      ++counts[static_cast<std::size_t>(assign[static_cast<std::size_t>(i)])];
    }
    for (int c = 0; c < k; ++c) {
      if (counts[static_cast<std::size_t>(c)] > 0) {
        centers.row(c) = sums.row(c) / counts[static_cast<std::size_t>(c)];
      } else {
        // Re-seed an emptied center on the point farthest from its own center.
        int far = 0;
        double far_d = -1.0;
        for (int i = 0; i < n; ++i) {
          const double d =
              (features.row(i) - centers.row(assign[static_cast<std::size_t>(i)])).squaredNorm();
          if (d > far_d) {
            far_d = d;
            far = i;
          }
        }
        centers.row(c) = features.row(far);
      }
    }
  }
  return Clustering(assign);
}

}  // namespace accc
