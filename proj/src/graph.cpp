#include "dac/graph.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <utility>

#include "dac/errors.hpp"

namespace dac {

namespace {

std::string where(const EdgeRecord& e) {
  return e.line > 0 ? "line " + std::to_string(e.line) + ": " : std::string{};
}

// Breadth-first reachability from node 0, following a_ij > 0 either as
// i -> j (forward) or j -> i (reverse).
bool reaches_all(const Eigen::MatrixXd& a, bool reverse) {
  const int n = static_cast<int>(a.rows());
  std::vector<bool> seen(n, false);
  std::vector<int> frontier{0};
  seen[0] = true;
  int count = 1;
  while (!frontier.empty()) {
    const int i = frontier.back();
    frontier.pop_back();
    for (int j = 0; j < n; ++j) {
      const double w = reverse ? a(j, i) : a(i, j);
      if (w > 0.0 && !seen[j]) {
        seen[j] = true;
        ++count;
        frontier.push_back(j);
      }
    }
  }
  return count == n;
}

}  // namespace

Digraph::Digraph(Eigen::MatrixXd adjacency) : adjacency_(std::move(adjacency)) {
  if (adjacency_.rows() != adjacency_.cols()) {
    throw InputError("adjacency matrix must be square");
  }
  if (adjacency_.rows() < 2) {
    throw InputError("a digraph needs at least two nodes");
  }
  for (Eigen::Index i = 0; i < adjacency_.rows(); ++i) {
    for (Eigen::Index j = 0; j < adjacency_.cols(); ++j) {
      const double w = adjacency_(i, j);
      if (!std::isfinite(w) || w < 0.0) {
        throw InputError("adjacency weights must be finite and nonnegative");
      }
    }
    if (adjacency_(i, i) != 0.0) {
      throw InputError("adjacency diagonal must be zero (no self-loops)");
    }
  }
}

Digraph load_graph(std::span<const EdgeRecord> edges, std::optional<int> n) {
  int max_index = 0;
  for (const auto& e : edges) {
    if (e.from < 1 || e.to < 1) {
      throw InputError(where(e) + "node indices are 1-based and must be positive");
    }
    max_index = std::max({max_index, e.from, e.to});
  }
  const int nodes = n.value_or(max_index);
  if (nodes < 2) {
    throw InputError("a digraph needs at least two nodes");
  }
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(nodes, nodes);
  std::set<std::pair<int, int>> seen;
  for (const auto& e : edges) {
    if (e.from > nodes || e.to > nodes) {
      throw InputError(where(e) + "node index out of range [1, " + std::to_string(nodes) + "]");
    }
    if (e.from == e.to) {
      throw InputError(where(e) + "self-loop on node " + std::to_string(e.from));
    }
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw InputError(where(e) + "edge weight must be positive and finite");
    }
    if (!seen.emplace(e.from, e.to).second) {
      throw InputError(where(e) + "duplicate edge " + std::to_string(e.from) + " -> " +
                       std::to_string(e.to));
    }
    a(e.from - 1, e.to - 1) = e.weight;
  }
  return Digraph(std::move(a));
}

std::vector<EdgeRecord> parse_edge_list(std::istream& in) {
  std::vector<EdgeRecord> edges;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream fields(raw);
    std::string first;
    if (!(fields >> first)) continue;  // blank or comment-only

    EdgeRecord e;
    e.line = line_no;
    std::string second, third, extra;
    if (!(fields >> second >> third) || (fields >> extra)) {
      throw InputError("line " + std::to_string(line_no) + ": expected `i j w`");
    }
    try {
      std::size_t used = 0;
      e.from = std::stoi(first, &used);
      if (used != first.size()) throw std::invalid_argument(first);
      e.to = std::stoi(second, &used);
      if (used != second.size()) throw std::invalid_argument(second);
      e.weight = std::stod(third, &used);
      if (used != third.size()) throw std::invalid_argument(third);
    } catch (const std::logic_error&) {
      throw InputError("line " + std::to_string(line_no) + ": cannot parse `" + raw + "`");
    }
    edges.push_back(e);
  }
  return edges;
}

Digraph read_edge_list_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open edge list " + path.string());
  const auto edges = parse_edge_list(in);
  return load_graph(edges);
}

void write_edge_list(std::ostream& out, const Digraph& g) {
  const auto old_precision = out.precision(17);
  for (int i = 0; i < g.size(); ++i) {
    for (int j = 0; j < g.size(); ++j) {
      if (g.weight(i, j) > 0.0) out << i + 1 << ' ' << j + 1 << ' ' << g.weight(i, j) << '\n';
    }
  }
  out.precision(old_precision);
}

StructureReport validate(const Digraph& g, double balance_tol) {
  const auto& a = g.adjacency();
  StructureReport report;
  report.out_degrees = a.rowwise().sum();
  report.in_degrees = a.colwise().sum().transpose();
  report.strongly_connected = reaches_all(a, false) && reaches_all(a, true);
  report.weight_balanced =
      (report.in_degrees - report.out_degrees).cwiseAbs().maxCoeff() <= balance_tol;
  report.undirected = (a - a.transpose()).cwiseAbs().maxCoeff() <= balance_tol;
  report.d_max = std::max(report.out_degrees.maxCoeff(), report.in_degrees.maxCoeff());
  return report;
}

Eigen::MatrixXd laplacian(const Digraph& g) {
  Eigen::MatrixXd L = -g.adjacency();
  for (int i = 0; i < g.size(); ++i) {
    double degree = 0.0;
    for (int j = 0; j < g.size(); ++j) degree += g.weight(i, j);
    L(i, i) = degree;
  }
  return L;
}

DisagreementBasis disagreement_basis(int n) {
  if (n < 2) throw InputError("disagreement basis needs n >= 2");
  const double s = 1.0 / std::sqrt(static_cast<double>(n));
  Eigen::VectorXd u = Eigen::VectorXd::Constant(n, -s);
  u(0) += 1.0;
  const Eigen::MatrixXd reflector =
      Eigen::MatrixXd::Identity(n, n) - (2.0 / u.squaredNorm()) * u * u.transpose();
  return {reflector.rightCols(n - 1)};
}

Eigen::MatrixXd averaging_projector(int n) {
  return Eigen::MatrixXd::Identity(n, n) -
         Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n));
}

}  // namespace dac
