#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace dac {

inline constexpr double kDefaultBalanceTol = 1e-9;

// One edge as it appears in an edge-list file: 1-based node indices.
struct EdgeRecord {
  int from = 0;
  int to = 0;
  double weight = 0.0;
  int line = 0;  // source line, 0 when not read from a file
};

// Weighted digraph. An edge (i, j) with weight w sets a_ij = w, meaning
// agent i receives information from agent j. Immutable after construction.
class Digraph {
 public:
  // Throws InputError unless the matrix is square, n >= 2, entries are
  // finite and nonnegative, and the diagonal is zero.
  explicit Digraph(Eigen::MatrixXd adjacency);

  int size() const { return static_cast<int>(adjacency_.rows()); }
  const Eigen::MatrixXd& adjacency() const { return adjacency_; }
  double weight(int i, int j) const { return adjacency_(i, j); }

 private:
  Eigen::MatrixXd adjacency_;
};

struct StructureReport {
  bool strongly_connected = false;
  bool weight_balanced = false;
  bool undirected = false;
  Eigen::VectorXd in_degrees;
  Eigen::VectorXd out_degrees;
  double d_max = 0.0;

  bool scwb() const { return strongly_connected && weight_balanced; }
};

// Orthonormal basis of the subspace orthogonal to the all-ones vector.
struct DisagreementBasis {
  Eigen::MatrixXd R;  // n x (n-1)
};

// Builds a digraph from 1-based edge records. The node count is the
// largest index seen, or `n` when given (which must cover every index).
// Rejects self-loops, nonpositive weights, duplicates, bad indices.
Digraph load_graph(std::span<const EdgeRecord> edges, std::optional<int> n = std::nullopt);

// Parses the `i j w` edge-list format ('#' starts a comment). Errors carry
// the offending line number.
std::vector<EdgeRecord> parse_edge_list(std::istream& in);
Digraph read_edge_list_file(const std::filesystem::path& path);

// Serialises in the same edge-list format (1-based, one edge per line).
void write_edge_list(std::ostream& out, const Digraph& g);

StructureReport validate(const Digraph& g, double balance_tol = kDefaultBalanceTol);

// Out-Laplacian D_out - A; each diagonal entry is the row sum of the
// off-diagonal weights so that L * 1 vanishes.
Eigen::MatrixXd laplacian(const Digraph& g);

// Householder reflection taking e_1 to 1/sqrt(n) * 1; columns 2..n of the
// reflector form R. Deterministic for each n.
DisagreementBasis disagreement_basis(int n);

// I - (1/n) 11^T
Eigen::MatrixXd averaging_projector(int n);

}  // namespace dac
