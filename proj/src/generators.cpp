#include "dac/generators.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "dac/errors.hpp"

namespace dac::graphs {

namespace {

std::vector<int> shuffled(int n, Rng& rng) {
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (int i = n - 1; i > 0; --i) std::swap(order[i], order[uniform_int(rng, 0, i)]);
  return order;
}

void add_cycle(Eigen::MatrixXd& a, const std::vector<int>& nodes, double weight) {
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    a(nodes[k], nodes[(k + 1) % nodes.size()]) += weight;
  }
}

}  // namespace

Digraph directed_ring(int n, double weight) {
  if (n < 2) throw InputError("ring needs n >= 2");
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) a(i, (i + 1) % n) += weight;
  return Digraph(a);
}

Digraph complete(int n, double weight) {
  if (n < 2) throw InputError("complete graph needs n >= 2");
  Eigen::MatrixXd a = Eigen::MatrixXd::Constant(n, n, weight);
  a.diagonal().setZero();
  return Digraph(a);
}

Digraph undirected_path(int n, double weight) {
  if (n < 2) throw InputError("path needs n >= 2");
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) a(i, i + 1) = a(i + 1, i) = weight;
  return Digraph(a);
}

Digraph six_ring() { return directed_ring(6); }

Digraph six_ring_with_chords() {
  Eigen::MatrixXd a = directed_ring(6).adjacency();
  a(2, 4) = a(4, 2) = 1.0;  // 3 <-> 5
  a(0, 4) = a(4, 0) = 1.0;  // 1 <-> 5
  return Digraph(a);
}

Digraph random_scwb(int n, Rng& rng, int extra_cycles) {
  if (n < 2) throw InputError("random_scwb needs n >= 2");
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  add_cycle(a, shuffled(n, rng), uniform(rng, 0.5, 2.0));
  for (int c = 0; c < extra_cycles; ++c) {
    auto order = shuffled(n, rng);
    const int length = uniform_int(rng, 2, n);
    order.resize(length);
    add_cycle(a, order, uniform(rng, 0.2, 1.5));
  }
  return Digraph(a);
}

Digraph random_connected_undirected(int n, Rng& rng, double density) {
  if (n < 2) throw InputError("random_connected_undirected needs n >= 2");
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  const auto order = shuffled(n, rng);
  for (int k = 1; k < n; ++k) {
    const int i = order[k];
    const int j = order[uniform_int(rng, 0, k - 1)];
    a(i, j) = a(j, i) = uniform(rng, 0.5, 2.0);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (a(i, j) == 0.0 && uniform01(rng) < density) a(i, j) = a(j, i) = uniform(rng, 0.2, 1.5);
    }
  }
  return Digraph(a);
}

}  // namespace dac::graphs
