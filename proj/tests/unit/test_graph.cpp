#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dac/errors.hpp"
#include "dac/generators.hpp"
#include "dac/graph.hpp"

namespace {

using dac::InputError;

std::vector<dac::EdgeRecord> parse(const std::string& text) {
  std::istringstream in(text);
  return dac::parse_edge_list(in);
}

TEST(Graph, RingRowsSumToOne) {
  const auto g = dac::load_graph(parse("1 2 1\n2 3 1\n3 4 1\n4 5 1\n5 6 1\n6 1 1\n"));
  ASSERT_EQ(g.size(), 6);
  EXPECT_TRUE((g.adjacency().rowwise().sum().array() == 1.0).all());
  EXPECT_DOUBLE_EQ(g.weight(0, 1), 1.0);
  EXPECT_DOUBLE_EQ(g.weight(1, 0), 0.0);
}

TEST(Graph, CommentsAndBlankLines) {
  const auto edges = parse("# header\n\n1 2 0.5  # trailing\n   \n2 1 0.5\n");
  ASSERT_EQ(edges.size(), 2u);
  EXPECT_EQ(edges[0].line, 3);
  EXPECT_EQ(edges[1].line, 5);
}

TEST(Graph, ParseErrorsCarryLineNumbers) {
  try {
    parse("1 2 1\n2 x 1\n");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  EXPECT_THROW(parse("1 2\n"), InputError);
  EXPECT_THROW(parse("1 2 1 4\n"), InputError);
}

TEST(Graph, LoadRejectsBadEdges) {
  EXPECT_THROW(dac::load_graph(parse("1 2 1\n1 2 2\n")), InputError);
  EXPECT_THROW(dac::load_graph(parse("1 1 1\n1 2 1\n")), InputError);
  EXPECT_THROW(dac::load_graph(parse("1 2 0\n")), InputError);
  EXPECT_THROW(dac::load_graph(parse("1 2 -1\n")), InputError);
  EXPECT_THROW(dac::load_graph(parse("0 2 1\n")), InputError);
  EXPECT_THROW(dac::load_graph(parse("1 3 1\n"), 2), InputError);
  try {
    dac::load_graph(parse("1 2 1\n2 1 1\n1 2 1\n"));
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

TEST(Graph, EmptyEdgeListIsNotStronglyConnected) {
  const auto g = dac::load_graph({}, 2);
  const auto s = dac::validate(g);
  EXPECT_FALSE(s.strongly_connected);
  EXPECT_FALSE(s.scwb());
}

TEST(Graph, DigraphConstructorChecks) {
  EXPECT_THROW(dac::Digraph(Eigen::MatrixXd::Zero(1, 1)), InputError);
  EXPECT_THROW(dac::Digraph(Eigen::MatrixXd::Zero(2, 3)), InputError);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2, 2);
  a(0, 0) = 1.0;
  EXPECT_THROW(dac::Digraph{a}, InputError);
  a(0, 0) = 0.0;
  a(0, 1) = -1.0;
  EXPECT_THROW(dac::Digraph{a}, InputError);
}

TEST(Graph, ValidateReferenceGraphs) {
  const auto ring = dac::validate(dac::graphs::six_ring());
  EXPECT_TRUE(ring.scwb());
  EXPECT_FALSE(ring.undirected);
  EXPECT_DOUBLE_EQ(ring.d_max, 1.0);

  const auto chords = dac::validate(dac::graphs::six_ring_with_chords());
  EXPECT_TRUE(chords.scwb());
  EXPECT_DOUBLE_EQ(chords.d_max, 3.0);
  EXPECT_DOUBLE_EQ(chords.out_degrees(4), 3.0);
  EXPECT_DOUBLE_EQ(chords.in_degrees(4), 3.0);
}

TEST(Graph, ValidateDetectsFailures) {
  // Path 1 -> 2 -> 3: not strongly connected, not balanced.
  const auto path = dac::validate(dac::load_graph(parse("1 2 1\n2 3 1\n")));
  EXPECT_FALSE(path.strongly_connected);
  EXPECT_FALSE(path.weight_balanced);

  // Strongly connected but unbalanced: ring plus one chord.
  const auto chord = dac::validate(dac::load_graph(parse("1 2 1\n2 3 1\n3 1 1\n1 3 1\n")));
  EXPECT_TRUE(chord.strongly_connected);
  EXPECT_FALSE(chord.weight_balanced);

  const auto und = dac::validate(dac::graphs::undirected_path(4));
  EXPECT_TRUE(und.undirected);
  EXPECT_TRUE(und.scwb());
}

TEST(Graph, LaplacianStructure) {
  const auto l = dac::laplacian(dac::graphs::six_ring_with_chords());
  EXPECT_LT(l.rowwise().sum().cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT(l.colwise().sum().cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_DOUBLE_EQ(l(4, 4), 3.0);
  EXPECT_DOUBLE_EQ(l(0, 1), -1.0);
}

TEST(Graph, DisagreementBasis) {
  for (int n = 2; n <= 9; ++n) {
    const auto r = dac::disagreement_basis(n).R;
    ASSERT_EQ(r.rows(), n);
    ASSERT_EQ(r.cols(), n - 1);
    EXPECT_LT((r.transpose() * r - Eigen::MatrixXd::Identity(n - 1, n - 1)).norm(), 1e-14);
    EXPECT_LT((r.transpose() * Eigen::VectorXd::Ones(n)).norm(), 1e-14);
    EXPECT_LT((r * r.transpose() - dac::averaging_projector(n)).norm(), 1e-14);
  }
  EXPECT_THROW(dac::disagreement_basis(1), InputError);
}

TEST(Graph, EdgeListRoundTrip) {
  dac::Rng rng(3);
  const auto g = dac::graphs::random_scwb(7, rng);
  std::stringstream buf;
  dac::write_edge_list(buf, g);
  const auto back = dac::load_graph(dac::parse_edge_list(buf), 7);
  EXPECT_EQ(back.adjacency(), g.adjacency());
}

TEST(Graph, ReadFile) {
  const auto path = std::filesystem::temp_directory_path() / "dac_graph_test.txt";
  {
    std::ofstream out(path);
    out << "1 2 2.5\n2 1 2.5\n";
  }
  const auto g = dac::read_edge_list_file(path);
  EXPECT_DOUBLE_EQ(g.weight(1, 0), 2.5);
  std::filesystem::remove(path);
  EXPECT_THROW(dac::read_edge_list_file(path), InputError);
}

TEST(Graph, RandomGeneratorsProduceValidGraphs) {
  dac::Rng rng(11);
  for (int i = 0; i < 30; ++i) {
    EXPECT_TRUE(dac::validate(dac::graphs::random_scwb(2 + i % 8, rng)).scwb());
    const auto und = dac::validate(dac::graphs::random_connected_undirected(2 + i % 8, rng));
    EXPECT_TRUE(und.scwb());
    EXPECT_TRUE(und.undirected);
  }
}

}  // namespace
