#include "qgram/classical.hpp"

#include <cmath>
#include <numbers>

namespace qgram {

DiscreteChannel DiscreteChannel::create(std::vector<std::string> inputs, std::vector<double> priors,
                                        std::vector<std::vector<double>> rows) {
  if (inputs.empty() || inputs.size() != priors.size() || inputs.size() != rows.size()) {
    throw InvalidDistribution("channel shape mismatch");
  }
  double psum = 0.0;
  for (double p : priors) {
    if (p < -1e-12) throw InvalidDistribution("negative prior");
    psum += p;
  }
  if (std::abs(psum - 1.0) > 1e-12) {
    throw InvalidDistribution("priors sum to " + std::to_string(psum));
  }
  const std::size_t alphabet = rows.front().size();
  for (const auto& row : rows) {
    if (row.size() != alphabet) throw InvalidDistribution("ragged channel rows");
    double rsum = 0.0;
    for (double p : row) {
      if (p < -1e-12) throw InvalidDistribution("negative conditional probability");
      rsum += p;
    }
    if (std::abs(rsum - 1.0) > 1e-12) {
      throw InvalidDistribution("channel row sums to " + std::to_string(rsum));
    }
  }
  DiscreteChannel ch;
  ch.inputs = std::move(inputs);
  ch.priors = std::move(priors);
  ch.rows = std::move(rows);
  return ch;
}

double mutual_information(const DiscreteChannel& ch, LogBase base) {
  const std::size_t alphabet = ch.rows.front().size();
  std::vector<double> marginal(alphabet, 0.0);
  for (std::size_t x = 0; x < ch.rows.size(); ++x) {
    for (std::size_t y = 0; y < alphabet; ++y) marginal[y] += ch.priors[x] * ch.rows[x][y];
  }
  double h_y = 0.0;
  for (double q : marginal) {
    if (q > 0.0) h_y -= q * std::log(q);
  }
  double h_y_given_x = 0.0;
  for (std::size_t x = 0; x < ch.rows.size(); ++x) {
    double h_row = 0.0;
    for (double p : ch.rows[x]) {
      if (p > 0.0) h_row -= p * std::log(p);
    }
    h_y_given_x += ch.priors[x] * h_row;
  }
  const double nats = h_y - h_y_given_x;
  return base == LogBase::bits ? nats / std::numbers::ln2 : nats;
}

namespace {

void check_pair(const DiscreteChannel& ch, std::size_t i, std::size_t j) {
  if (i >= ch.rows.size() || j >= ch.rows.size()) {
    throw IndexOutOfRange("channel input index out of range");
  }
}

}  // namespace

double pairwise_distribution_overlap(const DiscreteChannel& ch, std::size_t i, std::size_t j) {
  check_pair(ch, i, j);
  double s = 0.0;
  for (std::size_t y = 0; y < ch.rows[i].size(); ++y) {
    s += std::sqrt(ch.rows[i][y] * ch.rows[j][y]);
  }
  return s;
}

double pairwise_tv_agreement(const DiscreteChannel& ch, std::size_t i, std::size_t j) {
  check_pair(ch, i, j);
  double s = 0.0;
  for (std::size_t y = 0; y < ch.rows[i].size(); ++y) {
    s += std::min(ch.rows[i][y], ch.rows[j][y]);
  }
  return s;
}

DiscreteChannel abc_channel() {
  return DiscreteChannel::create(
      {"A", "B", "C"}, {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0},
      {{0.5, 0.5, 0.0}, {0.0, 0.5, 0.5}, {0.5, 0.0, 0.5}});
}

DiscreteChannel abc_prime_channel() {
  return DiscreteChannel::create(
      {"A'", "B'", "C'"}, {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0},
      {{0.5, 0.0, 0.0, 0.5}, {0.0, 0.5, 0.0, 0.5}, {0.0, 0.0, 0.5, 0.5}});
}

}  // namespace qgram
