#ifndef QGRAM_CLASSICAL_HPP
#define QGRAM_CLASSICAL_HPP

#include <string>
#include <vector>

#include "qgram/entropy.hpp"

namespace qgram {

/// Finite-alphabet channel: each input label carries a conditional output
/// distribution, inputs carry priors.
struct DiscreteChannel {
  std::vector<std::string> inputs;
  std::vector<double> priors;
  std::vector<std::vector<double>> rows;  // rows[x][y] = p(y|x)

  static DiscreteChannel create(std::vector<std::string> inputs, std::vector<double> priors,
                                std::vector<std::vector<double>> rows);
};

/// I(X:Y) = H(Y) - H(Y|X).
double mutual_information(const DiscreteChannel& ch, LogBase base = LogBase::bits);

/// Bhattacharyya coefficient sum_y sqrt(p(y|i) p(y|j)).
double pairwise_distribution_overlap(const DiscreteChannel& ch, std::size_t i, std::size_t j);

/// Total-variation agreement sum_y min(p(y|i), p(y|j)); same equality pattern
/// as the Bhattacharyya overlap on the demo channels.
double pairwise_tv_agreement(const DiscreteChannel& ch, std::size_t i, std::size_t j);

/// Three signals on outputs {1,2,3}: A uniform on {1,2}, B on {2,3},
/// C on {1,3}, uniform priors.
DiscreteChannel abc_channel();

/// Three signals on outputs {1,2,3,4}: A' uniform on {1,4}, B' on {2,4},
/// C' on {3,4}, uniform priors. Same pairwise overlaps as abc_channel,
/// different mutual information.
DiscreteChannel abc_prime_channel();

}  // namespace qgram

#endif
