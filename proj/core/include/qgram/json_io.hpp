#ifndef QGRAM_JSON_IO_HPP
#define QGRAM_JSON_IO_HPP

#include <string>

#include "qgram/deform.hpp"
#include "qgram/ensemble.hpp"

namespace qgram {

/// {"dim": d, "probs": [p1,...], "states": [[[re,im],... d entries], ... n entries]}
std::string ensemble_to_json(const Ensemble& e);

/// Rejects norm or probability violations beyond 1e-8 with a diagnostic
/// naming the offending index; accepted states and probabilities are
/// renormalized before construction.
Ensemble ensemble_from_json(const std::string& text);

/// {"dim": n, "matrix": [[[re,im],... n entries], ... n rows]}
std::string gram_to_json(const GramMatrix& g);
GramMatrix gram_from_json(const std::string& text);

std::string report_to_json(const DeformationReport& report);

}  // namespace qgram

#endif
