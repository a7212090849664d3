#ifndef SKLR_WSS_HPP
#define SKLR_WSS_HPP

#include <cstddef>
#include <optional>

#include "sklr/dual.hpp"

namespace sklr {

enum class WssKind { first_order, second_order };

struct WssChoice {
    std::size_t i = 0;
    std::size_t j = 0;
    double violation = 0.0;   // -y_i grad_i + y_j grad_j at selection time
    double score = 0.0;       // v^2/q for second order, violation for first
};

/// Maximal violating pair; empty optional when the KKT gap is <= kkt_tol.
/// Ties in the argmax/argmin break toward the smaller index.
std::optional<WssChoice> select_mvp(const DualState& s, const Hyperparams& h);

/// Second-order rule: i* is the MVP max side, j* maximizes v^2/q among
/// indices of I_low that violate optimality together with i*. Returns the
/// empty optional exactly when select_mvp does (the tolerance gate is the
/// MVP gap).
std::optional<WssChoice> select_second_order(const DualState& s, const Hyperparams& h);

std::optional<WssChoice> select_pair(const DualState& s, const Hyperparams& h, WssKind kind);

} // namespace sklr

#endif
