#include "longmem/errors.hpp"

namespace longmem {

NotPositiveDefinite::NotPositiveDefinite(std::size_t order)
    : std::runtime_error("covariance sequence is not positive definite at order " +
                         std::to_string(order)),
      order_(order) {}

AccuracyError::AccuracyError(const std::string& what, double achieved_bound)
    : std::runtime_error(what + " (achieved relative bound " +
                         std::to_string(achieved_bound) + ")"),
      achieved_(achieved_bound) {}

}  // namespace longmem
