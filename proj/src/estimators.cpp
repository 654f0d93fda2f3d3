#include "kplan/complexity.hpp"
#include "kplan/errors.hpp"

namespace kplan {

CachedEstimator::CachedEstimator(std::shared_ptr<const ComplexityEstimator> inner)
    : inner_(std::move(inner)) {
  if (!inner_) throw ValidationError("cached estimator needs an inner estimator");
}

double CachedEstimator::estimate(SymbolView seq) const {
  std::u16string key(seq.begin(), seq.end());
  {
    std::shared_lock lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  const double value = inner_->estimate(seq);
  std::unique_lock lock(mutex_);
  cache_.emplace(std::move(key), value);
  return value;
}

std::size_t CachedEstimator::cache_size() const {
  std::shared_lock lock(mutex_);
  return cache_.size();
}

double execution_complexity(const TimedDfa& dfa, StateId s0, const Policy& pi,
                            const ComplexityEstimator& est) {
  return est.estimate(execute_policy(dfa, s0, pi));
}

}  // namespace kplan
