// Small numeric helpers shared across modules.
#pragma once

#include <cmath>

namespace skewgeo {

/// Neumaier compensated summation; order-dependent but deterministic.
class NeumaierSum {
  public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0;
    double comp_ = 0;
};

}  // namespace skewgeo
