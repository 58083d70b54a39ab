// distribution.hpp — probability vectors over vertex sets.
#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <vector>

namespace qwl {

class Distribution {
  public:
    Distribution() = default;

    explicit Distribution(Eigen::VectorXd v, double tol = 1e-12) : v_(std::move(v)) {
        double sum = 0;
        for (Eigen::Index i = 0; i < v_.size(); ++i) {
            if (v_(i) < -tol) throw std::invalid_argument("distribution: negative entry");
            if (v_(i) < 0) v_(i) = 0;
            sum += v_(i);
        }
        if (std::abs(sum - 1.0) > tol) throw std::invalid_argument("distribution: does not sum to 1");
    }

    static Distribution point_mass(Eigen::Index n, Eigen::Index at) {
        Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
        v(at) = 1.0;
        return Distribution(v);
    }

    static Distribution uniform(Eigen::Index n) {
        return Distribution(Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n)));
    }

    const Eigen::VectorXd& vec() const { return v_; }
    Eigen::Index size() const { return v_.size(); }
    double operator()(Eigen::Index i) const { return v_(i); }

    double min_positive() const {
        double m = 1.0;
        for (Eigen::Index i = 0; i < v_.size(); ++i)
            if (v_(i) > 0) m = std::min(m, v_(i));
        return m;
    }

    std::vector<Eigen::Index> support() const {
        std::vector<Eigen::Index> s;
        for (Eigen::Index i = 0; i < v_.size(); ++i)
            if (v_(i) > 0) s.push_back(i);
        return s;
    }

    double mass(const std::vector<Eigen::Index>& subset) const {
        double m = 0;
        for (auto i : subset) m += v_(i);
        return m;
    }

    // Normalized restriction to a subset (zero elsewhere).
    Distribution restricted_to(const std::vector<Eigen::Index>& subset) const {
        const double m = mass(subset);
        if (m <= 0) throw std::invalid_argument("restriction to zero-mass subset");
        Eigen::VectorXd v = Eigen::VectorXd::Zero(v_.size());
        for (auto i : subset) v(i) = v_(i) / m;
        return Distribution(v);
    }

  private:
    Eigen::VectorXd v_;
};

// (1/2) * l1 distance.
inline double tv_distance(const Distribution& a, const Distribution& b) {
    if (a.size() != b.size()) throw std::invalid_argument("tv_distance: size mismatch");
    return 0.5 * (a.vec() - b.vec()).lpNorm<1>();
}

}  // namespace qwl
