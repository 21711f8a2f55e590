#pragma once

#include <cstddef>
#include <vector>

namespace qednp {

enum class SpacingPolicy { Uniform, DenseNearFeature, Explicit };

// Strictly increasing frequency samples (rad/ns), at least 3 of them.
class FrequencyGrid {
public:
    explicit FrequencyGrid(std::vector<double> points,
                           SpacingPolicy policy = SpacingPolicy::Explicit);

    static FrequencyGrid uniform(double lo, double hi, std::size_t n);
    // Points cluster around `center` with local spacing ~ width * span / n;
    // a sinh map keeps the grid strictly monotone and hits lo/hi exactly.
    static FrequencyGrid dense_near(double lo, double hi, std::size_t n, double center,
                                    double width);

    const std::vector<double>& points() const { return pts_; }
    std::size_t size() const { return pts_.size(); }
    double operator[](std::size_t i) const { return pts_[i]; }
    double front() const { return pts_.front(); }
    double back() const { return pts_.back(); }
    SpacingPolicy policy() const { return policy_; }
    bool contains(double w) const { return w >= pts_.front() && w <= pts_.back(); }
    // Largest local spacing; the resolution limit of peak extraction.
    double max_step() const;

private:
    std::vector<double> pts_;
    SpacingPolicy policy_;
};

// Uniform sample times 0, dt, ..., n*dt.
std::vector<double> time_grid(double t_end, double dt);

}  // namespace qednp
