#pragma once

#include <span>
#include <string>
#include <vector>

#include "lstab/rational.hpp"

namespace lstab {

// Positive rational component weights summing to 1.
class Polarization {
public:
    // Throws InvalidPolarization.
    explicit Polarization(std::vector<Rational> weights);

    static Polarization uniform(std::size_t components);

    const std::vector<Rational>& weights() const noexcept { return weights_; }
    std::size_t size() const noexcept { return weights_.size(); }
    const Rational& operator[](std::size_t i) const { return weights_.at(i); }

    // sum_i w_i r_i
    Rational weighted_rank(std::span<const int> ranks) const;

    std::string to_string() const;

    bool operator==(const Polarization&) const = default;

private:
    std::vector<Rational> weights_;
};

} // namespace lstab
