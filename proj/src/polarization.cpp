#include "lstab/polarization.hpp"

#include "lstab/error.hpp"

namespace lstab {

Polarization::Polarization(std::vector<Rational> weights) : weights_(std::move(weights)) {
    if (weights_.empty())
        fail(ErrorKind::InvalidPolarization, "polarization has no weights");
    Rational sum = 0;
    for (const auto& w : weights_) {
        if (w <= 0)
            fail(ErrorKind::InvalidPolarization,
                 "weight " + format_rational(w) + " is not positive");
        sum += w;
    }
    if (sum != 1)
        fail(ErrorKind::InvalidPolarization,
             "weights sum to " + format_rational(sum) + ", expected 1/1");
}

Polarization Polarization::uniform(std::size_t components) {
    return Polarization(std::vector<Rational>(components, Rational(1, static_cast<long>(components))));
}

Rational Polarization::weighted_rank(std::span<const int> ranks) const {
    if (ranks.size() != weights_.size())
        fail(ErrorKind::InvalidPolarization, "polarization has " + std::to_string(weights_.size()) +
                                                 " weights for " + std::to_string(ranks.size()) +
                                                 " components");
    Rational out = 0;
    for (std::size_t i = 0; i < ranks.size(); ++i)
        out += weights_[i] * ranks[i];
    return out;
}

std::string Polarization::to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        if (i)
            out += ", ";
        out += format_rational(weights_[i]);
    }
    return out + ")";
}

} // namespace lstab
