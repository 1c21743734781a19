#ifndef OSFACE_ERRORS_HPP
#define OSFACE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace osface {

/// Non-finite argument or parameter outside its admissible range.
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A theta factor in a denominator fell below the guard. The message names the factor.
class pole_error : public std::runtime_error {
public:
    pole_error(std::string factor, double modulus)
        : std::runtime_error("pole: |" + factor + "| = " + std::to_string(modulus) +
                             " is below the denominator guard"),
          factor_(std::move(factor)), modulus_(modulus) {}

    const std::string& factor() const noexcept { return factor_; }
    double modulus() const noexcept { return modulus_; }

private:
    std::string factor_;
    double modulus_;
};

/// The sample point makes a relative residual meaningless; the caller should resample.
class degenerate_sample : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Requested size exceeds what an exhaustive routine is willing to enumerate.
class capacity_error : public std::length_error {
public:
    using std::length_error::length_error;
};

} // namespace osface

#endif // OSFACE_ERRORS_HPP
