#pragma once

#include <array>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace sqz {

using Complex = std::complex<double>;

// Index 0 is the excited state |+1>, index 1 the ground state |-1>.
using DensityMatrix = Eigen::Matrix2cd;
using Operator2 = Eigen::Matrix2cd;
using Superop = Eigen::Matrix4cd;
using Vec4 = Eigen::Vector4cd;

class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class RangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

class UnsupportedSchedule : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Carries the simulation time at which a non-finite or out-of-tolerance value appeared.
class NumericalFailure : public std::runtime_error {
public:
    explicit NumericalFailure(const std::string& what, std::optional<double> time = std::nullopt)
        : std::runtime_error(what), time_(time) {}

    std::optional<double> time() const { return time_; }

private:
    std::optional<double> time_;
};

/// Bloch-vector components (<sx>, <sy>, <sz>).
struct Expectations {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

} // namespace sqz
