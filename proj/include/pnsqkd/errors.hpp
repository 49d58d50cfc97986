#pragma once

#include <stdexcept>

namespace pnsqkd {

// The requested operating point admits no attack satisfying the model's constraints.
class InfeasibleModel : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace pnsqkd
