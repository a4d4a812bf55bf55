#include "uavnet/rng.hpp"

#include <stdexcept>

namespace uavnet {

namespace {
constexpr int kPrimes[8] = {2, 3, 5, 7, 11, 13, 17, 19};

double radical_inverse(std::uint64_t index, int base) {
    double inv_base = 1.0 / base;
    double factor = inv_base;
    double result = 0.0;
    while (index > 0) {
        result += static_cast<double>(index % static_cast<std::uint64_t>(base)) * factor;
        index /= static_cast<std::uint64_t>(base);
        factor *= inv_base;
    }
    return result;
}
}  // namespace

Halton::Halton(int dimensions) : dim_(dimensions) {
    if (dimensions < 1 || dimensions > 8) throw std::invalid_argument("Halton: 1..8 dimensions");
}

void Halton::point(std::uint64_t index, double* out) const {
    for (int d = 0; d < dim_; ++d) out[d] = radical_inverse(index, kPrimes[d]);
}

}  // namespace uavnet
