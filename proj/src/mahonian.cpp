#include "swapdist/mahonian.hpp"

#include <stdexcept>

namespace swapdist {

MahonianTable mahonian(int n) {
    if (n < 1 || n > 12)
        throw std::invalid_argument("mahonian: n must be in 1..12");
    std::vector<std::uint64_t> counts{1};  // n = 1
    for (int k = 2; k <= n; ++k) {
        const std::size_t width = static_cast<std::size_t>(k) * (k - 1) / 2 + 1;
        std::vector<std::uint64_t> next(width, 0);
        // prefix-sum form of the convolution with a length-k box
        for (std::size_t i = 0; i < width; ++i) {
            std::uint64_t acc = 0;
            for (std::size_t j = 0; j < static_cast<std::size_t>(k); ++j) {
                if (j > i) break;
                const std::size_t idx = i - j;
                if (idx < counts.size()) acc += counts[idx];
            }
            next[i] = acc;
        }
        counts = std::move(next);
    }
    return MahonianTable{n, std::move(counts)};
}

}  // namespace swapdist
