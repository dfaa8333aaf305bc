#pragma once

#include "coldplant/error.hpp"

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace coldplant {

/// Multilinear interpolation over a rectilinear N-D grid.
///
/// Values are stored row-major with the first axis varying slowest.
/// Queries outside an axis are clamped to its nearest endpoint, and the
/// blend is written as (1-t)*a + t*b so grid nodes are reproduced exactly.
template <std::size_t N>
class MultilinearTable {
public:
    MultilinearTable() = default;

    MultilinearTable(std::array<std::vector<double>, N> axes, std::vector<double> values)
        : axes_(std::move(axes)), values_(std::move(values))
    {
        std::size_t expected = 1;
        for (std::size_t d = 0; d < N; ++d) {
            const auto& axis = axes_[d];
            if (axis.empty()) {
                throw Error(ErrorCode::MalformedGrid, "axis " + std::to_string(d) + " is empty");
            }
            for (std::size_t i = 0; i < axis.size(); ++i) {
                if (!std::isfinite(axis[i]) || (i > 0 && !(axis[i] > axis[i - 1]))) {
                    throw Error(ErrorCode::MalformedGrid,
                                "axis " + std::to_string(d) + " is not strictly increasing");
                }
            }
            expected *= axis.size();
        }
        if (values_.size() != expected) {
            throw Error(ErrorCode::MalformedGrid, "expected " + std::to_string(expected) + " values, got "
                                                      + std::to_string(values_.size()));
        }
        for (double v : values_) {
            if (!std::isfinite(v)) {
                throw Error(ErrorCode::MalformedGrid, "non-finite grid value");
            }
        }
    }

    const std::vector<double>& axis(std::size_t d) const { return axes_[d]; }
    const std::vector<double>& values() const { return values_; }

    double at_node(const std::array<std::size_t, N>& idx) const { return values_[flat(idx)]; }

    double operator()(const std::array<double, N>& point) const
    {
        std::array<std::size_t, N> lo{};
        std::array<double, N> t{};
        for (std::size_t d = 0; d < N; ++d) {
            locate(axes_[d], point[d], lo[d], t[d]);
        }
        double result = 0.0;
        for (std::size_t corner = 0; corner < (std::size_t{1} << N); ++corner) {
            double w = 1.0;
            std::array<std::size_t, N> idx{};
            for (std::size_t d = 0; d < N; ++d) {
                const bool upper = (corner >> (N - 1 - d)) & 1U;
                if (axes_[d].size() == 1) {
                    if (upper) {
                        w = 0.0;
                        break;
                    }
                    idx[d] = 0;
                    continue;
                }
                idx[d] = lo[d] + (upper ? 1 : 0);
                w *= upper ? t[d] : (1.0 - t[d]);
            }
            if (w != 0.0) {
                result += w * values_[flat(idx)];
            }
        }
        return result;
    }

private:
    static void locate(const std::vector<double>& axis, double x, std::size_t& lo, double& t)
    {
        const std::size_t n = axis.size();
        if (n == 1 || x <= axis.front()) {
            lo = 0;
            t = 0.0;
            return;
        }
        if (x >= axis.back()) {
            lo = n - 2;
            t = 1.0;
            return;
        }
        std::size_t i = 0;
        while (i + 2 < n && x >= axis[i + 1]) {
            ++i;
        }
        lo = i;
        t = (x - axis[i]) / (axis[i + 1] - axis[i]);
    }

    std::size_t flat(const std::array<std::size_t, N>& idx) const
    {
        std::size_t f = 0;
        for (std::size_t d = 0; d < N; ++d) {
            f = f * axes_[d].size() + idx[d];
        }
        return f;
    }

    std::array<std::vector<double>, N> axes_{};
    std::vector<double> values_;
};

}  // namespace coldplant
