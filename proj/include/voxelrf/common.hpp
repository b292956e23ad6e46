// SPDX-License-Identifier: Apache-2.0
//
// voxelrf: voxel-grid radiance fields for wireless spatial spectrum synthesis
// Copyright (C) 2026 voxelrf contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace voxelrf
{
    // Error hierarchy. The CLI maps each kind to a fixed process exit code.
    class Error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // A precondition of an operation was violated by its caller.
    class ContractError : public Error
    {
    public:
        using Error::Error;
    };

    // Grid query outside the bounding box.
    class OutOfBoundsError : public ContractError
    {
    public:
        using ContractError::ContractError;
    };

    class ConfigError : public Error
    {
    public:
        using Error::Error;
    };

    class IoError : public Error
    {
    public:
        using Error::Error;
    };

    // Malformed binary or manifest content.
    class FormatError : public Error
    {
    public:
        using Error::Error;
    };

    // NaN/Inf in a loss or gradient, or a log of zero power.
    class NumericalError : public Error
    {
    public:
        using Error::Error;
    };

    struct Vec3
    {
        double x = 0.0;
        double y = 0.0;
        double z = 0.0;

        constexpr double operator[](int axis) const { return axis == 0 ? x : (axis == 1 ? y : z); }
        constexpr double &operator[](int axis) { return axis == 0 ? x : (axis == 1 ? y : z); }

        constexpr Vec3 operator+(const Vec3 &o) const { return {x + o.x, y + o.y, z + o.z}; }
        constexpr Vec3 operator-(const Vec3 &o) const { return {x - o.x, y - o.y, z - o.z}; }
        constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
        constexpr Vec3 operator-() const { return {-x, -y, -z}; }
        constexpr bool operator==(const Vec3 &) const = default;

        constexpr double dot(const Vec3 &o) const { return x * o.x + y * o.y + z * o.z; }
        double norm() const { return std::sqrt(dot(*this)); }
        bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
    };

    inline std::string to_string(const Vec3 &v)
    {
        return "(" + std::to_string(v.x) + ", " + std::to_string(v.y) + ", " + std::to_string(v.z) + ")";
    }

    // Seeded generator with portable uniform/normal draws. The std distributions are
    // implementation-defined, which would break byte-identical datasets across toolchains.
    class Rng
    {
    public:
        explicit Rng(std::uint64_t seed) : state_(seed) {}

        std::uint64_t next_u64()
        {
            // splitmix64
            std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
            z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
            z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
            return z ^ (z >> 31);
        }

        // Uniform in [0, 1).
        double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
        double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

        // Uniform integer in [0, n).
        std::uint64_t below(std::uint64_t n)
        {
            // Lemire's multiply-shift; bias is < n / 2^64 and irrelevant here.
            return static_cast<std::uint64_t>((static_cast<unsigned __int128>(next_u64()) * n) >> 64);
        }

        double normal()
        {
            double u1 = uniform();
            while (u1 <= 0.0)
                u1 = uniform();
            const double u2 = uniform();
            return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
        }

    private:
        std::uint64_t state_;
    };

    inline double softplus(double v)
    {
        // log1p(exp(v)) without overflow for large v.
        return v > 30.0 ? v + std::log1p(std::exp(-v)) : std::log1p(std::exp(v));
    }

    inline double sigmoid(double v)
    {
        if (v >= 0.0)
            return 1.0 / (1.0 + std::exp(-v));
        const double e = std::exp(v);
        return e / (1.0 + e);
    }
}
