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

#include "voxelrf/common.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace voxelrf
{
    struct Aabb
    {
        Vec3 min_corner;
        Vec3 max_corner;

        Vec3 extent() const { return max_corner - min_corner; }
        Vec3 center() const { return (min_corner + max_corner) * 0.5; }

        // True when p lies inside the closed box grown by `tolerance` on every side.
        bool contains(const Vec3 &p, double tolerance = 0.0) const;

        // Throws ContractError unless max_corner > min_corner on every axis.
        void validate() const;

        bool operator==(const Aabb &) const = default;
    };

    // Node counts per axis.
    struct GridDims
    {
        int x = 2;
        int y = 2;
        int z = 2;

        std::int64_t node_count() const { return std::int64_t(x) * y * z; }
        int operator[](int axis) const { return axis == 0 ? x : (axis == 1 ? y : z); }
        bool operator==(const GridDims &) const = default;
    };

    // The eight corner nodes of the cell containing a point, with their trilinear weights.
    struct TrilinearStencil
    {
        std::array<std::int64_t, 8> nodes{};
        std::array<double, 8> weights{};
    };

    // Dense lattice of per-node values over an AABB. Nodes sit on cell corners with inclusive
    // endpoints: node (0,0,0) is at bbox.min_corner and node (Lx-1,Ly-1,Lz-1) at bbox.max_corner.
    // Storage is node-major with x fastest, channels innermost.
    class VoxelGrid
    {
    public:
        VoxelGrid() = default;
        VoxelGrid(GridDims dims, int channels, Aabb bbox, float fill = 0.0f);

        const GridDims &dims() const { return dims_; }
        int channels() const { return channels_; }
        const Aabb &bbox() const { return bbox_; }

        std::span<float> values() { return values_; }
        std::span<const float> values() const { return values_; }

        std::int64_t node_index(int i, int j, int k) const { return i + std::int64_t(dims_.x) * (j + std::int64_t(dims_.y) * k); }
        Vec3 node_position(int i, int j, int k) const;

        // Per-axis spacing between adjacent nodes.
        Vec3 voxel_size() const;

        std::span<float> node(int i, int j, int k) { return {values_.data() + node_index(i, j, k) * channels_, std::size_t(channels_)}; }
        std::span<const float> node(int i, int j, int k) const { return {values_.data() + node_index(i, j, k) * channels_, std::size_t(channels_)}; }

        // Throws OutOfBoundsError for points outside bbox.
        TrilinearStencil stencil(const Vec3 &p) const;

        // out.size() must equal channels().
        void gather(const TrilinearStencil &st, std::span<double> out) const;
        double gather_scalar(const TrilinearStencil &st) const;

        void interpolate(const Vec3 &p, std::span<double> out) const;
        std::vector<double> interpolate(const Vec3 &p) const;

    private:
        GridDims dims_{};
        int channels_ = 0;
        Aabb bbox_{};
        std::vector<float> values_;
    };

    // Throws ContractError if any axis has fewer than 2 nodes or channels < 1.
    VoxelGrid init_grid(GridDims dims, int channels, const Aabb &bbox, float fill);

    // Adds upstream[c] * weight into the eight corner slots of grad (laid out like the grid values).
    void scatter(const TrilinearStencil &st, int channels, std::span<const double> upstream, std::span<double> grad);

    // Adjoint of interpolate: accumulates d<upstream, interpolate(grid, p)>/d(values) into grad_accum.
    void interpolate_backward(const VoxelGrid &grid, const Vec3 &p, std::span<const double> upstream, std::span<double> grad_accum);

    // Resamples onto a finer lattice over the same box. new_dims == dims returns an identical copy.
    VoxelGrid upsample(const VoxelGrid &grid, GridDims new_dims);
}
