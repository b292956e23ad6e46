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

#include "voxelrf/voxel_grid.hpp"

#include <algorithm>

namespace voxelrf
{
    namespace
    {
        // Stencil from continuous node coordinates (u in [0, L-1] per axis).
        TrilinearStencil stencil_from_coords(const GridDims &dims, const std::array<double, 3> &u)
        {
            std::array<int, 3> base{};
            std::array<double, 3> frac{};
            for (int a = 0; a < 3; ++a)
            {
                const int last_cell = dims[a] - 2;
                int i0 = static_cast<int>(std::floor(u[a]));
                i0 = std::clamp(i0, 0, last_cell);
                base[a] = i0;
                frac[a] = std::clamp(u[a] - i0, 0.0, 1.0);
            }

            TrilinearStencil st;
            const std::int64_t sx = 1, sy = dims.x, sz = std::int64_t(dims.x) * dims.y;
            const std::int64_t origin = base[0] * sx + base[1] * sy + base[2] * sz;
            for (int corner = 0; corner < 8; ++corner)
            {
                const int dx = corner & 1, dy = (corner >> 1) & 1, dz = (corner >> 2) & 1;
                st.nodes[corner] = origin + dx * sx + dy * sy + dz * sz;
                st.weights[corner] = (dx ? frac[0] : 1.0 - frac[0]) *
                                     (dy ? frac[1] : 1.0 - frac[1]) *
                                     (dz ? frac[2] : 1.0 - frac[2]);
            }
            return st;
        }
    }

    bool Aabb::contains(const Vec3 &p, double tolerance) const
    {
        for (int a = 0; a < 3; ++a)
            if (!(p[a] >= min_corner[a] - tolerance && p[a] <= max_corner[a] + tolerance))
                return false;
        return true;
    }

    void Aabb::validate() const
    {
        if (!min_corner.finite() || !max_corner.finite())
            throw ContractError("bounding box corners must be finite");
        for (int a = 0; a < 3; ++a)
            if (!(max_corner[a] > min_corner[a]))
                throw ContractError("bounding box max_corner must exceed min_corner on every axis, got min " +
                                    to_string(min_corner) + " max " + to_string(max_corner));
    }

    VoxelGrid::VoxelGrid(GridDims dims, int channels, Aabb bbox, float fill)
        : dims_(dims), channels_(channels), bbox_(bbox)
    {
        if (dims.x < 2 || dims.y < 2 || dims.z < 2)
            throw ContractError("voxel grid needs at least 2 nodes per axis");
        if (channels < 1)
            throw ContractError("voxel grid needs at least one channel");
        bbox.validate();
        values_.assign(static_cast<std::size_t>(dims.node_count() * channels), fill);
    }

    Vec3 VoxelGrid::node_position(int i, int j, int k) const
    {
        const Vec3 ext = bbox_.extent();
        return {bbox_.min_corner.x + ext.x * (double(i) / (dims_.x - 1)),
                bbox_.min_corner.y + ext.y * (double(j) / (dims_.y - 1)),
                bbox_.min_corner.z + ext.z * (double(k) / (dims_.z - 1))};
    }

    Vec3 VoxelGrid::voxel_size() const
    {
        const Vec3 ext = bbox_.extent();
        return {ext.x / (dims_.x - 1), ext.y / (dims_.y - 1), ext.z / (dims_.z - 1)};
    }

    TrilinearStencil VoxelGrid::stencil(const Vec3 &p) const
    {
        const Vec3 ext = bbox_.extent();
        // Admit rounding noise from ray arithmetic, nothing more.
        const double tol = 1e-9 * std::max({ext.x, ext.y, ext.z});
        if (!bbox_.contains(p, tol))
            throw OutOfBoundsError("grid query " + to_string(p) + " outside bounding box");
        std::array<double, 3> u{};
        for (int a = 0; a < 3; ++a)
            u[a] = (p[a] - bbox_.min_corner[a]) / ext[a] * (dims_[a] - 1);
        return stencil_from_coords(dims_, u);
    }

    void VoxelGrid::gather(const TrilinearStencil &st, std::span<double> out) const
    {
        if (out.size() != std::size_t(channels_))
            throw ContractError("gather output width does not match grid channels");
        std::fill(out.begin(), out.end(), 0.0);
        for (int corner = 0; corner < 8; ++corner)
        {
            const double w = st.weights[corner];
            const float *src = values_.data() + st.nodes[corner] * channels_;
            for (int c = 0; c < channels_; ++c)
                out[c] += w * src[c];
        }
    }

    double VoxelGrid::gather_scalar(const TrilinearStencil &st) const
    {
        double acc = 0.0;
        for (int corner = 0; corner < 8; ++corner)
            acc += st.weights[corner] * values_[st.nodes[corner] * channels_];
        return acc;
    }

    void VoxelGrid::interpolate(const Vec3 &p, std::span<double> out) const
    {
        gather(stencil(p), out);
    }

    std::vector<double> VoxelGrid::interpolate(const Vec3 &p) const
    {
        std::vector<double> out(channels_);
        interpolate(p, out);
        return out;
    }

    VoxelGrid init_grid(GridDims dims, int channels, const Aabb &bbox, float fill)
    {
        return VoxelGrid(dims, channels, bbox, fill);
    }

    void scatter(const TrilinearStencil &st, int channels, std::span<const double> upstream, std::span<double> grad)
    {
        for (int corner = 0; corner < 8; ++corner)
        {
            const double w = st.weights[corner];
            if (w == 0.0)
                continue;
            double *dst = grad.data() + st.nodes[corner] * channels;
            for (int c = 0; c < channels; ++c)
                dst[c] += w * upstream[c];
        }
    }

    void interpolate_backward(const VoxelGrid &grid, const Vec3 &p, std::span<const double> upstream, std::span<double> grad_accum)
    {
        if (upstream.size() != std::size_t(grid.channels()))
            throw ContractError("upstream width does not match grid channels");
        if (grad_accum.size() != grid.values().size())
            throw ContractError("gradient buffer shape does not match grid");
        scatter(grid.stencil(p), grid.channels(), upstream, grad_accum);
    }

    VoxelGrid upsample(const VoxelGrid &grid, GridDims new_dims)
    {
        const GridDims &old = grid.dims();
        if (new_dims.x < old.x || new_dims.y < old.y || new_dims.z < old.z)
            throw ContractError("upsample cannot shrink a grid");
        if (new_dims == old)
            return grid;

        VoxelGrid out(new_dims, grid.channels(), grid.bbox());
        const int C = grid.channels();
        std::vector<double> tmp(C);
        for (int k = 0; k < new_dims.z; ++k)
            for (int j = 0; j < new_dims.y; ++j)
                for (int i = 0; i < new_dims.x; ++i)
                {
                    // Index-space coordinates: i*(L-1) is an integer, so nodes that coincide with
                    // coarse nodes land on exact integers and copy the coarse value bit-for-bit.
                    const std::array<double, 3> u{double(i) * (old.x - 1) / (new_dims.x - 1),
                                                  double(j) * (old.y - 1) / (new_dims.y - 1),
                                                  double(k) * (old.z - 1) / (new_dims.z - 1)};
                    grid.gather(stencil_from_coords(old, u), tmp);
                    auto dst = out.node(i, j, k);
                    for (int c = 0; c < C; ++c)
                        dst[c] = static_cast<float>(tmp[c]);
                }
        return out;
    }
}
