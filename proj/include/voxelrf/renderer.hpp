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

#include "voxelrf/field_model.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace voxelrf
{
    struct SpectrumResolution
    {
        int azimuth = 36;  // M
        int elevation = 9; // N

        int cells() const { return azimuth * elevation; }
        bool operator==(const SpectrumResolution &) const = default;
    };

    struct SceneGeometry
    {
        Vec3 rx;
        Aabb bbox;
        SpectrumResolution res;

        void validate() const;
    };

    // Received power per (azimuth m, elevation n) cell, azimuth-major: index m * N + n.
    struct SpatialSpectrum
    {
        SpectrumResolution res;
        std::vector<float> values;

        SpatialSpectrum() = default;
        explicit SpatialSpectrum(SpectrumResolution r) : res(r), values(std::size_t(r.cells()), 0.0f) {}

        std::size_t index(int m, int n) const { return std::size_t(m) * res.elevation + n; }
        float at(int m, int n) const { return values[index(m, n)]; }
        float &at(int m, int n) { return values[index(m, n)]; }
    };

    // Cell-centre direction on the upper hemisphere, z up, elevation measured from the horizon:
    // phi = 2 pi (m + 0.5) / M, theta = (pi / 2) (n + 0.5) / N.
    Vec3 direction_from_angles(int m, int n, SpectrumResolution res);

    struct RaySpan
    {
        double t_near = 0.0;
        double t_far = 0.0;
    };

    // Slab test for a ray starting inside the box; t_near is 0.
    RaySpan clip_ray(const Vec3 &origin, const Vec3 &dir, const Aabb &bbox);

    struct RaySamples
    {
        std::vector<double> distances; // r_i from the receiver
        std::vector<double> spacings;  // delta_i
    };

    // r_i = t_near + (i + 0.5) step for i < floor((t_far - t_near) / step).
    RaySamples sample_ray(const SceneGeometry &geometry, const Vec3 &dir, double step);

    // A quarter of the smallest node spacing of the grid.
    double default_step(GridDims dims, const Aabb &bbox);
    double default_step(const VoxelGrid &grid);

    struct Composite
    {
        double radiance = 0.0;
        double final_transmittance = 1.0;
        std::vector<double> alpha;
        std::vector<double> transmittance; // T_i, before sample i
        std::vector<double> weights;       // T_i alpha_i
    };

    // Front-to-back alpha compositing with alpha_i = 1 - exp(-sigma_i delta_i).
    Composite composite(std::span<const double> sigma, std::span<const double> signal, std::span<const double> spacing);
    void composite_into(std::span<const double> sigma, std::span<const double> signal, std::span<const double> spacing, Composite &out);

    struct RenderOptions
    {
        double step = 0.0;             // <= 0 selects default_step(model grid)
        double skip_threshold = 1e-4;  // samples with sigma < threshold are skipped; 0 disables
    };

    struct RayResult
    {
        double radiance = 0.0;
        double final_transmittance = 1.0;
        double weight_sum = 0.0;
        int samples = 0;
        int kept = 0;
        int skipped = 0;
    };

    // Forward record of one ray, reusable across rays to avoid reallocation.
    struct RayTape
    {
        RayConditioning cond;
        RaySamples samples;
        std::vector<SampleState> kept; // pool; first result.kept entries are live
        std::vector<double> sigma;
        std::vector<double> signal;
        std::vector<double> spacing;
        Composite comp;
        RayResult result;
    };

    // Renders direction `dir` (pointing away from the receiver). The emitted signal is queried
    // toward the receiver, i.e. along -dir.
    const RayResult &trace_ray(const FieldModel &model, const SceneGeometry &geometry, const Vec3 &tx, const Vec3 &dir,
                               const RenderOptions &options, RayTape &tape);

    RayResult render_ray(const FieldModel &model, const SceneGeometry &geometry, const Vec3 &tx, const Vec3 &dir,
                         const RenderOptions &options);

    // Backpropagates dL/dR and dL/dT_K of a traced ray into grads.
    void backward_ray(const FieldModel &model, const RayTape &tape, double d_radiance, double d_final_transmittance,
                      GradientSet &grads, RayGradScratch &scratch);

    struct RenderStats
    {
        std::int64_t samples = 0;
        std::int64_t kept = 0;
        std::int64_t skipped = 0;
        double max_conservation_error = 0.0; // max |sum w + T_K - 1| over rays
    };

    SpatialSpectrum render_spectrum(const FieldModel &model, const SceneGeometry &geometry, const Vec3 &tx,
                                    const RenderOptions &options, RenderStats *stats = nullptr);

    // 10 log10(sum of cells) + calibration_db. Throws NumericalError("no received power") for an all-zero spectrum.
    double aggregate_rssi(const SpatialSpectrum &spectrum, double calibration_db);
}
