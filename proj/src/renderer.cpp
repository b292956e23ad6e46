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

#include "voxelrf/renderer.hpp"

#include <algorithm>
#include <limits>

namespace voxelrf
{
    void SceneGeometry::validate() const
    {
        bbox.validate();
        if (!bbox.contains(rx))
            throw ContractError("receiver position " + to_string(rx) + " lies outside the bounding box");
        if (res.azimuth < 1 || res.elevation < 1)
            throw ContractError("spectrum resolution must be at least 1x1");
    }

    Vec3 direction_from_angles(int m, int n, SpectrumResolution res)
    {
        if (m < 0 || m >= res.azimuth || n < 0 || n >= res.elevation)
            throw ContractError("direction index (" + std::to_string(m) + ", " + std::to_string(n) + ") out of range");
        const double phi = 2.0 * M_PI * (m + 0.5) / res.azimuth;
        const double theta = 0.5 * M_PI * (n + 0.5) / res.elevation;
        const double ct = std::cos(theta);
        return {ct * std::cos(phi), ct * std::sin(phi), std::sin(theta)};
    }

    RaySpan clip_ray(const Vec3 &origin, const Vec3 &dir, const Aabb &bbox)
    {
        double t_exit = std::numeric_limits<double>::infinity();
        for (int a = 0; a < 3; ++a)
        {
            const double d = dir[a];
            if (d == 0.0)
                continue; // parallel slab: origin is inside, so it never bounds the ray
            const double t0 = (bbox.min_corner[a] - origin[a]) / d;
            const double t1 = (bbox.max_corner[a] - origin[a]) / d;
            t_exit = std::min(t_exit, std::max(t0, t1));
        }
        if (!std::isfinite(t_exit))
            throw ContractError("clip_ray needs a non-zero direction");
        return {0.0, std::max(t_exit, 0.0)};
    }

    RaySamples sample_ray(const SceneGeometry &geometry, const Vec3 &dir, double step)
    {
        if (!(step > 0.0))
            throw ContractError("sampling step must be positive");
        const RaySpan span = clip_ray(geometry.rx, dir, geometry.bbox);
        RaySamples out;
        const double length = span.t_far - span.t_near;
        if (!(length > 0.0))
            return out;
        const auto count = static_cast<std::size_t>(std::floor(length / step));
        out.distances.resize(count);
        out.spacings.assign(count, step);
        for (std::size_t i = 0; i < count; ++i)
            out.distances[i] = span.t_near + (double(i) + 0.5) * step;
        return out;
    }

    double default_step(GridDims dims, const Aabb &bbox)
    {
        const Vec3 ext = bbox.extent();
        const double edge = std::min({ext.x / (dims.x - 1), ext.y / (dims.y - 1), ext.z / (dims.z - 1)});
        return 0.25 * edge;
    }

    double default_step(const VoxelGrid &grid)
    {
        return default_step(grid.dims(), grid.bbox());
    }

    void composite_into(std::span<const double> sigma, std::span<const double> signal, std::span<const double> spacing, Composite &out)
    {
        const std::size_t K = sigma.size();
        if (signal.size() != K || spacing.size() != K)
            throw ContractError("composite inputs must have equal lengths");
        out.alpha.resize(K);
        out.transmittance.resize(K);
        out.weights.resize(K);
        double T = 1.0;
        double R = 0.0;
        for (std::size_t i = 0; i < K; ++i)
        {
            if (!(sigma[i] >= 0.0))
                throw ContractError("negative or NaN density in composite");
            const double a = -std::expm1(-sigma[i] * spacing[i]);
            const double w = T * a;
            out.alpha[i] = a;
            out.transmittance[i] = T;
            out.weights[i] = w;
            R += w * signal[i];
            T *= 1.0 - a;
        }
        out.radiance = R;
        out.final_transmittance = T;
    }

    Composite composite(std::span<const double> sigma, std::span<const double> signal, std::span<const double> spacing)
    {
        Composite c;
        composite_into(sigma, signal, spacing, c);
        return c;
    }

    const RayResult &trace_ray(const FieldModel &model, const SceneGeometry &geometry, const Vec3 &tx, const Vec3 &dir,
                               const RenderOptions &options, RayTape &tape)
    {
        const double step = options.step > 0.0 ? options.step : default_step(model.density);
        if (options.skip_threshold < 0.0)
            throw ContractError("skip threshold must be >= 0");

        tape.cond = condition_ray(model, tx, -dir);
        tape.samples = sample_ray(geometry, dir, step);
        tape.sigma.clear();
        tape.signal.clear();
        tape.spacing.clear();

        RayResult &res = tape.result;
        res = RayResult{};
        const std::size_t K = tape.samples.distances.size();
        res.samples = int(K);
        for (std::size_t i = 0; i < K; ++i)
        {
            if (tape.kept.size() <= std::size_t(res.kept))
                tape.kept.emplace_back();
            SampleState &s = tape.kept[res.kept];
            evaluate_density(model, geometry.rx + dir * tape.samples.distances[i], s);
            if (s.sigma < options.skip_threshold)
            {
                ++res.skipped;
                continue;
            }
            evaluate_signal(model, tape.cond, s);
            tape.sigma.push_back(s.sigma);
            tape.signal.push_back(s.signal);
            tape.spacing.push_back(tape.samples.spacings[i]);
            ++res.kept;
        }

        composite_into(tape.sigma, tape.signal, tape.spacing, tape.comp);
        res.radiance = tape.comp.radiance;
        res.final_transmittance = tape.comp.final_transmittance;
        for (double w : tape.comp.weights)
            res.weight_sum += w;
        return res;
    }

    RayResult render_ray(const FieldModel &model, const SceneGeometry &geometry, const Vec3 &tx, const Vec3 &dir,
                         const RenderOptions &options)
    {
        RayTape tape;
        return trace_ray(model, geometry, tx, dir, options, tape);
    }

    void backward_ray(const FieldModel &model, const RayTape &tape, double d_radiance, double d_final_transmittance,
                      GradientSet &grads, RayGradScratch &scratch)
    {
        const std::size_t K = std::size_t(tape.result.kept);
        if (K == 0)
            return;
        const Composite &c = tape.comp;
        const double TK = c.final_transmittance;

        // dR/dsigma_i = delta_i (T_{i+1} S_i - sum_{j>i} w_j S_j), dT_K/dsigma_i = -delta_i T_K.
        double suffix = 0.0;
        for (std::size_t idx = K; idx-- > 0;)
        {
            const double S = tape.signal[idx];
            const double delta = tape.spacing[idx];
            const double T_next = c.transmittance[idx] * (1.0 - c.alpha[idx]);
            const double d_sigma = d_radiance * delta * (T_next * S - suffix) - d_final_transmittance * delta * TK;
            const double d_signal = d_radiance * c.weights[idx];
            suffix += c.weights[idx] * S;
            backward_sample(model, tape.kept[idx], d_sigma, d_signal, grads, scratch);
        }
        flush_ray(model, tape.cond, scratch, grads);
    }

    SpatialSpectrum render_spectrum(const FieldModel &model, const SceneGeometry &geometry, const Vec3 &tx,
                                    const RenderOptions &options, RenderStats *stats)
    {
        if (!tx.finite())
            throw ContractError("transmitter position must be finite");
        SpatialSpectrum out(geometry.res);
        RayTape tape;
        for (int m = 0; m < geometry.res.azimuth; ++m)
            for (int n = 0; n < geometry.res.elevation; ++n)
            {
                const RayResult &r = trace_ray(model, geometry, tx, direction_from_angles(m, n, geometry.res), options, tape);
                out.at(m, n) = static_cast<float>(r.radiance);
                if (stats)
                {
                    stats->samples += r.samples;
                    stats->kept += r.kept;
                    stats->skipped += r.skipped;
                    stats->max_conservation_error = std::max(stats->max_conservation_error,
                                                             std::abs(r.weight_sum + r.final_transmittance - 1.0));
                }
            }
        return out;
    }

    double aggregate_rssi(const SpatialSpectrum &spectrum, double calibration_db)
    {
        double total = 0.0;
        for (float v : spectrum.values)
        {
            if (!(v >= 0.0f))
                throw ContractError("spectrum values must be non-negative");
            total += v;
        }
        if (!(total > 0.0))
            throw NumericalError("no received power");
        return 10.0 * std::log10(total) + calibration_db;
    }
}
