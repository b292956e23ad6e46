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

#include "voxelrf/dataio.hpp"
#include "voxelrf/objectives.hpp"
#include "voxelrf/renderer.hpp"

#include <json.hpp>

#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace voxelrf
{
    struct TrainConfig
    {
        GridDims final_dims{32, 32, 32};
        int feature_dim = 8;
        int hidden_width = 64;
        int position_levels = 5;
        int direction_levels = 4;
        double density_bias = -3.0;
        bool deformation = true;

        int stages = 3;                            // progressive stages before the final resolution
        std::vector<std::int64_t> upsample_iters;  // empty: total/2^(stages+1-k) for k = 1..stages
        std::int64_t total_iters = 5000;
        int batch_rays = 256;
        double lr_grid = 0.2;
        double lr_mlp = 2e-3;
        double lr_decay_target_fraction = 0.1;
        double skip_threshold = 1e-4;
        double lambda_bg = 1e-4;
        double step = 0.0;                         // <= 0: quarter voxel of final_dims
        std::uint64_t seed = 0;
        std::int64_t log_interval = 100;

        // Minutes on a CPU: 32^3, F=8, width 64, 256 rays, 5k iterations.
        static TrainConfig desk();
        // 160^3, F=24, width 256, 1024 rays, 100k iterations.
        static TrainConfig paper();

        std::vector<std::int64_t> resolved_upsample_iters() const;
        ModelShape model_shape(const Aabb &bbox, int stage) const;
        double resolved_step(const Aabb &bbox) const;
        void validate() const;
    };

    nlohmann::json to_json(const TrainConfig &config);

    struct AdamConfig
    {
        double beta1 = 0.9;
        double beta2 = 0.999;
        double epsilon = 1e-8;
    };

    struct TensorMoments
    {
        std::vector<double> m;
        std::vector<double> v;
        std::int64_t step = 0;
    };

    struct AdamState
    {
        AdamConfig config;
        std::vector<TensorMoments> tensors;

        static AdamState for_model(const FieldModel &model, AdamConfig config = {});
        // Fresh moments sized for the model's current grid tensors; MLP moments are kept.
        void reset_grid_moments(const FieldModel &model);
    };

    // One bias-corrected Adam update of a single tensor. Throws NumericalError naming the tensor
    // if a gradient is not finite.
    void adam_step(std::span<float> params, std::span<const double> grads, TensorMoments &state, double lr,
                   const AdamConfig &config, std::string_view name);

    // Grids use lr_grid, networks lr_mlp.
    void adam_step(FieldModel &model, const GradientSet &grads, AdamState &state, double lr_grid, double lr_mlp);

    // lr0 * target_fraction^(iter / total_iters).
    double lr_at(std::int64_t iter, double lr0, std::int64_t total_iters, double target_fraction = 0.1);

    // Grid dims at progressive stage s: floor(final_count / 2^(stages - s)) voxels, allocated by
    // cube-root scaling of each axis, clamped to [2, final].
    GridDims progressive_dims(GridDims final_dims, int stage, int stages);

    struct RayQuery
    {
        Vec3 tx;
        Vec3 dir;
        double target = 0.0;
    };

    struct BatchOptions
    {
        RenderOptions render;
        double lambda_bg = kDefaultLambdaBg;
    };

    struct BatchResult
    {
        LossReport loss;
        std::vector<double> radiance;
        std::vector<double> final_transmittance;
        std::int64_t samples = 0;
        std::int64_t kept = 0;
        std::int64_t skipped = 0;
    };

    // Reusable per-batch storage.
    struct BatchWorkspace
    {
        std::vector<RayTape> tapes;
        RayGradScratch scratch;
    };

    // Renders every ray, evaluates the total loss, and (when grads is non-null) accumulates its
    // gradient into grads.
    BatchResult evaluate_batch(const FieldModel &model, const SceneGeometry &geometry, std::span<const RayQuery> rays,
                               const BatchOptions &options, GradientSet *grads, BatchWorkspace *workspace = nullptr);

    // Draws `count` (record, direction) rays uniformly from the given records.
    std::vector<RayQuery> sample_rays(const Dataset &dataset, std::span<const std::size_t> records, int count, Rng &rng);

    struct LogRow
    {
        std::int64_t iter = 0;
        double spectrum_loss = 0.0;
        double bg_loss = 0.0;
        double total = 0.0;
        double lr_grid = 0.0;
        double lr_mlp = 0.0;
    };

    // iter,spectrum_loss,bg_loss,total,lr_grid,lr_mlp
    std::string format_log_row(const LogRow &row);
    inline constexpr const char *kLogHeader = "iter,spectrum_loss,bg_loss,total,lr_grid,lr_mlp";

    struct UpsampleEvent
    {
        std::int64_t iteration = 0;
        int stage = 0; // stage entered
        const FieldModel &before;
        const FieldModel &after;
    };

    struct TrainCallbacks
    {
        std::function<void(const UpsampleEvent &)> on_upsample;
        std::function<void(const LogRow &)> on_log;
    };

    struct TrainResult
    {
        FieldModel model;
        std::vector<LogRow> history;
        std::int64_t samples = 0;
        std::int64_t kept = 0;
        std::int64_t skipped = 0;
    };

    TrainResult train(const Dataset &dataset, std::span<const std::size_t> records, const TrainConfig &config,
                      const TrainCallbacks &callbacks = {});

    struct RssiObservation
    {
        Vec3 tx;
        double measured_db = 0.0;
    };

    // Least-squares constant offset: mean(measured - 10 log10(sum of predicted spectrum)).
    // Observations whose predicted spectrum carries no power are ignored.
    double fit_rssi_calibration(const FieldModel &model, const SceneGeometry &geometry,
                                std::span<const RssiObservation> observations, const RenderOptions &options);
}
