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

#include "voxelrf/trainer.hpp"

#include <algorithm>
#include <cstdio>

namespace voxelrf
{
    TrainConfig TrainConfig::desk()
    {
        return TrainConfig{};
    }

    TrainConfig TrainConfig::paper()
    {
        TrainConfig c;
        c.final_dims = {160, 160, 160};
        c.feature_dim = 24;
        c.hidden_width = 256;
        c.batch_rays = 1024;
        c.total_iters = 100000;
        c.lr_grid = 0.2;
        c.lr_mlp = 2e-3;
        c.log_interval = 1000;
        return c;
    }

    std::vector<std::int64_t> TrainConfig::resolved_upsample_iters() const
    {
        if (total_iters == 0)
            return {};
        if (!upsample_iters.empty())
            return upsample_iters;
        std::vector<std::int64_t> out;
        for (int k = 1; k <= stages; ++k)
            out.push_back(total_iters >> (stages + 1 - k));
        return out;
    }

    ModelShape TrainConfig::model_shape(const Aabb &bbox, int stage) const
    {
        ModelShape s;
        s.dims = progressive_dims(final_dims, stage, stages);
        s.bbox = bbox;
        s.feature_dim = feature_dim;
        s.hidden_width = hidden_width;
        s.position_levels = position_levels;
        s.direction_levels = direction_levels;
        s.density_bias = density_bias;
        s.deformation = deformation;
        return s;
    }

    double TrainConfig::resolved_step(const Aabb &bbox) const
    {
        return step > 0.0 ? step : default_step(final_dims, bbox);
    }

    void TrainConfig::validate() const
    {
        auto fail = [](const std::string &m) { throw ConfigError("invalid training config: " + m); };
        if (final_dims.x < 2 || final_dims.y < 2 || final_dims.z < 2)
            fail("final_dims must be >= 2 on every axis");
        if (feature_dim < 1 || hidden_width < 1 || position_levels < 1 || direction_levels < 1)
            fail("feature_dim, hidden_width and encoding levels must be >= 1");
        if (stages < 0)
            fail("stages must be >= 0");
        if (total_iters < 0)
            fail("total_iters must be >= 0");
        if (batch_rays < 1)
            fail("batch_rays must be >= 1");
        if (!(lr_grid >= 0.0) || !(lr_mlp >= 0.0))
            fail("learning rates must be >= 0");
        if (!(lr_decay_target_fraction > 0.0))
            fail("lr_decay_target_fraction must be > 0");
        if (!(skip_threshold >= 0.0) || !(lambda_bg >= 0.0))
            fail("skip_threshold and lambda_bg must be >= 0");
        if (log_interval < 1)
            fail("log_interval must be >= 1");
        const auto ups = resolved_upsample_iters();
        if (total_iters > 0)
        {
            if (ups.size() != std::size_t(stages))
                fail("upsample_iters must list exactly `stages` iterations");
            for (std::size_t i = 0; i < ups.size(); ++i)
            {
                if (ups[i] < 0 || ups[i] >= total_iters)
                    fail("upsample_iters must lie in [0, total_iters)");
                if (i > 0 && ups[i] <= ups[i - 1])
                    fail("upsample_iters must be strictly increasing");
            }
        }
    }

    nlohmann::json to_json(const TrainConfig &c)
    {
        return {{"final_dims", {c.final_dims.x, c.final_dims.y, c.final_dims.z}},
                {"feature_dim", c.feature_dim},
                {"hidden_width", c.hidden_width},
                {"position_levels", c.position_levels},
                {"direction_levels", c.direction_levels},
                {"density_bias", c.density_bias},
                {"deformation", c.deformation},
                {"stages", c.stages},
                {"upsample_iters", c.resolved_upsample_iters()},
                {"total_iters", c.total_iters},
                {"batch_rays", c.batch_rays},
                {"lr_grid", c.lr_grid},
                {"lr_mlp", c.lr_mlp},
                {"lr_decay_target_fraction", c.lr_decay_target_fraction},
                {"skip_threshold", c.skip_threshold},
                {"lambda_bg", c.lambda_bg},
                {"step", c.step},
                {"seed", c.seed},
                {"log_interval", c.log_interval}};
    }

    AdamState AdamState::for_model(const FieldModel &model, AdamConfig config)
    {
        AdamState s;
        s.config = config;
        for (const auto &t : model.tensors())
        {
            TensorMoments tm;
            tm.m.assign(t.data.size(), 0.0);
            tm.v.assign(t.data.size(), 0.0);
            s.tensors.push_back(std::move(tm));
        }
        return s;
    }

    void AdamState::reset_grid_moments(const FieldModel &model)
    {
        const auto ts = model.tensors();
        for (std::size_t i = 0; i < ts.size(); ++i)
            if (ts[i].is_grid)
                tensors[i] = TensorMoments{std::vector<double>(ts[i].data.size(), 0.0), std::vector<double>(ts[i].data.size(), 0.0), 0};
    }

    void adam_step(std::span<float> params, std::span<const double> grads, TensorMoments &state, double lr,
                   const AdamConfig &config, std::string_view name)
    {
        if (params.size() != grads.size() || state.m.size() != params.size() || state.v.size() != params.size())
            throw ContractError("adam_step: shape mismatch for tensor '" + std::string(name) + "'");
        for (std::size_t i = 0; i < grads.size(); ++i)
            if (!std::isfinite(grads[i]))
                throw NumericalError("non-finite gradient in tensor '" + std::string(name) + "' at element " + std::to_string(i));

        ++state.step;
        const double b1 = config.beta1, b2 = config.beta2;
        const double c1 = 1.0 - std::pow(b1, double(state.step));
        const double c2 = 1.0 - std::pow(b2, double(state.step));
        for (std::size_t i = 0; i < params.size(); ++i)
        {
            const double g = grads[i];
            double &m = state.m[i];
            double &v = state.v[i];
            m = b1 * m + (1.0 - b1) * g;
            v = b2 * v + (1.0 - b2) * g * g;
            const double update = lr * (m / c1) / (std::sqrt(v / c2) + config.epsilon);
            if (update != 0.0)
                params[i] = static_cast<float>(double(params[i]) - update);
        }
    }

    void adam_step(FieldModel &model, const GradientSet &grads, AdamState &state, double lr_grid, double lr_mlp)
    {
        auto ts = model.tensors();
        if (!grads.congruent_with(model) || state.tensors.size() != ts.size())
            throw ContractError("adam_step: optimizer state does not match the model");
        for (std::size_t i = 0; i < ts.size(); ++i)
            adam_step(ts[i].data, grads.buffers[i], state.tensors[i], ts[i].is_grid ? lr_grid : lr_mlp, state.config, ts[i].name);
    }

    double lr_at(std::int64_t iter, double lr0, std::int64_t total_iters, double target_fraction)
    {
        if (total_iters <= 0)
            return lr0;
        if (iter < 0 || iter > total_iters)
            throw ContractError("lr_at: iteration outside [0, total_iters]");
        return lr0 * std::pow(target_fraction, double(iter) / double(total_iters));
    }

    GridDims progressive_dims(GridDims final_dims, int stage, int stages)
    {
        if (stage < 0 || stage > stages)
            throw ContractError("progressive stage out of range");
        if (stage == stages)
            return final_dims;
        const std::int64_t final_count = final_dims.node_count();
        const std::int64_t count = final_count >> (stages - stage);
        const double scale = std::cbrt(double(count) / double(final_count));
        auto axis = [&](int L) { return std::clamp(int(std::lround(L * scale)), 2, L); };
        return {axis(final_dims.x), axis(final_dims.y), axis(final_dims.z)};
    }

    BatchResult evaluate_batch(const FieldModel &model, const SceneGeometry &geometry, std::span<const RayQuery> rays,
                               const BatchOptions &options, GradientSet *grads, BatchWorkspace *workspace)
    {
        if (rays.empty())
            throw ContractError("evaluate_batch needs at least one ray");
        BatchWorkspace local;
        BatchWorkspace &ws = workspace ? *workspace : local;
        if (ws.tapes.size() < rays.size())
            ws.tapes.resize(rays.size());

        BatchResult out;
        out.radiance.resize(rays.size());
        out.final_transmittance.resize(rays.size());
        std::vector<double> targets(rays.size());
        for (std::size_t r = 0; r < rays.size(); ++r)
        {
            const RayResult &res = trace_ray(model, geometry, rays[r].tx, rays[r].dir, options.render, ws.tapes[r]);
            out.radiance[r] = res.radiance;
            out.final_transmittance[r] = res.final_transmittance;
            targets[r] = rays[r].target;
            out.samples += res.samples;
            out.kept += res.kept;
            out.skipped += res.skipped;
        }

        const LossGradient mse = spectrum_mse(out.radiance, targets);
        const LossGradient bg = background_entropy(out.final_transmittance);
        out.loss.spectrum_loss = mse.loss;
        out.loss.bg_loss = bg.loss;
        out.loss.total = total_loss(mse.loss, bg.loss, options.lambda_bg);
        out.loss.ray_count = int(rays.size());

        if (grads)
        {
            if (!grads->congruent_with(model))
                throw ContractError("gradient set shape does not match the model");
            reset_scratch(model, ws.scratch);
            for (std::size_t r = 0; r < rays.size(); ++r)
                backward_ray(model, ws.tapes[r], mse.gradient[r], options.lambda_bg * bg.gradient[r], *grads, ws.scratch);
        }
        return out;
    }

    std::vector<RayQuery> sample_rays(const Dataset &dataset, std::span<const std::size_t> records, int count, Rng &rng)
    {
        if (records.empty())
            throw ContractError("cannot sample rays from an empty record set");
        const SpectrumResolution res = dataset.geometry.res;
        std::vector<RayQuery> out(std::size_t(std::max(count, 0)));
        for (RayQuery &q : out)
        {
            const Record &rec = dataset.records[records[rng.below(records.size())]];
            const auto cell = rng.below(std::uint64_t(res.cells()));
            const int m = int(cell / res.elevation), n = int(cell % res.elevation);
            q.tx = rec.tx;
            q.dir = direction_from_angles(m, n, res);
            q.target = rec.spectrum.at(m, n);
        }
        return out;
    }

    std::string format_log_row(const LogRow &row)
    {
        char buf[256];
        std::snprintf(buf, sizeof buf, "%lld,%.9g,%.9g,%.9g,%.9g,%.9g", static_cast<long long>(row.iter), row.spectrum_loss,
                      row.bg_loss, row.total, row.lr_grid, row.lr_mlp);
        return buf;
    }

    TrainResult train(const Dataset &dataset, std::span<const std::size_t> records, const TrainConfig &config,
                      const TrainCallbacks &callbacks)
    {
        config.validate();
        if (records.empty())
            throw ContractError("training needs at least one record");
        for (std::size_t r : records)
            if (r >= dataset.records.size())
                throw ContractError("training record index out of range");
        const SceneGeometry &geometry = dataset.geometry;
        geometry.validate();

        TrainResult result;
        int stage = 0;
        result.model = init_model(config.model_shape(geometry.bbox, stage), config.seed);
        if (config.total_iters == 0)
            return result;

        FieldModel &model = result.model;
        AdamState adam = AdamState::for_model(model);
        GradientSet grads = GradientSet::zeros_like(model);
        BatchWorkspace ws;
        BatchOptions opts;
        opts.render.step = config.resolved_step(geometry.bbox);
        opts.render.skip_threshold = config.skip_threshold;
        opts.lambda_bg = config.lambda_bg;

        // Separate streams so the ray draws do not depend on the parameter initialisation.
        Rng ray_rng(config.seed ^ 0xA5A5A5A5DEADBEEFull);
        const auto upsample_iters = config.resolved_upsample_iters();

        for (std::int64_t iter = 0; iter < config.total_iters; ++iter)
        {
            while (stage < config.stages && upsample_iters[std::size_t(stage)] == iter)
            {
                ++stage;
                FieldModel before = callbacks.on_upsample ? model : FieldModel{};
                const GridDims dims = progressive_dims(config.final_dims, stage, config.stages);
                model.density = upsample(model.density, dims);
                model.feature = upsample(model.feature, dims);
                adam.reset_grid_moments(model);
                grads = GradientSet::zeros_like(model);
                if (callbacks.on_upsample)
                    callbacks.on_upsample(UpsampleEvent{iter, stage, before, model});
            }

            const auto rays = sample_rays(dataset, records, config.batch_rays, ray_rng);
            grads.zero();
            const BatchResult batch = evaluate_batch(model, geometry, rays, opts, &grads, &ws);
            result.samples += batch.samples;
            result.kept += batch.kept;
            result.skipped += batch.skipped;
            if (!std::isfinite(batch.loss.total))
                throw NumericalError("non-finite loss at iteration " + std::to_string(iter));

            const double lr_g = lr_at(iter, config.lr_grid, config.total_iters, config.lr_decay_target_fraction);
            const double lr_m = lr_at(iter, config.lr_mlp, config.total_iters, config.lr_decay_target_fraction);
            if (iter % config.log_interval == 0 || iter + 1 == config.total_iters)
            {
                LogRow row{iter, batch.loss.spectrum_loss, batch.loss.bg_loss, batch.loss.total, lr_g, lr_m};
                result.history.push_back(row);
                if (callbacks.on_log)
                    callbacks.on_log(row);
            }
            try
            {
                adam_step(model, grads, adam, lr_g, lr_m);
            }
            catch (const NumericalError &e)
            {
                throw NumericalError(std::string(e.what()) + " at iteration " + std::to_string(iter));
            }
        }
        return result;
    }

    double fit_rssi_calibration(const FieldModel &model, const SceneGeometry &geometry,
                                std::span<const RssiObservation> observations, const RenderOptions &options)
    {
        double sum = 0.0;
        std::size_t used = 0;
        for (const RssiObservation &o : observations)
        {
            const SpatialSpectrum s = render_spectrum(model, geometry, o.tx, options);
            double power = 0.0;
            for (float v : s.values)
                power += v;
            if (!(power > 0.0) || !std::isfinite(o.measured_db))
                continue;
            sum += o.measured_db - 10.0 * std::log10(power);
            ++used;
        }
        if (used == 0)
            throw NumericalError("RSSI calibration has no records with positive predicted power");
        return sum / double(used);
    }
}
